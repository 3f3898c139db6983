#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "tir/error.hpp"

namespace tir {

// A tokenized example. `raw_length` is the character count of the original
// text, recorded before any filtering; the length-bucket analysis needs it.
struct Sentence {
  std::vector<std::string> tokens;
  int label = -1;  // class index, -1 when unlabeled
  long raw_length = 0;
};

inline bool is_punct_char(unsigned char c) { return std::ispunct(c) != 0; }

inline std::string strip_edge_punct(const std::string& tok) {
  size_t b = 0, e = tok.size();
  while (b < e && is_punct_char(static_cast<unsigned char>(tok[b]))) ++b;
  while (e > b && is_punct_char(static_cast<unsigned char>(tok[e - 1]))) --e;
  return tok.substr(b, e - b);
}

inline std::string lowercase(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Applies the shared token pipeline to one raw token: strip punctuation off
// both ends, lowercase, then drop single-character and punctuation-only
// tokens. Returns the empty string when the token is filtered out.
inline std::string normalize_token(const std::string& raw) {
  std::string t = lowercase(strip_edge_punct(raw));
  if (t.size() <= 1) return "";
  bool all_punct = true;
  for (char c : t)
    if (!is_punct_char(static_cast<unsigned char>(c))) {
      all_punct = false;
      break;
    }
  return all_punct ? "" : t;
}

inline std::vector<std::string> whitespace_split(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

// Whitespace tokenization plus the normalization pipeline above. Throws
// when nothing survives.
inline Sentence preprocess(const std::string& text) {
  Sentence s;
  s.raw_length = static_cast<long>(text.size());
  for (const std::string& raw : whitespace_split(text)) {
    std::string t = normalize_token(raw);
    if (!t.empty()) s.tokens.push_back(std::move(t));
  }
  if (s.tokens.empty()) throw_domain("preprocess: no tokens survive in \"" + text + "\"");
  return s;
}

}  // namespace tir
