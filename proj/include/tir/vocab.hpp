#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "tir/error.hpp"
#include "tir/text.hpp"

namespace tir {

// Token inventory with reserved ids pinned at 0..4.
class Vocabulary {
 public:
  static constexpr int kPad = 0;
  static constexpr int kUnk = 1;
  static constexpr int kMask = 2;
  static constexpr int kCls = 3;
  static constexpr int kSep = 4;

  Vocabulary() {
    for (const char* r : {"[PAD]", "[UNK]", "[MASK]", "[CLS]", "[SEP]"}) add(r);
  }

  static Vocabulary build(const std::vector<Sentence>& corpus, int min_count) {
    if (min_count < 1) throw_domain("build_vocab: min_count must be >= 1");
    if (corpus.empty()) throw_domain("build_vocab: empty corpus");
    std::vector<std::string> order;
    std::unordered_map<std::string, int> counts;
    for (const Sentence& s : corpus)
      for (const std::string& t : s.tokens) {
        if (++counts[t] == 1) order.push_back(t);
      }
    Vocabulary v;
    for (const std::string& t : order)
      if (counts[t] >= min_count) v.add(t);
    return v;
  }

  // Rebuild from a saved token list; the reserved tokens must be first.
  static Vocabulary from_tokens(const std::vector<std::string>& tokens) {
    Vocabulary v;
    if (tokens.size() < 5) throw_format("vocabulary list is missing the reserved tokens");
    for (int i = 0; i < 5; ++i)
      if (tokens[static_cast<size_t>(i)] != v.tokens_[static_cast<size_t>(i)])
        throw_format("vocabulary list does not start with the reserved tokens");
    for (size_t i = 5; i < tokens.size(); ++i) v.add(tokens[i]);
    return v;
  }

  int size() const { return static_cast<int>(tokens_.size()); }

  int index(const std::string& tok) const {
    auto it = index_.find(tok);
    return it == index_.end() ? kUnk : it->second;
  }

  bool contains(const std::string& tok) const { return index_.count(tok) > 0; }

  const std::string& token(int i) const { return tokens_.at(static_cast<size_t>(i)); }
  const std::vector<std::string>& tokens() const { return tokens_; }

 private:
  void add(const std::string& tok) {
    if (index_.count(tok)) return;
    index_[tok] = static_cast<int>(tokens_.size());
    tokens_.push_back(tok);
  }

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> index_;
};

}  // namespace tir
