#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tir/error.hpp"
#include "tir/tree.hpp"

namespace tir {

enum class TreeKind { none, dependency, constituency };

inline std::string tree_kind_name(TreeKind k) {
  switch (k) {
    case TreeKind::none: return "none";
    case TreeKind::dependency: return "dependency";
    case TreeKind::constituency: return "constituency";
  }
  return "?";
}

struct Example {
  Sentence sentence;
  TreeKind kind = TreeKind::none;
  DependencyTree dep;
  ConstituencyTree cons;
};

// Label names in first-seen order; examples carry the index.
struct LabelMap {
  std::vector<std::string> names;

  int intern(const std::string& name) {
    for (size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return static_cast<int>(i);
    names.push_back(name);
    return static_cast<int>(names.size()) - 1;
  }
  int lookup(const std::string& name) const {
    for (size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return static_cast<int>(i);
    return -1;
  }
  int size() const { return static_cast<int>(names.size()); }
};

struct Dataset {
  std::vector<Example> examples;
  size_t size() const { return examples.size(); }
  bool empty() const { return examples.empty(); }
};

inline std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_io("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

// "label<TAB>text" per line.
inline std::vector<std::pair<std::string, std::string>> read_tsv(const std::string& path) {
  std::vector<std::pair<std::string, std::string>> rows;
  auto lines = read_lines(path);
  for (size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    size_t tab = lines[i].find('\t');
    if (tab == std::string::npos)
      throw_format(path + " line " + std::to_string(i + 1) + ": expected \"label<TAB>text\"");
    rows.emplace_back(lines[i].substr(0, tab), lines[i].substr(tab + 1));
  }
  if (rows.empty()) throw_format(path + ": no examples");
  return rows;
}

// Dependency blocks separated by blank lines.
inline std::vector<std::pair<Sentence, DependencyTree>> read_dependency_file(const std::string& path) {
  auto lines = read_lines(path);
  std::vector<std::pair<Sentence, DependencyTree>> out;
  std::vector<std::string> block;
  int block_start = 1;
  auto flush = [&](size_t end_line) {
    if (block.empty()) return;
    out.push_back(parse_conllu(block, block_start));
    block.clear();
    (void)end_line;
  };
  for (size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) {
      flush(i);
    } else {
      if (block.empty()) block_start = static_cast<int>(i) + 1;
      block.push_back(lines[i]);
    }
  }
  flush(lines.size());
  if (out.empty()) throw_format(path + ": no sentences");
  return out;
}

// One s-expression per line; blank lines are skipped.
inline std::vector<std::pair<Sentence, ConstituencyTree>> read_sexpr_file(const std::string& path) {
  auto lines = read_lines(path);
  std::vector<std::pair<Sentence, ConstituencyTree>> out;
  for (size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    try {
      out.push_back(parse_sexpr(lines[i]));
    } catch (const Error& e) {
      throw_format(path + " line " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  if (out.empty()) throw_format(path + ": no trees");
  return out;
}

enum class TreePolicy { none, fallback, file };

// Assembles a labeled dataset. With TreePolicy::file the tree file supplies
// the tokens (run through the preprocessing pipeline) and the TSV supplies
// label and raw text length; otherwise tokens come from the TSV text.
inline Dataset load_dataset(const std::string& tsv_path, TreePolicy policy, TreeKind kind,
                            const std::string& trees_path, LabelMap& labels, bool grow_labels) {
  auto rows = read_tsv(tsv_path);
  Dataset ds;

  std::vector<std::pair<Sentence, DependencyTree>> deps;
  std::vector<std::pair<Sentence, ConstituencyTree>> conss;
  if (policy == TreePolicy::file) {
    if (kind == TreeKind::dependency)
      deps = read_dependency_file(trees_path);
    else
      conss = read_sexpr_file(trees_path);
    size_t n_trees = kind == TreeKind::dependency ? deps.size() : conss.size();
    if (n_trees != rows.size())
      throw_format(trees_path + ": " + std::to_string(n_trees) + " trees for " +
                   std::to_string(rows.size()) + " dataset lines in " + tsv_path);
  }

  for (size_t i = 0; i < rows.size(); ++i) {
    Example ex;
    int label = grow_labels ? labels.intern(rows[i].first) : labels.lookup(rows[i].first);
    if (label < 0)
      throw_format(tsv_path + " line " + std::to_string(i + 1) + ": unknown label \"" + rows[i].first +
                   "\"");
    try {
      if (policy == TreePolicy::file) {
        if (kind == TreeKind::dependency) {
          auto [s, t] = preprocess_parsed(deps[i].first, deps[i].second);
          ex.sentence = std::move(s);
          ex.dep = std::move(t);
          ex.kind = TreeKind::dependency;
        } else {
          auto [s, t] = preprocess_parsed(conss[i].first, conss[i].second);
          ex.sentence = std::move(s);
          ex.cons = std::move(t);
          ex.kind = TreeKind::constituency;
        }
        ex.sentence.raw_length = static_cast<long>(rows[i].second.size());
      } else {
        ex.sentence = preprocess(rows[i].second);
        if (policy == TreePolicy::fallback) {
          ex.cons = fallback_tree(ex.sentence);
          ex.kind = TreeKind::constituency;
        }
      }
    } catch (const Error& e) {
      throw Error(e.kind(), tsv_path + " line " + std::to_string(i + 1) + ": " + e.what());
    }
    ex.sentence.label = label;
    ds.examples.push_back(std::move(ex));
  }
  return ds;
}

// ---------------------------------------------------------------------------
// Parsed-dataset files: JSON Lines, one record per example with fields
//   label      string
//   tokens     array of preprocessed tokens
//   raw_length integer
//   heads      1-based head array (dependency records), or
//   sexpr      canonical binarized s-expression (constituency records)
// ---------------------------------------------------------------------------

inline void save_parsed_dataset(const Dataset& ds, const LabelMap& labels, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw_io("cannot write " + path);
  for (const Example& ex : ds.examples) {
    nlohmann::json j;
    j["label"] = labels.names.at(static_cast<size_t>(ex.sentence.label));
    j["tokens"] = ex.sentence.tokens;
    j["raw_length"] = ex.sentence.raw_length;
    if (ex.kind == TreeKind::dependency)
      j["heads"] = ex.dep.heads;
    else if (ex.kind == TreeKind::constituency)
      j["sexpr"] = serialize_sexpr(ex.sentence, ex.cons);
    out << j.dump() << "\n";
  }
}

inline Dataset load_parsed_dataset(const std::string& path, LabelMap& labels, bool grow_labels) {
  auto lines = read_lines(path);
  Dataset ds;
  for (size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(lines[i]);
    } catch (const std::exception& e) {
      throw_format(path + " line " + std::to_string(i + 1) + ": " + e.what());
    }
    Example ex;
    try {
      std::string label_name = j.at("label").get<std::string>();
      int label = grow_labels ? labels.intern(label_name) : labels.lookup(label_name);
      if (label < 0) throw_format("unknown label \"" + label_name + "\"");
      ex.sentence.tokens = j.at("tokens").get<std::vector<std::string>>();
      if (ex.sentence.tokens.empty()) throw_format("empty token list");
      ex.sentence.label = label;
      ex.sentence.raw_length = j.value("raw_length", 0L);
      if (j.contains("heads")) {
        ex.dep.heads = j["heads"].get<std::vector<int>>();
        if (ex.dep.heads.size() != ex.sentence.tokens.size())
          throw_format("heads length does not match tokens");
        ex.dep.validate();
        ex.kind = TreeKind::dependency;
      } else if (j.contains("sexpr")) {
        auto [s, t] = parse_sexpr(j["sexpr"].get<std::string>());
        if (s.tokens != ex.sentence.tokens) throw_format("sexpr leaves do not match tokens");
        ex.cons = std::move(t);
        ex.kind = TreeKind::constituency;
      }
    } catch (const Error& e) {
      throw Error(e.kind(), path + " line " + std::to_string(i + 1) + ": " + e.what());
    } catch (const std::exception& e) {
      throw_format(path + " line " + std::to_string(i + 1) + ": " + e.what());
    }
    ds.examples.push_back(std::move(ex));
  }
  if (ds.empty()) throw_format(path + ": no examples");
  return ds;
}

}  // namespace tir
