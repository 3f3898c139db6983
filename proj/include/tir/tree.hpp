#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "tir/error.hpp"
#include "tir/text.hpp"

namespace tir {

// ---------------------------------------------------------------------------
// Dependency trees. Token indices are 1-based; heads[i] is the head of
// token i+1, with 0 marking the root.
// ---------------------------------------------------------------------------

struct DependencyTree {
  std::vector<int> heads;

  int size() const { return static_cast<int>(heads.size()); }

  int root() const {
    for (int i = 0; i < size(); ++i)
      if (heads[static_cast<size_t>(i)] == 0) return i + 1;
    throw_domain("dependency tree has no root");
  }

  // children[p] lists the children of token p in ascending order; index 0
  // is unused.
  std::vector<std::vector<int>> children() const {
    std::vector<std::vector<int>> ch(static_cast<size_t>(size()) + 1);
    for (int i = 0; i < size(); ++i) {
      int h = heads[static_cast<size_t>(i)];
      if (h > 0) ch[static_cast<size_t>(h)].push_back(i + 1);
    }
    return ch;
  }

  void validate(const std::string& where = "dependency tree") const {
    int n = size();
    if (n == 0) throw_format(where + ": empty tree");
    for (int i = 0; i < n; ++i) {
      int h = heads[static_cast<size_t>(i)];
      if (h < 0 || h > n)
        throw_format(where + ": head " + std::to_string(h) + " of token " + std::to_string(i + 1) +
                     " out of range [0, " + std::to_string(n) + "]");
    }
    // Every token must reach the root; a walk longer than n steps is a cycle.
    for (int i = 1; i <= n; ++i) {
      int cur = i, steps = 0;
      while (cur != 0) {
        cur = heads[static_cast<size_t>(cur - 1)];
        if (++steps > n)
          throw_format(where + ": cycle detected involving token " + std::to_string(i));
      }
    }
    int roots = 0;
    for (int h : heads) roots += h == 0 ? 1 : 0;
    if (roots != 1) throw_format(where + ": expected exactly one root, found " + std::to_string(roots));
  }
};

// ---------------------------------------------------------------------------
// Binary constituency trees over tokens 1..n. Nodes live in a pool; leaves
// carry their token index, internal nodes exactly two children.
// ---------------------------------------------------------------------------

struct ConstituencyTree {
  struct Node {
    int left = -1;
    int right = -1;
    int token = 0;  // >= 1 for leaves
  };
  std::vector<Node> nodes;
  int root = -1;

  bool is_leaf(int id) const { return nodes[static_cast<size_t>(id)].token >= 1; }
  const Node& node(int id) const { return nodes[static_cast<size_t>(id)]; }

  int add_leaf(int token) {
    nodes.push_back(Node{-1, -1, token});
    return static_cast<int>(nodes.size()) - 1;
  }
  int add_internal(int left, int right) {
    nodes.push_back(Node{left, right, 0});
    return static_cast<int>(nodes.size()) - 1;
  }

  std::vector<int> leaf_ids_in_order() const {
    std::vector<int> out;
    std::function<void(int)> walk = [&](int id) {
      if (is_leaf(id)) {
        out.push_back(id);
        return;
      }
      walk(node(id).left);
      walk(node(id).right);
    };
    if (root >= 0) walk(root);
    return out;
  }

  void validate(int n_tokens, const std::string& where = "constituency tree") const {
    if (root < 0) throw_format(where + ": empty tree");
    std::vector<int> seen;
    std::function<void(int)> walk = [&](int id) {
      const Node& nd = node(id);
      if (nd.token >= 1) {
        seen.push_back(nd.token);
        return;
      }
      if (nd.left < 0 || nd.right < 0)
        throw_format(where + ": internal node without exactly two children");
      walk(nd.left);
      walk(nd.right);
    };
    walk(root);
    if (static_cast<int>(seen.size()) != n_tokens)
      throw_format(where + ": leaf count " + std::to_string(seen.size()) + " does not match token count " +
                   std::to_string(n_tokens));
    for (int i = 0; i < n_tokens; ++i)
      if (seen[static_cast<size_t>(i)] != i + 1)
        throw_format(where + ": leaves are not tokens 1..n in order");
  }
};

// Right-branching binary tree over tokens 1..n, for corpora without parses.
inline ConstituencyTree fallback_tree(const Sentence& s) {
  int n = static_cast<int>(s.tokens.size());
  if (n < 1) throw_domain("fallback_tree: empty sentence");
  ConstituencyTree t;
  int acc = t.add_leaf(n);
  for (int i = n - 1; i >= 1; --i) acc = t.add_internal(t.add_leaf(i), acc);
  t.root = acc;
  return t;
}

// ---------------------------------------------------------------------------
// Bottom-up evaluation order: every (parent, children) entry appears after
// the entries of any child that is itself a parent.
// ---------------------------------------------------------------------------

struct ParentChildEntry {
  int parent;
  std::vector<int> children;
};
using ParentChildSet = std::vector<ParentChildEntry>;

inline ParentChildSet bottom_up_order(const DependencyTree& t) {
  auto ch = t.children();
  ParentChildSet out;
  std::function<void(int)> walk = [&](int node) {
    for (int c : ch[static_cast<size_t>(node)]) walk(c);
    if (!ch[static_cast<size_t>(node)].empty()) out.push_back({node, ch[static_cast<size_t>(node)]});
  };
  walk(t.root());
  return out;
}

inline ParentChildSet bottom_up_order(const ConstituencyTree& t) {
  ParentChildSet out;
  std::function<void(int)> walk = [&](int id) {
    if (t.is_leaf(id)) return;
    walk(t.node(id).left);
    walk(t.node(id).right);
    out.push_back({id, {t.node(id).left, t.node(id).right}});
  };
  if (t.root >= 0) walk(t.root);
  return out;
}

// ---------------------------------------------------------------------------
// CoNLL-U subset reader: "ID<TAB>FORM<TAB>HEAD[<TAB>...]" per token, blank
// line between sentences. Only the three leading columns are interpreted.
// ---------------------------------------------------------------------------

inline std::vector<std::string> split_on(const std::string& line, char sep) {
  std::vector<std::string> cols;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      cols.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  cols.push_back(cur);
  return cols;
}

// Parses one sentence block. `first_line` is the 1-based file line of the
// block's first token, used in error messages.
inline std::pair<Sentence, DependencyTree> parse_conllu(const std::vector<std::string>& lines,
                                                        int first_line = 1) {
  Sentence s;
  DependencyTree t;
  int line_no = first_line - 1;
  for (const std::string& line : lines) {
    ++line_no;
    if (line.empty()) continue;
    auto cols = split_on(line, '\t');
    if (cols.size() < 3)
      throw_format("line " + std::to_string(line_no) + ": expected at least 3 tab-separated columns");
    int expect = static_cast<int>(s.tokens.size()) + 1;
    int id = 0, head = 0;
    try {
      id = std::stoi(cols[0]);
      head = std::stoi(cols[2]);
    } catch (const std::exception&) {
      throw_format("line " + std::to_string(line_no) + ": ID and HEAD must be integers");
    }
    if (id != expect)
      throw_format("line " + std::to_string(line_no) + ": expected ID " + std::to_string(expect) +
                   ", got " + std::to_string(id));
    if (cols[1].empty()) throw_format("line " + std::to_string(line_no) + ": empty FORM");
    s.tokens.push_back(cols[1]);
    t.heads.push_back(head);
  }
  if (s.tokens.empty()) throw_format("line " + std::to_string(first_line) + ": empty sentence block");
  for (const std::string& tok : s.tokens) s.raw_length += static_cast<long>(tok.size()) + 1;
  if (s.raw_length > 0) --s.raw_length;
  t.validate("sentence at line " + std::to_string(first_line));
  return {std::move(s), std::move(t)};
}

inline std::string serialize_conllu(const Sentence& s, const DependencyTree& t) {
  std::string out;
  for (size_t i = 0; i < s.tokens.size(); ++i)
    out += std::to_string(i + 1) + "\t" + s.tokens[i] + "\t" + std::to_string(t.heads[i]) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Penn-style s-expression reader. The first atom of a group is its label
// and is discarded; k-ary nodes are right-binarized and unary chains
// collapse, so the result is strictly binary.
// ---------------------------------------------------------------------------

namespace detail {

struct SexprItem {
  bool is_atom = false;
  std::string atom;
  size_t offset = 0;
  std::vector<SexprItem> children;
};

inline SexprItem parse_sexpr_items(const std::string& text) {
  size_t pos = 0;
  std::function<void()> skip_space = [&]() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  std::function<SexprItem()> parse_item = [&]() -> SexprItem {
    skip_space();
    if (pos >= text.size()) throw_format("offset " + std::to_string(pos) + ": unexpected end of input");
    if (text[pos] == ')') throw_format("offset " + std::to_string(pos) + ": unbalanced ')'");
    if (text[pos] == '(') {
      SexprItem group;
      group.offset = pos;
      ++pos;
      skip_space();
      while (pos < text.size() && text[pos] != ')') {
        group.children.push_back(parse_item());
        skip_space();
      }
      if (pos >= text.size())
        throw_format("offset " + std::to_string(group.offset) + ": unbalanced '('");
      ++pos;  // ')'
      if (group.children.empty())
        throw_format("offset " + std::to_string(group.offset) + ": empty node");
      return group;
    }
    SexprItem atom;
    atom.is_atom = true;
    atom.offset = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) && text[pos] != '(' &&
           text[pos] != ')')
      atom.atom.push_back(text[pos++]);
    return atom;
  };
  SexprItem root = parse_item();
  skip_space();
  if (pos != text.size())
    throw_format("offset " + std::to_string(pos) + ": trailing input after s-expression");
  return root;
}

}  // namespace detail

inline std::pair<Sentence, ConstituencyTree> parse_sexpr(const std::string& text) {
  detail::SexprItem raw = detail::parse_sexpr_items(text);
  Sentence s;
  ConstituencyTree t;
  // Returns the pool id of the subtree, collapsing unaries and binarizing.
  std::function<int(const detail::SexprItem&)> build = [&](const detail::SexprItem& item) -> int {
    if (item.is_atom) {
      s.tokens.push_back(item.atom);
      return t.add_leaf(static_cast<int>(s.tokens.size()));
    }
    const std::vector<detail::SexprItem>& kids = item.children;
    size_t begin = 0;
    if (kids[0].is_atom && kids.size() >= 2) begin = 1;  // leading atom is the label
    if (kids.size() - begin == 0)
      throw_format("offset " + std::to_string(item.offset) + ": empty node");
    std::vector<int> built;
    for (size_t i = begin; i < kids.size(); ++i) built.push_back(build(kids[i]));
    int acc = built.back();
    for (size_t i = built.size() - 1; i-- > 0;) acc = t.add_internal(built[i], acc);
    return acc;
  };
  t.root = build(raw);
  for (const std::string& tok : s.tokens) s.raw_length += static_cast<long>(tok.size()) + 1;
  if (s.raw_length > 0) --s.raw_length;
  t.validate(static_cast<int>(s.tokens.size()));
  return {std::move(s), std::move(t)};
}

inline std::string serialize_sexpr(const Sentence& s, const ConstituencyTree& t) {
  std::function<std::string(int)> walk = [&](int id) -> std::string {
    if (t.is_leaf(id)) return s.tokens[static_cast<size_t>(t.node(id).token - 1)];
    return "(X " + walk(t.node(id).left) + " " + walk(t.node(id).right) + ")";
  };
  return walk(t.root);
}

// ---------------------------------------------------------------------------
// Preprocessing of parsed sentences: the token pipeline of preprocess()
// applied to tree tokens. Filtered dependency nodes are spliced out
// (children re-attach to the removed node's head); filtered constituency
// leaves are deleted with unary collapse.
// ---------------------------------------------------------------------------

inline std::pair<Sentence, DependencyTree> preprocess_parsed(const Sentence& raw,
                                                             const DependencyTree& tree) {
  int n = static_cast<int>(raw.tokens.size());
  std::vector<std::string> kept_tokens;
  std::vector<int> new_index(static_cast<size_t>(n) + 1, 0);  // old 1-based -> new 1-based, 0 = dropped
  for (int i = 1; i <= n; ++i) {
    std::string tok = normalize_token(raw.tokens[static_cast<size_t>(i - 1)]);
    if (!tok.empty()) {
      kept_tokens.push_back(std::move(tok));
      new_index[static_cast<size_t>(i)] = static_cast<int>(kept_tokens.size());
    }
  }
  if (kept_tokens.empty()) throw_domain("preprocess: no tokens survive in parsed sentence");

  auto effective_head = [&](int node) {
    int h = tree.heads[static_cast<size_t>(node - 1)];
    while (h != 0 && new_index[static_cast<size_t>(h)] == 0) h = tree.heads[static_cast<size_t>(h - 1)];
    return h;
  };
  DependencyTree out;
  out.heads.resize(kept_tokens.size());
  for (int i = 1; i <= n; ++i) {
    if (new_index[static_cast<size_t>(i)] == 0) continue;
    int h = effective_head(i);
    out.heads[static_cast<size_t>(new_index[static_cast<size_t>(i)] - 1)] =
        h == 0 ? 0 : new_index[static_cast<size_t>(h)];
  }
  // Splicing out the original root can leave several roots; keep the first
  // and re-attach the rest beneath it.
  int first_root = 0;
  for (size_t i = 0; i < out.heads.size(); ++i) {
    if (out.heads[i] != 0) continue;
    if (first_root == 0)
      first_root = static_cast<int>(i) + 1;
    else
      out.heads[i] = first_root;
  }
  Sentence s;
  s.tokens = std::move(kept_tokens);
  s.label = raw.label;
  s.raw_length = raw.raw_length;
  out.validate("preprocessed dependency tree");
  return {std::move(s), std::move(out)};
}

inline std::pair<Sentence, ConstituencyTree> preprocess_parsed(const Sentence& raw,
                                                               const ConstituencyTree& tree) {
  std::vector<std::string> normalized(raw.tokens.size());
  for (size_t i = 0; i < raw.tokens.size(); ++i) normalized[i] = normalize_token(raw.tokens[i]);

  Sentence s;
  s.label = raw.label;
  s.raw_length = raw.raw_length;
  ConstituencyTree out;
  // Rebuilds bottom-up; dropped leaves return -1 and single-child nodes
  // collapse to that child.
  std::function<int(int)> build = [&](int id) -> int {
    if (tree.is_leaf(id)) {
      const std::string& tok = normalized[static_cast<size_t>(tree.node(id).token - 1)];
      if (tok.empty()) return -1;
      s.tokens.push_back(tok);
      return out.add_leaf(static_cast<int>(s.tokens.size()));
    }
    int l = build(tree.node(id).left);
    int r = build(tree.node(id).right);
    if (l < 0) return r;
    if (r < 0) return l;
    return out.add_internal(l, r);
  };
  out.root = build(tree.root);
  if (out.root < 0) throw_domain("preprocess: no tokens survive in parsed sentence");
  out.validate(static_cast<int>(s.tokens.size()), "preprocessed constituency tree");
  return {std::move(s), std::move(out)};
}

}  // namespace tir
