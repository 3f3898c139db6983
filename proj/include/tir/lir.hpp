#pragma once

#include <string>
#include <vector>

#include "tir/autograd.hpp"
#include "tir/bilstm.hpp"
#include "tir/dataset.hpp"
#include "tir/rng.hpp"
#include "tir/tree.hpp"

namespace tir {

// Local interaction representation: an attentive Tree-LSTM. The parent
// word acts as an attention controller over its children (parent -> child
// action); the children then compose into the parent through gated LSTM
// equations (child -> parent action).

template <typename S>
struct NodeStateT {
  VarT<S> h;
  VarT<S> c;
};

using NodeState = NodeStateT<double>;

template <typename S>
struct LirParamsT {
  int d_e = 0;
  int d_h = 0;
  TreeKind kind = TreeKind::dependency;

  // Controller: d_h x d_e on the parent embedding for dependency trees;
  // d_h x d_h on a child hidden state for constituency trees, where parents
  // are non-terminals without embeddings.
  ParameterT<S> W_h, b_h;
  ParameterT<S> W_alpha;             // d_h x d_h connective matrix
  ParameterT<S> U_i, U_o, U_u, U_f;  // d_h x d_e, on the parent embedding
  ParameterT<S> W_i, W_o, W_u;       // d_h x d_h, or d_h x 2*d_h for constituency
  ParameterT<S> W_f;                 // d_h x d_h, applied per child
  ParameterT<S> b_i, b_o, b_u, b_f;

  LirParamsT() = default;
  LirParamsT(int d_e_, int d_h_, TreeKind kind_, Rng& rng) : d_e(d_e_), d_h(d_h_), kind(kind_) {
    int ctrl_in = kind == TreeKind::constituency ? d_h : d_e;
    int gate_in = kind == TreeKind::constituency ? 2 * d_h : d_h;
    auto mat = [&](const char* n, int r, int c) {
      ParameterT<S> p(std::string("lir.") + n, TensorT<S>::zeros({r, c}));
      init_matrix(p, rng);
      return p;
    };
    auto vec = [&](const char* n, double fill) {
      ParameterT<S> p(std::string("lir.") + n, TensorT<S>::zeros({d_h}));
      for (S& v : p.value.values) v = S(fill);
      return p;
    };
    W_h = mat("W_h", d_h, ctrl_in);
    b_h = vec("b_h", 0.0);
    W_alpha = mat("W_alpha", d_h, d_h);
    U_i = mat("U_i", d_h, d_e);
    U_o = mat("U_o", d_h, d_e);
    U_u = mat("U_u", d_h, d_e);
    U_f = mat("U_f", d_h, d_e);
    W_i = mat("W_i", d_h, gate_in);
    W_o = mat("W_o", d_h, gate_in);
    W_u = mat("W_u", d_h, gate_in);
    W_f = mat("W_f", d_h, d_h);
    b_i = vec("b_i", 0.0);
    b_o = vec("b_o", 0.0);
    b_u = vec("b_u", 0.0);
    b_f = vec("b_f", 1.0);
  }

  std::vector<ParameterT<S>*> params() {
    return {&W_h, &b_h, &W_alpha, &U_i, &U_o, &U_u, &U_f, &W_i, &W_o, &W_u, &W_f,
            &b_i, &b_o, &b_u, &b_f};
  }
};

using LirParams = LirParamsT<double>;

template <typename S>
struct AttnResultT {
  VarT<S> pooled;     // sum_k lambda_k h_k
  TensorT<S> lambda;  // attention weights, recorded for verification
};

using AttnResult = AttnResultT<double>;

// alpha_k = hbar^T W_alpha h_k, lambda = softmax(alpha), pooled = sum.
template <typename S>
AttnResultT<S> attend(TapeT<S>& t, VarT<S> hbar, ParameterT<S>& w_alpha,
                      const std::vector<VarT<S>>& child_h) {
  if (child_h.empty()) throw_domain("attend: no children; apply the leaf rule instead");
  VarT<S> w = t.leaf(w_alpha);
  VarT<S> logits;
  for (size_t k = 0; k < child_h.size(); ++k) {
    VarT<S> a = dot(hbar, matvec(w, child_h[k]));
    logits = k == 0 ? a : concat(logits, a);
  }
  VarT<S> lambda = softmax(logits);
  return {weighted_sum(lambda, child_h), t.val(lambda)};
}

// Parent -> children action for dependency trees: the parent word is the
// controller.
template <typename S>
AttnResultT<S> lir_controller(TapeT<S>& t, VarT<S> parent_embedding,
                              const std::vector<VarT<S>>& child_h, LirParamsT<S>& p) {
  VarT<S> hbar = tanh(affine(t, p.W_h, parent_embedding, p.b_h));
  return attend(t, hbar, p.W_alpha, child_h);
}

// Child -> parent composition. Handles the childless case (empty forget
// sum), which doubles as the leaf rule when htilde is the zero vector.
template <typename S>
NodeStateT<S> lir_cell_dependency(TapeT<S>& t, VarT<S> parent_embedding, VarT<S> htilde,
                                  const std::vector<NodeStateT<S>>& children, LirParamsT<S>& p) {
  VarT<S> i = sigmoid(add(add(matvec(t.leaf(p.U_i), parent_embedding), matvec(t.leaf(p.W_i), htilde)),
                          t.leaf(p.b_i)));
  VarT<S> o = sigmoid(add(add(matvec(t.leaf(p.U_o), parent_embedding), matvec(t.leaf(p.W_o), htilde)),
                          t.leaf(p.b_o)));
  VarT<S> u = tanh(add(add(matvec(t.leaf(p.U_u), parent_embedding), matvec(t.leaf(p.W_u), htilde)),
                       t.leaf(p.b_u)));
  VarT<S> c = mul(i, u);
  for (const NodeStateT<S>& k : children) {
    VarT<S> f = sigmoid(add(add(matvec(t.leaf(p.U_f), parent_embedding), matvec(t.leaf(p.W_f), k.h)),
                            t.leaf(p.b_f)));
    c = add(c, mul(f, k.c));
  }
  return {mul(o, tanh(c)), c};
}

// Constituency composition: both children act as controllers over the
// child pair, their pooled states are concatenated, and the parent
// embedding term vanishes (x_p is a zero vector for non-terminals).
template <typename S>
NodeStateT<S> lir_cell_constituency(TapeT<S>& t, const NodeStateT<S>& left,
                                    const NodeStateT<S>& right, LirParamsT<S>& p,
                                    std::vector<TensorT<S>>* lambdas = nullptr) {
  std::vector<VarT<S>> pair{left.h, right.h};
  VarT<S> hbar_l = tanh(affine(t, p.W_h, left.h, p.b_h));
  VarT<S> hbar_r = tanh(affine(t, p.W_h, right.h, p.b_h));
  AttnResultT<S> al = attend(t, hbar_l, p.W_alpha, pair);
  AttnResultT<S> ar = attend(t, hbar_r, p.W_alpha, pair);
  if (lambdas) {
    lambdas->push_back(al.lambda);
    lambdas->push_back(ar.lambda);
  }
  VarT<S> htilde = concat(al.pooled, ar.pooled);

  VarT<S> i = sigmoid(add(matvec(t.leaf(p.W_i), htilde), t.leaf(p.b_i)));
  VarT<S> o = sigmoid(add(matvec(t.leaf(p.W_o), htilde), t.leaf(p.b_o)));
  VarT<S> u = tanh(add(matvec(t.leaf(p.W_u), htilde), t.leaf(p.b_u)));
  VarT<S> f_l = sigmoid(add(matvec(t.leaf(p.W_f), left.h), t.leaf(p.b_f)));
  VarT<S> f_r = sigmoid(add(matvec(t.leaf(p.W_f), right.h), t.leaf(p.b_f)));
  VarT<S> c = add(mul(i, u), add(mul(f_l, left.c), mul(f_r, right.c)));
  return {mul(o, tanh(c)), c};
}

// Leaf initialization shared by both tree kinds: h is the bi-LSTM output
// for the token, c comes from running the gates on the token embedding
// with a zero interaction state.
template <typename S>
NodeStateT<S> lir_leaf_state(TapeT<S>& t, VarT<S> token_embedding, VarT<S> bilstm_h,
                             LirParamsT<S>& p) {
  VarT<S> i = sigmoid(add(matvec(t.leaf(p.U_i), token_embedding), t.leaf(p.b_i)));
  VarT<S> u = tanh(add(matvec(t.leaf(p.U_u), token_embedding), t.leaf(p.b_u)));
  return {bilstm_h, mul(i, u)};
}

template <typename S>
struct LirEncodingT {
  std::vector<NodeStateT<S>> token_states;  // one per token, 0-based
  VarT<S> root_h;
  std::vector<TensorT<S>> lambdas;  // every attention distribution of the pass
};

using LirEncoding = LirEncodingT<double>;

// Bottom-up traversal for dependency trees: every token is a node; parents
// are recomputed from their (already final) children.
template <typename S>
LirEncodingT<S> lir_encode(TapeT<S>& t, const Sentence& sentence, const DependencyTree& tree,
                           const std::vector<VarT<S>>& embeddings,
                           const std::vector<VarT<S>>& bilstm_h, LirParamsT<S>& p) {
  int n = static_cast<int>(sentence.tokens.size());
  if (tree.size() != n)
    throw_domain("lir_encode: tree has " + std::to_string(tree.size()) + " nodes for " +
                 std::to_string(n) + " tokens");
  if (p.kind != TreeKind::dependency) throw_domain("lir_encode: parameters are not dependency-shaped");

  LirEncodingT<S> enc;
  enc.token_states.resize(static_cast<size_t>(n));
  auto ch = tree.children();
  for (int i = 0; i < n; ++i)
    if (ch[static_cast<size_t>(i) + 1].empty())
      enc.token_states[static_cast<size_t>(i)] =
          lir_leaf_state(t, embeddings[static_cast<size_t>(i)], bilstm_h[static_cast<size_t>(i)], p);

  for (const ParentChildEntry& e : bottom_up_order(tree)) {
    std::vector<VarT<S>> child_h;
    std::vector<NodeStateT<S>> child_states;
    for (int c : e.children) {
      child_h.push_back(enc.token_states[static_cast<size_t>(c - 1)].h);
      child_states.push_back(enc.token_states[static_cast<size_t>(c - 1)]);
    }
    VarT<S> x_p = embeddings[static_cast<size_t>(e.parent - 1)];
    AttnResultT<S> attn = lir_controller(t, x_p, child_h, p);
    enc.lambdas.push_back(attn.lambda);
    enc.token_states[static_cast<size_t>(e.parent - 1)] =
        lir_cell_dependency(t, x_p, attn.pooled, child_states, p);
  }
  enc.root_h = enc.token_states[static_cast<size_t>(tree.root() - 1)].h;
  return enc;
}

// Constituency variant: token states are the leaf states; interior nodes
// compose upward to the root.
template <typename S>
LirEncodingT<S> lir_encode(TapeT<S>& t, const Sentence& sentence, const ConstituencyTree& tree,
                           const std::vector<VarT<S>>& embeddings,
                           const std::vector<VarT<S>>& bilstm_h, LirParamsT<S>& p) {
  int n = static_cast<int>(sentence.tokens.size());
  tree.validate(n, "lir_encode");
  if (p.kind != TreeKind::constituency)
    throw_domain("lir_encode: parameters are not constituency-shaped");

  LirEncodingT<S> enc;
  enc.token_states.resize(static_cast<size_t>(n));
  std::vector<NodeStateT<S>> by_node(tree.nodes.size());
  for (int id : tree.leaf_ids_in_order()) {
    int tok = tree.node(id).token;
    NodeStateT<S> st = lir_leaf_state(t, embeddings[static_cast<size_t>(tok - 1)],
                                      bilstm_h[static_cast<size_t>(tok - 1)], p);
    by_node[static_cast<size_t>(id)] = st;
    enc.token_states[static_cast<size_t>(tok - 1)] = st;
  }
  for (const ParentChildEntry& e : bottom_up_order(tree)) {
    by_node[static_cast<size_t>(e.parent)] =
        lir_cell_constituency(t, by_node[static_cast<size_t>(e.children[0])],
                              by_node[static_cast<size_t>(e.children[1])], p, &enc.lambdas);
  }
  enc.root_h = by_node[static_cast<size_t>(tree.root)].h;
  return enc;
}

}  // namespace tir
