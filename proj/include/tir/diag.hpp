#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tir/gradcheck.hpp"
#include "tir/model.hpp"
#include "tir/rng.hpp"
#include "tir/tree.hpp"

namespace tir {

// Random labeled tree: shuffle the nodes and attach each to a random
// earlier one, which guarantees a single root and acyclicity.
inline DependencyTree random_dep_tree(int n, Rng& rng) {
  std::vector<int> order(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i + 1;
  shuffle_inplace(order, rng);
  DependencyTree t;
  t.heads.assign(static_cast<size_t>(n), 0);
  for (int i = 1; i < n; ++i) {
    int parent = order[static_cast<size_t>(uniform_int(rng, i))];
    t.heads[static_cast<size_t>(order[static_cast<size_t>(i)] - 1)] = parent;
  }
  return t;
}

// Random binary bracketing over tokens 1..n.
inline ConstituencyTree random_binary_tree(int n, Rng& rng) {
  ConstituencyTree t;
  std::function<int(int, int)> build = [&](int lo, int hi) -> int {
    if (hi - lo == 1) return t.add_leaf(lo + 1);
    int cut = lo + 1 + uniform_int(rng, hi - lo - 1);
    return t.add_internal(build(lo, cut), build(cut, hi));
  };
  t.root = build(0, n);
  return t;
}

// Random example over a small synthetic vocabulary, with a tree of the
// requested kind.
inline Example random_example(int len, int n_classes, TreeKind kind, Rng& rng, int vocab = 8) {
  Example ex;
  for (int i = 0; i < len; ++i)
    ex.sentence.tokens.push_back("w" + std::to_string(uniform_int(rng, vocab)));
  ex.sentence.label = uniform_int(rng, n_classes);
  ex.sentence.raw_length = 3 * len;
  ex.kind = kind;
  if (kind == TreeKind::dependency)
    ex.dep = random_dep_tree(len, rng);
  else if (kind == TreeKind::constituency)
    ex.cons = random_binary_tree(len, rng);
  return ex;
}

inline Vocabulary synthetic_vocab(int vocab = 8) {
  std::vector<Sentence> corpus(1);
  for (int i = 0; i < vocab; ++i) corpus[0].tokens.push_back("w" + std::to_string(i));
  return Vocabulary::build(corpus, 1);
}

struct GradCheckCase {
  TreeKind kind;
  double gamma;
  int length;
  double max_rel_err;
};

// Finite-difference verification of the full model: every parameter of
// hir_forward + joint_loss, both tree kinds, gamma in {0, 0.5, 1}.
// `length` = 0 sweeps sentence lengths 2..6. Dropout and batch
// normalization are disabled so the checked graph is deterministic.
//
// The analytic gradients are the double-precision artifact's; the two
// central-difference evaluations run through the same code instantiated at
// long double, which resolves the difference quotient well below the 1e-4
// tolerance even for near-zero gradient entries.
inline std::vector<GradCheckCase> run_hir_gradcheck(int d_e, int d_h, int n_classes, double eps,
                                                    uint64_t seed, int length = 0,
                                                    Mode mode = Mode::hir) {
  std::vector<int> lengths;
  if (length > 0)
    lengths.push_back(length);
  else
    for (int l = 2; l <= 6; ++l) lengths.push_back(l);

  std::vector<GradCheckCase> cases;
  Rng rng = substream(seed, "gradcheck");
  for (TreeKind kind : {TreeKind::dependency, TreeKind::constituency}) {
    for (double gamma : {0.0, 0.5, 1.0}) {
      for (int len : lengths) {
        ModelConfig cfg;
        cfg.d_e = d_e;
        cfg.d_h = d_h;
        cfg.n_classes = n_classes;
        cfg.mode = mode;
        cfg.tree_kind = kind;
        cfg.gamma = gamma;
        cfg.dropout_layers = 0.0;
        cfg.dropout_embed = 0.0;
        cfg.batchnorm = false;
        InteractionModel model(cfg, synthetic_vocab(), rng);
        Example ex = random_example(len, n_classes, kind, rng);

        auto loss_fn = [&]() {
          Tape t;
          auto r = model.forward(t, ex, false, nullptr);
          Var loss = model.joint_loss(t, r.f, r.probs, ex.sentence.label, gamma);
          t.backward(loss);
          return t.val(loss)[0];
        };
        InteractionModelT<long double> mirror = convert_model<long double>(model);
        auto eval_fn = [&]() -> long double {
          TapeT<long double> t;
          auto r = mirror.forward(t, ex, false, nullptr);
          VarT<long double> loss = mirror.joint_loss(t, r.f, r.probs, ex.sentence.label, gamma);
          return t.val(loss)[0];
        };
        double err = grad_check_extended<long double>(loss_fn, model.all_params(), eval_fn,
                                                      mirror.all_params(), eps);
        cases.push_back({kind, gamma, len, err});
      }
    }
  }
  return cases;
}

}  // namespace tir
