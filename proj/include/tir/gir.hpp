#pragma once

#include <vector>

#include "tir/autograd.hpp"
#include "tir/bilstm.hpp"
#include "tir/rng.hpp"

namespace tir {

// Global interaction representation: every word attends over the other
// words of the sentence (enumeration strategy) and the interaction vectors
// are max-pooled into the sentence embedding.

template <typename S>
struct GirParamsT {
  ParameterT<S> W_alpha;  // d_h x d_h, distinct from the LIR connective matrix
  bool include_self = false;

  GirParamsT() = default;
  GirParamsT(int d_h, Rng& rng, bool include_self_ = false) : include_self(include_self_) {
    W_alpha = ParameterT<S>("gir.W_alpha", TensorT<S>::zeros({d_h, d_h}));
    init_matrix(W_alpha, rng);
  }

  std::vector<ParameterT<S>*> params() { return {&W_alpha}; }
};

using GirParams = GirParamsT<double>;

template <typename S>
struct GirAttendResultT {
  VarT<S> r;
  TensorT<S> lambda;  // empty for the single-word fallback
};

using GirAttendResult = GirAttendResultT<double>;

// r_g for controller g. By default the controller is excluded from its own
// attention targets; with a single word there is nothing to attend over and
// r_g falls back to h_g.
template <typename S>
GirAttendResultT<S> gir_attend(TapeT<S>& t, const std::vector<VarT<S>>& hs, int g,
                               GirParamsT<S>& p) {
  int n = static_cast<int>(hs.size());
  if (g < 0 || g >= n) throw_domain("gir_attend: controller index " + std::to_string(g) + " out of range");
  if (n == 1) return {hs[0], TensorT<S>()};

  std::vector<VarT<S>> targets;
  targets.reserve(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k)
    if (p.include_self || k != g) targets.push_back(hs[static_cast<size_t>(k)]);

  VarT<S> w = t.leaf(p.W_alpha);
  VarT<S> logits;
  for (size_t k = 0; k < targets.size(); ++k) {
    VarT<S> a = dot(hs[static_cast<size_t>(g)], matvec(w, targets[k]));
    logits = k == 0 ? a : concat(logits, a);
  }
  VarT<S> lambda = softmax(logits);
  return {weighted_sum(lambda, targets), t.val(lambda)};
}

template <typename S>
struct GirEncodingT {
  std::vector<VarT<S>> r;  // interaction representation per word
  VarT<S> s;               // coordinatewise max over r
  std::vector<TensorT<S>> lambdas;
};

using GirEncoding = GirEncodingT<double>;

template <typename S>
GirEncodingT<S> gir_encode(TapeT<S>& t, const std::vector<VarT<S>>& hs, GirParamsT<S>& p) {
  if (hs.empty()) throw_domain("gir_encode: empty sequence");
  GirEncodingT<S> enc;
  for (int g = 0; g < static_cast<int>(hs.size()); ++g) {
    GirAttendResultT<S> a = gir_attend(t, hs, g, p);
    enc.r.push_back(a.r);
    if (a.lambda.numel() > 0) enc.lambdas.push_back(a.lambda);
  }
  enc.s = maxpool_rows(enc.r);
  return enc;
}

}  // namespace tir
