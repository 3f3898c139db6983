#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "tir/autograd.hpp"

namespace tir {

inline double gradcheck_rel_err(double ga, double gn) {
  return std::abs(ga - gn) / std::max(1e-8, std::abs(ga) + std::abs(gn));
}

// Compares analytic gradients against central finite differences.
//
// `loss_fn` must be a pure function of the parameter values: it builds a
// fresh tape, runs forward and backward (accumulating into param.grad),
// and returns the loss value. Returns the worst relative error
// |g_a - g_n| / max(1e-8, |g_a| + |g_n|) over every parameter entry.
inline double grad_check(const std::function<double()>& loss_fn,
                         const std::vector<Parameter*>& params, double eps = 1e-5) {
  if (eps <= 0.0) throw_domain("grad_check: eps must be positive");

  for (Parameter* p : params) p->zero_grad();
  loss_fn();
  std::vector<Tensor> analytic;
  analytic.reserve(params.size());
  for (Parameter* p : params) analytic.push_back(p->grad);

  double worst = 0.0;
  for (size_t pi = 0; pi < params.size(); ++pi) {
    Parameter& p = *params[pi];
    for (size_t i = 0; i < p.value.values.size(); ++i) {
      double saved = p.value.values[i];
      p.value.values[i] = saved + eps;
      double up = loss_fn();
      p.value.values[i] = saved - eps;
      double down = loss_fn();
      p.value.values[i] = saved;

      double numeric = (up - down) / (2.0 * eps);
      worst = std::max(worst, gradcheck_rel_err(analytic[pi].values[i], numeric));
    }
  }
  // The finite-difference passes accumulated junk into the grads; leave
  // them clean for the caller.
  for (Parameter* p : params) p->zero_grad();
  return worst;
}

// Same comparison, but the central-difference evaluations run through a
// mirror of the parameters at scalar type S (typically long double). The
// analytic gradients under test are still the double-precision ones; the
// extended evaluation only keeps finite-difference roundoff from drowning
// near-zero gradient entries.
template <typename S>
double grad_check_extended(const std::function<double()>& loss_fn,
                           const std::vector<Parameter*>& params,
                           const std::function<S()>& eval_fn,
                           const std::vector<ParameterT<S>*>& eval_params, double eps = 1e-5) {
  if (eps <= 0.0) throw_domain("grad_check: eps must be positive");
  if (params.size() != eval_params.size())
    throw_domain("grad_check: parameter mirrors do not line up");

  for (Parameter* p : params) p->zero_grad();
  loss_fn();

  double worst = 0.0;
  for (size_t pi = 0; pi < params.size(); ++pi) {
    ParameterT<S>& p = *eval_params[pi];
    for (size_t i = 0; i < p.value.values.size(); ++i) {
      S saved = p.value.values[i];
      p.value.values[i] = saved + S(eps);
      S up = eval_fn();
      p.value.values[i] = saved - S(eps);
      S down = eval_fn();
      p.value.values[i] = saved;

      double numeric = static_cast<double>((up - down) / (S(2.0) * S(eps)));
      worst = std::max(worst, gradcheck_rel_err(params[pi]->grad.values[i], numeric));
    }
  }
  for (Parameter* p : params) p->zero_grad();
  return worst;
}

}  // namespace tir
