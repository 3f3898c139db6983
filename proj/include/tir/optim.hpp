#pragma once

#include <cmath>
#include <vector>

#include "tir/autograd.hpp"

namespace tir {

// Adam with per-parameter learning rates fixed at registration. Frozen
// parameters are skipped entirely: no value update, no moment update, no
// step-count advance, so a layer unfrozen at epoch k starts its schedule
// there.
class Adam {
 public:
  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  static constexpr double kEps = 1e-8;

  Adam() = default;

  void add(Parameter* p, double lr) {
    params_.push_back(p);
    lrs_.push_back(lr);
    states_.push_back(State{0, Tensor::zeros(p->value.shape), Tensor::zeros(p->value.shape)});
  }

  void add(const std::vector<Parameter*>& ps, double lr) {
    for (Parameter* p : ps) add(p, lr);
  }

  void step() {
    for (size_t i = 0; i < params_.size(); ++i) {
      Parameter& p = *params_[i];
      if (p.frozen) continue;
      State& s = states_[i];
      ++s.t;
      double bc1 = 1.0 - std::pow(kBeta1, static_cast<double>(s.t));
      double bc2 = 1.0 - std::pow(kBeta2, static_cast<double>(s.t));
      for (size_t k = 0; k < p.value.values.size(); ++k) {
        double g = p.grad.values[k];
        s.m.values[k] = kBeta1 * s.m.values[k] + (1.0 - kBeta1) * g;
        s.v.values[k] = kBeta2 * s.v.values[k] + (1.0 - kBeta2) * g * g;
        double mhat = s.m.values[k] / bc1;
        double vhat = s.v.values[k] / bc2;
        p.value.values[k] -= lrs_[i] * mhat / (std::sqrt(vhat) + kEps);
      }
    }
  }

  void zero_grad() {
    for (Parameter* p : params_) p->zero_grad();
  }

  const std::vector<Parameter*>& params() const { return params_; }

 private:
  struct State {
    long t;
    Tensor m, v;
  };
  std::vector<Parameter*> params_;
  std::vector<double> lrs_;
  std::vector<State> states_;
};

}  // namespace tir
