#pragma once

// Shared test utilities: random tree generators and tiny corpora.

#include <string>
#include <vector>

#include "tir/diag.hpp"
#include "tir/rng.hpp"
#include "tir/tensor.hpp"
#include "tir/tree.hpp"

namespace testutil {

using tir::random_binary_tree;
using tir::random_dep_tree;

// Random k-ary bracketing over the given tokens, exercising label handling,
// unary chains, and binarization in the reader.
inline std::string random_sexpr(const std::vector<std::string>& tokens, tir::Rng& rng) {
  std::function<std::string(int, int)> build = [&](int lo, int hi) -> std::string {
    if (hi - lo == 1) {
      if (tir::uniform_int(rng, 3) == 0) return "(T " + tokens[static_cast<size_t>(lo)] + ")";
      return tokens[static_cast<size_t>(lo)];
    }
    int span = hi - lo;
    int parts = 2 + tir::uniform_int(rng, std::min(3, span - 1));
    std::vector<int> cuts{lo};
    for (int p = 1; p < parts; ++p) cuts.push_back(lo + 1 + tir::uniform_int(rng, span - 1));
    std::sort(cuts.begin() + 1, cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    cuts.push_back(hi);
    std::string out = "(N";
    for (size_t i = 0; i + 1 < cuts.size(); ++i) out += " " + build(cuts[i], cuts[i + 1]);
    return out + ")";
  };
  if (tokens.size() == 1) return "(S " + tokens[0] + ")";
  return build(0, static_cast<int>(tokens.size()));
}

inline std::vector<std::string> synth_tokens(int n, tir::Rng& rng, int vocab = 20) {
  std::vector<std::string> toks(static_cast<size_t>(n));
  for (auto& t : toks) t = "tok" + std::to_string(tir::uniform_int(rng, vocab));
  return toks;
}

inline tir::Tensor random_tensor(std::vector<int> shape, tir::Rng& rng, double lo = -1.0,
                                 double hi = 1.0) {
  tir::Tensor t = tir::Tensor::zeros(std::move(shape));
  for (double& v : t.values) v = tir::uniform(rng, lo, hi);
  return t;
}

}  // namespace testutil
