#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tir/error.hpp"
#include "tir/rng.hpp"
#include "tir/tensor.hpp"

namespace tir {

// A learnable tensor. Gradients accumulate across backward calls and are
// zeroed explicitly by the training loop. `frozen` is honored by the
// optimizer, not by the tape: frozen parameters still receive gradients.
template <typename S>
struct ParameterT {
  std::string name;
  TensorT<S> value;
  TensorT<S> grad;
  bool frozen = false;

  ParameterT() = default;
  ParameterT(std::string n, TensorT<S> v)
      : name(std::move(n)), value(std::move(v)), grad(TensorT<S>::zeros(value.shape)) {}

  void zero_grad() { std::fill(grad.values.begin(), grad.values.end(), S(0)); }
};

using Parameter = ParameterT<double>;

template <typename S>
class TapeT;

// Lightweight handle to a tape node.
template <typename S>
struct VarT {
  TapeT<S>* tape = nullptr;
  int id = -1;
};

using Var = VarT<double>;

// Reverse-mode tape. Nodes are appended in forward order, which is a
// topological order by construction, so the backward sweep is a single
// reverse pass over the record. Each node's closure pushes its output
// gradient into its inputs; leaf nodes push into their Parameter.
template <typename S>
class TapeT {
 public:
  VarT<S> leaf(ParameterT<S>& p) { return push(Node{p.value, {}, nullptr, &p, -1}); }

  // Row slice of a rank-2 parameter; the usual embedding lookup.
  VarT<S> row(ParameterT<S>& p, int r) {
    if (!p.value.is_matrix()) throw_shape("row: parameter " + p.name + " is not a matrix");
    if (r < 0 || r >= p.value.rows())
      throw_domain("row: index " + std::to_string(r) + " out of range for " + p.name);
    int c = p.value.cols();
    TensorT<S> v({c}, std::vector<S>(p.value.values.begin() + static_cast<long>(r) * c,
                                     p.value.values.begin() + static_cast<long>(r + 1) * c));
    return push(Node{std::move(v), {}, nullptr, &p, r});
  }

  VarT<S> constant(TensorT<S> t) { return push(Node{std::move(t), {}, nullptr, nullptr, -1}); }

  VarT<S> emit(TensorT<S> value, std::function<void(TapeT&, int)> back) {
    return push(Node{std::move(value), {}, std::move(back), nullptr, -1});
  }

  const TensorT<S>& val(int id) const { return nodes_[static_cast<size_t>(id)].value; }
  const TensorT<S>& val(VarT<S> v) const { return val(v.id); }
  TensorT<S>& grad_ref(int id) { return nodes_[static_cast<size_t>(id)].grad; }
  const TensorT<S>& grad(VarT<S> v) const { return nodes_[static_cast<size_t>(v.id)].grad; }

  size_t size() const { return nodes_.size(); }

  // Accumulates d loss / d param into every touched Parameter. May be
  // called repeatedly; each call adds one full gradient (pure accumulation).
  void backward(VarT<S> loss) {
    if (loss.tape != this) throw_domain("backward: loss does not belong to this tape");
    const TensorT<S>& lv = val(loss.id);
    if (!lv.is_scalar()) throw_domain("backward: loss is not scalar, shape " + lv.shape_string());

    for (int i = 0; i <= loss.id; ++i) {
      Node& n = nodes_[static_cast<size_t>(i)];
      n.grad = TensorT<S>::zeros(n.value.shape);
    }
    grad_ref(loss.id)[0] = S(1);

    for (int i = loss.id; i >= 0; --i) {
      Node& n = nodes_[static_cast<size_t>(i)];
      if (n.back) n.back(*this, i);
      if (n.param) {
        if (n.param_row < 0) {
          for (size_t k = 0; k < n.grad.values.size(); ++k) n.param->grad.values[k] += n.grad.values[k];
        } else {
          int c = n.param->value.cols();
          S* dst = n.param->grad.values.data() + static_cast<long>(n.param_row) * c;
          for (int k = 0; k < c; ++k) dst[k] += n.grad.values[static_cast<size_t>(k)];
        }
      }
    }
  }

 private:
  struct Node {
    TensorT<S> value;
    TensorT<S> grad;
    std::function<void(TapeT&, int)> back;
    ParameterT<S>* param;
    int param_row;
  };

  VarT<S> push(Node n) {
    nodes_.push_back(std::move(n));
    return VarT<S>{this, static_cast<int>(nodes_.size()) - 1};
  }

  std::vector<Node> nodes_;
};

using Tape = TapeT<double>;

namespace detail {
template <typename S>
TapeT<S>& same_tape(VarT<S> a, VarT<S> b, const char* op) {
  if (a.tape == nullptr || a.tape != b.tape)
    throw_domain(std::string(op) + ": operands on different tapes");
  return *a.tape;
}
}  // namespace detail

// ---- primitive operations ------------------------------------------------

template <typename S>
VarT<S> matmul(VarT<S> a, VarT<S> b) {
  TapeT<S>& t = detail::same_tape(a, b, "matmul");
  const TensorT<S>& A = t.val(a);
  const TensorT<S>& B = t.val(b);
  if (!A.is_matrix() || !B.is_matrix() || A.cols() != B.rows())
    throw_shape("matmul: incompatible shapes " + A.shape_string() + " and " + B.shape_string());
  int m = A.rows(), k = A.cols(), n = B.cols();
  TensorT<S> out = TensorT<S>::zeros({m, n});
  for (int i = 0; i < m; ++i)
    for (int p = 0; p < k; ++p) {
      S av = A.at(i, p);
      for (int j = 0; j < n; ++j) out.at(i, j) += av * B.at(p, j);
    }
  int ai = a.id, bi = b.id;
  return t.emit(std::move(out), [ai, bi, m, k, n](TapeT<S>& tp, int self) {
    const TensorT<S>& G = tp.grad_ref(self);
    const TensorT<S>& A = tp.val(ai);
    const TensorT<S>& B = tp.val(bi);
    TensorT<S>& dA = tp.grad_ref(ai);
    TensorT<S>& dB = tp.grad_ref(bi);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) {
        S g = G.at(i, j);
        for (int p = 0; p < k; ++p) {
          dA.at(i, p) += g * B.at(p, j);
          dB.at(p, j) += g * A.at(i, p);
        }
      }
  });
}

// Matrix-vector product, the workhorse of every gate equation.
template <typename S>
VarT<S> matvec(VarT<S> m, VarT<S> x) {
  TapeT<S>& t = detail::same_tape(m, x, "matvec");
  const TensorT<S>& M = t.val(m);
  const TensorT<S>& X = t.val(x);
  if (!M.is_matrix() || !X.is_vector() || M.cols() != X.rows())
    throw_shape("matvec: incompatible shapes " + M.shape_string() + " and " + X.shape_string());
  int r = M.rows(), c = M.cols();
  TensorT<S> out = TensorT<S>::zeros({r});
  for (int i = 0; i < r; ++i) {
    S acc = S(0);
    const S* mr = M.values.data() + static_cast<long>(i) * c;
    for (int j = 0; j < c; ++j) acc += mr[j] * X.values[static_cast<size_t>(j)];
    out[static_cast<size_t>(i)] = acc;
  }
  int mi = m.id, xi = x.id;
  return t.emit(std::move(out), [mi, xi, r, c](TapeT<S>& tp, int self) {
    const TensorT<S>& G = tp.grad_ref(self);
    const TensorT<S>& M = tp.val(mi);
    const TensorT<S>& X = tp.val(xi);
    TensorT<S>& dM = tp.grad_ref(mi);
    TensorT<S>& dX = tp.grad_ref(xi);
    for (int i = 0; i < r; ++i) {
      S g = G.values[static_cast<size_t>(i)];
      S* dmr = dM.values.data() + static_cast<long>(i) * c;
      const S* mr = M.values.data() + static_cast<long>(i) * c;
      for (int j = 0; j < c; ++j) {
        dmr[j] += g * X.values[static_cast<size_t>(j)];
        dX.values[static_cast<size_t>(j)] += g * mr[j];
      }
    }
  });
}

template <typename S>
VarT<S> dot(VarT<S> a, VarT<S> b) {
  TapeT<S>& t = detail::same_tape(a, b, "dot");
  const TensorT<S>& A = t.val(a);
  const TensorT<S>& B = t.val(b);
  if (!A.is_vector() || !B.is_vector() || A.numel() != B.numel())
    throw_shape("dot: incompatible shapes " + A.shape_string() + " and " + B.shape_string());
  S acc = S(0);
  for (size_t i = 0; i < A.values.size(); ++i) acc += A.values[i] * B.values[i];
  int ai = a.id, bi = b.id;
  return t.emit(TensorT<S>::scalar(acc), [ai, bi](TapeT<S>& tp, int self) {
    S g = tp.grad_ref(self)[0];
    const TensorT<S>& A = tp.val(ai);
    const TensorT<S>& B = tp.val(bi);
    TensorT<S>& dA = tp.grad_ref(ai);
    TensorT<S>& dB = tp.grad_ref(bi);
    for (size_t i = 0; i < A.values.size(); ++i) {
      dA.values[i] += g * B.values[i];
      dB.values[i] += g * A.values[i];
    }
  });
}

namespace detail {

template <typename S, typename Fwd, typename Bwd>
VarT<S> binary_elementwise(VarT<S> a, VarT<S> b, const char* name, Fwd fwd, Bwd bwd) {
  TapeT<S>& t = same_tape(a, b, name);
  const TensorT<S>& A = t.val(a);
  const TensorT<S>& B = t.val(b);
  if (!A.same_shape(B))
    throw_shape(std::string(name) + ": shape mismatch " + A.shape_string() + " vs " + B.shape_string());
  TensorT<S> out = TensorT<S>::zeros(A.shape);
  for (size_t i = 0; i < A.values.size(); ++i) out.values[i] = fwd(A.values[i], B.values[i]);
  int ai = a.id, bi = b.id;
  return t.emit(std::move(out), [ai, bi, bwd](TapeT<S>& tp, int self) {
    const TensorT<S>& G = tp.grad_ref(self);
    const TensorT<S>& A = tp.val(ai);
    const TensorT<S>& B = tp.val(bi);
    TensorT<S>& dA = tp.grad_ref(ai);
    TensorT<S>& dB = tp.grad_ref(bi);
    for (size_t i = 0; i < G.values.size(); ++i) {
      auto [da, db] = bwd(G.values[i], A.values[i], B.values[i]);
      dA.values[i] += da;
      dB.values[i] += db;
    }
  });
}

template <typename S, typename Fwd, typename Bwd>
VarT<S> unary_elementwise(VarT<S> a, const char* name, Fwd fwd, Bwd bwd) {
  if (a.tape == nullptr) throw_domain(std::string(name) + ": empty operand");
  TapeT<S>& t = *a.tape;
  const TensorT<S>& A = t.val(a);
  TensorT<S> out = TensorT<S>::zeros(A.shape);
  for (size_t i = 0; i < A.values.size(); ++i) out.values[i] = fwd(A.values[i]);
  int ai = a.id;
  return t.emit(std::move(out), [ai, bwd](TapeT<S>& tp, int self) {
    const TensorT<S>& G = tp.grad_ref(self);
    const TensorT<S>& A = tp.val(ai);
    const TensorT<S>& Y = tp.val(self);
    TensorT<S>& dA = tp.grad_ref(ai);
    for (size_t i = 0; i < G.values.size(); ++i) dA.values[i] += bwd(G.values[i], A.values[i], Y.values[i]);
  });
}

}  // namespace detail

template <typename S>
VarT<S> add(VarT<S> a, VarT<S> b) {
  return detail::binary_elementwise(
      a, b, "add", [](S x, S y) { return x + y; },
      [](S g, S, S) { return std::pair<S, S>{g, g}; });
}

template <typename S>
VarT<S> sub(VarT<S> a, VarT<S> b) {
  return detail::binary_elementwise(
      a, b, "sub", [](S x, S y) { return x - y; },
      [](S g, S, S) { return std::pair<S, S>{g, -g}; });
}

template <typename S>
VarT<S> mul(VarT<S> a, VarT<S> b) {
  return detail::binary_elementwise(
      a, b, "mul", [](S x, S y) { return x * y; },
      [](S g, S x, S y) { return std::pair<S, S>{g * y, g * x}; });
}

template <typename S>
VarT<S> div(VarT<S> a, VarT<S> b) {
  return detail::binary_elementwise(
      a, b, "div", [](S x, S y) { return x / y; },
      [](S g, S x, S y) { return std::pair<S, S>{g / y, -g * x / (y * y)}; });
}

template <typename S>
VarT<S> tanh(VarT<S> a) {
  return detail::unary_elementwise(
      a, "tanh", [](S x) { return std::tanh(x); },
      [](S g, S, S y) { return g * (S(1) - y * y); });
}

template <typename S>
VarT<S> sigmoid(VarT<S> a) {
  return detail::unary_elementwise(
      a, "sigmoid", [](S x) { return S(1) / (S(1) + std::exp(-x)); },
      [](S g, S, S y) { return g * y * (S(1) - y); });
}

template <typename S>
VarT<S> exp(VarT<S> a) {
  return detail::unary_elementwise(
      a, "exp", [](S x) { return std::exp(x); },
      [](S g, S, S y) { return g * y; });
}

template <typename S>
VarT<S> log(VarT<S> a) {
  return detail::unary_elementwise(
      a, "log", [](S x) { return std::log(x); },
      [](S g, S x, S) { return g / x; });
}

template <typename S>
VarT<S> sqrt(VarT<S> a) {
  return detail::unary_elementwise(
      a, "sqrt", [](S x) { return std::sqrt(x); },
      [](S g, S, S y) { return g * S(0.5) / y; });
}

template <typename S>
VarT<S> scale(VarT<S> a, double c) {
  return detail::unary_elementwise(
      a, "scale", [c](S x) { return S(c) * x; },
      [c](S g, S, S) { return g * S(c); });
}

template <typename S>
VarT<S> add_scalar(VarT<S> a, double c) {
  return detail::unary_elementwise(
      a, "add_scalar", [c](S x) { return x + S(c); },
      [](S g, S, S) { return g; });
}

// Vector concatenation; either side may be empty.
template <typename S>
VarT<S> concat(VarT<S> a, VarT<S> b) {
  TapeT<S>& t = detail::same_tape(a, b, "concat");
  const TensorT<S>& A = t.val(a);
  const TensorT<S>& B = t.val(b);
  if (!A.is_vector() || !B.is_vector())
    throw_shape("concat: expected vectors, got " + A.shape_string() + " and " + B.shape_string());
  TensorT<S> out = TensorT<S>::zeros({A.rows() + B.rows()});
  std::copy(A.values.begin(), A.values.end(), out.values.begin());
  std::copy(B.values.begin(), B.values.end(), out.values.begin() + A.numel());
  int ai = a.id, bi = b.id;
  long na = A.numel();
  return t.emit(std::move(out), [ai, bi, na](TapeT<S>& tp, int self) {
    const TensorT<S>& G = tp.grad_ref(self);
    TensorT<S>& dA = tp.grad_ref(ai);
    TensorT<S>& dB = tp.grad_ref(bi);
    for (long i = 0; i < na; ++i) dA.values[static_cast<size_t>(i)] += G.values[static_cast<size_t>(i)];
    for (size_t i = static_cast<size_t>(na); i < G.values.size(); ++i)
      dB.values[i - static_cast<size_t>(na)] += G.values[i];
  });
}

// Numerically stable softmax over a vector.
template <typename S>
VarT<S> softmax(VarT<S> v) {
  if (v.tape == nullptr) throw_domain("softmax: empty operand");
  TapeT<S>& t = *v.tape;
  const TensorT<S>& V = t.val(v);
  if (!V.is_vector() || V.numel() == 0) throw_domain("softmax: input must be a nonempty vector");
  S mx = *std::max_element(V.values.begin(), V.values.end());
  TensorT<S> out = TensorT<S>::zeros(V.shape);
  S z = S(0);
  for (size_t i = 0; i < V.values.size(); ++i) {
    out.values[i] = std::exp(V.values[i] - mx);
    z += out.values[i];
  }
  for (S& o : out.values) o /= z;
  int vi = v.id;
  return t.emit(std::move(out), [vi](TapeT<S>& tp, int self) {
    const TensorT<S>& G = tp.grad_ref(self);
    const TensorT<S>& P = tp.val(self);
    TensorT<S>& dV = tp.grad_ref(vi);
    S gp = S(0);
    for (size_t i = 0; i < G.values.size(); ++i) gp += G.values[i] * P.values[i];
    for (size_t i = 0; i < G.values.size(); ++i) dV.values[i] += P.values[i] * (G.values[i] - gp);
  });
}

// Coordinatewise max over equally sized vectors; gradient flows to the
// argmax row only, ties resolved toward the lowest row index.
template <typename S>
VarT<S> maxpool_rows(const std::vector<VarT<S>>& rows) {
  if (rows.empty()) throw_domain("maxpool_rows: empty sequence");
  TapeT<S>& t = *rows[0].tape;
  const TensorT<S>& first = t.val(rows[0]);
  if (!first.is_vector()) throw_shape("maxpool_rows: rows must be vectors");
  int d = first.rows();
  std::vector<int> ids(rows.size());
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].tape != &t) throw_domain("maxpool_rows: rows on different tapes");
    const TensorT<S>& R = t.val(rows[r]);
    if (!R.is_vector() || R.rows() != d)
      throw_shape("maxpool_rows: row shape " + R.shape_string() + " differs from " + first.shape_string());
    ids[r] = rows[r].id;
  }
  TensorT<S> out = TensorT<S>::zeros({d});
  std::vector<int> argmax(static_cast<size_t>(d), 0);
  for (int j = 0; j < d; ++j) {
    S best = t.val(ids[0]).values[static_cast<size_t>(j)];
    int bi = 0;
    for (size_t r = 1; r < ids.size(); ++r) {
      S x = t.val(ids[r]).values[static_cast<size_t>(j)];
      if (x > best) {
        best = x;
        bi = static_cast<int>(r);
      }
    }
    out[static_cast<size_t>(j)] = best;
    argmax[static_cast<size_t>(j)] = bi;
  }
  return t.emit(std::move(out), [ids, argmax, d](TapeT<S>& tp, int self) {
    const TensorT<S>& G = tp.grad_ref(self);
    for (int j = 0; j < d; ++j)
      tp.grad_ref(ids[static_cast<size_t>(argmax[static_cast<size_t>(j)])])
          .values[static_cast<size_t>(j)] += G.values[static_cast<size_t>(j)];
  });
}

// out = sum_i weights[i] * rows[i]; the attention-pooling primitive.
template <typename S>
VarT<S> weighted_sum(VarT<S> weights, const std::vector<VarT<S>>& rows) {
  if (weights.tape == nullptr || rows.empty()) throw_domain("weighted_sum: empty operands");
  TapeT<S>& t = *weights.tape;
  const TensorT<S>& W = t.val(weights);
  if (!W.is_vector() || W.numel() != static_cast<long>(rows.size()))
    throw_shape("weighted_sum: " + std::to_string(rows.size()) + " rows but weight shape " +
                W.shape_string());
  const TensorT<S>& first = t.val(rows[0]);
  int d = first.rows();
  std::vector<int> ids(rows.size());
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].tape != &t) throw_domain("weighted_sum: rows on different tapes");
    const TensorT<S>& R = t.val(rows[r]);
    if (!R.is_vector() || R.rows() != d) throw_shape("weighted_sum: row shape mismatch");
    ids[r] = rows[r].id;
  }
  TensorT<S> out = TensorT<S>::zeros({d});
  for (size_t r = 0; r < rows.size(); ++r) {
    S w = W.values[r];
    const TensorT<S>& R = t.val(ids[r]);
    for (int j = 0; j < d; ++j) out.values[static_cast<size_t>(j)] += w * R.values[static_cast<size_t>(j)];
  }
  int wi = weights.id;
  return t.emit(std::move(out), [wi, ids, d](TapeT<S>& tp, int self) {
    const TensorT<S>& G = tp.grad_ref(self);
    const TensorT<S>& W = tp.val(wi);
    TensorT<S>& dW = tp.grad_ref(wi);
    for (size_t r = 0; r < ids.size(); ++r) {
      const TensorT<S>& R = tp.val(ids[r]);
      TensorT<S>& dR = tp.grad_ref(ids[r]);
      S acc = S(0);
      for (int j = 0; j < d; ++j) {
        acc += G.values[static_cast<size_t>(j)] * R.values[static_cast<size_t>(j)];
        dR.values[static_cast<size_t>(j)] += G.values[static_cast<size_t>(j)] * W.values[r];
      }
      dW.values[r] += acc;
    }
  });
}

// Negative log likelihood of `label` under a probability vector, with the
// probability clamped at 1e-12 so log(0) cannot occur.
template <typename S>
VarT<S> cross_entropy(VarT<S> probs, int label) {
  if (probs.tape == nullptr) throw_domain("cross_entropy: empty operand");
  TapeT<S>& t = *probs.tape;
  const TensorT<S>& P = t.val(probs);
  if (!P.is_vector()) throw_shape("cross_entropy: probs must be a vector");
  if (label < 0 || label >= P.rows())
    throw_domain("cross_entropy: label " + std::to_string(label) + " out of range [0, " +
                 std::to_string(P.rows()) + ")");
  S p = std::max(P.values[static_cast<size_t>(label)], S(1e-12));
  int pi = probs.id;
  return t.emit(TensorT<S>::scalar(-std::log(p)), [pi, label](TapeT<S>& tp, int self) {
    S g = tp.grad_ref(self)[0];
    S p = tp.val(pi).values[static_cast<size_t>(label)];
    if (p >= S(1e-12)) tp.grad_ref(pi).values[static_cast<size_t>(label)] += -g / p;
  });
}

template <typename S>
VarT<S> sum(VarT<S> a) {
  if (a.tape == nullptr) throw_domain("sum: empty operand");
  TapeT<S>& t = *a.tape;
  const TensorT<S>& A = t.val(a);
  S acc = S(0);
  for (S x : A.values) acc += x;
  int ai = a.id;
  return t.emit(TensorT<S>::scalar(acc), [ai](TapeT<S>& tp, int self) {
    S g = tp.grad_ref(self)[0];
    TensorT<S>& dA = tp.grad_ref(ai);
    for (S& d : dA.values) d += g;
  });
}

// Inverted dropout: surviving entries are scaled by 1/(1-rate) at train
// time so inference is the identity.
template <typename S>
VarT<S> dropout(VarT<S> a, double rate, bool training, Rng& rng) {
  if (rate < 0.0 || rate >= 1.0) throw_domain("dropout: rate must be in [0, 1), got " + std::to_string(rate));
  if (a.tape == nullptr) throw_domain("dropout: empty operand");
  TapeT<S>& t = *a.tape;
  if (!training || rate == 0.0) {
    TensorT<S> out = t.val(a);
    int ai = a.id;
    return t.emit(std::move(out), [ai](TapeT<S>& tp, int self) {
      const TensorT<S>& G = tp.grad_ref(self);
      TensorT<S>& dA = tp.grad_ref(ai);
      for (size_t i = 0; i < G.values.size(); ++i) dA.values[i] += G.values[i];
    });
  }
  const TensorT<S>& A = t.val(a);
  S keep_scale = S(1) / S(1.0 - rate);
  std::vector<S> mask(A.values.size());
  TensorT<S> out = TensorT<S>::zeros(A.shape);
  for (size_t i = 0; i < A.values.size(); ++i) {
    mask[i] = bernoulli(rng, rate) ? S(0) : keep_scale;
    out.values[i] = A.values[i] * mask[i];
  }
  int ai = a.id;
  return t.emit(std::move(out), [ai, mask = std::move(mask)](TapeT<S>& tp, int self) {
    const TensorT<S>& G = tp.grad_ref(self);
    TensorT<S>& dA = tp.grad_ref(ai);
    for (size_t i = 0; i < G.values.size(); ++i) dA.values[i] += G.values[i] * mask[i];
  });
}

// Scales all gradients so their joint L2 norm does not exceed `threshold`.
// Returns the factor applied (1 when no clipping was needed).
inline double clip_global_norm(const std::vector<Parameter*>& params, double threshold) {
  if (threshold <= 0.0) throw_domain("clip_global_norm: threshold must be positive");
  double sq = 0.0;
  for (const Parameter* p : params)
    for (double g : p->grad.values) sq += g * g;
  double norm = std::sqrt(sq);
  if (norm <= threshold || norm == 0.0) return 1.0;
  double factor = threshold / norm;
  for (Parameter* p : params)
    for (double& g : p->grad.values) g *= factor;
  return factor;
}

}  // namespace tir
