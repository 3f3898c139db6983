#pragma once

#include <string>
#include <vector>

#include "tir/autograd.hpp"
#include "tir/rng.hpp"

namespace tir {

template <typename S>
void init_matrix(ParameterT<S>& p, Rng& rng, double scale = 0.08) {
  for (S& v : p.value.values) v = S(uniform(rng, -scale, scale));
}

template <typename S>
VarT<S> affine(TapeT<S>& t, ParameterT<S>& w, VarT<S> x, ParameterT<S>& b) {
  return add(matvec(t.leaf(w), x), t.leaf(b));
}

// One LSTM direction. The forget-gate bias starts at +1.
template <typename S>
struct LstmCellT {
  ParameterT<S> Wxi, Whi, bi, Wxf, Whf, bf, Wxo, Who, bo, Wxg, Whg, bg;

  LstmCellT() = default;
  LstmCellT(const std::string& prefix, int d_in, int d_hidden, Rng& rng) {
    auto mat = [&](const char* n, int r, int c) {
      ParameterT<S> p(prefix + "." + n, TensorT<S>::zeros({r, c}));
      init_matrix(p, rng);
      return p;
    };
    auto vec = [&](const char* n, double fill) {
      ParameterT<S> p(prefix + "." + n, TensorT<S>::zeros({d_hidden}));
      for (S& v : p.value.values) v = S(fill);
      return p;
    };
    Wxi = mat("Wxi", d_hidden, d_in); Whi = mat("Whi", d_hidden, d_hidden); bi = vec("bi", 0.0);
    Wxf = mat("Wxf", d_hidden, d_in); Whf = mat("Whf", d_hidden, d_hidden); bf = vec("bf", 1.0);
    Wxo = mat("Wxo", d_hidden, d_in); Who = mat("Who", d_hidden, d_hidden); bo = vec("bo", 0.0);
    Wxg = mat("Wxg", d_hidden, d_in); Whg = mat("Whg", d_hidden, d_hidden); bg = vec("bg", 0.0);
  }

  int hidden() const { return bi.value.rows(); }

  std::pair<VarT<S>, VarT<S>> step(TapeT<S>& t, VarT<S> x, VarT<S> h, VarT<S> c) {
    VarT<S> i = sigmoid(add(add(matvec(t.leaf(Wxi), x), matvec(t.leaf(Whi), h)), t.leaf(bi)));
    VarT<S> f = sigmoid(add(add(matvec(t.leaf(Wxf), x), matvec(t.leaf(Whf), h)), t.leaf(bf)));
    VarT<S> o = sigmoid(add(add(matvec(t.leaf(Wxo), x), matvec(t.leaf(Who), h)), t.leaf(bo)));
    VarT<S> g = tanh(add(add(matvec(t.leaf(Wxg), x), matvec(t.leaf(Whg), h)), t.leaf(bg)));
    VarT<S> c_next = add(mul(f, c), mul(i, g));
    VarT<S> h_next = mul(o, tanh(c_next));
    return {h_next, c_next};
  }

  std::vector<ParameterT<S>*> params() {
    return {&Wxi, &Whi, &bi, &Wxf, &Whf, &bf, &Wxo, &Who, &bo, &Wxg, &Whg, &bg};
  }
};

using LstmCell = LstmCellT<double>;

// Bi-directional encoder; output t is the concatenation of the forward and
// backward hidden states, so d_out must be even.
template <typename S>
struct BiLstmEncoderT {
  int d_in = 0;
  int d_out = 0;
  LstmCellT<S> fwd, bwd;

  BiLstmEncoderT() = default;
  BiLstmEncoderT(int d_in_, int d_out_, Rng& rng, const std::string& prefix = "bilstm")
      : d_in(d_in_), d_out(d_out_) {
    if (d_out % 2 != 0) throw_domain("bilstm: output width must be even, got " + std::to_string(d_out));
    fwd = LstmCellT<S>(prefix + ".fwd", d_in, d_out / 2, rng);
    bwd = LstmCellT<S>(prefix + ".bwd", d_in, d_out / 2, rng);
  }

  std::vector<VarT<S>> encode(TapeT<S>& t, const std::vector<VarT<S>>& xs) {
    if (xs.empty()) throw_domain("bilstm: empty input sequence");
    size_t n = xs.size();
    VarT<S> h = t.constant(TensorT<S>::zeros({d_out / 2}));
    VarT<S> c = t.constant(TensorT<S>::zeros({d_out / 2}));
    std::vector<VarT<S>> fh(n);
    for (size_t i = 0; i < n; ++i) {
      auto [h2, c2] = fwd.step(t, xs[i], h, c);
      fh[i] = h = h2;
      c = c2;
    }
    h = t.constant(TensorT<S>::zeros({d_out / 2}));
    c = t.constant(TensorT<S>::zeros({d_out / 2}));
    std::vector<VarT<S>> bh(n);
    for (size_t i = n; i-- > 0;) {
      auto [h2, c2] = bwd.step(t, xs[i], h, c);
      bh[i] = h = h2;
      c = c2;
    }
    std::vector<VarT<S>> out(n);
    for (size_t i = 0; i < n; ++i) out[i] = concat(fh[i], bh[i]);
    return out;
  }

  std::vector<ParameterT<S>*> params() {
    std::vector<ParameterT<S>*> out = fwd.params();
    for (ParameterT<S>* p : bwd.params()) out.push_back(p);
    return out;
  }
};

using BiLstmEncoder = BiLstmEncoderT<double>;

}  // namespace tir
