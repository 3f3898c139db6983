#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "tir/autograd.hpp"
#include "tir/gradcheck.hpp"
#include "tir/rng.hpp"
#include "tir/tensor.hpp"

using namespace tir;

namespace {

// Independent triple-loop matrix product, kept deliberately dumb.
Tensor oracle_matmul(const Tensor& a, const Tensor& b) {
  Tensor out = Tensor::zeros({a.rows(), b.cols()});
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j)
      for (int k = 0; k < a.cols(); ++k) out.at(i, j) += a.at(i, k) * b.at(k, j);
  return out;
}

Tensor random_tensor(std::vector<int> shape, Rng& rng, double lo = -1.0, double hi = 1.0) {
  Tensor t = Tensor::zeros(std::move(shape));
  for (double& v : t.values) v = uniform(rng, lo, hi);
  return t;
}

}  // namespace

TEST_CASE("matmul basics") {
  Tape t;
  Var id2 = t.constant(Tensor({2, 2}, {1, 0, 0, 1}));
  Var v = t.constant(Tensor({2, 1}, {3, 4}));
  CHECK(t.val(matmul(id2, v)).values == std::vector<double>{3, 4});

  Var a = t.constant(Tensor({1, 2}, {1, 2}));
  Var b = t.constant(Tensor({2, 1}, {3, 4}));
  CHECK(t.val(matmul(a, b)).values == std::vector<double>{11});

  Var bad = t.constant(Tensor({3, 1}, {1, 2, 3}));
  CHECK_THROWS_WITH(matmul(a, bad), Catch::Matchers::ContainsSubstring("[1x2]") &&
                                        Catch::Matchers::ContainsSubstring("[3x1]"));
}

TEST_CASE("matmul matches triple-loop oracle") {
  Rng rng = substream(7, "matmul-test");
  Tensor A = random_tensor({3, 4}, rng);
  Tensor B = random_tensor({4, 2}, rng);
  Tape t;
  const Tensor& got = t.val(matmul(t.constant(A), t.constant(B)));
  Tensor want = oracle_matmul(A, B);
  for (size_t i = 0; i < want.values.size(); ++i)
    CHECK(std::abs(got.values[i] - want.values[i]) < 1e-12);
}

TEST_CASE("softmax values and stability") {
  Tape t;
  const Tensor& half = t.val(softmax(t.constant(Tensor::vector_of({0, 0}))));
  CHECK(half.values[0] == Catch::Approx(0.5).margin(1e-15));
  CHECK(half.values[1] == Catch::Approx(0.5).margin(1e-15));

  const Tensor& two_thirds = t.val(softmax(t.constant(Tensor::vector_of({std::log(2.0), 0.0}))));
  CHECK(two_thirds.values[0] == Catch::Approx(2.0 / 3.0).margin(1e-12));
  CHECK(two_thirds.values[1] == Catch::Approx(1.0 / 3.0).margin(1e-12));

  const Tensor& big = t.val(softmax(t.constant(Tensor::vector_of({1000, 0}))));
  CHECK(big.all_finite());
  CHECK(big.values[0] == Catch::Approx(1.0).margin(1e-12));
  CHECK(big.values[1] == Catch::Approx(0.0).margin(1e-12));

  CHECK_THROWS_AS(softmax(t.constant(Tensor({0}, {}))), Error);
}

TEST_CASE("softmax normalization property") {
  Rng rng = substream(11, "softmax-prop");
  for (int trial = 0; trial < 1000; ++trial) {
    int n = 1 + uniform_int(rng, 12);
    Tape t;
    const Tensor& p = t.val(softmax(t.constant(random_tensor({n}, rng, -30, 30))));
    double sum = 0.0;
    for (double x : p.values) {
      CHECK(x > 0.0);
      sum += x;
    }
    CHECK(std::abs(sum - 1.0) < 1e-12);
  }
}

TEST_CASE("elementwise ops") {
  Tape t;
  CHECK(t.val(tanh(t.constant(Tensor::vector_of({0})))).values[0] == 0.0);
  CHECK(t.val(sigmoid(t.constant(Tensor::vector_of({0})))).values[0] == 0.5);
  Var m = mul(t.constant(Tensor::vector_of({1, 2})), t.constant(Tensor::vector_of({3, 4})));
  CHECK(t.val(m).values == std::vector<double>{3, 8});
  CHECK_THROWS_AS(add(t.constant(Tensor::vector_of({1})), t.constant(Tensor::vector_of({1, 2}))), Error);
}

TEST_CASE("concat including empty side") {
  Tape t;
  Var c = concat(t.constant(Tensor::vector_of({1})), t.constant(Tensor::vector_of({2, 3})));
  CHECK(t.val(c).values == std::vector<double>{1, 2, 3});

  Var e = concat(t.constant(Tensor({0}, {})), t.constant(Tensor::vector_of({5})));
  CHECK(t.val(e).values == std::vector<double>{5});

  CHECK_THROWS_AS(concat(t.constant(Tensor({1, 1}, {1})), t.constant(Tensor::vector_of({1}))), Error);
}

TEST_CASE("concat gradient splits by position") {
  Parameter a("a", Tensor::vector_of({1, 2}));
  Parameter b("b", Tensor::vector_of({3}));
  Tape t;
  Var loss = sum(concat(t.leaf(a), t.leaf(b)));
  t.backward(loss);
  CHECK(a.grad.values == std::vector<double>{1, 1});
  CHECK(b.grad.values == std::vector<double>{1});
}

TEST_CASE("maxpool_rows basics and tie rule") {
  Tape t;
  Var p = maxpool_rows({t.constant(Tensor::vector_of({1, 4})), t.constant(Tensor::vector_of({3, 2}))});
  CHECK(t.val(p).values == std::vector<double>{3, 4});

  Var single = maxpool_rows({t.constant(Tensor::vector_of({7, -1}))});
  CHECK(t.val(single).values == std::vector<double>{7, -1});

  // Tie on coordinate 0: gradient goes to the lowest row index.
  Parameter r0("r0", Tensor::vector_of({2, 0}));
  Parameter r1("r1", Tensor::vector_of({2, 5}));
  Tape t2;
  Var pooled = maxpool_rows({t2.leaf(r0), t2.leaf(r1)});
  CHECK(t2.val(pooled).values == std::vector<double>{2, 5});
  Var first = dot(pooled, t2.constant(Tensor::vector_of({1, 0})));
  t2.backward(first);
  CHECK(r0.grad.values == std::vector<double>{1, 0});
  CHECK(r1.grad.values == std::vector<double>{0, 0});

  CHECK_THROWS_AS(maxpool_rows({}), Error);
}

TEST_CASE("maxpool dominates every row") {
  Rng rng = substream(3, "maxpool-prop");
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + uniform_int(rng, 6), d = 1 + uniform_int(rng, 8);
    Tape t;
    std::vector<Var> rows;
    for (int i = 0; i < n; ++i) rows.push_back(t.constant(random_tensor({d}, rng)));
    const Tensor& m = t.val(maxpool_rows(rows));
    for (int j = 0; j < d; ++j) {
      bool attained = false;
      for (const Var& r : rows) {
        CHECK(m.values[j] >= t.val(r).values[j]);
        attained |= m.values[j] == t.val(r).values[j];
      }
      CHECK(attained);
    }
  }
}

TEST_CASE("cross entropy") {
  Tape t;
  CHECK(t.val(cross_entropy(t.constant(Tensor::vector_of({1.0, 0.0})), 0))[0] == 0.0);
  CHECK(t.val(cross_entropy(t.constant(Tensor::vector_of({0.5, 0.5})), 1))[0] ==
        Catch::Approx(std::log(2.0)).margin(1e-15));
  CHECK(t.val(cross_entropy(t.constant(Tensor::vector_of({0.25, 0.75})), 0))[0] ==
        Catch::Approx(std::log(4.0)).margin(1e-15));
  CHECK_THROWS_AS(cross_entropy(t.constant(Tensor::vector_of({0.5, 0.5})), 2), Error);
  CHECK_THROWS_AS(cross_entropy(t.constant(Tensor::vector_of({0.5, 0.5})), -1), Error);
}

TEST_CASE("backward computes and accumulates gradients") {
  Parameter w("w", Tensor::vector_of({1, 2}));
  Parameter unused("u", Tensor::vector_of({5}));
  Tape t;
  Var wl = t.leaf(w);
  t.leaf(unused);
  Var loss = sum(mul(wl, wl));
  t.backward(loss);
  CHECK(w.grad.values == std::vector<double>{2, 4});
  CHECK(unused.grad.values == std::vector<double>{0});

  // Second backward on the same tape doubles everything.
  t.backward(loss);
  CHECK(w.grad.values == std::vector<double>{4, 8});

  CHECK_THROWS_AS(t.backward(wl), Error);  // non-scalar loss
}

TEST_CASE("grad_check trivial cases") {
  // Dyadic values and a power-of-two eps make the central difference exact,
  // so the relative error really is zero.
  Parameter p("p", Tensor::vector_of({0.25, -0.5, 1.0}));
  auto fsum = [&]() {
    Tape t;
    Var loss = sum(t.leaf(p));
    t.backward(loss);
    return t.val(loss)[0];
  };
  CHECK(grad_check(fsum, {&p}, 0x1.0p-20) == 0.0);

  Parameter q("q", Tensor::vector_of({0.0}));
  auto ftanh = [&]() {
    Tape t;
    Var loss = sum(tanh(t.leaf(q)));
    t.backward(loss);
    return t.val(loss)[0];
  };
  CHECK(grad_check(ftanh, {&q}) < 1e-8);
}

TEST_CASE("grad_check on random composites") {
  Rng rng = substream(99, "composite");
  for (int trial = 0; trial < 5; ++trial) {
    Parameter W("W", random_tensor({5, 7}, rng, -0.5, 0.5));
    Parameter x("x", random_tensor({7}, rng, -0.5, 0.5));
    Parameter b("b", random_tensor({5}, rng, -0.5, 0.5));
    auto f = [&]() {
      Tape t;
      Var h = tanh(add(matvec(t.leaf(W), t.leaf(x)), t.leaf(b)));
      Var g = sigmoid(mul(h, h));
      Var p = softmax(concat(g, scale(h, 0.5)));
      Var loss = add(cross_entropy(p, 3), scale(sum(sqrt(add_scalar(mul(h, h), 1.0))), 0.1));
      t.backward(loss);
      return t.val(loss)[0];
    };
    CHECK(grad_check(f, {&W, &x, &b}) < 1e-4);
  }
}

TEST_CASE("clip_global_norm") {
  // Norm 10 across two parameters: scaled to 5.
  Parameter a("a", Tensor::vector_of({0, 0}));
  Parameter b("b", Tensor::vector_of({0}));
  a.grad.values = {6, 8};
  b.grad.values = {0};
  CHECK(clip_global_norm({&a, &b}, 5.0) == Catch::Approx(0.5));
  double n2 = 0;
  for (double g : a.grad.values) n2 += g * g;
  CHECK(std::sqrt(n2) == Catch::Approx(5.0).margin(1e-12));

  // Below threshold: untouched.
  a.grad.values = {3, 0};
  CHECK(clip_global_norm({&a}, 5.0) == 1.0);
  CHECK(a.grad.values == std::vector<double>{3, 0});

  // Zero gradients: factor 1.
  a.grad.values = {0, 0};
  CHECK(clip_global_norm({&a}, 5.0) == 1.0);

  // Idempotence.
  Rng rng = substream(5, "clip");
  for (int trial = 0; trial < 50; ++trial) {
    Parameter p("p", Tensor::zeros({20}));
    p.grad = random_tensor({20}, rng, -3, 3);
    clip_global_norm({&p}, 5.0);
    Tensor once = p.grad;
    clip_global_norm({&p}, 5.0);
    for (size_t i = 0; i < once.values.size(); ++i)
      CHECK(p.grad.values[i] == Catch::Approx(once.values[i]).epsilon(1e-12));
  }
}

TEST_CASE("dropout") {
  Rng rng = substream(21, "dropout");
  Tape t;
  Var x = t.constant(Tensor::vector_of({1, 2, 3}));
  CHECK(t.val(dropout(x, 0.0, true, rng)).values == std::vector<double>{1, 2, 3});
  CHECK(t.val(dropout(x, 0.4, false, rng)).values == std::vector<double>{1, 2, 3});
  CHECK_THROWS_AS(dropout(x, 1.0, true, rng), Error);

  Tape t2;
  Var big = t2.constant(Tensor({100000}, std::vector<double>(100000, 1.0)));
  const Tensor& dropped = t2.val(dropout(big, 0.5, true, rng));
  double mean = 0.0;
  for (double v : dropped.values) mean += v;
  mean /= static_cast<double>(dropped.values.size());
  CHECK(mean > 0.98);
  CHECK(mean < 1.02);
}

TEST_CASE("dropout gradient follows the mask") {
  Parameter p("p", Tensor::vector_of({2, 2, 2, 2}));
  Rng rng = substream(8, "dropout-grad");
  Tape t;
  Var d = dropout(t.leaf(p), 0.5, true, rng);
  t.backward(sum(d));
  const Tensor& out = t.val(d);
  for (size_t i = 0; i < out.values.size(); ++i) {
    if (out.values[i] == 0.0)
      CHECK(p.grad.values[i] == 0.0);
    else
      CHECK(p.grad.values[i] == 2.0);  // 1/(1-0.5)
  }
}
