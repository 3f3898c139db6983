#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

#include "tir/error.hpp"

namespace tir {

// Dense row-major tensor. Shapes are explicit; rank 1 is a vector, rank 2 a
// matrix. The scalar type is a template parameter so verification code can
// instantiate the same computations at extended precision; the artifact
// itself runs on Tensor = TensorT<double>.
template <typename S>
struct TensorT {
  std::vector<int> shape;
  std::vector<S> values;

  TensorT() = default;

  TensorT(std::vector<int> s, std::vector<S> v) : shape(std::move(s)), values(std::move(v)) {
    if (numel_of(shape) != static_cast<long>(values.size()))
      throw_shape("tensor value count " + std::to_string(values.size()) +
                  " does not match shape " + shape_string(shape));
  }

  static TensorT zeros(std::vector<int> s) {
    long n = numel_of(s);
    return TensorT(std::move(s), std::vector<S>(static_cast<size_t>(n), S(0)));
  }

  static TensorT scalar(S v) { return TensorT({1}, {v}); }

  static TensorT vector_of(std::initializer_list<double> v) {
    std::vector<S> vals;
    vals.reserve(v.size());
    for (double x : v) vals.push_back(S(x));
    return TensorT({static_cast<int>(v.size())}, std::move(vals));
  }

  int rank() const { return static_cast<int>(shape.size()); }
  long numel() const { return static_cast<long>(values.size()); }

  bool is_vector() const { return rank() == 1; }
  bool is_matrix() const { return rank() == 2; }
  bool is_scalar() const { return numel() == 1; }

  int rows() const { return shape.at(0); }
  int cols() const { return shape.at(1); }

  S& at(int r, int c) { return values[static_cast<size_t>(r) * cols() + c]; }
  S at(int r, int c) const { return values[static_cast<size_t>(r) * cols() + c]; }

  S& operator[](size_t i) { return values[i]; }
  S operator[](size_t i) const { return values[i]; }

  bool same_shape(const TensorT& o) const { return shape == o.shape; }

  bool all_finite() const {
    for (S v : values)
      if (!std::isfinite(static_cast<double>(v))) return false;
    return true;
  }

  static long numel_of(const std::vector<int>& s) {
    long n = 1;
    for (int d : s) {
      if (d < 0) throw_shape("negative dimension in shape " + shape_string(s));
      n *= d;
    }
    return n;
  }

  static std::string shape_string(const std::vector<int>& s) {
    std::string out = "[";
    for (size_t i = 0; i < s.size(); ++i) {
      if (i) out += "x";
      out += std::to_string(s[i]);
    }
    return out + "]";
  }

  std::string shape_string() const { return shape_string(shape); }
};

using Tensor = TensorT<double>;

template <typename S>
void require_same_shape(const TensorT<S>& a, const TensorT<S>& b, const char* op) {
  if (!a.same_shape(b))
    throw_shape(std::string(op) + ": shape mismatch " + a.shape_string() + " vs " + b.shape_string());
}

}  // namespace tir
