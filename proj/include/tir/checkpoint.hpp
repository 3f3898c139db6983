#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "tir/autograd.hpp"
#include "tir/error.hpp"
#include "tir/tensor.hpp"

namespace tir {

// Named-tensor text format: one tensor per line,
//   name rank d1 .. dk v1 .. vN
// with values printed to 17 significant digits so reloads are exact.

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_named_tensors(std::ostream& out,
                                const std::vector<std::pair<std::string, const Tensor*>>& tensors) {
  for (const auto& [name, t] : tensors) {
    out << name << " " << t->shape.size();
    for (int d : t->shape) out << " " << d;
    for (double v : t->values) out << " " << format_double(v);
    out << "\n";
  }
}

inline void save_named_tensors(const std::vector<std::pair<std::string, const Tensor*>>& tensors,
                               const std::string& path) {
  std::ofstream out(path);
  if (!out) throw_io("cannot write " + path);
  write_named_tensors(out, tensors);
}

inline std::map<std::string, Tensor> parse_named_tensors(std::istream& in, const std::string& where) {
  std::map<std::string, Tensor> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string name;
    int rank = 0;
    if (!(ss >> name >> rank) || rank < 0)
      throw_format(where + " line " + std::to_string(line_no) + ": bad tensor header");
    std::vector<int> shape(static_cast<size_t>(rank));
    for (int& d : shape)
      if (!(ss >> d)) throw_format(where + " line " + std::to_string(line_no) + ": bad shape");
    long n = Tensor::numel_of(shape);
    std::vector<double> values(static_cast<size_t>(n));
    for (double& v : values)
      if (!(ss >> v)) throw_format(where + " line " + std::to_string(line_no) + ": too few values");
    double extra;
    if (ss >> extra) throw_format(where + " line " + std::to_string(line_no) + ": too many values");
    out.emplace(name, Tensor(std::move(shape), std::move(values)));
  }
  return out;
}

inline std::map<std::string, Tensor> load_named_tensors(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_io("cannot open " + path);
  return parse_named_tensors(in, path);
}

// Copies a loaded tensor into a parameter, shape-checked.
inline void restore_param(Parameter& p, const std::map<std::string, Tensor>& tensors,
                          const std::string& where) {
  auto it = tensors.find(p.name);
  if (it == tensors.end()) throw_format(where + ": missing tensor " + p.name);
  if (it->second.shape != p.value.shape)
    throw_format(where + ": tensor " + p.name + " has shape " + it->second.shape_string() +
                 ", expected " + p.value.shape_string());
  p.value = it->second;
}

}  // namespace tir
