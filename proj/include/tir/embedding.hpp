#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>

#include "tir/autograd.hpp"
#include "tir/checkpoint.hpp"
#include "tir/rng.hpp"
#include "tir/vocab.hpp"

namespace tir {

// The word-vector table P_x: one parameter matrix of |V| x d_e, rows
// addressed through Tape::row. Fresh rows are drawn uniform(-0.1, 0.1).
template <typename S>
struct EmbeddingTableT {
  ParameterT<S> weights;

  EmbeddingTableT() = default;
  EmbeddingTableT(int vocab_size, int d_e, Rng& rng)
      : weights("embeddings", TensorT<S>::zeros({vocab_size, d_e})) {
    for (S& v : weights.value.values) v = S(uniform(rng, -0.1, 0.1));
  }

  int vocab_size() const { return weights.value.rows(); }
  int dim() const { return weights.value.cols(); }
};

using EmbeddingTable = EmbeddingTableT<double>;

// Text format: header "V D", then V lines "token v1 .. vD".
inline void save_embeddings(const EmbeddingTable& table, const Vocabulary& vocab,
                            const std::string& path) {
  if (vocab.size() != table.vocab_size())
    throw_domain("save_embeddings: vocabulary size " + std::to_string(vocab.size()) +
                 " does not match table rows " + std::to_string(table.vocab_size()));
  std::ofstream out(path);
  if (!out) throw_io("cannot write " + path);
  int d = table.dim();
  out << vocab.size() << " " << d << "\n";
  for (int i = 0; i < vocab.size(); ++i) {
    out << vocab.token(i);
    for (int j = 0; j < d; ++j) out << " " << format_double(table.weights.value.at(i, j));
    out << "\n";
  }
}

// Fills a vocab-shaped table from an embedding file. Vocabulary tokens
// absent from the file keep their random initialization; file tokens
// outside the vocabulary are skipped.
inline EmbeddingTable load_embeddings(const std::string& path, const Vocabulary& vocab, int d_e,
                                      Rng& rng) {
  std::ifstream in(path);
  if (!in) throw_io("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw_format(path + " line 1: missing header");
  std::istringstream header(line);
  long v_count = 0;
  int d_file = 0;
  if (!(header >> v_count >> d_file) || v_count < 0 || d_file <= 0)
    throw_format(path + " line 1: expected header \"V D\"");
  if (d_file != d_e)
    throw_format(path + ": file dimension " + std::to_string(d_file) + " does not match configured " +
                 std::to_string(d_e));

  EmbeddingTable table(vocab.size(), d_e, rng);
  int line_no = 1;
  long rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    ++rows;
    std::istringstream ss(line);
    std::string tok;
    ss >> tok;
    std::vector<double> row(static_cast<size_t>(d_e));
    for (double& x : row)
      if (!(ss >> x)) throw_format(path + " line " + std::to_string(line_no) + ": expected " +
                                   std::to_string(d_e) + " values");
    double extra;
    if (ss >> extra) throw_format(path + " line " + std::to_string(line_no) + ": too many values");
    if (!vocab.contains(tok)) continue;
    int idx = vocab.index(tok);
    for (int j = 0; j < d_e; ++j) table.weights.value.at(idx, j) = row[static_cast<size_t>(j)];
  }
  if (rows != v_count)
    throw_format(path + ": header announces " + std::to_string(v_count) + " rows, found " +
                 std::to_string(rows));
  return table;
}

}  // namespace tir
