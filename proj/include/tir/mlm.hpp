#pragma once

#include <string>
#include <vector>

#include "tir/bilstm.hpp"
#include "tir/embedding.hpp"
#include "tir/optim.hpp"
#include "tir/rng.hpp"
#include "tir/text.hpp"
#include "tir/vocab.hpp"

namespace tir {

// Desk-scale stand-in for a pretrained language model: a bi-LSTM masked LM.
// Sentences are wrapped in [CLS]/[SEP], a fraction of the real tokens is
// replaced with [MASK], and an output projection predicts the originals.

struct MlmConfig {
  int d_e = 32;
  int d_h = 32;
  int epochs = 5;
  int batch_size = 16;
  int min_count = 1;
  double mask_prob = 0.15;
  double lr = 0.004;
  double clip = 5.0;
  uint64_t seed = 42;
};

struct PretrainResult {
  Vocabulary vocab;
  EmbeddingTable table;
  BiLstmEncoder encoder;
  Parameter proj_w;  // |V| x d_h
  Parameter proj_b;  // |V|
  std::vector<double> epoch_losses;

  std::vector<Parameter*> params() {
    std::vector<Parameter*> out{&table.weights};
    for (Parameter* p : encoder.params()) out.push_back(p);
    out.push_back(&proj_w);
    out.push_back(&proj_b);
    return out;
  }
};

namespace detail {

// [CLS] ids [SEP], with per-position mask decisions over the real tokens.
struct MaskedSequence {
  std::vector<int> input_ids;
  std::vector<std::pair<int, int>> targets;  // (position, original id)
};

inline MaskedSequence mask_sentence(const Sentence& s, const Vocabulary& vocab, double mask_prob,
                                    Rng& rng) {
  MaskedSequence out;
  out.input_ids.push_back(Vocabulary::kCls);
  for (const std::string& tok : s.tokens) {
    int id = vocab.index(tok);
    if (bernoulli(rng, mask_prob)) {
      out.targets.emplace_back(static_cast<int>(out.input_ids.size()), id);
      out.input_ids.push_back(Vocabulary::kMask);
    } else {
      out.input_ids.push_back(id);
    }
  }
  out.input_ids.push_back(Vocabulary::kSep);
  return out;
}

}  // namespace detail

// Mean masked-token cross-entropy of a batch; empty target sets are skipped
// by the caller.
inline Var mlm_batch_loss(Tape& t, PretrainResult& model,
                          const std::vector<detail::MaskedSequence>& batch) {
  Var total = t.constant(Tensor::scalar(0.0));
  int count = 0;
  for (const auto& seq : batch) {
    if (seq.targets.empty()) continue;
    std::vector<Var> xs;
    xs.reserve(seq.input_ids.size());
    for (int id : seq.input_ids) xs.push_back(t.row(model.table.weights, id));
    std::vector<Var> hs = model.encoder.encode(t, xs);
    for (auto [pos, target] : seq.targets) {
      Var logits = affine(t, model.proj_w, hs[static_cast<size_t>(pos)], model.proj_b);
      total = add(total, cross_entropy(softmax(logits), target));
      ++count;
    }
  }
  return scale(total, count > 0 ? 1.0 / count : 0.0);
}

inline PretrainResult pretrain_toy_mlm(const std::vector<Sentence>& corpus, const MlmConfig& cfg) {
  if (corpus.empty()) throw_domain("pretrain: empty corpus");
  if (cfg.mask_prob <= 0.0 || cfg.mask_prob >= 1.0)
    throw_domain("pretrain: mask probability must be in (0, 1), got " + std::to_string(cfg.mask_prob));
  if (static_cast<int>(corpus.size()) < cfg.batch_size)
    throw_domain("pretrain: corpus of " + std::to_string(corpus.size()) +
                 " sentences is too small to form one batch of " + std::to_string(cfg.batch_size));

  Rng init = substream(cfg.seed, "pretrain.init");
  Rng mask_rng = substream(cfg.seed, "pretrain.mask");
  Rng shuffle_rng = substream(cfg.seed, "pretrain.shuffle");

  PretrainResult model;
  model.vocab = Vocabulary::build(corpus, cfg.min_count);
  model.table = EmbeddingTable(model.vocab.size(), cfg.d_e, init);
  model.encoder = BiLstmEncoder(cfg.d_e, cfg.d_h, init, "pretrain.bilstm");
  model.proj_w = Parameter("pretrain.proj_w", Tensor::zeros({model.vocab.size(), cfg.d_h}));
  init_matrix(model.proj_w, init);
  model.proj_b = Parameter("pretrain.proj_b", Tensor::zeros({model.vocab.size()}));

  Adam opt;
  opt.add(model.params(), cfg.lr);

  std::vector<size_t> order(corpus.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    shuffle_inplace(order, shuffle_rng);
    double epoch_loss = 0.0;
    int batches = 0;
    for (size_t start = 0; start < order.size(); start += static_cast<size_t>(cfg.batch_size)) {
      size_t end = std::min(order.size(), start + static_cast<size_t>(cfg.batch_size));
      std::vector<detail::MaskedSequence> batch;
      for (size_t i = start; i < end; ++i)
        batch.push_back(detail::mask_sentence(corpus[order[i]], model.vocab, cfg.mask_prob, mask_rng));
      bool any = false;
      for (const auto& b : batch) any |= !b.targets.empty();
      if (!any) continue;

      Tape t;
      Var loss = mlm_batch_loss(t, model, batch);
      opt.zero_grad();
      t.backward(loss);
      clip_global_norm(opt.params(), cfg.clip);
      opt.step();
      epoch_loss += t.val(loss)[0];
      ++batches;
    }
    model.epoch_losses.push_back(batches > 0 ? epoch_loss / batches : 0.0);
  }
  return model;
}

// Masked-token argmax accuracy under a fresh deterministic masking.
inline double mlm_accuracy(PretrainResult& model, const std::vector<Sentence>& corpus,
                           uint64_t seed, double mask_prob = 0.15) {
  Rng rng = substream(seed, "pretrain.eval_mask");
  long correct = 0, total = 0;
  for (const Sentence& s : corpus) {
    auto seq = detail::mask_sentence(s, model.vocab, mask_prob, rng);
    if (seq.targets.empty()) continue;
    Tape t;
    std::vector<Var> xs;
    for (int id : seq.input_ids) xs.push_back(t.row(model.table.weights, id));
    std::vector<Var> hs = model.encoder.encode(t, xs);
    for (auto [pos, target] : seq.targets) {
      const Tensor& logits = t.val(affine(t, model.proj_w, hs[static_cast<size_t>(pos)], model.proj_b));
      int best = 0;
      for (int k = 1; k < logits.rows(); ++k)
        if (logits.values[static_cast<size_t>(k)] > logits.values[static_cast<size_t>(best)]) best = k;
      correct += best == target ? 1 : 0;
      ++total;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
}

// Context-aware embeddings C_x: the frozen pretrained encoder applied to a
// sentence, plain tensors out.
inline std::vector<Tensor> context_embed(const Sentence& s, PretrainResult& model) {
  Tape t;
  std::vector<Var> xs;
  xs.reserve(s.tokens.size());
  for (const std::string& tok : s.tokens) xs.push_back(t.row(model.table.weights, model.vocab.index(tok)));
  std::vector<Var> hs = model.encoder.encode(t, xs);
  std::vector<Tensor> out;
  out.reserve(hs.size());
  for (Var h : hs) out.push_back(t.val(h));
  return out;
}

}  // namespace tir
