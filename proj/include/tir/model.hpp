#pragma once

#include <string>
#include <vector>

#include "tir/autograd.hpp"
#include "tir/bilstm.hpp"
#include "tir/dataset.hpp"
#include "tir/embedding.hpp"
#include "tir/gir.hpp"
#include "tir/lir.hpp"
#include "tir/vocab.hpp"

namespace tir {

enum class Mode { lir, gir, hir };

inline std::string mode_name(Mode m) {
  switch (m) {
    case Mode::lir: return "lir";
    case Mode::gir: return "gir";
    case Mode::hir: return "hir";
  }
  return "?";
}

inline Mode parse_mode(const std::string& s) {
  if (s == "lir") return Mode::lir;
  if (s == "gir") return Mode::gir;
  if (s == "hir") return Mode::hir;
  throw_config("unknown mode \"" + s + "\" (expected lir, gir or hir)");
}

enum class LirReadout { maxpool, root };

struct ModelConfig {
  int d_e = 400;
  int d_h = 200;
  int n_classes = 2;
  int classifier_hidden = 100;
  Mode mode = Mode::hir;
  TreeKind tree_kind = TreeKind::constituency;
  double gamma = 0.5;
  double dropout_layers = 0.4;
  double dropout_embed = 0.05;
  bool batchnorm = true;
  double bn_momentum = 0.9;
  bool gir_include_self = false;
  LirReadout lir_readout = LirReadout::maxpool;

  void check() const {
    if (d_e <= 0 || d_h <= 0 || n_classes < 2 || classifier_hidden <= 0)
      throw_config("model dimensions must be positive and n_classes >= 2");
    if (gamma < 0.0 || gamma > 1.0) throw_config("gamma must be in [0, 1]");
    if (d_h % 2 != 0) throw_config("d_h must be even (bi-LSTM halves)");
  }

  bool uses_tree() const { return mode != Mode::gir; }
  bool uses_gir() const { return mode != Mode::lir; }
};

// Batch normalization over a batch of equally sized vectors. Batch
// statistics are differentiable tape nodes during training; evaluation uses
// the running estimates. Used only on the classifier hidden layer.
template <typename S>
struct BatchNormT {
  ParameterT<S> gain, bias;
  TensorT<S> running_mean, running_var;
  double momentum = 0.9;
  double eps = 1e-5;

  BatchNormT() = default;
  BatchNormT(const std::string& prefix, int width, double momentum_) : momentum(momentum_) {
    gain = ParameterT<S>(prefix + ".bn_gain", TensorT<S>::zeros({width}));
    for (S& v : gain.value.values) v = S(1);
    bias = ParameterT<S>(prefix + ".bn_bias", TensorT<S>::zeros({width}));
    running_mean = TensorT<S>::zeros({width});
    running_var = TensorT<S>::zeros({width});
    for (S& v : running_var.values) v = S(1);
  }

  std::vector<VarT<S>> apply(TapeT<S>& t, const std::vector<VarT<S>>& rows, bool training) {
    size_t b = rows.size();
    std::vector<VarT<S>> out(b);
    VarT<S> g = t.leaf(gain);
    VarT<S> beta = t.leaf(bias);
    if (!training) {
      TensorT<S> inv = running_var;
      for (S& v : inv.values) v = S(1) / std::sqrt(v + S(eps));
      VarT<S> mean_c = t.constant(running_mean);
      VarT<S> inv_c = t.constant(inv);
      for (size_t i = 0; i < b; ++i) out[i] = add(mul(mul(sub(rows[i], mean_c), inv_c), g), beta);
      return out;
    }
    double inv_b = 1.0 / static_cast<double>(b);
    VarT<S> mean = rows[0];
    for (size_t i = 1; i < b; ++i) mean = add(mean, rows[i]);
    mean = scale(mean, inv_b);
    std::vector<VarT<S>> centered(b);
    VarT<S> var;
    for (size_t i = 0; i < b; ++i) {
      centered[i] = sub(rows[i], mean);
      VarT<S> sq = mul(centered[i], centered[i]);
      var = i == 0 ? sq : add(var, sq);
    }
    var = scale(var, inv_b);  // biased, as in the normalization itself
    VarT<S> denom = sqrt(add_scalar(var, eps));
    for (size_t i = 0; i < b; ++i) out[i] = add(mul(div(centered[i], denom), g), beta);

    const TensorT<S>& m = t.val(mean);
    const TensorT<S>& v = t.val(var);
    for (size_t j = 0; j < running_mean.values.size(); ++j) {
      running_mean.values[j] = S(momentum) * running_mean.values[j] + S(1.0 - momentum) * m.values[j];
      running_var.values[j] = S(momentum) * running_var.values[j] + S(1.0 - momentum) * v.values[j];
    }
    return out;
  }

  std::vector<ParameterT<S>*> params() { return {&gain, &bias}; }
};

using BatchNorm = BatchNormT<double>;

// Sentence classifier: affine -> (batchnorm) -> tanh -> affine -> softmax.
template <typename S>
struct ClassifierT {
  ParameterT<S> W1, b1;   // hidden x d_in
  ParameterT<S> W_s, b_s;  // classes x hidden
  BatchNormT<S> bn;
  bool use_bn = false;

  ClassifierT() = default;
  ClassifierT(const std::string& prefix, int d_in, int hidden, int classes, bool use_bn_,
              double bn_momentum, Rng& rng)
      : use_bn(use_bn_) {
    W1 = ParameterT<S>(prefix + ".W1", TensorT<S>::zeros({hidden, d_in}));
    init_matrix(W1, rng);
    b1 = ParameterT<S>(prefix + ".b1", TensorT<S>::zeros({hidden}));
    W_s = ParameterT<S>(prefix + ".W_s", TensorT<S>::zeros({classes, hidden}));
    init_matrix(W_s, rng);
    b_s = ParameterT<S>(prefix + ".b_s", TensorT<S>::zeros({classes}));
    if (use_bn) bn = BatchNormT<S>(prefix, hidden, bn_momentum);
  }

  int input_width() const { return W1.value.cols(); }

  // Batched so training-time batch statistics see the whole batch.
  std::vector<VarT<S>> probs(TapeT<S>& t, const std::vector<VarT<S>>& inputs, bool training) {
    std::vector<VarT<S>> pre(inputs.size());
    for (size_t i = 0; i < inputs.size(); ++i) pre[i] = affine(t, W1, inputs[i], b1);
    if (use_bn) pre = bn.apply(t, pre, training);
    std::vector<VarT<S>> out(inputs.size());
    for (size_t i = 0; i < inputs.size(); ++i) out[i] = softmax(affine(t, W_s, tanh(pre[i]), b_s));
    return out;
  }

  std::vector<ParameterT<S>*> params() {
    std::vector<ParameterT<S>*> out{&W1, &b1, &W_s, &b_s};
    if (use_bn)
      for (ParameterT<S>* p : bn.params()) out.push_back(p);
    return out;
  }
};

using Classifier = ClassifierT<double>;

// The full interaction model: embeddings, bi-LSTM, LIR and/or GIR, the
// sentence classifier and the word-level head for the joint loss.
template <typename S>
struct InteractionModelT {
  ModelConfig cfg;
  Vocabulary vocab;
  EmbeddingTableT<S> table;
  BiLstmEncoderT<S> bilstm;
  LirParamsT<S> lir;
  GirParamsT<S> gir;
  ClassifierT<S> classifier;
  ParameterT<S> word_w, word_b;  // word-level head, d_h -> K

  InteractionModelT() = default;

  InteractionModelT(const ModelConfig& cfg_, Vocabulary vocab_, Rng& rng)
      : cfg(cfg_), vocab(std::move(vocab_)) {
    cfg.check();
    table = EmbeddingTableT<S>(vocab.size(), cfg.d_e, rng);
    bilstm = BiLstmEncoderT<S>(cfg.d_e, cfg.d_h, rng);
    if (cfg.uses_tree()) lir = LirParamsT<S>(cfg.d_e, cfg.d_h, cfg.tree_kind, rng);
    if (cfg.uses_gir()) gir = GirParamsT<S>(cfg.d_h, rng, cfg.gir_include_self);
    classifier = ClassifierT<S>("classifier", cfg.d_h, cfg.classifier_hidden, cfg.n_classes,
                                cfg.batchnorm, cfg.bn_momentum, rng);
    word_w = ParameterT<S>("word_head.W", TensorT<S>::zeros({cfg.n_classes, cfg.d_h}));
    init_matrix(word_w, rng);
    word_b = ParameterT<S>("word_head.b", TensorT<S>::zeros({cfg.n_classes}));
  }

  // Layer groups ordered from the output end, the gradual-unfreezing order.
  std::vector<std::pair<std::string, std::vector<ParameterT<S>*>>> groups() {
    std::vector<std::pair<std::string, std::vector<ParameterT<S>*>>> out;
    std::vector<ParameterT<S>*> cls = classifier.params();
    cls.push_back(&word_w);
    cls.push_back(&word_b);
    out.emplace_back("classifier", std::move(cls));
    if (cfg.uses_gir()) out.emplace_back("gir", gir.params());
    if (cfg.uses_tree()) out.emplace_back("lir", lir.params());
    out.emplace_back("bilstm", bilstm.params());
    out.emplace_back("embeddings", std::vector<ParameterT<S>*>{&table.weights});
    return out;
  }

  std::vector<ParameterT<S>*> all_params() {
    std::vector<ParameterT<S>*> out;
    for (auto& [name, ps] : groups())
      for (ParameterT<S>* p : ps) out.push_back(p);
    return out;
  }

  struct Features {
    std::vector<VarT<S>> word_h;  // per-token hidden states after the interaction pass
    VarT<S> s;                    // sentence embedding
    std::vector<TensorT<S>> lambdas;
  };

  // Runs embeddings -> bi-LSTM -> (LIR) -> (GIR) for one example. The
  // classifier is applied separately so training can batch it.
  Features features(TapeT<S>& t, const Example& ex, bool training, Rng* dropout_rng) {
    if (ex.sentence.tokens.empty()) throw_domain("forward: empty sentence");
    if (training && dropout_rng == nullptr) throw_domain("forward: training needs a dropout stream");

    std::vector<VarT<S>> embeds;
    embeds.reserve(ex.sentence.tokens.size());
    for (const std::string& tok : ex.sentence.tokens) {
      VarT<S> e = t.row(table.weights, vocab.index(tok));
      if (training && cfg.dropout_embed > 0.0) e = dropout(e, cfg.dropout_embed, true, *dropout_rng);
      embeds.push_back(e);
    }
    std::vector<VarT<S>> hs = bilstm.encode(t, embeds);
    if (training && cfg.dropout_layers > 0.0)
      for (VarT<S>& h : hs) h = dropout(h, cfg.dropout_layers, true, *dropout_rng);

    Features f;
    VarT<S> root_h;
    if (cfg.uses_tree()) {
      if (ex.kind != cfg.tree_kind)
        throw_domain("forward: example carries a " + tree_kind_name(ex.kind) + " tree, model expects " +
                     tree_kind_name(cfg.tree_kind));
      LirEncodingT<S> enc = cfg.tree_kind == TreeKind::dependency
                                ? lir_encode(t, ex.sentence, ex.dep, embeds, hs, lir)
                                : lir_encode(t, ex.sentence, ex.cons, embeds, hs, lir);
      f.lambdas = std::move(enc.lambdas);
      for (const NodeStateT<S>& st : enc.token_states) f.word_h.push_back(st.h);
      root_h = enc.root_h;
    } else {
      f.word_h = hs;
    }

    if (cfg.uses_gir()) {
      GirEncodingT<S> g = gir_encode(t, f.word_h, gir);
      for (TensorT<S>& l : g.lambdas) f.lambdas.push_back(std::move(l));
      f.s = g.s;
    } else {
      f.s = cfg.lir_readout == LirReadout::root ? root_h : maxpool_rows(f.word_h);
    }
    if (training && cfg.dropout_layers > 0.0) f.s = dropout(f.s, cfg.dropout_layers, true, *dropout_rng);
    return f;
  }

  // gamma-weighted joint objective: mean word-level NLL plus the sentence
  // NLL. Exact at the boundaries: gamma = 1 drops the sentence term,
  // gamma = 0 the word term.
  VarT<S> joint_loss(TapeT<S>& t, const Features& f, VarT<S> sentence_probs, int label,
                     double gamma) {
    if (gamma < 0.0 || gamma > 1.0)
      throw_domain("joint_loss: gamma must be in [0, 1], got " + std::to_string(gamma));
    VarT<S> word_total;
    for (size_t i = 0; i < f.word_h.size(); ++i) {
      VarT<S> ce = cross_entropy(softmax(affine(t, word_w, f.word_h[i], word_b)), label);
      word_total = i == 0 ? ce : add(word_total, ce);
    }
    VarT<S> word_mean = scale(word_total, 1.0 / static_cast<double>(f.word_h.size()));
    VarT<S> sent_ce = cross_entropy(sentence_probs, label);
    return add(scale(word_mean, gamma), scale(sent_ce, 1.0 - gamma));
  }

  struct ForwardResult {
    Features f;
    VarT<S> probs;
  };

  ForwardResult forward(TapeT<S>& t, const Example& ex, bool training, Rng* dropout_rng) {
    ForwardResult r;
    r.f = features(t, ex, training, dropout_rng);
    r.probs = classifier.probs(t, {r.f.s}, training)[0];
    return r;
  }

  // Argmax class, ties toward the lowest index. Deterministic, no dropout,
  // running batch-norm statistics.
  int predict(const Example& ex) {
    TapeT<S> t;
    ForwardResult r = forward(t, ex, false, nullptr);
    const TensorT<S>& p = t.val(r.probs);
    int best = 0;
    for (int k = 1; k < p.rows(); ++k)
      if (p.values[static_cast<size_t>(k)] > p.values[static_cast<size_t>(best)]) best = k;
    return best;
  }
};

using InteractionModel = InteractionModelT<double>;

// Copies a model into another scalar precision; parameter order is fixed
// by construction, so values transfer positionally.
template <typename To, typename From>
InteractionModelT<To> convert_model(InteractionModelT<From>& src) {
  Rng dummy = substream(0, "convert");
  InteractionModelT<To> dst(src.cfg, src.vocab, dummy);
  auto sp = src.all_params();
  auto dp = dst.all_params();
  for (size_t i = 0; i < sp.size(); ++i)
    for (size_t k = 0; k < sp[i]->value.values.size(); ++k)
      dp[i]->value.values[k] = static_cast<To>(sp[i]->value.values[k]);
  if (src.classifier.use_bn) {
    for (size_t k = 0; k < src.classifier.bn.running_mean.values.size(); ++k) {
      dst.classifier.bn.running_mean.values[k] =
          static_cast<To>(src.classifier.bn.running_mean.values[k]);
      dst.classifier.bn.running_var.values[k] =
          static_cast<To>(src.classifier.bn.running_var.values[k]);
    }
  }
  return dst;
}

}  // namespace tir
