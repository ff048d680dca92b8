#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "lexvec/corpus.hpp"
#include "lexvec/ppmi.hpp"
#include "lexvec/sampling.hpp"

namespace lexvec {

enum class Variant : std::uint32_t { MiniBatch = 0, Stochastic = 1 };
enum class OutputComposition { W, WPlusWTilde };

/// Target matrix W and context matrix W~, both |V| x d, row-major f32.
class EmbeddingPair {
 public:
  EmbeddingPair() = default;
  /// Zero-initialized.
  EmbeddingPair(std::size_t vocab_size, std::size_t dim);
  /// Every entry uniform in [-0.5/d, 0.5/d].
  static EmbeddingPair random(std::size_t vocab_size, std::size_t dim, std::uint64_t seed);

  std::size_t vocab_size() const { return vocab_size_; }
  std::size_t dim() const { return dim_; }

  std::span<float> target(WordId w) { return {w_.data() + static_cast<std::size_t>(w) * dim_, dim_}; }
  std::span<const float> target(WordId w) const { return {w_.data() + static_cast<std::size_t>(w) * dim_, dim_}; }
  std::span<float> context(WordId c) { return {wt_.data() + static_cast<std::size_t>(c) * dim_, dim_}; }
  std::span<const float> context(WordId c) const { return {wt_.data() + static_cast<std::size_t>(c) * dim_, dim_}; }

  std::span<float> targets() { return w_; }
  std::span<const float> targets() const { return w_; }
  std::span<float> contexts() { return wt_; }
  std::span<const float> contexts() const { return wt_; }

  bool all_finite() const;

  friend bool operator==(const EmbeddingPair&, const EmbeddingPair&) = default;

 private:
  std::size_t vocab_size_ = 0;
  std::size_t dim_ = 0;
  std::vector<float> w_;
  std::vector<float> wt_;
};

template <class T>
T dot(std::span<const T> a, std::span<const T> b) {
  T sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

/// 1/2 (w . c - target)^2.
template <class T>
T pair_loss(std::span<const T> w, std::span<const T> c, T target) {
  const T r = dot(w, c) - target;
  return T(0.5) * r * r;
}

/// Gradients of pair_loss with respect to w and c.
template <class T>
void pair_gradient(std::span<const T> w, std::span<const T> c, T target, std::span<T> grad_w, std::span<T> grad_c) {
  const T r = dot(w, c) - target;
  for (std::size_t i = 0; i < w.size(); ++i) {
    grad_w[i] = r * c[i];
    grad_c[i] = r * w[i];
  }
}

/// One simultaneous step on pair_loss; both rows use each other's pre-update value.
template <class T>
void pair_gradient_step(std::span<T> w, std::span<T> c, T target, T lr) {
  const T g = lr * (dot<T>(w, c) - target);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const T wi = w[i];
    w[i] -= g * c[i];
    c[i] -= g * wi;
  }
}

/// 1/2 sum_i (w . n_i - target_i)^2 for one fixed set of noise rows.
template <class T>
T noise_loss(std::span<const T> w, std::span<const std::span<const T>> noise, std::span<const T> targets) {
  T sum = 0;
  for (std::size_t i = 0; i < noise.size(); ++i) sum += pair_loss(w, noise[i], targets[i]);
  return sum;
}

/// Gradients of noise_loss: grad_w accumulates every term; grad_noise[i] is term i's own.
template <class T>
void noise_gradient(std::span<const T> w, std::span<const std::span<const T>> noise, std::span<const T> targets,
                    std::span<T> grad_w, std::span<const std::span<T>> grad_noise) {
  std::fill(grad_w.begin(), grad_w.end(), T(0));
  for (std::size_t j = 0; j < noise.size(); ++j) {
    const T r = dot(w, noise[j]) - targets[j];
    for (std::size_t i = 0; i < w.size(); ++i) {
      grad_w[i] += r * noise[j][i];
      grad_noise[j][i] = r * w[i];
    }
  }
}

/// One simultaneous step on the sum of several pair losses sharing the row w.
///
/// All residuals are taken at the pre-update point. w moves by the summed
/// gradient; each context row moves by its own term (rows listed twice move
/// twice). With a single row this is exactly pair_gradient_step.
template <class T>
void multi_term_step(std::span<T> w, std::span<const std::span<T>> rows, std::span<const T> targets, T lr,
                     std::vector<T>& scale, std::vector<T>& delta) {
  scale.resize(rows.size());
  for (std::size_t j = 0; j < rows.size(); ++j) scale[j] = lr * (dot<T>(w, rows[j]) - targets[j]);
  delta.assign(w.size(), T(0));
  for (std::size_t j = 0; j < rows.size(); ++j) {
    for (std::size_t i = 0; i < w.size(); ++i) delta[i] += scale[j] * rows[j][i];
  }
  for (std::size_t j = 0; j < rows.size(); ++j) {
    for (std::size_t i = 0; i < w.size(); ++i) rows[j][i] -= scale[j] * w[i];
  }
  for (std::size_t i = 0; i < w.size(); ++i) w[i] -= delta[i];
}

double pair_loss(const EmbeddingPair& pair, WordId w, WordId c, double target);
void pair_gradient_step(EmbeddingPair& pair, WordId w, WordId c, float target, float lr);

struct TrainConfig {
  Variant variant = Variant::Stochastic;
  WindowSamplingConfig window = WindowSamplingConfig::for_mode(WindowMode::Ppmi);
  int negatives = 5;
  std::size_t dim = 300;
  int epochs = 5;
  double lr_initial = 0.025;
  /// Defaults to 1e-4 * lr_initial.
  std::optional<double> lr_floor;
  std::uint64_t seed = 1;
  OutputComposition output = OutputComposition::W;
  unsigned threads = 1;

  double floor() const { return lr_floor.value_or(1e-4 * lr_initial); }
  /// Throws std::invalid_argument naming the offending setting.
  void validate() const;
};

/// Produces the training stream for an epoch. Sentence indices must be stable
/// across calls so per-sentence random states can be rederived.
class SentenceSource {
 public:
  virtual ~SentenceSource() = default;
  virtual void for_each(std::uint64_t epoch,
                        const std::function<void(std::uint64_t index, std::span<const WordId>)>& fn) = 0;
  virtual double expected_tokens_per_epoch() const = 0;
};

/// Fixed sentences, identical every epoch.
class InMemorySource final : public SentenceSource {
 public:
  explicit InMemorySource(std::vector<Sentence> sentences);
  void for_each(std::uint64_t epoch, const std::function<void(std::uint64_t, std::span<const WordId>)>& fn) override;
  double expected_tokens_per_epoch() const override { return static_cast<double>(tokens_); }
  std::span<const Sentence> sentences() const { return sentences_; }

 private:
  std::vector<Sentence> sentences_;
  std::size_t tokens_ = 0;
};

/// Streams a corpus file, subsampling afresh each epoch.
class CorpusSource final : public SentenceSource {
 public:
  CorpusSource(std::filesystem::path corpus, const Vocabulary& vocab, const SubsampleConfig& subsample,
               ReaderOptions opts = {});
  void for_each(std::uint64_t epoch, const std::function<void(std::uint64_t, std::span<const WordId>)>& fn) override;
  double expected_tokens_per_epoch() const override { return sampler_.expected_tokens(); }

 private:
  std::filesystem::path corpus_;
  Subsampler sampler_;
  ReaderOptions opts_;
};

struct TrainStats {
  std::uint64_t tokens = 0;
  /// Centers with at least one context word.
  std::uint64_t windows = 0;
  std::uint64_t positive_updates = 0;
  std::uint64_t noise_draws = 0;
};

/// Sees every update in order. Only called in single-worker mode.
class UpdateObserver {
 public:
  virtual ~UpdateObserver() = default;
  virtual void on_positive(WordId /*w*/, WordId /*c*/) {}
  virtual void on_noise(WordId /*w*/, WordId /*noise*/) {}
};

struct TrainHooks {
  UpdateObserver* observer = nullptr;
  /// Called after each epoch with its 1-based number.
  std::function<void(int, const EmbeddingPair&)> on_epoch_end;
};

/// Runs cfg.epochs passes of window sampling + negative sampling over `source`,
/// updating `pair` in place. Throws std::invalid_argument on size mismatches.
///
/// Stochastic: per window, sequential pair steps on each (w, c_j), then k noise
/// words drawn once for the window, each stepped in turn.
/// MiniBatch: per observed (w, c), k fresh noise words and one simultaneous step
/// on the k + 1 summed terms.
TrainStats train_into(EmbeddingPair& pair, const PpmiMatrix& ppmi, const NoiseDistribution& noise,
                      SentenceSource& source, const TrainConfig& cfg, const TrainHooks& hooks = {});

/// Seeds a fresh pair from cfg and trains it.
EmbeddingPair train(const PpmiMatrix& ppmi, const NoiseDistribution& noise, SentenceSource& source,
                    const TrainConfig& cfg, TrainStats* stats = nullptr, const TrainHooks& hooks = {});
EmbeddingPair train_minibatch(const PpmiMatrix& ppmi, const NoiseDistribution& noise, SentenceSource& source,
                              TrainConfig cfg);
EmbeddingPair train_stochastic(const PpmiMatrix& ppmi, const NoiseDistribution& noise, SentenceSource& source,
                               TrainConfig cfg);

/// Monte-Carlo estimate of the variant's global loss: replays one window-sampling
/// pass of `epoch` with a held seed and sums the terms without updating.
double estimate_global_loss(const EmbeddingPair& pair, const PpmiMatrix& ppmi, const NoiseDistribution& noise,
                            SentenceSource& source, const TrainConfig& cfg, std::uint64_t loss_seed,
                            std::uint64_t epoch = 0);

/// W, or W + W~, as a row-major |V| x d matrix.
std::vector<float> compose_output(const EmbeddingPair& pair, OutputComposition composition);

struct Checkpoint {
  EmbeddingPair pair;
  Variant variant;
  std::uint32_t epoch;
};

/// "LXCK", version, |V|, d, variant, epoch, then W and W~ row-major f32.
void save_checkpoint(const std::filesystem::path& path, const EmbeddingPair& pair, Variant variant,
                     std::uint32_t epoch);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace lexvec
