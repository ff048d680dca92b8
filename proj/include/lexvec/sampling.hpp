#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "lexvec/corpus.hpp"
#include "lexvec/rng.hpp"

namespace lexvec {

/// P_n(w) proportional to count_w^power.
///
/// Keeps the cumulative weights for inspection and an alias table for O(1)
/// draws. Immutable and shareable across workers.
class NoiseDistribution {
 public:
  NoiseDistribution(std::span<const std::uint64_t> counts, double power);

  std::size_t size() const { return probabilities_.size(); }
  double power() const { return power_; }
  double probability(WordId id) const { return probabilities_.at(id); }
  /// Monotone, last element 1.
  std::span<const double> cumulative_weights() const { return cumulative_; }

  WordId sample(Rng& rng) const {
    const auto bucket = static_cast<std::size_t>(rng.below(prob_.size()));
    return rng.uniform() < prob_[bucket] ? static_cast<WordId>(bucket) : alias_[bucket];
  }
  void sample(Rng& rng, std::size_t k, std::vector<WordId>& out) const {
    out.resize(k);
    for (auto& w : out) w = sample(rng);
  }
  std::vector<WordId> sample(Rng& rng, std::size_t k) const {
    std::vector<WordId> out;
    sample(rng, k, out);
    return out;
  }

 private:
  double power_;
  std::vector<double> probabilities_;
  std::vector<double> cumulative_;
  std::vector<double> prob_;
  std::vector<WordId> alias_;
};

/// Throws std::invalid_argument for an empty vocabulary or power <= 0.
NoiseDistribution build_noise(const Vocabulary& vocab, double power = 0.75);

enum class WindowMode { Ppmi, Sgns };

struct WindowSamplingConfig {
  WindowMode mode = WindowMode::Ppmi;
  std::uint32_t win = 2;
  bool randomize_size = false;

  /// Fixed win=2 for WS_PPMI, randomized win=10 for WS_SGNS.
  static WindowSamplingConfig for_mode(WindowMode mode) {
    return mode == WindowMode::Ppmi ? WindowSamplingConfig{WindowMode::Ppmi, 2, false}
                                    : WindowSamplingConfig{WindowMode::Sgns, 10, true};
  }
  void validate() const;
};

struct Window {
  std::size_t position;
  WordId center;
  std::vector<WordId> contexts;

  friend bool operator==(const Window&, const Window&) = default;
};

/// Visits each center position with its context words, left to right.
/// In randomized mode the effective size is drawn once per center from
/// [1, win]; fixed mode consumes no randomness.
template <class Fn>
void for_each_window(std::span<const WordId> sentence, const WindowSamplingConfig& cfg, Rng& rng,
                     std::vector<WordId>& scratch, Fn&& fn) {
  const std::size_t n = sentence.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t size = cfg.randomize_size ? 1 + rng.below(cfg.win) : cfg.win;
    const std::size_t lo = i >= size ? i - size : 0;
    const std::size_t hi = std::min(n, i + size + 1);
    scratch.clear();
    for (std::size_t j = lo; j < hi; ++j) {
      if (j != i) scratch.push_back(sentence[j]);
    }
    fn(i, sentence[i], std::span<const WordId>(scratch));
  }
}

std::vector<Window> windows(std::span<const WordId> sentence, const WindowSamplingConfig& cfg, Rng& rng);

}  // namespace lexvec
