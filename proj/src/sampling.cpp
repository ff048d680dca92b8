#include "lexvec/sampling.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lexvec {

NoiseDistribution::NoiseDistribution(std::span<const std::uint64_t> counts, double power) : power_(power) {
  if (counts.empty()) throw std::invalid_argument("noise distribution needs a nonempty vocabulary");
  if (!(power > 0.0)) throw std::invalid_argument("noise power must be > 0, got " + std::to_string(power));
  const std::size_t n = counts.size();
  probabilities_.resize(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    probabilities_[i] = std::pow(static_cast<double>(counts[i]), power);
    total += probabilities_[i];
  }
  if (!(total > 0.0)) throw std::invalid_argument("noise distribution has zero total weight");
  cumulative_.resize(n);
  double running = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    probabilities_[i] /= total;
    running += probabilities_[i];
    cumulative_[i] = running;
  }
  cumulative_.back() = 1.0;

  // Vose's alias method.
  prob_.assign(n, 0.0);
  alias_.assign(n, 0);
  std::vector<double> scaled(n);
  std::vector<std::size_t> small, large;
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = probabilities_[i] * static_cast<double>(n);
    (scaled[i] < 1.0 ? small : large).push_back(i);
  }
  while (!small.empty() && !large.empty()) {
    const auto s = small.back();
    small.pop_back();
    const auto l = large.back();
    prob_[s] = scaled[s];
    alias_[s] = static_cast<WordId>(l);
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  for (auto i : large) prob_[i] = 1.0;
  for (auto i : small) prob_[i] = 1.0;  // rounding leftovers
}

NoiseDistribution build_noise(const Vocabulary& vocab, double power) { return NoiseDistribution(vocab.counts(), power); }

void WindowSamplingConfig::validate() const {
  if (win == 0) throw std::invalid_argument("window must be >= 1");
}

std::vector<Window> windows(std::span<const WordId> sentence, const WindowSamplingConfig& cfg, Rng& rng) {
  cfg.validate();
  std::vector<Window> out;
  std::vector<WordId> scratch;
  for_each_window(sentence, cfg, rng, scratch, [&](std::size_t pos, WordId center, std::span<const WordId> ctx) {
    out.push_back({pos, center, std::vector<WordId>(ctx.begin(), ctx.end())});
  });
  return out;
}

}  // namespace lexvec
