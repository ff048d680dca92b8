#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "lexvec/cooccurrence.hpp"

namespace lexvec {

/// Smoothed PMI of one cell, in nats:
///
///   log( (M_wc / M_**) / ( (M_w* / M_**) * (M_*c^alpha / sum_c' M_*c'^alpha) ) )
///
/// Only the context marginal is smoothed. With alpha = 1 the normalizer is
/// M_** and this is plain PMI. The normalizer is computed once at
/// construction, so evaluate many cells through one instance.
class SmoothedPmi {
 public:
  SmoothedPmi(const CoocMatrix& cooc, double alpha);

  /// Requires M_wc > 0; throws std::domain_error otherwise.
  double operator()(WordId w, WordId c) const;
  /// Same formula for a known count, skipping the lookup.
  double from_count(WordId w, WordId c, std::uint64_t count) const;

  /// sum_c M_*c^alpha.
  double normalizer() const { return normalizer_; }
  double alpha() const { return alpha_; }

 private:
  const CoocMatrix* cooc_;
  double alpha_;
  double normalizer_ = 0.0;
  std::vector<double> rows_;
  std::vector<double> smoothed_cols_;
};

/// Convenience single-cell evaluation. O(|V|) per call; prefer SmoothedPmi.
double pmi(const CoocMatrix& cooc, WordId w, WordId c, double alpha);

struct PpmiCell {
  WordId word;
  WordId context;
  double value;
};

/// The 64-bit path: positive smoothed PMI for every observed cell, sorted,
/// with nonpositive cells dropped.
std::vector<PpmiCell> positive_pmi_cells(const CoocMatrix& cooc, double alpha);

struct PpmiEntry {
  WordId word;
  WordId context;
  float value;
};

/// Sparse PPMI* matrix. Absent cells read as zero.
///
/// Entries are kept sorted by (word, context) with row offsets for sparse
/// products, plus an open-addressing index for O(1) expected lookups during
/// training. Immutable and safe for concurrent reads.
class PpmiMatrix {
 public:
  PpmiMatrix() = default;
  /// `entries` must be sorted, unique, in range, and strictly positive.
  PpmiMatrix(std::uint32_t dims, double alpha, std::vector<PpmiEntry> entries);

  std::uint32_t dims() const { return dims_; }
  double alpha() const { return alpha_; }
  std::size_t nonzeros() const { return entries_.size(); }
  std::span<const PpmiEntry> entries() const { return entries_; }
  /// Entries of row w.
  std::span<const PpmiEntry> row(WordId w) const {
    return std::span<const PpmiEntry>(entries_).subspan(row_offsets_[w], row_offsets_[w + 1] - row_offsets_[w]);
  }

  /// Stored value or 0. Throws std::out_of_range for ids >= dims().
  float lookup(WordId w, WordId c) const {
    if (w >= dims_ || c >= dims_) throw std::out_of_range("PPMI lookup id out of range");
    return find(w, c);
  }
  /// Unchecked variant for the training loop.
  float find(WordId w, WordId c) const {
    if (slots_.empty()) return 0.0f;
    const std::uint64_t key = (static_cast<std::uint64_t>(w) << 32) | c;
    std::size_t i = slot_of(key);
    while (true) {
      const std::uint64_t k = slots_[i];
      if (k == key) return values_[i];
      if (k == kEmpty) return 0.0f;
      i = (i + 1) & mask_;
    }
  }

  /// Binary: "LXPM", version, |V|, alpha (f64), entry count, then (u32, u32, f32).
  void save(const std::filesystem::path& path) const;
  static PpmiMatrix load(const std::filesystem::path& path);

 private:
  static constexpr std::uint64_t kEmpty = ~std::uint64_t{0};
  std::size_t slot_of(std::uint64_t key) const { return static_cast<std::size_t>(mix(key)) & mask_; }
  static std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    return x;
  }

  std::uint32_t dims_ = 0;
  double alpha_ = 1.0;
  std::vector<PpmiEntry> entries_;
  std::vector<std::size_t> row_offsets_;
  std::vector<std::uint64_t> slots_;
  std::vector<float> values_;
  std::size_t mask_ = 0;
};

/// Throws std::invalid_argument for alpha outside (0, 1] or an empty matrix.
PpmiMatrix build_ppmi(const CoocMatrix& cooc, double alpha);

}  // namespace lexvec
