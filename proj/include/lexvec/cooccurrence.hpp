#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "lexvec/corpus.hpp"

namespace lexvec {

struct CoocEntry {
  WordId word;
  WordId context;
  std::uint64_t count;

  friend bool operator==(const CoocEntry&, const CoocEntry&) = default;
};

/// Finalized co-occurrence counts M with marginals M_w*, M_*c and M_**.
///
/// Entries are sorted by (word, context) and never hold a zero count.
/// Immutable once built.
class CoocMatrix {
 public:
  CoocMatrix() = default;
  /// `entries` must be sorted and free of duplicates; marginals are derived.
  CoocMatrix(std::uint32_t vocab_size, std::uint32_t window, std::vector<CoocEntry> entries);

  std::uint32_t vocab_size() const { return vocab_size_; }
  std::uint32_t window() const { return window_; }
  bool weighted() const { return false; }
  bool empty() const { return entries_.empty(); }

  std::span<const CoocEntry> entries() const { return entries_; }
  std::uint64_t count(WordId w, WordId c) const;
  std::uint64_t row_marginal(WordId w) const { return row_marginals_.at(w); }
  std::uint64_t col_marginal(WordId c) const { return col_marginals_.at(c); }
  std::span<const std::uint64_t> row_marginals() const { return row_marginals_; }
  std::span<const std::uint64_t> col_marginals() const { return col_marginals_; }
  std::uint64_t grand_total() const { return grand_total_; }

  /// Binary: "LXCO", version, |V|, win, entry count, then (u32, u32, u64) triples.
  void save(const std::filesystem::path& path) const;
  static CoocMatrix load(const std::filesystem::path& path);
  /// `w<TAB>c<TAB>count` lines using surface words.
  void save_text(const std::filesystem::path& path, const Vocabulary& vocab) const;

  friend bool operator==(const CoocMatrix& a, const CoocMatrix& b) {
    return a.vocab_size_ == b.vocab_size_ && a.window_ == b.window_ && a.entries_ == b.entries_;
  }

 private:
  std::uint32_t vocab_size_ = 0;
  std::uint32_t window_ = 0;
  std::vector<CoocEntry> entries_;
  std::vector<std::uint64_t> row_marginals_;
  std::vector<std::uint64_t> col_marginals_;
  std::uint64_t grand_total_ = 0;
};

/// Mutable counting state; one per worker shard.
class CoocCounter {
 public:
  CoocCounter(std::uint32_t vocab_size, std::uint32_t window);

  /// Every ordered pair of positions (i, j), i != j, |i - j| <= window,
  /// adds one to cell (s[i], s[j]).
  void add_sentence(std::span<const WordId> sentence);
  void absorb(const CoocCounter& other);
  CoocMatrix finalize() const;

  std::size_t nonzeros() const { return cells_.size(); }

 private:
  std::uint32_t vocab_size_;
  std::uint32_t window_;
  absl::flat_hash_map<std::uint64_t, std::uint64_t> cells_;
};

CoocMatrix count_cooccurrences(std::span<const Sentence> stream, std::uint32_t window,
                               std::uint32_t vocab_size);

/// Counts over the subsampled corpus, sharding lines across `threads` workers.
CoocMatrix count_corpus(const std::filesystem::path& corpus, const Vocabulary& vocab,
                        const SubsampleConfig& subsample, std::uint32_t window, unsigned threads = 1,
                        const ReaderOptions& opts = {});

/// Cell-wise sum. Throws std::invalid_argument when windows or sizes differ.
CoocMatrix merge(const CoocMatrix& a, const CoocMatrix& b);

}  // namespace lexvec
