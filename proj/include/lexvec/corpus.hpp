#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lexvec/rng.hpp"

namespace lexvec {

using WordId = std::uint32_t;
using Sentence = std::vector<WordId>;

/// Transparent hash so maps keyed by std::string accept string_view lookups.
struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
};

/// Word <-> id mapping with corpus counts.
///
/// Ids are dense and assigned in descending count order, ties broken
/// lexicographically. `total_tokens` is the corpus size before the
/// min-count filter; relative frequencies are taken against it.
class Vocabulary {
 public:
  Vocabulary() = default;

  /// Builds from raw counts. Words below `min_count` are dropped but remain
  /// part of `total_tokens`.
  static Vocabulary from_counts(const std::unordered_map<std::string, std::uint64_t>& counts,
                                std::uint64_t total_tokens, std::uint64_t min_count);

  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }

  const std::string& word(WordId id) const { return words_.at(id); }
  std::uint64_t count(WordId id) const { return counts_.at(id); }
  std::optional<WordId> find(std::string_view word) const;

  std::span<const std::string> words() const { return words_; }
  std::span<const std::uint64_t> counts() const { return counts_; }
  std::uint64_t total_tokens() const { return total_tokens_; }
  std::uint64_t min_count() const { return min_count_; }

  /// Unigram relative frequency f against the pre-filter token total.
  double frequency(WordId id) const {
    return static_cast<double>(counts_.at(id)) / static_cast<double>(total_tokens_);
  }

  /// `#total_tokens=<N>` header then `word<TAB>count` lines.
  void save(const std::filesystem::path& path) const;
  static Vocabulary load(const std::filesystem::path& path);

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.words_ == b.words_ && a.counts_ == b.counts_ && a.total_tokens_ == b.total_tokens_;
  }

 private:
  std::vector<std::string> words_;
  std::vector<std::uint64_t> counts_;
  std::unordered_map<std::string, WordId, StringHash, std::equal_to<>> index_;
  std::uint64_t total_tokens_ = 0;
  std::uint64_t min_count_ = 1;
};

struct SubsampleConfig {
  double threshold_t = 1e-5;
  std::uint64_t seed = 1;

  void validate() const;
};

struct ReaderOptions {
  /// Lowercase ASCII letters and drop ASCII punctuation inside tokens.
  bool normalize = false;
};

/// Splits a line on spaces/tabs, applying normalization if requested.
/// Tokens that normalize to the empty string are dropped.
void tokenize(std::string_view line, const ReaderOptions& opts, std::vector<std::string>& out);

/// Calls `fn(line_index, tokens)` for every line of a corpus file.
/// Throws std::runtime_error when the file cannot be opened.
void for_each_line(const std::filesystem::path& corpus, const ReaderOptions& opts,
                   const std::function<void(std::uint64_t, const std::vector<std::string>&)>& fn);

Vocabulary build_vocabulary(const std::filesystem::path& corpus, std::uint64_t min_count,
                            const ReaderOptions& opts = {});

/// sqrt(t/f) clamped to [0,1]; exactly 1 when f <= t.
double keep_probability(std::uint64_t count, std::uint64_t total_tokens, const SubsampleConfig& cfg);

/// Per-word keep probabilities, precomputed once per vocabulary.
class Subsampler {
 public:
  Subsampler(const Vocabulary& vocab, const SubsampleConfig& cfg);

  /// Maps tokens to ids, drops OOV tokens, then keeps each id independently.
  /// Draws come from (seed, epoch, line_index) so any line can be replayed.
  void apply(const std::vector<std::string>& tokens, std::uint64_t epoch, std::uint64_t line_index,
             Sentence& out) const;

  double keep(WordId id) const { return keep_.at(id); }

  /// Expected surviving in-vocabulary tokens for one pass over the corpus.
  double expected_tokens() const;

 private:
  const Vocabulary* vocab_;
  SubsampleConfig cfg_;
  std::vector<double> keep_;
};

/// Filtered and subsampled sentences for one pass. Every input line yields
/// one (possibly empty) sentence, so line indices are preserved.
std::vector<Sentence> subsampled_stream(const std::filesystem::path& corpus, const Vocabulary& vocab,
                                        const SubsampleConfig& cfg, std::uint64_t epoch = 0,
                                        const ReaderOptions& opts = {});

}  // namespace lexvec
