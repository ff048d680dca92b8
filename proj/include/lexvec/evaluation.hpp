#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lexvec/corpus.hpp"

namespace lexvec {

/// Words with one dense f32 row each.
class Embeddings {
 public:
  Embeddings() = default;
  /// `data` is row-major words.size() x dim.
  Embeddings(std::vector<std::string> words, std::size_t dim, std::vector<float> data);

  std::size_t size() const { return words_.size(); }
  std::size_t dim() const { return dim_; }
  const std::string& word(WordId id) const { return words_.at(id); }
  std::span<const std::string> words() const { return words_; }
  std::optional<WordId> find(std::string_view word) const;
  std::span<const float> row(WordId id) const { return {data_.data() + static_cast<std::size_t>(id) * dim_, dim_}; }
  std::span<const float> data() const { return data_; }

  /// word2vec text: `<count> <dim>` then `word v1 ... vd` per line.
  /// Values use the shortest round-trip decimal form, so output is byte-stable.
  void save_word2vec(const std::filesystem::path& path) const;
  static Embeddings load_word2vec(const std::filesystem::path& path);

 private:
  std::vector<std::string> words_;
  std::size_t dim_ = 0;
  std::vector<float> data_;
  std::unordered_map<std::string, WordId, StringHash, std::equal_to<>> index_;
};

/// Embeddings with every nonzero row scaled to unit length; zero rows stay zero.
/// Rows are widened to f64 once so all downstream cosines are dot products.
class UnitEmbeddings {
 public:
  explicit UnitEmbeddings(const Embeddings& e);

  std::size_t size() const { return words_.size(); }
  std::size_t dim() const { return dim_; }
  std::optional<WordId> find(std::string_view word) const;
  const std::string& word(WordId id) const { return words_.at(id); }
  std::span<const double> row(WordId id) const { return {data_.data() + static_cast<std::size_t>(id) * dim_, dim_}; }
  bool is_zero(WordId id) const { return zero_[id] != 0; }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, WordId, StringHash, std::equal_to<>> index_;
  std::size_t dim_ = 0;
  std::vector<double> data_;
  std::vector<char> zero_;
};

/// u.v / (|u||v|). Throws std::domain_error if either vector is zero.
double cosine(std::span<const double> u, std::span<const double> v);
double cosine(std::span<const float> u, std::span<const float> v);

/// 1-based ranks with ties sharing their average rank.
std::vector<double> average_ranks(std::span<const double> xs);

/// Pearson correlation of average ranks. Throws std::invalid_argument for
/// mismatched or short inputs and std::domain_error for a constant series.
double spearman(std::span<const double> xs, std::span<const double> ys);

struct SimilarityPair {
  std::string word1;
  std::string word2;
  double score;
};

struct SimilarityDataset {
  std::string name;
  std::vector<SimilarityPair> pairs;
};

struct AnalogyQuestion {
  std::string a;
  std::string a_star;
  std::string b;
  std::string b_star;
  std::string section;
};

struct AnalogyDataset {
  std::string name;
  std::vector<AnalogyQuestion> questions;
  std::vector<std::string> sections;
};

struct DatasetOptions {
  bool lowercase = false;
};

/// `word1 word2 score` lines, tab or space separated. Blank and `#` lines skipped.
SimilarityDataset load_similarity_dataset(const std::filesystem::path& path, const DatasetOptions& opts = {});
/// `a a* b b*` lines; lines starting with ':' open a section.
AnalogyDataset load_analogy_dataset(const std::filesystem::path& path, const DatasetOptions& opts = {});

struct EvalReport {
  std::string dataset;
  std::string metric;
  double value = 0.0;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
};

/// Pairs with an OOV (or zero-vector) word are skipped and counted.
/// Throws std::runtime_error when nothing is left to score.
EvalReport eval_similarity(const UnitEmbeddings& emb, const SimilarityDataset& ds);

enum class AnalogyMethod { CosAdd, CosMul };

inline constexpr double kCosMulEpsilon = 0.001;

/// argmax over all x not in {a, a*, b} of cos(x, a* - a + b). Lowest id wins ties.
WordId analogy_3cosadd(const UnitEmbeddings& emb, WordId a, WordId a_star, WordId b);
/// argmax of s(x,a*) s(x,b) / (s(x,a) + eps) with s = (cos + 1) / 2.
WordId analogy_3cosmul(const UnitEmbeddings& emb, WordId a, WordId a_star, WordId b);

/// Accuracy over answerable questions; any OOV among the four words skips one.
/// Throws std::runtime_error when no question is answerable.
EvalReport eval_analogy(const UnitEmbeddings& emb, const AnalogyDataset& ds, AnalogyMethod method);

std::string format_report_table(std::span<const EvalReport> reports);
/// Header `dataset,metric,value,evaluated,skipped`.
std::string format_report_csv(std::span<const EvalReport> reports);

}  // namespace lexvec
