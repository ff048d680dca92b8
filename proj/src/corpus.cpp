#include "lexvec/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "lexvec/io.hpp"

namespace lexvec {

Vocabulary Vocabulary::from_counts(const std::unordered_map<std::string, std::uint64_t>& counts,
                                   std::uint64_t total_tokens, std::uint64_t min_count) {
  std::vector<std::pair<std::string, std::uint64_t>> kept;
  for (const auto& [word, count] : counts) {
    if (count >= min_count) kept.emplace_back(word, count);
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });

  Vocabulary v;
  v.total_tokens_ = total_tokens;
  v.min_count_ = min_count;
  v.words_.reserve(kept.size());
  v.counts_.reserve(kept.size());
  v.index_.reserve(kept.size());
  for (auto& [word, count] : kept) {
    v.index_.emplace(word, static_cast<WordId>(v.words_.size()));
    v.words_.push_back(std::move(word));
    v.counts_.push_back(count);
  }
  return v;
}

std::optional<WordId> Vocabulary::find(std::string_view word) const {
  auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void Vocabulary::save(const std::filesystem::path& path) const {
  write_atomically(path, false, [this](std::ostream& os) {
    os << "#total_tokens=" << total_tokens_ << '\n';
    for (std::size_t i = 0; i < words_.size(); ++i) os << words_[i] << '\t' << counts_[i] << '\n';
  });
}

Vocabulary Vocabulary::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open vocabulary: " + path.string());
  std::string line;
  constexpr std::string_view kHeader = "#total_tokens=";
  if (!std::getline(in, line) || !line.starts_with(kHeader)) {
    throw FormatError("vocabulary " + path.string() + ": missing #total_tokens header");
  }
  Vocabulary v;
  try {
    v.total_tokens_ = std::stoull(line.substr(kHeader.size()));
  } catch (const std::exception&) {
    throw FormatError("vocabulary " + path.string() + ": bad total_tokens");
  }
  std::uint64_t prev = UINT64_MAX;
  std::uint64_t min_seen = UINT64_MAX;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto tab = line.rfind('\t');
    if (tab == std::string::npos || tab == 0) {
      throw FormatError("vocabulary " + path.string() + ": malformed line '" + line + "'");
    }
    std::string word = line.substr(0, tab);
    std::uint64_t count = 0;
    try {
      count = std::stoull(line.substr(tab + 1));
    } catch (const std::exception&) {
      throw FormatError("vocabulary " + path.string() + ": bad count in '" + line + "'");
    }
    if (count > prev) throw FormatError("vocabulary " + path.string() + ": counts not in descending order");
    prev = count;
    min_seen = std::min(min_seen, count);
    if (!v.index_.emplace(word, static_cast<WordId>(v.words_.size())).second) {
      throw FormatError("vocabulary " + path.string() + ": duplicate word '" + word + "'");
    }
    v.words_.push_back(std::move(word));
    v.counts_.push_back(count);
  }
  v.min_count_ = v.words_.empty() ? 1 : min_seen;
  return v;
}

void SubsampleConfig::validate() const {
  if (!(threshold_t > 0.0 && threshold_t <= 1.0)) {
    throw std::invalid_argument("subsample threshold must be in (0, 1], got " + std::to_string(threshold_t));
  }
}

void tokenize(std::string_view line, const ReaderOptions& opts, std::vector<std::string>& out) {
  out.clear();
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) {
      std::string token(line.substr(i, j - i));
      if (opts.normalize) {
        std::string cleaned;
        cleaned.reserve(token.size());
        for (unsigned char ch : token) {
          if (ch < 0x80 && std::ispunct(ch)) continue;
          cleaned.push_back(ch < 0x80 ? static_cast<char>(std::tolower(ch)) : static_cast<char>(ch));
        }
        token = std::move(cleaned);
      }
      if (!token.empty()) out.push_back(std::move(token));
    }
    i = j;
  }
}

void for_each_line(const std::filesystem::path& corpus, const ReaderOptions& opts,
                   const std::function<void(std::uint64_t, const std::vector<std::string>&)>& fn) {
  std::ifstream in(corpus);
  if (!in) throw std::runtime_error("cannot open corpus: " + corpus.string());
  std::string line;
  std::vector<std::string> tokens;
  std::uint64_t index = 0;
  while (std::getline(in, line)) {
    tokenize(line, opts, tokens);
    fn(index++, tokens);
  }
  if (in.bad()) throw std::runtime_error("read error on corpus: " + corpus.string());
}

Vocabulary build_vocabulary(const std::filesystem::path& corpus, std::uint64_t min_count,
                            const ReaderOptions& opts) {
  std::unordered_map<std::string, std::uint64_t> counts;
  std::uint64_t total = 0;
  for_each_line(corpus, opts, [&](std::uint64_t, const std::vector<std::string>& tokens) {
    for (const auto& t : tokens) ++counts[t];
    total += tokens.size();
  });
  Vocabulary v = Vocabulary::from_counts(counts, total, std::max<std::uint64_t>(min_count, 1));
  if (v.empty()) {
    throw std::runtime_error("empty vocabulary: no word in " + corpus.string() + " reaches min_count " +
                             std::to_string(min_count));
  }
  return v;
}

double keep_probability(std::uint64_t count, std::uint64_t total_tokens, const SubsampleConfig& cfg) {
  const double f = static_cast<double>(count) / static_cast<double>(total_tokens);
  if (f <= cfg.threshold_t) return 1.0;
  return std::clamp(std::sqrt(cfg.threshold_t / f), 0.0, 1.0);
}

Subsampler::Subsampler(const Vocabulary& vocab, const SubsampleConfig& cfg) : vocab_(&vocab), cfg_(cfg) {
  cfg_.validate();
  keep_.resize(vocab.size());
  for (WordId id = 0; id < vocab.size(); ++id) keep_[id] = keep_probability(vocab.count(id), vocab.total_tokens(), cfg_);
}

void Subsampler::apply(const std::vector<std::string>& tokens, std::uint64_t epoch, std::uint64_t line_index,
                       Sentence& out) const {
  out.clear();
  Rng rng(derive_seed(cfg_.seed, kSubsampleStream, epoch, line_index));
  for (const auto& t : tokens) {
    auto id = vocab_->find(t);
    if (!id) continue;
    const double p = keep_[*id];
    // Words at or below the threshold never consume a draw.
    if (p >= 1.0 || rng.uniform() < p) out.push_back(*id);
  }
}

double Subsampler::expected_tokens() const {
  double sum = 0.0;
  for (WordId id = 0; id < keep_.size(); ++id) sum += keep_[id] * static_cast<double>(vocab_->count(id));
  return sum;
}

std::vector<Sentence> subsampled_stream(const std::filesystem::path& corpus, const Vocabulary& vocab,
                                        const SubsampleConfig& cfg, std::uint64_t epoch,
                                        const ReaderOptions& opts) {
  Subsampler sampler(vocab, cfg);
  std::vector<Sentence> stream;
  for_each_line(corpus, opts, [&](std::uint64_t index, const std::vector<std::string>& tokens) {
    Sentence s;
    sampler.apply(tokens, epoch, index, s);
    stream.push_back(std::move(s));
  });
  return stream;
}

}  // namespace lexvec
