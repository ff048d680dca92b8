#include "lexvec/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "lexvec/io.hpp"

namespace lexvec {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) {
    if (static_cast<unsigned char>(ch) < 0x80) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  return out;
}

template <class T>
bool parse_number(std::string_view s, T& out) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

double dot64(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

Embeddings::Embeddings(std::vector<std::string> words, std::size_t dim, std::vector<float> data)
    : words_(std::move(words)), dim_(dim), data_(std::move(data)) {
  if (data_.size() != words_.size() * dim_) throw std::invalid_argument("embedding data size mismatch");
  index_.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (!index_.emplace(words_[i], static_cast<WordId>(i)).second) {
      throw std::invalid_argument("duplicate embedding word '" + words_[i] + "'");
    }
  }
}

std::optional<WordId> Embeddings::find(std::string_view word) const {
  auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void Embeddings::save_word2vec(const std::filesystem::path& path) const {
  write_atomically(path, false, [this](std::ostream& os) {
    os << words_.size() << ' ' << dim_ << '\n';
    char buf[64];
    std::string line;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      line = words_[i];
      for (float v : row(static_cast<WordId>(i))) {
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
        line.push_back(' ');
        line.append(buf, ptr);
      }
      line.push_back('\n');
      os << line;
    }
  });
}

Embeddings Embeddings::load_word2vec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open embeddings: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw FormatError("embeddings " + path.string() + ": empty file");
  const auto header = split_ws(line);
  std::size_t count = 0, dim = 0;
  if (header.size() != 2 || !parse_number(header[0], count) || !parse_number(header[1], dim)) {
    throw FormatError("embeddings " + path.string() + ": header must be '<vocab_size> <dim>'");
  }
  std::vector<std::string> words;
  std::vector<float> data;
  // The header is untrusted until the rows are actually read.
  words.reserve(std::min<std::size_t>(count, 1u << 20));
  data.reserve(std::min<std::size_t>(count * dim, 1u << 24));
  while (words.size() < count && std::getline(in, line)) {
    const auto fields = split_ws(line);
    if (fields.empty()) continue;
    if (fields.size() != dim + 1) {
      throw FormatError("embeddings " + path.string() + ": line " + std::to_string(words.size() + 2) + " has " +
                        std::to_string(fields.size() - 1) + " values, expected " + std::to_string(dim));
    }
    words.emplace_back(fields[0]);
    for (std::size_t j = 1; j <= dim; ++j) {
      float v = 0.0f;
      if (!parse_number(fields[j], v)) {
        throw FormatError("embeddings " + path.string() + ": bad value '" + std::string(fields[j]) + "'");
      }
      data.push_back(v);
    }
  }
  if (words.size() != count) {
    throw FormatError("embeddings " + path.string() + ": expected " + std::to_string(count) + " rows, found " +
                      std::to_string(words.size()));
  }
  return Embeddings(std::move(words), dim, std::move(data));
}

UnitEmbeddings::UnitEmbeddings(const Embeddings& e)
    : words_(e.words().begin(), e.words().end()), dim_(e.dim()), data_(e.size() * e.dim()), zero_(e.size(), 0) {
  index_.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    index_.emplace(words_[i], static_cast<WordId>(i));
    const auto src = e.row(static_cast<WordId>(i));
    double norm = 0.0;
    for (float v : src) norm += static_cast<double>(v) * v;
    norm = std::sqrt(norm);
    double* dst = data_.data() + i * dim_;
    if (norm == 0.0) {
      zero_[i] = 1;
      continue;
    }
    for (std::size_t j = 0; j < dim_; ++j) dst[j] = static_cast<double>(src[j]) / norm;
  }
}

std::optional<WordId> UnitEmbeddings::find(std::string_view word) const {
  auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw std::invalid_argument("cosine of vectors with different lengths");
  double uv = 0.0, uu = 0.0, vv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    uv += u[i] * v[i];
    uu += u[i] * u[i];
    vv += v[i] * v[i];
  }
  if (uu == 0.0 || vv == 0.0) throw std::domain_error("cosine undefined for a zero vector");
  return std::clamp(uv / (std::sqrt(uu) * std::sqrt(vv)), -1.0, 1.0);
}

double cosine(std::span<const float> u, std::span<const float> v) {
  std::vector<double> a(u.begin(), u.end()), b(v.begin(), v.end());
  return cosine(std::span<const double>(a), std::span<const double>(b));
}

std::vector<double> average_ranks(std::span<const double> xs) {
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = rank;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("spearman inputs differ in length");
  if (xs.size() < 2) throw std::invalid_argument("spearman needs at least two observations");
  const auto rx = average_ranks(xs);
  const auto ry = average_ranks(ys);
  const double n = static_cast<double>(rx.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mx, dy = ry[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw std::domain_error("spearman undefined for a constant series");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

SimilarityDataset load_similarity_dataset(const std::filesystem::path& path, const DatasetOptions& opts) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open similarity dataset: " + path.string());
  SimilarityDataset ds;
  ds.name = path.stem().string();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto f = split_ws(line);
    if (f.empty() || f[0].starts_with('#')) continue;
    double score = 0.0;
    if (f.size() != 3 || !parse_number(f[2], score) || !std::isfinite(score)) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) + ": expected 'word1 word2 score'");
    }
    ds.pairs.push_back({opts.lowercase ? lower(f[0]) : std::string(f[0]),
                        opts.lowercase ? lower(f[1]) : std::string(f[1]), score});
  }
  if (ds.pairs.empty()) throw FormatError("similarity dataset " + path.string() + " is empty");
  return ds;
}

AnalogyDataset load_analogy_dataset(const std::filesystem::path& path, const DatasetOptions& opts) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open analogy dataset: " + path.string());
  AnalogyDataset ds;
  ds.name = path.stem().string();
  std::string line, section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto f = split_ws(line);
    if (f.empty()) continue;
    if (f[0].starts_with(':')) {
      section = std::string(line.substr(line.find(':') + 1));
      section.erase(0, section.find_first_not_of(" \t"));
      while (!section.empty() && (section.back() == '\r' || section.back() == ' ')) section.pop_back();
      ds.sections.push_back(section);
      continue;
    }
    if (f.size() != 4) throw FormatError(path.string() + ":" + std::to_string(lineno) + ": expected 'a a* b b*'");
    auto word = [&](std::string_view s) { return opts.lowercase ? lower(s) : std::string(s); };
    ds.questions.push_back({word(f[0]), word(f[1]), word(f[2]), word(f[3]), section});
  }
  if (ds.questions.empty()) throw FormatError("analogy dataset " + path.string() + " is empty");
  return ds;
}

EvalReport eval_similarity(const UnitEmbeddings& emb, const SimilarityDataset& ds) {
  std::vector<double> predicted, human;
  EvalReport report{ds.name, "spearman", 0.0, 0, 0};
  for (const auto& p : ds.pairs) {
    const auto a = emb.find(p.word1);
    const auto b = emb.find(p.word2);
    if (!a || !b || emb.is_zero(*a) || emb.is_zero(*b)) {
      ++report.skipped;
      continue;
    }
    predicted.push_back(std::clamp(dot64(emb.row(*a), emb.row(*b)), -1.0, 1.0));
    human.push_back(p.score);
  }
  report.evaluated = predicted.size();
  if (report.evaluated == 0) throw std::runtime_error("similarity dataset " + ds.name + ": every pair is out of vocabulary");
  report.value = spearman(predicted, human);
  return report;
}

WordId analogy_3cosadd(const UnitEmbeddings& emb, WordId a, WordId a_star, WordId b) {
  const std::size_t d = emb.dim();
  std::vector<double> t(d);
  const auto ra = emb.row(a), rs = emb.row(a_star), rb = emb.row(b);
  for (std::size_t i = 0; i < d; ++i) t[i] = rs[i] - ra[i] + rb[i];
  const double norm = std::sqrt(dot64(t, t));
  std::optional<WordId> best;
  double best_score = 0.0;
  for (WordId x = 0; x < emb.size(); ++x) {
    if (x == a || x == a_star || x == b) continue;
    const double score = norm > 0.0 ? dot64(emb.row(x), t) / norm : 0.0;
    if (!best || score > best_score) {
      best = x;
      best_score = score;
    }
  }
  if (!best) throw std::invalid_argument("analogy needs at least one candidate outside the query words");
  return *best;
}

WordId analogy_3cosmul(const UnitEmbeddings& emb, WordId a, WordId a_star, WordId b) {
  const auto ra = emb.row(a), rs = emb.row(a_star), rb = emb.row(b);
  std::optional<WordId> best;
  double best_score = 0.0;
  for (WordId x = 0; x < emb.size(); ++x) {
    if (x == a || x == a_star || x == b) continue;
    const auto rx = emb.row(x);
    const double sa = (dot64(rx, ra) + 1.0) / 2.0;
    const double ss = (dot64(rx, rs) + 1.0) / 2.0;
    const double sb = (dot64(rx, rb) + 1.0) / 2.0;
    const double score = ss * sb / (sa + kCosMulEpsilon);
    if (!best || score > best_score) {
      best = x;
      best_score = score;
    }
  }
  if (!best) throw std::invalid_argument("analogy needs at least one candidate outside the query words");
  return *best;
}

EvalReport eval_analogy(const UnitEmbeddings& emb, const AnalogyDataset& ds, AnalogyMethod method) {
  EvalReport report{ds.name, method == AnalogyMethod::CosAdd ? "3cosadd" : "3cosmul", 0.0, 0, 0};
  std::size_t correct = 0;
  for (const auto& q : ds.questions) {
    const auto a = emb.find(q.a), s = emb.find(q.a_star), b = emb.find(q.b), bs = emb.find(q.b_star);
    if (!a || !s || !b || !bs) {
      ++report.skipped;
      continue;
    }
    const WordId guess =
        method == AnalogyMethod::CosAdd ? analogy_3cosadd(emb, *a, *s, *b) : analogy_3cosmul(emb, *a, *s, *b);
    ++report.evaluated;
    if (guess == *bs) ++correct;
  }
  if (report.evaluated == 0) throw std::runtime_error("analogy dataset " + ds.name + ": no answerable question");
  report.value = static_cast<double>(correct) / static_cast<double>(report.evaluated);
  return report;
}

std::string format_report_table(std::span<const EvalReport> reports) {
  std::size_t name_w = 7, metric_w = 6;
  for (const auto& r : reports) {
    name_w = std::max(name_w, r.dataset.size());
    metric_w = std::max(metric_w, r.metric.size());
  }
  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(name_w)) << "dataset" << "  " << std::setw(static_cast<int>(metric_w))
     << "metric" << "  " << std::right << std::setw(8) << "value" << "  " << std::setw(9) << "evaluated" << "  "
     << std::setw(7) << "skipped" << '\n';
  for (const auto& r : reports) {
    os << std::left << std::setw(static_cast<int>(name_w)) << r.dataset << "  " << std::setw(static_cast<int>(metric_w))
       << r.metric << "  " << std::right << std::setw(8) << std::fixed << std::setprecision(4) << r.value << "  "
       << std::setw(9) << r.evaluated << "  " << std::setw(7) << r.skipped << '\n';
  }
  return os.str();
}

std::string format_report_csv(std::span<const EvalReport> reports) {
  std::ostringstream os;
  os << "dataset,metric,value,evaluated,skipped\n";
  for (const auto& r : reports) {
    os << r.dataset << ',' << r.metric << ',' << std::setprecision(6) << std::fixed << r.value << ',' << r.evaluated
       << ',' << r.skipped << '\n';
  }
  return os.str();
}

}  // namespace lexvec
