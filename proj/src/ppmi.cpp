#include "lexvec/ppmi.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

#include "lexvec/io.hpp"

namespace lexvec {

namespace {
constexpr char kPpmiMagic[5] = "LXPM";
constexpr std::uint32_t kPpmiVersion = 1;
}  // namespace

SmoothedPmi::SmoothedPmi(const CoocMatrix& cooc, double alpha) : cooc_(&cooc), alpha_(alpha) {
  const auto n = cooc.vocab_size();
  rows_.resize(n);
  smoothed_cols_.resize(n);
  for (WordId i = 0; i < n; ++i) {
    rows_[i] = static_cast<double>(cooc.row_marginal(i));
    const auto col = cooc.col_marginal(i);
    smoothed_cols_[i] = col > 0 ? std::pow(static_cast<double>(col), alpha) : 0.0;
    normalizer_ += smoothed_cols_[i];
  }
}

double SmoothedPmi::from_count(WordId w, WordId c, std::uint64_t count) const {
  if (count == 0) throw std::domain_error("PMI undefined for a zero co-occurrence count");
  // (M_wc / M_**) / ((M_w* / M_**) (M_*c^a / Z)) = M_wc Z / (M_w* M_*c^a).
  // One log of the ratio: with alpha = 1 the products are exact integers, so
  // independent cells come out as exactly 0.
  return std::log((static_cast<double>(count) * normalizer_) / (rows_[w] * smoothed_cols_[c]));
}

double SmoothedPmi::operator()(WordId w, WordId c) const { return from_count(w, c, cooc_->count(w, c)); }

double pmi(const CoocMatrix& cooc, WordId w, WordId c, double alpha) { return SmoothedPmi(cooc, alpha)(w, c); }

std::vector<PpmiCell> positive_pmi_cells(const CoocMatrix& cooc, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must be in (0, 1], got " + std::to_string(alpha));
  }
  if (cooc.empty()) throw std::invalid_argument("cannot build PPMI from an empty co-occurrence matrix");
  SmoothedPmi pmi(cooc, alpha);
  std::vector<PpmiCell> cells;
  for (const auto& e : cooc.entries()) {
    const double v = pmi.from_count(e.word, e.context, e.count);
    if (v > 0.0) cells.push_back({e.word, e.context, v});
  }
  return cells;
}

PpmiMatrix::PpmiMatrix(std::uint32_t dims, double alpha, std::vector<PpmiEntry> entries)
    : dims_(dims), alpha_(alpha), entries_(std::move(entries)) {
  row_offsets_.assign(static_cast<std::size_t>(dims_) + 1, 0);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.word >= dims_ || e.context >= dims_) throw std::invalid_argument("PPMI entry id out of range");
    if (!(e.value > 0.0f) || !std::isfinite(e.value)) {
      throw std::invalid_argument("PPMI entries must be finite and positive");
    }
    if (i > 0) {
      const auto& p = entries_[i - 1];
      if (p.word > e.word || (p.word == e.word && p.context >= e.context)) {
        throw std::invalid_argument("PPMI entries not strictly sorted");
      }
    }
    ++row_offsets_[e.word + 1];
  }
  for (std::size_t r = 0; r < dims_; ++r) row_offsets_[r + 1] += row_offsets_[r];

  if (entries_.empty()) return;
  const std::size_t capacity = std::bit_ceil(entries_.size() * 2);
  mask_ = capacity - 1;
  slots_.assign(capacity, kEmpty);
  values_.assign(capacity, 0.0f);
  for (const auto& e : entries_) {
    const std::uint64_t key = (static_cast<std::uint64_t>(e.word) << 32) | e.context;
    std::size_t i = slot_of(key);
    while (slots_[i] != kEmpty) i = (i + 1) & mask_;
    slots_[i] = key;
    values_[i] = e.value;
  }
}

void PpmiMatrix::save(const std::filesystem::path& path) const {
  write_atomically(path, true, [this](std::ostream& os) {
    write_header(os, kPpmiMagic, kPpmiVersion);
    le::put<std::uint32_t>(os, dims_);
    le::put<double>(os, alpha_);
    le::put<std::uint64_t>(os, entries_.size());
    for (const auto& e : entries_) {
      le::put<std::uint32_t>(os, e.word);
      le::put<std::uint32_t>(os, e.context);
      le::put<float>(os, e.value);
    }
  });
}

PpmiMatrix PpmiMatrix::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open PPMI file: " + path.string());
  read_header(in, kPpmiMagic, kPpmiVersion, "PPMI file " + path.string());
  const auto dims = le::get<std::uint32_t>(in);
  const auto alpha = le::get<double>(in);
  const auto n = le::get<std::uint64_t>(in);
  std::vector<PpmiEntry> entries;
  entries.reserve(std::min<std::uint64_t>(n, 1u << 20));  // n is untrusted until read
  for (std::uint64_t i = 0; i < n; ++i) {
    PpmiEntry e;
    e.word = le::get<std::uint32_t>(in);
    e.context = le::get<std::uint32_t>(in);
    e.value = le::get<float>(in);
    entries.push_back(e);
  }
  try {
    return PpmiMatrix(dims, alpha, std::move(entries));
  } catch (const std::invalid_argument& e) {
    throw FormatError("PPMI file " + path.string() + ": " + e.what());
  }
}

PpmiMatrix build_ppmi(const CoocMatrix& cooc, double alpha) {
  const auto cells = positive_pmi_cells(cooc, alpha);
  std::vector<PpmiEntry> entries;
  entries.reserve(cells.size());
  for (const auto& c : cells) {
    const auto v = static_cast<float>(c.value);
    // A tiny positive double can round to 0 in f32; zeros are never stored.
    if (v > 0.0f) entries.push_back({c.word, c.context, v});
  }
  return PpmiMatrix(cooc.vocab_size(), alpha, std::move(entries));
}

}  // namespace lexvec
