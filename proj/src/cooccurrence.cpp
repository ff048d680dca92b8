#include "lexvec/cooccurrence.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "lexvec/io.hpp"

namespace lexvec {

namespace {

constexpr char kCoocMagic[5] = "LXCO";
constexpr std::uint32_t kCoocVersion = 1;

constexpr std::uint64_t pack(WordId w, WordId c) { return (static_cast<std::uint64_t>(w) << 32) | c; }

}  // namespace

CoocMatrix::CoocMatrix(std::uint32_t vocab_size, std::uint32_t window, std::vector<CoocEntry> entries)
    : vocab_size_(vocab_size), window_(window), entries_(std::move(entries)) {
  row_marginals_.assign(vocab_size_, 0);
  col_marginals_.assign(vocab_size_, 0);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.word >= vocab_size_ || e.context >= vocab_size_) {
      throw std::invalid_argument("co-occurrence entry id out of range");
    }
    if (e.count == 0) throw std::invalid_argument("co-occurrence entry with zero count");
    if (i > 0 && pack(entries_[i - 1].word, entries_[i - 1].context) >= pack(e.word, e.context)) {
      throw std::invalid_argument("co-occurrence entries not strictly sorted");
    }
    row_marginals_[e.word] += e.count;
    col_marginals_[e.context] += e.count;
    grand_total_ += e.count;
  }
}

std::uint64_t CoocMatrix::count(WordId w, WordId c) const {
  const auto key = pack(w, c);
  auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                             [](const CoocEntry& e, std::uint64_t k) { return pack(e.word, e.context) < k; });
  if (it == entries_.end() || it->word != w || it->context != c) return 0;
  return it->count;
}

void CoocMatrix::save(const std::filesystem::path& path) const {
  write_atomically(path, true, [this](std::ostream& os) {
    write_header(os, kCoocMagic, kCoocVersion);
    le::put<std::uint32_t>(os, vocab_size_);
    le::put<std::uint32_t>(os, window_);
    le::put<std::uint64_t>(os, entries_.size());
    for (const auto& e : entries_) {
      le::put<std::uint32_t>(os, e.word);
      le::put<std::uint32_t>(os, e.context);
      le::put<std::uint64_t>(os, e.count);
    }
  });
}

CoocMatrix CoocMatrix::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open co-occurrence file: " + path.string());
  read_header(in, kCoocMagic, kCoocVersion, "co-occurrence file " + path.string());
  const auto vocab = le::get<std::uint32_t>(in);
  const auto window = le::get<std::uint32_t>(in);
  const auto n = le::get<std::uint64_t>(in);
  std::vector<CoocEntry> entries;
  entries.reserve(std::min<std::uint64_t>(n, 1u << 20));  // n is untrusted until read
  for (std::uint64_t i = 0; i < n; ++i) {
    CoocEntry e;
    e.word = le::get<std::uint32_t>(in);
    e.context = le::get<std::uint32_t>(in);
    e.count = le::get<std::uint64_t>(in);
    entries.push_back(e);
  }
  try {
    return CoocMatrix(vocab, window, std::move(entries));
  } catch (const std::invalid_argument& e) {
    throw FormatError("co-occurrence file " + path.string() + ": " + e.what());
  }
}

void CoocMatrix::save_text(const std::filesystem::path& path, const Vocabulary& vocab) const {
  if (vocab.size() != vocab_size_) throw std::invalid_argument("vocabulary size does not match co-occurrence matrix");
  write_atomically(path, false, [&](std::ostream& os) {
    for (const auto& e : entries_) os << vocab.word(e.word) << '\t' << vocab.word(e.context) << '\t' << e.count << '\n';
  });
}

CoocCounter::CoocCounter(std::uint32_t vocab_size, std::uint32_t window) : vocab_size_(vocab_size), window_(window) {
  if (window == 0) throw std::invalid_argument("window must be >= 1");
}

void CoocCounter::add_sentence(std::span<const WordId> s) {
  const std::size_t n = s.size();
  for (WordId id : s) {
    if (id >= vocab_size_) throw std::out_of_range("word id out of range in stream");
  }
  for (std::size_t i = 0; i < n; ++i) {
    // Count each unordered position pair once, in both directions.
    const std::size_t end = std::min(n, i + window_ + 1);
    for (std::size_t j = i + 1; j < end; ++j) {
      ++cells_[pack(s[i], s[j])];
      ++cells_[pack(s[j], s[i])];
    }
  }
}

void CoocCounter::absorb(const CoocCounter& other) {
  if (other.window_ != window_ || other.vocab_size_ != vocab_size_) {
    throw std::invalid_argument("cannot combine counters with different window or vocabulary size");
  }
  for (const auto& [key, count] : other.cells_) cells_[key] += count;
}

CoocMatrix CoocCounter::finalize() const {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> sorted(cells_.begin(), cells_.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<CoocEntry> entries;
  entries.reserve(sorted.size());
  for (const auto& [key, count] : sorted) {
    entries.push_back({static_cast<WordId>(key >> 32), static_cast<WordId>(key & 0xffffffffu), count});
  }
  return CoocMatrix(vocab_size_, window_, std::move(entries));
}

CoocMatrix count_cooccurrences(std::span<const Sentence> stream, std::uint32_t window, std::uint32_t vocab_size) {
  CoocCounter counter(vocab_size, window);
  for (const auto& s : stream) counter.add_sentence(s);
  return counter.finalize();
}

CoocMatrix count_corpus(const std::filesystem::path& corpus, const Vocabulary& vocab,
                        const SubsampleConfig& subsample, std::uint32_t window, unsigned threads,
                        const ReaderOptions& opts) {
  threads = std::max(1u, threads);
  const auto vocab_size = static_cast<std::uint32_t>(vocab.size());
  Subsampler sampler(vocab, subsample);
  std::vector<CoocCounter> shards(threads, CoocCounter(vocab_size, window));

  constexpr std::size_t kBlock = 1 << 16;
  std::vector<Sentence> block;
  block.reserve(kBlock);
  auto flush = [&] {
    if (threads == 1) {
      for (const auto& s : block) shards[0].add_sentence(s);
    } else {
      std::vector<std::thread> workers;
      for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&, t] {
          for (std::size_t i = t; i < block.size(); i += threads) shards[t].add_sentence(block[i]);
        });
      }
      for (auto& w : workers) w.join();
    }
    block.clear();
  };

  for_each_line(corpus, opts, [&](std::uint64_t index, const std::vector<std::string>& tokens) {
    Sentence s;
    sampler.apply(tokens, 0, index, s);
    if (s.size() > 1) block.push_back(std::move(s));
    if (block.size() == kBlock) flush();
  });
  flush();

  for (unsigned t = 1; t < threads; ++t) shards[0].absorb(shards[t]);
  return shards[0].finalize();
}

CoocMatrix merge(const CoocMatrix& a, const CoocMatrix& b) {
  if (a.window() != b.window()) {
    throw std::invalid_argument("cannot merge co-occurrence matrices with windows " + std::to_string(a.window()) +
                                " and " + std::to_string(b.window()));
  }
  if (a.vocab_size() != b.vocab_size()) throw std::invalid_argument("cannot merge matrices of different sizes");
  std::vector<CoocEntry> out;
  out.reserve(a.entries().size() + b.entries().size());
  auto ia = a.entries().begin(), ea = a.entries().end();
  auto ib = b.entries().begin(), eb = b.entries().end();
  while (ia != ea || ib != eb) {
    if (ib == eb || (ia != ea && pack(ia->word, ia->context) < pack(ib->word, ib->context))) {
      out.push_back(*ia++);
    } else if (ia == ea || pack(ib->word, ib->context) < pack(ia->word, ia->context)) {
      out.push_back(*ib++);
    } else {
      out.push_back({ia->word, ia->context, ia->count + ib->count});
      ++ia;
      ++ib;
    }
  }
  return CoocMatrix(a.vocab_size(), a.window(), std::move(out));
}

}  // namespace lexvec
