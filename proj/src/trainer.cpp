#include "lexvec/trainer.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <stdexcept>
#include <string>
#include <thread>

#include "lexvec/io.hpp"

namespace lexvec {

namespace {

constexpr char kCheckpointMagic[5] = "LXCK";
constexpr std::uint32_t kCheckpointVersion = 1;

void check_sizes(const EmbeddingPair& pair, const PpmiMatrix& ppmi, const NoiseDistribution& noise) {
  if (ppmi.dims() != pair.vocab_size() || noise.size() != pair.vocab_size()) {
    throw std::invalid_argument("vocabulary mismatch: embeddings have " + std::to_string(pair.vocab_size()) +
                                " rows, PPMI has " + std::to_string(ppmi.dims()) + ", noise distribution has " +
                                std::to_string(noise.size()));
  }
  if (pair.dim() == 0) throw std::invalid_argument("embedding dimension must be >= 1");
}

void check_ids(std::span<const WordId> sentence, std::size_t vocab_size) {
  for (WordId id : sentence) {
    if (id >= vocab_size) throw std::invalid_argument("sentence contains word id " + std::to_string(id) +
                                                      " outside a vocabulary of " + std::to_string(vocab_size));
  }
}

/// Per-worker scratch plus the update rules for one sentence.
class SentenceTrainer {
 public:
  SentenceTrainer(EmbeddingPair& pair, const PpmiMatrix& ppmi, const NoiseDistribution& noise, const TrainConfig& cfg,
                  UpdateObserver* observer)
      : pair_(pair), ppmi_(ppmi), noise_(noise), cfg_(cfg), observer_(observer) {}

  /// `progress` is the number of centers already processed before this sentence.
  void run(std::span<const WordId> sentence, std::uint64_t epoch, std::uint64_t index, std::uint64_t progress,
           double total_centers) {
    Rng rng(derive_seed(cfg_.seed, kTrainStream, epoch, index));
    const double lr0 = cfg_.lr_initial;
    const double floor = cfg_.floor();
    const auto k = static_cast<std::size_t>(cfg_.negatives);
    for_each_window(sentence, cfg_.window, rng, scratch_, [&](std::size_t, WordId w, std::span<const WordId> ctx) {
      const double done = std::min(1.0, static_cast<double>(progress++) / total_centers);
      const auto lr = static_cast<float>(lr0 - (lr0 - floor) * done);
      ++stats_.tokens;
      if (ctx.empty()) return;
      ++stats_.windows;
      auto target = pair_.target(w);
      if (cfg_.variant == Variant::Stochastic) {
        for (WordId c : ctx) {
          positive(w, c);
          pair_gradient_step<float>(target, pair_.context(c), ppmi_.find(w, c), lr);
        }
        noise_.sample(rng, k, noise_ids_);
        stats_.noise_draws += k;
        for (WordId n : noise_ids_) {
          if (observer_) observer_->on_noise(w, n);
          pair_gradient_step<float>(target, pair_.context(n), ppmi_.find(w, n), lr);
        }
      } else {
        for (WordId c : ctx) {
          positive(w, c);
          noise_.sample(rng, k, noise_ids_);
          stats_.noise_draws += k;
          rows_.clear();
          targets_.clear();
          rows_.push_back(pair_.context(c));
          targets_.push_back(ppmi_.find(w, c));
          for (WordId n : noise_ids_) {
            if (observer_) observer_->on_noise(w, n);
            rows_.push_back(pair_.context(n));
            targets_.push_back(ppmi_.find(w, n));
          }
          multi_term_step<float>(target, rows_, targets_, lr, scale_, delta_);
        }
      }
    });
  }

  const TrainStats& stats() const { return stats_; }

 private:
  void positive(WordId w, WordId c) {
    ++stats_.positive_updates;
    if (observer_) observer_->on_positive(w, c);
  }

  EmbeddingPair& pair_;
  const PpmiMatrix& ppmi_;
  const NoiseDistribution& noise_;
  const TrainConfig& cfg_;
  UpdateObserver* observer_;
  TrainStats stats_;
  std::vector<WordId> scratch_;
  std::vector<WordId> noise_ids_;
  std::vector<std::span<float>> rows_;
  std::vector<float> targets_;
  std::vector<float> scale_;
  std::vector<float> delta_;
};

void add(TrainStats& into, const TrainStats& s) {
  into.tokens += s.tokens;
  into.windows += s.windows;
  into.positive_updates += s.positive_updates;
  into.noise_draws += s.noise_draws;
}

}  // namespace

EmbeddingPair::EmbeddingPair(std::size_t vocab_size, std::size_t dim)
    : vocab_size_(vocab_size), dim_(dim), w_(vocab_size * dim, 0.0f), wt_(vocab_size * dim, 0.0f) {}

EmbeddingPair EmbeddingPair::random(std::size_t vocab_size, std::size_t dim, std::uint64_t seed) {
  EmbeddingPair p(vocab_size, dim);
  Rng rng(derive_seed(seed, kInitStream, 0));
  const double half = 0.5 / static_cast<double>(dim);
  for (auto& x : p.w_) x = static_cast<float>(rng.uniform(-half, half));
  for (auto& x : p.wt_) x = static_cast<float>(rng.uniform(-half, half));
  return p;
}

bool EmbeddingPair::all_finite() const {
  auto finite = [](float x) { return std::isfinite(x); };
  return std::all_of(w_.begin(), w_.end(), finite) && std::all_of(wt_.begin(), wt_.end(), finite);
}

double pair_loss(const EmbeddingPair& pair, WordId w, WordId c, double target) {
  const double r = static_cast<double>(dot(pair.target(w), pair.context(c))) - target;
  return 0.5 * r * r;
}

void pair_gradient_step(EmbeddingPair& pair, WordId w, WordId c, float target, float lr) {
  pair_gradient_step<float>(pair.target(w), pair.context(c), target, lr);
}

void TrainConfig::validate() const {
  if (negatives < 0) throw std::invalid_argument("--negatives must be >= 0, got " + std::to_string(negatives));
  if (dim == 0) throw std::invalid_argument("--dim must be >= 1");
  if (epochs < 0) throw std::invalid_argument("--epochs must be >= 0, got " + std::to_string(epochs));
  if (!(lr_initial > 0.0)) throw std::invalid_argument("--lr must be > 0");
  if (!(floor() > 0.0 && floor() < lr_initial)) {
    throw std::invalid_argument("learning-rate floor must satisfy 0 < floor < --lr");
  }
  window.validate();
}

InMemorySource::InMemorySource(std::vector<Sentence> sentences) : sentences_(std::move(sentences)) {
  for (const auto& s : sentences_) tokens_ += s.size();
}

void InMemorySource::for_each(std::uint64_t, const std::function<void(std::uint64_t, std::span<const WordId>)>& fn) {
  for (std::size_t i = 0; i < sentences_.size(); ++i) fn(i, sentences_[i]);
}

CorpusSource::CorpusSource(std::filesystem::path corpus, const Vocabulary& vocab, const SubsampleConfig& subsample,
                           ReaderOptions opts)
    : corpus_(std::move(corpus)), sampler_(vocab, subsample), opts_(opts) {}

void CorpusSource::for_each(std::uint64_t epoch,
                            const std::function<void(std::uint64_t, std::span<const WordId>)>& fn) {
  Sentence s;
  for_each_line(corpus_, opts_, [&](std::uint64_t index, const std::vector<std::string>& tokens) {
    sampler_.apply(tokens, epoch, index, s);
    fn(index, s);
  });
}

TrainStats train_into(EmbeddingPair& pair, const PpmiMatrix& ppmi, const NoiseDistribution& noise,
                      SentenceSource& source, const TrainConfig& cfg, const TrainHooks& hooks) {
  cfg.validate();
  check_sizes(pair, ppmi, noise);
  const double total_centers =
      std::max(1.0, static_cast<double>(cfg.epochs) * source.expected_tokens_per_epoch());
  const unsigned threads = std::max(1u, cfg.threads);
  TrainStats stats;
  std::uint64_t progress = 0;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    if (threads == 1) {
      SentenceTrainer worker(pair, ppmi, noise, cfg, hooks.observer);
      source.for_each(epoch, [&](std::uint64_t index, std::span<const WordId> sentence) {
        check_ids(sentence, pair.vocab_size());
        worker.run(sentence, epoch, index, progress, total_centers);
        progress += sentence.size();
      });
      add(stats, worker.stats());
    } else {
      // Lock-free shared updates: workers race on W and W~ rows.
      std::vector<SentenceTrainer> workers;
      workers.reserve(threads);
      for (unsigned t = 0; t < threads; ++t) workers.emplace_back(pair, ppmi, noise, cfg, nullptr);
      std::atomic<std::uint64_t> shared_progress{progress};
      std::vector<std::pair<std::uint64_t, Sentence>> block;
      constexpr std::size_t kBlock = 1 << 14;
      auto flush = [&] {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
          pool.emplace_back([&, t] {
            for (std::size_t i = t; i < block.size(); i += threads) {
              const auto& [index, sentence] = block[i];
              const auto at = shared_progress.fetch_add(sentence.size(), std::memory_order_relaxed);
              workers[t].run(sentence, epoch, index, at, total_centers);
            }
          });
        }
        for (auto& th : pool) th.join();
        block.clear();
      };
      source.for_each(epoch, [&](std::uint64_t index, std::span<const WordId> sentence) {
        check_ids(sentence, pair.vocab_size());
        block.emplace_back(index, Sentence(sentence.begin(), sentence.end()));
        if (block.size() == kBlock) flush();
      });
      flush();
      progress = shared_progress.load();
      for (const auto& w : workers) add(stats, w.stats());
    }
    if (hooks.on_epoch_end) hooks.on_epoch_end(epoch + 1, pair);
  }
  return stats;
}

EmbeddingPair train(const PpmiMatrix& ppmi, const NoiseDistribution& noise, SentenceSource& source,
                    const TrainConfig& cfg, TrainStats* stats, const TrainHooks& hooks) {
  cfg.validate();
  EmbeddingPair pair = EmbeddingPair::random(ppmi.dims(), cfg.dim, cfg.seed);
  const TrainStats s = train_into(pair, ppmi, noise, source, cfg, hooks);
  if (stats) *stats = s;
  return pair;
}

EmbeddingPair train_minibatch(const PpmiMatrix& ppmi, const NoiseDistribution& noise, SentenceSource& source,
                              TrainConfig cfg) {
  cfg.variant = Variant::MiniBatch;
  return train(ppmi, noise, source, cfg);
}

EmbeddingPair train_stochastic(const PpmiMatrix& ppmi, const NoiseDistribution& noise, SentenceSource& source,
                               TrainConfig cfg) {
  cfg.variant = Variant::Stochastic;
  return train(ppmi, noise, source, cfg);
}

double estimate_global_loss(const EmbeddingPair& pair, const PpmiMatrix& ppmi, const NoiseDistribution& noise,
                            SentenceSource& source, const TrainConfig& cfg, std::uint64_t loss_seed,
                            std::uint64_t epoch) {
  check_sizes(pair, ppmi, noise);
  const auto k = static_cast<std::size_t>(std::max(0, cfg.negatives));
  double total = 0.0;
  std::vector<WordId> scratch;
  std::vector<WordId> drawn;
  auto term = [&](WordId w, WordId c) { return pair_loss(pair, w, c, ppmi.find(w, c)); };
  source.for_each(epoch, [&](std::uint64_t index, std::span<const WordId> sentence) {
    check_ids(sentence, pair.vocab_size());
    Rng rng(derive_seed(loss_seed, kLossStream, epoch, index));
    for_each_window(sentence, cfg.window, rng, scratch, [&](std::size_t, WordId w, std::span<const WordId> ctx) {
      if (ctx.empty()) return;
      for (WordId c : ctx) {
        total += term(w, c);
        if (cfg.variant == Variant::MiniBatch) {
          noise.sample(rng, k, drawn);
          for (WordId n : drawn) total += term(w, n);
        }
      }
      if (cfg.variant == Variant::Stochastic) {
        noise.sample(rng, k, drawn);
        for (WordId n : drawn) total += term(w, n);
      }
    });
  });
  return total;
}

std::vector<float> compose_output(const EmbeddingPair& pair, OutputComposition composition) {
  std::vector<float> out(pair.targets().begin(), pair.targets().end());
  if (composition == OutputComposition::WPlusWTilde) {
    const auto ctx = pair.contexts();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += ctx[i];
  }
  return out;
}

void save_checkpoint(const std::filesystem::path& path, const EmbeddingPair& pair, Variant variant,
                     std::uint32_t epoch) {
  write_atomically(path, true, [&](std::ostream& os) {
    write_header(os, kCheckpointMagic, kCheckpointVersion);
    le::put<std::uint32_t>(os, static_cast<std::uint32_t>(pair.vocab_size()));
    le::put<std::uint32_t>(os, static_cast<std::uint32_t>(pair.dim()));
    le::put<std::uint32_t>(os, static_cast<std::uint32_t>(variant));
    le::put<std::uint32_t>(os, epoch);
    for (float x : pair.targets()) le::put<float>(os, x);
    for (float x : pair.contexts()) le::put<float>(os, x);
  });
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open checkpoint: " + path.string());
  read_header(in, kCheckpointMagic, kCheckpointVersion, "checkpoint " + path.string());
  const auto vocab = le::get<std::uint32_t>(in);
  const auto dim = le::get<std::uint32_t>(in);
  const auto variant = le::get<std::uint32_t>(in);
  const auto epoch = le::get<std::uint32_t>(in);
  if (variant > 1) throw FormatError("checkpoint " + path.string() + ": unknown variant " + std::to_string(variant));
  const auto expected = 24 + 8 * static_cast<std::uintmax_t>(vocab) * dim;
  if (std::filesystem::file_size(path) != expected) {
    throw FormatError("checkpoint " + path.string() + ": size does not match its " + std::to_string(vocab) + " x " +
                      std::to_string(dim) + " header");
  }
  Checkpoint ck{EmbeddingPair(vocab, dim), static_cast<Variant>(variant), epoch};
  for (auto& x : ck.pair.targets()) x = le::get<float>(in);
  for (auto& x : ck.pair.contexts()) x = le::get<float>(in);
  return ck;
}

}  // namespace lexvec
