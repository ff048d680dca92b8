// Acceptance suite: one PASS/FAIL/SKIP line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cli.hpp"
#include "lexvec/cooccurrence.hpp"
#include "lexvec/evaluation.hpp"
#include "lexvec/ppmi.hpp"
#include "lexvec/svd.hpp"
#include "lexvec/trainer.hpp"
#include "oracles.hpp"
#include "tempdir.hpp"

using namespace lexvec;

namespace {

enum class Outcome { Pass, Fail, Skip };

struct Verdict {
  Outcome outcome;
  std::string detail;
};

Verdict pass_if(bool ok, std::string detail) { return {ok ? Outcome::Pass : Outcome::Fail, std::move(detail)}; }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// ---------------------------------------------------------------------------

Verdict ppmi_oracle() {
  std::mt19937_64 gen(1001);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  std::size_t cells = 0, support_mismatch = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(gen() % 99);
    const double density = 0.02 + 0.3 * u(gen);
    oracle::Dense dense(n, std::vector<long double>(n, 0.0L));
    std::vector<CoocEntry> entries;
    for (std::uint32_t i = 0; i < n; ++i) {
      for (std::uint32_t j = 0; j < n; ++j) {
        if (u(gen) < density) {
          const auto c = 1 + gen() % (trial % 2 ? 10 : 100000);
          dense[i][j] = static_cast<long double>(c);
          entries.push_back({i, j, c});
        }
      }
    }
    if (entries.empty()) entries.push_back({0, 0, 1}), dense[0][0] = 1;
    const CoocMatrix cooc(n, 2, entries);
    for (double alpha : {1.0, 0.75}) {
      const auto expected = oracle::dense_pmi(dense, alpha);
      const auto got = positive_pmi_cells(cooc, alpha);
      const auto stored = build_ppmi(cooc, alpha);
      std::map<std::pair<WordId, WordId>, double> by_cell;
      for (const auto& c : got) by_cell[{c.word, c.context}] = c.value;
      for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j < n; ++j) {
          const long double want = std::isnan(expected[i][j]) ? 0.0L : std::max(expected[i][j], 0.0L);
          const auto it = by_cell.find({i, j});
          const double have = it == by_cell.end() ? 0.0 : it->second;
          worst = std::max(worst, static_cast<double>(std::fabs(have - want)));
          ++cells;
          if (std::fabs(stored.lookup(i, j) - static_cast<double>(want)) > 1e-6 * std::max(1.0L, want)) {
            ++support_mismatch;
          }
        }
      }
    }
  }
  return pass_if(worst <= 1e-12 && support_mismatch == 0,
                 "100 matrices x alpha {1, 0.75}, " + std::to_string(cells) + " cells, max |err| " + fmt(worst) +
                     ", f32 mismatches " + std::to_string(support_mismatch));
}

Verdict counting_consistency() {
  std::mt19937_64 gen(1002);
  std::size_t failures = 0, pairs = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::uint32_t vocab = 1 + static_cast<std::uint32_t>(gen() % 60);
    const std::uint32_t win = 1 + static_cast<std::uint32_t>(gen() % 6);
    const auto raw = oracle::random_sentences(gen, 1 + gen() % 60, vocab, 40);
    const std::vector<Sentence> stream(raw.begin(), raw.end());
    const auto m = count_cooccurrences(stream, win, vocab);
    const auto expected = oracle::count_pairs(raw, win);

    bool ok = m.entries().size() == expected.size();
    std::size_t i = 0;
    for (const auto& [key, count] : expected) {
      if (!ok) break;
      const auto& e = m.entries()[i++];
      ok = e.word == key.first && e.context == key.second && e.count == count;
    }
    std::uint64_t total = 0;
    std::vector<std::uint64_t> rows(vocab, 0), cols(vocab, 0);
    for (const auto& e : m.entries()) {
      ok = ok && m.count(e.context, e.word) == e.count;
      rows[e.word] += e.count;
      cols[e.context] += e.count;
      total += e.count;
    }
    ok = ok && total == m.grand_total();
    for (WordId w = 0; w < vocab; ++w) ok = ok && rows[w] == m.row_marginal(w) && cols[w] == m.col_marginal(w);
    failures += !ok;
    pairs += expected.size();
  }
  return pass_if(failures == 0, "50 corpora, " + std::to_string(pairs) + " distinct cells, " + std::to_string(failures) +
                                    " mismatching corpora");
}

Verdict gradient_check() {
  std::mt19937_64 gen(1003);
  std::normal_distribution<double> n(0.0, 1.0);
  const double h = 1e-6;
  double worst = 0.0;
  auto rel = [](const std::vector<double>& a, const std::vector<double>& b) {
    double diff = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      diff += (a[i] - b[i]) * (a[i] - b[i]);
      na += a[i] * a[i];
      nb += b[i] * b[i];
    }
    return std::sqrt(diff) / std::max({std::sqrt(na), std::sqrt(nb), 1e-12});
  };
  for (int t = 0; t < 1000; ++t) {
    const std::size_t d = 1 + gen() % 50;
    std::vector<double> w(d), c(d), gw(d), gc(d), fw(d), fc(d);
    for (auto& x : w) x = n(gen);
    for (auto& x : c) x = n(gen);
    const double target = 2.0 * std::abs(n(gen));

    // Positive term.
    pair_gradient<double>(w, c, target, gw, gc);
    for (std::size_t i = 0; i < d; ++i) {
      auto wp = w, wm = w, cp = c, cm = c;
      wp[i] += h, wm[i] -= h, cp[i] += h, cm[i] -= h;
      fw[i] = (pair_loss<double>(wp, c, target) - pair_loss<double>(wm, c, target)) / (2 * h);
      fc[i] = (pair_loss<double>(w, cp, target) - pair_loss<double>(w, cm, target)) / (2 * h);
    }
    worst = std::max({worst, rel(gw, fw), rel(gc, fc)});

    // Noise terms for k fixed draws.
    const std::size_t k = 1 + gen() % 5;
    std::vector<std::vector<double>> rows(k, std::vector<double>(d)), grads(k, std::vector<double>(d));
    std::vector<double> targets(k);
    for (auto& r : rows) {
      for (auto& x : r) x = n(gen);
    }
    for (auto& x : targets) x = gen() % 2 ? 0.0 : std::abs(n(gen));
    std::vector<std::span<const double>> views(rows.begin(), rows.end());
    std::vector<std::span<double>> gviews(grads.begin(), grads.end());
    noise_gradient<double>(w, views, targets, gw, gviews);
    auto loss = [&](const std::vector<double>& ww, std::size_t row, const std::vector<double>* replaced) {
      std::vector<std::span<const double>> v(rows.begin(), rows.end());
      if (replaced) v[row] = *replaced;
      return noise_loss<double>(ww, v, targets);
    };
    for (std::size_t i = 0; i < d; ++i) {
      auto wp = w, wm = w;
      wp[i] += h, wm[i] -= h;
      fw[i] = (loss(wp, 0, nullptr) - loss(wm, 0, nullptr)) / (2 * h);
    }
    worst = std::max(worst, rel(gw, fw));
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t i = 0; i < d; ++i) {
        auto rp = rows[j], rm = rows[j];
        rp[i] += h, rm[i] -= h;
        fc[i] = (loss(w, j, &rp) - loss(w, j, &rm)) / (2 * h);
      }
      worst = std::max(worst, rel(grads[j], fc));
    }
  }
  return pass_if(worst < 1e-5, "1000 triples, positive and noise terms, max relative error " + fmt(worst));
}

double mean_cosine(const EmbeddingPair& p, const std::vector<WordId>& a, const std::vector<WordId>& b, bool same) {
  double sum = 0;
  std::size_t n = 0;
  for (WordId x : a) {
    for (WordId y : b) {
      if (same && x >= y) continue;
      sum += cosine(p.target(x), p.target(y));
      ++n;
    }
  }
  return sum / static_cast<double>(n);
}

Verdict training_loss_decrease() {
  const std::filesystem::path corpus = std::filesystem::path(LEXVEC_DATA_DIR) / "two_cluster.txt";
  const auto vocab = build_vocabulary(corpus, 1);
  const SubsampleConfig none{.threshold_t = 1.0};
  const auto stream = subsampled_stream(corpus, vocab, none);
  const auto ppmi = build_ppmi(count_cooccurrences(stream, 2, vocab.size()), 0.75);
  const auto noise = build_noise(vocab, 0.75);

  // Cluster membership from the bundled group file.
  std::vector<WordId> animals, machines;
  {
    std::ifstream groups(std::filesystem::path(LEXVEC_DATA_DIR) / "two_cluster_groups.txt");
    std::string line;
    while (std::getline(groups, line)) {
      std::istringstream in(line);
      std::string tag, word;
      in >> tag;
      while (in >> word) {
        if (auto id = vocab.find(word)) (tag == "a" ? animals : machines).push_back(*id);
      }
    }
  }
  if (animals.size() < 2 || machines.size() < 2) return {Outcome::Fail, "cluster file does not match the corpus"};

  std::string detail;
  bool ok = true;
  for (auto variant : {Variant::MiniBatch, Variant::Stochastic}) {
    TrainConfig cfg;
    cfg.variant = variant;
    cfg.dim = 25;
    cfg.seed = 2016;
    InMemorySource src(stream);
    std::map<int, double> loss;
    TrainHooks hooks;
    bool finite = true;
    hooks.on_epoch_end = [&](int epoch, const EmbeddingPair& p) {
      finite = finite && p.all_finite();
      loss[epoch] = estimate_global_loss(p, ppmi, noise, src, cfg, /*loss_seed=*/77);
    };
    const auto pair = train(ppmi, noise, src, cfg, nullptr, hooks);
    const double intra = (mean_cosine(pair, animals, animals, true) + mean_cosine(pair, machines, machines, true)) / 2;
    const double inter = mean_cosine(pair, animals, machines, false);
    const bool good = finite && loss.at(5) < loss.at(1) && intra - inter >= 0.2;
    ok = ok && good;
    detail += std::string(detail.empty() ? "" : "; ") + (variant == Variant::MiniBatch ? "MB" : "St") + " loss " +
              fmt(loss.at(1)) + " -> " + fmt(loss.at(5)) + ", cosine gap " + fmt(intra - inter);
  }
  return pass_if(ok, detail);
}

Verdict negative_sample_accounting() {
  // Long sentences keep boundary windows (which have fewer than 2 win contexts) rare.
  std::mt19937_64 gen(1005);
  const std::uint32_t vocab_size = 50;
  std::vector<Sentence> sentences(200, Sentence(300));
  for (auto& s : sentences) {
    for (auto& w : s) w = static_cast<WordId>(gen() % vocab_size);
  }
  std::vector<std::uint64_t> counts(vocab_size, 0);
  for (const auto& s : sentences) {
    for (WordId w : s) ++counts[w];
  }
  const auto ppmi = build_ppmi(count_cooccurrences(sentences, 2, vocab_size), 0.75);
  const NoiseDistribution noise(counts, 0.75);
  TrainStats mb, st;
  TrainConfig cfg;
  cfg.dim = 10;
  cfg.epochs = 1;
  cfg.negatives = 5;
  InMemorySource src(sentences);
  cfg.variant = Variant::MiniBatch;
  train(ppmi, noise, src, cfg, &mb);
  cfg.variant = Variant::Stochastic;
  train(ppmi, noise, src, cfg, &st);
  const double ratio = static_cast<double>(mb.noise_draws) / static_cast<double>(st.noise_draws);
  return pass_if(std::fabs(ratio - 4.0) <= 0.02 * 4.0,
                 "MB " + std::to_string(mb.noise_draws) + " vs St " + std::to_string(st.noise_draws) +
                     " noise draws, ratio " + fmt(ratio) + " (target 4 +- 2%)");
}

Verdict svd_oracle() {
  std::mt19937_64 gen(1006);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> g(0.0, 1.0);
  double worst_sigma = 0.0, worst_margin = std::numeric_limits<double>::infinity(), worst_tail = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const double density = 0.05 + 0.25 * u(gen);
    std::vector<PpmiEntry> entries;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(50, 50);
    for (WordId i = 0; i < 50; ++i) {
      for (WordId j = 0; j < 50; ++j) {
        if (u(gen) < density) {
          const auto v = static_cast<float>(0.01 + 5.0 * u(gen));
          entries.push_back({i, j, v});
          a(i, j) = v;
        }
      }
    }
    const PpmiMatrix m(50, 0.75, entries);
    const auto f = truncated_svd(m, 10, trial);

    oracle::Dense dense(50, std::vector<long double>(50));
    for (int i = 0; i < 50; ++i) {
      for (int j = 0; j < 50; ++j) dense[i][j] = a(i, j);
    }
    const auto sv = oracle::singular_values(dense);
    for (int j = 0; j < 10; ++j) {
      worst_sigma = std::max(worst_sigma, std::fabs(f.sigma(j) - static_cast<double>(sv[j])) / static_cast<double>(sv[j]));
    }

    const auto [w, wt] = weighted_embeddings(f);
    const double ours = (a - w * wt.transpose()).norm();
    long double tail = 0;
    for (std::size_t j = 10; j < sv.size(); ++j) tail += sv[j] * sv[j];
    worst_tail = std::max(worst_tail, std::fabs(ours - static_cast<double>(std::sqrt(tail))));

    for (int c = 0; c < 100; ++c) {
      Eigen::MatrixXd x(50, 10), y(50, 10);
      if (c % 2 == 0) {
        // Unrelated random rank-10 matrix at the data's scale.
        for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = g(gen), y.data()[i] = g(gen);
        const double scale = std::sqrt(a.norm() / (x * y.transpose()).norm());
        x *= scale;
        y *= scale;
      } else {
        // A perturbation of the optimum: the hardest kind of competitor.
        const double eps = std::pow(10.0, -1.0 - 4.0 * u(gen));
        x = w, y = wt;
        for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] += eps * g(gen), y.data()[i] += eps * g(gen);
      }
      const double theirs = (a - x * y.transpose()).norm();
      worst_margin = std::min(worst_margin, theirs + 1e-8 - ours);
    }
  }
  return pass_if(worst_sigma <= 1e-6 && worst_margin >= 0.0,
                 "20 matrices, max sigma rel err " + fmt(worst_sigma) + ", Eckart-Young slack " + fmt(worst_margin) +
                     " over 2000 competitors, |residual - tail| " + fmt(worst_tail));
}

Embeddings named(const std::vector<std::vector<float>>& rows) {
  std::vector<std::string> words;
  std::vector<float> data;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    words.push_back("w" + std::to_string(i));
    data.insert(data.end(), rows[i].begin(), rows[i].end());
  }
  return Embeddings(std::move(words), rows[0].size(), std::move(data));
}

Verdict evaluation_oracle() {
  std::mt19937_64 gen(1007);
  double worst_rho = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + gen() % 200;
    const std::uint64_t levels = 2 + gen() % 12;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = static_cast<double>(gen() % levels) * 0.5;
      y[i] = static_cast<double>(gen() % levels) - 3.0;
    }
    x[0] = -1, x[1] = 100, y[0] = -10, y[1] = 10;  // never constant
    worst_rho = std::max(worst_rho, static_cast<double>(std::fabs(spearman(x, y) - oracle::spearman(x, y))));
  }

  std::normal_distribution<float> g(0.0f, 1.0f);
  std::size_t questions = 0, mismatches = 0, excluded_wins = 0;
  for (int fixture = 0; fixture < 50; ++fixture) {
    std::vector<std::vector<float>> rows(30, std::vector<float>(2 + gen() % 15));
    for (auto& r : rows) {
      for (auto& v : r) v = g(gen);
    }
    const UnitEmbeddings emb(named(rows));
    for (int q = 0; q < 40; ++q) {
      std::size_t a = gen() % 30, s = gen() % 30, b = gen() % 30;
      if (q % 4 == 0) s = a;  // offset cancels: b itself would win without the exclusion rule
      const auto [add, gap_add] = oracle::cosadd(rows, a, s, b);
      const auto [mul, gap_mul] = oracle::cosmul(rows, a, s, b);
      const auto got_add = analogy_3cosadd(emb, static_cast<WordId>(a), static_cast<WordId>(s), static_cast<WordId>(b));
      const auto got_mul = analogy_3cosmul(emb, static_cast<WordId>(a), static_cast<WordId>(s), static_cast<WordId>(b));
      mismatches += got_add != add;
      mismatches += got_mul != mul;
      excluded_wins += got_add == a || got_add == s || got_add == b || got_mul == a || got_mul == s || got_mul == b;
      questions += 2;
    }
  }
  return pass_if(worst_rho <= 1e-12 && mismatches == 0 && excluded_wins == 0,
                 "100 tied fixtures max |rho err| " + fmt(worst_rho) + "; " + std::to_string(questions) +
                     " analogy answers over 50 fixtures, " + std::to_string(mismatches) + " mismatches, " +
                     std::to_string(excluded_wins) + " query words returned");
}

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "lexvec");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = lexvec::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  if (status != 0) std::cerr << err.str();
  return status;
}

Verdict end_to_end_determinism() {
  const std::string corpus = std::string(LEXVEC_DATA_DIR) + "/toy_corpus.txt";
  testing::TempDir dir;
  auto pipeline = [&](const std::string& tag) {
    const auto p = [&](const std::string& name) { return (dir / (tag + name)).string(); };
    return cli({"vocab", "--corpus", corpus, "--vocab", p("vocab.txt"), "--min-count", "5"}) == 0 &&
           cli({"cooc", "--corpus", corpus, "--vocab", p("vocab.txt"), "--cooc", p("cooc.bin"), "--subsample", "1e-3",
                "--seed", "7", "--threads", "1"}) == 0 &&
           cli({"ppmi", "--cooc", p("cooc.bin"), "--ppmi", p("ppmi.bin")}) == 0 &&
           cli({"train", "--corpus", corpus, "--vocab", p("vocab.txt"), "--ppmi", p("ppmi.bin"), "--embeddings",
                p("st.txt"), "--variant", "st", "--ws", "sgns", "--subsample", "1e-3", "--dim", "100", "--seed", "7",
                "--threads", "1"}) == 0 &&
           cli({"train", "--corpus", corpus, "--vocab", p("vocab.txt"), "--ppmi", p("ppmi.bin"), "--embeddings",
                p("mb.txt"), "--variant", "mb", "--output", "w+wt", "--subsample", "1e-3", "--dim", "100", "--seed",
                "7", "--threads", "1"}) == 0 &&
           cli({"svd", "--ppmi", p("ppmi.bin"), "--vocab", p("vocab.txt"), "--embeddings", p("svd.txt"), "--dim", "50",
                "--seed", "7"}) == 0;
  };
  if (!pipeline("a_") || !pipeline("b_")) return {Outcome::Fail, "pipeline exited nonzero"};
  std::size_t same = 0, bytes = 0;
  const std::vector<std::string> files{"vocab.txt", "cooc.bin", "ppmi.bin", "st.txt", "mb.txt", "svd.txt"};
  for (const auto& f : files) {
    const auto a = testing::read_file(dir / ("a_" + f));
    same += !a.empty() && a == testing::read_file(dir / ("b_" + f));
    bytes += a.size();
  }
  return pass_if(same == files.size(), std::to_string(same) + "/" + std::to_string(files.size()) +
                                           " artifacts byte-identical (" + std::to_string(bytes) + " bytes)");
}

Verdict directional_ordering() {
  const char* corpus = std::getenv("LEXVEC_SLOW_CORPUS");
  const char* wsim = std::getenv("LEXVEC_SLOW_WSIM");
  if (!corpus || !wsim) {
    return {Outcome::Skip, "optional; set LEXVEC_SLOW_CORPUS=<20-100 MB corpus> and LEXVEC_SLOW_WSIM=<similarity file>"};
  }
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* t = std::getenv("LEXVEC_SLOW_THREADS")) threads = static_cast<unsigned>(std::stoul(t));

  const auto vocab = build_vocabulary(corpus, 10);
  const SubsampleConfig sub{.threshold_t = 1e-5, .seed = 1};
  const auto cooc = count_corpus(corpus, vocab, sub, 2, threads);
  const auto ppmi = build_ppmi(cooc, 0.75);
  const auto noise = build_noise(vocab, 0.75);
  const auto dataset = load_similarity_dataset(wsim, {.lowercase = true});

  auto score = [&](const std::vector<float>& rows) {
    const Embeddings e({vocab.words().begin(), vocab.words().end()}, 100, rows);
    return eval_similarity(UnitEmbeddings(e), dataset);
  };

  TrainConfig cfg;
  cfg.variant = Variant::Stochastic;
  cfg.window = WindowSamplingConfig::for_mode(WindowMode::Sgns);
  cfg.dim = 100;
  cfg.threads = threads;
  CorpusSource src(corpus, vocab, sub);
  const auto lexvec = score(compose_output(train(ppmi, noise, src, cfg), OutputComposition::W));
  const auto svd = score(compose_output(to_embedding_pair(truncated_svd(ppmi, 100, 1)), OutputComposition::W));
  return pass_if(lexvec.value >= svd.value - 0.01, "LexVec rho " + fmt(lexvec.value) + " vs PPMI-SVD " +
                                                       fmt(svd.value) + " (" + std::to_string(lexvec.evaluated) +
                                                       " pairs, |V|=" + std::to_string(vocab.size()) + ")");
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Verdict()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "ppmi-oracle", 10, ppmi_oracle},
      {2, "counting-consistency", 10, counting_consistency},
      {3, "gradient-check", 5, gradient_check},
      {4, "training-loss-decrease", 60, training_loss_decrease},
      {5, "negative-sample-accounting", 30, negative_sample_accounting},
      {6, "svd-oracle", 30, svd_oracle},
      {7, "evaluation-oracle", 10, evaluation_oracle},
      {8, "end-to-end-determinism", 60, end_to_end_determinism},
      {9, "directional-ordering", 3600, directional_ordering},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {Outcome::Fail, std::string("threw: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (v.outcome == Outcome::Pass && seconds > c.budget_seconds) {
      v = {Outcome::Fail, v.detail + "; over the " + fmt(c.budget_seconds) + " s budget"};
    }
    const char* tag = v.outcome == Outcome::Pass ? "PASS" : v.outcome == Outcome::Fail ? "FAIL" : "SKIP";
    std::printf("%s  %d %-27s %7.2fs  %s\n", tag, c.id, c.name, seconds, v.detail.c_str());
    std::fflush(stdout);
    failed += v.outcome == Outcome::Fail;
  }
  return failed ? 1 : 0;
}
