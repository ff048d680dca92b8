#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "lexvec/cooccurrence.hpp"
#include "lexvec/corpus.hpp"
#include "lexvec/evaluation.hpp"
#include "lexvec/io.hpp"
#include "lexvec/ppmi.hpp"
#include "lexvec/sampling.hpp"
#include "lexvec/svd.hpp"
#include "lexvec/trainer.hpp"

namespace lexvec::cli {

namespace {

namespace fs = std::filesystem;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("LEXVEC_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("LEXVEC_SEED is not an unsigned integer: ") + env);
    }
  }
  return 1;
}

void require_file(const fs::path& p, const std::string& flag) {
  if (!fs::is_regular_file(p)) throw std::invalid_argument(flag + ": no such file: " + p.string());
}

struct VocabArgs {
  fs::path corpus, vocab;
  std::uint64_t min_count = 100;
  bool normalize = false;
};

struct CoocArgs {
  fs::path corpus, vocab, cooc, text;
  std::uint32_t window = 2;
  double subsample = 1e-5;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  bool normalize = false;
};

struct PpmiArgs {
  fs::path cooc, ppmi;
  double alpha = 0.75;
};

struct TrainArgs {
  fs::path corpus, vocab, ppmi, embeddings, checkpoint;
  std::string variant = "st";
  std::string window_sampling = "ppmi";
  std::string output = "w";
  std::size_t dim = 300;
  int negatives = 5;
  int epochs = 5;
  std::uint32_t window = 0;  // 0: mode default
  double lr = 0.025;
  double subsample = 1e-5;
  double noise_power = 0.75;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  bool normalize = false;
};

struct SvdArgs {
  fs::path ppmi, vocab, embeddings;
  std::string output = "w";
  std::size_t dim = 300;
  double p = 0.5;
  std::size_t oversample = 10;
  std::size_t power_iterations = 7;
  std::uint64_t seed = 1;
};

struct EvalArgs {
  fs::path embeddings, csv;
  std::vector<fs::path> datasets;
  std::string method = "both";
  bool lowercase = false;
};

std::string seconds_since(std::chrono::steady_clock::time_point start) {
  const auto s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << s << "s";
  return os.str();
}

void write_embeddings(const fs::path& path, const Vocabulary& vocab, const EmbeddingPair& pair,
                      OutputComposition composition) {
  Embeddings e({vocab.words().begin(), vocab.words().end()}, pair.dim(), compose_output(pair, composition));
  e.save_word2vec(path);
}

int cmd_vocab(const VocabArgs& a, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  require_file(a.corpus, "--corpus");
  const auto vocab = build_vocabulary(a.corpus, a.min_count, {a.normalize});
  vocab.save(a.vocab);
  out << "vocab: " << vocab.size() << " words (min_count " << a.min_count << ") from " << vocab.total_tokens()
      << " tokens -> " << a.vocab.string() << " [" << seconds_since(start) << "]\n";
  return 0;
}

int cmd_cooc(const CoocArgs& a, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  require_file(a.corpus, "--corpus");
  require_file(a.vocab, "--vocab");
  const auto vocab = Vocabulary::load(a.vocab);
  const SubsampleConfig sub{a.subsample, a.seed};
  sub.validate();
  const auto cooc = count_corpus(a.corpus, vocab, sub, a.window, a.threads, {a.normalize});
  cooc.save(a.cooc);
  if (!a.text.empty()) cooc.save_text(a.text, vocab);
  out << "cooc: " << cooc.entries().size() << " nonzero cells, M** = " << cooc.grand_total() << ", window "
      << a.window << " -> " << a.cooc.string() << " [" << seconds_since(start) << "]\n";
  return 0;
}

int cmd_ppmi(const PpmiArgs& a, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  require_file(a.cooc, "--cooc");
  const auto cooc = CoocMatrix::load(a.cooc);
  const auto ppmi = build_ppmi(cooc, a.alpha);
  ppmi.save(a.ppmi);
  out << "ppmi: " << ppmi.nonzeros() << " positive cells of " << cooc.entries().size() << ", alpha " << a.alpha
      << " -> " << a.ppmi.string() << " [" << seconds_since(start) << "]\n";
  return 0;
}

OutputComposition parse_output(const std::string& s) {
  return s == "w+wt" ? OutputComposition::WPlusWTilde : OutputComposition::W;
}

int cmd_train(const TrainArgs& a, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  require_file(a.corpus, "--corpus");
  require_file(a.vocab, "--vocab");
  require_file(a.ppmi, "--ppmi");

  TrainConfig cfg;
  cfg.variant = a.variant == "mb" ? Variant::MiniBatch : Variant::Stochastic;
  cfg.window = WindowSamplingConfig::for_mode(a.window_sampling == "sgns" ? WindowMode::Sgns : WindowMode::Ppmi);
  if (a.window > 0) cfg.window.win = a.window;
  cfg.negatives = a.negatives;
  cfg.dim = a.dim;
  cfg.epochs = a.epochs;
  cfg.lr_initial = a.lr;
  cfg.seed = a.seed;
  cfg.output = parse_output(a.output);
  cfg.threads = a.threads;
  cfg.validate();

  const auto vocab = Vocabulary::load(a.vocab);
  const auto ppmi = PpmiMatrix::load(a.ppmi);
  if (ppmi.dims() != vocab.size()) {
    throw std::invalid_argument("--ppmi has " + std::to_string(ppmi.dims()) + " rows but --vocab has " +
                                std::to_string(vocab.size()) + " words");
  }
  const auto noise = build_noise(vocab, a.noise_power);
  CorpusSource source(a.corpus, vocab, SubsampleConfig{a.subsample, a.seed}, {a.normalize});

  TrainHooks hooks;
  if (!a.checkpoint.empty()) {
    hooks.on_epoch_end = [&](int epoch, const EmbeddingPair& pair) {
      save_checkpoint(a.checkpoint, pair, cfg.variant, static_cast<std::uint32_t>(epoch));
    };
  }
  TrainStats stats;
  const auto pair = train(ppmi, noise, source, cfg, &stats, hooks);
  if (!pair.all_finite()) throw std::runtime_error("training diverged: non-finite embedding entries");
  write_embeddings(a.embeddings, vocab, pair, cfg.output);
  out << "train: " << (cfg.variant == Variant::MiniBatch ? "mb" : "st") << " ws=" << a.window_sampling
      << " win=" << cfg.window.win << " d=" << cfg.dim << " k=" << cfg.negatives << " epochs=" << cfg.epochs << ", "
      << stats.positive_updates << " pair updates, " << stats.noise_draws << " noise draws -> "
      << a.embeddings.string() << " [" << seconds_since(start) << "]\n";
  return 0;
}

int cmd_svd(const SvdArgs& a, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  require_file(a.ppmi, "--ppmi");
  require_file(a.vocab, "--vocab");
  const auto vocab = Vocabulary::load(a.vocab);
  const auto ppmi = PpmiMatrix::load(a.ppmi);
  if (ppmi.dims() != vocab.size()) {
    throw std::invalid_argument("--ppmi has " + std::to_string(ppmi.dims()) + " rows but --vocab has " +
                                std::to_string(vocab.size()) + " words");
  }
  if (a.dim > vocab.size()) {
    throw std::invalid_argument("--dim " + std::to_string(a.dim) + " exceeds vocabulary size " +
                                std::to_string(vocab.size()));
  }
  SvdOptions opts{a.oversample, a.power_iterations, a.p};
  const auto factors = truncated_svd(ppmi, a.dim, a.seed, opts);
  write_embeddings(a.embeddings, vocab, to_embedding_pair(factors), parse_output(a.output));
  out << "svd: rank " << a.dim << ", p=" << a.p << ", sigma_1=" << factors.sigma(0) << " -> "
      << a.embeddings.string() << " [" << seconds_since(start) << "]\n";
  return 0;
}

int report(const std::vector<EvalReport>& reports, const EvalArgs& a, std::ostream& out) {
  out << format_report_table(reports);
  if (!a.csv.empty()) {
    const auto csv = format_report_csv(reports);
    write_atomically(a.csv, false, [&](std::ostream& os) { os << csv; });
  }
  return 0;
}

int cmd_eval_sim(const EvalArgs& a, std::ostream& out) {
  require_file(a.embeddings, "--embeddings");
  for (const auto& d : a.datasets) require_file(d, "dataset");
  const UnitEmbeddings emb(Embeddings::load_word2vec(a.embeddings));
  std::vector<EvalReport> reports;
  for (const auto& d : a.datasets) reports.push_back(eval_similarity(emb, load_similarity_dataset(d, {a.lowercase})));
  return report(reports, a, out);
}

int cmd_eval_analogy(const EvalArgs& a, std::ostream& out) {
  require_file(a.embeddings, "--embeddings");
  for (const auto& d : a.datasets) require_file(d, "dataset");
  const UnitEmbeddings emb(Embeddings::load_word2vec(a.embeddings));
  std::vector<EvalReport> reports;
  for (const auto& d : a.datasets) {
    const auto ds = load_analogy_dataset(d, {a.lowercase});
    if (a.method != "mul") reports.push_back(eval_analogy(emb, ds, AnalogyMethod::CosAdd));
    if (a.method != "add") reports.push_back(eval_analogy(emb, ds, AnalogyMethod::CosMul));
  }
  return report(reports, a, out);
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Splices `key=value` lines from every `--config FILE` into the argument list
/// right after the subcommand, so flags given on the command line come later
/// and win. `key` alone (or `key=true`) becomes a bare flag.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::vector<std::string> injected;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string file;
    if (args[i] == "--config" && i + 1 < args.size()) {
      file = args[++i];
    } else if (args[i].starts_with("--config=")) {
      file = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
      continue;
    }
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("--config: cannot open " + file);
    std::string line;
    while (std::getline(in, line)) {
      line = trim(line);
      if (line.empty() || line[0] == '#' || line[0] == ';' || line[0] == '[') continue;
      const auto eq = line.find('=');
      const std::string key = trim(line.substr(0, eq));
      std::string value = eq == std::string::npos ? "true" : trim(line.substr(eq + 1));
      if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
      if (key.empty()) throw std::invalid_argument("--config: malformed line '" + line + "' in " + file);
      const std::string flag = key.starts_with("--") ? key : "--" + key;
      if (value == "true") {
        injected.push_back(flag);
      } else if (value != "false") {
        injected.push_back(flag);
        injected.push_back(value);
      }
    }
  }
  // rest[0] is the program name, rest[1] the subcommand.
  if (!injected.empty() && rest.size() >= 2) rest.insert(rest.begin() + 2, injected.begin(), injected.end());
  return rest;
}

CLI::App* subcommand(CLI::App& app, const std::string& name, const std::string& description) {
  auto* sub = app.add_subcommand(name, description);
  // Expanded before parsing; declared so it shows up in --help.
  sub->add_option("--config", "File of key=value flags; command-line flags win");
  return sub;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"LexVec: word embeddings by weighted stochastic factorization of the PPMI matrix", "lexvec"};
  app.option_defaults()->always_capture_default()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  try {
    seed = default_seed();
  } catch (const std::exception& e) {
    err << "lexvec: error: " << e.what() << '\n';
    return 2;
  }

  VocabArgs va;
  auto* vocab = subcommand(app, "vocab", "Count words and write the vocabulary file");
  vocab->add_option("--corpus", va.corpus, "Tokenized corpus, one sentence per line")->required();
  vocab->add_option("--vocab", va.vocab, "Output vocabulary file")->required();
  vocab->add_option("--min-count", va.min_count, "Drop words seen fewer times")->check(CLI::PositiveNumber);
  vocab->add_flag("--normalize", va.normalize, "Lowercase and strip punctuation");

  CoocArgs ca;
  ca.seed = seed;
  auto* cooc = subcommand(app, "cooc", "Count windowed co-occurrences over the subsampled corpus");
  cooc->add_option("--corpus", ca.corpus, "Tokenized corpus")->required();
  cooc->add_option("--vocab", ca.vocab, "Vocabulary file")->required();
  cooc->add_option("--cooc", ca.cooc, "Output co-occurrence file")->required();
  cooc->add_option("--window", ca.window, "Symmetric window size")->check(CLI::PositiveNumber);
  cooc->add_option("--subsample", ca.subsample, "Subsampling threshold t")->check(CLI::Range(1e-300, 1.0));
  cooc->add_option("--seed", ca.seed, "Random seed (falls back to LEXVEC_SEED)");
  cooc->add_option("--threads", ca.threads, "Counting workers")->check(CLI::PositiveNumber);
  cooc->add_option("--text", ca.text, "Also write a w<TAB>c<TAB>count text export");
  cooc->add_flag("--normalize", ca.normalize, "Lowercase and strip punctuation");

  PpmiArgs pa;
  auto* ppmi = subcommand(app, "ppmi", "Build the smoothed PPMI matrix");
  ppmi->add_option("--cooc", pa.cooc, "Co-occurrence file")->required();
  ppmi->add_option("--ppmi", pa.ppmi, "Output PPMI file")->required();
  ppmi->add_option("--alpha", pa.alpha, "Context-distribution smoothing exponent")->check(CLI::Range(1e-12, 1.0));

  TrainArgs ta;
  ta.seed = seed;
  auto* train_cmd = subcommand(app, "train", "Train LexVec embeddings");
  train_cmd->add_option("--corpus", ta.corpus, "Tokenized corpus")->required();
  train_cmd->add_option("--vocab", ta.vocab, "Vocabulary file")->required();
  train_cmd->add_option("--ppmi", ta.ppmi, "PPMI file")->required();
  train_cmd->add_option("--embeddings", ta.embeddings, "Output embeddings (word2vec text)")->required();
  train_cmd->add_option("--variant", ta.variant, "mb (mini-batch) or st (stochastic)")
      ->check(CLI::IsMember({"mb", "st"}));
  train_cmd->add_option("--window-sampling,--ws", ta.window_sampling, "ppmi (fixed win=2) or sgns (randomized win=10)")
      ->check(CLI::IsMember({"ppmi", "sgns"}));
  train_cmd->add_option("--output", ta.output, "Exported matrix: w or w+wt")->check(CLI::IsMember({"w", "w+wt"}));
  train_cmd->add_option("--dim", ta.dim, "Embedding dimension")->check(CLI::PositiveNumber);
  train_cmd->add_option("--negatives", ta.negatives, "Noise words per window (st) or pair (mb)")
      ->check(CLI::NonNegativeNumber);
  train_cmd->add_option("--window", ta.window, "Window size; 0 uses the window-sampling default")
      ->check(CLI::NonNegativeNumber);
  train_cmd->add_option("--epochs", ta.epochs, "Passes over the corpus")->check(CLI::PositiveNumber);
  train_cmd->add_option("--lr", ta.lr, "Initial learning rate, decayed linearly")->check(CLI::PositiveNumber);
  train_cmd->add_option("--subsample", ta.subsample, "Subsampling threshold t")->check(CLI::Range(1e-300, 1.0));
  train_cmd->add_option("--noise-power", ta.noise_power, "Exponent of the noise unigram distribution")
      ->check(CLI::PositiveNumber);
  train_cmd->add_option("--seed", ta.seed, "Random seed (falls back to LEXVEC_SEED)");
  train_cmd->add_option("--threads", ta.threads, "Workers; 1 is deterministic")->check(CLI::PositiveNumber);
  train_cmd->add_option("--checkpoint", ta.checkpoint, "Write a checkpoint after every epoch");
  train_cmd->add_flag("--normalize", ta.normalize, "Lowercase and strip punctuation");

  SvdArgs sa;
  sa.seed = seed;
  auto* svd = subcommand(app, "svd", "PPMI-SVD baseline embeddings");
  svd->add_option("--ppmi", sa.ppmi, "PPMI file")->required();
  svd->add_option("--vocab", sa.vocab, "Vocabulary file")->required();
  svd->add_option("--embeddings", sa.embeddings, "Output embeddings (word2vec text)")->required();
  svd->add_option("--output", sa.output, "Exported matrix: w or w+wt")->check(CLI::IsMember({"w", "w+wt"}));
  svd->add_option("--dim", sa.dim, "Rank d")->check(CLI::PositiveNumber);
  svd->add_option("--p", sa.p, "Singular-value weighting exponent");
  svd->add_option("--oversample", sa.oversample, "Extra range-finder columns");
  svd->add_option("--power-iterations", sa.power_iterations, "Minimum subspace iterations");
  svd->add_option("--seed", sa.seed, "Random seed (falls back to LEXVEC_SEED)");

  EvalArgs sim_args;
  auto* sim = subcommand(app, "eval-sim", "Word-similarity evaluation (cosine + Spearman)");
  sim->add_option("--embeddings", sim_args.embeddings, "Embeddings (word2vec text)")->required();
  sim->add_option("datasets", sim_args.datasets, "Similarity datasets: word1 word2 score")->required();
  sim->add_option("--csv", sim_args.csv, "Also write results as CSV");
  sim->add_flag("--lowercase", sim_args.lowercase, "Lowercase dataset words");

  EvalArgs an_args;
  auto* analogy = subcommand(app, "eval-analogy", "Word-analogy evaluation (3CosAdd / 3CosMul)");
  analogy->add_option("--embeddings", an_args.embeddings, "Embeddings (word2vec text)")->required();
  analogy->add_option("datasets", an_args.datasets, "Analogy datasets: a a* b b*")->required();
  analogy->add_option("--method", an_args.method, "add, mul, or both")->check(CLI::IsMember({"add", "mul", "both"}));
  analogy->add_option("--csv", an_args.csv, "Also write results as CSV");
  analogy->add_flag("--lowercase", an_args.lowercase, "Lowercase dataset words");

  std::vector<std::string> args;
  try {
    args = expand_config(std::vector<std::string>(argv, argv + argc));
  } catch (const std::exception& e) {
    err << "lexvec: error: " << e.what() << '\n';
    return 2;
  }
  // CLI11 wants the arguments in reverse order, program name excluded.
  std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  CLI::App* chosen = app.get_subcommands().front();
  try {
    if (chosen == vocab) return cmd_vocab(va, out);
    if (chosen == cooc) return cmd_cooc(ca, out);
    if (chosen == ppmi) return cmd_ppmi(pa, out);
    if (chosen == train_cmd) return cmd_train(ta, out);
    if (chosen == svd) return cmd_svd(sa, out);
    if (chosen == sim) return cmd_eval_sim(sim_args, out);
    if (chosen == analogy) return cmd_eval_analogy(an_args, out);
  } catch (const std::exception& e) {
    err << "lexvec " << chosen->get_name() << ": error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace lexvec::cli
