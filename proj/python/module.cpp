#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <filesystem>
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

namespace py = pybind11;
namespace fs = std::filesystem;
using namespace lexvec;

namespace {

template <class T>
py::array_t<T> to_array(std::span<const T> values) {
  py::array_t<T> out(static_cast<py::ssize_t>(values.size()));
  std::copy(values.begin(), values.end(), out.mutable_data());
  return out;
}

py::array_t<float> to_matrix(std::span<const float> values, std::size_t rows, std::size_t cols) {
  py::array_t<float> out({static_cast<py::ssize_t>(rows), static_cast<py::ssize_t>(cols)});
  std::copy(values.begin(), values.end(), out.mutable_data());
  return out;
}

Embeddings from_matrix(const std::vector<std::string>& words,
                       const py::array_t<float, py::array::c_style | py::array::forcecast>& matrix) {
  if (matrix.ndim() != 2 || static_cast<std::size_t>(matrix.shape(0)) != words.size()) {
    throw std::invalid_argument("matrix must be 2-D with one row per word");
  }
  const auto dim = static_cast<std::size_t>(matrix.shape(1));
  return Embeddings(words, dim, std::vector<float>(matrix.data(), matrix.data() + matrix.size()));
}

struct TrainResult {
  py::array_t<float> target;
  py::array_t<float> context;
  py::array_t<float> embeddings;
  TrainStats stats;
};

TrainResult run_training(const fs::path& corpus, const Vocabulary& vocab, const PpmiMatrix& ppmi,
                         const std::string& variant, const std::string& window_sampling, std::size_t dim,
                         int negatives, std::uint32_t window, int epochs, double lr, double subsample,
                         double noise_power, std::uint64_t seed, unsigned threads, const std::string& output,
                         bool normalize) {
  if (variant != "mb" && variant != "st") throw std::invalid_argument("variant must be 'mb' or 'st'");
  if (window_sampling != "ppmi" && window_sampling != "sgns") {
    throw std::invalid_argument("window_sampling must be 'ppmi' or 'sgns'");
  }
  if (output != "w" && output != "w+wt") throw std::invalid_argument("output must be 'w' or 'w+wt'");
  if (ppmi.dims() != vocab.size()) throw std::invalid_argument("ppmi and vocab sizes differ");

  TrainConfig cfg;
  cfg.variant = variant == "mb" ? Variant::MiniBatch : Variant::Stochastic;
  cfg.window = WindowSamplingConfig::for_mode(window_sampling == "sgns" ? WindowMode::Sgns : WindowMode::Ppmi);
  if (window > 0) cfg.window.win = window;
  cfg.negatives = negatives;
  cfg.dim = dim;
  cfg.epochs = epochs;
  cfg.lr_initial = lr;
  cfg.seed = seed;
  cfg.output = output == "w" ? OutputComposition::W : OutputComposition::WPlusWTilde;
  cfg.threads = threads;
  cfg.validate();

  EmbeddingPair pair;
  TrainStats stats;
  std::vector<float> composed;
  {
    py::gil_scoped_release release;
    const auto noise = build_noise(vocab, noise_power);
    CorpusSource source(corpus, vocab, SubsampleConfig{subsample, seed}, {normalize});
    pair = train(ppmi, noise, source, cfg, &stats);
    composed = compose_output(pair, cfg.output);
  }
  return {to_matrix(pair.targets(), pair.vocab_size(), pair.dim()),
          to_matrix(pair.contexts(), pair.vocab_size(), pair.dim()),
          to_matrix(composed, pair.vocab_size(), pair.dim()), stats};
}

AnalogyMethod parse_method(const std::string& method) {
  if (method == "3cosadd") return AnalogyMethod::CosAdd;
  if (method == "3cosmul") return AnalogyMethod::CosMul;
  throw std::invalid_argument("method must be '3cosadd' or '3cosmul'");
}

py::dict report_dict(const EvalReport& r) {
  py::dict d;
  d["dataset"] = r.dataset;
  d["metric"] = r.metric;
  d["value"] = r.value;
  d["evaluated"] = r.evaluated;
  d["skipped"] = r.skipped;
  return d;
}

}  // namespace

PYBIND11_MODULE(_lexvec, m) {
  m.doc() = "LexVec: PPMI matrix factorization with window and negative sampling.";

  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);

  py::class_<Vocabulary>(m, "Vocabulary")
      .def_static("load", &Vocabulary::load, py::arg("path"))
      .def("save", &Vocabulary::save, py::arg("path"))
      .def("__len__", &Vocabulary::size)
      .def("__contains__", [](const Vocabulary& v, const std::string& w) { return v.find(w).has_value(); })
      .def("find", &Vocabulary::find, py::arg("word"))
      .def("word", &Vocabulary::word, py::arg("id"))
      .def("count", &Vocabulary::count, py::arg("id"))
      .def_property_readonly("words", [](const Vocabulary& v) {
        return std::vector<std::string>(v.words().begin(), v.words().end());
      })
      .def_property_readonly("counts", [](const Vocabulary& v) { return to_array(v.counts()); })
      .def_property_readonly("total_tokens", &Vocabulary::total_tokens)
      .def_property_readonly("min_count", &Vocabulary::min_count);

  m.def(
      "build_vocabulary",
      [](const fs::path& corpus, std::uint64_t min_count, bool normalize) {
        py::gil_scoped_release release;
        return build_vocabulary(corpus, min_count, {normalize});
      },
      py::arg("corpus"), py::arg("min_count") = 100, py::arg("normalize") = false);

  m.def("keep_probability", [](std::uint64_t count, std::uint64_t total, double t) {
    return keep_probability(count, total, {t, 1});
  }, py::arg("count"), py::arg("total_tokens"), py::arg("t") = 1e-5);

  py::class_<CoocMatrix>(m, "CoocMatrix")
      .def_static("load", &CoocMatrix::load, py::arg("path"))
      .def("save", &CoocMatrix::save, py::arg("path"))
      .def("count", &CoocMatrix::count, py::arg("word"), py::arg("context"))
      .def_property_readonly("vocab_size", &CoocMatrix::vocab_size)
      .def_property_readonly("window", &CoocMatrix::window)
      .def_property_readonly("grand_total", &CoocMatrix::grand_total)
      .def_property_readonly("nonzeros", [](const CoocMatrix& c) { return c.entries().size(); })
      .def_property_readonly("row_marginals", [](const CoocMatrix& c) { return to_array(c.row_marginals()); })
      .def_property_readonly("col_marginals", [](const CoocMatrix& c) { return to_array(c.col_marginals()); })
      .def("coo", [](const CoocMatrix& c) {
        const auto e = c.entries();
        py::array_t<std::uint32_t> rows(static_cast<py::ssize_t>(e.size())), cols(static_cast<py::ssize_t>(e.size()));
        py::array_t<std::uint64_t> counts(static_cast<py::ssize_t>(e.size()));
        for (std::size_t i = 0; i < e.size(); ++i) {
          rows.mutable_at(i) = e[i].word;
          cols.mutable_at(i) = e[i].context;
          counts.mutable_at(i) = e[i].count;
        }
        return py::make_tuple(rows, cols, counts);
      }, "(rows, cols, counts) arrays sorted by (row, col).");

  m.def(
      "count_cooccurrences",
      [](const fs::path& corpus, const Vocabulary& vocab, std::uint32_t window, double subsample, std::uint64_t seed,
         unsigned threads, bool normalize) {
        const SubsampleConfig sub{subsample, seed};
        sub.validate();
        py::gil_scoped_release release;
        return count_corpus(corpus, vocab, sub, window, threads, {normalize});
      },
      py::arg("corpus"), py::arg("vocab"), py::arg("window") = 2, py::arg("subsample") = 1e-5, py::arg("seed") = 1,
      py::arg("threads") = 1, py::arg("normalize") = false);

  m.def(
      "count_sentences",
      [](const std::vector<Sentence>& sentences, std::uint32_t window, std::uint32_t vocab_size) {
        return count_cooccurrences(sentences, window, vocab_size);
      },
      py::arg("sentences"), py::arg("window"), py::arg("vocab_size"),
      "Counts co-occurrences over sentences of word ids.");

  py::class_<PpmiMatrix>(m, "PpmiMatrix")
      .def_static("load", &PpmiMatrix::load, py::arg("path"))
      .def("save", &PpmiMatrix::save, py::arg("path"))
      .def("lookup", &PpmiMatrix::lookup, py::arg("word"), py::arg("context"))
      .def_property_readonly("dims", &PpmiMatrix::dims)
      .def_property_readonly("alpha", &PpmiMatrix::alpha)
      .def_property_readonly("nonzeros", &PpmiMatrix::nonzeros)
      .def("coo", [](const PpmiMatrix& p) {
        const auto e = p.entries();
        py::array_t<std::uint32_t> rows(static_cast<py::ssize_t>(e.size())), cols(static_cast<py::ssize_t>(e.size()));
        py::array_t<float> values(static_cast<py::ssize_t>(e.size()));
        for (std::size_t i = 0; i < e.size(); ++i) {
          rows.mutable_at(i) = e[i].word;
          cols.mutable_at(i) = e[i].context;
          values.mutable_at(i) = e[i].value;
        }
        return py::make_tuple(rows, cols, values);
      }, "(rows, cols, values) arrays sorted by (row, col).");

  m.def("build_ppmi", &build_ppmi, py::arg("cooc"), py::arg("alpha") = 0.75);
  m.def("pmi", &pmi, py::arg("cooc"), py::arg("word"), py::arg("context"), py::arg("alpha") = 0.75);

  py::class_<TrainStats>(m, "TrainStats")
      .def_readonly("tokens", &TrainStats::tokens)
      .def_readonly("windows", &TrainStats::windows)
      .def_readonly("positive_updates", &TrainStats::positive_updates)
      .def_readonly("noise_draws", &TrainStats::noise_draws);

  py::class_<TrainResult>(m, "TrainResult")
      .def_readonly("target", &TrainResult::target)
      .def_readonly("context", &TrainResult::context)
      .def_readonly("embeddings", &TrainResult::embeddings)
      .def_readonly("stats", &TrainResult::stats);

  m.def("train", &run_training, py::arg("corpus"), py::arg("vocab"), py::arg("ppmi"), py::arg("variant") = "st",
        py::arg("window_sampling") = "ppmi", py::arg("dim") = 300, py::arg("negatives") = 5, py::arg("window") = 0,
        py::arg("epochs") = 5, py::arg("lr") = 0.025, py::arg("subsample") = 1e-5, py::arg("noise_power") = 0.75,
        py::arg("seed") = 1, py::arg("threads") = 1, py::arg("output") = "w", py::arg("normalize") = false,
        "Trains LexVec over a corpus file. `window` 0 keeps the window-sampling default.");

  py::class_<SvdFactors>(m, "SvdFactors")
      .def_readonly("U", &SvdFactors::U)
      .def_readonly("sigma", &SvdFactors::sigma)
      .def_readonly("V", &SvdFactors::V)
      .def_readonly("p", &SvdFactors::p)
      .def("weighted", &weighted_embeddings, "(U diag(sigma^p), V diag(sigma^(1-p))).");

  m.def(
      "truncated_svd",
      [](const PpmiMatrix& ppmi, std::size_t dim, std::uint64_t seed, double p) {
        py::gil_scoped_release release;
        SvdOptions opts;
        opts.p = p;
        return truncated_svd(ppmi, dim, seed, opts);
      },
      py::arg("ppmi"), py::arg("dim"), py::arg("seed") = 1, py::arg("p") = 0.5);

  m.def("save_embeddings", [](const fs::path& path, const std::vector<std::string>& words,
                              const py::array_t<float, py::array::c_style | py::array::forcecast>& matrix) {
    from_matrix(words, matrix).save_word2vec(path);
  }, py::arg("path"), py::arg("words"), py::arg("matrix"));

  m.def("load_embeddings", [](const fs::path& path) {
    const auto e = Embeddings::load_word2vec(path);
    return py::make_tuple(std::vector<std::string>(e.words().begin(), e.words().end()),
                          to_matrix(e.data(), e.size(), e.dim()));
  }, py::arg("path"), "Returns (words, matrix) from a word2vec text file.");

  m.def("spearman", [](const std::vector<double>& x, const std::vector<double>& y) { return spearman(x, y); },
        py::arg("x"), py::arg("y"));

  m.def("eval_similarity", [](const std::vector<std::string>& words,
                              const py::array_t<float, py::array::c_style | py::array::forcecast>& matrix,
                              const fs::path& dataset, bool lowercase) {
    const UnitEmbeddings emb(from_matrix(words, matrix));
    return report_dict(eval_similarity(emb, load_similarity_dataset(dataset, {lowercase})));
  }, py::arg("words"), py::arg("matrix"), py::arg("dataset"), py::arg("lowercase") = false);

  m.def("eval_analogy", [](const std::vector<std::string>& words,
                           const py::array_t<float, py::array::c_style | py::array::forcecast>& matrix,
                           const fs::path& dataset, const std::string& method, bool lowercase) {
    const auto how = parse_method(method);
    const UnitEmbeddings emb(from_matrix(words, matrix));
    return report_dict(eval_analogy(emb, load_analogy_dataset(dataset, {lowercase}), how));
  }, py::arg("words"), py::arg("matrix"), py::arg("dataset"), py::arg("method") = "3cosadd",
     py::arg("lowercase") = false);

  m.def("analogy", [](const std::vector<std::string>& words,
                      const py::array_t<float, py::array::c_style | py::array::forcecast>& matrix,
                      const std::string& a, const std::string& a_star, const std::string& b,
                      const std::string& method) {
    const auto how = parse_method(method);
    const UnitEmbeddings emb(from_matrix(words, matrix));
    const auto ia = emb.find(a), ias = emb.find(a_star), ib = emb.find(b);
    if (!ia || !ias || !ib) throw py::key_error("query word not in the vocabulary");
    const WordId x = how == AnalogyMethod::CosAdd ? analogy_3cosadd(emb, *ia, *ias, *ib)
                                                  : analogy_3cosmul(emb, *ia, *ias, *ib);
    return emb.word(x);
  }, py::arg("words"), py::arg("matrix"), py::arg("a"), py::arg("a_star"), py::arg("b"),
     py::arg("method") = "3cosadd", "Answers a : a_star :: b : ?");
}
