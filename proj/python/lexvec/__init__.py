"""LexVec word embeddings: PPMI factorization trained with window and negative sampling.

The pipeline mirrors the ``lexvec`` command-line tool::

    vocab = lexvec.build_vocabulary("corpus.txt", min_count=100)
    cooc = lexvec.count_cooccurrences("corpus.txt", vocab, window=2)
    ppmi = lexvec.build_ppmi(cooc, alpha=0.75)
    result = lexvec.train("corpus.txt", vocab, ppmi, variant="st", dim=300)
    lexvec.save_embeddings("vectors.txt", vocab.words, result.embeddings)
"""

from ._lexvec import (
    CoocMatrix,
    FormatError,
    PpmiMatrix,
    SvdFactors,
    TrainResult,
    TrainStats,
    Vocabulary,
    analogy,
    build_ppmi,
    build_vocabulary,
    count_cooccurrences,
    count_sentences,
    eval_analogy,
    eval_similarity,
    keep_probability,
    load_embeddings,
    pmi,
    save_embeddings,
    spearman,
    train,
    truncated_svd,
)

__all__ = [
    "CoocMatrix",
    "FormatError",
    "PpmiMatrix",
    "SvdFactors",
    "TrainResult",
    "TrainStats",
    "Vocabulary",
    "analogy",
    "build_ppmi",
    "build_vocabulary",
    "count_cooccurrences",
    "count_sentences",
    "eval_analogy",
    "eval_similarity",
    "keep_probability",
    "load_embeddings",
    "pmi",
    "save_embeddings",
    "spearman",
    "train",
    "truncated_svd",
]
