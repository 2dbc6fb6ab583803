"""Reference-text cosine signatures for duplicate and near-duplicate detection.

Documents are mapped to short signature vectors by scoring them against the
partitions of a shared reference gram sequence; comparing signatures stands
in for comparing full documents. A genetic algorithm evolves the reference
to minimize the gap between signature similarity and exact cosine.
"""

__version__ = "0.1.0"

from .evaluate import (
    ConfusionCounts,
    CrossValidationResult,
    LabeledPair,
    MetricsReport,
    RunReport,
    ScanPair,
    SplitSpec,
    SyntheticCorpusSpec,
    confusion_from_pairs,
    cross_validate,
    dnd_scan,
    f1_score,
    generate_synthetic_corpus,
    mae,
    prf,
    split_corpus,
)
from .ga import (
    Chromosome,
    EvolveResult,
    FitnessSample,
    GaConfig,
    GenerationStats,
    crossover,
    draw_fitness_sample,
    evolve,
    fitness,
    init_population,
    mutate,
)
from .reference import (
    ClassifierConfig,
    DndVerdict,
    ReferenceText,
    Signature,
    SignatureMismatchError,
    Verdict,
    classify,
    load_reference,
    mean_signature_error,
    pairwise_signature_similarity,
    partition,
    save_reference,
    sign,
    signature_matrix,
    signature_similarity,
)
from .store import (
    CorpusSource,
    CorruptDbError,
    SignatureDb,
    db_read,
    db_write,
    ingest,
    strip_html,
)
from .text import (
    Document,
    SparseNGramVector,
    brute_force_pairwise,
    corpus_grams,
    cosine,
    extract_3grams,
    normalize,
)
from .tfidf import GramPool, GramScore, load_pool, save_pool, score_grams, top_k

__all__ = [
    "__version__",
    "ClassifierConfig",
    "Chromosome",
    "ConfusionCounts",
    "CorpusSource",
    "CorruptDbError",
    "CrossValidationResult",
    "DndVerdict",
    "Document",
    "EvolveResult",
    "FitnessSample",
    "GaConfig",
    "GenerationStats",
    "GramPool",
    "GramScore",
    "LabeledPair",
    "MetricsReport",
    "ReferenceText",
    "RunReport",
    "ScanPair",
    "Signature",
    "SignatureDb",
    "SignatureMismatchError",
    "SparseNGramVector",
    "SplitSpec",
    "SyntheticCorpusSpec",
    "Verdict",
    "brute_force_pairwise",
    "classify",
    "confusion_from_pairs",
    "corpus_grams",
    "cosine",
    "cross_validate",
    "crossover",
    "db_read",
    "db_write",
    "dnd_scan",
    "draw_fitness_sample",
    "evolve",
    "extract_3grams",
    "f1_score",
    "fitness",
    "generate_synthetic_corpus",
    "ingest",
    "init_population",
    "load_pool",
    "load_reference",
    "mae",
    "mean_signature_error",
    "mutate",
    "normalize",
    "pairwise_signature_similarity",
    "partition",
    "prf",
    "save_pool",
    "save_reference",
    "score_grams",
    "sign",
    "signature_matrix",
    "signature_similarity",
    "split_corpus",
    "strip_html",
    "top_k",
]
