"""Evaluation: held-out MAE, detection metrics, cross-validation, synthetic
corpora with planted duplicates, and all-pairs DND scans."""

from __future__ import annotations

import math
import random
import string
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

import numpy as np

from .ga import EvolveResult, GaConfig, GenerationStats, evolve
from .reference import (
    ClassifierConfig,
    DndVerdict,
    ReferenceText,
    Verdict,
    classify,
    mean_signature_error,
    pairwise_signature_similarity,
    signature_matrix,
)
from .store import SignatureDb
from .text import Document, brute_force_pairwise


def mae(ref: ReferenceText, docs: Sequence[Document]) -> float:
    """Mean absolute error of signature similarity vs exact cosine over all
    pairs of ``docs``."""
    docs = list(docs)
    if len(docs) < 2:
        raise ValueError(f"need at least 2 documents to evaluate, got {len(docs)}")
    oracle = brute_force_pairwise(docs)
    return mean_signature_error(signature_matrix(docs, ref), oracle)


@dataclass(frozen=True)
class ConfusionCounts:
    true_positives: int
    false_positives: int
    false_negatives: int
    true_negatives: int = 0

    def __post_init__(self) -> None:
        for name, value in (
            ("true_positives", self.true_positives),
            ("false_positives", self.false_positives),
            ("false_negatives", self.false_negatives),
            ("true_negatives", self.true_negatives),
        ):
            if value < 0:
                raise ValueError(f"{name} must be >= 0, got {value}")


@dataclass(frozen=True)
class MetricsReport:
    precision: float
    recall: float
    f1: float
    mae: float | None = None
    pair_count: int = 0


def f1_score(precision: float, recall: float) -> float:
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def prf(counts: ConfusionCounts) -> MetricsReport:
    """Precision, recall, and F1 from confusion counts; 0 on empty denominators."""
    tp = counts.true_positives
    predicted = tp + counts.false_positives
    actual = tp + counts.false_negatives
    precision = tp / predicted if predicted else 0.0
    recall = tp / actual if actual else 0.0
    total = predicted + counts.false_negatives + counts.true_negatives
    return MetricsReport(precision, recall, f1_score(precision, recall), pair_count=total)


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: float = 0.80
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 < self.train_fraction < 1.0:
            raise ValueError("train_fraction must be in (0, 1)")


def split_corpus(
    corpus: Sequence[Document], spec: SplitSpec
) -> tuple[list[Document], list[Document]]:
    """Shuffle and split; both sides are non-empty for corpora of size >= 2."""
    docs = list(corpus)
    if len(docs) < 2:
        raise ValueError("need at least 2 documents to split")
    order = list(range(len(docs)))
    random.Random(spec.rng_seed).shuffle(order)
    cut = min(max(int(len(docs) * spec.train_fraction), 1), len(docs) - 1)
    train = [docs[i] for i in order[:cut]]
    test = [docs[i] for i in order[cut:]]
    return train, test


@dataclass(frozen=True)
class RunReport:
    run: int
    train_size: int
    test_size: int
    train_mae: float
    holdout_mae: float
    history: tuple[GenerationStats, ...]


@dataclass(frozen=True)
class CrossValidationResult:
    reference: ReferenceText
    winner_run: int
    reports: tuple[RunReport, ...]


def cross_validate(
    corpus: Sequence[Document],
    cfg: GaConfig,
    split: SplitSpec = SplitSpec(),
    runs: int = 10,
) -> CrossValidationResult:
    """Repeat split-train-evaluate and keep the reference with the lowest
    held-out MAE.

    Run r splits with seed ``split.rng_seed + r`` and evolves with seed
    ``cfg.rng_seed + r``, so the whole procedure is reproducible.
    """
    if runs < 1:
        raise ValueError("runs must be >= 1")
    corpus = list(corpus)
    reports: list[RunReport] = []
    best_ref: ReferenceText | None = None
    best_mae = math.inf
    winner = 0
    for run in range(runs):
        train, test = split_corpus(corpus, replace(split, rng_seed=split.rng_seed + run))
        result: EvolveResult = evolve(train, replace(cfg, rng_seed=cfg.rng_seed + run))
        ref = ReferenceText(result.best.grams, cfg.partitions)
        holdout = mae(ref, test)
        reports.append(
            RunReport(run, len(train), len(test), result.best.fitness, holdout, result.history)
        )
        if holdout < best_mae:
            best_mae = holdout
            best_ref = ref
            winner = run
    return CrossValidationResult(best_ref, winner, tuple(reports))


# ---------------------------------------------------------------------------
# Synthetic corpora with planted duplicates and near-duplicates.

_LETTERS = string.ascii_lowercase
_VOCAB_SEED = 93
_VOCAB_SIZE = 1200


def _make_vocabulary(size: int = _VOCAB_SIZE, seed: int = _VOCAB_SEED) -> tuple[str, ...]:
    # One shared pseudo-language for every generated corpus, so that corpora
    # produced from different seeds still share 3-gram statistics the way
    # same-language document collections do.
    rng = random.Random(seed)
    onsets = [
        "b", "c", "d", "f", "g", "h", "j", "k", "l", "m", "n", "p", "r", "s",
        "t", "v", "w", "z", "br", "ch", "cl", "cr", "dr", "fl", "fr", "gl",
        "gr", "pl", "pr", "sh", "sk", "sl", "sm", "sn", "sp", "st", "str",
        "sw", "th", "tr", "tw",
    ]
    vowels = ["a", "e", "i", "o", "u", "ai", "ea", "ee", "ia", "io", "oo", "ou"]
    codas = ["", "", "", "b", "ck", "d", "g", "k", "l", "ll", "m", "n", "nd",
             "ng", "nt", "p", "r", "rd", "s", "ss", "st", "t", "x"]
    words: set[str] = set()
    while len(words) < size:
        syllables = rng.randint(1, 3)
        word = "".join(rng.choice(onsets) + rng.choice(vowels) for _ in range(syllables))
        word += rng.choice(codas)
        if 3 <= len(word) <= 12:
            words.add(word)
    return tuple(sorted(words))


_VOCABULARY = _make_vocabulary()


@dataclass(frozen=True)
class SyntheticCorpusSpec:
    """Parameters of a generated corpus: random base documents, byte-identical
    duplicates, and near-duplicates with at most ``edit_fraction`` of their
    characters replaced."""

    base_doc_count: int = 100
    near_dup_count: int = 20
    dup_count: int = 10
    edit_fraction: float = 0.10
    rng_seed: int = 0
    words_per_doc: int = 160

    def __post_init__(self) -> None:
        if self.base_doc_count < 1:
            raise ValueError("base_doc_count must be >= 1")
        if self.near_dup_count < 0 or self.dup_count < 0:
            raise ValueError("duplicate counts must be >= 0")
        if not 0.0 <= self.edit_fraction < 1.0:
            raise ValueError("edit_fraction must be in [0, 1)")
        if self.words_per_doc < 3:
            raise ValueError("words_per_doc must be >= 3")


@dataclass(frozen=True)
class LabeledPair:
    id_a: str
    id_b: str
    label: Verdict


def _edit_text(text: str, edit_fraction: float, rng: random.Random) -> str:
    limit = int(len(text) * edit_fraction)
    if limit < 1:
        return text
    count = rng.randint(1, limit)
    chars = list(text)
    for pos in rng.sample(range(len(chars)), count):
        chars[pos] = rng.choice(_LETTERS)
    return "".join(chars)


def generate_synthetic_corpus(
    spec: SyntheticCorpusSpec,
) -> tuple[list[Document], list[LabeledPair]]:
    """Build a labeled corpus: bases, exact copies, and edited copies.

    Returns the documents (sorted by id) and the planted ground-truth
    pairs. Near-duplicates replace between 1 and
    ``edit_fraction * len(text)`` characters of their base, at random
    positions, with random letters.
    """
    rng = random.Random(spec.rng_seed)
    texts: dict[str, str] = {}
    for i in range(spec.base_doc_count):
        words = rng.choices(_VOCABULARY, k=spec.words_per_doc)
        texts[f"base-{i:04d}.txt"] = " ".join(words)
    pairs: list[LabeledPair] = []
    for i in range(spec.dup_count):
        src = f"base-{rng.randrange(spec.base_doc_count):04d}.txt"
        dup_id = f"dup-{i:04d}.txt"
        texts[dup_id] = texts[src]
        pairs.append(LabeledPair(src, dup_id, Verdict.DUPLICATE))
    for i in range(spec.near_dup_count):
        src = f"base-{rng.randrange(spec.base_doc_count):04d}.txt"
        near_id = f"near-{i:04d}.txt"
        texts[near_id] = _edit_text(texts[src], spec.edit_fraction, rng)
        pairs.append(LabeledPair(src, near_id, Verdict.NEAR_DUPLICATE))
    docs = [Document.from_raw(doc_id, text) for doc_id, text in sorted(texts.items())]
    return docs, pairs


# ---------------------------------------------------------------------------
# All-pairs DND scan over a signature database.

@dataclass(frozen=True)
class ScanPair:
    id_a: str
    id_b: str
    verdict: DndVerdict


def dnd_scan(db: SignatureDb, cfg: ClassifierConfig) -> list[ScanPair]:
    """Classify every pair in the database; emit duplicate and near-duplicate
    pairs, canonicalized and sorted by id."""
    if db.record_count == 0:
        raise ValueError("signature database is empty")
    ids = [doc_id for doc_id, _ in db.records]
    matrix = np.array([scores for _, scores in db.records], dtype=float)
    sims = pairwise_signature_similarity(matrix)
    hits: list[ScanPair] = []
    for i in range(len(ids)):
        for j in range(i + 1, len(ids)):
            verdict = classify(float(sims[i, j]), cfg)
            if verdict.label is Verdict.DISTINCT:
                continue
            id_a, id_b = sorted((ids[i], ids[j]))
            hits.append(ScanPair(id_a, id_b, verdict))
    hits.sort(key=lambda h: (h.id_a, h.id_b))
    return hits


def confusion_from_pairs(
    predicted: Iterable[tuple[str, str]],
    truth: Iterable[tuple[str, str]],
    total_pairs: int,
) -> ConfusionCounts:
    """Pairwise confusion counts for a detection run against ground truth."""
    predicted_set = {tuple(sorted(p)) for p in predicted}
    truth_set = {tuple(sorted(p)) for p in truth}
    tp = len(predicted_set & truth_set)
    fp = len(predicted_set - truth_set)
    fn = len(truth_set - predicted_set)
    tn = total_pairs - tp - fp - fn
    if tn < 0:
        raise ValueError("total_pairs is smaller than the observed pair sets")
    return ConfusionCounts(tp, fp, fn, tn)
