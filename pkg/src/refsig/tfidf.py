"""Tf-idf scoring of corpus 3-grams and top-K pool selection.

The pool of highest-scoring grams is the alphabet from which reference
texts are seeded and mutated.
"""

from __future__ import annotations

import math
import warnings
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .gramio import escape_gram, parse_gram_line
from .text import Document


@dataclass(frozen=True)
class GramScore:
    gram: str
    score: float
    document_frequency: int


@dataclass(frozen=True)
class GramPool:
    """Distinct 3-grams in descending tf-idf order.

    ``underfilled`` is set when the corpus had fewer distinct grams than
    were requested.
    """

    grams: tuple[str, ...]
    requested: int
    underfilled: bool = False

    def __post_init__(self) -> None:
        if len(set(self.grams)) != len(self.grams):
            raise ValueError("gram pool contains duplicate tokens")
        if len(self.grams) > self.requested:
            raise ValueError("gram pool is larger than the requested size")

    def __len__(self) -> int:
        return len(self.grams)


def score_grams(corpus: Sequence[Document]) -> list[GramScore]:
    """Score every distinct 3-gram of ``corpus`` by aggregate tf-idf.

    score(g) = total_count(g) * (ln((1 + N) / (1 + df(g))) + 1), where N is
    the corpus size and df the number of documents containing g. Results
    are sorted by descending score, ties broken by gram order.
    """
    if len(corpus) == 0:
        raise ValueError("cannot score an empty corpus")
    n = len(corpus)
    total_tf: Counter[str] = Counter()
    df: Counter[str] = Counter()
    for doc in corpus:
        for gram, count in doc.vector.counts.items():
            total_tf[gram] += count
            df[gram] += 1
    scores = [
        GramScore(gram, tf * (math.log((1 + n) / (1 + df[gram])) + 1.0), df[gram])
        for gram, tf in total_tf.items()
    ]
    scores.sort(key=lambda s: (-s.score, s.gram))
    return scores


def top_k(scores: Iterable[GramScore], k: int) -> GramPool:
    """The k highest-scoring grams as a pool; all of them if fewer exist."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    ranked = sorted(scores, key=lambda s: (-s.score, s.gram))
    grams = tuple(s.gram for s in ranked[:k])
    underfilled = len(grams) < k
    if underfilled:
        warnings.warn(
            f"corpus has only {len(grams)} distinct 3-grams, requested {k}",
            stacklevel=2,
        )
    return GramPool(grams, k, underfilled)


def save_pool(pool: GramPool, path: str | Path) -> None:
    """Write one escaped gram per line, rank order."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for gram in pool.grams:
            fh.write(escape_gram(gram) + "\n")


def load_pool(path: str | Path) -> GramPool:
    with open(path, "r", encoding="utf-8", newline="\n") as fh:
        text = fh.read()
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    grams = tuple(parse_gram_line(line) for line in lines)
    return GramPool(grams, requested=max(len(grams), 1))
