"""Reference texts, document signatures, and DND classification.

A reference text is a fixed sequence of 3-grams split into P contiguous
partitions. A document's signature is the vector of its cosine scores
against each partition; two documents are compared by the cosine of their
signatures and classified against a pair of thresholds.
"""

from __future__ import annotations

import hashlib
import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Sequence

import numpy as np

from .gramio import escape_gram, parse_gram_line
from .text import NGRAM_SIZE, Document, SparseNGramVector, cosine


class SignatureMismatchError(ValueError):
    """Signatures bound to different reference texts were compared."""


def partition_sizes(length: int, parts: int) -> list[int]:
    """Near-equal contiguous slice sizes: the remainder goes to the first slices."""
    base, rem = divmod(length, parts)
    return [base + 1] * rem + [base] * (parts - rem)


class ReferenceText:
    """An ordered 3-gram sequence with a fixed partition count.

    Partition vectors are count vectors, so a gram repeated inside one
    slice weights it. The fingerprint is a content hash over the grams and
    the partition count; signatures carry it so that scores produced
    against different references can never be compared silently.
    """

    __slots__ = ("grams", "partitions", "partition_vectors", "fingerprint")

    def __init__(self, grams: Sequence[str], partitions: int):
        grams = tuple(grams)
        if not grams:
            raise ValueError("reference text needs at least one 3-gram")
        for gram in grams:
            if len(gram) != NGRAM_SIZE:
                raise ValueError(f"token {gram!r} is not {NGRAM_SIZE} characters long")
        if not 1 <= partitions <= len(grams):
            raise ValueError(
                f"partition count must be in 1..{len(grams)}, got {partitions}"
            )
        self.grams = grams
        self.partitions = partitions
        vectors = []
        start = 0
        for size in partition_sizes(len(grams), partitions):
            vectors.append(SparseNGramVector(Counter(grams[start : start + size])))
            start += size
        self.partition_vectors: tuple[SparseNGramVector, ...] = tuple(vectors)
        self.fingerprint = hashlib.sha256(_serialize(grams, partitions).encode("utf-8")).hexdigest()

    def __len__(self) -> int:
        return len(self.grams)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ReferenceText):
            return NotImplemented
        return self.grams == other.grams and self.partitions == other.partitions

    def __repr__(self) -> str:
        return f"ReferenceText({len(self.grams)} grams, {self.partitions} partitions)"


def _serialize(grams: tuple[str, ...], partitions: int) -> str:
    return f"P={partitions}\n" + "".join(escape_gram(g) + "\n" for g in grams)


def partition(ref: ReferenceText) -> tuple[SparseNGramVector, ...]:
    """The reference's partition count vectors, in order."""
    return ref.partition_vectors


@dataclass(frozen=True, eq=False)
class Signature:
    """A document's fingerprint: one cosine score per reference partition."""

    scores: np.ndarray
    ref_fingerprint: str


def sign(doc: Document, ref: ReferenceText) -> Signature:
    """Score ``doc`` against every partition; empty documents sign all-zero."""
    scores = np.array(
        [cosine(doc.vector, part) for part in ref.partition_vectors], dtype=float
    )
    return Signature(scores, ref.fingerprint)


def signature_matrix(docs: Sequence[Document], ref: ReferenceText) -> np.ndarray:
    """Stack the signatures of ``docs`` into an N x P matrix."""
    return np.array([sign(doc, ref).scores for doc in docs])


def _score_cosine(x: np.ndarray, y: np.ndarray) -> float:
    sx = float(np.dot(x, x))
    sy = float(np.dot(y, y))
    if sx == 0.0 or sy == 0.0:
        return 0.0
    return min(1.0, float(np.dot(x, y)) / math.sqrt(sx * sy))


def signature_similarity(a: Signature, b: Signature) -> float:
    """Cosine of two signature vectors; 0.0 when either is all-zero.

    Raises SignatureMismatchError when the signatures were generated from
    different reference texts.
    """
    if a.ref_fingerprint != b.ref_fingerprint:
        raise SignatureMismatchError(
            "signatures come from different reference texts "
            f"({a.ref_fingerprint[:12]}... vs {b.ref_fingerprint[:12]}...)"
        )
    if len(a.scores) != len(b.scores):
        raise SignatureMismatchError("signatures have different lengths")
    return _score_cosine(a.scores, b.scores)


def pairwise_signature_similarity(matrix: np.ndarray) -> np.ndarray:
    """All-pairs signature cosine for an N x P signature matrix."""
    m = np.asarray(matrix, dtype=float)
    sq = np.einsum("ij,ij->i", m, m)
    dots = m @ m.T
    denom = np.sqrt(np.outer(sq, sq))
    sims = np.divide(dots, denom, out=np.zeros_like(dots), where=denom > 0)
    return np.minimum(sims, 1.0)


def mean_signature_error(sig_matrix: np.ndarray, oracle: np.ndarray) -> float:
    """Mean absolute gap between signature similarity and exact cosine.

    Averages |signature_similarity(i, j) - oracle[i, j]| over the
    N(N-1)/2 unordered pairs.
    """
    n = sig_matrix.shape[0]
    if n < 2:
        raise ValueError("need at least 2 documents to compare")
    if oracle.shape != (n, n):
        raise ValueError(f"oracle shape {oracle.shape} does not match {n} documents")
    sims = pairwise_signature_similarity(sig_matrix)
    iu = np.triu_indices(n, k=1)
    return float(np.mean(np.abs(sims[iu] - oracle[iu])))


class Verdict(Enum):
    DUPLICATE = "duplicate"
    NEAR_DUPLICATE = "near-duplicate"
    DISTINCT = "distinct"


@dataclass(frozen=True)
class ClassifierConfig:
    """Inclusive similarity thresholds: t1 bounds duplicates, t2 near-duplicates.

    The defaults are tuned for the bundled synthetic corpora and are meant
    to be overridden per application.
    """

    t1: float = 0.95
    t2: float = 0.80

    def __post_init__(self) -> None:
        if not (0.0 < self.t2 < self.t1 <= 1.0):
            raise ValueError(
                f"thresholds must satisfy 0 < t2 < t1 <= 1, got t1={self.t1}, t2={self.t2}"
            )


@dataclass(frozen=True)
class DndVerdict:
    label: Verdict
    similarity: float


def classify(similarity: float, cfg: ClassifierConfig) -> DndVerdict:
    """Map a similarity in [0, 1] to duplicate / near-duplicate / distinct."""
    if similarity >= cfg.t1:
        label = Verdict.DUPLICATE
    elif similarity >= cfg.t2:
        label = Verdict.NEAR_DUPLICATE
    else:
        label = Verdict.DISTINCT
    return DndVerdict(label, similarity)


def save_reference(ref: ReferenceText, path: str | Path) -> None:
    """Write the exchange file: P header, escaped gram lines, hash trailer."""
    body = _serialize(ref.grams, ref.partitions)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(body)
        fh.write(f"sha256={ref.fingerprint}\n")


def load_reference(path: str | Path) -> ReferenceText:
    with open(path, "r", encoding="utf-8", newline="\n") as fh:
        text = fh.read()
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if len(lines) < 3:
        raise ValueError(f"{path}: not a reference file (too few lines)")
    header, trailer = lines[0], lines[-1]
    if not header.startswith("P="):
        raise ValueError(f"{path}: missing P= header")
    try:
        partitions = int(header[2:])
    except ValueError:
        raise ValueError(f"{path}: bad partition count {header[2:]!r}") from None
    if not trailer.startswith("sha256="):
        raise ValueError(f"{path}: missing sha256= trailer")
    grams = [parse_gram_line(line) for line in lines[1:-1]]
    ref = ReferenceText(grams, partitions)
    stated = trailer[len("sha256=") :]
    if ref.fingerprint != stated:
        raise ValueError(f"{path}: content hash mismatch, file is corrupt or edited")
    return ref
