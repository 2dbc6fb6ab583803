"""Genetic-algorithm search for reference texts that minimize signature error.

Fitness of a candidate is the mean absolute error between signature-space
similarity and exact cosine over a fixed sample of document pairs (lower
is better). Selection is elitist truncation over parents plus offspring,
so the best fitness never worsens between generations.
"""

from __future__ import annotations

import hashlib
import math
import random
import time
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .gramio import escape_gram
from .reference import ReferenceText, mean_signature_error, signature_matrix
from .text import Document, brute_force_pairwise
from .tfidf import GramPool, score_grams, top_k

DEFAULT_SEED = 0


@dataclass(frozen=True)
class GaConfig:
    population_size: int = 100
    ref_len: int = 1000
    partitions: int = 150
    pool_size: int = 9000
    mutation_fraction: float = 0.10
    max_generations: int = 50
    fitness_threshold: float = 0.0
    sample_size: int = 100
    rng_seed: int = DEFAULT_SEED

    def __post_init__(self) -> None:
        if self.population_size < 1:
            raise ValueError("population_size must be >= 1")
        if self.ref_len < 1:
            raise ValueError("ref_len must be >= 1")
        if not 1 <= self.partitions <= self.ref_len:
            raise ValueError("partitions must be in 1..ref_len")
        if self.pool_size < 1:
            raise ValueError("pool_size must be >= 1")
        if not 0.0 < self.mutation_fraction < 1.0:
            raise ValueError("mutation_fraction must be in (0, 1)")
        if self.max_generations < 1:
            raise ValueError("max_generations must be >= 1")
        if self.fitness_threshold < 0.0:
            raise ValueError("fitness_threshold must be >= 0")
        if self.sample_size < 2:
            raise ValueError("sample_size must be >= 2")


@dataclass
class Chromosome:
    """A candidate reference-gram sequence with its cached fitness."""

    grams: tuple[str, ...]
    fitness: float | None = None

    def content_hash(self) -> str:
        payload = "".join(escape_gram(g) + "\n" for g in self.grams)
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class FitnessSample:
    """The fixed documents every candidate is scored on, plus their exact
    pairwise cosine matrix."""

    documents: tuple[Document, ...]
    oracle: np.ndarray


@dataclass(frozen=True)
class GenerationStats:
    generation: int
    best_mae: float
    mean_mae: float
    elapsed_s: float


@dataclass(frozen=True)
class EvolveResult:
    best: Chromosome
    history: tuple[GenerationStats, ...]
    pool: GramPool
    sample: FitnessSample


def draw_fitness_sample(
    corpus: Sequence[Document], size: int, rng: random.Random
) -> FitnessSample:
    """Pick ``size`` documents without replacement and precompute their oracle."""
    if size < 2:
        raise ValueError("fitness sample needs at least 2 documents")
    if len(corpus) < size:
        raise ValueError(f"corpus has {len(corpus)} documents, sample needs {size}")
    docs = tuple(rng.sample(list(corpus), size))
    return FitnessSample(docs, brute_force_pairwise(docs))


def init_population(pool: GramPool, cfg: GaConfig, rng: random.Random) -> list[Chromosome]:
    """Uniform draws with replacement from the pool, ``ref_len`` grams each."""
    if len(pool) == 0:
        raise ValueError("cannot initialize a population from an empty gram pool")
    return [
        Chromosome(tuple(rng.choices(pool.grams, k=cfg.ref_len)))
        for _ in range(cfg.population_size)
    ]


def crossover(
    a: Chromosome, b: Chromosome, rng: random.Random
) -> tuple[Chromosome, Chromosome]:
    """Single-cut crossover: one shared cut point, tails swapped."""
    if len(a.grams) != len(b.grams):
        raise ValueError("parents must have the same length")
    length = len(a.grams)
    if length < 2:
        return Chromosome(a.grams), Chromosome(b.grams)
    cut = rng.randint(1, length - 1)
    return (
        Chromosome(a.grams[:cut] + b.grams[cut:]),
        Chromosome(b.grams[:cut] + a.grams[cut:]),
    )


def mutation_count(ref_len: int, fraction: float) -> int:
    """Positions to replace: fraction of the length, half-up, never zero."""
    return max(1, math.floor(fraction * ref_len + 0.5))


def mutate(
    chromosome: Chromosome, pool: GramPool, cfg: GaConfig, rng: random.Random
) -> Chromosome:
    """Replace a fixed number of distinct positions with fresh pool draws."""
    if len(pool) == 0:
        raise ValueError("cannot mutate with an empty gram pool")
    length = len(chromosome.grams)
    count = mutation_count(length, cfg.mutation_fraction)
    grams = list(chromosome.grams)
    for pos in rng.sample(range(length), count):
        grams[pos] = pool.grams[rng.randrange(len(pool.grams))]
    return Chromosome(tuple(grams))


def fitness(chromosome: Chromosome, sample: FitnessSample, partitions: int) -> float:
    """Mean absolute error of signature similarity against the sample oracle."""
    ref = ReferenceText(chromosome.grams, partitions)
    return mean_signature_error(signature_matrix(sample.documents, ref), sample.oracle)


def _select(chromosomes: list[Chromosome], size: int) -> list[Chromosome]:
    return sorted(chromosomes, key=lambda c: (c.fitness, c.content_hash()))[:size]


def _stats(generation: int, population: list[Chromosome], elapsed: float) -> GenerationStats:
    fits = [c.fitness for c in population]
    return GenerationStats(generation, fits[0], math.fsum(fits) / len(fits), elapsed)


def evolve(corpus: Sequence[Document], cfg: GaConfig) -> EvolveResult:
    """Run the full search and return the best chromosome plus history.

    All randomness comes from one sequential stream seeded by
    ``cfg.rng_seed``: the fitness sample is drawn once, the population is
    seeded from the top tf-idf pool, and each generation pairs parents at
    random, crosses every pair, mutates every offspring, and keeps the
    best ``population_size`` of parents plus offspring. History records
    generation 0 (the scored initial population) onward; the run stops at
    ``max_generations`` or once best fitness reaches ``fitness_threshold``.
    """
    corpus = list(corpus)
    if len(corpus) < cfg.sample_size:
        raise ValueError(
            f"corpus has {len(corpus)} documents, need at least sample_size={cfg.sample_size}"
        )
    rng = random.Random(cfg.rng_seed)
    pool = top_k(score_grams(corpus), cfg.pool_size)
    sample = draw_fitness_sample(corpus, cfg.sample_size, rng)

    start = time.perf_counter()
    population = init_population(pool, cfg, rng)
    for chromosome in population:
        chromosome.fitness = fitness(chromosome, sample, cfg.partitions)
    population = _select(population, cfg.population_size)
    history = [_stats(0, population, time.perf_counter() - start)]

    for generation in range(1, cfg.max_generations + 1):
        if history[-1].best_mae <= cfg.fitness_threshold:
            break
        start = time.perf_counter()
        order = list(range(len(population)))
        rng.shuffle(order)
        offspring: list[Chromosome] = []
        for k in range(0, len(order) - 1, 2):
            first, second = crossover(population[order[k]], population[order[k + 1]], rng)
            offspring.append(mutate(first, pool, cfg, rng))
            offspring.append(mutate(second, pool, cfg, rng))
        for chromosome in offspring:
            chromosome.fitness = fitness(chromosome, sample, cfg.partitions)
        population = _select(population + offspring, cfg.population_size)
        history.append(_stats(generation, population, time.perf_counter() - start))

    return EvolveResult(population[0], tuple(history), pool, sample)
