import random

import pytest

from refsig.ga import (
    Chromosome,
    GaConfig,
    crossover,
    draw_fitness_sample,
    evolve,
    fitness,
    init_population,
    mutate,
    mutation_count,
)
from refsig.reference import ReferenceText, sign, signature_similarity
from refsig.text import Document, corpus_grams, cosine
from refsig.tfidf import GramPool


def _word_salad_docs(count, seed, length=120):
    rng = random.Random(seed)
    alphabet = "abcdefghij "
    return [
        Document.from_raw(str(i), "".join(rng.choice(alphabet) for _ in range(length)))
        for i in range(count)
    ]


def _pool_of(grams):
    return GramPool(tuple(grams), len(grams))


def test_config_defaults():
    cfg = GaConfig()
    assert cfg.population_size == 100
    assert cfg.ref_len == 1000
    assert cfg.partitions == 150
    assert cfg.pool_size == 9000
    assert cfg.mutation_fraction == 0.10
    assert cfg.max_generations == 50
    assert cfg.sample_size == 100


def test_config_validation():
    with pytest.raises(ValueError):
        GaConfig(partitions=20, ref_len=10)
    with pytest.raises(ValueError):
        GaConfig(mutation_fraction=0.0)
    with pytest.raises(ValueError):
        GaConfig(sample_size=1)


def test_init_population_degenerate_pool():
    pool = _pool_of(["abc"])
    cfg = GaConfig(population_size=3, ref_len=5, partitions=2, pool_size=1, sample_size=2)
    population = init_population(pool, cfg, random.Random(0))
    assert len(population) == 3
    assert all(c.grams == ("abc",) * 5 for c in population)


def test_init_population_deterministic():
    pool = _pool_of(["abc", "bcd", "cde", "def"])
    cfg = GaConfig(population_size=4, ref_len=6, partitions=2, pool_size=4, sample_size=2)
    first = init_population(pool, cfg, random.Random(42))
    second = init_population(pool, cfg, random.Random(42))
    assert [c.grams for c in first] == [c.grams for c in second]
    assert all(set(c.grams) <= set(pool.grams) for c in first)


def test_init_population_rejects_empty_pool():
    cfg = GaConfig(population_size=2, ref_len=4, partitions=2, sample_size=2)
    with pytest.raises(ValueError):
        init_population(GramPool((), 1), cfg, random.Random(0))


def test_crossover_is_single_shared_cut():
    a = Chromosome(("g1.", "g2.", "g3.", "g4."))
    b = Chromosome(("h1.", "h2.", "h3.", "h4."))
    for seed in range(25):
        c1, c2 = crossover(a, b, random.Random(seed))
        assert len(c1.grams) == len(c2.grams) == 4
        cuts = [
            cut
            for cut in range(1, 4)
            if c1.grams == a.grams[:cut] + b.grams[cut:]
            and c2.grams == b.grams[:cut] + a.grams[cut:]
        ]
        assert cuts, "offspring are not a single shared cut of the parents"
        # every offspring mixes both parents
        assert set(c1.grams) & set(a.grams) and set(c1.grams) & set(b.grams)


def test_crossover_identical_parents_fixed_point():
    a = Chromosome(("abc", "bcd", "cde"))
    b = Chromosome(("abc", "bcd", "cde"))
    for seed in range(10):
        c1, c2 = crossover(a, b, random.Random(seed))
        assert c1.grams == a.grams and c2.grams == a.grams


def test_crossover_rejects_length_mismatch():
    with pytest.raises(ValueError):
        crossover(Chromosome(("abc",)), Chromosome(("abc", "bcd")), random.Random(0))


def test_mutation_count_rule():
    assert mutation_count(1000, 0.10) == 100
    assert mutation_count(10, 0.10) == 1
    assert mutation_count(5, 0.10) == 1  # floor of one replacement
    assert mutation_count(15, 0.10) == 2  # half-up rounding
    assert mutation_count(14, 0.10) == 1


def test_mutate_replaces_exact_positions():
    cfg = GaConfig(population_size=2, ref_len=1000, partitions=10, sample_size=2)
    original = Chromosome(("aaa",) * 1000)
    pool = _pool_of(["bbb", "ccc"])  # disjoint from the chromosome
    mutated = mutate(original, pool, cfg, random.Random(3))
    diffs = sum(1 for x, y in zip(original.grams, mutated.grams) if x != y)
    assert diffs == 100
    assert len(mutated.grams) == 1000
    assert original.grams == ("aaa",) * 1000  # input untouched


def test_mutate_short_chromosome_and_degenerate_pool():
    cfg = GaConfig(population_size=2, ref_len=10, partitions=2, sample_size=2)
    original = Chromosome(("aaa",) * 10)
    mutated = mutate(original, _pool_of(["bbb"]), cfg, random.Random(1))
    assert sum(1 for x, y in zip(original.grams, mutated.grams) if x != y) == 1
    # pool containing only the existing gram: content may be unchanged
    unchanged = mutate(original, _pool_of(["aaa"]), cfg, random.Random(1))
    assert unchanged.grams == original.grams


def test_pool_closure_through_operators():
    pool = _pool_of(["abc", "bcd", "cde", "def", "efg"])
    cfg = GaConfig(population_size=6, ref_len=8, partitions=2, pool_size=5, sample_size=2)
    rng = random.Random(11)
    population = init_population(pool, cfg, rng)
    for _ in range(5):
        a, b = rng.sample(population, 2)
        c1, c2 = crossover(a, b, rng)
        population.extend([mutate(c1, pool, cfg, rng), mutate(c2, pool, cfg, rng)])
    allowed = set(pool.grams)
    assert all(set(c.grams) <= allowed for c in population)


def test_fitness_single_pair_formula():
    docs = (Document.from_raw("0", "abcd"), Document.from_raw("1", "bcde"))
    sample = draw_fitness_sample(docs, 2, random.Random(0))
    chromosome = Chromosome(("abc", "bcd", "cde", "def"))
    got = fitness(chromosome, sample, partitions=2)
    ref = ReferenceText(chromosome.grams, 2)
    sim = signature_similarity(sign(docs[0], ref), sign(docs[1], ref))
    oracle = cosine(docs[0].vector, docs[1].vector)
    assert got == pytest.approx(abs(sim - oracle), abs=1e-15)


def test_fitness_zero_for_full_vocabulary_reference():
    docs = _word_salad_docs(10, seed=2, length=60)
    sample = draw_fitness_sample(docs, 10, random.Random(0))
    grams = corpus_grams(docs)
    chromosome = Chromosome(tuple(grams))
    assert fitness(chromosome, sample, partitions=len(grams)) <= 1e-9


def test_draw_fitness_sample_contract():
    docs = _word_salad_docs(6, seed=3)
    sample = draw_fitness_sample(docs, 4, random.Random(9))
    assert len(sample.documents) == 4
    assert len({d.id for d in sample.documents}) == 4
    assert sample.oracle.shape == (4, 4)
    with pytest.raises(ValueError):
        draw_fitness_sample(docs, 7, random.Random(0))


def _small_cfg(**overrides):
    base = dict(
        population_size=8,
        ref_len=20,
        partitions=4,
        pool_size=60,
        max_generations=6,
        sample_size=8,
        rng_seed=13,
    )
    base.update(overrides)
    return GaConfig(**base)


def test_evolve_deterministic():
    docs = _word_salad_docs(16, seed=4)
    first = evolve(docs, _small_cfg())
    second = evolve(docs, _small_cfg())
    assert first.best.grams == second.best.grams
    assert first.best.fitness == second.best.fitness
    # wall-clock differs; every recorded MAE must match bit for bit
    assert [(s.generation, s.best_mae, s.mean_mae) for s in first.history] == [
        (s.generation, s.best_mae, s.mean_mae) for s in second.history
    ]


def test_evolve_history_monotone_and_complete():
    docs = _word_salad_docs(16, seed=5)
    result = evolve(docs, _small_cfg())
    history = result.history
    assert [s.generation for s in history] == list(range(len(history)))
    assert len(history) == 7  # generation 0 plus max_generations
    for earlier, later in zip(history, history[1:]):
        assert later.best_mae <= earlier.best_mae
    assert result.best.fitness == history[-1].best_mae


def test_evolve_length_conservation_and_pool_closure():
    docs = _word_salad_docs(16, seed=6)
    result = evolve(docs, _small_cfg())
    assert len(result.best.grams) == 20
    assert set(result.best.grams) <= set(result.pool.grams)


def test_evolve_early_stop():
    docs = _word_salad_docs(16, seed=7)
    result = evolve(docs, _small_cfg(fitness_threshold=1.0))
    assert len(result.history) == 1  # initial population already meets the bar


def test_evolve_rejects_small_corpus():
    docs = _word_salad_docs(4, seed=8)
    with pytest.raises(ValueError):
        evolve(docs, _small_cfg())
