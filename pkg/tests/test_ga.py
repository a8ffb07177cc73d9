from collections import Counter
from dataclasses import fields

import numpy as np
import pytest

from ogtc import ga
from ogtc.blp import feasible, transmits
from ogtc.errors import BadParams
from ogtc.generators import generate
from ogtc.problems import Problem, make_problem


@pytest.fixture(scope="module")
def packing():
    g = generate("random-packing", {"n": 30, "m": 12}, seed=4)
    return make_problem("packing", g.instance)


class TestConfig:
    @pytest.mark.parametrize(
        "kw",
        [{"pop_size": 1}, {"mutation_rate": 1.5}, {"crossover": "two-point"}, {"generations": -1}],
    )
    def test_rejects(self, kw):
        with pytest.raises(BadParams):
            ga.GaConfig(**kw)


class TestPopulation:
    def test_single_member(self, packing):
        pop = ga.init_population(packing, 1, seed=0)
        assert len(pop) == 1 and packing.feasible(pop[0])

    def test_deterministic(self, packing):
        assert ga.init_population(packing, 8, seed=3) == ga.init_population(packing, 8, seed=3)

    def test_packing_sampler_feasible(self, packing):
        A = packing.data.dense()
        for x in ga.init_population(packing, 50, seed=1):
            assert np.all(A @ np.array(x) <= 1)


class TestUniformCrossover:
    def test_identical_parents(self):
        assert ga.uniform_crossover((1, 0, 1), (1, 0, 1), 0) == (1, 0, 1)

    def test_transmits(self):
        rng = np.random.default_rng(0)
        p1, p2 = (1, 0, 1, 0, 1), (0, 0, 1, 1, 0)
        for _ in range(200):
            assert transmits(ga.uniform_crossover(p1, p2, rng), p1, p2)

    def test_all_patterns_appear(self):
        rng = np.random.default_rng(9)
        counts = Counter(ga.uniform_crossover((1, 0, 1), (0, 1, 1), rng)[:2] for _ in range(10_000))
        assert len(counts) == 4
        # each pattern has mean 2500 and standard deviation about 43
        assert all(2200 < v < 2800 for v in counts.values())


class TestRun:
    def test_zero_budget(self, packing):
        run = ga.run(packing, ga.GaConfig(pop_size=6, generations=0, seed=2))
        pop = ga.init_population(packing, 6, np.random.default_rng(2))
        assert run.best == (max(packing.objective(x) for x in pop),)
        assert len(run.rows()) == 1

    @pytest.mark.parametrize("kind", [ga.OPTIMIZED, ga.UNIFORM])
    def test_elitism_and_feasibility(self, packing, kind):
        run = ga.run(packing, ga.GaConfig(pop_size=10, generations=8, crossover=kind, seed=5))
        assert all(b >= a for a, b in zip(run.best, run.best[1:]))
        assert feasible(packing.data, run.best_genotype)
        assert packing.objective(run.best_genotype) == run.best[-1]
        assert run.evaluations == 10 + 10 * 8

    def test_reproducible(self, packing):
        cfg = ga.GaConfig(pop_size=8, generations=5, crossover=ga.UNIFORM, mutation_rate=0.05, seed=7)
        assert ga.run(packing, cfg) == ga.run(packing, cfg)

    def test_optimized_offspring_dominate(self, packing):
        seen = []

        class Spy(Problem):
            def crossover(self, p1, p2, method="auto"):
                res = super().crossover(p1, p2, method)
                seen.append(res.value >= max(self.objective(p1), self.objective(p2)))
                return res

        spy = Spy(**{f.name: getattr(packing, f.name) for f in fields(Problem)})
        ga.run(spy, ga.GaConfig(pop_size=6, generations=4, seed=1))
        assert len(seen) == 24 and all(seen)

    def test_minimisation(self):
        g = generate("random-graph", {"n": 20, "p": 0.3, "target": "vertex-cover"}, seed=2)
        problem = make_problem("vertex-cover", g.instance)
        run = ga.run(problem, ga.GaConfig(pop_size=8, generations=6, seed=0))
        assert all(b <= a for a, b in zip(run.best, run.best[1:]))

    def test_mean_is_exact(self, packing):
        run = ga.run(packing, ga.GaConfig(pop_size=7, generations=2, seed=3))
        assert all(m.denominator in (1, 7) for m in run.mean)
