"""Steady-state genetic algorithm comparing optimized and uniform crossover.

Binary tournament selection, one offspring at a time, replace-worst with
duplicate suppression. All randomness comes from the seed in ``GaConfig``.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .blp import MAX, better, transmits
from .errors import BadParams, InternalInvariantError, SamplerFailed
from .problems import Problem

OPTIMIZED = "optimized"
UNIFORM = "uniform"


@dataclass(frozen=True)
class GaConfig:
    pop_size: int = 20
    generations: int = 10
    crossover: str = OPTIMIZED
    mutation_rate: float = 0.0
    seed: int = 0
    retries: int = 20  # uniform-crossover rejection attempts before falling back

    def __post_init__(self):
        if self.pop_size < 2:
            raise BadParams(f"population size must be at least 2, got {self.pop_size}")
        if self.generations < 0:
            raise BadParams(f"generation budget must be nonnegative, got {self.generations}")
        if self.crossover not in (OPTIMIZED, UNIFORM):
            raise BadParams(f"crossover must be {OPTIMIZED!r} or {UNIFORM!r}, got {self.crossover!r}")
        if not 0.0 <= self.mutation_rate <= 1.0:
            raise BadParams(f"mutation rate {self.mutation_rate} outside [0, 1]")
        if self.retries < 0:
            raise BadParams("retries must be nonnegative")


@dataclass(frozen=True)
class GaRun:
    best: tuple  # per generation, generation 0 is the initial population
    mean: tuple  # per generation, exact Fractions
    best_genotype: tuple
    seed: int
    evaluations: int
    wall_clock: float = field(default=0.0, compare=False)

    def rows(self):
        """``(generation, best, mean)`` with the mean rounded half-to-even to an integer."""
        return [(g, b, round(m)) for g, (b, m) in enumerate(zip(self.best, self.mean))]


def _rng(seed_or_rng):
    if isinstance(seed_or_rng, np.random.Generator):
        return seed_or_rng
    return np.random.default_rng(seed_or_rng)


def init_population(problem: Problem, size: int, seed) -> list:
    if size < 1:
        raise BadParams("population size must be positive")
    rng = _rng(seed)
    pop = []
    for _ in range(size):
        x = problem.sampler(rng)
        if not problem.feasible(x):
            raise SamplerFailed("sampler produced an infeasible genotype")
        pop.append(tuple(x))
    return pop


def uniform_crossover(p1, p2, seed_or_rng) -> tuple:
    if len(p1) != len(p2):
        raise BadParams("parents differ in length")
    rng = _rng(seed_or_rng)
    pick = rng.integers(0, 2, len(p1))
    return tuple(int(b if k else a) for a, b, k in zip(p1, p2, pick))


class _Population:
    def __init__(self, problem: Problem, genotypes):
        self.sense = problem.sense
        self.members = list(genotypes)
        self.values = [problem.objective(x) for x in self.members]
        self.present = {}
        for x in self.members:
            self.present[x] = self.present.get(x, 0) + 1

    def _key(self, v):
        return v if self.sense == MAX else -v

    def best_index(self) -> int:
        return max(range(len(self.values)), key=lambda i: (self._key(self.values[i]), -i))

    def worst_index(self) -> int:
        # last among equally bad members
        return min(range(len(self.values)), key=lambda i: (self._key(self.values[i]), -i))

    def stats(self):
        i = self.best_index()
        return self.values[i], Fraction(sum(self.values), len(self.values))

    def insert(self, x, value) -> bool:
        if self.present.get(x):
            return False
        w = self.worst_index()
        if better(self.sense, self.values[w], value):
            return False
        old = self.members[w]
        self.present[old] -= 1
        self.members[w], self.values[w] = x, value
        self.present[x] = 1
        return True


def _tournament(pop: _Population, rng) -> int:
    i, j = rng.integers(0, len(pop.members), 2).tolist()
    return j if better(pop.sense, pop.values[j], pop.values[i]) else i


def _mutate(problem: Problem, x, rate, rng):
    flips = rng.random(len(x)) < rate
    if not flips.any():
        return x
    y = tuple(int(v ^ f) for v, f in zip(x, flips))
    return y if problem.feasible(y) else x  # rejection keeps the unmutated child


def run(problem: Problem, cfg: GaConfig) -> GaRun:
    start = time.perf_counter()
    rng = np.random.default_rng(cfg.seed)
    pop = _Population(problem, init_population(problem, cfg.pop_size, rng))
    evaluations = cfg.pop_size
    best, mean = pop.stats()
    best_traj, mean_traj = [best], [mean]

    for _ in range(cfg.generations):
        for _ in range(cfg.pop_size):
            i, j = _tournament(pop, rng), _tournament(pop, rng)
            p1, p2 = pop.members[i], pop.members[j]
            v1, v2 = pop.values[i], pop.values[j]
            if cfg.crossover == OPTIMIZED:
                child = problem.crossover(p1, p2).offspring
                value = problem.objective(child)
                if not problem.feasible(child) or not transmits(child, p1, p2):
                    raise InternalInvariantError("optimized crossover broke feasibility or transmission")
                if better(problem.sense, v1, value) or better(problem.sense, v2, value):
                    raise InternalInvariantError("optimized offspring is worse than a parent")
            else:
                child = None
                for _ in range(cfg.retries):
                    cand = uniform_crossover(p1, p2, rng)
                    if problem.feasible(cand):
                        child = cand
                        break
                if child is None:
                    child = p2 if better(problem.sense, v2, v1) else p1
            if cfg.mutation_rate > 0:
                child = _mutate(problem, child, cfg.mutation_rate, rng)
            value = problem.objective(child)
            evaluations += 1
            pop.insert(child, value)
        best, mean = pop.stats()
        best_traj.append(best)
        mean_traj.append(mean)

    return GaRun(
        tuple(best_traj),
        tuple(mean_traj),
        pop.members[pop.best_index()],
        cfg.seed,
        evaluations,
        time.perf_counter() - start,
    )
