"""Genetic operators over scheduling chromosomes.

Fitness of a schedule with makespan m is 1/m, so shorter schedules are
fitter.  Selection never needs the reciprocal though; the engine compares
raw makespans, which is equivalent and exact.

The crossover is weight-mapping crossover (WMX): a two-point crossover
where the segment received from the other parent is re-ordered so that its
value-rank pattern matches the receiving parent's own segment.  Mutation
swaps the gene values of two distinct positions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graph import TaskGraph
from .rng import Xoshiro256StarStar
from .schedule import evaluate_makespan, gene_range


@dataclass(frozen=True)
class GAConfig:
    popsize: int = 100
    crossover_rate: float = 0.7
    mutation_rate: float = 0.3
    elite_fraction: float = 0.1
    seed: int = 0

    def __post_init__(self):
        if self.popsize < 1:
            raise ValueError("popsize must be >= 1")
        for name in ("crossover_rate", "mutation_rate", "elite_fraction"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must be in [0, 1]")

    @property
    def elite_count(self) -> int:
        """Number of members copied unchanged into the next generation."""
        count = -(-self.elite_fraction * self.popsize // 1)  # ceil
        return min(self.popsize, int(count))


@dataclass(frozen=True)
class Individual:
    genes: np.ndarray
    makespan: int


@dataclass(frozen=True)
class Population:
    members: tuple[Individual, ...]
    generation: int


def fitness(makespan: int) -> Fraction:
    """1 / makespan.  Degenerate all-zero-cost instances have no fitness."""
    if makespan <= 0:
        raise ValueError("degenerate instance: makespan must be positive")
    return Fraction(1, makespan)


def random_chromosome(k: int, nprocs: int, rng: Xoshiro256StarStar) -> np.ndarray:
    """Uniform chromosome: k independent draws from [0, gene_range)."""
    bound = gene_range(k, nprocs)
    return np.fromiter((rng.randbelow(bound) for _ in range(k)), dtype=np.int64, count=k)


def _segment_rank_order(segment: np.ndarray) -> np.ndarray:
    """Positions of the segment sorted by descending value.

    Position order breaks ties, so rank 1 (the largest value) goes to the
    earliest of several equal maxima, and so on down.
    """
    # stable sort on negated values == descending with ascending-position ties
    return np.argsort(-segment, kind="stable")


def wmx_crossover(p1: np.ndarray, p2: np.ndarray, cut: tuple[int, int]) -> tuple[np.ndarray, np.ndarray]:
    """Weight-mapping crossover on the segment [lo, hi).

    Each child keeps its own parent's genes outside the cut and receives the
    other parent's segment values inside it, re-ordered so their descending
    ranks land in the same positions as the receiving parent's own segment
    ranks.  With a strictly descending receiving segment the incoming values
    are therefore sorted descending.
    """
    lo, hi = cut
    k = len(p1)
    if len(p2) != k:
        raise ValueError("parents must have equal length")
    if not (0 <= lo < hi <= k):
        raise ValueError(f"cut {cut!r} is not a valid segment of [0, {k}]")

    def mapped_segment(pattern_seg: np.ndarray, value_seg: np.ndarray) -> np.ndarray:
        order = _segment_rank_order(pattern_seg)
        values_desc = np.sort(value_seg)[::-1]
        out = np.empty_like(value_seg)
        out[order] = values_desc
        return out

    c1 = p1.copy()
    c2 = p2.copy()
    c1[lo:hi] = mapped_segment(p1[lo:hi], p2[lo:hi])
    c2[lo:hi] = mapped_segment(p2[lo:hi], p1[lo:hi])
    return c1, c2


def draw_cut(k: int, rng: Xoshiro256StarStar) -> tuple[int, int]:
    """Two distinct cut positions, uniform over [0, k]; redrawn when equal."""
    while True:
        a = rng.randbelow(k + 1)
        b = rng.randbelow(k + 1)
        if a != b:
            return (a, b) if a < b else (b, a)


def swap_mutation(genes: np.ndarray, rng: Xoshiro256StarStar) -> np.ndarray:
    """Exchange the values of two distinct uniform positions.

    A length-1 chromosome has no distinct pair, so it is returned unchanged.
    """
    k = len(genes)
    out = genes.copy()
    if k < 2:
        return out
    i = rng.randbelow(k)
    j = rng.randbelow(k - 1)
    if j >= i:
        j += 1
    out[i], out[j] = out[j], out[i]
    return out


def initial_population(g: TaskGraph, nprocs: int, cfg: GAConfig,
                       rng: Xoshiro256StarStar) -> Population:
    """Generation 0: popsize uniform random chromosomes, all evaluated."""
    k = g.task_count
    members = []
    for _ in range(cfg.popsize):
        genes = random_chromosome(k, nprocs, rng)
        members.append(Individual(genes, evaluate_makespan(genes, g, nprocs)))
    return Population(members=tuple(members), generation=0)


def best_of(pop: Population) -> Individual:
    """Member with the smallest makespan; ties keep the earliest member."""
    return min(pop.members, key=lambda ind: ind.makespan)


def _tournament(members: tuple[Individual, ...], rng: Xoshiro256StarStar) -> Individual:
    # size-2 tournament, drawn with replacement; ties keep the first draw
    a = members[rng.randbelow(len(members))]
    b = members[rng.randbelow(len(members))]
    return b if b.makespan < a.makespan else a


def next_generation(pop: Population, cfg: GAConfig, g: TaskGraph, nprocs: int,
                    rng: Xoshiro256StarStar) -> Population:
    """One elitist generation.

    The ceil(elite_fraction * popsize) best members (stable order on ties)
    survive unchanged; the rest of the population is refilled with children
    of size-2 tournament parents, crossed with probability crossover_rate
    and mutated with probability mutation_rate.  Only new children are
    evaluated; elites keep their cached makespan.
    """
    k = g.task_count
    ranked = sorted(pop.members, key=lambda ind: ind.makespan)
    elites = ranked[: cfg.elite_count]
    offspring: list[Individual] = []
    want = cfg.popsize - len(elites)
    while len(offspring) < want:
        pa = _tournament(pop.members, rng)
        pb = _tournament(pop.members, rng)
        if rng.random() < cfg.crossover_rate:
            children = wmx_crossover(pa.genes, pb.genes, draw_cut(k, rng))
        else:
            children = (pa.genes.copy(), pb.genes.copy())
        for genes in children:
            if len(offspring) == want:
                break
            if rng.random() < cfg.mutation_rate:
                genes = swap_mutation(genes, rng)
            offspring.append(Individual(genes, evaluate_makespan(genes, g, nprocs)))
    return Population(
        members=tuple(elites) + tuple(offspring),
        generation=pop.generation + 1,
    )
