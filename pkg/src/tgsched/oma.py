"""Learning-automata refinement of chromosomes.

Each chromosome becomes an automaton: every gene is an action whose memory
depth records how much confidence the search has in its current value.
Depth 1 is the boundary state, depth N (the memory depth) is the innermost
state.  One step proposes a fresh uniform value for one uniform gene and
compares makespans:

* strictly better: the proposal is accepted and the gene's depth grows by
  one (capped at N) -- a reward strengthens the gene;
* not better, depth > 1: the proposal is dropped and the depth shrinks by
  one -- a penalty weakens the gene;
* not better, depth already 1: the gene has run out of confidence and is
  replaced by the proposal even though it is not better, keeping depth 1.
  This is the escape mechanism that lets the pool leave local optima.

A sweep gives every automaton in the pool exactly one step.  Each step in a
sweep draws from its own substream (indexed by pool position), so sweep
results do not depend on processing order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import TaskGraph
from .rng import Xoshiro256StarStar, substream_seed
from .schedule import evaluate_makespan, gene_range


@dataclass(frozen=True)
class Automaton:
    genes: np.ndarray
    depths: np.ndarray  # int64 in [1, memory_depth], one per gene
    memory_depth: int
    makespan: int

    def __post_init__(self):
        if self.memory_depth < 1:
            raise ValueError("memory depth must be >= 1")
        if len(self.depths) != len(self.genes):
            raise ValueError("one depth per gene required")


def from_chromosome(genes: np.ndarray, g: TaskGraph, nprocs: int,
                    memory_depth: int, makespan: int | None = None) -> Automaton:
    """Wrap a chromosome: genes copied, every depth at the boundary (1).

    Pass ``makespan`` when it is already known to skip the evaluation.
    """
    if makespan is None:
        makespan = evaluate_makespan(genes, g, nprocs)
    return Automaton(
        genes=np.array(genes, dtype=np.int64),
        depths=np.ones(len(genes), dtype=np.int64),
        memory_depth=memory_depth,
        makespan=makespan,
    )


def to_chromosome(a: Automaton) -> np.ndarray:
    return a.genes.copy()


def apply_feedback(a: Automaton, index: int, value: int,
                   candidate_makespan: int) -> Automaton:
    """Deterministic state transition for one evaluated proposal.

    ``value`` is the proposed gene value at ``index`` and
    ``candidate_makespan`` the makespan of the chromosome with that single
    gene changed.  Exposed separately from la_step so the transition rules
    can be tested exhaustively without a generator.
    """
    depth = int(a.depths[index])
    if candidate_makespan < a.makespan:  # reward
        genes = a.genes.copy()
        genes[index] = value
        depths = a.depths.copy()
        depths[index] = min(depth + 1, a.memory_depth)
        return Automaton(genes, depths, a.memory_depth, candidate_makespan)
    if depth > 1:  # penalty: weaken, keep the current value
        depths = a.depths.copy()
        depths[index] = depth - 1
        return Automaton(a.genes, depths, a.memory_depth, a.makespan)
    # penalty at the boundary: the proposal replaces the gene anyway
    genes = a.genes.copy()
    genes[index] = value
    depths = a.depths.copy()
    depths[index] = 1
    return Automaton(genes, depths, a.memory_depth, candidate_makespan)


def la_step(a: Automaton, g: TaskGraph, nprocs: int,
            rng: Xoshiro256StarStar) -> Automaton:
    """One proposal on one uniform gene with one uniform candidate value."""
    k = len(a.genes)
    index = rng.randbelow(k)
    value = rng.randbelow(gene_range(k, nprocs))
    candidate = a.genes.copy()
    candidate[index] = value
    return apply_feedback(a, index, value, evaluate_makespan(candidate, g, nprocs))


def la_sweep(pool: list[Automaton], g: TaskGraph, nprocs: int,
             rng: Xoshiro256StarStar) -> list[Automaton]:
    """One step for every automaton, each on its own derived substream."""
    key = rng.next_raw()
    return [
        la_step(a, g, nprocs, Xoshiro256StarStar(substream_seed(key, i)))
        for i, a in enumerate(pool)
    ]
