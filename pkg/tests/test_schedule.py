"""Chromosome decoding: worked examples, invariants, encoding semantics."""

import pytest

from daggen import random_dag
from tgsched.ga import random_chromosome
from tgsched.graph import TaskGraph
from tgsched.rng import Xoshiro256StarStar
from tgsched.schedule import (
    InvalidScheduleError,
    Schedule,
    check_schedule,
    decode,
    evaluate_makespan,
    gene_range,
    makespan,
    processor_of,
)


def diamond():
    return TaskGraph(
        costs=(1, 2, 3, 1),
        edges=((0, 1, 5), (0, 2, 5), (1, 3, 5), (2, 3, 5)),
    )


def test_gene_range():
    assert gene_range(9, 2) == 36
    assert gene_range(1, 1) == 2
    with pytest.raises(ValueError):
        gene_range(0, 2)


def test_processor_of():
    assert processor_of(15, 2) == 1
    assert processor_of(6, 3) == 0
    assert processor_of(0, 4) == 0
    with pytest.raises(ValueError):
        processor_of(-1, 2)
    with pytest.raises(ValueError):
        processor_of(3, 0)


class TestChainTiming:
    """Two-task chain, costs (2, 3), comm 4."""

    g = TaskGraph(costs=(2, 3), edges=((0, 1, 4),))

    def test_same_processor_skips_comm(self):
        s = decode([3, 1], self.g, 2)  # both genes odd: both on processor 1
        assert s.makespan == 5

    def test_cross_processor_pays_comm(self):
        s = decode([2, 1], self.g, 2)  # 0 on p0, 1 on p1
        assert s.starts[1] == 6
        assert s.makespan == 9


def test_diamond_hand_trace():
    """0 and 2 share a processor, 1 and 3 the other; priority(1) > priority(2).

    Placing 1 first forces it to wait out the cross-processor edge from 0;
    2 then rides the zero lag on 0's processor; 3 waits for 2's comm: 10.
    """
    s = decode([7, 6, 5, 2], diamond(), 2)
    assert s.starts == (0, 6, 1, 9)
    assert s.finishes == (1, 8, 4, 10)
    assert s.makespan == 10
    assert makespan(s) == 10


def test_strict_priority_has_no_backfill():
    """A low-priority ready task never slips into an earlier idle slot."""
    g = TaskGraph(costs=(5, 1, 2), edges=((0, 1, 10), (0, 2, 0)))
    # 0 on p0; 1 (priority 9) and 2 (priority 7) both on p1
    s = decode([2, 9, 7], g, 2)
    assert s.starts[1] == 15  # waits for the comm from 0
    assert s.starts[2] == 16  # appended after 1 despite p1 idling 5..15
    assert s.makespan == 18


def test_single_processor_makespan_is_total_cost():
    for seed in range(15):
        rng = Xoshiro256StarStar(seed)
        g = random_dag(rng, 10)
        genes = random_chromosome(10, 1, rng)
        assert evaluate_makespan(genes, g, 1) == sum(g.costs)


def test_chain_priority_permutation_is_irrelevant():
    """On a chain only assignments matter; swapping same-processor gene
    values of two tasks leaves the makespan unchanged."""
    rng = Xoshiro256StarStar(77)
    g = TaskGraph(
        costs=(3, 1, 4, 1, 5, 9),
        edges=tuple((i, i + 1, 2 + i) for i in range(5)),
    )
    for _ in range(50):
        genes = random_chromosome(6, 2, rng)
        base = evaluate_makespan(genes, g, 2)
        i = rng.randbelow(6)
        same = [j for j in range(6) if j != i and genes[j] % 2 == genes[i] % 2]
        if not same:
            continue
        j = same[rng.randbelow(len(same))]
        swapped = genes.copy()
        swapped[i], swapped[j] = swapped[j], swapped[i]
        assert evaluate_makespan(swapped, g, 2) == base


def test_decode_is_pure():
    g = diamond()
    genes = [7, 6, 5, 2]
    assert decode(genes, g, 2) == decode(genes, g, 2)


def test_decode_matches_evaluate_makespan():
    rng = Xoshiro256StarStar(4)
    for _ in range(40):
        g = random_dag(rng, 9)
        genes = random_chromosome(9, 3, rng)
        assert decode(genes, g, 3).makespan == evaluate_makespan(genes, g, 3)


def test_length_mismatch_raises():
    with pytest.raises(ValueError):
        decode([1, 2], diamond(), 2)
    with pytest.raises(ValueError):
        evaluate_makespan([1, 2, 3, 4, 5], diamond(), 2)


def test_random_schedules_satisfy_all_invariants():
    rng = Xoshiro256StarStar(99)
    for _ in range(300):
        k = 2 + rng.randbelow(11)
        nprocs = 1 + rng.randbelow(4)
        g = random_dag(rng, k, edge_prob=0.35)
        s = decode(random_chromosome(k, nprocs, rng), g, nprocs)
        check_schedule(s, g)


def test_check_schedule_catches_violations():
    g = diamond()
    good = decode([7, 6, 5, 2], g, 2)

    bad = Schedule(
        processors=good.processors,
        starts=good.starts,
        finishes=tuple(f + 1 for f in good.finishes),
        makespan=good.makespan,
        processor_count=2,
    )
    with pytest.raises(InvalidScheduleError):
        check_schedule(bad, g)  # finish != start + cost

    bad = Schedule(
        processors=(0, 0, 0, 0),
        starts=(0, 0, 1, 4),
        finishes=(1, 2, 4, 5),
        makespan=5,
        processor_count=2,
    )
    with pytest.raises(InvalidScheduleError):
        check_schedule(bad, g)  # 0 and 1 overlap on p0

    bad = Schedule(
        processors=(0, 1, 0, 0),
        starts=(0, 1, 1, 4),
        finishes=(1, 3, 4, 5),
        makespan=5,
        processor_count=2,
    )
    with pytest.raises(InvalidScheduleError):
        check_schedule(bad, g)  # edge (0,1) crosses processors without lag

    good_dict = dict(
        processors=good.processors,
        starts=good.starts,
        finishes=good.finishes,
        processor_count=2,
    )
    with pytest.raises(InvalidScheduleError):
        check_schedule(Schedule(makespan=good.makespan + 1, **good_dict), g)


def test_lanes_are_time_ordered():
    s = decode([7, 6, 5, 2], diamond(), 2)
    for row in s.lanes():
        assert row == sorted(row)
    lanes = s.lanes()
    assert lanes[1] == [(0, 1, 0), (1, 4, 2)]
    assert lanes[0] == [(6, 8, 1), (9, 10, 3)]
