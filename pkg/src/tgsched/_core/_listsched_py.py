"""Pure-Python list-scheduling kernel.

Fallback used when the compiled extension is unavailable (or when
TGSCHED_PURE_PYTHON is set).  Must stay behaviorally identical to
``_listsched.pyx``; the test suite cross-checks both on random instances.
"""

from __future__ import annotations

from heapq import heappop, heappush

import numpy as np


def decode_kernel(genes, costs, pred_ptr, pred_src, pred_comm, succ_ptr, succ_dst, nprocs):
    """Schedule every task in strict gene-priority order.

    Repeatedly places the ready task with the largest gene value (ties go to
    the smallest task id) on processor ``gene % nprocs`` at the earliest
    feasible time; no idle-slot backfilling.  Returns int64 arrays
    ``(proc, start, finish)`` and the makespan.
    """
    genes = genes.tolist()
    costs = costs.tolist()
    pred_ptr = pred_ptr.tolist()
    pred_src = pred_src.tolist()
    pred_comm = pred_comm.tolist()
    succ_ptr = succ_ptr.tolist()
    succ_dst = succ_dst.tolist()

    k = len(genes)
    pending = [pred_ptr[t + 1] - pred_ptr[t] for t in range(k)]
    proc = [0] * k
    start = [0] * k
    finish = [0] * k
    avail = [0] * nprocs

    # Heap keyed by (-gene, id): pop order is largest gene, then smallest id.
    ready: list[tuple[int, int]] = []
    for t in range(k):
        if pending[t] == 0:
            heappush(ready, (-genes[t], t))

    makespan = 0
    for _ in range(k):
        _, t = heappop(ready)
        p = genes[t] % nprocs
        st = avail[p]
        for e in range(pred_ptr[t], pred_ptr[t + 1]):
            u = pred_src[e]
            arrival = finish[u] + (pred_comm[e] if proc[u] != p else 0)
            if arrival > st:
                st = arrival
        fin = st + costs[t]
        proc[t] = p
        start[t] = st
        finish[t] = fin
        avail[p] = fin
        if fin > makespan:
            makespan = fin
        for e in range(succ_ptr[t], succ_ptr[t + 1]):
            v = succ_dst[e]
            pending[v] -= 1
            if pending[v] == 0:
                heappush(ready, (-genes[v], v))

    return (
        np.asarray(proc, dtype=np.int64),
        np.asarray(start, dtype=np.int64),
        np.asarray(finish, dtype=np.int64),
        makespan,
    )
