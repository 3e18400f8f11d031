# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: language_level=3
"""Compiled list-scheduling kernel.

Same contract as ``_listsched_py.decode_kernel``; this is the hot loop of
every fitness evaluation, so it runs as plain C over int64 memoryviews.
"""

import numpy as np


def decode_kernel(genes_in, costs_in, pred_ptr_in, pred_src_in, pred_comm_in,
                  succ_ptr_in, succ_dst_in, int nprocs):
    cdef long long[::1] genes = genes_in
    cdef long long[::1] costs = costs_in
    cdef long long[::1] pred_ptr = pred_ptr_in
    cdef long long[::1] pred_src = pred_src_in
    cdef long long[::1] pred_comm = pred_comm_in
    cdef long long[::1] succ_ptr = succ_ptr_in
    cdef long long[::1] succ_dst = succ_dst_in

    cdef Py_ssize_t k = genes.shape[0]
    proc_arr = np.zeros(k, dtype=np.int64)
    start_arr = np.zeros(k, dtype=np.int64)
    finish_arr = np.zeros(k, dtype=np.int64)
    pending_arr = np.zeros(k, dtype=np.int64)
    ready_arr = np.zeros(k, dtype=np.uint8)
    avail_arr = np.zeros(nprocs, dtype=np.int64)

    cdef long long[::1] proc = proc_arr
    cdef long long[::1] start = start_arr
    cdef long long[::1] finish = finish_arr
    cdef long long[::1] pending = pending_arr
    cdef unsigned char[::1] ready = ready_arr
    cdef long long[::1] avail = avail_arr

    cdef Py_ssize_t t, e, placed
    cdef long long best, p, st, arrival, fin, v, makespan

    with nogil:
        for t in range(k):
            pending[t] = pred_ptr[t + 1] - pred_ptr[t]
            if pending[t] == 0:
                ready[t] = 1

        makespan = 0
        for placed in range(k):
            # largest gene wins; the ascending scan keeps the smallest id on ties
            best = -1
            for t in range(k):
                if ready[t] and (best < 0 or genes[t] > genes[best]):
                    best = t
            p = genes[best] % nprocs
            st = avail[p]
            for e in range(pred_ptr[best], pred_ptr[best + 1]):
                arrival = finish[pred_src[e]]
                if proc[pred_src[e]] != p:
                    arrival += pred_comm[e]
                if arrival > st:
                    st = arrival
            fin = st + costs[best]
            proc[best] = p
            start[best] = st
            finish[best] = fin
            avail[p] = fin
            if fin > makespan:
                makespan = fin
            ready[best] = 0
            for e in range(succ_ptr[best], succ_ptr[best + 1]):
                v = succ_dst[e]
                pending[v] -= 1
                if pending[v] == 0:
                    ready[v] = 1

    return proc_arr, start_arr, finish_arr, int(makespan)
