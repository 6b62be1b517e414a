# cython: language_level=3, boundscheck=False, wraparound=False
"""Integer sweep kernel behind `interdicted_distances`.

Mirrors the pure-Python kernel step for step: same (key, arc index) heap
order, same removal-set growth, 64-bit integer arithmetic throughout.
Independence here is a threshold test — a set is independent iff its
accumulated weight stays at or below the vertex cap — which covers the
cardinality and budget rules after exact integer scaling done by the
caller.
"""

from libc.stdlib cimport free, malloc

cdef struct Item:
    long long key
    int arc


cdef inline bint _less(long long k1, int a1, long long k2, int a2) noexcept nogil:
    if k1 != k2:
        return k1 < k2
    return a1 < a2


cdef inline void _push(Item* heap, int* size, long long key, int arc) noexcept nogil:
    cdef int i = size[0]
    cdef int parent
    size[0] += 1
    while i > 0:
        parent = (i - 1) >> 1
        if _less(key, arc, heap[parent].key, heap[parent].arc):
            heap[i] = heap[parent]
            i = parent
        else:
            break
    heap[i].key = key
    heap[i].arc = arc


cdef inline Item _pop(Item* heap, int* size) noexcept nogil:
    cdef Item top = heap[0]
    cdef Item last
    cdef int i = 0
    cdef int child, limit
    size[0] -= 1
    limit = size[0]
    last = heap[limit]
    while True:
        child = 2 * i + 1
        if child >= limit:
            break
        if child + 1 < limit and _less(
            heap[child + 1].key, heap[child + 1].arc,
            heap[child].key, heap[child].arc,
        ):
            child += 1
        if _less(heap[child].key, heap[child].arc, last.key, last.arc):
            heap[i] = heap[child]
            i = child
        else:
            break
    heap[i] = last
    return top


_INF = float("inf")


def sweep(int n, int t, tails, heads, weights, inc, bweights, bcaps):
    """One full sweep.  All costs are pre-scaled 64-bit integers; `inc` is
    the per-vertex list of incoming arcs.  Returns (phi, per-vertex blocked
    arc lists, witness, finalization order); vertices never finalized get
    infinite phi and witness None."""
    cdef int m = len(tails)
    cdef int u, v, e, i, j, osize, hsize
    cdef long long key
    cdef Item item

    cdef int* ctail = <int*> malloc(m * sizeof(int))
    cdef long long* cw = <long long*> malloc(m * sizeof(long long))
    cdef long long* cbw = <long long*> malloc(m * sizeof(long long))
    cdef long long* cbc = <long long*> malloc(n * sizeof(long long))
    cdef int* inc_start = <int*> malloc((n + 1) * sizeof(int))
    cdef int* inc_arc = <int*> malloc(m * sizeof(int))
    cdef char* finalized = <char*> malloc(n * sizeof(char))
    cdef char* bflag = <char*> malloc(m * sizeof(char))
    cdef long long* phi = <long long*> malloc(n * sizeof(long long))
    cdef long long* acc = <long long*> malloc(n * sizeof(long long))
    cdef int* witness = <int*> malloc(n * sizeof(int))
    cdef int* order = <int*> malloc(n * sizeof(int))
    cdef Item* heap = <Item*> malloc((m if m > 0 else 1) * sizeof(Item))
    if (ctail == NULL or cw == NULL or cbw == NULL or cbc == NULL
            or inc_start == NULL or inc_arc == NULL or finalized == NULL
            or bflag == NULL or phi == NULL or acc == NULL
            or witness == NULL or order == NULL or heap == NULL):
        free(ctail); free(cw); free(cbw); free(cbc); free(inc_start)
        free(inc_arc); free(finalized); free(bflag); free(phi); free(acc)
        free(witness); free(order); free(heap)
        raise MemoryError()

    try:
        for e in range(m):
            ctail[e] = tails[e]
            cw[e] = weights[e]
            cbw[e] = bweights[e]
            bflag[e] = 0
        j = 0
        for v in range(n):
            inc_start[v] = j
            for e in inc[v]:
                inc_arc[j] = e
                j += 1
        inc_start[n] = j
        for u in range(n):
            cbc[u] = bcaps[u]
            finalized[u] = 0
            phi[u] = -1
            acc[u] = 0
            witness[u] = -1

        finalized[t] = 1
        phi[t] = 0
        order[0] = t
        osize = 1
        hsize = 0
        for i in range(inc_start[t], inc_start[t + 1]):
            e = inc_arc[i]
            if not finalized[ctail[e]]:
                _push(heap, &hsize, cw[e], e)

        while hsize > 0:
            item = _pop(heap, &hsize)
            e = item.arc
            u = ctail[e]
            if finalized[u]:
                continue
            if acc[u] + cbw[e] <= cbc[u]:
                acc[u] += cbw[e]
                bflag[e] = 1
            else:
                phi[u] = item.key
                witness[u] = e
                finalized[u] = 1
                order[osize] = u
                osize += 1
                key = item.key
                for i in range(inc_start[u], inc_start[u + 1]):
                    e = inc_arc[i]
                    if not finalized[ctail[e]]:
                        _push(heap, &hsize, cw[e] + key, e)

        phi_out = [phi[u] if finalized[u] else _INF for u in range(n)]
        blocked_out = [[] for _ in range(n)]
        for e in range(m):
            if bflag[e]:
                blocked_out[ctail[e]].append(e)
        witness_out = [witness[u] if witness[u] >= 0 else None for u in range(n)]
        order_out = [order[i] for i in range(osize)]
        return phi_out, blocked_out, witness_out, order_out
    finally:
        free(ctail); free(cw); free(cbw); free(cbc); free(inc_start)
        free(inc_arc); free(finalized); free(bflag); free(phi); free(acc)
        free(witness); free(order); free(heap)
