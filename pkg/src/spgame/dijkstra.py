"""Worst-case shortest distances to a target under per-vertex blocking.

`interdicted_distances` runs a Dijkstra-like sweep maintaining, for every
unfinalized vertex, the set of outgoing arcs the blocker would remove.
Arcs enter a heap keyed by (arc cost + finalized head distance, arc index);
when the cheapest arc out of an unfinalized vertex cannot be added to the
vertex's removal set without making it dependent, that arc's key is the
vertex's final value: the blocker can force the mover to pay at least this
much, and no admissible removal can force more.  Vertices never finalized
get value infinity — there the blocker can cut the target off entirely.

The sweep performs O(|E|) heap operations and one oracle query per
extraction.  Ties are broken by arc index, so results are deterministic.

Two interchangeable kernels exist: a pure-Python one (exact rationals, any
oracle) and a compiled one (integer-scaled costs, threshold oracles).  They
produce identical output and are cross-checked in the test suite.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Callable, Sequence

from .costs import INF, Cost, is_finite
from .errors import InputError, InternalInvariantError, OracleViolation
from .graph import Digraph
from .independence import IndependenceOracle, sp_blocking_oracle

try:  # compiled kernel is optional; everything works without it
    from . import _fastcore
except ImportError:  # pragma: no cover - depends on build environment
    _fastcore = None

HAVE_NATIVE = _fastcore is not None

# keys may not exceed this after integer scaling, else the compiled kernel
# is skipped in favor of the exact Python one
_NATIVE_KEY_LIMIT = 1 << 62


@dataclass(frozen=True)
class Potentials:
    """Result of a sweep: per-vertex worst-case distance to the target,
    per-vertex removal set the blocker builds, the arc whose key finalized
    each finite vertex, and the finalization order."""

    target: int
    potential: tuple[Cost, ...]
    blocked: tuple[frozenset, ...]
    witness: tuple[int | None, ...]
    order: tuple[int, ...] = field(repr=False, default=())

    @property
    def infinite_vertices(self) -> frozenset:
        return frozenset(
            u for u, p in enumerate(self.potential) if not is_finite(p)
        )

    @property
    def finite_vertices(self) -> frozenset:
        return frozenset(
            u for u, p in enumerate(self.potential) if is_finite(p)
        )

    def __getitem__(self, u: int) -> Cost:
        return self.potential[u]


def _python_kernel(graph, t, weights, is_independent):
    n = graph.n
    finalized = [False] * n
    value: list = [None] * n
    blocked = [set() for _ in range(n)]
    witness: list = [None] * n
    order = [t]
    value[t] = 0
    finalized[t] = True
    tails = graph.tails
    heap = [(weights[e], e) for e in graph.inc[t] if not finalized[tails[e]]]
    heapq.heapify(heap)
    while heap:
        key, e = heapq.heappop(heap)
        u = tails[e]
        if finalized[u]:
            continue
        grown = blocked[u] | {e}
        if is_independent(u, grown):
            blocked[u] = grown
        else:
            value[u] = key
            witness[u] = e
            finalized[u] = True
            order.append(u)
            for e2 in graph.inc[u]:
                if not finalized[tails[e2]]:
                    heapq.heappush(heap, (weights[e2] + key, e2))
    potential = tuple(value[u] if finalized[u] else INF for u in range(n))
    return potential, blocked, witness, order


def _scaled_ints(values) -> tuple[list[int], int]:
    # ints and integral fractions skip the lcm work entirely
    if all(type(v) is int for v in values):
        return list(values), 1
    if all(v.denominator == 1 for v in values):
        return [int(v) for v in values], 1
    fracs = [Fraction(v) for v in values]
    scale = lcm(*(f.denominator for f in fracs)) if fracs else 1
    out = [int(f * scale) for f in fracs]
    return out, scale


def _try_native(graph, t, weights, oracle, all_int=False):
    if _fastcore is None or not isinstance(oracle, IndependenceOracle):
        return None
    params = oracle.accumulator_params()
    if params is None:
        return None
    bw, bc, integral, fits = params
    m = graph.m
    if m == 0:
        return None
    if all_int:
        w_scaled, w_scale = list(weights), 1
    else:
        w_scaled, w_scale = _scaled_ints(weights)
    if sum(w_scaled) >= _NATIVE_KEY_LIMIT:
        return None
    if integral:
        if not fits:
            return None
    else:
        # per-vertex scaling keeps threshold comparisons exact
        bound = _NATIVE_KEY_LIMIT // (max(len(o) for o in graph.out) + 1)
        sw, sc = [0] * m, [0] * graph.n
        for u in range(graph.n):
            arcs = graph.out[u]
            if not arcs:
                continue
            local = [bw[e] for e in arcs]
            local.append(bc[u])
            scaled, _ = _scaled_ints(local)
            if max(abs(x) for x in scaled) >= bound:
                return None
            for e, s in zip(arcs, scaled):
                sw[e] = s
            sc[u] = scaled[-1]
        bw, bc = sw, sc
    phi_raw, blocked_groups, witness, order = _fastcore.sweep(
        graph.n, t, graph.tails, graph.heads, w_scaled, graph.inc, bw, bc,
    )
    if w_scale == 1:
        potential = tuple(phi_raw)
    else:
        potential = tuple(
            p if isinstance(p, float) else Fraction(p, w_scale)
            for p in phi_raw
        )
    return potential, blocked_groups, witness, order


def interdicted_distances(
    graph: Digraph,
    t: int,
    weights: Sequence,
    oracle: IndependenceOracle,
    check: bool = True,
    backend: str = "auto",
) -> Potentials:
    """Worst-case shortest distance from every vertex to `t` when the
    blocker removes one independent arc set per vertex.  Weights must be
    non-negative exact rationals (zeros allowed).  `backend` is "auto",
    "python", or "native"."""
    if graph.out[t]:
        raise InputError("target vertex must have no outgoing arcs")
    for u in range(graph.n):
        if u != t and not graph.out[u]:
            raise InputError(f"vertex {u} is a sink but not the target")
    all_int = all(type(w) is int for w in weights)
    if all_int:
        if graph.m and min(weights) < 0:
            raise InputError("negative weight")
    else:
        for e in range(graph.m):
            if isinstance(weights[e], float):
                raise InputError("weights must be exact rationals or ints")
            if weights[e] < 0:
                raise InputError(f"negative weight on arc {e}")
    result = None
    if backend not in ("auto", "python", "native"):
        raise InputError(f"unknown backend {backend!r}")
    if backend in ("auto", "native"):
        result = _try_native(graph, t, weights, oracle, all_int)
        if result is None and backend == "native":
            raise InputError("native backend unavailable for this input")
    if result is None:
        result = _python_kernel(graph, t, weights, oracle.is_independent)
    potential, blocked, witness, order = result
    pot = Potentials(
        t,
        potential,
        tuple(frozenset(b) for b in blocked),
        tuple(witness),
        tuple(order),
    )
    if check:
        verify_potentials(graph, t, weights, oracle, pot)
    return pot


def verify_potentials(graph, t, weights, oracle, pot: Potentials) -> None:
    """Self-check run after every sweep: the best-response conditions that
    make the output a certificate.  For each vertex u with removal set
    D(u): removed arcs are at most phi(u) through their head (removing a
    costlier arc would be wasted), kept arcs are at least phi(u), some kept
    arc attains it (the mover pays exactly phi(u) against D(u)), and the
    arcs costing at most phi(u) form a dependent set (no admissible removal
    forces the mover above phi(u))."""
    phi = pot.potential
    if phi[t] != 0:
        raise InternalInvariantError("target potential must be zero")
    for u in range(graph.n):
        if u == t:
            continue
        removed = pot.blocked[u]
        if not oracle.is_independent(u, removed):
            raise OracleViolation(
                f"removal set at vertex {u} is not independent"
            )
        kept_tight = None
        cheap = set()
        for e in graph.out[u]:
            v = graph.heads[e]
            through = weights[e] + phi[v] if is_finite(phi[v]) else INF
            if e in removed:
                if through > phi[u]:
                    raise InternalInvariantError(
                        f"arc {e} removed at {u} though costlier than phi({u})"
                    )
            else:
                if through < phi[u]:
                    raise InternalInvariantError(
                        f"arc {e} kept but cheaper than phi({u})"
                    )
                if through == phi[u]:
                    kept_tight = e
            if through <= phi[u]:
                cheap.add(e)
        if kept_tight is None:
            raise InternalInvariantError(f"no kept arc attains phi({u})")
        if oracle.is_independent(u, cheap):
            raise InternalInvariantError(
                f"blocker could remove every arc within phi({u}) at {u}"
            )


def shortest_longest_distances(game, player: int, backend: str = "auto") -> Potentials:
    """Worst-case shortest distances for `player`'s own costs: the player
    picks arcs at their vertices, the opponent forces arcs at theirs."""
    from .game import opponent

    return interdicted_distances(
        game.graph,
        game.terminal,
        game.cost(player),
        sp_blocking_oracle(game, opponent(player)),
        backend=backend,
    )


# ---------------------------------------------------------------------------
# plain one-metric Dijkstra helpers (no blocking), used by constructions


def dist_to_target(
    graph: Digraph,
    t: int,
    weights: Sequence,
    arc_ok: Callable[[int], bool] | None = None,
) -> list:
    """Exact shortest distance from every vertex to `t` over arcs passing
    `arc_ok`; unreachable vertices get INF."""
    dist = [INF] * graph.n
    dist[t] = 0
    heap = [(0, t)]
    done = [False] * graph.n
    while heap:
        d, v = heapq.heappop(heap)
        if done[v]:
            continue
        done[v] = True
        for e in graph.inc[v]:
            if arc_ok is not None and not arc_ok(e):
                continue
            u = graph.tails[e]
            nd = weights[e] + d
            if not done[u] and nd < dist[u]:
                dist[u] = nd
                heapq.heappush(heap, (nd, u))
    return dist


def dist_from_source(
    graph: Digraph,
    s: int,
    weights: Sequence,
    arc_ok: Callable[[int], bool] | None = None,
) -> list:
    dist = [INF] * graph.n
    dist[s] = 0
    heap = [(0, s)]
    done = [False] * graph.n
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for e in graph.out[u]:
            if arc_ok is not None and not arc_ok(e):
                continue
            v = graph.heads[e]
            nd = d + weights[e]
            if not done[v] and nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


def tight_path(
    graph: Digraph,
    s: int,
    t: int,
    weights: Sequence,
    dist_to_t: Sequence,
    arc_ok: Callable[[int], bool] | None = None,
) -> tuple[int, ...]:
    """Deterministic shortest (s, t)-path extraction: from each vertex take
    the lowest-index allowed arc that lies on a shortest path."""
    if not is_finite(dist_to_t[s]):
        raise InputError("target not reachable from source")
    arcs = []
    u = s
    guard = 0
    while u != t:
        step = None
        for e in graph.out[u]:
            if arc_ok is not None and not arc_ok(e):
                continue
            v = graph.heads[e]
            if is_finite(dist_to_t[v]) and weights[e] + dist_to_t[v] == dist_to_t[u]:
                step = e
                break
        if step is None:
            raise InternalInvariantError(
                f"no tight arc out of vertex {u} during path extraction"
            )
        arcs.append(step)
        u = graph.heads[step]
        guard += 1
        if guard > graph.n + graph.m:
            raise InternalInvariantError("path extraction looped")
    return tuple(arcs)
