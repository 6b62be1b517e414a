"""Potential-based cost reduction.

Shifting an arc cost by the potential difference of its endpoints leaves
every cycle cost unchanged and shifts every (s, t)-path cost by the same
constant, so it preserves which paths are cheapest and which cycles are
positive.  Constructions in this package read equilibrium structure off
arcs whose reduced cost is zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .costs import Cost, is_finite
from .errors import InfinitePotential
from .graph import Digraph


@dataclass(frozen=True)
class ReducedCosts:
    """Reduced cost per arc within `scope`; arcs outside scope are absent."""

    values: Mapping[int, Cost]
    scope: frozenset

    def __getitem__(self, e: int) -> Cost:
        return self.values[e]

    def __contains__(self, e: int) -> bool:
        return e in self.scope


def reduce_costs(
    graph: Digraph,
    weights: Sequence,
    potential: Sequence,
    scope=None,
) -> ReducedCosts:
    """reduced(u, v) = cost(u, v) + potential(v) - potential(u) for every
    arc in `scope` (default: all arcs).  Raises InfinitePotential if a
    scoped arc touches a vertex with infinite potential."""
    if scope is None:
        scope = range(graph.m)
    values = {}
    for e in scope:
        u, v = graph.tails[e], graph.heads[e]
        if not (is_finite(potential[u]) and is_finite(potential[v])):
            raise InfinitePotential(
                f"arc {e} touches a vertex with infinite potential"
            )
        values[e] = weights[e] + potential[v] - potential[u]
    return ReducedCosts(values, frozenset(values))
