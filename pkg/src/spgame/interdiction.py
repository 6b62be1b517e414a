"""Shortest path interdiction games.

Player 1 removes an independent set of outgoing arcs at every vertex;
player 2 offers a dependent set at every vertex (so at least one offered
arc always survives).  On the surviving subgraph each player pays their
own cost of a common shortest (start, terminal)-path if one exists under
both metrics; otherwise both pay infinity.

`solve_interdiction` builds a pure Nash equilibrium: via worst-case
distances in player 2's metric when the removal oracle cannot disconnect
the terminal, via the complementary (dual) system otherwise, and as a pair
of mutually blocking strategies when both directions disconnect.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping

from .costs import INF, Cost, is_finite
from .dijkstra import (
    Potentials,
    dist_from_source,
    dist_to_target,
    interdicted_distances,
    tight_path,
)
from .errors import (
    CapExceeded,
    InputError,
    InternalInvariantError,
    PreconditionViolated,
)
from .game import PLAYER1, PLAYER2, TERMINAL, SPGame, Situation, effective_cost
from .graph import Digraph
from .independence import IndependenceOracle, independent_sets
from .transform import reduce_costs


@dataclass(frozen=True)
class InterdictionGame:
    graph: Digraph
    start: int
    terminal: int
    r1: tuple[Fraction, ...]
    r2: tuple[Fraction, ...]
    oracle: IndependenceOracle
    names: tuple[str, ...] = ()

    def __post_init__(self):
        g = self.graph
        if g.out[self.terminal]:
            raise InputError("terminal vertex has outgoing arcs")
        for u in range(g.n):
            if u != self.terminal and not g.out[u]:
                raise InputError(f"vertex {u} is a sink but not the terminal")
        if len(self.r1) != g.m or len(self.r2) != g.m:
            raise InputError("cost list length does not match arc count")
        for e in range(g.m):
            if self.r1[e] <= 0 or self.r2[e] <= 0:
                raise InputError(f"non-positive cost on arc {e}")
        if self.oracle.graph is not g:
            raise InputError("oracle is bound to a different graph")
        if not self.names:
            object.__setattr__(
                self, "names", tuple(f"v{u}" for u in range(g.n))
            )

    def cost(self, player: int) -> tuple[Fraction, ...]:
        return self.r1 if player == PLAYER1 else self.r2

    def name(self, u: int) -> str:
        return self.names[u]


@dataclass(frozen=True)
class InterdictionSituation:
    """Player 1's removal set and player 2's offered set per vertex."""

    removed: Mapping[int, frozenset]
    offered: Mapping[int, frozenset]


@dataclass(frozen=True)
class InterdictionNEResult:
    kind: str  # "terminal" | "cyclic"
    situation: InterdictionSituation
    path: tuple[int, ...] | None
    cost1: Cost
    cost2: Cost
    certificate: dict = field(default_factory=dict)

    def cost(self, player: int) -> Cost:
        return self.cost1 if player == PLAYER1 else self.cost2


def validate_interdiction_situation(
    game: InterdictionGame, sit: InterdictionSituation
) -> None:
    g = game.graph
    inner = {u for u in range(g.n) if u != game.terminal}
    if set(sit.removed) != inner or set(sit.offered) != inner:
        raise InputError(
            "situation must assign removal and offer sets to every "
            "non-terminal vertex"
        )
    for u in inner:
        if not game.oracle.is_independent(u, sit.removed[u]):
            raise InputError(f"removal set at vertex {u} is not independent")
        if game.oracle.is_independent(u, sit.offered[u]):
            raise InputError(f"offered set at vertex {u} is not dependent")


def playable_arcs(game: InterdictionGame, sit: InterdictionSituation) -> set:
    arcs = set()
    for u, offered in sit.offered.items():
        arcs |= offered - sit.removed[u]
    return arcs


def interdiction_cost(
    game: InterdictionGame, sit: InterdictionSituation
) -> tuple[Cost, Cost, tuple[int, ...] | None]:
    """Cost pair of a situation, and a common shortest path if the players
    agree on one.  Exact: an (s, t)-path is a common optimum iff every arc
    is tight for both metrics, so it suffices to intersect the two
    shortest-path arc sets and test reachability."""
    g = game.graph
    s, t = game.start, game.terminal
    arcs = playable_arcs(game, sit)
    ok = arcs.__contains__
    back1 = dist_to_target(g, t, game.r1, arc_ok=ok)
    if not is_finite(back1[s]):
        return INF, INF, None
    fwd1 = dist_from_source(g, s, game.r1, arc_ok=ok)
    back2 = dist_to_target(g, t, game.r2, arc_ok=ok)
    fwd2 = dist_from_source(g, s, game.r2, arc_ok=ok)
    total1, total2 = back1[s], back2[s]

    def tight(e: int) -> bool:
        u, v = g.tails[e], g.heads[e]
        return (
            is_finite(fwd1[u])
            and is_finite(back1[v])
            and fwd1[u] + game.r1[e] + back1[v] == total1
            and is_finite(fwd2[u])
            and is_finite(back2[v])
            and fwd2[u] + game.r2[e] + back2[v] == total2
        )

    common = {e for e in arcs if tight(e)}
    # vertices that still reach t through common arcs
    reach = {t}
    changed = True
    while changed:
        changed = False
        for e in common:
            if g.heads[e] in reach and g.tails[e] not in reach:
                reach.add(g.tails[e])
                changed = True
    if s not in reach:
        return INF, INF, None
    path = []
    u = s
    while u != t:
        e = min(x for x in common if g.tails[x] == u and g.heads[x] in reach)
        path.append(e)
        u = g.heads[e]
        if len(path) > g.n:
            raise InternalInvariantError("common path extraction looped")
    p = tuple(path)
    c1 = effective_cost(p, game.r1)
    c2 = effective_cost(p, game.r2)
    if c1 != total1 or c2 != total2:
        raise InternalInvariantError("extracted path is not optimal for both")
    return c1, c2, p


# ---------------------------------------------------------------------------
# equilibrium construction


def _region_check(graph, t, oracle, pot: Potentials) -> None:
    """Inside the infinite region the blocker can sever every arc back to
    the finite region; inside the finite region it cannot."""
    B = pot.infinite_vertices
    U = pot.finite_vertices
    for u in range(graph.n):
        if u == t:
            continue
        into_U = frozenset(
            e for e in graph.out[u] if graph.heads[e] in U
        )
        if u in B:
            if not oracle.is_independent(u, into_U):
                raise InternalInvariantError(
                    f"infinite-region vertex {u} cannot sever its arcs to "
                    "the finite region"
                )
        else:
            if oracle.is_independent(u, into_U):
                raise InternalInvariantError(
                    f"finite-region vertex {u} could be fully severed from "
                    "the finite region"
                )


def _one_sided_strategies(
    graph: Digraph,
    s: int,
    t: int,
    oracle: IndependenceOracle,
    r_choose,
    r_path,
    pot: Potentials,
):
    """Equilibrium strategies when the blocker cannot make the chooser's
    worst-case distance at `s` infinite.

    Reduced chooser costs over the finite region put every removed arc at
    <= 0, every kept arc at >= 0 with a zero witness, and the nonpositive
    arcs form a subgraph in which the path player's cheapest (s, t)-path
    is the equilibrium play.  On that path the blocker removes only the
    arcs strictly cheaper (in reduced cost) than the path arc, which makes
    the path arc the cheapest surviving option."""
    if not is_finite(pot[s]):
        raise PreconditionViolated("blocker disconnects the start")
    B = pot.infinite_vertices
    U = pot.finite_vertices
    if B:
        _region_check(graph, t, oracle, pot)
    scope = [
        e
        for e in range(graph.m)
        if graph.tails[e] in U and graph.heads[e] in U
    ]
    red = reduce_costs(graph, r_choose, pot.potential, scope)

    for u in U:
        if u == t:
            continue
        kept_zero = False
        nonpositive = set()
        for e in graph.out[u]:
            if e in pot.blocked[u]:
                if graph.heads[e] not in U or red[e] > 0:
                    raise InternalInvariantError(
                        f"removed arc {e} is not a nonpositive arc inside "
                        "the finite region"
                    )
                nonpositive.add(e)
            elif e in red:
                if red[e] < 0:
                    raise InternalInvariantError(
                        f"kept arc {e} has negative reduced cost"
                    )
                if red[e] == 0:
                    kept_zero = True
                    nonpositive.add(e)
        if not kept_zero:
            raise InternalInvariantError(
                f"no kept zero-reduced-cost arc at vertex {u}"
            )
        if oracle.is_independent(u, nonpositive):
            raise InternalInvariantError(
                f"nonpositive arcs at vertex {u} form an independent set"
            )

    good = {e for e in scope if red[e] <= 0}
    dist = dist_to_target(graph, t, r_path, arc_ok=good.__contains__)
    if not is_finite(dist[s]):
        raise InternalInvariantError(
            "no terminal path through nonpositive arcs"
        )
    p = tight_path(graph, s, t, r_path, dist, arc_ok=good.__contains__)

    removed: dict[int, frozenset] = {}
    offered: dict[int, frozenset] = {}
    on_path = {}
    u = s
    for e in p:
        on_path[u] = e
        u = graph.heads[e]
    for u in range(graph.n):
        if u == t:
            continue
        if u in B:
            removed[u] = frozenset(
                e for e in graph.out[u] if graph.heads[e] in U
            )
            grow: set = set()
            for e in graph.out[u]:
                grow.add(e)
                if not oracle.is_independent(u, grow):
                    break
            offered[u] = frozenset(grow)
            continue
        offered[u] = frozenset(
            e for e in graph.out[u] if e in red and red[e] <= 0
        )
        if u in on_path:
            e = on_path[u]
            cut = frozenset(
                x for x in pot.blocked[u] if red[x] < red[e]
            )
            rest = [
                red[x]
                for x in graph.out[u]
                if x in red and x not in cut
            ]
            if min(rest) != red[e]:
                raise InternalInvariantError(
                    f"path arc at vertex {u} is not cheapest after removal"
                )
            removed[u] = cut
        else:
            removed[u] = pot.blocked[u]
    return removed, offered, p


def solve_interdiction(game: InterdictionGame) -> InterdictionNEResult:
    """Pure Nash equilibrium of an interdiction game."""
    g = game.graph
    s, t = game.start, game.terminal
    pot2 = interdicted_distances(g, t, game.r2, game.oracle)
    if is_finite(pot2[s]):
        removed, offered, p = _one_sided_strategies(
            g, s, t, game.oracle, game.r2, game.r1, pot2
        )
        cert: dict[str, Any] = {"method": "one-sided", "branch": "primal"}
        return _finish_terminal(game, removed, offered, p, cert)

    dual = game.oracle.dual()
    potd = interdicted_distances(g, t, game.r1, dual)
    if is_finite(potd[s]):
        dremoved, doffered, p = _one_sided_strategies(
            g, s, t, dual, game.r1, game.r2, potd
        )
        removed = {
            u: frozenset(g.out[u]) - doffered[u] for u in dremoved
        }
        offered = {
            u: frozenset(g.out[u]) - dremoved[u] for u in dremoved
        }
        cert = {"method": "one-sided", "branch": "dual"}
        return _finish_terminal(game, removed, offered, p, cert)

    # both directions disconnect: mutual blocking, everyone pays infinity
    removed = {u: pot2.blocked[u] for u in range(g.n) if u != t}
    offered = {
        u: frozenset(g.out[u]) - potd.blocked[u]
        for u in range(g.n)
        if u != t
    }
    sit = InterdictionSituation(removed, offered)
    validate_interdiction_situation(game, sit)
    c1, c2, common = interdiction_cost(game, sit)
    if (c1, c2, common) != (INF, INF, None):
        raise InternalInvariantError(
            "mutual blocking still produced a terminal play"
        )
    cert = {
        "method": "cyclic",
        "infinite_region_primal": tuple(sorted(pot2.infinite_vertices)),
        "infinite_region_dual": tuple(sorted(potd.infinite_vertices)),
    }
    return InterdictionNEResult("cyclic", sit, None, INF, INF, cert)


def _finish_terminal(game, removed, offered, p, cert) -> InterdictionNEResult:
    sit = InterdictionSituation(dict(removed), dict(offered))
    validate_interdiction_situation(game, sit)
    c1, c2, common = interdiction_cost(game, sit)
    want1 = effective_cost(p, game.r1)
    want2 = effective_cost(p, game.r2)
    if common is None or c1 != want1 or c2 != want2:
        raise InternalInvariantError(
            "constructed situation does not realize the intended path"
        )
    cert = dict(cert)
    cert["path"] = p
    return InterdictionNEResult("terminal", sit, p, c1, c2, cert)


# ---------------------------------------------------------------------------
# reduction to a plain game


@dataclass(frozen=True)
class ReductionResult:
    """Plain-game encoding of an interdiction game.

    Original vertices become player 1's (choosing a removal set = moving
    to a copy vertex); each copy (u, I) belongs to player 2, whose arcs
    realize the surviving original arcs.  A fixed potential shift keeps
    every cost positive without changing any (s, t)-path cost."""

    sp_game: SPGame
    start: int
    copy_of: dict  # (u, I) -> copy vertex id
    choose_arc: dict  # sp arc id -> (u, I)
    move_arc: dict  # sp arc id -> (u, I, original arc id)

    def lift_situation(self, sit: Situation) -> InterdictionSituation:
        """Plain-game situation -> interdiction situation: the removal set
        is read off player 1's move, the offered set collects player 2's
        choices over every copy of the vertex."""
        removed = {}
        offered: dict[int, set] = {}
        for u, e in sit.sigma1.items():
            removed[u] = frozenset(self.choose_arc[e][1])
        for _, e in sit.sigma2.items():
            u, _, orig = self.move_arc[e]
            offered.setdefault(u, set()).add(orig)
        return InterdictionSituation(
            removed, {u: frozenset(a) for u, a in offered.items()}
        )

    def push_situation(self, sit: InterdictionSituation) -> Situation:
        """Interdiction situation -> plain-game situation (lowest-index
        realization of the offered sets)."""
        sigma1 = {}
        sigma2 = {}
        g = self.sp_game.graph
        for u, I in sit.removed.items():
            match = [
                e
                for e, key in self.choose_arc.items()
                if key[0] == u and frozenset(key[1]) == I
            ]
            if not match:
                raise InputError(
                    f"removal set at vertex {u} is not one of the encoded "
                    "independent sets"
                )
            sigma1[u] = match[0]
        for e, (u, I, orig) in sorted(self.move_arc.items()):
            copy = g.tails[e]
            if copy in sigma2:
                continue
            if orig in sit.offered[u]:
                sigma2[copy] = e
        return Situation(sigma1, sigma2)


def reduce_to_sp(game: InterdictionGame, cap: int = 100_000) -> ReductionResult:
    """Encode an interdiction game as a plain game by enumerating every
    removal set.  Exponential in general; guarded by `cap` on the total
    number of copies."""
    g = game.graph
    t = game.terminal
    fams: dict[int, list[frozenset]] = {}
    total = 0
    for u in range(g.n):
        if u == t:
            continue
        fams[u] = independent_sets(game.oracle, u)
        total += len(fams[u])
        if total > cap:
            raise CapExceeded(
                f"reduction needs {total}+ copies, cap is {cap}"
            )

    delta = min(min(game.r1), min(game.r2)) / 2
    n = g.n
    owner = [PLAYER1] * g.n
    owner[t] = TERMINAL
    names = list(game.names)
    pairs: list[tuple[int, int]] = []
    r1: list[Fraction] = []
    r2: list[Fraction] = []
    copy_of = {}
    choose_arc = {}
    move_arc = {}
    for u in sorted(fams):
        for I in fams[u]:
            copy = n
            n += 1
            owner.append(PLAYER2)
            names.append(f"{game.names[u]}|{'+'.join(map(str, sorted(I))) or 'o'}")
            copy_of[(u, I)] = copy
            choose_arc[len(pairs)] = (u, I)
            pairs.append((u, copy))
            r1.append(delta)
            r2.append(delta)
            for e in g.out[u]:
                if e in I:
                    continue
                move_arc[len(pairs)] = (u, I, e)
                pairs.append((copy, g.heads[e]))
                r1.append(game.r1[e] - delta)
                r2.append(game.r2[e] - delta)

    sp = SPGame(
        Digraph.from_arcs(n, pairs),
        tuple(owner),
        game.start,
        tuple(r1),
        tuple(r2),
        tuple(names),
    )
    return ReductionResult(sp, game.start, copy_of, choose_arc, move_arc)
