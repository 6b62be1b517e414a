"""Equilibrium construction for two-person positive shortest path games.

Every finite positive game has a pure positional Nash equilibrium, found by
case analysis on who can force the play to cycle forever:

* if some player cannot force infinite cost, the other player's worst-case
  distances yield reduced costs whose zero arcs carry a terminal
  equilibrium (built here, certified by construction invariants);
* if both players can force, the two forcing strategies together form a
  cyclic equilibrium where both pay infinity.

The module also exposes the no-blocking pipeline: when worst-case
distances are finite everywhere for both metrics, both reduced cost maps
align (zero minima at the owner's vertices, zero maxima at the other's)
and a combined zero-arc construction produces a terminal equilibrium
directly from the two maps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .costs import INF, Cost, is_finite
from .dijkstra import (
    Potentials,
    dist_to_target,
    shortest_longest_distances,
    tight_path,
)
from .errors import (
    BlockerExists,
    InternalInvariantError,
    PreconditionViolated,
    WeakPlayerCanForce,
)
from .game import (
    PLAYER1,
    PLAYER2,
    TERMINAL,
    Play,
    SPGame,
    Situation,
    opponent,
    play_of,
)
from .transform import ReducedCosts, reduce_costs


@dataclass(frozen=True)
class ForceResult:
    answer: bool
    strategy: dict | None = None


@dataclass(frozen=True)
class BlockResult:
    answer: bool
    cut_vertices: frozenset = frozenset()
    strategy: dict | None = None


@dataclass(frozen=True)
class NEResult:
    kind: str  # "terminal" | "cyclic"
    situation: Situation
    play: Play
    cost1: Cost
    cost2: Cost
    certificate: dict = field(default_factory=dict)

    def cost(self, player: int) -> Cost:
        return self.cost1 if player == PLAYER1 else self.cost2


# ---------------------------------------------------------------------------
# forcing and blocking


def _closure_check(game: SPGame, pot: Potentials, mover: int) -> None:
    """Sanity of the infinite region B: the mover cannot leave it, the
    blocker cannot be pushed into it from outside, and the blocker can
    always stay inside it."""
    g = game.graph
    B = pot.infinite_vertices
    blocker = opponent(mover)
    for u in range(g.n):
        if game.owner[u] == mover:
            if u in B and any(g.heads[e] not in B for e in g.out[u]):
                raise InternalInvariantError(
                    f"mover vertex {u} has an escape from the infinite region"
                )
        elif game.owner[u] == blocker:
            if u not in B and any(g.heads[e] in B for e in g.out[u]):
                raise InternalInvariantError(
                    f"blocker vertex {u} outside the infinite region has an "
                    "arc into it"
                )
            if u in B and all(g.heads[e] not in B for e in g.out[u]):
                raise InternalInvariantError(
                    f"blocker vertex {u} cannot stay in the infinite region"
                )


def _forcing_strategy(game: SPGame, pot: Potentials, blocker: int) -> dict:
    """One arc per blocker vertex that keeps every play starting in the
    infinite region inside it forever."""
    g = game.graph
    B = pot.infinite_vertices
    sigma = {}
    for u in game.vertices_of(blocker):
        if u in B:
            pick = next(e for e in g.out[u] if g.heads[e] in B)
        else:
            pick = g.out[u][0]
        sigma[u] = pick
    return sigma


def can_force_infinite(game: SPGame, player: int) -> ForceResult:
    """Can `player` fix a strategy under which no play from the start
    reaches the terminal?  True iff the opponent's worst-case distance at
    the start is infinite; returns a forcing strategy as witness."""
    pot = shortest_longest_distances(game, opponent(player))
    if pot.infinite_vertices:
        _closure_check(game, pot, opponent(player))
    if is_finite(pot[game.start]):
        return ForceResult(False)
    return ForceResult(True, _forcing_strategy(game, pot, player))


def can_block(game: SPGame, player: int) -> BlockResult:
    """Can `player` cut the terminal off from some nonempty vertex set not
    containing the start?  A single positional strategy cuts every vertex
    of the infinite region simultaneously."""
    pot = shortest_longest_distances(game, opponent(player))
    if pot.infinite_vertices:
        _closure_check(game, pot, opponent(player))
    cut = pot.infinite_vertices - {game.start}
    if not cut:
        return BlockResult(False)
    return BlockResult(
        True, frozenset(cut), _forcing_strategy(game, pot, player)
    )


# ---------------------------------------------------------------------------
# reduced-cost alignment


def _check_alignment(
    game: SPGame, red: ReducedCosts, minimizer: int, vertices
) -> None:
    """At the minimizer's vertices the scoped reduced costs have minimum
    exactly zero; at the other player's they have maximum exactly zero."""
    g = game.graph
    for u in vertices:
        if game.owner[u] == TERMINAL:
            continue
        vals = [red[e] for e in g.out[u] if e in red]
        if not vals:
            raise InternalInvariantError(
                f"vertex {u} has no scoped arcs to align"
            )
        if game.owner[u] == minimizer:
            if min(vals) != 0:
                raise InternalInvariantError(
                    f"minimizer vertex {u}: smallest reduced cost is "
                    f"{min(vals)}, expected 0"
                )
        else:
            if max(vals) != 0:
                raise InternalInvariantError(
                    f"opponent vertex {u}: largest reduced cost is "
                    f"{max(vals)}, expected 0"
                )


def aligned_reduced_costs(
    game: SPGame,
) -> tuple[ReducedCosts, ReducedCosts, Potentials, Potentials]:
    """Both players' worst-case distances, turned into reduced cost maps.
    Requires every distance finite (raises BlockerExists otherwise); the
    alignment equalities are asserted before returning."""
    pot1 = shortest_longest_distances(game, PLAYER1)
    pot2 = shortest_longest_distances(game, PLAYER2)
    for player, pot in ((PLAYER1, pot1), (PLAYER2, pot2)):
        if pot.infinite_vertices:
            raise BlockerExists(
                f"worst-case distance for player {player} is infinite at "
                f"vertices {sorted(pot.infinite_vertices)}"
            )
    red1 = reduce_costs(game.graph, game.r1, pot1.potential)
    red2 = reduce_costs(game.graph, game.r2, pot2.potential)
    everything = range(game.graph.n)
    _check_alignment(game, red1, PLAYER1, everything)
    _check_alignment(game, red2, PLAYER2, everything)
    return red1, red2, pot1, pot2


def ne_from_zero_reduced_costs(
    game: SPGame, red1: ReducedCosts, red2: ReducedCosts
) -> NEResult:
    """Terminal equilibrium from two aligned reduced cost maps.

    Preconditions, checked per non-terminal vertex u with owner i: the
    owner's reduced costs have minimum zero; some arc has owner-reduced
    cost zero and other-reduced cost at most zero; and some arc has
    other-reduced cost exactly zero.  The chosen zero/nonpositive arcs form
    an acyclic choice graph whose path from the start is the equilibrium
    play; off the play each owner offers the opponent a zero-cost arc."""
    g = game.graph
    own = {PLAYER1: red1, PLAYER2: red2}

    chosen: dict[int, int] = {}
    for u in range(g.n):
        i = game.owner[u]
        if i == TERMINAL:
            continue
        red_i, red_j = own[i], own[opponent(i)]
        for e in g.out[u]:
            if e not in red_i or e not in red_j:
                raise PreconditionViolated(
                    f"arc {e} is outside the reduced-cost scope"
                )
        if min(red_i[e] for e in g.out[u]) != 0:
            raise PreconditionViolated(
                f"vertex {u}: owner's reduced costs do not bottom out at 0"
            )
        pick = next(
            (
                e
                for e in g.out[u]
                if red_i[e] == 0 and red_j[e] <= 0
            ),
            None,
        )
        if pick is None:
            raise PreconditionViolated(
                f"vertex {u}: no arc with zero own reduced cost and "
                "nonpositive other reduced cost"
            )
        if all(red_j[e] != 0 for e in g.out[u]):
            raise PreconditionViolated(
                f"vertex {u}: no arc with zero reduced cost for the opponent"
            )
        chosen[u] = pick

    # the chosen arcs form one outgoing arc per non-terminal vertex; a cycle
    # would have zero total cost in the owner metrics, impossible in a
    # positive game — but verify rather than trust the caller's maps
    path_arcs = []
    u = game.start
    seen = set()
    while game.owner[u] != TERMINAL:
        if u in seen:
            raise PreconditionViolated(
                "chosen zero-cost arcs close a cycle; reduced maps are not "
                "aligned with a positive game"
            )
        seen.add(u)
        e = chosen[u]
        path_arcs.append(e)
        u = g.heads[e]
    p = tuple(path_arcs)
    on_path = set()
    v = game.start
    for e in p:
        on_path.add(v)
        v = g.heads[e]

    sigma = {PLAYER1: {}, PLAYER2: {}}
    for u in range(g.n):
        i = game.owner[u]
        if i == TERMINAL:
            continue
        if u in on_path:
            sigma[i][u] = chosen[u]
        else:
            red_j = own[opponent(i)]
            sigma[i][u] = next(e for e in g.out[u] if red_j[e] == 0)
    sit = Situation(sigma[PLAYER1], sigma[PLAYER2])
    play = play_of(game, sit)
    if not play.is_terminal or play.arcs != p:
        raise InternalInvariantError("constructed play does not follow the chosen arcs")
    cert = {
        "method": "aligned-zero",
        "path": p,
    }
    return NEResult("terminal", sit, play, play.cost1, play.cost2, cert)


# ---------------------------------------------------------------------------
# one-sided construction and the general solver


def terminal_ne_against_forcer(
    game: SPGame, weak_player: int, pot: Potentials | None = None
) -> NEResult:
    """Terminal equilibrium when `weak_player` cannot force infinite cost.

    The other player's worst-case distances split the graph into the
    finite region U (containing the start) and the infinite region B.  The
    strong player moves along arcs of zero reduced cost inside U; the weak
    player answers with their own cheapest path through the resulting
    subgraph, deviates onto zero arcs off the play, and stays inside B if
    the play is ever pushed there."""
    m = opponent(weak_player)  # the player whose metric drives the region
    if pot is None:
        pot = shortest_longest_distances(game, m)
    g = game.graph
    t = game.terminal
    s = game.start
    if not is_finite(pot[s]):
        raise WeakPlayerCanForce(
            f"player {weak_player} can force infinite cost"
        )
    B = pot.infinite_vertices
    U = pot.finite_vertices
    if B:
        _closure_check(game, pot, m)

    scope = [
        e
        for e in range(g.m)
        if g.tails[e] in U and g.heads[e] in U
    ]
    red = reduce_costs(g, game.cost(m), pot.potential, scope)
    _check_alignment(game, red, m, U)

    sigma_m: dict[int, int] = {}
    strategy_arcs = set()
    for u in game.vertices_of(m):
        if u in U:
            pick = next(
                e for e in g.out[u] if e in red and red[e] == 0
            )
            sigma_m[u] = pick
            strategy_arcs.add(pick)
        else:
            sigma_m[u] = g.out[u][0]  # every arc stays inside B

    def allowed(e: int) -> bool:
        if e in strategy_arcs:
            return True
        u = g.tails[e]
        return game.owner[u] == weak_player and e in red

    wdist = dist_to_target(g, t, game.cost(weak_player), arc_ok=allowed)
    if not is_finite(wdist[s]):
        raise InternalInvariantError(
            "no terminal path in the zero-arc subgraph"
        )
    _assert_dag_distance(game, t, allowed, game.cost(weak_player), wdist)
    p = tight_path(g, s, t, game.cost(weak_player), wdist, arc_ok=allowed)
    for e in p:
        if red[e] > 0:
            raise InternalInvariantError(
                "play arc with positive reduced cost for the strong player"
            )

    on_path = set()
    v = s
    for e in p:
        on_path.add(v)
        v = g.heads[e]
    path_arc_at = {}
    v = s
    for e in p:
        path_arc_at[v] = e
        v = g.heads[e]

    sigma_w: dict[int, int] = {}
    for u in game.vertices_of(weak_player):
        if u in on_path:
            sigma_w[u] = path_arc_at[u]
        elif u in U:
            sigma_w[u] = next(
                e for e in g.out[u] if e in red and red[e] == 0
            )
        else:
            sigma_w[u] = next(e for e in g.out[u] if g.heads[e] in B)
    for u in on_path:
        if game.owner[u] == m and sigma_m[u] != path_arc_at[u]:
            raise InternalInvariantError(
                "play left the strong player's chosen arcs"
            )

    sit = (
        Situation(sigma_m, sigma_w)
        if m == PLAYER1
        else Situation(sigma_w, sigma_m)
    )
    play = play_of(game, sit)
    if not play.is_terminal or play.arcs != p:
        raise InternalInvariantError(
            "constructed situation does not trace the intended play"
        )
    cert = {
        "method": "one-sided",
        "weak_player": weak_player,
        "potential": pot.potential,
        "infinite_region": tuple(sorted(B)),
        "path": p,
    }
    return NEResult("terminal", sit, play, play.cost1, play.cost2, cert)


def _assert_dag_distance(game, t, allowed, weights, claimed) -> None:
    """The zero-arc subgraph is acyclic (any cycle would cost zero for the
    strong player, impossible with positive costs), so distances can be
    recomputed by topological relaxation — an independent check on the
    heap-based run."""
    g = game.graph
    arcs = [e for e in range(g.m) if allowed(e)]
    indeg = {u: 0 for u in range(g.n)}
    for e in arcs:
        indeg[g.heads[e]] += 1
    from collections import deque

    queue = deque(u for u in range(g.n) if indeg[u] == 0)
    topo = []
    while queue:
        u = queue.popleft()
        topo.append(u)
        for e in g.out[u]:
            if allowed(e):
                indeg[g.heads[e]] -= 1
                if indeg[g.heads[e]] == 0:
                    queue.append(g.heads[e])
    if len(topo) != g.n:
        raise InternalInvariantError("zero-arc subgraph contains a cycle")
    dist = [INF] * g.n
    dist[t] = 0
    for u in reversed(topo):
        for e in g.out[u]:
            if allowed(e) and is_finite(dist[g.heads[e]]):
                cand = weights[e] + dist[g.heads[e]]
                if cand < dist[u]:
                    dist[u] = cand
    for u in range(g.n):
        if dist[u] != claimed[u]:
            raise InternalInvariantError(
                f"independent distance check failed at vertex {u}"
            )


def solve(game: SPGame) -> NEResult:
    """Nash equilibrium of a normalized positive game: a terminal one when
    some player cannot force infinite cost, else the cyclic pair of
    forcing strategies."""
    pot1 = shortest_longest_distances(game, PLAYER1)
    if is_finite(pot1[game.start]):
        return terminal_ne_against_forcer(game, PLAYER2, pot1)
    pot2 = shortest_longest_distances(game, PLAYER2)
    if is_finite(pot2[game.start]):
        return terminal_ne_against_forcer(game, PLAYER1, pot2)
    _closure_check(game, pot1, PLAYER1)
    _closure_check(game, pot2, PLAYER2)
    sigma2 = _forcing_strategy(game, pot1, PLAYER2)
    sigma1 = _forcing_strategy(game, pot2, PLAYER1)
    sit = Situation(sigma1, sigma2)
    play = play_of(game, sit)
    if play.is_terminal:
        raise InternalInvariantError(
            "both players force infinity yet the play terminated"
        )
    cert = {
        "method": "cyclic",
        "infinite_region_1": tuple(sorted(pot2.infinite_vertices)),
        "infinite_region_2": tuple(sorted(pot1.infinite_vertices)),
    }
    return NEResult("cyclic", sit, play, INF, INF, cert)
