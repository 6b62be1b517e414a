"""Two-person shortest path games on digraphs.

A game is a digraph whose non-terminal vertices are owned by player 1 or
player 2, a start vertex, and one positive rational cost per arc and
player.  A pair of positional strategies traces a unique play from the
start: either a path ending at a terminal (each player pays the sum of
their own arc costs) or a lasso (both pay infinity, since costs are
positive).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping

from .costs import INF, Cost
from .errors import InputError, NoTerminalPath
from .graph import Digraph, min_mean_cycle, reachable_from, reaches

TERMINAL = 0
PLAYER1 = 1
PLAYER2 = 2

_OWNER_NAMES = {TERMINAL: "T", PLAYER1: "P1", PLAYER2: "P2"}


def opponent(player: int) -> int:
    return 3 - player


@dataclass(frozen=True)
class SPGame:
    graph: Digraph
    owner: tuple[int, ...]
    start: int
    r1: tuple[Fraction, ...]
    r2: tuple[Fraction, ...]
    names: tuple[str, ...] = ()

    def __post_init__(self):
        g = self.graph
        if len(self.owner) != g.n:
            raise InputError("owner list length does not match vertex count")
        if not 0 <= self.start < g.n:
            raise InputError("start vertex out of range")
        if len(self.r1) != g.m or len(self.r2) != g.m:
            raise InputError("cost list length does not match arc count")
        for u in range(g.n):
            has_out = bool(g.out[u])
            if self.owner[u] == TERMINAL and has_out:
                raise InputError(f"terminal vertex {u} has outgoing arcs")
            if self.owner[u] != TERMINAL and not has_out:
                raise InputError(f"vertex {u} has no outgoing arcs but is not terminal")
        if not self.names:
            object.__setattr__(
                self, "names", tuple(f"v{u}" for u in range(g.n))
            )
        elif len(self.names) != g.n:
            raise InputError("name list length does not match vertex count")

    def cost(self, player: int) -> tuple[Fraction, ...]:
        return self.r1 if player == PLAYER1 else self.r2

    def vertices_of(self, player: int) -> tuple[int, ...]:
        return tuple(u for u in range(self.graph.n) if self.owner[u] == player)

    @property
    def terminals(self) -> tuple[int, ...]:
        return self.vertices_of(TERMINAL)

    @property
    def terminal(self) -> int:
        ts = self.terminals
        if len(ts) != 1:
            raise InputError(f"expected a unique terminal, found {len(ts)}")
        return ts[0]

    def name(self, u: int) -> str:
        return self.names[u]


@dataclass(frozen=True)
class Situation:
    """One chosen outgoing arc per non-terminal vertex, split by owner."""

    sigma1: Mapping[int, int]
    sigma2: Mapping[int, int]

    def move(self, u: int) -> int | None:
        if u in self.sigma1:
            return self.sigma1[u]
        return self.sigma2.get(u)


@dataclass(frozen=True)
class Play:
    """Arc sequence traced by a situation.  `cycle_start` is None for a
    terminal play; otherwise arcs[cycle_start:] repeat forever."""

    arcs: tuple[int, ...]
    cycle_start: int | None
    cost1: Cost
    cost2: Cost

    @property
    def is_terminal(self) -> bool:
        return self.cycle_start is None

    @property
    def kind(self) -> str:
        return "terminal" if self.is_terminal else "lasso"

    @property
    def stem(self) -> tuple[int, ...]:
        return self.arcs if self.is_terminal else self.arcs[: self.cycle_start]

    @property
    def cycle(self) -> tuple[int, ...]:
        return () if self.is_terminal else self.arcs[self.cycle_start :]

    def cost(self, player: int) -> Cost:
        return self.cost1 if player == PLAYER1 else self.cost2

    def vertices(self, game: SPGame) -> tuple[int, ...]:
        seq = [game.start]
        for e in self.arcs:
            seq.append(game.graph.heads[e])
        return tuple(seq)


def validate_situation(game: SPGame, sit: Situation) -> None:
    g = game.graph
    for player, sigma in ((PLAYER1, sit.sigma1), (PLAYER2, sit.sigma2)):
        owned = set(game.vertices_of(player))
        if set(sigma) != owned:
            raise InputError(
                f"player {player} strategy must cover exactly their vertices"
            )
        for u, e in sigma.items():
            if not (0 <= e < g.m) or g.tails[e] != u:
                raise InputError(f"strategy entry {u}->{e} is not an outgoing arc")


def effective_cost(arcs, weights) -> Fraction:
    """Sum of `weights` over an arc sequence (exact)."""
    return sum((weights[e] for e in arcs), Fraction(0))


def play_of(game: SPGame, sit: Situation) -> Play:
    """Trace the unique play of a situation from the start vertex."""
    g = game.graph
    at: dict[int, int] = {}  # vertex -> position in arc sequence
    arcs: list[int] = []
    u = game.start
    while game.owner[u] != TERMINAL:
        if u in at:
            start = at[u]
            return Play(tuple(arcs), start, INF, INF)
        at[u] = len(arcs)
        e = sit.move(u)
        if e is None or g.tails[e] != u:
            raise InputError(f"situation has no valid move at vertex {u}")
        arcs.append(e)
        u = g.heads[e]
    seq = tuple(arcs)
    return Play(
        seq,
        None,
        effective_cost(seq, game.r1),
        effective_cost(seq, game.r2),
    )


def situations(game: SPGame) -> Iterator[Situation]:
    """All situations, in lowest-arc-index lexicographic order."""
    from itertools import product

    v1 = game.vertices_of(PLAYER1)
    v2 = game.vertices_of(PLAYER2)
    outs = game.graph.out
    for choice in product(*(outs[u] for u in v1 + v2)):
        k = len(v1)
        yield Situation(
            dict(zip(v1, choice[:k])), dict(zip(v2, choice[k:]))
        )


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def validate(game: SPGame) -> ValidationReport:
    """Structural report: positivity, reachability both ways, absence of
    non-positive cycles, and existence of a terminal play."""
    g = game.graph
    checks = []

    bad = [
        e
        for e in range(g.m)
        if game.r1[e] <= 0 or game.r2[e] <= 0
    ]
    checks.append(
        CheckResult(
            "positive_costs",
            not bad,
            "" if not bad else f"non-positive cost on arcs {bad[:5]}",
        )
    )

    ts = game.terminals
    checks.append(
        CheckResult(
            "single_terminal", len(ts) == 1, f"{len(ts)} terminal vertices"
        )
    )

    seen = reachable_from(g, game.start)
    unreachable = sorted(set(range(g.n)) - seen)
    checks.append(
        CheckResult(
            "start_reaches_all",
            not unreachable,
            "" if not unreachable else f"unreachable vertices {unreachable[:5]}",
        )
    )

    to_t: set[int] = set()
    for t in ts:
        to_t |= reaches(g, t)
    stranded = sorted(set(range(g.n)) - to_t)
    checks.append(
        CheckResult(
            "all_reach_terminal",
            not stranded,
            "" if not stranded else f"vertices never reaching a terminal {stranded[:5]}",
        )
    )

    path_ok = any(t in seen for t in ts)
    checks.append(
        CheckResult("terminal_play_exists", path_ok, "" if path_ok else "no play can terminate")
    )

    for label, weights in (("r1", game.r1), ("r2", game.r2)):
        mmc = min_mean_cycle(g, weights)
        ok = mmc is None or mmc > 0
        checks.append(
            CheckResult(
                f"positive_cycles_{label}",
                ok,
                "acyclic" if mmc is None else f"min mean cycle {mmc}",
            )
        )

    return ValidationReport(tuple(checks))


# ---------------------------------------------------------------------------
# normalization


def _rebuild(game, keep_vertex, owner, arcs, r1, r2, names, start):
    vmap = {}
    for u in range(game.graph.n):
        if keep_vertex[u]:
            vmap[u] = len(vmap)
    new_names = [names[u] for u in sorted(vmap, key=vmap.get)]
    amap = {}
    pairs = []
    nr1, nr2 = [], []
    for e, (u, v) in enumerate(arcs):
        if keep_vertex[u] and keep_vertex[v]:
            amap[e] = len(pairs)
            pairs.append((vmap[u], vmap[v]))
            nr1.append(r1[e])
            nr2.append(r2[e])
    new_owner = [owner[u] for u in sorted(vmap, key=vmap.get)]
    g = Digraph.from_arcs(len(vmap), pairs)
    return (
        SPGame(g, tuple(new_owner), vmap[start], tuple(nr1), tuple(nr2), tuple(new_names)),
        vmap,
        amap,
    )


def normalize_with_maps(
    game: SPGame,
    merge_terminals: bool = True,
    prune_unreachable: bool = True,
    bipartize: bool = False,
):
    """Like `normalize` but also returns the vertex and arc index maps
    from the input game to the result (entries only for surviving items)."""
    g = game.graph
    owner = list(game.owner)
    arcs = [(g.tails[e], g.heads[e]) for e in range(g.m)]
    r1 = list(game.r1)
    r2 = list(game.r2)
    names = list(game.names)
    start = game.start
    vmap = {u: u for u in range(g.n)}
    amap = {e: e for e in range(g.m)}

    def compose(inner_v, inner_a):
        nonlocal vmap, amap
        vmap = {u: inner_v[w] for u, w in vmap.items() if w in inner_v}
        amap = {e: inner_a[f] for e, f in amap.items() if f in inner_a}

    ts = [u for u in range(len(owner)) if owner[u] == TERMINAL]
    if not ts:
        raise NoTerminalPath("game has no terminal vertex")

    if merge_terminals and len(ts) > 1:
        t0 = start if start in ts else ts[0]
        drop = set(ts) - {t0}
        arcs = [(u, t0 if v in drop else v) for (u, v) in arcs]
        taken = {names[u] for u in range(len(owner)) if u not in drop}
        tname = "t"
        while tname in taken - {names[t0]}:
            tname += "*"
        names[t0] = tname
        keep = [u not in drop for u in range(len(owner))]
        cur = SPGame(
            Digraph.from_arcs(len(owner), arcs), tuple(owner), start,
            tuple(r1), tuple(r2), tuple(names),
        )
        cur, iv, ia = _rebuild(cur, keep, owner, arcs, r1, r2, names, start)
        compose(iv, ia)
        owner, arcs = list(cur.owner), [
            (cur.graph.tails[e], cur.graph.heads[e]) for e in range(cur.graph.m)
        ]
        r1, r2, names, start = list(cur.r1), list(cur.r2), list(cur.names), cur.start

    if prune_unreachable:
        tmp = Digraph.from_arcs(len(owner), arcs)
        seen = reachable_from(tmp, start)
        if not any(owner[u] == TERMINAL for u in seen):
            raise NoTerminalPath("no terminal vertex is reachable from the start")
        keep = [u in seen for u in range(len(owner))]
        cur = SPGame(
            tmp, tuple(owner), start, tuple(r1), tuple(r2), tuple(names)
        )
        cur, iv, ia = _rebuild(cur, keep, owner, arcs, r1, r2, names, start)
        compose(iv, ia)
        owner, arcs = list(cur.owner), [
            (cur.graph.tails[e], cur.graph.heads[e]) for e in range(cur.graph.m)
        ]
        r1, r2, names, start = list(cur.r1), list(cur.r2), list(cur.names), cur.start

    if bipartize:
        # split every arc joining two vertices of the same player, assigning
        # the midpoint to the other player and half the cost to each half
        new_arcs = []
        nr1, nr2 = [], []
        amap2 = {}
        for e, (u, v) in enumerate(arcs):
            if owner[u] != TERMINAL and owner[u] == owner[v]:
                mid = len(owner)
                owner.append(opponent(owner[u]))
                names.append(f"{names[u]}~{names[v]}#{e}")
                amap2[e] = len(new_arcs)
                new_arcs.append((u, mid))
                nr1.append(r1[e] / 2)
                nr2.append(r2[e] / 2)
                new_arcs.append((mid, v))
                nr1.append(r1[e] / 2)
                nr2.append(r2[e] / 2)
            else:
                amap2[e] = len(new_arcs)
                new_arcs.append((u, v))
                nr1.append(r1[e])
                nr2.append(r2[e])
        arcs, r1, r2 = new_arcs, nr1, nr2
        compose({u: u for u in range(len(owner))}, amap2)

    out = SPGame(
        Digraph.from_arcs(len(owner), arcs),
        tuple(owner),
        start,
        tuple(r1),
        tuple(r2),
        tuple(names),
    )
    if not any(out.owner[u] == TERMINAL for u in reachable_from(out.graph, out.start)):
        raise NoTerminalPath("no terminal vertex is reachable from the start")
    return out, vmap, amap


def normalize(
    game: SPGame,
    merge_terminals: bool = True,
    prune_unreachable: bool = True,
    bipartize: bool = False,
) -> SPGame:
    """Merge terminals into one, drop vertices the start cannot reach, and
    optionally subdivide same-owner arcs so moves alternate.  Play costs of
    corresponding situations are preserved exactly.  Raises NoTerminalPath
    if no play can terminate."""
    out, _, _ = normalize_with_maps(
        game, merge_terminals, prune_unreachable, bipartize
    )
    return out


# ---------------------------------------------------------------------------
# the decreasing-cost family used in tests and docs


def caterpillar(depth: int) -> SPGame:
    """One-player game on a path of `depth` + 1 choice vertices: the k-th
    main arc costs 4**-k and the exit arc after k moves costs 2 * 4**-k, so
    terminating later is always strictly cheaper.  Both players are charged
    the same costs; all choice vertices belong to player 1."""
    if depth < 1:
        raise InputError("depth must be at least 1")
    n = depth + 2  # choice vertices 0..depth, terminal = depth + 1
    t = n - 1
    pairs = []
    costs: list[Fraction] = []
    for k in range(depth + 1):
        pairs.append((k, t))
        costs.append(2 * Fraction(1, 4) ** k)
        if k < depth:
            pairs.append((k, k + 1))
            costs.append(Fraction(1, 4) ** k)
    owner = tuple([PLAYER1] * (depth + 1) + [TERMINAL])
    names = tuple([f"p{k}" for k in range(depth + 1)] + ["t"])
    g = Digraph.from_arcs(n, pairs)
    return SPGame(g, owner, 0, tuple(costs), tuple(costs), names)
