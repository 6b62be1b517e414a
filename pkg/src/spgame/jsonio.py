"""JSON game formats and DOT export.

A plain game file carries owned vertices, arcs with two costs, and a start
vertex; an interdiction game file adds a terminal and per-vertex oracle
specs and drops owners.  Costs are integers or exact decimal/fraction
strings; floats are rejected.  Arc order in the file is the arc index, the
package-wide tie-breaker, so identical files give identical results.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Mapping

from .costs import cost_to_json, parse_cost
from .dijkstra import Potentials
from .errors import InputError
from .game import PLAYER1, PLAYER2, TERMINAL, Play, SPGame, Situation
from .graph import Digraph
from .independence import (
    BudgetRule,
    CardinalityRule,
    ExplicitRule,
    IndependenceOracle,
    explicit_rule,
)
from .interdiction import (
    InterdictionGame,
    InterdictionNEResult,
    InterdictionSituation,
)
from .ne import NEResult

_OWNER_TO_JSON = {PLAYER1: "P1", PLAYER2: "P2", TERMINAL: "T"}
_OWNER_FROM_JSON = {v: k for k, v in _OWNER_TO_JSON.items()}


def _vertex_table(obj) -> tuple[list[str], dict[str, int]]:
    if "vertices" not in obj or not isinstance(obj["vertices"], list):
        raise InputError("missing vertex list")
    names = []
    index: dict[str, int] = {}
    for row in obj["vertices"]:
        vid = str(row["id"])
        if vid in index:
            raise InputError(f"duplicate vertex id {vid!r}")
        index[vid] = len(names)
        names.append(vid)
    return names, index


def _arc_table(obj, index) -> tuple[list[tuple[int, int]], list[Fraction], list[Fraction]]:
    pairs = []
    r1 = []
    r2 = []
    for pos, row in enumerate(obj.get("arcs", [])):
        if "id" in row and int(row["id"]) != pos:
            raise InputError(
                f"arc ids must match list positions (arc {pos} has id "
                f"{row['id']!r})"
            )
        try:
            pairs.append((index[str(row["tail"])], index[str(row["head"])]))
        except KeyError as exc:
            raise InputError(f"arc {pos}: unknown endpoint {exc}") from exc
        try:
            r1.append(parse_cost(row["r1"]))
            r2.append(parse_cost(row["r2"]))
        except (KeyError, InputError) as exc:
            raise InputError(f"arc {pos}: bad cost ({exc})") from exc
    return pairs, r1, r2


def game_from_json(obj: Mapping) -> SPGame:
    names, index = _vertex_table(obj)
    owner = []
    for row in obj["vertices"]:
        o = row.get("owner")
        if o not in _OWNER_FROM_JSON:
            raise InputError(f"vertex {row['id']!r}: owner must be P1, P2 or T")
        owner.append(_OWNER_FROM_JSON[o])
    pairs, r1, r2 = _arc_table(obj, index)
    if str(obj.get("start")) not in index:
        raise InputError("missing or unknown start vertex")
    return SPGame(
        Digraph.from_arcs(len(names), pairs),
        tuple(owner),
        index[str(obj["start"])],
        tuple(r1),
        tuple(r2),
        tuple(names),
    )


def game_to_json(game: SPGame) -> dict:
    return {
        "vertices": [
            {"id": game.names[u], "owner": _OWNER_TO_JSON[game.owner[u]]}
            for u in range(game.graph.n)
        ],
        "arcs": [
            {
                "id": e,
                "tail": game.names[game.graph.tails[e]],
                "head": game.names[game.graph.heads[e]],
                "r1": cost_to_json(game.r1[e]),
                "r2": cost_to_json(game.r2[e]),
            }
            for e in range(game.graph.m)
        ],
        "start": game.names[game.start],
    }


def _rule_from_json(row, graph, u) -> object:
    kind = row.get("kind")
    deg = len(graph.out[u])
    if kind == "cardinality":
        k = int(row["k"])
        if not 0 <= k < deg:
            raise InputError(
                f"vertex {row['vertex']!r}: cardinality bound {k} out of "
                f"range for {deg} arcs"
            )
        return CardinalityRule(k)
    if kind == "budget":
        costs = {}
        for key, val in row["costs"].items():
            costs[int(key)] = parse_cost(val)
        missing = [e for e in graph.out[u] if e not in costs]
        if missing:
            raise InputError(
                f"vertex {row['vertex']!r}: budget costs missing arcs {missing}"
            )
        bad = [e for e, c in costs.items() if c <= 0]
        if bad:
            raise InputError(
                f"vertex {row['vertex']!r}: non-positive removal costs on {bad}"
            )
        return BudgetRule(costs, parse_cost(row["budget"]))
    if kind == "explicit":
        sets = [frozenset(int(e) for e in s) for s in row["maximal"]]
        ground = set(graph.out[u])
        for s in sets:
            if not s <= ground:
                raise InputError(
                    f"vertex {row['vertex']!r}: explicit set {sorted(s)} "
                    "contains non-outgoing arcs"
                )
        return explicit_rule(sets)
    if kind == "sp":
        owner = row.get("owner")
        if owner not in ("P1", "P2"):
            raise InputError(
                f"vertex {row['vertex']!r}: sp oracle needs owner P1 or P2"
            )
        return CardinalityRule(deg - 1 if owner == "P1" else 0)
    raise InputError(f"unknown oracle kind {kind!r}")


def interdiction_from_json(obj: Mapping) -> InterdictionGame:
    names, index = _vertex_table(obj)
    pairs, r1, r2 = _arc_table(obj, index)
    graph = Digraph.from_arcs(len(names), pairs)
    for key in ("start", "terminal"):
        if str(obj.get(key)) not in index:
            raise InputError(f"missing or unknown {key} vertex")
    rules = {}
    for row in obj.get("oracles", []):
        vid = str(row.get("vertex"))
        if vid not in index:
            raise InputError(f"oracle spec for unknown vertex {vid!r}")
        u = index[vid]
        if u in rules:
            raise InputError(f"duplicate oracle spec for vertex {vid!r}")
        rules[u] = _rule_from_json(row, graph, u)
    oracle = IndependenceOracle(graph, rules)
    return InterdictionGame(
        graph,
        index[str(obj["start"])],
        index[str(obj["terminal"])],
        tuple(r1),
        tuple(r2),
        oracle,
        tuple(names),
    )


def _rule_to_json(rule, name) -> dict:
    if isinstance(rule, CardinalityRule):
        return {"vertex": name, "kind": "cardinality", "k": rule.k}
    if isinstance(rule, BudgetRule):
        return {
            "vertex": name,
            "kind": "budget",
            "costs": {str(e): cost_to_json(c) for e, c in sorted(rule.costs.items())},
            "budget": cost_to_json(rule.budget),
        }
    if isinstance(rule, ExplicitRule):
        return {
            "vertex": name,
            "kind": "explicit",
            "maximal": [sorted(s) for s in rule.maximal],
        }
    raise InputError(
        f"oracle rule at vertex {name!r} has no JSON form "
        f"({type(rule).__name__})"
    )


def interdiction_to_json(game: InterdictionGame) -> dict:
    g = game.graph
    return {
        "vertices": [{"id": game.names[u]} for u in range(g.n)],
        "arcs": [
            {
                "id": e,
                "tail": game.names[g.tails[e]],
                "head": game.names[g.heads[e]],
                "r1": cost_to_json(game.r1[e]),
                "r2": cost_to_json(game.r2[e]),
            }
            for e in range(g.m)
        ],
        "start": game.names[game.start],
        "terminal": game.names[game.terminal],
        "oracles": [
            _rule_to_json(rule, game.names[u])
            for u, rule in sorted(game.oracle.rules.items())
        ],
    }


def load_any(obj: Mapping):
    """Dispatch on file shape: oracle specs mean an interdiction game."""
    if "oracles" in obj:
        return interdiction_from_json(obj)
    return game_from_json(obj)


def load_path(path: str):
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(obj, dict):
        raise InputError(f"{path}: expected a JSON object")
    return load_any(obj)


# ---------------------------------------------------------------------------
# results


def jsonable(value) -> Any:
    """Recursive conversion of result payloads (fractions, sets, tuples)
    into JSON-ready structures."""
    if isinstance(value, (Fraction, float)):
        return cost_to_json(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))}
    if isinstance(value, (set, frozenset)):
        return [jsonable(v) for v in sorted(value)]
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


def situation_to_json(game: SPGame, sit: Situation) -> dict:
    return {
        "sigma1": {game.names[u]: e for u, e in sorted(sit.sigma1.items())},
        "sigma2": {game.names[u]: e for u, e in sorted(sit.sigma2.items())},
    }


def situation_from_json(game: SPGame, obj: Mapping) -> Situation:
    index = {name: u for u, name in enumerate(game.names)}

    def convert(part):
        out = {}
        for name, e in part.items():
            if name not in index:
                raise InputError(f"unknown vertex {name!r} in situation")
            out[index[name]] = int(e)
        return out

    return Situation(convert(obj.get("sigma1", {})), convert(obj.get("sigma2", {})))


def play_to_json(game: SPGame, play: Play) -> dict:
    return {
        "kind": play.kind,
        "arcs": list(play.arcs),
        "vertices": [game.names[u] for u in play.vertices(game)],
        "cycle_start": play.cycle_start,
        "r1": cost_to_json(play.cost1),
        "r2": cost_to_json(play.cost2),
    }


def ne_result_to_json(game: SPGame, res: NEResult, certificate: bool = False) -> dict:
    out = {
        "kind": res.kind,
        "costs": {"r1": cost_to_json(res.cost1), "r2": cost_to_json(res.cost2)},
        "situation": situation_to_json(game, res.situation),
        "play": play_to_json(game, res.play),
    }
    if certificate:
        out["certificate"] = jsonable(res.certificate)
    return out


def interdiction_situation_to_json(
    game: InterdictionGame, sit: InterdictionSituation
) -> dict:
    return {
        "removed": {
            game.names[u]: sorted(arcs) for u, arcs in sorted(sit.removed.items())
        },
        "offered": {
            game.names[u]: sorted(arcs) for u, arcs in sorted(sit.offered.items())
        },
    }


def interdiction_situation_from_json(
    game: InterdictionGame, obj: Mapping
) -> InterdictionSituation:
    index = {name: u for u, name in enumerate(game.names)}

    def convert(part):
        out = {}
        for name, arcs in part.items():
            if name not in index:
                raise InputError(f"unknown vertex {name!r} in situation")
            out[index[name]] = frozenset(int(e) for e in arcs)
        return out

    return InterdictionSituation(
        convert(obj.get("removed", {})), convert(obj.get("offered", {}))
    )


def interdiction_result_to_json(
    game: InterdictionGame, res: InterdictionNEResult, certificate: bool = False
) -> dict:
    out = {
        "kind": res.kind,
        "costs": {"r1": cost_to_json(res.cost1), "r2": cost_to_json(res.cost2)},
        "situation": interdiction_situation_to_json(game, res.situation),
        "path": list(res.path) if res.path is not None else None,
    }
    if certificate:
        out["certificate"] = jsonable(res.certificate)
    return out


def potentials_to_json(names, pot: Potentials) -> dict:
    return {
        "phi": {
            names[u]: cost_to_json(pot.potential[u]) for u in range(len(names))
        },
        "blocked": {
            names[u]: sorted(pot.blocked[u])
            for u in range(len(names))
            if pot.blocked[u]
        },
        "B": sorted(names[u] for u in pot.infinite_vertices),
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# DOT


def export_dot(
    game,
    play: Play | None = None,
    situation: Situation | None = None,
) -> str:
    """Graphviz rendering; play arcs red and bold, other strategy arcs
    dashed blue.  Works for plain games (owner shapes) and interdiction
    games (plain circles)."""
    g = game.graph
    lines = ["digraph game {"]
    owners = getattr(game, "owner", None)
    for u in range(g.n):
        shape = "circle"
        if owners is not None:
            shape = {
                PLAYER1: "box",
                PLAYER2: "ellipse",
                TERMINAL: "doublecircle",
            }[owners[u]]
        elif u == getattr(game, "terminal", None):
            shape = "doublecircle"
        extra = ", style=bold" if u == game.start else ""
        lines.append(f'  "{game.names[u]}" [shape={shape}{extra}];')
    play_arcs = set(play.arcs) if play is not None else set()
    strategy_arcs = set()
    if situation is not None:
        strategy_arcs = set(situation.sigma1.values()) | set(
            situation.sigma2.values()
        )
    for e in range(g.m):
        u, v = g.tails[e], g.heads[e]
        label = f"{cost_to_json(game.r1[e])}/{cost_to_json(game.r2[e])}"
        attrs = [f'label="{label}"']
        if e in play_arcs:
            attrs.append("color=red")
            attrs.append("penwidth=2")
        elif e in strategy_arcs:
            attrs.append("color=blue")
            attrs.append("style=dashed")
        lines.append(
            f'  "{game.names[u]}" -> "{game.names[v]}" [{", ".join(attrs)}];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
