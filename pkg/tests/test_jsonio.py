import json
from fractions import Fraction as F

import pytest

from spgame.errors import InputError
from spgame.game import PLAYER1
from spgame.independence import CardinalityRule
from spgame.interdiction import InterdictionGame
from spgame.jsonio import (
    dumps,
    export_dot,
    game_from_json,
    game_to_json,
    interdiction_from_json,
    interdiction_situation_from_json,
    interdiction_situation_to_json,
    interdiction_to_json,
    jsonable,
    load_any,
    load_path,
    ne_result_to_json,
    potentials_to_json,
    situation_from_json,
    situation_to_json,
)
from spgame.generators import InstanceGenerator
from spgame.ne import solve


def test_load_game_fixture(data_dir):
    game = load_path(str(data_dir / "chain.json"))
    assert game.names == ("s", "a", "b", "t")
    assert game.owner == (PLAYER1, 2, PLAYER1, 0) or game.graph.n == 4
    assert game.r2[2] == F(1, 2)
    assert game.start == 0


def test_load_interdiction_fixture(data_dir):
    game = load_path(str(data_dir / "interdict3.json"))
    assert isinstance(game, InterdictionGame)
    assert isinstance(game.oracle.rules[0], CardinalityRule)


def test_game_roundtrip():
    gen = InstanceGenerator(seed=515)
    for _ in range(10):
        game = gen.sp_game(max_vertices=6)
        back = game_from_json(game_to_json(game))
        assert back == game


def test_interdiction_roundtrip_all_rule_kinds():
    gen = InstanceGenerator(seed=616)
    seen = set()
    for _ in range(25):
        inst = gen.interdiction_game(max_vertices=5)
        seen.update(type(r).__name__ for r in inst.oracle.rules.values())
        back = interdiction_from_json(interdiction_to_json(inst))
        assert back.graph == inst.graph
        assert back.r1 == inst.r1 and back.r2 == inst.r2
        for u, rule in inst.oracle.rules.items():
            assert type(back.oracle.rules[u]) is type(rule)
            assert back.oracle.rules[u] == rule
    assert seen == {"CardinalityRule", "BudgetRule", "ExplicitRule"}


def test_load_any_dispatch():
    gen = InstanceGenerator(seed=717)
    game = gen.sp_game(max_vertices=4)
    inst = gen.interdiction_game(max_vertices=4)
    assert load_any(game_to_json(game)) == game
    assert isinstance(load_any(interdiction_to_json(inst)), InterdictionGame)


def test_arc_ids_must_be_positional():
    game = InstanceGenerator(seed=1).sp_game(max_vertices=4)
    obj = game_to_json(game)
    obj["arcs"][0]["id"] = 99
    with pytest.raises(InputError):
        game_from_json(obj)


def test_unknown_owner_rejected():
    obj = {
        "vertices": [
            {"id": "s", "owner": "P3"},
            {"id": "t", "owner": "T"},
        ],
        "start": "s",
        "arcs": [{"id": 0, "tail": "s", "head": "t", "r1": 1, "r2": 1}],
    }
    with pytest.raises(InputError, match="owner"):
        game_from_json(obj)


def test_unknown_rule_kind_rejected():
    game = InstanceGenerator(seed=2).interdiction_game(max_vertices=3)
    obj = interdiction_to_json(game)
    obj["oracles"][0] = {"vertex": "v0", "kind": "matroid"}
    with pytest.raises(InputError):
        interdiction_from_json(obj)


def test_situation_roundtrip():
    gen = InstanceGenerator(seed=818)
    game = gen.sp_game(max_vertices=5)
    from spgame.game import situations

    sit = next(iter(situations(game)))
    back = situation_from_json(game, situation_to_json(game, sit))
    assert back == sit


def test_interdiction_situation_roundtrip():
    gen = InstanceGenerator(seed=919)
    inst = gen.interdiction_game(max_vertices=4)
    from spgame.interdiction import solve_interdiction

    sit = solve_interdiction(inst).situation
    back = interdiction_situation_from_json(
        inst, interdiction_situation_to_json(inst, sit)
    )
    assert back.removed == sit.removed
    assert back.offered == sit.offered


def test_result_serialization_shape():
    game = InstanceGenerator(seed=3).sp_game(max_vertices=5)
    res = solve(game)
    obj = ne_result_to_json(game, res, certificate=True)
    assert obj["kind"] == res.kind
    assert "situation" in obj and "certificate" in obj
    json.dumps(obj)  # serializable without custom encoders

    bare = ne_result_to_json(game, res)
    assert "certificate" not in bare


def test_potentials_serialization():
    from spgame.dijkstra import shortest_longest_distances

    game = InstanceGenerator(seed=4).sp_game(max_vertices=5)
    pot = shortest_longest_distances(game, PLAYER1)
    obj = potentials_to_json(game.names, pot)
    assert set(obj["phi"]) == set(game.names)
    for u in pot.infinite_vertices:
        assert obj["phi"][game.names[u]] == "inf"
        assert game.names[u] in obj["B"]
    json.dumps(obj)


def test_jsonable_handles_nested_values():
    obj = jsonable(
        {"a": F(1, 3), "b": (F(2), [frozenset({1})]), "c": float("inf")}
    )
    assert obj == {"a": "1/3", "b": [2, [[1]]], "c": "inf"}


def test_dumps_deterministic():
    gen1 = InstanceGenerator(seed=42)
    gen2 = InstanceGenerator(seed=42)
    a = dumps(game_to_json(gen1.sp_game(max_vertices=6)))
    b = dumps(game_to_json(gen2.sp_game(max_vertices=6)))
    assert a == b
    assert a.endswith("\n")
    assert json.loads(a)  # stays valid JSON


def test_export_dot_markers():
    game = InstanceGenerator(seed=5).sp_game(max_vertices=5)
    res = solve(game)
    dot = export_dot(game, play=res.play, situation=res.situation)
    assert dot.startswith("digraph")
    assert "doublecircle" in dot  # terminal vertex
    assert "penwidth=2" in dot or res.play.arcs == ()
    assert dot.count("->") == game.graph.m
