import random
from fractions import Fraction as F

import pytest

from spgame.bruteforce import exhaustive_phi
from spgame.costs import INF
from spgame.dijkstra import (
    HAVE_NATIVE,
    Potentials,
    dist_from_source,
    dist_to_target,
    interdicted_distances,
    shortest_longest_distances,
    tight_path,
    verify_potentials,
)
from spgame.errors import InputError, InternalInvariantError, OracleViolation
from spgame.game import PLAYER1, PLAYER2, TERMINAL, SPGame
from spgame.generators import InstanceGenerator
from spgame.graph import Digraph
from spgame.independence import (
    BudgetRule,
    CardinalityRule,
    IndependenceOracle,
    cardinality_oracle,
    explicit_rule,
)


def diamond():
    """s has a cheap and a direct arc, a has two exits of cost 1 and 3;
    one removal allowed everywhere."""
    g = Digraph.from_arcs(3, [(0, 1), (0, 2), (1, 2), (1, 2)])
    w = (F(1), F(5), F(1), F(3))
    oracle = cardinality_oracle(g, {0: 1, 1: 1})
    return g, w, oracle


# ---------------------------------------------------------------------------
# worked example, frozen by hand


def test_sweep_worked_example():
    g, w, oracle = diamond()
    pot = interdicted_distances(g, 2, w, oracle)
    assert pot.potential == (F(5), F(3), 0)
    assert pot.blocked == (frozenset({0}), frozenset({2}), frozenset())
    assert pot.witness == (1, 3, None)
    assert pot.order == (2, 1, 0)
    assert pot[0] == 5
    assert pot.finite_vertices == {0, 1, 2}


def test_sweep_detects_blocked_region():
    # both exits of a can never both survive: k=1 of 2 leaves one, but
    # giving the blocker both (k=2 is illegal) -- instead strand a vertex
    g = Digraph.from_arcs(3, [(0, 2), (1, 0)])
    oracle = cardinality_oracle(g, 0)
    pot = interdicted_distances(g, 2, (F(1), F(1)), oracle)
    assert pot[1] == 2 and pot[0] == 1

    g = Digraph.from_arcs(3, [(0, 2), (1, 1)])
    pot = interdicted_distances(g, 2, (F(1), F(2)), cardinality_oracle(g, 0))
    assert pot[1] == INF
    assert pot.infinite_vertices == {1}
    assert pot.witness[1] is None


def test_zero_weights_allowed():
    g = Digraph.from_arcs(3, [(0, 1), (1, 2)])
    pot = interdicted_distances(g, 2, (0, 0), cardinality_oracle(g, 0))
    assert pot.potential == (0, 0, 0)


@pytest.mark.parametrize("bad", [-1, 0.5, F(-1, 2)])
def test_invalid_weights_rejected(bad):
    g = Digraph.from_arcs(2, [(0, 1)])
    with pytest.raises(InputError):
        interdicted_distances(g, 1, (bad,), cardinality_oracle(g, 0))


def test_finalization_order_is_monotone():
    gen = InstanceGenerator(seed=9)
    for _ in range(30):
        inst = gen.interdiction_game(max_vertices=7)
        pot = interdicted_distances(
            inst.graph, inst.terminal, inst.r2, inst.oracle
        )
        vals = [pot[u] for u in pot.order]
        assert all(a <= b for a, b in zip(vals, vals[1:]))


# ---------------------------------------------------------------------------
# degenerate oracles reduce to classical shortest paths


def test_cardinality_zero_is_plain_dijkstra():
    rng = random.Random(31)
    for _ in range(25):
        n = rng.randint(2, 8)
        arcs = [
            (u, rng.randrange(n))
            for u in range(n - 1)
            for _ in range(rng.randint(1, 3))
        ]
        arcs.append((n - 2 if n > 1 else 0, n - 1))
        g = Digraph.from_arcs(n, arcs)
        w = [F(rng.randint(1, 9)) for _ in arcs]
        pot = interdicted_distances(g, n - 1, w, cardinality_oracle(g, 0))
        assert list(pot.potential) == dist_to_target(g, n - 1, w)


def test_dist_from_source_mirrors_dist_to_target():
    g = Digraph.from_arcs(3, [(0, 1), (1, 2), (0, 2)])
    w = (F(1), F(1), F(3))
    assert dist_from_source(g, 0, w) == [0, 1, 2]
    assert dist_to_target(g, 2, w) == [2, 1, 0]


def test_arc_filter_respected():
    g = Digraph.from_arcs(3, [(0, 1), (1, 2), (0, 2)])
    w = (F(1), F(1), F(3))
    assert dist_to_target(g, 2, w, arc_ok=lambda e: e != 1) == [3, INF, 0]


# ---------------------------------------------------------------------------
# agreement with the exhaustive oracle


def test_matches_exhaustive_enumeration():
    gen = InstanceGenerator(seed=77)
    for _ in range(40):
        inst = gen.interdiction_game(max_vertices=6, kinds=("explicit",))
        pot = interdicted_distances(
            inst.graph, inst.terminal, inst.r2, inst.oracle
        )
        brute = exhaustive_phi(inst.graph, inst.terminal, inst.r2, inst.oracle)
        assert list(pot.potential) == list(brute)


def test_enlarging_independence_never_shrinks_phi():
    # a blocker that may remove more can only push distances up
    gen = InstanceGenerator(seed=13)
    compared = 0
    for _ in range(25):
        inst = gen.interdiction_game(max_vertices=7, kinds=("cardinality",))
        g, t, w = inst.graph, inst.terminal, inst.r2
        base = interdicted_distances(g, t, w, inst.oracle)
        wider_rules = {
            u: CardinalityRule(min(len(g.out[u]) - 1, rule.k + 1))
            for u, rule in inst.oracle.rules.items()
        }
        if all(
            wider_rules[u].k == inst.oracle.rules[u].k for u in wider_rules
        ):
            continue
        wide = interdicted_distances(
            g, t, w, IndependenceOracle(g, wider_rules)
        )
        for u in range(g.n):
            assert wide[u] >= base[u]
        compared += 1
    assert compared >= 10


# ---------------------------------------------------------------------------
# certificate checking


def test_verify_accepts_genuine_potentials():
    g, w, oracle = diamond()
    pot = interdicted_distances(g, 2, w, oracle, check=False)
    verify_potentials(g, 2, w, oracle, pot)


def test_verify_rejects_corrupted_value():
    g, w, oracle = diamond()
    pot = interdicted_distances(g, 2, w, oracle, check=False)
    bad = Potentials(
        target=pot.target,
        potential=(F(4), pot.potential[1], pot.potential[2]),
        blocked=pot.blocked,
        witness=pot.witness,
        order=pot.order,
    )
    with pytest.raises(InternalInvariantError):
        verify_potentials(g, 2, w, oracle, bad)


def test_verify_rejects_overfull_removal_set():
    g, w, oracle = diamond()
    pot = interdicted_distances(g, 2, w, oracle, check=False)
    bad = Potentials(
        target=pot.target,
        potential=pot.potential,
        blocked=(frozenset({0, 1}), pot.blocked[1], pot.blocked[2]),
        witness=pot.witness,
        order=pot.order,
    )
    with pytest.raises(OracleViolation):
        verify_potentials(g, 2, w, oracle, bad)


def test_verify_rejects_false_infinity():
    g, w, oracle = diamond()
    bad = Potentials(
        target=2,
        potential=(INF, F(3), 0),
        blocked=(frozenset(), frozenset({2}), frozenset()),
        witness=(None, 3, None),
        order=(2, 1),
    )
    with pytest.raises(InternalInvariantError):
        verify_potentials(g, 2, w, oracle, bad)


# ---------------------------------------------------------------------------
# backend parity


@pytest.mark.skipif(not HAVE_NATIVE, reason="compiled kernel unavailable")
def test_backends_agree_on_random_instances():
    rng = random.Random(4)
    gen = InstanceGenerator(seed=4)
    for _ in range(40):
        inst = gen.interdiction_game(
            max_vertices=8, kinds=("cardinality", "budget")
        )
        g, t = inst.graph, inst.terminal
        w = list(inst.r2)
        if rng.random() < 0.5:
            w = [x * F(1, rng.randint(1, 5)) for x in w]
        py = interdicted_distances(g, t, w, inst.oracle, backend="python")
        nat = interdicted_distances(g, t, w, inst.oracle, backend="native")
        assert list(py.potential) == list(nat.potential)
        assert py.blocked == nat.blocked
        assert py.witness == nat.witness
        assert py.order == nat.order


@pytest.mark.skipif(not HAVE_NATIVE, reason="compiled kernel unavailable")
def test_native_backend_explicit_rules_fall_back():
    g = Digraph.from_arcs(2, [(0, 1), (0, 1)])
    oracle = IndependenceOracle(g, {0: explicit_rule([{0}, {1}])})
    with pytest.raises(InputError):
        interdicted_distances(g, 1, (F(1), F(2)), oracle, backend="native")
    pot = interdicted_distances(g, 1, (F(1), F(2)), oracle, backend="auto")
    assert pot[0] == 2


def test_unknown_backend_rejected():
    g = Digraph.from_arcs(2, [(0, 1)])
    with pytest.raises(InputError):
        interdicted_distances(
            g, 1, (F(1),), cardinality_oracle(g, 0), backend="gpu"
        )


# ---------------------------------------------------------------------------
# game-level wrapper


def test_shortest_longest_against_hand_solution():
    # at its own vertices a player picks, at the opponent's it suffers
    g = Digraph.from_arcs(3, [(0, 1), (1, 2), (1, 2), (0, 2)])
    game = SPGame(
        g,
        (PLAYER1, PLAYER2, TERMINAL),
        0,
        (F(1), F(1), F(6), F(9)),
        (F(1), F(1), F(6), F(9)),
    )
    pot1 = shortest_longest_distances(game, 1)
    assert pot1.potential == (F(7), F(6), 0)
    pot2 = shortest_longest_distances(game, 2)
    assert pot2.potential == (F(9), F(1), 0)


def test_tight_path_extraction():
    g = Digraph.from_arcs(4, [(0, 1), (1, 3), (0, 2), (2, 3), (0, 3)])
    w = (F(1), F(1), F(1), F(1), F(2))
    d = dist_to_target(g, 3, w)
    assert d[0] == 2
    path = tight_path(g, 0, 3, w, d)
    assert path == (0, 1)
    filtered = tight_path(g, 0, 3, w, dist_to_target(g, 3, w, lambda e: e > 1), lambda e: e > 1)
    assert filtered in ((2, 3), (4,))


def test_tight_path_unreachable():
    g = Digraph.from_arcs(2, [(1, 0)])
    with pytest.raises(InputError):
        tight_path(g, 0, 1, (F(1),), dist_to_target(g, 1, (F(1),)))
