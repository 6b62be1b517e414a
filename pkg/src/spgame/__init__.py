"""Nash equilibria in pure stationary strategies for two-person shortest
path games and shortest path interdiction games."""

from .costs import INF, parse_cost
from .dijkstra import (
    HAVE_NATIVE,
    Potentials,
    interdicted_distances,
    shortest_longest_distances,
    verify_potentials,
)
from .errors import (
    BlockerExists,
    CapExceeded,
    InfinitePotential,
    InputError,
    InternalInvariantError,
    InvalidSubset,
    NoTerminalPath,
    OracleViolation,
    PreconditionViolated,
    SPGameError,
    WeakPlayerCanForce,
)
from .game import (
    PLAYER1,
    PLAYER2,
    TERMINAL,
    Play,
    SPGame,
    Situation,
    caterpillar,
    effective_cost,
    normalize,
    opponent,
    play_of,
    situations,
    validate,
    validate_situation,
)
from .graph import Digraph, min_mean_cycle
from .independence import (
    BudgetRule,
    CardinalityRule,
    DualRule,
    ExplicitRule,
    IndependenceOracle,
    cardinality_oracle,
    explicit_rule,
    sp_blocking_oracle,
)
from .interdiction import (
    InterdictionGame,
    InterdictionNEResult,
    InterdictionSituation,
    interdiction_cost,
    reduce_to_sp,
    solve_interdiction,
    validate_interdiction_situation,
)
from .ne import (
    NEResult,
    aligned_reduced_costs,
    can_block,
    can_force_infinite,
    ne_from_zero_reduced_costs,
    solve,
    terminal_ne_against_forcer,
)
from .transform import ReducedCosts, reduce_costs
from .bruteforce import (
    best_response_value,
    exhaustive_phi,
    search_terminal_ne,
    verify_ne,
    verify_ne_by_distances,
    verify_ne_interdiction,
)
from .generators import InstanceGenerator, layered_graph

__version__ = "0.1.0"

__all__ = [
    "INF",
    "parse_cost",
    "HAVE_NATIVE",
    "Potentials",
    "interdicted_distances",
    "shortest_longest_distances",
    "verify_potentials",
    "SPGameError",
    "InputError",
    "NoTerminalPath",
    "InvalidSubset",
    "OracleViolation",
    "PreconditionViolated",
    "BlockerExists",
    "WeakPlayerCanForce",
    "InfinitePotential",
    "CapExceeded",
    "InternalInvariantError",
    "PLAYER1",
    "PLAYER2",
    "TERMINAL",
    "SPGame",
    "Situation",
    "Play",
    "caterpillar",
    "effective_cost",
    "normalize",
    "opponent",
    "play_of",
    "situations",
    "validate",
    "validate_situation",
    "Digraph",
    "min_mean_cycle",
    "CardinalityRule",
    "BudgetRule",
    "ExplicitRule",
    "DualRule",
    "IndependenceOracle",
    "cardinality_oracle",
    "explicit_rule",
    "sp_blocking_oracle",
    "InterdictionGame",
    "InterdictionSituation",
    "InterdictionNEResult",
    "interdiction_cost",
    "reduce_to_sp",
    "solve_interdiction",
    "validate_interdiction_situation",
    "NEResult",
    "aligned_reduced_costs",
    "can_block",
    "can_force_infinite",
    "ne_from_zero_reduced_costs",
    "solve",
    "terminal_ne_against_forcer",
    "ReducedCosts",
    "reduce_costs",
    "best_response_value",
    "exhaustive_phi",
    "search_terminal_ne",
    "verify_ne",
    "verify_ne_by_distances",
    "verify_ne_interdiction",
    "InstanceGenerator",
    "layered_graph",
    "__version__",
]
