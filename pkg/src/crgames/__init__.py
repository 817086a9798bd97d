"""crgames: solver, simplifier, and play engine for same-round games.

Positions are combinatorial games played in rounds: Left commits a
move, Right answers with full knowledge of it, and a round resolves
through the same-round matrix.  The package covers the base theory
(outcomes, disjunctive sums, partial order, reductions), the
matching-based optimal strategies for sums of simple hot games, a full
toppling-dominoes ruleset, and a CLI plus JSON HTTP play service.
"""

from .arena import ComponentMove, SumArena, add, add_all, arena_moves, arena_round
from .errors import (
    CRGamesError,
    IllegalMoveError,
    InvalidPositionError,
    IterationLimitError,
    NoMoveError,
    ParseError,
    ResourceLimitError,
    SizeLimitError,
)
from .matching import (
    AuxGraph,
    Matching,
    brute_force_matching,
    build_aux_graph,
    dot_export,
    min_weight_matching,
)
from .notation import (
    format_position,
    format_terms,
    parse_terms,
    position_from_obj,
    position_to_obj,
)
from .ordering import (
    ContextFamily,
    OrderVerdict,
    Relation,
    cmp_sound,
    compare,
    default_family,
    equiv_mod,
    get_family,
    refute_geq,
)
from .position import (
    IntGame,
    Node,
    Outcome,
    Position,
    STAR_BAR,
    ZERO,
    as_int,
    birthday,
    conjugate,
    followers,
    is_dicot,
    mk_int,
    mk_node,
    relabel,
    sh_node,
    sh_shape,
    structural_key,
    unfold,
)
from .reduce import (
    collapse_integer_bracket,
    remove_dominated_left,
    remove_dominated_right,
    replace_sr_option,
    simplify,
)
from .simplehot import (
    SHGame,
    SHSolution,
    SHSum,
    normalize,
    sh_sum_from_components,
    sh_value_oracle,
    solve_sh,
    standard_index,
    translate,
)
from .solver import (
    SolveResult,
    Solver,
    best_left_move,
    best_right_response,
    default_solver,
    outcome,
    score,
    solve,
)
from .td2 import (
    TD2Move,
    TD2Position,
    TD2Row,
    TD2Solution,
    apply_round,
    best_right_response_td2,
    legal_moves,
    parse_td2,
    solve_td2,
    td2_outcome_oracle,
    to_integer,
    to_simple_hot,
)

__version__ = "0.1.0"
