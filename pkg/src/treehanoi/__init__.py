"""Trees of Hanoi: solvers, exact move counts, trace verification and a
breadth-first optimality oracle for relocating full m-ary trees."""

from .counting import QuadraticValue, count_f_closed, count_fgh, count_t
from .model import (
    Configuration,
    GameParams,
    Move,
    Position,
    apply_move,
    format_position,
    initial_configuration,
    legal_moves,
    node_at,
    parse_position,
)
from .oracle import TaskSpec, canonical_key, shortest, shortest_restricted
from .solvers import solve_f, solve_g, solve_h, solve_mary, solve_t
from .trace import Trace, TraceHeader
from .verifier import Verdict, analyze_largest_moves, check_ancestor, check_trace

__version__ = "0.1.0"

__all__ = [
    "QuadraticValue",
    "count_f_closed",
    "count_fgh",
    "count_t",
    "Configuration",
    "GameParams",
    "Move",
    "Position",
    "apply_move",
    "format_position",
    "initial_configuration",
    "legal_moves",
    "node_at",
    "parse_position",
    "TaskSpec",
    "canonical_key",
    "shortest",
    "shortest_restricted",
    "solve_f",
    "solve_g",
    "solve_h",
    "solve_mary",
    "solve_t",
    "Trace",
    "TraceHeader",
    "Verdict",
    "analyze_largest_moves",
    "check_ancestor",
    "check_trace",
]
