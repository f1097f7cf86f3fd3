"""Trace replay, the ancestor condition, and largest-node move analysis."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from .model import Configuration, IllegalMove, InvalidPosition, Move, Position, check_move, validate_position
from .trace import Trace

if TYPE_CHECKING:
    from .oracle import TaskSpec

__all__ = [
    "Verdict",
    "HeaderMismatch",
    "IllegalTrace",
    "check_trace",
    "check_ancestor",
    "replay",
    "analyze_largest_moves",
    "LargestMove",
    "LargestMoveReport",
]


class HeaderMismatch(ValueError):
    pass


class IllegalTrace(ValueError):
    def __init__(self, verdict: Verdict) -> None:
        self.verdict = verdict
        super().__init__(str(verdict))


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    step: int | None = None
    error: str | None = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.accepted

    def __str__(self) -> str:
        if self.accepted:
            return "Accept"
        text = f"Reject at step {self.step}: {self.error}" if self.step else f"Reject: {self.error}"
        return f"{text} ({self.message})" if self.message else text

    def as_dict(self) -> dict[str, object]:
        return {"accepted": self.accepted, "step": self.step, "error": self.error,
                "message": self.message}


ACCEPT = Verdict(True)


def _replay(
    initial: Configuration, moves: Iterable[Move], labels: dict[Position, Position] | None = None,
    ancestor: bool = False,
) -> tuple[dict[Position, int], Verdict]:
    """Replay on a mutable position->size map; stop at the first failure.

    With ``labels`` each node carries its original position; with
    ``ancestor`` every move onto a leg must land on an original ancestor.
    """
    params = initial.params
    nodes = dict(initial.nodes)
    m = params.m
    valid: set[Position] = set()
    for step, mv in enumerate(moves, start=1):
        try:
            for p in (mv.src, mv.dst):
                if p not in valid:
                    validate_position(p, params)
                    valid.add(p)
            size = check_move(nodes, m, mv)
        except (IllegalMove, InvalidPosition) as exc:
            kind = getattr(exc, "kind", type(exc).__name__)
            return nodes, Verdict(False, step, kind, str(exc))
        if labels is not None:
            label = labels.pop(mv.src)
            if ancestor and mv.dst.path:
                father = labels[Position(mv.dst.place, mv.dst.path[:-1])]
                if not father.is_proper_prefix_of(label):
                    labels[mv.src] = label
                    return nodes, Verdict(
                        False, step, "AncestorViolation",
                        f"{mv}: node from {label} placed on node from {father}",
                    )
            labels[mv.dst] = label
        del nodes[mv.src]
        nodes[mv.dst] = size
    return nodes, ACCEPT


def _check_header(initial: Configuration, trace: Trace) -> None:
    if trace.params != initial.params:
        raise HeaderMismatch(f"trace is for {trace.params}, configuration for {initial.params}")
    if trace.initial_configuration() != initial:
        raise HeaderMismatch("trace header layout differs from the given initial configuration")


def replay(initial: Configuration, moves: Iterable[Move]) -> Configuration:
    """Configuration after ``moves``; raises :class:`IllegalTrace` on failure."""
    nodes, verdict = _replay(initial, moves)
    if not verdict:
        raise IllegalTrace(verdict)
    return Configuration(initial.params, nodes)


def check_trace(
    initial: Configuration, trace: Trace, expected_final: Configuration | None
) -> Verdict:
    """Accept iff every move is legal in turn and the end state is ``expected_final``.

    ``expected_final=None`` checks legality only.
    """
    _check_header(initial, trace)
    nodes, verdict = _replay(initial, trace.moves)
    if not verdict:
        return verdict
    if expected_final is not None and nodes != dict(expected_final.nodes):
        return Verdict(False, None, "WrongFinal", "final configuration differs from the goal")
    return ACCEPT


def check_ancestor(initial: Configuration, trace: Trace) -> Verdict:
    """Accept iff each node is only ever put on an original ancestor or a place."""
    _check_header(initial, trace)
    labels = {p: p for p in initial.nodes}
    _, verdict = _replay(initial, trace.moves, labels, ancestor=True)
    return verdict


@dataclass(frozen=True)
class LargestMove:
    step: int
    move: Move
    kind: str  # "old->new", "old->old", "new->new", "new->old" or "other"


@dataclass(frozen=True)
class LargestMoveReport:
    moves: tuple[LargestMove, ...] = field(default_factory=tuple)

    @property
    def total(self) -> int:
        return len(self.moves)

    def count(self, kind: str) -> int:
        return sum(1 for lm in self.moves if lm.kind == kind)


def analyze_largest_moves(trace: Trace, task: TaskSpec) -> LargestMoveReport:
    """List every move of a size-n node, classified by old/new place."""
    params = trace.params
    initial = trace.initial_configuration()
    old, new = set(task.old_places), set(task.new_places)

    def side(place: int) -> str:
        return "old" if place in old else "new" if place in new else "?"

    nodes = dict(initial.nodes)
    found = []
    for step, mv in enumerate(trace.moves, start=1):
        try:
            size = check_move(nodes, params.m, mv)
        except IllegalMove as exc:
            raise IllegalTrace(Verdict(False, step, exc.kind, str(exc))) from exc
        if size == params.n:
            kind = f"{side(mv.src.place)}->{side(mv.dst.place)}"
            found.append(LargestMove(step, mv, kind if "?" not in kind else "other"))
        del nodes[mv.src]
        nodes[mv.dst] = size
    return LargestMoveReport(tuple(found))
