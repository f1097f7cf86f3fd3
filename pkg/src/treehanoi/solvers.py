"""Recursive solvers that emit explicit move lists.

``t`` is the straightforward solver (each subtree relocated on its own);
``f``, ``g`` and ``h`` move one, two and three full trees and together give
the shortest solution.  ``mary_*`` generalizes f/g/h to m-ary trees, where
g moves m trees and h moves m + 1 trees.

The ``*_moves`` functions work on arbitrary positions (so they also describe
sub-problems high up in a bigger tree); the ``solve_*`` wrappers require bare
places and return a :class:`~treehanoi.trace.Trace` with header and goal.
"""

from __future__ import annotations

from collections.abc import Sequence
from functools import lru_cache
from itertools import combinations

from .model import GameParams, Move, Position
from .trace import Trace, make_trace

__all__ = [
    "t_moves",
    "f_moves",
    "g_moves",
    "h_moves",
    "mary_f_moves",
    "mary_g_moves",
    "mary_h_moves",
    "solve_t",
    "solve_f",
    "solve_g",
    "solve_h",
    "solve_mary",
    "OverlappingPositions",
]

PosLike = Position | int


class OverlappingPositions(ValueError):
    pass


def _pos(p: PosLike) -> Position:
    return Position(p) if isinstance(p, int) else Position(*p)


def _check_disjoint(positions: Sequence[Position]) -> None:
    for p, q in combinations(positions, 2):
        if p.overlaps(q):
            raise OverlappingPositions(f"positions {p} and {q} overlap")


@lru_cache(maxsize=1 << 16)
def _legs(p: Position, m: int) -> tuple[Position, ...]:
    return tuple(p.children(m))


# ---------------------------------------------------------------------------
# binary procedures


def _t(n: int, a: Position, b: Position, c: Position, d: Position, out: list[Move]) -> None:
    if n > 0:
        aL, aR = _legs(a, 2)
        bL, bR = _legs(b, 2)
        _t(n - 1, aL, c, b, d, out)
        _t(n - 1, aR, d, aL, b, out)
        out.append(Move(a, b))
        _t(n - 1, c, bL, a, bR, out)
        _t(n - 1, d, bR, a, c, out)


def _f(n: int, a: Position, b: Position, c: Position, d: Position, out: list[Move]) -> None:
    if n > 0:
        aL, aR = _legs(a, 2)
        bL, bR = _legs(b, 2)
        _g(n - 1, aL, aR, c, d, b, out)
        out.append(Move(a, b))
        _g(n - 1, c, d, bL, bR, a, out)


def _g(
    n: int, a: Position, b: Position, c: Position, d: Position, e: Position,
    out: list[Move],
) -> None:
    if n > 0:
        aL, aR = _legs(a, 2)
        bL, bR = _legs(b, 2)
        cL, cR = _legs(c, 2)
        dL, dR = _legs(d, 2)
        _g(n - 1, aL, aR, d, e, c, out)
        out.append(Move(a, c))
        _h(n - 1, bL, bR, d, a, cL, cR, out)
        out.append(Move(b, d))
        _g(n - 1, a, e, dL, dR, b, out)


def _h(
    n: int, a: Position, b: Position, c: Position,
    x: Position, y: Position, z: Position, out: list[Move],
) -> None:
    if n > 0:
        aL, aR = _legs(a, 2)
        bL, bR = _legs(b, 2)
        cL, cR = _legs(c, 2)
        xL, xR = _legs(x, 2)
        yL, yR = _legs(y, 2)
        zL, zR = _legs(z, 2)
        _g(n - 1, aL, aR, y, z, x, out)
        out.append(Move(a, x))
        _h(n - 1, bL, bR, y, a, xL, xR, out)
        out.append(Move(b, y))
        _h(n - 1, cL, cR, z, b, yL, yR, out)
        out.append(Move(c, z))
        _g(n - 1, a, b, zL, zR, c, out)


def t_moves(n: int, a: PosLike, b: PosLike, c: PosLike, d: PosLike) -> list[Move]:
    """Move the full binary tree of height ``n`` from a to b via c and d."""
    roles = [_pos(p) for p in (a, b, c, d)]
    _check_disjoint(roles)
    out: list[Move] = []
    _t(n, *roles, out)
    return out


def f_moves(n: int, a: PosLike, b: PosLike, c: PosLike, d: PosLike) -> list[Move]:
    """Shortest relocation of one full binary tree from a to b via c and d."""
    roles = [_pos(p) for p in (a, b, c, d)]
    _check_disjoint(roles)
    out: list[Move] = []
    _f(n, *roles, out)
    return out


def g_moves(
    n: int, a: PosLike, b: PosLike, c: PosLike, d: PosLike, e: PosLike
) -> list[Move]:
    """Move two full trees from a and b to c and d, via e."""
    roles = [_pos(p) for p in (a, b, c, d, e)]
    _check_disjoint(roles)
    out: list[Move] = []
    _g(n, *roles, out)
    return out


def h_moves(
    n: int, a: PosLike, b: PosLike, c: PosLike, x: PosLike, y: PosLike, z: PosLike
) -> list[Move]:
    """Move three full trees from a, b, c to x, y, z."""
    roles = [_pos(p) for p in (a, b, c, x, y, z)]
    _check_disjoint(roles)
    out: list[Move] = []
    _h(n, *roles, out)
    return out


# ---------------------------------------------------------------------------
# m-ary procedures
#
# g(S, T, e): m trees at S go to T, with e the spare new place.
#   g(legs of s1 -> t2..tm, e; spare t1); move s1 -> t1;
#   for i = 2..m: h(legs of s_i + [t_i] -> [s_{i-1}] + legs of t_{i-1}); move s_i -> t_i;
#   g(s1..s_{m-1}, e -> legs of t_m; spare s_m).
# h(S, T) is the same with m + 1 sources and targets and no spare: the first
# g parks s1's subtrees on x2..x_{m+1} with x1 as spare, and the closing g
# uses s_{m+1} as spare.  For m = 2 both reduce to the binary g and h.


def _mg(n: int, m: int, S: list[Position], T: list[Position], e: Position, out: list[Move]) -> None:
    if n <= 0:
        return
    _mg(n - 1, m, list(_legs(S[0], m)), T[1:] + [e], T[0], out)
    out.append(Move(S[0], T[0]))
    for i in range(1, m):
        _mh(n - 1, m, list(_legs(S[i], m)) + [T[i]], [S[i - 1]] + list(_legs(T[i - 1], m)), out)
        out.append(Move(S[i], T[i]))
    _mg(n - 1, m, S[: m - 1] + [e], list(_legs(T[m - 1], m)), S[m - 1], out)


def _mh(n: int, m: int, S: list[Position], T: list[Position], out: list[Move]) -> None:
    if n <= 0:
        return
    _mg(n - 1, m, list(_legs(S[0], m)), T[1:], T[0], out)
    out.append(Move(S[0], T[0]))
    for i in range(1, m + 1):
        _mh(n - 1, m, list(_legs(S[i], m)) + [T[i]], [S[i - 1]] + list(_legs(T[i - 1], m)), out)
        out.append(Move(S[i], T[i]))
    _mg(n - 1, m, S[:m], list(_legs(T[m], m)), S[m], out)


def _mary_f(n: int, m: int, a: Position, b: Position, vias: list[Position], out: list[Move]) -> None:
    if n <= 0:
        return
    _mg(n - 1, m, list(_legs(a, m)), vias, b, out)
    out.append(Move(a, b))
    _mg(n - 1, m, vias, list(_legs(b, m)), a, out)


def _check_arity(m: int) -> None:
    if m < 1:
        raise ValueError(f"arity must be >= 1, got {m}")


def mary_f_moves(
    n: int, m: int, source: PosLike, target: PosLike, vias: Sequence[PosLike]
) -> list[Move]:
    """Shortest relocation of a full m-ary tree using ``m`` intermediates."""
    _check_arity(m)
    a, b = _pos(source), _pos(target)
    via = [_pos(p) for p in vias]
    if len(via) != m:
        raise ValueError(f"need {m} intermediate positions, got {len(via)}")
    _check_disjoint([a, b, *via])
    out: list[Move] = []
    _mary_f(n, m, a, b, via, out)
    return out


def mary_g_moves(
    n: int, m: int, sources: Sequence[PosLike], targets: Sequence[PosLike], spare: PosLike
) -> list[Move]:
    _check_arity(m)
    S, T, e = [_pos(p) for p in sources], [_pos(p) for p in targets], _pos(spare)
    if len(S) != m or len(T) != m:
        raise ValueError(f"g moves exactly {m} trees")
    _check_disjoint([*S, *T, e])
    out: list[Move] = []
    _mg(n, m, S, T, e, out)
    return out


def mary_h_moves(
    n: int, m: int, sources: Sequence[PosLike], targets: Sequence[PosLike]
) -> list[Move]:
    _check_arity(m)
    S, T = [_pos(p) for p in sources], [_pos(p) for p in targets]
    if len(S) != m + 1 or len(T) != m + 1:
        raise ValueError(f"h moves exactly {m + 1} trees")
    _check_disjoint([*S, *T])
    out: list[Move] = []
    _mh(n, m, S, T, out)
    return out


# ---------------------------------------------------------------------------
# traces


def _places(positions: Sequence[PosLike]) -> list[int]:
    places = []
    for p in positions:
        pos = _pos(p)
        if pos.path:
            raise ValueError(
                f"trace headers need bare places, got {pos}; use the *_moves functions"
            )
        places.append(pos.place)
    return places


def _trace(
    n: int, m: int, moves: list[Move], sources: list[int], targets: list[int],
    used: list[int], places: int | None,
) -> Trace:
    P = places if places is not None else max(max(used), m + 2)
    return make_trace(
        GameParams(m=m, n=n, places=P),
        [(s, n) for s in sources],
        moves,
        [(t, n) for t in targets],
    )


def solve_t(n: int, a: PosLike = 1, b: PosLike = 2, c: PosLike = 3, d: PosLike = 4,
            *, places: int | None = None) -> Trace:
    used = _places([a, b, c, d])
    return _trace(n, 2, t_moves(n, a, b, c, d), used[:1], used[1:2], used, places)


def solve_f(n: int, a: PosLike = 1, b: PosLike = 2, c: PosLike = 3, d: PosLike = 4,
            *, places: int | None = None) -> Trace:
    used = _places([a, b, c, d])
    return _trace(n, 2, f_moves(n, a, b, c, d), used[:1], used[1:2], used, places)


def solve_g(n: int, a: PosLike = 1, b: PosLike = 2, c: PosLike = 3, d: PosLike = 4,
            e: PosLike = 5, *, places: int | None = None) -> Trace:
    used = _places([a, b, c, d, e])
    return _trace(n, 2, g_moves(n, a, b, c, d, e), used[:2], used[2:4], used, places)


def solve_h(n: int, a: PosLike = 1, b: PosLike = 2, c: PosLike = 3, x: PosLike = 4,
            y: PosLike = 5, z: PosLike = 6, *, places: int | None = None) -> Trace:
    used = _places([a, b, c, x, y, z])
    return _trace(n, 2, h_moves(n, a, b, c, x, y, z), used[:3], used[3:], used, places)


def solve_mary(
    n: int,
    m: int,
    source: PosLike = 1,
    target: PosLike = 2,
    vias: Sequence[PosLike] | None = None,
    *,
    places: int | None = None,
) -> Trace:
    """Relocate a full m-ary tree of height ``n`` in ``f_n(m)`` moves.

    By default the tree goes from place 1 to place 2 and the remaining places
    of the standard ``m + 2``-place game serve as intermediates.
    """
    _check_arity(m)
    if vias is None:
        src, dst = _pos(source).place, _pos(target).place
        vias = [p for p in range(1, m + 3) if p not in (src, dst)][:m]
    used = _places([source, target, *vias])
    moves = mary_f_moves(n, m, source, target, vias)
    return _trace(n, m, moves, used[:1], used[1:2], used, places)
