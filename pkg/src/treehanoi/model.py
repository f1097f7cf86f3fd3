"""Configurations, positions and moves of the trees-of-Hanoi game.

A node stands either directly on a place or on one of the ``m`` legs of a
strictly larger node.  A configuration is stored as a map from node
position to node size; the nested :class:`StackTree` view is derived on
demand.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from functools import lru_cache
from types import MappingProxyType
from typing import NamedTuple

__all__ = [
    "GameParams",
    "Position",
    "StackTree",
    "Configuration",
    "Move",
    "ModelError",
    "InvalidPosition",
    "ConfigurationError",
    "IllegalMove",
    "SourceEmpty",
    "SourceNotLeaf",
    "DestinationOccupied",
    "DestinationParentMissing",
    "SizeViolation",
    "parse_position",
    "format_position",
    "initial_configuration",
    "node_at",
    "legal_moves",
    "apply_move",
    "check_move",
    "full_tree",
]


class ModelError(ValueError):
    """Base class for every error raised by the game model."""


class InvalidPosition(ModelError):
    pass


class ConfigurationError(ModelError):
    pass


class IllegalMove(ModelError):
    """A move that the game rules forbid in the given configuration."""

    kind = "IllegalMove"

    def __init__(self, move: Move, detail: str = "") -> None:
        self.move = move
        msg = f"{self.kind}: {move}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class SourceEmpty(IllegalMove):
    kind = "SourceEmpty"


class SourceNotLeaf(IllegalMove):
    kind = "SourceNotLeaf"


class DestinationOccupied(IllegalMove):
    kind = "DestinationOccupied"


class DestinationParentMissing(IllegalMove):
    kind = "DestinationParentMissing"


class SizeViolation(IllegalMove):
    kind = "SizeViolation"


@dataclass(frozen=True)
class GameParams:
    m: int = 2
    n: int = 0
    places: int = 4

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError(f"arity must be >= 1, got {self.m}")
        if self.n < 0:
            raise ValueError(f"height must be >= 0, got {self.n}")
        if self.places < 1:
            raise ValueError(f"place count must be >= 1, got {self.places}")

    @classmethod
    def standard(cls, n: int, m: int = 2) -> GameParams:
        """Single-tree game with ``m + 2`` places."""
        return cls(m=m, n=n, places=m + 2)


class Position(NamedTuple):
    """A place (1-based) plus the leg indices leading from the root on it."""

    place: int
    path: tuple[int, ...] = ()

    def child(self, leg: int) -> Position:
        return Position(self.place, self.path + (leg,))

    def children(self, m: int) -> list[Position]:
        return [Position(self.place, self.path + (leg,)) for leg in range(m)]

    @property
    def parent(self) -> Position | None:
        if not self.path:
            return None
        return Position(self.place, self.path[:-1])

    @property
    def depth(self) -> int:
        return len(self.path)

    def is_prefix_of(self, other: Position) -> bool:
        """True if ``self`` is an ancestor-or-self of ``other``."""
        return (
            self.place == other.place
            and len(self.path) <= len(other.path)
            and other.path[: len(self.path)] == self.path
        )

    def is_proper_prefix_of(self, other: Position) -> bool:
        return len(self.path) < len(other.path) and self.is_prefix_of(other)

    def overlaps(self, other: Position) -> bool:
        return self.is_prefix_of(other) or other.is_prefix_of(self)

    def __str__(self) -> str:
        return format_position(self)


@dataclass(frozen=True, slots=True)
class Move:
    src: Position
    dst: Position

    def __post_init__(self) -> None:
        if self.src == self.dst:
            raise ValueError(f"move from {self.src} to itself")

    def reversed(self) -> Move:
        return Move(self.dst, self.src)

    def __str__(self) -> str:
        return f"move({format_position(self.src)},{format_position(self.dst)})"


# ---------------------------------------------------------------------------
# textual positions

_LR = {"L": 0, "R": 1}
_LR_RE = re.compile(r"(\d+)([LR]*)")
_DOT_RE = re.compile(r"(\d+)((?:\.\d+)*)")


def validate_position(p: Position, params: GameParams) -> None:
    if not 1 <= p.place <= params.places:
        raise InvalidPosition(f"place {p.place} outside 1..{params.places}")
    for leg in p.path:
        if not 0 <= leg < params.m:
            raise InvalidPosition(f"leg {leg} outside 0..{params.m - 1}")
    if params.n > 0 and len(p.path) > params.n - 1:
        raise InvalidPosition(
            f"path of length {len(p.path)} exceeds height {params.n}"
        )


def parse_position(text: str, params: GameParams) -> Position:
    """Parse ``"1RL"`` (binary games only) or ``"2.0.2"`` into a Position."""
    if not text:
        raise InvalidPosition("empty position")
    match = _DOT_RE.fullmatch(text)
    if match:
        legs = tuple(int(d) for d in match.group(2).split(".")[1:])
    else:
        match = _LR_RE.fullmatch(text) if params.m == 2 else None
        if match is None:
            raise InvalidPosition(f"malformed position {text!r}")
        legs = tuple(_LR[c] for c in match.group(2))
    pos = Position(int(match.group(1)), legs)
    validate_position(pos, params)
    return pos


def format_position(p: Position, params: GameParams | None = None) -> str:
    """Canonical text of ``p``: L/R letters for binary games, dots otherwise.

    Without ``params`` the letter form is used whenever every leg is 0 or 1.
    """
    if params is None:
        m = 2 if all(leg < 2 for leg in p.path) else 0
    else:
        m = params.m
    if not p.path:
        return str(p.place)
    if m == 2:
        return str(p.place) + "".join("LR"[leg] for leg in p.path)
    return str(p.place) + "".join(f".{leg}" for leg in p.path)


# ---------------------------------------------------------------------------
# trees and configurations


@dataclass(frozen=True)
class StackTree:
    size: int
    legs: tuple[StackTree | None, ...]

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ConfigurationError(f"node size must be positive, got {self.size}")
        for child in self.legs:
            if child is not None and child.size >= self.size:
                raise ConfigurationError(
                    f"node of size {child.size} stands on node of size {self.size}"
                )

    def node_count(self) -> int:
        return 1 + sum(c.node_count() for c in self.legs if c is not None)


def full_tree(height: int, m: int) -> StackTree | None:
    """The full m-ary tree of the given height, or None for height 0."""
    if height == 0:
        return None
    child = full_tree(height - 1, m)
    return StackTree(height, (child,) * m)


def _full_nodes(root: Position, height: int, m: int) -> Iterator[tuple[Position, int]]:
    if height == 0:
        return
    yield root, height
    for leg in range(m):
        yield from _full_nodes(root.child(leg), height - 1, m)


class Configuration:
    """Immutable game configuration: node sizes keyed by position."""

    __slots__ = ("params", "_nodes", "_hash")

    def __init__(self, params: GameParams, nodes: Mapping[Position, int]) -> None:
        self.params = params
        self._nodes = dict(nodes)
        self._hash: int | None = None
        self._validate()

    def _validate(self) -> None:
        for pos, size in self._nodes.items():
            validate_position(pos, self.params)
            if size < 1:
                raise ConfigurationError(f"node at {pos} has size {size}")
            parent = pos.parent
            if parent is None:
                continue
            psize = self._nodes.get(parent)
            if psize is None:
                raise ConfigurationError(f"node at {pos} has no father")
            if size >= psize:
                raise ConfigurationError(
                    f"node at {pos} (size {size}) not smaller than its father ({psize})"
                )

    @property
    def nodes(self) -> Mapping[Position, int]:
        return MappingProxyType(self._nodes)

    @property
    def places(self) -> tuple[StackTree | None, ...]:
        return tuple(
            self._tree_at(Position(p)) for p in range(1, self.params.places + 1)
        )

    def _tree_at(self, pos: Position) -> StackTree | None:
        size = self._nodes.get(pos)
        if size is None:
            return None
        legs = tuple(self._tree_at(pos.child(i)) for i in range(self.params.m))
        return StackTree(size, legs)

    @classmethod
    def from_places(
        cls, params: GameParams, places: Iterable[StackTree | None]
    ) -> Configuration:
        nodes: dict[Position, int] = {}

        def walk(tree: StackTree, pos: Position) -> None:
            if len(tree.legs) != params.m:
                raise ConfigurationError(
                    f"node at {pos} has {len(tree.legs)} legs, expected {params.m}"
                )
            nodes[pos] = tree.size
            for leg, child in enumerate(tree.legs):
                if child is not None:
                    walk(child, pos.child(leg))

        places = list(places)
        if len(places) != params.places:
            raise ConfigurationError(
                f"{len(places)} place slots given, expected {params.places}"
            )
        for i, tree in enumerate(places, start=1):
            if tree is not None:
                walk(tree, Position(i))
        return cls(params, nodes)

    def size_multiset(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for size in self._nodes.values():
            counts[size] = counts.get(size, 0) + 1
        return counts

    def is_full_tree_at(self, place: int, height: int) -> bool:
        """True if ``place`` holds exactly a full tree of ``height``."""
        expected = dict(_full_nodes(Position(place), height, self.params.m))
        actual = {p: s for p, s in self._nodes.items() if p.place == place}
        return actual == expected

    def __len__(self) -> int:
        return len(self._nodes)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Configuration):
            return NotImplemented
        return self.params == other.params and self._nodes == other._nodes

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.params, frozenset(self._nodes.items())))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(
            f"{format_position(p, self.params)}:{s}"
            for p, s in sorted(self._nodes.items())
        )
        return f"Configuration(m={self.params.m}, n={self.params.n}, P={self.params.places}, {{{body}}})"


def initial_configuration(
    params: GameParams, layout: Iterable[tuple[int, int]]
) -> Configuration:
    """Full m-ary trees of the given heights on the listed places."""
    nodes: dict[Position, int] = {}
    seen: set[int] = set()
    for place, height in layout:
        if place in seen:
            raise ConfigurationError(f"place {place} listed twice")
        seen.add(place)
        if not 1 <= place <= params.places:
            raise ConfigurationError(f"place {place} outside 1..{params.places}")
        if not 0 <= height <= params.n:
            raise ConfigurationError(f"height {height} outside 0..{params.n}")
        nodes.update(_full_nodes(Position(place), height, params.m))
    return Configuration(params, nodes)


def node_at(c: Configuration, p: Position) -> int | None:
    return c._nodes.get(p)


# ---------------------------------------------------------------------------
# rules


@lru_cache(maxsize=1 << 16)
def _children(p: Position, m: int) -> tuple[Position, ...]:
    return tuple(p.children(m))


def check_move(nodes: Mapping[Position, int], m: int, mv: Move) -> int:
    """Raise the matching :class:`IllegalMove` or return the moved node's size.

    Works on any position->size mapping so replay loops can use a plain
    mutable dict.
    """
    size = nodes.get(mv.src)
    if size is None:
        raise SourceEmpty(mv)
    for child in _children(mv.src, m):
        if child in nodes:
            raise SourceNotLeaf(mv)
    if mv.dst in nodes:
        raise DestinationOccupied(mv)
    if mv.dst.path:
        father = Position(mv.dst.place, mv.dst.path[:-1])
        fsize = nodes.get(father)
        if fsize is None:
            raise DestinationParentMissing(mv)
        if size >= fsize:
            raise SizeViolation(mv, f"size {size} onto size {fsize}")
    return size


def apply_move(c: Configuration, mv: Move) -> Configuration:
    validate_position(mv.src, c.params)
    validate_position(mv.dst, c.params)
    size = check_move(c._nodes, c.params.m, mv)
    nodes = dict(c._nodes)
    del nodes[mv.src]
    nodes[mv.dst] = size
    out = Configuration.__new__(Configuration)
    out.params = c.params
    out._nodes = nodes
    out._hash = None
    return out


def free_slots(nodes: Mapping[Position, int], params: GameParams) -> list[Position]:
    """Empty places and empty legs of occupied nodes."""
    slots = [Position(p) for p in range(1, params.places + 1) if Position(p) not in nodes]
    for pos in nodes:
        for leg in range(params.m):
            child = pos.child(leg)
            if child not in nodes:
                slots.append(child)
    return slots


def legal_moves(c: Configuration) -> list[Move]:
    """Every legal move, sorted by the text of (source, destination)."""
    params = c.params
    nodes = c._nodes
    leaves = [
        (pos, size)
        for pos, size in nodes.items()
        if not any(pos.child(leg) in nodes for leg in range(params.m))
    ]
    slots = free_slots(nodes, params)
    moves = []
    for src, size in leaves:
        for dst in slots:
            if dst.path:
                father = dst.parent
                if nodes[father] <= size:
                    continue
            moves.append(Move(src, dst))
    moves.sort(
        key=lambda mv: (format_position(mv.src, params), format_position(mv.dst, params))
    )
    return moves
