"""Breadth-first shortest-solution search for relocation tasks.

A task has ``old`` places holding full trees of height n and ``m + 1`` empty
``new`` places; k of the trees must end up on new places.  The search runs
over canonical keys: configurations that differ only by a permutation of
the old places, of the new places, or of the legs under any node are
identified.  The restricted search (nodes may only be put on original
ancestors) carries each node's original position and identifies only
permutations of the new places.

Search states are nested tuples: a place holds ``()`` or a node
``(size, label, leg_0, ..., leg_{m-1})`` whose legs are again ``()`` or
nodes.  ``label`` is ``()`` in the unrestricted game and the node's
original ``(place, *path)`` in the restricted one.
"""

from __future__ import annotations

import os
from collections.abc import Callable, Iterator
from dataclasses import dataclass
from functools import lru_cache

from .model import Configuration, GameParams, Move, Position, initial_configuration
from .trace import Trace, make_trace

__all__ = [
    "TaskSpec",
    "SearchResult",
    "MemoryBudgetExceeded",
    "GoalUnreachable",
    "relocation_task",
    "f_task",
    "g_task",
    "h_task",
    "canonical_key",
    "shortest",
    "shortest_restricted",
    "shortest_unreduced",
    "DEFAULT_MEMORY_BYTES",
]

DEFAULT_MEMORY_BYTES = 2 * 1024**3

Node = tuple
State = tuple
CanonicalKey = tuple


class MemoryBudgetExceeded(RuntimeError):
    def __init__(self, states: int, budget: int) -> None:
        self.states = states
        self.budget = budget
        super().__init__(
            f"memory budget of {budget / 2**20:g} MiB exceeded after {states} states"
        )


class GoalUnreachable(RuntimeError):
    pass


@dataclass(frozen=True)
class TaskSpec:
    params: GameParams
    old_places: tuple[int, ...]
    new_places: tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        old, new = set(self.old_places), set(self.new_places)
        if old & new:
            raise ValueError("old and new places overlap")
        if not all(1 <= p <= self.params.places for p in old | new):
            raise ValueError("task places outside the game")
        if not 0 <= self.k <= min(len(self.old_places), len(self.new_places)):
            raise ValueError(f"cannot move {self.k} trees with this many places")

    def initial_configuration(self) -> Configuration:
        return initial_configuration(
            self.params, [(p, self.params.n) for p in self.old_places]
        )

    def goal_configuration(self) -> Configuration:
        """One representative goal: the first k old trees on the first k new places."""
        n = self.params.n
        layout = [(p, n) for p in self.old_places[self.k:]]
        layout += [(p, n) for p in self.new_places[: self.k]]
        return initial_configuration(self.params, layout)


def relocation_task(n: int, m: int = 2, old: int = 1, k: int | None = None) -> TaskSpec:
    """``old`` full trees on places 1..old, ``m + 1`` empty places after them."""
    k = old if k is None else k
    new = m + 1
    params = GameParams(m=m, n=n, places=old + new)
    return TaskSpec(
        params,
        tuple(range(1, old + 1)),
        tuple(range(old + 1, old + new + 1)),
        k,
    )


def f_task(n: int, m: int = 2) -> TaskSpec:
    return relocation_task(n, m, old=1)


def g_task(n: int, m: int = 2) -> TaskSpec:
    return relocation_task(n, m, old=m)


def h_task(n: int, m: int = 2) -> TaskSpec:
    return relocation_task(n, m, old=m + 1)


@dataclass(frozen=True)
class SearchResult:
    count: int
    witness: Trace
    states: int

    def __iter__(self) -> Iterator:
        return iter((self.count, self.witness))


# ---------------------------------------------------------------------------
# state plumbing


def _tree_from_nodes(nodes, pos: Position, m: int, labelled: bool) -> Node:
    size = nodes.get(pos)
    if size is None:
        return ()
    label = (pos.place, *pos.path) if labelled else ()
    return (size, label) + tuple(
        _tree_from_nodes(nodes, Position(pos.place, pos.path + (leg,)), m, labelled)
        for leg in range(m)
    )


def state_of(c: Configuration, labelled: bool = False) -> State:
    nodes = c.nodes
    m = c.params.m
    return tuple(
        _tree_from_nodes(nodes, Position(p), m, labelled)
        for p in range(1, c.params.places + 1)
    )


@lru_cache(maxsize=1 << 20)
def _sort_legs(tree: Node) -> Node:
    if not tree:
        return tree
    legs = sorted((_sort_legs(c) for c in tree[2:]), reverse=True)
    return tree[:2] + tuple(legs)


def _strip(tree: Node) -> Node:
    if not tree:
        return tree
    return (tree[0], ()) + tuple(_strip(c) for c in tree[2:])


class _Symmetry:
    """Canonicalization maps for one task."""

    def __init__(self, task: TaskSpec) -> None:
        self.old = [p - 1 for p in task.old_places]
        self.new = [p - 1 for p in task.new_places]
        self.places = task.params.places

    def _arrange(self, state: State, old: list[Node], new: list[Node]) -> State:
        out = list(state)
        for i, t in zip(self.old, old):
            out[i] = t
        for i, t in zip(self.new, new):
            out[i] = t
        return tuple(out)

    def full(self, state: State) -> CanonicalKey:
        trees = [_sort_legs(t) for t in state]
        old = sorted((trees[i] for i in self.old), reverse=True)
        new = sorted((trees[i] for i in self.new), reverse=True)
        return self._arrange(tuple(trees), old, new)

    def new_only(self, state: State) -> CanonicalKey:
        new = sorted((state[i] for i in self.new), reverse=True)
        return self._arrange(state, list(state[i] for i in self.old), new)

    def unlabelled_full(self, state: State) -> CanonicalKey:
        return self.full(tuple(_strip(t) for t in state))


def canonical_key(c: Configuration, task: TaskSpec) -> CanonicalKey:
    """Key shared exactly by configurations equal up to old/new place and leg permutations."""
    if c.params != task.params:
        raise ValueError("configuration and task disagree on game parameters")
    return _Symmetry(task).full(state_of(c))


def _set(tree: Node, path: tuple[int, ...], value: Node) -> Node:
    if not path:
        return value
    i = path[0] + 2
    return tree[:i] + (_set(tree[i], path[1:], value),) + tree[i + 1:]


def _walk(tree: Node, path: tuple[int, ...], leaves: list, slots: list, place: int) -> None:
    leaf = True
    for leg, child in enumerate(tree[2:]):
        if child:
            leaf = False
            _walk(child, path + (leg,), leaves, slots, place)
        else:
            slots.append((place, path + (leg,), tree[0], tree[1]))
    if leaf:
        leaves.append((place, path, tree))


def _successors(state: State, ancestor: bool) -> Iterator[tuple[tuple, tuple, State]]:
    """Every legal move from ``state`` as (source, destination, next state).

    Source and destination are ``(place_index, path)`` pairs, 0-based place.
    """
    leaves: list = []
    slots: list = []
    bare = []
    for place, tree in enumerate(state):
        if tree:
            _walk(tree, (), leaves, slots, place)
        else:
            bare.append(place)
    for place, path, leaf in leaves:
        size, label = leaf[0], leaf[1]
        emptied = _set(state[place], path, ()) if path else ()
        for q in bare:
            new = list(state)
            new[place] = emptied
            new[q] = leaf
            yield (place, path), (q, ()), tuple(new)
        for q, spath, fsize, flabel in slots:
            if fsize <= size:
                continue
            if ancestor and not (len(flabel) < len(label) and label[: len(flabel)] == flabel):
                continue
            new = list(state)
            if q == place:
                new[q] = _set(emptied, spath, leaf)
            else:
                new[place] = emptied
                new[q] = _set(state[q], spath, leaf)
            yield (place, path), (q, spath), tuple(new)


# lower bound per stored state: dict slot, parent reference, frontier slot
# and the state's top-level tuple
_MIN_STATE_BYTES = 200
_CHECK_EVERY = 1 << 14


def _rss_bytes() -> int:
    """Resident set size from /proc, or 0 where that is unavailable."""
    try:
        with open("/proc/self/statm") as fp:
            return int(fp.read().split()[1]) * os.sysconf("SC_PAGE_SIZE")
    except (OSError, ValueError, IndexError):
        return 0


class _Budget:
    """Memory used by one search: measured RSS growth or the per-state floor."""

    def __init__(self, limit: int) -> None:
        self.limit = limit
        self.base = _rss_bytes()

    def check(self, states: int) -> None:
        used = max(states * _MIN_STATE_BYTES, _rss_bytes() - self.base)
        if used > self.limit:
            raise MemoryBudgetExceeded(states, self.limit)


def _budget_bytes(memory_mb: float | None) -> int:
    if memory_mb is None:
        env = os.environ.get("HANOI_MEMORY_MB")
        if env:
            memory_mb = float(env)
    if memory_mb is None:
        return DEFAULT_MEMORY_BYTES
    return int(memory_mb * 2**20)


def _bfs(
    start: CanonicalKey,
    is_goal: Callable[[CanonicalKey], bool],
    canon: Callable[[State], CanonicalKey],
    ancestor: bool,
    limit: int,
) -> tuple[list[CanonicalKey], int]:
    """Level-by-level BFS; returns the key path from start to goal."""
    budget = _Budget(limit)
    parent: dict[CanonicalKey, CanonicalKey | None] = {start: None}
    if is_goal(start):
        return [start], 1
    frontier = [start]
    while frontier:
        nxt = []
        for key in frontier:
            for _, _, succ in _successors(key, ancestor):
                k = canon(succ)
                if k in parent:
                    continue
                parent[k] = key
                if is_goal(k):
                    path = [k]
                    while (k := parent[k]) is not None:
                        path.append(k)
                    path.reverse()
                    return path, len(parent)
                nxt.append(k)
                if len(parent) % _CHECK_EVERY == 0:
                    budget.check(len(parent))
        budget.check(len(parent))
        frontier = nxt
    raise GoalUnreachable("search space exhausted without reaching the goal")


def _concretize(
    state: State, path: list[CanonicalKey], canon: Callable[[State], CanonicalKey],
    ancestor: bool,
) -> list[Move]:
    """Turn a path of canonical keys into moves from the concrete ``state``."""
    moves = []
    for target in path[1:]:
        for (p, path), (q, qpath), succ in _successors(state, ancestor):
            if canon(succ) == target:
                moves.append(Move(Position(p + 1, path), Position(q + 1, qpath)))
                state = succ
                break
        else:  # pragma: no cover - would mean the key path is inconsistent
            raise GoalUnreachable("witness path cannot be realized")
    return moves


def _search(task: TaskSpec, mode: str, memory_mb: float | None) -> SearchResult:
    sym = _Symmetry(task)
    goal = sym.full(state_of(task.goal_configuration()))
    initial = task.initial_configuration()
    ancestor = mode == "restricted"
    if mode == "reduced":
        canon = sym.full
        is_goal = goal.__eq__
    elif mode == "unreduced":
        canon = lambda s: s  # noqa: E731
        is_goal = lambda k: sym.full(k) == goal  # noqa: E731
    elif mode == "restricted":
        canon = sym.new_only
        is_goal = lambda k: sym.unlabelled_full(k) == goal  # noqa: E731
    else:
        raise ValueError(f"unknown search mode {mode!r}")

    start_state = state_of(initial, labelled=ancestor)
    path, states = _bfs(canon(start_state), is_goal, canon, ancestor, _budget_bytes(memory_mb))
    moves = _concretize(start_state, path, canon, ancestor)
    n = task.params.n
    witness = make_trace(task.params, [(p, n) for p in task.old_places], moves)
    return SearchResult(len(moves), witness, states)


def shortest(task: TaskSpec, memory_mb: float | None = None) -> SearchResult:
    """Minimal move count for ``task`` plus one witness trace."""
    return _search(task, "reduced", memory_mb)


def shortest_restricted(task: TaskSpec, memory_mb: float | None = None) -> SearchResult:
    """As :func:`shortest`, but nodes may only go on original ancestors or bare places."""
    return _search(task, "restricted", memory_mb)


def shortest_unreduced(task: TaskSpec, memory_mb: float | None = None) -> SearchResult:
    """Plain BFS over raw configurations, without any symmetry quotient."""
    return _search(task, "unreduced", memory_mb)
