from __future__ import annotations

import random

import pytest

from treehanoi.model import Configuration, GameParams, initial_configuration, legal_moves, apply_move

ACCEPTANCE: list[tuple[str, bool, float]] = []


def random_walk(params: GameParams, layout, steps: int, seed: int) -> Configuration:
    rng = random.Random(seed)
    c = initial_configuration(params, layout)
    for _ in range(steps):
        moves = legal_moves(c)
        if not moves:
            break
        c = apply_move(c, rng.choice(moves))
    return c


@pytest.fixture
def fig1() -> Configuration:
    return initial_configuration(GameParams(m=2, n=3, places=4), [(1, 3)])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, elapsed in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  ({elapsed:.2f}s)")
