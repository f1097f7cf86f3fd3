from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from treehanoi.model import (
    Configuration,
    DestinationOccupied,
    DestinationParentMissing,
    GameParams,
    IllegalMove,
    InvalidPosition,
    Move,
    Position,
    SizeViolation,
    SourceEmpty,
    SourceNotLeaf,
    StackTree,
    apply_move,
    format_position,
    full_tree,
    initial_configuration,
    legal_moves,
    node_at,
    parse_position,
)

from conftest import random_walk

B3 = GameParams(m=2, n=3, places=4)


def P(text: str, params: GameParams = B3) -> Position:
    return parse_position(text, params)


def config(params: GameParams, nodes: dict[str, int]) -> Configuration:
    return Configuration(params, {P(k, params): v for k, v in nodes.items()})


FIG2A = {"1": 3, "1R": 2, "1RL": 1, "2": 2, "2L": 1, "2R": 1, "4": 1}
FIG2B = {"1": 3, "1L": 1, "2": 2, "2L": 1, "2R": 1, "3": 2, "4": 1}


class TestPositions:
    def test_parse_letters(self):
        assert P("1RL") == Position(1, (1, 0))

    def test_parse_bare_place(self):
        assert P("3") == Position(3, ())

    def test_parse_dotted(self):
        assert parse_position("2.0.2", GameParams(m=3, n=3, places=5)) == Position(2, (0, 2))

    def test_dotted_accepted_for_binary(self):
        assert P("1.1.0") == P("1RL")

    @pytest.mark.parametrize("text", ["1LX", "", "L", "1.", "1..0", "x1", "1L.0"])
    def test_malformed(self, text):
        with pytest.raises(InvalidPosition):
            P(text)

    @pytest.mark.parametrize("text", ["0", "5", "1LLL", "1.2"])
    def test_out_of_range(self, text):
        with pytest.raises(InvalidPosition):
            P(text)

    def test_letters_rejected_for_ternary(self):
        with pytest.raises(InvalidPosition):
            parse_position("1L", GameParams(m=3, n=3, places=5))

    def test_format(self):
        assert format_position(Position(1, (1, 0)), B3) == "1RL"
        assert format_position(Position(4, ()), B3) == "4"
        assert format_position(Position(2, (0, 2)), GameParams(m=3, n=3, places=5)) == "2.0.2"

    @settings(max_examples=300)
    @given(st.data())
    def test_round_trip(self, data):
        m = data.draw(st.integers(1, 9))
        n = data.draw(st.integers(1, 6))
        places = data.draw(st.integers(1, 12))
        params = GameParams(m=m, n=n, places=places)
        pos = Position(
            data.draw(st.integers(1, places)),
            tuple(data.draw(st.lists(st.integers(0, m - 1), max_size=n - 1))),
        )
        text = format_position(pos, params)
        assert parse_position(text, params) == pos
        assert format_position(parse_position(text, params), params) == text


class TestConfigurations:
    def test_fig1(self, fig1):
        expected = {"1": 3, "1L": 2, "1R": 2, "1LL": 1, "1LR": 1, "1RL": 1, "1RR": 1}
        assert dict(fig1.nodes) == {P(k): v for k, v in expected.items()}

    def test_empty(self):
        c = initial_configuration(GameParams(m=2, n=0, places=4), [])
        assert len(c) == 0
        assert c.places == (None,) * 4

    def test_two_tree_start(self):
        c = initial_configuration(GameParams(m=2, n=2, places=5), [(1, 2), (2, 2)])
        assert c.is_full_tree_at(1, 2) and c.is_full_tree_at(2, 2)
        assert len(c) == 6

    def test_duplicate_place(self):
        with pytest.raises(ValueError):
            initial_configuration(B3, [(1, 3), (1, 2)])

    def test_place_out_of_range(self):
        with pytest.raises(ValueError):
            initial_configuration(B3, [(5, 1)])

    def test_node_at(self, fig1):
        assert node_at(fig1, P("1")) == 3
        assert node_at(fig1, P("2")) is None
        assert node_at(fig1, P("1RL")) == 1

    def test_places_view_round_trip(self, fig1):
        assert fig1.places[0] == full_tree(3, 2)
        assert Configuration.from_places(B3, fig1.places) == fig1

    def test_stack_tree_rejects_equal_child(self):
        with pytest.raises(ValueError):
            StackTree(2, (StackTree(2, (None, None)), None))

    def test_unequal_children_allowed(self):
        c = config(B3, {"1": 3, "1L": 2, "1R": 1})
        assert len(c) == 3

    def test_orphan_rejected(self):
        with pytest.raises(ValueError):
            config(B3, {"1L": 1})


class TestMoves:
    def test_lone_node(self):
        c = initial_configuration(GameParams(m=2, n=1, places=4), [(1, 1)])
        assert [str(mv) for mv in legal_moves(c)] == ["move(1,2)", "move(1,3)", "move(1,4)"]

    def test_fig2_sequence(self):
        c = config(B3, FIG2A)
        mv = Move(P("1RL"), P("1L"))
        assert mv in legal_moves(c)
        c = apply_move(apply_move(c, mv), Move(P("1R"), P("3")))
        assert c == config(B3, FIG2B)

    def test_root_with_sons_cannot_move(self, fig1):
        assert all(mv.src != P("1") for mv in legal_moves(fig1))

    def test_move_to_other_son_of_father(self):
        c = config(B3, {"1": 3, "1L": 2})
        assert Move(P("1L"), P("1R")) in legal_moves(c)

    @pytest.mark.parametrize(
        "nodes, src, dst, error",
        [
            (FIG2A, "3", "1L", SourceEmpty),
            ({"1": 3, "1L": 2, "1LL": 1}, "1", "2", SourceNotLeaf),
            (FIG2A, "4", "2", DestinationOccupied),
            (FIG2A, "4", "3L", DestinationParentMissing),
            (FIG2A, "1RL", "4LL", DestinationParentMissing),
            ({"1": 2, "2": 2}, "1", "2L", SizeViolation),
            ({"1": 1, "2": 2, "2L": 1, "3": 3}, "3", "1L", SizeViolation),
        ],
    )
    def test_errors(self, nodes, src, dst, error):
        with pytest.raises(error):
            apply_move(config(B3, nodes), Move(P(src), P(dst)))

    def test_self_move_forbidden(self):
        with pytest.raises(ValueError):
            Move(P("1"), P("1"))

    def test_deterministic_order(self, fig1):
        a, b = legal_moves(fig1), legal_moves(initial_configuration(B3, [(1, 3)]))
        assert a == b
        keys = [(format_position(mv.src, B3), format_position(mv.dst, B3)) for mv in a]
        assert keys == sorted(keys)


def _all_positions(params: GameParams) -> list[Position]:
    out = []
    for place in range(1, params.places + 1):
        for depth in range(params.n):
            for path in itertools.product(range(params.m), repeat=depth):
                out.append(Position(place, path))
    return out


@pytest.mark.parametrize(
    "params, layout",
    [
        (GameParams(m=2, n=3, places=4), [(1, 3)]),
        (GameParams(m=2, n=2, places=5), [(1, 2), (2, 2)]),
        (GameParams(m=3, n=2, places=5), [(1, 2)]),
        (GameParams(m=1, n=4, places=3), [(1, 4)]),
    ],
)
@pytest.mark.parametrize("seed", range(6))
def test_legality_partition(params, layout, seed):
    """apply_move fails exactly on the pairs legal_moves leaves out."""
    c = random_walk(params, layout, steps=25, seed=seed)
    legal = set(legal_moves(c))
    sizes = c.size_multiset()
    positions = _all_positions(params)
    for src in positions:
        for dst in positions:
            if src == dst:
                continue
            mv = Move(src, dst)
            if mv in legal:
                after = apply_move(c, mv)
                assert after.size_multiset() == sizes
                # re-validates every structural invariant
                Configuration(params, after.nodes)
            else:
                with pytest.raises(IllegalMove):
                    apply_move(c, mv)
