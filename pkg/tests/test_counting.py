from __future__ import annotations

import math
from decimal import Decimal, getcontext
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from treehanoi.counting import (
    QuadraticValue,
    UnsupportedArity,
    count_f_closed,
    count_fgh,
    count_t,
    count_table,
    quad_pow,
    tau,
    tau_hat,
)


def f_by_second_order(n: int, m: int) -> int:
    """Single-sequence recurrence f_n = (m+2) f_{n-1} - 2 f_{n-2} + m - 1."""
    a, b = 0, 1
    if n == 0:
        return 0
    for _ in range(n - 1):
        a, b = b, (m + 2) * b - 2 * a + m - 1
    return b


def floor_by_decimal(n: int, m: int) -> int:
    """floor((R - m + 2) tau^n / (2R)) in 120-digit decimal arithmetic."""
    getcontext().prec = 120
    R = Decimal((m + 2) ** 2 - 8).sqrt()
    t = (Decimal(m + 2) + R) / 2
    return int(((R - m + 2) * t**n / (2 * R)).to_integral_value(rounding="ROUND_FLOOR"))


class TestCountT:
    def test_values(self):
        assert count_t(0) == 0
        assert count_t(1) == 1
        assert count_t(3) == 21
        assert count_t(4) == 85

    @pytest.mark.parametrize("n", range(30))
    def test_geometric_sum(self, n):
        assert count_t(n) == sum(4**i for i in range(n))


class TestCountFGH:
    def test_binary_values(self):
        assert count_fgh(3, 2)[0] == 19
        assert count_fgh(2, 2) == (5, 9, 13)
        assert count_fgh(3, 2) == (19, 33, 47)

    def test_unary(self):
        assert count_fgh(3, 1)[0] == 7

    def test_ternary(self):
        # f: 0, 1, 7, 35, 163 by 5 f_{n-1} - 2 f_{n-2} + 2
        assert [count_fgh(n, 3)[0] for n in range(5)] == [0, 1, 7, 35, 163]

    def test_zero(self):
        assert count_fgh(0, 5) == (0, 0, 0)

    @pytest.mark.parametrize("m", range(1, 8))
    def test_second_order_recurrence(self, m):
        for n in range(40):
            assert count_fgh(n, m)[0] == f_by_second_order(n, m)

    def test_h_identity(self):
        for n in range(1, 60):
            g, g_prev = count_fgh(n, 2)[1], count_fgh(n - 1, 2)[1]
            assert count_fgh(n, 2)[2] == 2 * g - 2 * g_prev - 1

    def test_p_sequence(self):
        p = [count_fgh(n, 2)[0] + 1 for n in range(60)]
        assert p[:2] == [1, 2]
        for n in range(2, 60):
            assert p[n] == 4 * p[n - 1] - 2 * p[n - 2]
        for n in range(60):
            half_sum = (quad_pow(tau(2), n) + quad_pow(tau_hat(2), n)) / 2
            assert half_sum == QuadraticValue(p[n], 0, 8)

    def test_unary_powers_of_two(self):
        for n in range(31):
            assert count_fgh(n, 1)[0] == 2**n - 1

    def test_f_beats_t(self):
        assert count_fgh(1, 2)[0] == count_t(1)
        assert count_fgh(2, 2)[0] == count_t(2)
        for n in range(3, 21):
            assert count_fgh(n, 2)[0] < count_t(n)

    @pytest.mark.parametrize("m", range(1, 6))
    def test_table_monotone(self, m):
        rows = count_table(20, m)
        for prev, row in zip(rows, rows[1:]):
            assert row.f == 2 * prev.g + 1
            assert (prev.f, prev.g, prev.h) <= (row.f, row.g, row.h)
            assert min(row.f, row.g, row.h) >= 0
        assert all(r.t is None for r in rows) == (m != 2)


class TestClosedForm:
    def test_examples(self):
        assert count_f_closed(3, 2) == 19
        assert count_f_closed(0, 2) == 0
        assert count_f_closed(4, 3) == 163

    def test_unary_rejected(self):
        with pytest.raises(UnsupportedArity):
            count_f_closed(3, 1)

    def test_against_decimal(self):
        for m in range(2, 7):
            for n in range(0, 65):
                assert count_f_closed(n, m) == floor_by_decimal(n, m), (n, m)

    def test_binary_is_floor_of_half_power(self):
        for n in range(65):
            assert count_f_closed(n, 2) == math.floor(quad_pow(QuadraticValue(2, 1, 2), n) / 2)

    def test_matches_recurrence(self):
        for n in range(65):
            assert count_f_closed(n, 2) == count_fgh(n, 2)[0]
        for m in range(3, 7):
            for n in range(33):
                assert count_f_closed(n, m) == count_fgh(n, m)[0]


class TestQuadraticValue:
    def test_square(self):
        assert quad_pow(QuadraticValue(2, 1, 2), 2) == QuadraticValue(6, 4, 2)

    def test_zeroth_power(self):
        assert quad_pow(tau(3), 0) == 1

    @pytest.mark.parametrize("m", range(1, 11))
    def test_root_product_and_sum(self, m):
        assert tau(m) * tau_hat(m) == 2
        assert tau(m) + tau_hat(m) == m + 2

    def test_division(self):
        v = QuadraticValue(3, 2, 5)
        w = QuadraticValue(Fraction(1, 3), -1, 5)
        assert (v / w) * w == v

    @given(
        st.fractions(max_denominator=50).filter(lambda x: abs(x) < 10**6),
        st.fractions(max_denominator=50).filter(lambda x: abs(x) < 10**6),
        st.sampled_from([2, 3, 5, 8, 12, 17, 28, 41, 4, 9]),
    )
    def test_floor_against_decimal(self, a, b, D):
        getcontext().prec = 80
        exact = Decimal(a.numerator) / a.denominator + Decimal(b.numerator) / b.denominator * Decimal(D).sqrt()
        assert math.floor(QuadraticValue(a, b, D)) == int(exact.to_integral_value(rounding="ROUND_FLOOR"))

    def test_floor_at_integer_boundary(self):
        # sqrt(9) is exact: 1 - sqrt(9) = -2
        assert math.floor(QuadraticValue(1, -1, 9)) == -2
        assert math.floor(QuadraticValue(0, -1, 2)) == -2
        assert math.floor(QuadraticValue(Fraction(1, 2), 0, 2)) == 0

    @given(st.integers(0, 40), st.integers(0, 40))
    def test_pow_is_repeated_product(self, i, j):
        v = QuadraticValue(Fraction(3, 2), Fraction(-1, 3), 7)
        assert quad_pow(v, i) * quad_pow(v, j) == quad_pow(v, i + j)
