"""
Unit tests for truncated power series and the partition identity.
"""

import math
import sys
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from twistfuse.qseries import (
    TruncatedSeries,
    distinct_parts_series,
    euler_check,
    odd_parts_series,
    partition_oracle,
    series_product,
)

ORDER = 6
series = st.lists(st.integers(-5, 5), min_size=ORDER + 1, max_size=ORDER + 1).map(
    lambda cs: TruncatedSeries(tuple(cs))
)


def geometric(order: int) -> TruncatedSeries:
    return (TruncatedSeries.one(order) - TruncatedSeries.monomial(1, order)).inverse()


class TestTruncatedSeries:
    def test_geometric(self):
        assert geometric(3).coeffs == (1, 1, 1, 1)

    def test_monomial_past_order(self):
        assert TruncatedSeries.monomial(5, 3).coeffs == (0, 0, 0, 0)

    def test_inverse_round_trip(self):
        s = TruncatedSeries((1, 3, -2, 7, 0, 1))
        assert (s * s.inverse()).coeffs == (1, 0, 0, 0, 0, 0)

    def test_inverse_needs_unit(self):
        with pytest.raises(ValueError, match="not invertible"):
            TruncatedSeries((2, 1)).inverse()

    def test_mixed_orders_truncate(self):
        s = TruncatedSeries((1, 1, 1)) * TruncatedSeries((1, 1))
        assert s.coeffs == (1, 2)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            TruncatedSeries(())

    def test_big_coefficients_exact(self):
        s = geometric(40)
        power = series_product([s] * 30, 40)
        # coefficient of t^40 in (1-t)^-30 is C(69, 40)
        assert power.coeffs[40] == math.comb(69, 40)

    @given(series, series)
    def test_commutative(self, a, b):
        assert a * b == b * a

    @given(series, series, series)
    def test_associative(self, a, b, c):
        assert (a * b) * c == a * (b * c)


class TestSeriesProduct:
    def test_two_factors(self):
        one = TruncatedSeries.one(3)
        factors = [one + TruncatedSeries.monomial(1, 3), one + TruncatedSeries.monomial(2, 3)]
        assert series_product(factors, 3).coeffs == (1, 1, 1, 1)

    def test_empty_product(self):
        assert series_product([], 3).coeffs == (1, 0, 0, 0)

    def test_factor_too_short(self):
        with pytest.raises(ValueError):
            series_product([TruncatedSeries((1, 1))], 3)


class TestEulerIdentity:
    def test_order_five(self):
        check = euler_check(5)
        assert check.ok
        assert check.lhs.coeffs == (1, 1, 1, 2, 2, 3)
        assert check.rhs.coeffs == (1, 1, 1, 2, 2, 3)
        assert check.first_mismatch is None

    def test_order_one(self):
        check = euler_check(1)
        assert check.ok
        assert check.lhs.coeffs == (1, 1)

    def test_order_sixty(self):
        check = euler_check(60)
        assert check.ok
        for n in range(31):
            assert check.lhs.coeffs[n] == partition_oracle(n, "distinct")
            assert check.rhs.coeffs[n] == partition_oracle(n, "odd")

    def test_mismatch_reported(self):
        check = euler_check(4)
        broken = type(check)(order=4, lhs=check.lhs, rhs=TruncatedSeries((1, 1, 1, 5, 2)))
        assert not broken.ok
        assert broken.first_mismatch == 3
        assert broken.to_json()["firstMismatch"] == 3

    @pytest.mark.parametrize("order", [0, -1, 2.5])
    def test_rejects_bad_order(self, order):
        with pytest.raises(ValueError):
            euler_check(order)

    def test_sides_individually(self):
        assert distinct_parts_series(6).coeffs == (1, 1, 1, 2, 2, 3, 4)
        assert odd_parts_series(6).coeffs == (1, 1, 1, 2, 2, 3, 4)


class TestPartitionOracle:
    @pytest.mark.parametrize(
        "n,kind,expected",
        [(5, "distinct", 3), (5, "odd", 3), (0, "distinct", 1), (0, "odd", 1), (10, "odd", 10)],
    )
    def test_known_counts(self, n, kind, expected):
        assert partition_oracle(n, kind) == expected

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            partition_oracle(31, "odd")

    def test_rejects_unknown_kind(self):
        with pytest.raises(ValueError, match="kind"):
            partition_oracle(3, "even")
