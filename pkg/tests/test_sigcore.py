"""
Unit tests for signatures, strip operations and basis enumerations.
"""

import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from twistfuse.config import LevelContext
from twistfuse.sigcore import (
    FormalCombination,
    GLSignature,
    HalfIntVector,
    SpSignature,
    add_vertical_strips,
    check_gl,
    check_sp,
    count_untwisted_basis,
    dual_gl,
    enumerate_eval_set,
    enumerate_paired,
    enumerate_twisted_basis,
    enumerate_untwisted_basis,
    enumerate_wall,
    normalize_gl,
    remove_vertical_strips,
)

partitions = st.lists(st.integers(0, 4), min_size=1, max_size=4).map(
    lambda xs: tuple(sorted(xs, reverse=True))
)


class TestSignatures:
    def test_parse(self):
        assert GLSignature.parse("2,1,0,0").parts == (2, 1, 0, 0)
        assert SpSignature.parse("1,0").parts == (1, 0)

    @pytest.mark.parametrize("text", ["1,a", "", "1;0", "1,,0"])
    def test_parse_malformed(self, text):
        with pytest.raises(ValueError, match="malformed signature"):
            GLSignature.parse(text)

    def test_rejects_increasing(self):
        with pytest.raises(ValueError, match="weakly decreasing"):
            GLSignature((0, 1))

    def test_sp_rejects_negative(self):
        with pytest.raises(ValueError, match="nonnegative"):
            SpSignature((1, -1))

    def test_width_and_permissible(self):
        f = GLSignature((3, 1, 1, 1))
        assert f.width == 2
        assert f.is_permissible(2)
        assert not f.is_permissible(1)

    def test_top_pair(self):
        assert SpSignature((2, 1, 1)).top_pair == 3
        assert SpSignature((3,)).top_pair == 3

    def test_key_and_json(self):
        assert GLSignature((1, 0)).key() == "1,0"
        assert SpSignature((2, 0)).to_json() == [2, 0]

    def test_ordering_is_lexicographic(self):
        assert sorted([GLSignature((2, 0)), GLSignature((0, 0)), GLSignature((1, 0))]) == [
            GLSignature((0, 0)),
            GLSignature((1, 0)),
            GLSignature((2, 0)),
        ]


class TestHalfIntVector:
    def test_integral(self):
        g = HalfIntVector((2, 0))
        assert g.integral
        assert g.parts == (Fraction(1), Fraction(0))
        assert g.to_json() == {"doubled": [2, 0], "type": "integral"}

    def test_half_integral(self):
        g = HalfIntVector((3, 1))
        assert not g.integral
        assert g.key() == "3/2,1/2"

    def test_rejects_mixed_parity(self):
        with pytest.raises(ValueError, match="all integers or all half-integers"):
            HalfIntVector((2, 1))

    def test_fits(self):
        assert HalfIntVector((1,)).fits(1)
        assert not HalfIntVector((2,)).fits(1)


class TestFormalCombination:
    def test_drops_zeros_and_sorts(self):
        a, b = SpSignature((1,)), SpSignature((0,))
        combo = FormalCombination([(a, 2), (b, 1), (a, -2)])
        assert list(combo) == [b]
        assert combo.get(a) == 0

    def test_equality_with_mapping(self):
        a = GLSignature((1, 0))
        assert FormalCombination({a: 1}) == {a: 1, GLSignature((0, 0)): 0}

    def test_add_and_scale(self):
        a, b = GLSignature((0, 0)), GLSignature((1, 0))
        combo = FormalCombination.single(a) + FormalCombination({a: 1, b: 2})
        assert combo == {a: 2, b: 2}
        assert combo.scaled(-1).is_nonnegative() is False

    def test_to_json_canonical_order(self):
        a, b = GLSignature((2, 0)), GLSignature((0, 0))
        assert list(FormalCombination({a: 1, b: 1}).to_json()) == ["0,0", "2,0"]

    def test_to_frame(self):
        frame = FormalCombination({SpSignature((1, 0)): 2}).to_frame()
        assert list(frame.columns) == ["signature", "multiplicity"]
        assert frame.iloc[0]["multiplicity"] == 2


class TestSignatureOperations:
    def test_normalize(self):
        assert normalize_gl((3, 2, 1, 1)) == GLSignature((2, 1, 0, 0))

    def test_dual(self):
        assert dual_gl(GLSignature((1, 0, 0, 0))) == GLSignature((1, 1, 1, 0))
        assert dual_gl(GLSignature((2, 1, 0, 0))) == GLSignature((2, 2, 1, 0))

    def test_check_lengths(self):
        ctx = LevelContext(2, 1)
        assert check_gl(GLSignature((2, 2, 1, 1)), ctx) == GLSignature((1, 1, 0, 0))
        with pytest.raises(ValueError, match="2N = 4"):
            check_gl(GLSignature((1, 0)), ctx)
        with pytest.raises(ValueError, match="N = 2"):
            check_sp(SpSignature((1,)), ctx)

    @given(partitions)
    def test_normalize_idempotent(self, parts):
        once = normalize_gl(parts)
        assert normalize_gl(once) == once
        assert once.parts[-1] == 0


class TestStrips:
    def test_add_examples(self):
        assert add_vertical_strips(GLSignature((1, 0)), 1) == [
            GLSignature((2, 0)),
            GLSignature((1, 1)),
        ]
        assert add_vertical_strips((1, 1), 2) == [(2, 2)]
        assert add_vertical_strips((1, 0), 3) == []

    def test_add_respects_max_rows(self):
        assert add_vertical_strips((0, 0, 0), 2, max_rows=2) == [(1, 1, 0)]

    def test_remove_examples(self):
        assert remove_vertical_strips(SpSignature((2, 1)), 1) == [
            SpSignature((2, 0)),
            SpSignature((1, 1)),
        ]
        assert remove_vertical_strips((1, 0), 2) == []

    def test_zero_strip_is_identity(self):
        assert add_vertical_strips((2, 1), 0) == [(2, 1)]
        assert remove_vertical_strips((2, 1), 0) == [(2, 1)]

    def test_negative_strip(self):
        with pytest.raises(ValueError):
            add_vertical_strips((1, 0), -1)
        with pytest.raises(ValueError):
            remove_vertical_strips((1, 0), -1)

    @given(partitions, st.integers(0, 4))
    def test_add_conserves_boxes(self, parts, p):
        for result in add_vertical_strips(parts, p):
            assert sum(result) == sum(parts) + p
            assert all(0 <= r - s <= 1 for r, s in zip(result, parts))
            assert list(result) == sorted(result, reverse=True)

    @given(partitions, st.integers(0, 4))
    def test_remove_undoes_add(self, parts, p):
        for result in add_vertical_strips(parts, p):
            assert parts in remove_vertical_strips(result, p)

    @given(partitions, st.integers(0, 4))
    def test_results_descending_and_distinct(self, parts, p):
        results = add_vertical_strips(parts, p)
        assert results == sorted(set(results), reverse=True)


class TestEnumerations:
    def test_untwisted_basis_order(self):
        basis = enumerate_untwisted_basis(LevelContext(1, 2))
        assert basis == [GLSignature((0, 0)), GLSignature((1, 0)), GLSignature((2, 0))]

    def test_untwisted_basis_level_one(self):
        basis = enumerate_untwisted_basis(LevelContext(2, 1))
        assert [f.key() for f in basis] == ["0,0,0,0", "1,0,0,0", "1,1,0,0", "1,1,1,0"]

    @pytest.mark.parametrize("n,level", [(1, 1), (1, 4), (2, 2), (2, 4), (3, 3)])
    def test_untwisted_count(self, n, level):
        ctx = LevelContext(n, level)
        assert len(enumerate_untwisted_basis(ctx)) == count_untwisted_basis(ctx)

    def test_untwisted_count_value(self):
        assert count_untwisted_basis(LevelContext(3, 3)) == 56

    def test_twisted_basis(self):
        assert [h.key() for h in enumerate_twisted_basis(LevelContext(2, 2))] == [
            "0,0",
            "1,0",
            "1,1",
            "2,0",
        ]
        assert len(enumerate_twisted_basis(LevelContext(1, 3))) == 4

    def test_paired(self):
        assert enumerate_paired(LevelContext(1, 3)) == [GLSignature((0, 0))]
        assert [f.key() for f in enumerate_paired(LevelContext(2, 2))] == [
            "0,0,0,0",
            "1,1,0,0",
            "2,2,0,0",
        ]

    def test_eval_set_order(self):
        points = enumerate_eval_set(LevelContext(2, 2))
        assert [g.doubled for g in points] == [(0, 0), (2, 0), (2, 2), (1, 1)]

    @pytest.mark.parametrize(
        "n,level", [(1, 1), (1, 4), (2, 1), (2, 3), (2, 4), (3, 2), (3, 3)]
    )
    def test_eval_set_size_matches_twisted_basis(self, n, level):
        ctx = LevelContext(n, level)
        assert len(enumerate_eval_set(ctx)) == len(enumerate_twisted_basis(ctx))

    def test_wall(self):
        assert [h.key() for h in enumerate_wall(LevelContext(2, 1))] == ["1,1", "2,0"]
        assert enumerate_wall(LevelContext(1, 2)) == [SpSignature((3,))]
