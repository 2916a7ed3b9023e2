from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fareybound.farey import (
    FareyFraction,
    enumerate_fractions,
    farey_word,
    format_word,
    iter_fractions,
    sign_sequence,
    stern_brocot_depth,
)


@st.composite
def fractions(draw, max_s=60):
    s = draw(st.integers(2, max_s))
    r = draw(st.integers(1, s - 1).filter(lambda r: gcd(r, s) == 1))
    return FareyFraction(r, s)


def _brute_force_signs(r, s):
    # the exponent flips each time (i-1) r / s crosses an integer
    out = []
    for i in range(1, 2 * s + 1):
        k = 0
        while (k + 1) * s <= (i - 1) * r:
            k += 1
        out.append(1 if k % 2 == 0 else -1)
    return tuple(out)


class TestFareyFraction:
    def test_rejects_unreduced(self):
        with pytest.raises(ValueError):
            FareyFraction(2, 4)

    @pytest.mark.parametrize("r,s", [(0, 1), (1, 1), (3, 2), (-1, 3), (1, 0)])
    def test_rejects_outside_unit_interval(self, r, s):
        with pytest.raises(ValueError):
            FareyFraction(r, s)

    def test_parse_round_trip(self):
        f = FareyFraction.parse(" 10/17 ")
        assert (f.r, f.s) == (10, 17)
        assert str(f) == "10/17"

    @pytest.mark.parametrize("text", ["1/2/3", "a/b", "2/4", "5"])
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError):
            FareyFraction.parse(text)

    def test_value_and_mirror(self):
        f = FareyFraction(10, 17)
        assert f.value == Fraction(10, 17)
        assert f.mirror() == FareyFraction(7, 17)

    @pytest.mark.parametrize(
        "r,s,depth", [(1, 2, 1), (1, 3, 2), (2, 3, 2), (29, 41, 8), (23, 29, 9), (21, 34, 7), (55, 89, 9)]
    )
    def test_stern_brocot_depth(self, r, s, depth):
        assert stern_brocot_depth(r, s) == depth


class TestEnumeration:
    def test_first_fraction(self):
        assert enumerate_fractions(1) == [FareyFraction(1, 2)]

    def test_first_five(self):
        assert [str(f) for f in enumerate_fractions(5)] == ["1/2", "1/3", "2/3", "1/4", "3/4"]

    def test_zero_count(self):
        assert enumerate_fractions(0) == []

    def test_budget_257_reaches_denominator_23(self):
        # count reduced fractions per denominator independently
        counts = {s: sum(1 for r in range(1, s) if gcd(r, s) == 1) for s in range(2, 40)}
        cumulative, last = 0, None
        for s in range(2, 40):
            cumulative += counts[s]
            if cumulative >= 257:
                last = s
                break
        fs = enumerate_fractions(257)
        assert fs[-1].s == last
        assert fs[-1].s >= 23

    @pytest.mark.parametrize("order", ["denominator", "stern-brocot"])
    def test_no_repeats(self, order):
        fs = enumerate_fractions(600, order)
        assert len(set(fs)) == 600

    def test_stern_brocot_levels(self):
        fs = enumerate_fractions(127, "stern-brocot")
        assert [f.depth for f in fs] == sorted(f.depth for f in fs)
        assert max(f.depth for f in fs) == 7
        # each level is listed left to right
        for d in range(1, 8):
            level = [f.value for f in fs if f.depth == d]
            assert len(level) == 2 ** (d - 1)
            assert level == sorted(level)

    def test_unknown_ordering(self):
        with pytest.raises(ValueError):
            next(iter_fractions("random"))

    @given(st.integers(0, 300), st.integers(0, 300), st.sampled_from(["denominator", "stern-brocot"]))
    def test_prefix_property(self, n, m, order):
        n, m = sorted((n, m))
        assert enumerate_fractions(m, order)[:n] == enumerate_fractions(n, order)


class TestSigns:
    def test_two_thirds(self):
        assert sign_sequence(FareyFraction(2, 3)) == (1, 1, -1, 1, 1, -1)

    def test_ten_seventeenths(self):
        expected = (
            1, 1, -1, -1, 1, 1, -1, 1, 1, -1, -1, 1, -1, -1, 1, 1, -1,
            1, 1, -1, -1, 1, 1, -1, 1, 1, -1, -1, 1, -1, -1, 1, 1, -1,
        )
        assert sign_sequence(FareyFraction(10, 17)) == expected

    def test_one_half_is_commutator(self):
        f = FareyFraction(1, 2)
        assert sign_sequence(f) == (1, 1, -1, -1)
        assert format_word(farey_word(f)) == "X Y X^-1 Y^-1"

    def test_word_two_thirds(self):
        assert format_word(farey_word(FareyFraction(2, 3))) == "X Y X^-1 Y X Y^-1"

    def test_word_ten_seventeenths_alternates(self):
        f = FareyFraction(10, 17)
        word = farey_word(f)
        assert len(word) == 34
        assert [letter for letter, _ in word] == ["X", "Y"] * 17
        assert tuple(e for _, e in word) == sign_sequence(f)

    @given(fractions())
    def test_length_and_first_sign(self, f):
        signs = sign_sequence(f)
        assert len(signs) == 2 * f.s
        assert signs[0] == 1
        assert set(signs) <= {1, -1}

    @given(fractions(max_s=30))
    def test_matches_brute_force(self, f):
        assert sign_sequence(f) == _brute_force_signs(f.r, f.s)
