import math
from math import gcd

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fareybound.farey import FareyFraction
from fareybound.geometry import gamma_from_mu
from fareybound.spectrum import (
    BoundRecord,
    best_bound,
    bound_for_fraction,
    bound_from_functional,
    candidate_fractions,
    default_budget,
    ellipse_functional,
    functional_from_bound,
    gap_from_constant,
    spectral_gap,
)
from fareybound.symalg import INF

from oracles import trace_plus_two

orders = st.one_of(st.integers(2, 100), st.just(INF))
mus = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)


def _oracle_extremal_value(r, s, p, q):
    """Max ellipse value over the roots: DFT interpolation, then numpy.roots."""
    n = s + 1
    nodes = np.exp(2j * np.pi * np.arange(n) / n)
    values = np.array([trace_plus_two(r, s, p, q, z) for z in nodes])
    coeffs = (np.fft.fft(values) / n)[::-1]  # fft gives ascending coefficients
    a = math.sin(math.pi / p) * math.sin(math.pi / q) if INF not in (p, q) else 0.0
    return max(abs(z - 2 * a) ** 2 + abs(z) * abs(z - 4 * a) for z in np.roots(coeffs))


class TestFunctional:
    @pytest.mark.parametrize("p,q", [(2, 3), (3, 7), (10, 10)])
    def test_at_zero(self, p, q):
        ab = math.sin(math.pi / p) * math.sin(math.pi / q)
        assert ellipse_functional(0, p, q) == pytest.approx(4 * ab * ab, rel=1e-14)

    @given(mus)
    def test_parabolic(self, mu):
        assert ellipse_functional(mu, INF, 2) == pytest.approx(2 * abs(mu) ** 2, rel=1e-12, abs=1e-300)

    def test_ten_seventeenths_at_order_629(self):
        # reference 2|mu0|^2 for 10/17, used for the large-order gap constant
        rec = bound_for_fraction(FareyFraction(10, 17), 629, 629)
        assert rec.ellipse_value == pytest.approx(4.94357, abs=2e-3)
        assert rec.ellipse_value == pytest.approx(2 * abs(rec.mu0) ** 2, abs=1e-3)

    def test_riley_value(self):
        z = 1.03791 + 0.692732j
        assert ellipse_functional(z, INF, INF) == pytest.approx(3.11425, abs=2e-3)

    @given(mus, orders, orders)
    def test_gamma_identity(self, mu, p, q):
        ab = math.sin(math.pi / p) * math.sin(math.pi / q) if INF not in (p, q) else 0.0
        g = gamma_from_mu(mu, p, q)
        assert ellipse_functional(mu, p, q) == pytest.approx(abs(g) + abs(g + 4 * ab * ab), abs=1e-10 * (1 + abs(g)))

    @given(st.floats(0, 4), st.integers(2, 50), st.integers(3, 50))
    def test_bound_inverse(self, d, p, q):
        c = functional_from_bound(d, p, q)
        assert bound_from_functional(c, p, q) == pytest.approx(d, abs=1e-7)

    def test_parabolic_has_no_bound(self):
        assert bound_from_functional(3.0, INF, 2) is None

    def test_asymptotic_gap(self):
        assert gap_from_constant(1000, 1000, 5.0) == pytest.approx(0.5 * math.log(2.5), abs=0.02)
        assert gap_from_constant(10**4, 10**4, 5.0) == pytest.approx(0.458145, abs=1e-4)


class TestSingleFraction:
    def test_order_two_three(self):
        rec = bound_for_fraction(FareyFraction(29, 41), 2, 3)
        assert rec.delta_inf_bound == pytest.approx(0.3583, abs=2e-3)
        assert rec.delta_one == pytest.approx(0.19474, abs=2e-3)

    def test_three_three_uses_index_two(self):
        rec = bound_for_fraction(FareyFraction(29, 41), 3, 3)
        assert rec.route == "index-two"
        assert rec.ellipse_value == pytest.approx(4.984, abs=2e-3)
        doubled = 2 * bound_for_fraction(FareyFraction(29, 41), 2, 3).delta_inf_bound
        assert rec.delta_inf_bound == pytest.approx(doubled, rel=1e-12)

    @pytest.mark.xfail(strict=True, reason="reference row for p = 10 carries the p = 20 ellipse constant")
    def test_order_two_ten(self):
        rec = bound_for_fraction(FareyFraction(23, 29), 2, 10)
        assert rec.delta_inf_bound == pytest.approx(1.3979, abs=2e-3)

    @pytest.mark.parametrize("f,p,q", [((10, 17), 3, 7), ((5, 8), 2, 5), ((7, 12), INF, 3), ((12, 19), 4, 9)])
    def test_against_oracle(self, f, p, q):
        rec = bound_for_fraction(FareyFraction(*f), p, q)
        want = _oracle_extremal_value(*f, p, q)
        assert rec.route == "direct"
        assert rec.ellipse_value == pytest.approx(want, rel=1e-7)

    @pytest.mark.parametrize("f,p,q", [((10, 17), 3, 7), ((11, 19), 5, 6), ((8, 13), 2, 9)])
    def test_mirror_and_swap_symmetry(self, f, p, q):
        r, s = f
        base = bound_for_fraction(FareyFraction(r, s), p, q).ellipse_value
        assert bound_for_fraction(FareyFraction(s - r, s), p, q).ellipse_value == pytest.approx(base, rel=1e-9)
        assert bound_for_fraction(FareyFraction(r, s), q, p).ellipse_value == pytest.approx(base, rel=1e-9)

    def test_rejects_two_two(self):
        with pytest.raises(ValueError):
            bound_for_fraction(FareyFraction(2, 3), 2, 2)
        with pytest.raises(ValueError):
            best_bound(2, 2)


class TestSearch:
    def test_budget_defaults(self):
        assert default_budget(3, 7) == 125
        assert default_budget(2, 7) == 257
        assert default_budget(INF, 5) == 257
        assert default_budget(6, 6) == 257

    def test_candidates_are_mirror_representatives(self):
        cands = candidate_fractions(125)
        assert all(2 * f.r >= f.s for f in cands)
        assert len(cands) == len(set(cands))
        assert max(f.depth for f in cands) == 7
        assert len(cands) == 64

    def test_one_fraction_parabolic_order_two(self):
        # P_{1/2} with a parabolic and an involution: brute-force both roots
        rec = best_bound(INF, 2, 1)
        assert rec.fraction == FareyFraction(1, 2)
        assert rec.ellipse_value == pytest.approx(_oracle_extremal_value(1, 2, INF, 2), rel=1e-12)

    def test_budget_monotone(self):
        values = [best_bound(3, 7, n).ellipse_value for n in (1, 3, 10, 31, 63)]
        assert all(b <= a for a, b in zip(values, values[1:]))

    @given(st.integers(1, 40), st.integers(1, 40))
    def test_budget_monotone_property(self, n, m):
        n, m = sorted((n, m))
        assert best_bound(5, 8, m).ellipse_value <= best_bound(5, 8, n).ellipse_value

    def test_parallel_matches_serial(self):
        serial = best_bound(4, 9, 40)
        parallel = best_bound(4, 9, 40, workers=2)
        assert parallel == serial

    def test_swap_symmetry_of_search(self):
        a, b = best_bound(4, 7, 60), best_bound(7, 4, 60)
        assert a.fraction == b.fraction
        assert a.ellipse_value == pytest.approx(b.ellipse_value, rel=1e-9)

    def test_refined_gap(self):
        assert spectral_gap(3, 7) == pytest.approx(0.841, abs=2e-3)

    def test_unknown_ordering(self):
        with pytest.raises(ValueError):
            best_bound(3, 7, 5, ordering="alphabetical")


class TestRecords:
    def test_round_trip(self):
        rec = best_bound(3, 5, 20)
        again = BoundRecord.from_dict(rec.to_dict())
        assert again == rec
        assert again.recomputed() == rec

    def test_index_two_round_trip(self):
        rec = bound_for_fraction(FareyFraction(29, 41), 4, 4)
        assert BoundRecord.from_dict(rec.to_dict()).recomputed() == rec

    def test_gap_is_difference(self):
        rec = best_bound(4, 6, 30)
        assert rec.gap == rec.delta_inf_bound - rec.delta_one


class TestGridInvariants:
    def test_delta_one_below_bound(self, grid):
        records, _ = grid
        for (p, q), rec in records.items():
            if rec.delta_one is not None:
                assert rec.delta_one < rec.delta_inf_bound, (p, q)

    def test_bounds_below_free_distance(self, grid):
        from fareybound.geometry import free_distance

        records, _ = grid
        for (p, q), rec in records.items():
            if rec.delta_inf_bound is not None:
                assert rec.delta_inf_bound < free_distance(p, q), (p, q)

    def test_symmetric_fill(self, grid):
        records, _ = grid
        for (p, q) in [(3, 5), (4, 8), (6, 20)]:
            swapped = best_bound(q, p)
            assert swapped.ellipse_value == pytest.approx(records[(p, q)].ellipse_value, rel=1e-9)
