import json
import math
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fareybound.farey import FareyFraction
from fareybound.polynomial import UniPoly
from fareybound.reference import REFERENCE_P_10_17
from fareybound.roots import find_roots
from fareybound.spectrum import ellipse_functional
from fareybound.symalg import deformation_expansion, farey_trace_polynomial
from fareybound.verify import (
    circle_min_modulus,
    deformation_tail_bound,
    derivative_range_at_roots,
    functional_upper_bound,
    minimal_order,
    order_threshold_holds,
    rouche_root_stability,
)

from oracles import trace_plus_two

small_polys = st.lists(st.integers(-9, 9), min_size=2, max_size=7).filter(lambda c: c[-1] != 0)


class TestCircleBound:
    def test_constant(self):
        cb = circle_min_modulus(UniPoly([-3]), 1 + 1j, 0.5)
        assert cb.lipschitz_pad == 0
        assert cb.min_modulus_lower == pytest.approx(3, rel=1e-14)
        assert cb.min_modulus_lower <= 3

    def test_rejects_bad_radius(self):
        with pytest.raises(ValueError):
            circle_min_modulus(UniPoly([1, 1]), 0, 0)

    @given(small_polys, st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False), st.floats(0.01, 1))
    def test_lower_bound_is_below_dense_sampling(self, coeffs, center, radius):
        P = UniPoly(coeffs)
        cb = circle_min_modulus(P, center, radius, samples=256)
        theta = np.linspace(0, 2 * np.pi, 20001)
        dense = np.abs(np.polyval(coeffs[::-1], center + radius * np.exp(1j * theta)))
        assert cb.min_modulus_lower <= dense.min()
        assert cb.min_modulus_lower <= cb.observed_min

    def test_linear_exact_minimum(self):
        # |mu - 2| on |mu| = 1 has minimum exactly 1
        cb = circle_min_modulus(UniPoly([-2, 1]), 0, 1.0, samples=4096)
        assert cb.observed_min == pytest.approx(1.0, abs=1e-12)
        assert 1.0 - 1e-3 < cb.min_modulus_lower <= 1.0

    def test_reference_polynomial_constants(self):
        P = UniPoly(REFERENCE_P_10_17[::-1])
        roots = find_roots(P).roots
        mu0 = min(roots, key=lambda z: (-abs(z), z.imag))
        inner = circle_min_modulus(P, mu0, 0.0005)
        assert inner.min_modulus_lower >= 0.0685
        assert inner.observed_min == pytest.approx(0.06914005, abs=1e-5)
        top = abs(mu0)
        others = [z for z in roots if abs(z) < top * (1 - 1e-9)]
        assert min(circle_min_modulus(P, z, 0.025).min_modulus_lower for z in others) >= 0.64


class TestDerivativeRange:
    def test_mu_squared_plus_four(self):
        lo, hi = derivative_range_at_roots(UniPoly([4, 0, 1]))
        assert lo == pytest.approx(4) and hi == pytest.approx(4)

    def test_two_thirds_closed_form(self):
        roots = [-1, (3 + 1j * math.sqrt(7)) / 2, (3 - 1j * math.sqrt(7)) / 2]
        direct = [abs(3 * z * z - 4 * z + 1) for z in roots]
        lo, hi = derivative_range_at_roots(farey_trace_polynomial(FareyFraction(2, 3)))
        assert lo == pytest.approx(min(direct), rel=1e-12)
        assert hi == pytest.approx(max(direct), rel=1e-12)

    def test_reference_polynomial(self):
        lo, hi = derivative_range_at_roots(UniPoly(REFERENCE_P_10_17[::-1]))
        assert lo == pytest.approx(28.336, abs=2e-3)
        assert hi == pytest.approx(139.082, abs=2e-3)


@pytest.fixture(scope="module")
def small():
    return deformation_expansion(FareyFraction(5, 8))


class TestTailBound:
    def test_zero_deformation(self, small):
        assert deformation_tail_bound(small, 1 + 1j, 0.1, 0.0) == 0.0

    @given(st.floats(0.0, 0.2), st.floats(0.0, 0.2), st.floats(0.001, 0.3), st.floats(0.001, 0.3))
    def test_monotone(self, small, s1, s2, r1, r2):
        s1, s2 = sorted((s1, s2))
        r1, r2 = sorted((r1, r2))
        c = 0.8 - 1.1j
        assert deformation_tail_bound(small, c, r1, s1) <= deformation_tail_bound(small, c, r1, s2)
        assert deformation_tail_bound(small, c, r1, s1) <= deformation_tail_bound(small, c, r2, s1)

    def test_recentred_not_above_crude(self, small):
        for c in (0.5 + 1j, -1.2 + 0.3j):
            assert deformation_tail_bound(small, c, 0.05, 0.01) <= deformation_tail_bound(
                small, c, 0.05, 0.01, method="crude"
            )

    def test_dominates_actual_deformation(self, small):
        # the tail bounds |zeta^N xi^N P^{p,q} - P| for |zeta - 1|, |xi - 1| < s
        f = FareyFraction(5, 8)
        s = 0.05
        P = farey_trace_polynomial(f)
        bound = deformation_tail_bound(small, 0.9 + 0.4j, 0.02, s)
        rng = random.Random(3)
        for _ in range(30):
            p, q = rng.randint(64, 400), rng.randint(64, 400)
            z, x = np.exp(1j * np.pi / p), np.exp(1j * np.pi / q)
            assert abs(z - 1) < s and abs(x - 1) < s
            mu = 0.9 + 0.4j + 0.02 * np.exp(1j * rng.uniform(0, 2 * np.pi))
            deformed = z**small.clearing_exponent * x**small.clearing_exponent * trace_plus_two(5, 8, p, q, mu)
            assert abs(deformed - complex(P(mu))) <= bound

    def test_rejects_negative(self, small):
        with pytest.raises(ValueError):
            deformation_tail_bound(small, 0, 0.1, -1)
        with pytest.raises(ValueError):
            deformation_tail_bound(small, 0, 0.1, 0.1, method="bogus")


class TestOrderThreshold:
    def test_six_twenty_nine(self):
        assert minimal_order(1 / 200) == 629
        assert order_threshold_holds(629, 1 / 200)
        assert not order_threshold_holds(628, 1 / 200)

    @given(st.floats(1e-4, 1.9))
    def test_minimal(self, s):
        m = minimal_order(s)
        assert order_threshold_holds(m, s)
        assert m == 1 or not order_threshold_holds(m - 1, s)

    def test_chord_formula(self):
        for m in (2, 7, 629):
            assert abs(np.exp(1j * np.pi / m) - 1) == pytest.approx(2 * math.sin(math.pi / (2 * m)), rel=1e-13)


class TestCertificate:
    def test_passes(self, certificate_10_17):
        cert, _ = certificate_10_17
        assert cert.verdict == "pass"
        assert cert.localized_radius == pytest.approx(1 / 2000)
        assert cert.minimal_order == 629
        assert cert.disjoint and cert.extremal_separated
        assert len(cert.circles) == 17
        assert sum(c.extremal for c in cert.circles) == 2

    def test_tail_constants(self, certificate_10_17):
        cert, _ = certificate_10_17
        inner = [c.tail_bound for c in cert.circles if c.extremal]
        outer = [c.tail_bound for c in cert.circles if not c.extremal]
        assert max(inner) <= 0.03
        assert max(outer) <= 0.5

    def test_json_report(self, certificate_10_17):
        cert, _ = certificate_10_17
        report = json.loads(json.dumps(cert.to_dict()))
        assert report["verdict"] == "pass"
        assert len(report["circles"]) == 17
        assert all(c["margin"] > 0 for c in report["circles"])

    def test_large_deformation_fails(self):
        cert = rouche_root_stability(FareyFraction(10, 17), 0.5, samples=1024)
        assert cert.verdict == "fail"
        assert cert.failures

    def test_rejects_nonpositive_size(self):
        with pytest.raises(ValueError):
            rouche_root_stability(FareyFraction(2, 3), 0)

    def test_soundness_spot_check(self, certificate_10_17):
        cert, _ = certificate_10_17
        f = FareyFraction(10, 17)
        rng = random.Random(629)
        mu0 = cert.extremal.root
        for _ in range(10):
            p, q = rng.randint(629, 5000), rng.randint(629, 5000)
            roots = find_roots(farey_trace_polynomial(f, p, q), polish=False).roots
            for circle in cert.circles:
                inside = [z for z in roots if abs(z - circle.root) < circle.circle.radius]
                assert len(inside) == 1
            best = max(roots, key=lambda z: ellipse_functional(z, p, q))
            assert min(abs(best - mu0), abs(best - mu0.conjugate())) < 1 / 2000

    def test_gap_constant_at_order_629(self, certificate_10_17):
        cert, _ = certificate_10_17
        f = FareyFraction(10, 17)
        roots = find_roots(farey_trace_polynomial(f, 629, 629), polish=False).roots
        value = max(ellipse_functional(z, 629, 629) for z in roots)
        assert value <= 5
        assert functional_upper_bound(abs(cert.extremal.root) + 1 / 2000, 1 / 200) <= 5
