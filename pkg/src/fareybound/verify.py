"""Rigorous bounds around the roots of a parabolic Farey polynomial.

The question answered here: if both generators are elliptic of large order,
does the deformed polynomial P_f^{p,q} keep one root near each root of the
parabolic P_f, with the extremal root still extremal? Write

    zeta^N xi^N P_f^{p,q}(mu) = P_f(mu) + sum_{i+j>=1} a_ij(mu) u^i v^j,

u = zeta - 1, v = xi - 1. On a circle around a root of P_f, if the tail sum
with |u|, |v| < s is smaller than min |P_f|, then |P - P^{p,q}| < |P| there
and the symmetric Rouche theorem gives equally many roots inside. The unit
factor zeta^N xi^N does not change moduli.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath
import numpy as np

from .farey import FareyFraction
from .polynomial import UniPoly
from .roots import find_roots
from .symalg import DeformationPoly, deformation_expansion, farey_trace_polynomial

__all__ = [
    "CircleBound",
    "circle_min_modulus",
    "derivative_range_at_roots",
    "deformation_tail_bound",
    "minimal_order",
    "order_threshold_holds",
    "RootCircle",
    "RoucheCertificate",
    "rouche_root_stability",
    "functional_upper_bound",
]

DEFAULT_SAMPLES = 2**16
INNER_RADIUS = 1 / 2000
OUTER_RADIUS = 0.025
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class CircleBound:
    """A certified lower bound for |P| on the circle |mu - center| = radius."""

    center: complex
    radius: float
    min_modulus_lower: float
    samples_used: int
    lipschitz_pad: float
    observed_min: float
    rounding_slack: float = 0.0


def _disk_coefficient_sum(poly: UniPoly, center, radius: float) -> float:
    """sum_k |b_k| radius^k where P(center + w) = sum_k b_k w^k.

    This bounds |P| on the closed disk of the given radius about ``center``.
    """
    if poly.is_zero():
        return 0.0
    with mpmath.workdps(30):
        shifted = poly.taylor_shift(mpmath.mpc(center))
        r = mpmath.mpf(radius)
        total = mpmath.fsum(abs(b) * r**k for k, b in enumerate(shifted.coeffs))
    return float(total) * (1 + 1e-12)


def circle_min_modulus(P: UniPoly, center, radius: float, samples: int = DEFAULT_SAMPLES) -> CircleBound:
    """Lower bound for min |P| on a circle by sampling and Lipschitz padding.

    Every point of the circle is within an arc of radius * pi / samples of a
    sample, and |P'| on the disk is at most the recentred coefficient sum of
    P', so subtracting that product from the sampled minimum is rigorous up
    to floating point, which a separate slack term absorbs.
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    if samples < 8:
        raise ValueError("at least 8 samples are needed")
    center = complex(center)
    theta = 2 * np.pi * np.arange(samples) / samples
    pts = center + radius * np.exp(1j * theta)
    vals = np.abs(P(pts))
    observed = float(vals.min())
    dmax = _disk_coefficient_sum(P.derivative(), center, radius)
    pad = radius * (math.pi / samples) * dmax
    slack = float(4 * max(P.degree, 1) * _EPS * np.max(P.modulus_scale(pts)))
    return CircleBound(center, radius, observed - pad - slack, samples, pad, observed, slack)


def derivative_range_at_roots(P: UniPoly, roots=None) -> tuple[float, float]:
    """min and max of |P'| over the roots of P (found and certified if not given)."""
    if roots is None:
        rs = find_roots(P)
        roots = rs.precise or rs.roots
    with mpmath.workdps(40):
        mags = [float(abs(P.eval_mp(z)[1])) for z in roots]
    return min(mags), max(mags)


def deformation_tail_bound(
    D: DeformationPoly, center, radius: float, s: float, *, method: str = "recentred"
) -> float:
    """Upper bound for sum_{i+j>=1} |a_ij(mu)| s^(i+j) on |mu - center| <= radius.

    ``"recentred"`` bounds each |a_ij| by its coefficient sum about the
    centre; ``"crude"`` uses coefficient moduli at |mu| <= |center| + radius.
    Both are rigorous and monotone in s and radius.
    """
    if s < 0 or radius < 0:
        raise ValueError("s and radius must be non-negative")
    if s == 0:
        return 0.0
    total = 0.0
    big = abs(complex(center)) + radius
    for (i, j), a in D.terms.items():
        if i == j == 0:
            continue
        if method == "recentred":
            bound = _disk_coefficient_sum(a, center, radius)
        elif method == "crude":
            bound = sum(abs(c) * big**k for k, c in enumerate(a.coeffs))
        else:
            raise ValueError(f"unknown tail method {method!r}")
        total += bound * s ** (i + j)
    return total * (1 + 1e-12)


def minimal_order(s: float) -> int:
    """Smallest m with |exp(i pi/m) - 1| = 2 sin(pi/(2m)) < s."""
    if not 0 < s < 2:
        raise ValueError("s must lie in (0, 2)")
    m = max(1, math.floor(math.pi / (2 * math.asin(s / 2))) - 2)
    while not 2 * math.sin(math.pi / (2 * m)) < s:
        m += 1
    return m


def order_threshold_holds(m: int, s: float) -> bool:
    return abs(complex(math.cos(math.pi / m), math.sin(math.pi / m)) - 1) < s


@dataclass(frozen=True)
class RootCircle:
    root: complex
    circle: CircleBound
    tail_bound: float
    extremal: bool

    @property
    def margin(self) -> float:
        return self.circle.min_modulus_lower - self.tail_bound

    @property
    def passed(self) -> bool:
        return self.tail_bound < self.circle.min_modulus_lower


@dataclass(frozen=True)
class RoucheCertificate:
    """Root-stability certificate for P_f under deformations of size s."""

    fraction: FareyFraction
    deformation_size: float
    circles: tuple[RootCircle, ...]
    disjoint: bool
    extremal_separated: bool
    localized_radius: float
    minimal_order: int
    failures: tuple[str, ...] = field(default=())

    @property
    def tail_bounds(self) -> tuple[float, ...]:
        return tuple(c.tail_bound for c in self.circles)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    @property
    def extremal(self) -> RootCircle:
        """The extremal circle with Im(root) <= 0, or the only one."""
        ext = [c for c in self.circles if c.extremal]
        return min(ext, key=lambda c: (c.root.imag > 0, -c.root.real))

    def to_dict(self) -> dict:
        return {
            "fraction": str(self.fraction),
            "deformation_size": self.deformation_size,
            "minimal_order": self.minimal_order,
            "localized_radius": self.localized_radius,
            "verdict": self.verdict,
            "failures": list(self.failures),
            "disjoint": self.disjoint,
            "extremal_separated": self.extremal_separated,
            "circles": [
                {
                    "root": [c.root.real, c.root.imag],
                    "radius": c.circle.radius,
                    "extremal": c.extremal,
                    "observed_min": c.circle.observed_min,
                    "min_modulus_lower": c.circle.min_modulus_lower,
                    "lipschitz_pad": c.circle.lipschitz_pad,
                    "samples": c.circle.samples_used,
                    "tail_bound": c.tail_bound,
                    "margin": c.margin,
                }
                for c in self.circles
            ],
        }


def functional_upper_bound(modulus: float, s: float) -> float:
    """Largest ellipse value 2|mu|^2 + 8a|mu| + 4a^2 reachable with a < s^2.

    With |exp(i pi/p) - 1| < s we have sin(pi/p) < s, so a = sin(pi/p) sin(pi/q)
    stays below s^2.
    """
    a = s * s
    return 2 * modulus**2 + 8 * a * modulus + 4 * a * a


def _functional_lower_bound(modulus: float, s: float) -> float:
    a = s * s
    return 2 * modulus**2 - 8 * a * modulus


def rouche_root_stability(
    f: FareyFraction,
    s: float,
    *,
    inner_radius: float = INNER_RADIUS,
    outer_radius: float = OUTER_RADIUS,
    samples: int = DEFAULT_SAMPLES,
    method: str = "recentred",
) -> RoucheCertificate:
    """Certify that P_f^{p,q} keeps its roots near those of P_f.

    The extremal roots (largest modulus; for real P_f a conjugate pair) get
    circles of ``inner_radius`` and every other root one of
    ``outer_radius``. A pass requires, on every circle, tail bound <
    certified min |P_f|; pairwise disjoint circles; and the ellipse value
    over the extremal disks exceeding that over every other disk for all
    admissible (p, q).
    """
    if s <= 0:
        raise ValueError("deformation size must be positive")
    P = farey_trace_polynomial(f)
    rs = find_roots(P)
    D = deformation_expansion(f)
    roots = list(rs.roots)
    top_modulus = max(abs(z) for z in roots)
    # conjugate partners share the top modulus up to rounding
    extremal = [abs(z) >= top_modulus * (1 - 1e-12) for z in roots]
    circles = []
    failures = []
    for z, ext in zip(roots, extremal):
        radius = inner_radius if ext else outer_radius
        cb = circle_min_modulus(P, z, radius, samples)
        tail = deformation_tail_bound(D, z, radius, s, method=method)
        rc = RootCircle(z, cb, tail, ext)
        circles.append(rc)
        if not rc.passed:
            failures.append(f"circle at {z:.6f}: tail {tail:.6g} >= lower bound {cb.min_modulus_lower:.6g}")
    disjoint = all(
        abs(a.root - b.root) > a.circle.radius + b.circle.radius
        for i, a in enumerate(circles)
        for b in circles[i + 1 :]
    )
    if not disjoint:
        failures.append("root circles overlap")
    others = [functional_upper_bound(abs(c.root) + c.circle.radius, s) for c in circles if not c.extremal]
    lo = _functional_lower_bound(top_modulus - inner_radius, s)
    separated = not others or lo > max(others)
    if not separated:
        failures.append("extremal disks do not dominate the others")
    return RoucheCertificate(f, s, tuple(circles), disjoint, separated, inner_radius, minimal_order(s), tuple(failures))
