"""Closed-form hyperbolic geometry for pairs of elliptic generators.

Conventions: an elliptic of order p has trace 2 cos(pi/p), so
beta = tr^2 - 4 = -4 sin^2(pi/p); a parabolic has beta = 0. The commutator
parameter gamma = tr[f, g] - 2 and the complex distance delta + i theta
between the axes are tied by 4 gamma = beta_f beta_g sinh^2(delta + i theta).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .symalg import INF, Order, check_order, cos_pi, sin_pi

__all__ = [
    "beta_of_order",
    "gamma_from_mu",
    "cosh_two_delta",
    "complex_distance",
    "AxialGeometry",
    "DELTA1_TABLE",
    "delta_one",
    "triangle_axis_distance",
    "free_distance",
    "admissible_r",
    "fuchsian_deltas",
    "fuchsian_gap_cosh",
    "gap_delta",
    "gap_closed_form",
]


def beta_of_order(p: Order) -> complex:
    return complex(-4 * sin_pi(check_order(p)) ** 2)


def gamma_from_mu(mu, p: Order, q: Order):
    """Commutator parameter mu (mu - 4 sin(pi/p) sin(pi/q)) of the Farey generators."""
    return mu * (mu - 4 * sin_pi(check_order(p)) * sin_pi(check_order(q)))


def cosh_two_delta(gamma, beta_f, beta_g, *, parabolic: bool = False) -> float:
    """cosh(2 delta) = |4g/(bf bg) + 1| + |4g/(bf bg)|.

    When a beta vanishes the ratio is undefined. With ``parabolic=True``
    the degenerate ellipse sum |gamma| + |gamma - beta| = 2|gamma| is
    returned instead; without it a ``ValueError`` is raised.
    """
    prod = complex(beta_f) * complex(beta_g)
    if prod == 0:
        if parabolic:
            return 2 * abs(complex(gamma))
        raise ValueError("a parabolic generator has no axis; pass parabolic=True for the disk functional")
    w = 4 * complex(gamma) / prod
    return abs(w + 1) + abs(w)


def complex_distance(gamma, beta_f, beta_g) -> complex:
    """delta + i theta solving sinh^2(delta + i theta) = 4 gamma / (beta_f beta_g).

    The solution is only fixed up to sign and shifts by i pi; we return the
    one with delta >= 0 and theta in (-pi/2, pi/2], taking theta >= 0 when
    delta = 0.
    """
    prod = complex(beta_f) * complex(beta_g)
    if prod == 0:
        raise ValueError("complex distance needs two non-parabolic generators")
    w = cmath.asinh(cmath.sqrt(4 * complex(gamma) / prod))
    if w.real < 0 or (w.real == 0 and w.imag < 0):
        w = -w
    theta = w.imag
    # sinh^2 is invariant under w -> w + i pi
    theta -= math.pi * math.floor((theta + math.pi / 2) / math.pi)
    if theta <= -math.pi / 2:
        theta += math.pi
    if w.real == 0 and theta < 0:
        theta = -theta
    return complex(w.real, theta)


@dataclass(frozen=True)
class AxialGeometry:
    """Traces and commutator of a generator pair with their complex distance."""

    beta_f: complex
    beta_g: complex
    gamma: complex
    distance: complex

    @classmethod
    def from_gamma(cls, gamma, beta_f, beta_g) -> "AxialGeometry":
        return cls(complex(beta_f), complex(beta_g), complex(gamma), complex_distance(gamma, beta_f, beta_g))

    @classmethod
    def from_distance(cls, delta: float, theta: float, beta_f, beta_g) -> "AxialGeometry":
        gamma = complex(beta_f) * complex(beta_g) * cmath.sinh(complex(delta, theta)) ** 2 / 4
        return cls(complex(beta_f), complex(beta_g), gamma, complex(delta, theta))

    @property
    def delta(self) -> float:
        return self.distance.real

    @property
    def theta(self) -> float:
        return self.distance.imag

    def residual(self) -> float:
        """|4 gamma - beta_f beta_g sinh^2(delta + i theta)|."""
        return abs(4 * self.gamma - self.beta_f * self.beta_g * cmath.sinh(self.distance) ** 2)


# Values of 2 sin(pi/p) sin(pi/q) cosh(delta_1) for 2 <= p <= q <= 6.
DELTA1_TABLE: dict[tuple[int, int], float] = {
    (2, 3): 1.765, (2, 4): 1.538, (2, 5): 1.300, (2, 6): 1.224,
    (3, 3): 1.618, (3, 4): math.sqrt(2), (3, 5): 1.401, (3, 6): 1.0,
    (4, 4): 1.366, (4, 5): 1.0, (4, 6): 1.0,
    (5, 5): 1.0, (5, 6): 1.0,
    (6, 6): 1.0,
}


def _delta1_scaled(p: int, q: int) -> float:
    lo, hi = min(p, q), max(p, q)
    if hi <= 6:
        return DELTA1_TABLE[(lo, hi)]
    if lo == 3:
        return math.cos(math.pi / hi)
    if lo == hi:
        return math.cos(2 * math.pi / hi)
    return 1.0


def delta_one(p: int, q: int) -> float:
    """Smallest nonzero axial distance between elliptics of orders p and q."""
    p, q = check_order(p), check_order(q)
    if INF in (p, q):
        raise ValueError("delta_1 is defined for finite orders only")
    if p == q == 2:
        raise ValueError("delta_1(2, 2) is not attained")
    return math.acosh(_delta1_scaled(p, q) / (2 * sin_pi(p) * sin_pi(q)))


def _angle_room(p: int, q: int) -> Fraction:
    # exact, so Euclidean triples such as (2, 3, 6) are never admitted
    return 1 - Fraction(1, p) - Fraction(1, q)


def admissible_r(p: int, q: int) -> int:
    """Smallest integer r >= 2 with 1/r < 1 - 1/p - 1/q."""
    room = _angle_room(p, q)
    if room <= 0:
        raise ValueError(f"no hyperbolic ({p},{q},r) triangle group exists")
    return max(2, math.floor(1 / room) + 1)


def triangle_axis_distance(p: int, q: int, r: Order) -> float:
    """Distance between the order p and order q vertices of a (p, q, r) triangle.

    r = INF gives the distance beyond which the two elliptics always
    generate a free discrete group.
    """
    p, q, r = check_order(p), check_order(q), check_order(r)
    if INF in (p, q):
        raise ValueError("triangle vertices need finite orders p and q")
    if r != INF and not Fraction(1, r) < _angle_room(p, q):
        raise ValueError(f"({p},{q},{r}) is not a hyperbolic triangle")
    value = (cos_pi(r) + cos_pi(p) * cos_pi(q)) / (sin_pi(p) * sin_pi(q))
    return math.acosh(value)


def free_distance(p: int, q: int) -> float:
    """Axis distance guaranteeing a free discrete group; also caps delta_inf(p, q)."""
    return triangle_axis_distance(p, q, INF)


def fuchsian_deltas(p: int, q: int) -> tuple[float, int, float]:
    """(Delta_1, minimising r, Delta_inf) over the (p, q, r) triangle groups."""
    r = admissible_r(check_order(p), check_order(q))
    return triangle_axis_distance(p, q, r), r, free_distance(p, q)


def fuchsian_gap_cosh(p: int, q: int) -> float:
    """cosh(Delta_inf - Delta_1) with r = 2, written in cot and csc.

    Requires 1/p + 1/q < 1/2 so that r = 2 is admissible.
    """
    if not 1 / p + 1 / q < 0.5:
        raise ValueError("r = 2 is admissible only when 1/p + 1/q < 1/2")
    cp, cq = 1 / math.tan(math.pi / p), 1 / math.tan(math.pi / q)
    sp, sq = 1 / math.sin(math.pi / p), 1 / math.sin(math.pi / q)
    return cp * cq * (cp * cq + sp * sq) - math.sqrt(cp * cp * cq * cq - 1) * (sp * cq + cp * sq)


def gap_delta() -> float:
    """The extremal value of ``fuchsian_gap_cosh``, attained at (3, 7)."""
    t = math.pi / 7
    cot, csc = 1 / math.tan(t), 1 / math.sin(t)
    return (cot**2 + 2 * cot * csc - math.sqrt(2 * math.sin(3 * math.pi / 14) - 1) * (1 + 2 * math.cos(t)) * csc**2) / 3


def gap_closed_form() -> float:
    """Universal cap arccosh(Delta) on delta_inf - delta_1 over all (p, q)."""
    return math.acosh(gap_delta())
