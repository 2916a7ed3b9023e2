"""All complex roots of a polynomial, with residual certification.

Roots are found by Aberth-Ehrlich simultaneous iteration in double precision
and then polished one at a time by Newton's method in mpmath. Both stages
only call ``P.eval_with_derivative`` and ``P.eval_mp``, so a Farey
polynomial is evaluated through its word rather than through its badly
conditioned monomial coefficients.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

import mpmath
import numpy as np

from .polynomial import UniPoly

__all__ = [
    "RootFindingError",
    "RootSet",
    "find_roots",
    "integer_factor_split",
    "residual_certify",
    "scaled_residual",
    "select_max",
]

DEFAULT_TOL = 1e-10
POLISH_DPS = 40


class RootFindingError(ArithmeticError):
    """Raised when roots cannot be certified to the requested tolerance."""


@dataclass(frozen=True)
class RootSet:
    """Roots in (Re, Im) order with their scaled residuals.

    ``precise`` holds the polished mpmath values when polishing was done.
    """

    roots: tuple[complex, ...]
    residuals: tuple[float, ...]
    precise: tuple = field(default=(), repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def moduli(self) -> np.ndarray:
        return np.abs(np.array(self.roots, dtype=complex))

    def ordered_by(self, functional: Callable[[complex], float], *, rel_tol: float = 1e-9) -> list[complex]:
        """Roots sorted by decreasing functional value.

        Values within ``rel_tol`` of each other count as equal; such ties go
        to the larger modulus, then to the smaller (Re, Im).
        """
        vals = [float(functional(z)) for z in self.roots]
        items = sorted(zip(vals, self.roots), key=lambda t: -t[0])
        # bucket near-equal values so the secondary keys decide
        groups: list[list[tuple[float, complex]]] = []
        for v, z in items:
            if groups and abs(groups[-1][0][0] - v) <= rel_tol * max(abs(v), 1e-300):
                groups[-1].append((v, z))
            else:
                groups.append([(v, z)])
        out = []
        for g in groups:
            g.sort(key=lambda t: (-abs(t[1]), t[1].real, t[1].imag))
            out.extend(z for _, z in g)
        return out


def select_max(rs: RootSet, functional: Callable[[complex], float], *, rel_tol: float = 1e-9) -> complex:
    """The root maximising ``functional`` under the documented tie-break."""
    return rs.ordered_by(functional, rel_tol=rel_tol)[0]


def scaled_residual(P: UniPoly, z) -> float:
    """|P(z)| / sum_k |c_k| |z|^k, evaluated at the working mpmath precision."""
    value, _ = P.eval_mp(z)
    scale = float(P.modulus_scale(complex(z)))
    return float(abs(value)) / scale if scale else float(abs(value))


def _initial_ring(P: UniPoly, rng: np.random.Generator) -> np.ndarray:
    n = P.degree
    radius = P.root_radius_hint()
    angles = 2 * np.pi * (np.arange(n) + 0.25) / n
    return radius * np.exp(1j * angles) * (1 + 0.01 * rng.standard_normal(n))


def _aberth(P: UniPoly, max_iter: int, seed: int) -> np.ndarray:
    zs = None
    if hasattr(P, "initial_guesses"):
        zs = np.asarray(P.initial_guesses(), dtype=complex)
        if len(zs) != P.degree or not np.all(np.isfinite(zs)):
            zs = None
    if zs is None:
        zs = _initial_ring(P, np.random.default_rng(seed))
    for _ in range(max_iter):
        val, der = P.eval_with_derivative(zs)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(der != 0, val / der, 0)
        diff = zs[:, None] - zs[None, :]
        np.fill_diagonal(diff, 1)
        repulsion = (1 / diff).sum(axis=1) - 1
        step = ratio / (1 - ratio * repulsion)
        step = np.where(np.isfinite(step), step, 0)
        zs = zs - step
        if np.max(np.abs(step)) <= 1e-14 * max(1.0, float(np.max(np.abs(zs)))):
            break
    return zs


def _polish(P: UniPoly, z0: complex, dps: int, max_iter: int = 30):
    with mpmath.workdps(dps):
        z = mpmath.mpc(z0)
        tol = mpmath.mpf(10) ** (-(dps - 5))
        for _ in range(max_iter):
            val, der = P.eval_mp(z)
            if der == 0:
                break
            step = val / der
            z -= step
            if abs(step) <= tol * max(1, abs(z)):
                break
        return z


def find_roots(
    P: UniPoly,
    tol: float = DEFAULT_TOL,
    *,
    polish: bool = True,
    dps: int = POLISH_DPS,
    seed: int = 0,
    max_iter: int = 1000,
) -> RootSet:
    """Every root of ``P`` (with multiplicity) and its scaled residual.

    Raises ``RootFindingError`` when a residual is not below ``tol`` or two
    polished roots collapse onto each other.

    >>> rs = find_roots(UniPoly([4, 0, 1]))
    >>> [complex(round(z.real, 12), round(z.imag, 12)) for z in rs.roots]
    [-2j, 2j]
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if P.is_zero():
        raise ValueError("the zero polynomial has no finite root set")
    if P.degree < 1:
        raise ValueError("a constant polynomial has no roots")
    approx = _aberth(P, max_iter, seed)
    if polish:
        precise = [_polish(P, z, dps) for z in approx]
        roots = [complex(z) for z in precise]
        with mpmath.workdps(dps):
            residuals = [scaled_residual(P, z) for z in precise]
            _check_distinct(precise, dps)
    else:
        precise = []
        roots = [complex(z) for z in approx]
        val, _ = P.eval_with_derivative(np.array(roots))
        scale = P.modulus_scale(np.array(roots))
        residuals = list(np.abs(val) / np.where(scale > 0, scale, 1.0))
    worst = max(residuals)
    if not worst < tol:
        raise RootFindingError(f"root residual {worst:.3g} is not below tolerance {tol:.3g}")
    # conjugate pairs share a real part up to rounding
    order = sorted(range(len(roots)), key=lambda k: (round(roots[k].real, 12), roots[k].imag))
    return RootSet(
        tuple(roots[k] for k in order),
        tuple(float(residuals[k]) for k in order),
        tuple(precise[k] for k in order) if precise else (),
    )


def _check_distinct(precise: Sequence, dps: int) -> None:
    # a double root leaves two Newton iterates agreeing to about half the digits
    gap = mpmath.mpf(10) ** (-(dps // 4))
    for i in range(len(precise)):
        for j in range(i + 1, len(precise)):
            if abs(precise[i] - precise[j]) <= gap * max(1, abs(precise[i])):
                raise RootFindingError("Newton polishing merged two roots; multiple root suspected")


def residual_certify(P: UniPoly, rs: RootSet) -> float:
    """Normwise deviation of lead * prod(mu - root) from P.

    Returns max_k |c_k - c'_k| / max_k |c_k|, computed in mpmath from the
    polished roots when available.
    """
    if len(rs) != P.degree:
        raise ValueError(f"{len(rs)} roots supplied for a degree {P.degree} polynomial")
    roots = rs.precise or rs.roots
    with mpmath.workdps(POLISH_DPS):
        lead = mpmath.mpmathify(P.leading)
        rebuilt = [lead]
        for z in roots:
            z = mpmath.mpmathify(z)
            nxt = [mpmath.mpf(0)] * (len(rebuilt) + 1)
            for k, c in enumerate(rebuilt):
                nxt[k + 1] += c
                nxt[k] -= z * c
            rebuilt = nxt
        target = [mpmath.mpmathify(c) for c in P.coeffs]
        norm = max(abs(c) for c in target)
        return float(max(abs(a - b) for a, b in zip(rebuilt, target)) / norm)


def _conjugate_units(roots: Sequence[complex], tol: float) -> list[tuple[complex, ...]]:
    """Group roots into real singletons and conjugate pairs."""
    pending = list(roots)
    units = []
    while pending:
        z = pending.pop(0)
        scale = max(1.0, abs(z))
        if abs(z.imag) <= tol * scale:
            units.append((complex(z.real, 0.0),))
            continue
        k = min(range(len(pending)), key=lambda i: abs(pending[i] - z.conjugate()), default=None)
        if k is None or abs(pending[k] - z.conjugate()) > tol * scale:
            raise ValueError("roots are not closed under conjugation")
        units.append((z, pending.pop(k)))
    return units


def integer_factor_split(
    P: UniPoly, rs: RootSet, degree: int, *, tol: float = 1e-6
) -> tuple[UniPoly, UniPoly] | None:
    """Split an integer polynomial into integer factors by partitioning roots.

    Searches conjugate-closed root subsets of the given size for one whose
    monic product has integer coefficients (to within ``tol``). Returns
    ``(factor, cofactor)`` with ``factor`` monic and ``factor * cofactor == P``
    exactly, or None when no such subset exists.
    """
    if not P.is_integral():
        raise ValueError("integer polynomial required")
    if not 0 < degree < P.degree:
        raise ValueError("factor degree must lie strictly between 0 and deg P")
    if len(rs) != P.degree:
        raise ValueError(f"{len(rs)} roots supplied for a degree {P.degree} polynomial")
    units = _conjugate_units([complex(z) for z in (rs.precise or rs.roots)], 1e-9)
    singles = [u for u in units if len(u) == 1]
    pairs = [u for u in units if len(u) == 2]
    for n_single in range(min(degree, len(singles)) + 1):
        if (degree - n_single) % 2 or (degree - n_single) // 2 > len(pairs):
            continue
        for chosen_s in itertools.combinations(singles, n_single):
            for chosen_p in itertools.combinations(pairs, (degree - n_single) // 2):
                zs = [z for u in chosen_s + chosen_p for z in u]
                coeffs = np.poly(zs).real[::-1]
                ints = np.rint(coeffs)
                if np.max(np.abs(coeffs - ints)) > tol * max(1.0, np.max(np.abs(coeffs))):
                    continue
                factor = UniPoly([int(c) for c in ints])
                cofactor, remainder = P.divmod(factor)
                if remainder.is_zero() and cofactor.is_integral():
                    return factor, cofactor
    return None
