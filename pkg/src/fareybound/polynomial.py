"""Univariate polynomials in mu with integer, complex or mpmath coefficients."""

from __future__ import annotations

from typing import Iterable, Sequence

import mpmath
import numpy as np

__all__ = ["UniPoly"]


def _is_zero(c) -> bool:
    return c == 0


class UniPoly:
    """Polynomial sum_k c_k mu^k stored with ascending coefficients.

    Coefficients may be Python ints (exact), Python/numpy complex numbers, or
    mpmath numbers. Trailing zero coefficients are stripped so the leading
    coefficient is nonzero; the zero polynomial has no coefficients and
    degree -1.
    """

    def __init__(self, coeffs: Iterable) -> None:
        cs = list(coeffs)
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self._coeffs = tuple(cs)

    # -- basic protocol -------------------------------------------------

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({list(self.coeffs)!r})"

    def __str__(self) -> str:
        return self.format()

    def format(self, var: str = "mu", digits: int = 6) -> str:
        """Descending-degree human-readable form."""
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if isinstance(c, int):
                mag, neg = abs(c), c < 0
                cs = "" if (mag == 1 and k > 0) else str(mag)
            else:
                z = complex(c)
                if abs(z.imag) <= 1e-14 * max(1.0, abs(z.real)):
                    neg, mag = z.real < 0, abs(z.real)
                    cs = "" if (abs(mag - 1) < 1e-15 and k > 0) else f"{mag:.{digits}g}"
                else:
                    neg, cs = False, f"({z.real:.{digits}g}{z.imag:+.{digits}g}j)"
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            body = cs + ("*" if cs and mono else "") + mono
            terms.append(("- " if neg else "+ ") + body)
        if not terms:
            return "0"
        out = " ".join(terms)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return UniPoly(
            (a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0) for k in range(n)
        )

    def __neg__(self) -> "UniPoly":
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            return UniPoly(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly([])
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return UniPoly(out)

    __rmul__ = __mul__

    def derivative(self) -> "UniPoly":
        return UniPoly(k * c for k, c in enumerate(self.coeffs) if k > 0)

    def divmod(self, divisor: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        """Quotient and remainder by a divisor with leading coefficient +-1.

        Exact for integer coefficients.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lead = divisor.leading
        if lead not in (1, -1):
            raise ValueError("divisor must have leading coefficient 1 or -1")
        rem = list(self.coeffs)
        dq = divisor.degree
        quot = [0] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * lead
            quot[k - dq] = c
            if c:
                for j, d in enumerate(divisor.coeffs):
                    rem[k - dq + j] -= c * d
        return UniPoly(quot), UniPoly(rem[:dq])

    def taylor_shift(self, center) -> "UniPoly":
        """Coefficients of mu -> P(center + mu), evaluated in mpmath."""
        c = mpmath.mpmathify(center)
        b = [mpmath.mpmathify(x) for x in self.coeffs]
        n = len(b)
        # repeated synthetic division
        for i in range(n - 1):
            for k in range(n - 2, i - 1, -1):
                b[k] += c * b[k + 1]
        return UniPoly(b)

    # -- evaluation -----------------------------------------------------

    def complex_coeffs(self) -> np.ndarray:
        return np.array([complex(c) for c in self.coeffs], dtype=complex)

    def __call__(self, z):
        p, _ = self.eval_with_derivative(z)
        return p

    def eval_with_derivative(self, z) -> tuple[np.ndarray, np.ndarray]:
        """Horner evaluation of P and P' in double precision (vectorised)."""
        z = np.asarray(z, dtype=complex)
        cs = self.complex_coeffs()
        p = np.zeros_like(z)
        dp = np.zeros_like(z)
        for c in cs[::-1]:
            dp = dp * z + p
            p = p * z + c
        return p, dp

    def eval_mp(self, z) -> tuple:
        """P(z) and P'(z) in mpmath at the current working precision."""
        z = mpmath.mpmathify(z)
        p = mpmath.mpf(0)
        dp = mpmath.mpf(0)
        for c in reversed(self.coeffs):
            dp = dp * z + p
            p = p * z + mpmath.mpmathify(c)
        return p, dp

    def modulus_scale(self, z) -> np.ndarray:
        """sum_k |c_k| |z|^k, the natural scale for a residual at z."""
        a = np.abs(np.asarray(z, dtype=complex))
        out = np.zeros_like(a)
        for c in np.abs(self.complex_coeffs())[::-1]:
            out = out * a + c
        return out

    def root_radius_hint(self) -> float:
        """Fujiwara's bound 2 max |c_{n-k}/c_n|^{1/k} on the root moduli."""
        cs = self.complex_coeffs()
        n = self.degree
        lead = abs(cs[-1])
        return 2 * max(
            (abs(cs[n - k]) / lead) ** (1 / k) for k in range(1, n + 1)
        )

    @classmethod
    def from_roots(cls, roots: Sequence, leading=1) -> "UniPoly":
        out = cls([leading])
        for r in roots:
            out = out * cls([-r, 1])
        return out
