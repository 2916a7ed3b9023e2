"""Generator matrices, Farey trace polynomials and their deformation expansion.

The generators are

    X_p = [[zeta, 1], [0, 1/zeta]],   Y_q = [[xi, 0], [mu, 1/xi]],

with zeta = exp(i pi/p), xi = exp(i pi/q), and zeta = 1 (resp. xi = 1) for a
parabolic generator (order ``INF``). For a Farey fraction f the trace
polynomial is P_f(mu) = tr W_f(mu) + 2.

Three evaluation routes share the same word:

* exact Laurent arithmetic over the integers in (mu, zeta, xi), used for the
  deformation expansion and for integer coefficients;
* mpmath arithmetic at a chosen precision, for coefficients and polishing;
* vectorised double-precision evaluation of P and P' straight from the 2x2
  product, which stays well conditioned where the monomial basis does not.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Union

import mpmath
import numpy as np

from .farey import FareyFraction, farey_word, sign_sequence
from .polynomial import UniPoly

__all__ = [
    "INF",
    "Order",
    "check_order",
    "parse_order",
    "format_order",
    "sin_pi",
    "cos_pi",
    "rotation_unit",
    "generator_matrix",
    "word_matrix",
    "FareyPolynomial",
    "farey_trace_polynomial",
    "DeformationPoly",
    "deformation_expansion",
]

INF = math.inf
Order = Union[int, float]


# -- generator orders ---------------------------------------------------------


def check_order(n: Order) -> Order:
    """Validate an order: an integer >= 2 or ``INF`` for a parabolic."""
    if n == INF:
        return INF
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise TypeError(f"order must be an integer or INF, got {n!r}")
    if n < 2:
        raise ValueError(f"order must be at least 2, got {n}")
    return int(n)


def parse_order(text: str | int) -> Order:
    if isinstance(text, str) and text.strip().lower() in ("inf", "infinity", "oo"):
        return INF
    try:
        return check_order(int(text))
    except (TypeError, ValueError) as exc:
        raise ValueError(f"invalid generator order {text!r}") from exc


def format_order(n: Order) -> str:
    return "inf" if n == INF else str(n)


def sin_pi(n: Order) -> float:
    """sin(pi/n), read as 0 for a parabolic."""
    return 0.0 if n == INF else math.sin(math.pi / n)


def cos_pi(n: Order) -> float:
    return 1.0 if n == INF else math.cos(math.pi / n)


def rotation_unit(n: Order, *, mp: bool = False):
    """exp(i pi/n) as the diagonal entry of a generator (1 when parabolic)."""
    if n == INF:
        return mpmath.mpf(1) if mp else 1
    if mp:
        return mpmath.expjpi(mpmath.mpf(1) / n)
    if n == 2:
        return 1j
    return cmath.exp(1j * math.pi / n)


# -- matrices with polynomial entries ----------------------------------------

PolyMatrix = tuple[tuple[UniPoly, UniPoly], tuple[UniPoly, UniPoly]]


def generator_matrix(role: str, order: Order) -> PolyMatrix:
    """X_p or Y_q as a 2x2 matrix of polynomials in mu."""
    order = check_order(order)
    u = rotation_unit(order)
    inv = 1 if order == INF else (-1j if order == 2 else 1 / u)
    if role == "X":
        return ((UniPoly([u]), UniPoly([1])), (UniPoly([]), UniPoly([inv])))
    if role == "Y":
        return ((UniPoly([u]), UniPoly([])), (UniPoly([0, 1]), UniPoly([inv])))
    raise ValueError(f"role must be 'X' or 'Y', got {role!r}")


def _matmul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def _inverse(m: PolyMatrix) -> PolyMatrix:
    # adjugate; every generator has determinant 1
    return ((m[1][1], -m[0][1]), (-m[1][0], m[0][0]))


def word_matrix(f: FareyFraction, p: Order, q: Order) -> PolyMatrix:
    """The product W_f(mu) multiplied out left to right, letter by letter."""
    gens = {"X": generator_matrix("X", p), "Y": generator_matrix("Y", q)}
    out: PolyMatrix = ((UniPoly([1]), UniPoly([])), (UniPoly([]), UniPoly([1])))
    for letter, e in farey_word(f):
        g = gens[letter]
        out = _matmul(out, g if e == 1 else _inverse(g))
    return out


# -- the stepping product ----------------------------------------------------
#
# Right multiplication by X^{+-1} or Y^{+-1} only touches a few entries, so the
# word is accumulated one letter at a time on whatever representation of the
# entries is in use.


def _trace_coefficients_mp(signs, zeta, xi, prec_bits: int) -> list:
    with mpmath.workprec(prec_bits):
        zeta, xi = mpmath.mpmathify(zeta), mpmath.mpmathify(xi)
        iz, ix = 1 / zeta, 1 / xi
        zero = mpmath.mpf(0)

        def lin(u, cu, w, cw):
            n = max(len(u), len(w))
            return [
                (u[k] * cu if k < len(u) else zero) + (w[k] * cw if k < len(w) else zero)
                for k in range(n)
            ]

        a, b, c, d = [mpmath.mpf(1)], [zero], [zero], [mpmath.mpf(1)]
        for k in range(0, len(signs), 2):
            if signs[k] == 1:
                a, b, c, d = [x * zeta for x in a], lin(a, 1, b, iz), [x * zeta for x in c], lin(c, 1, d, iz)
            else:
                a, b, c, d = [x * iz for x in a], lin(a, -1, b, zeta), [x * iz for x in c], lin(c, -1, d, zeta)
            e = signs[k + 1]
            y0, y3 = (xi, ix) if e == 1 else (ix, xi)
            a, b, c, d = (
                lin(a, y0, [zero] + b, e),
                [x * y3 for x in b],
                lin(c, y0, [zero] + d, e),
                [x * y3 for x in d],
            )
        tr = lin(a, 1, d, 1)
        tr[0] += 2
        return tr


def _trace_coefficients_double(signs, zeta, xi) -> np.ndarray:
    n = len(signs) // 2 + 1
    iz, ix = 1 / zeta, 1 / xi
    a, b, c, d = (np.zeros(n, dtype=complex) for _ in range(4))
    a[0] = d[0] = 1
    for k in range(0, len(signs), 2):
        if signs[k] == 1:
            a, b, c, d = a * zeta, a + b * iz, c * zeta, c + d * iz
        else:
            a, b, c, d = a * iz, b * zeta - a, c * iz, d * zeta - c
        e = signs[k + 1]
        y0, y3 = (xi, ix) if e == 1 else (ix, xi)
        bs = np.concatenate(([0], b[:-1]))
        ds = np.concatenate(([0], d[:-1]))
        a, b, c, d = a * y0 + e * bs, b * y3, c * y0 + e * ds, d * y3
    tr = a + d
    tr[0] += 2
    return tr


def _trace_and_derivative(signs, zeta, xi, mu: np.ndarray):
    """Vectorised P(mu), P'(mu) via the 2x2 product and its mu-derivative."""
    iz, ix = 1 / zeta, 1 / xi
    one = np.ones_like(mu)
    a, b, c, d = one, 0 * mu, 0 * mu, one
    da = db = dc = dd = 0 * mu
    for k in range(0, len(signs), 2):
        if signs[k] == 1:
            x0, x1, x3 = zeta, 1, iz
        else:
            x0, x1, x3 = iz, -1, zeta
        a, b, c, d = a * x0, a * x1 + b * x3, c * x0, c * x1 + d * x3
        da, db, dc, dd = da * x0, da * x1 + db * x3, dc * x0, dc * x1 + dd * x3
        e = signs[k + 1]
        y0, y3 = (xi, ix) if e == 1 else (ix, xi)
        em = e * mu
        da, db, dc, dd = da * y0 + db * em + e * b, db * y3, dc * y0 + dd * em + e * d, dd * y3
        a, b, c, d = a * y0 + b * em, b * y3, c * y0 + d * em, d * y3
    return a + d + 2, da + dd


def _trace_and_derivative_mp(signs, zeta, xi, mu):
    iz, ix = 1 / zeta, 1 / xi
    a, b, c, d = mpmath.mpf(1), mpmath.mpf(0), mpmath.mpf(0), mpmath.mpf(1)
    da = db = dc = dd = mpmath.mpf(0)
    for k in range(0, len(signs), 2):
        if signs[k] == 1:
            x0, x1, x3 = zeta, 1, iz
        else:
            x0, x1, x3 = iz, -1, zeta
        a, b, c, d = a * x0, a * x1 + b * x3, c * x0, c * x1 + d * x3
        da, db, dc, dd = da * x0, da * x1 + db * x3, dc * x0, dc * x1 + dd * x3
        e = signs[k + 1]
        y0, y3 = (xi, ix) if e == 1 else (ix, xi)
        em = e * mu
        da, db, dc, dd = da * y0 + db * em + e * b, db * y3, dc * y0 + dd * em + e * d, dd * y3
        a, b, c, d = a * y0 + b * em, b * y3, c * y0 + d * em, d * y3
    return a + d + 2, da + dd


class FareyPolynomial(UniPoly):
    """P_f(mu) = tr W_f(mu) + 2 for generators of orders p and q.

    Coefficients are computed lazily: exact integers when both orders are
    in {2, INF} (the imaginary units cancel), otherwise mpmath complex
    numbers at ``dps`` significant digits. Evaluation goes through the word
    itself rather than the coefficients.
    """

    def __init__(self, fraction: FareyFraction, p: Order, q: Order, *, dps: int | None = None) -> None:
        self.fraction = fraction
        self.p = check_order(p)
        self.q = check_order(q)
        self.signs = sign_sequence(fraction)
        self.dps = dps if dps is not None else 30 + fraction.s
        self._zeta = rotation_unit(self.p)
        self._xi = rotation_unit(self.q)

    def __repr__(self) -> str:
        return f"FareyPolynomial({self.fraction}, p={format_order(self.p)}, q={format_order(self.q)})"

    @property
    def degree(self) -> int:
        return self.fraction.s

    def is_zero(self) -> bool:
        # the mu^s coefficient is a product of unit-modulus entries
        return False

    @cached_property
    def _coeffs(self) -> tuple:
        s = self.fraction.s
        integral = self.p in (2, INF) and self.q in (2, INF)
        # enough bits to hold the integer coefficients exactly
        bits = max(int(self.dps * 3.33), 64 + 4 * s) if integral else int(self.dps * 3.33) + 16
        tr = _trace_coefficients_mp(
            self.signs, rotation_unit(self.p, mp=True), rotation_unit(self.q, mp=True), bits
        )
        if integral:
            out = []
            for c in tr:
                n = int(mpmath.nint(mpmath.re(c)))
                if abs(mpmath.mpc(c) - n) > mpmath.mpf(2) ** (-bits // 2):
                    raise ArithmeticError("integral trace polynomial did not round cleanly")
                out.append(n)
        else:
            out = list(tr)
        while out and out[-1] == 0:
            out.pop()
        return tuple(out)

    def root_radius_hint(self) -> float:
        return 3.0 + 2 * sin_pi(self.p) * sin_pi(self.q)

    def eval_with_derivative(self, z) -> tuple[np.ndarray, np.ndarray]:
        z = np.asarray(z, dtype=complex)
        return _trace_and_derivative(self.signs, self._zeta, self._xi, z)

    def eval_mp(self, z) -> tuple:
        zeta = rotation_unit(self.p, mp=True)
        xi = rotation_unit(self.q, mp=True)
        return _trace_and_derivative_mp(self.signs, zeta, xi, mpmath.mpmathify(z))

    @cached_property
    def double_coeffs(self) -> np.ndarray:
        """Coefficients accumulated in double precision (cheap, approximate)."""
        return _trace_coefficients_double(self.signs, self._zeta, self._xi)

    def modulus_scale(self, z) -> np.ndarray:
        a = np.abs(np.asarray(z, dtype=complex))
        out = np.zeros_like(a)
        for c in np.abs(self.double_coeffs)[::-1]:
            out = out * a + c
        return out

    def initial_guesses(self) -> np.ndarray:
        """Companion-matrix roots of the double coefficients, a starting set for Aberth."""
        return np.roots(self.double_coeffs[::-1])


def farey_trace_polynomial(f: FareyFraction, p: Order = INF, q: Order = INF, *, dps: int | None = None) -> FareyPolynomial:
    """The Farey polynomial tr W_f + 2 for generators of orders p and q."""
    return FareyPolynomial(f, p, q, dps=dps)


# -- deformation expansion ----------------------------------------------------


@dataclass(frozen=True)
class DeformationPoly:
    """zeta^N xi^N P_f expanded in u = zeta - 1 and v = xi - 1.

    ``terms`` maps (i, j) to the integer polynomial a_ij(mu) multiplying
    u^i v^j. Only nonzero a_ij are stored.
    """

    fraction: FareyFraction
    clearing_exponent: int
    terms: dict[tuple[int, int], UniPoly] = field(repr=False)

    @property
    def a00(self) -> UniPoly:
        return self.terms.get((0, 0), UniPoly([]))

    @property
    def max_total_degree(self) -> int:
        return max(i + j for i, j in self.terms)

    @property
    def max_mu_degree(self) -> int:
        return max(a.degree for a in self.terms.values())

    def evaluate(self, mu, u, v) -> complex:
        """Numeric value of sum a_ij(mu) u^i v^j."""
        total = 0j
        for (i, j), a in self.terms.items():
            total += complex(a(mu)) * u**i * v**j
        return total

    def evaluate_mp(self, mu, u, v):
        mu, u, v = (mpmath.mpmathify(x) for x in (mu, u, v))
        total = mpmath.mpf(0)
        for (i, j), a in self.terms.items():
            total += a.eval_mp(mu)[0] * u**i * v**j
        return total


def _laurent_trace(signs, s: int) -> tuple[np.ndarray, int]:
    """tr W + 2 as an integer array indexed [mu, zeta + off, xi + off]."""
    off = s
    width = 2 * s + 1
    shape = (s + 1, width, width)

    def zero():
        return np.zeros(shape, dtype=object)

    def shift(arr, axis, k):
        out = zero()
        src = [slice(None)] * 3
        dst = [slice(None)] * 3
        if k > 0:
            src[axis], dst[axis] = slice(None, -k), slice(k, None)
        else:
            src[axis], dst[axis] = slice(-k, None), slice(None, k)
        out[tuple(dst)] = arr[tuple(src)]
        return out

    a, b, c, d = zero(), zero(), zero(), zero()
    a[0, off, off] = 1
    d[0, off, off] = 1
    for k in range(0, len(signs), 2):
        if signs[k] == 1:
            a, b, c, d = shift(a, 1, 1), a + shift(b, 1, -1), shift(c, 1, 1), c + shift(d, 1, -1)
        else:
            a, b, c, d = shift(a, 1, -1), shift(b, 1, 1) - a, shift(c, 1, -1), shift(d, 1, 1) - c
        e = signs[k + 1]
        a, b, c, d = (
            shift(a, 2, e) + e * shift(b, 0, 1),
            shift(b, 2, -e),
            shift(c, 2, e) + e * shift(d, 0, 1),
            shift(d, 2, -e),
        )
    tr = a + d
    tr[0, off, off] += 2
    return tr, off


def deformation_expansion(f: FareyFraction) -> DeformationPoly:
    """Exact integer expansion of zeta^N xi^N P_f in (mu, zeta - 1, xi - 1).

    N is the smallest exponent clearing every negative power of zeta and xi.
    The constant term a_00 is the parabolic polynomial P_f^{INF,INF}.
    """
    tr, off = _laurent_trace(sign_sequence(f), f.s)
    nz = np.argwhere(tr != 0)
    lowest = min(nz[:, 1].min(), nz[:, 2].min()) - off
    n_clear = max(0, -int(lowest))
    lo = off - n_clear
    hi = int(max(nz[:, 1].max(), nz[:, 2].max())) + 1
    block = tr[:, lo:hi, lo:hi]  # exponents 0 .. hi-lo-1 after clearing
    width = hi - lo
    binom = np.array([[comb(a, i) for i in range(width)] for a in range(width)], dtype=object)
    expanded = np.zeros_like(block)
    for m in range(block.shape[0]):
        expanded[m] = binom.T.dot(block[m]).dot(binom)
    terms: dict[tuple[int, int], UniPoly] = {}
    for i in range(width):
        for j in range(width):
            poly = UniPoly(int(x) for x in expanded[:, i, j])
            if not poly.is_zero():
                terms[(i, j)] = poly
    return DeformationPoly(f, n_clear, terms)
