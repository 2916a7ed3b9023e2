"""Search over Farey polynomials for upper bounds on delta_inf(p, q).

For a root mu of P_f^{p,q} the commutator gamma = mu (mu - 4ab), with
a = sin(pi/p) and b = sin(pi/q), lies on the ellipse

    |gamma| + |gamma + 4 a^2 b^2| = c,    cosh(2 delta) = c / (4 a^2 b^2).

Taking the root on the largest such ellipse and minimising over fractions
gives the bound. On the diagonal the index-two relation
delta_inf(p, p) = 2 delta_inf(2, p) offers a second route, and the better of
the two is kept.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Iterable

import mpmath

from .farey import FareyFraction, enumerate_fractions
from .geometry import delta_one
from .roots import find_roots, select_max
from .symalg import INF, Order, check_order, farey_trace_polynomial, format_order, parse_order, sin_pi

__all__ = [
    "DEFAULT_BUDGET",
    "SMALL_ORDER_BUDGET",
    "DEFAULT_ORDERING",
    "default_budget",
    "ellipse_functional",
    "bound_from_functional",
    "functional_from_bound",
    "gap_from_constant",
    "BoundRecord",
    "extremal_root",
    "bound_for_fraction",
    "candidate_fractions",
    "best_bound",
    "RileyAsymptotic",
    "riley_asymptotic",
    "spectral_gap",
    "table1",
    "table2",
    "infinite_row",
]

DEFAULT_BUDGET = 125
SMALL_ORDER_BUDGET = 257
DEFAULT_ORDERING = "stern-brocot"
# relative tolerance under which two ellipse values count as equal
TIE_TOL = 1e-12


def default_budget(p: Order, q: Order) -> int:
    """257 fractions when an order is 2 or parabolic, else 125.

    The diagonal also gets 257 since its best route runs through (2, p).
    """
    if INF in (p, q) or 2 in (p, q) or p == q:
        return SMALL_ORDER_BUDGET
    return DEFAULT_BUDGET


def _scale(p: Order, q: Order) -> float:
    """4 sin^2(pi/p) sin^2(pi/q), zero when either generator is parabolic."""
    return 4 * (sin_pi(p) * sin_pi(q)) ** 2


def ellipse_functional(mu, p: Order, q: Order) -> float:
    """|mu - 2ab|^2 + |mu| |mu - 4ab| = |gamma| + |gamma + 4a^2b^2|.

    Reduces to 2|mu|^2 when a generator is parabolic.
    """
    ab = sin_pi(check_order(p)) * sin_pi(check_order(q))
    mu = complex(mu)
    return abs(mu - 2 * ab) ** 2 + abs(mu) * abs(mu - 4 * ab)


def bound_from_functional(c: float, p: Order, q: Order) -> float | None:
    """0.5 arccosh(c / (4a^2b^2)); ``None`` for a parabolic generator."""
    scale = _scale(p, q)
    if scale == 0:
        return None
    return 0.5 * math.acosh(max(c / scale, 1.0))


def functional_from_bound(delta: float, p: Order, q: Order) -> float:
    return _scale(p, q) * math.cosh(2 * delta)


def gap_from_constant(p: int, q: int, c: float) -> float:
    """Gap between the bound from an ellipse constant c and delta_1(p, q)."""
    return bound_from_functional(c, p, q) - delta_one(p, q)


@dataclass(frozen=True)
class BoundRecord:
    """One table row: the extremal root of one fraction and what it implies.

    ``route`` is ``"direct"`` when the root comes from P_f^{p,q} itself and
    ``"index-two"`` when a diagonal value is doubled from the (2, p) search.
    """

    p: Order
    q: Order
    fraction: FareyFraction
    mu0: complex
    ellipse_value: float
    delta_inf_bound: float | None
    delta_one: float | None
    gap: float | None
    route: str = "direct"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["p"], d["q"] = format_order(self.p), format_order(self.q)
        d["fraction"] = str(self.fraction)
        d["mu0"] = [self.mu0.real, self.mu0.imag]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "BoundRecord":
        return cls(
            parse_order(d["p"]),
            parse_order(d["q"]),
            FareyFraction.parse(d["fraction"]),
            complex(*d["mu0"]),
            d["ellipse_value"],
            d["delta_inf_bound"],
            d["delta_one"],
            d["gap"],
            d.get("route", "direct"),
        )

    def recomputed(self) -> "BoundRecord":
        """Rebuild the derived fields from (p, q, fraction, mu0)."""
        if self.route == "index-two":
            c2 = ellipse_functional(self.mu0, 2, self.p)
            return _doubled_record(self.fraction, self.p, self.mu0, c2)
        return _record(self.fraction, self.p, self.q, self.mu0)


def _delta_one_or_none(p: Order, q: Order) -> float | None:
    if INF in (p, q) or p == q == 2:
        return None
    return delta_one(p, q)


def _record(f: FareyFraction, p: Order, q: Order, mu0: complex) -> BoundRecord:
    c = ellipse_functional(mu0, p, q)
    bound = bound_from_functional(c, p, q)
    d1 = _delta_one_or_none(p, q)
    gap = bound - d1 if bound is not None and d1 is not None else None
    return BoundRecord(p, q, f, mu0, c, bound, d1, gap)


def _doubled_record(f: FareyFraction, p: int, mu0: complex, c2: float) -> BoundRecord:
    bound = 2 * bound_from_functional(c2, 2, p)
    c = functional_from_bound(bound, p, p)
    d1 = delta_one(p, p)
    return BoundRecord(p, p, f, mu0, c, bound, d1, bound - d1, "index-two")


def extremal_root(f: FareyFraction, p: Order, q: Order, *, polish: bool = True) -> tuple[complex, float]:
    """The root of P_f^{p,q} on the largest ellipse and its ellipse value.

    Ties go to the larger modulus, then the smaller (Re, Im).
    """
    P = farey_trace_polynomial(f, p, q)
    rs = find_roots(P, polish=False)
    mu0 = select_max(rs, lambda z: ellipse_functional(z, p, q))
    if polish:
        with mpmath.workdps(40):
            z = mpmath.mpc(mu0)
            for _ in range(3):
                val, der = P.eval_mp(z)
                z -= val / der
            mu0 = complex(z)
    return mu0, ellipse_functional(mu0, p, q)


def _direct(f: FareyFraction, p: Order, q: Order, polish: bool = True) -> BoundRecord:
    mu0, _ = extremal_root(f, p, q, polish=polish)
    return _record(f, p, q, mu0)


def _index_two(f: FareyFraction, p: int, polish: bool = True) -> BoundRecord:
    mu0, c2 = extremal_root(f, 2, p, polish=polish)
    return _doubled_record(f, p, mu0, c2)


def _on_diagonal(p: Order, q: Order) -> bool:
    return p == q and p not in (2, INF)


def _better(a: BoundRecord, b: BoundRecord) -> BoundRecord:
    return b if b.ellipse_value < a.ellipse_value * (1 - TIE_TOL) else a


def bound_for_fraction(f: FareyFraction, p: Order, q: Order) -> BoundRecord:
    """Bound from a single Farey fraction.

    On the diagonal p = q the value doubled from the (2, p) polynomial is
    returned unless the direct value is strictly smaller.
    """
    p, q = check_order(p), check_order(q)
    if p == q == 2:
        raise ValueError("(2, 2) generates no free group with a finite bound")
    if _on_diagonal(p, q):
        return _better(_index_two(f, p), _direct(f, p, q))
    return _direct(f, p, q)


def candidate_fractions(budget: int, ordering: str = DEFAULT_ORDERING) -> list[FareyFraction]:
    """Budgeted fractions with each mirror pair r/s, (s-r)/s reduced to r/s > 1/2.

    Mirror fractions give identical ellipse values, so only one of each pair
    is evaluated. The list keeps first-appearance order.
    """
    seen: dict[FareyFraction, None] = {}
    for f in enumerate_fractions(budget, ordering):
        rep = f if 2 * f.r >= f.s else f.mirror()
        seen.setdefault(rep, None)
    return list(seen)


def _search(job: tuple, polish: bool = False) -> BoundRecord:
    # double-precision roots are good to ~1e-15, well inside TIE_TOL
    f, p, q, route = job
    return _index_two(f, p, polish) if route == "index-two" else _direct(f, p, q, polish)


def _minimum(records: Iterable[BoundRecord]) -> BoundRecord:
    best = None
    for rec in records:
        best = rec if best is None else _better(best, rec)
    if best is None:
        raise ValueError("budget must be at least 1")
    return best


def best_bound(
    p: Order,
    q: Order,
    budget: int | None = None,
    *,
    ordering: str = DEFAULT_ORDERING,
    workers: int = 1,
) -> BoundRecord:
    """The smallest bound over the first ``budget`` fractions.

    Ties keep the earlier fraction in enumeration order. ``workers > 1``
    spreads the polynomials over processes; the reduction is sequential, so
    the answer does not depend on scheduling.
    """
    p, q = check_order(p), check_order(q)
    if p == q == 2:
        raise ValueError("(2, 2) generates no free group with a finite bound")
    budget = default_budget(p, q) if budget is None else budget
    if budget < 1:
        raise ValueError("budget must be at least 1")
    fractions = candidate_fractions(budget, ordering)
    jobs = [(f, p, q, "direct") for f in fractions]
    if _on_diagonal(p, q):
        # the (2, p) route goes first so it keeps ties with the direct route
        jobs = [(f, p, q, "index-two") for f in fractions] + jobs
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_search, jobs, chunksize=8))
    else:
        records = [_search(job) for job in jobs]
    best = _minimum(records)
    return _search((best.fraction, p, q, best.route), polish=True)


@dataclass(frozen=True)
class RileyAsymptotic:
    """Extremal (INF, 2) root giving cosh delta_inf(2, p) ~ constant / (2 sin(pi/p))."""

    fraction: FareyFraction
    root: complex
    modulus: float
    functional: float

    @property
    def cosh_constant(self) -> float:
        return math.sqrt(self.functional / 2)

    def to_dict(self) -> dict:
        return {
            "fraction": str(self.fraction),
            "root": [self.root.real, self.root.imag],
            "modulus": self.modulus,
            "functional": self.functional,
            "cosh_constant": self.cosh_constant,
        }


def riley_asymptotic(budget: int = SMALL_ORDER_BUDGET, *, ordering: str = DEFAULT_ORDERING) -> RileyAsymptotic:
    """Parabolic-and-order-two search minimising 2|z|^2 over the budget."""
    rec = best_bound(INF, 2, budget, ordering=ordering)
    z = rec.mu0
    return RileyAsymptotic(rec.fraction, z, abs(z), rec.ellipse_value)


def spectral_gap(p: int, q: int, budget: int | None = None, *, ordering: str = DEFAULT_ORDERING) -> float:
    """best_bound(p, q).delta_inf_bound - delta_1(p, q)."""
    if INF in (p, q):
        raise ValueError("the spectral gap needs finite orders")
    rec = best_bound(p, q, budget, ordering=ordering)
    return rec.delta_inf_bound - delta_one(p, q)


TABLE1_ORDERS = (3, 4, 5, 6, 7, 8, 9, 10, 20, 100)
GRID_ROWS = (3, 4, 5, 6, 7, 8, 9, 10)
GRID_COLUMNS = (3, 4, 5, 6, 7, 8, 9, 10, 20, 100)
INFINITE_COLUMNS = (3, 4, 5, 6, 7, 20, 100)


def table1(budget: int | None = None, *, ordering: str = DEFAULT_ORDERING, orders=TABLE1_ORDERS) -> list[BoundRecord]:
    """Bounds for delta_inf(2, p)."""
    return [best_bound(2, p, budget, ordering=ordering) for p in orders]


def table2(
    budget: int | None = None,
    *,
    ordering: str = DEFAULT_ORDERING,
    rows=GRID_ROWS,
    columns=GRID_COLUMNS,
) -> dict[tuple, BoundRecord]:
    """c(p, q) and its fraction over the upper triangle p <= q."""
    return {
        (p, q): best_bound(p, q, budget, ordering=ordering)
        for p in rows
        for q in columns
        if p <= q
    }


def infinite_row(budget: int | None = None, *, ordering: str = DEFAULT_ORDERING, columns=INFINITE_COLUMNS) -> dict[tuple, BoundRecord]:
    """c(INF, q): one parabolic generator, ellipse value 2|mu|^2."""
    return {(INF, q): best_bound(INF, q, budget, ordering=ordering) for q in columns}
