"""Farey fractions, their sign sequences and the alternating words they define.

A reduced fraction r/s in (0, 1) determines a word of length 2s in two
generators,

    W = X^{e_1} Y^{e_2} X^{e_3} ... Y^{e_{2s}},   e_i = (-1)^floor((i-1) r / s).

Two enumeration orders are provided. ``"denominator"`` lists fractions by
denominator then numerator. ``"stern-brocot"`` lists them by depth in the
Stern-Brocot tree (the sum of the continued fraction partial quotients),
left to right within each depth.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator

__all__ = [
    "FareyFraction",
    "ORDERINGS",
    "enumerate_fractions",
    "iter_fractions",
    "sign_sequence",
    "farey_word",
    "format_word",
    "stern_brocot_depth",
]

ORDERINGS = ("denominator", "stern-brocot")


@dataclass(frozen=True)
class FareyFraction:
    """A reduced fraction r/s with 0 < r < s."""

    r: int
    s: int

    def __post_init__(self) -> None:
        if not (isinstance(self.r, int) and isinstance(self.s, int)):
            raise TypeError("numerator and denominator must be integers")
        if not 0 < self.r < self.s:
            raise ValueError(f"{self.r}/{self.s} does not lie strictly inside (0, 1)")
        if gcd(self.r, self.s) != 1:
            raise ValueError(f"{self.r}/{self.s} is not reduced")

    @classmethod
    def parse(cls, text: str) -> "FareyFraction":
        try:
            num, den = text.strip().split("/")
            return cls(int(num), int(den))
        except (ValueError, TypeError) as exc:
            raise ValueError(f"cannot parse Farey fraction {text!r}") from exc

    def __str__(self) -> str:
        return f"{self.r}/{self.s}"

    @property
    def value(self) -> Fraction:
        return Fraction(self.r, self.s)

    @property
    def depth(self) -> int:
        return stern_brocot_depth(self.r, self.s)

    def mirror(self) -> "FareyFraction":
        """The fraction (s - r)/s; its word gives the same ellipse data."""
        return FareyFraction(self.s - self.r, self.s)


def stern_brocot_depth(r: int, s: int) -> int:
    """Depth of r/s in the Stern-Brocot tree, with 1/2 at depth 1.

    >>> stern_brocot_depth(1, 2), stern_brocot_depth(29, 41)
    (1, 8)
    """
    total = 0
    a, b = s, r
    while b:
        total += a // b
        a, b = b, a % b
    return total - 1


def _by_denominator() -> Iterator[FareyFraction]:
    for s in itertools.count(2):
        for r in range(1, s):
            if gcd(r, s) == 1:
                yield FareyFraction(r, s)


def _stern_brocot_level(depth: int) -> list[FareyFraction]:
    # mediants between consecutive members of the previous level's full row
    row = [(0, 1), (1, 1)]
    for _ in range(depth):
        nxt = [row[0]]
        for (a, b), (c, d) in zip(row, row[1:]):
            nxt.append((a + c, b + d))
            nxt.append((c, d))
        row = nxt
    # new nodes sit at odd positions, already in increasing order
    return [FareyFraction(a, b) for a, b in row[1::2]]


def _by_stern_brocot() -> Iterator[FareyFraction]:
    for depth in itertools.count(1):
        yield from _stern_brocot_level(depth)


def iter_fractions(order: str = "denominator") -> Iterator[FareyFraction]:
    """Endless iterator over reduced fractions in (0, 1) in the given order."""
    if order == "denominator":
        return _by_denominator()
    if order == "stern-brocot":
        return _by_stern_brocot()
    raise ValueError(f"unknown ordering {order!r}; expected one of {ORDERINGS}")


def enumerate_fractions(count: int, order: str = "denominator") -> list[FareyFraction]:
    """The first ``count`` fractions in (0, 1).

    >>> [str(f) for f in enumerate_fractions(5)]
    ['1/2', '1/3', '2/3', '1/4', '3/4']
    """
    if count < 0:
        raise ValueError("count must be non-negative")
    return list(itertools.islice(iter_fractions(order), count))


def sign_sequence(f: FareyFraction) -> tuple[int, ...]:
    """Exponents e_1..e_{2s} of the alternating word attached to ``f``."""
    r, s = f.r, f.s
    return tuple(-1 if ((i * r) // s) % 2 else 1 for i in range(2 * s))


def farey_word(f: FareyFraction) -> tuple[tuple[str, int], ...]:
    """Letters (generator, exponent) of the word, starting with X."""
    return tuple(("X" if i % 2 == 0 else "Y", e) for i, e in enumerate(sign_sequence(f)))


def format_word(word: tuple[tuple[str, int], ...]) -> str:
    """Render a word as e.g. ``X Y X^-1 Y^-1``."""
    return " ".join(g if e == 1 else f"{g}^{e}" for g, e in word)
