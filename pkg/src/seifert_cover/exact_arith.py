"""Exact rational arithmetic, angles mod 1 and Bezout coefficients.

Rationals are ``gmpy2.mpq`` values, which are always stored reduced with a
positive denominator.  Angles are rationals reduced into ``[0, 1)``;
``AngleMod1`` is only an alias that documents intent.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Union

from gmpy2 import mpq, mpz

if TYPE_CHECKING:
    from .torus_homology import SeifertInvariant

Rational = type(mpq())
AngleMod1 = Rational
RationalLike = Union[int, Fraction, Rational, str]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``g = gcd(|a|, |b|) >= 0`` and ``a*x + b*y = g``.

    ``ext_gcd(0, 0)`` is ``(0, 0, 0)`` by convention.
    """
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    if old_r == 0:
        return 0, 0, 0
    return old_r, old_x, old_y


@dataclass(frozen=True)
class BezoutPair:
    """Integers ``(alpha', beta')`` with ``alpha*beta' - alpha'*beta = 1``."""

    alpha_prime: int
    beta_prime: int

    def satisfies(self, alpha: int, beta: int) -> bool:
        return alpha * self.beta_prime - self.alpha_prime * beta == 1

    def to_json(self) -> dict:
        return {"alpha_prime": self.alpha_prime, "beta_prime": self.beta_prime}


def bezout(inv: SeifertInvariant) -> BezoutPair:
    """Normalized Bezout pair of a Seifert invariant, with ``0 <= alpha' < alpha``.

    >>> from seifert_cover.torus_homology import SeifertInvariant
    >>> bezout(SeifertInvariant(5, 3))
    BezoutPair(alpha_prime=3, beta_prime=2)
    """
    alpha, beta = inv.alpha, inv.beta
    g, x, y = ext_gcd(alpha, beta)
    if g != 1:
        raise ValueError(f"gcd({alpha}, {beta}) = {g}, expected 1")
    # alpha*x + beta*y = 1, so alpha' = -y works before normalization
    alpha_prime = (-y) % alpha
    beta_prime, rem = divmod(1 + alpha_prime * beta, alpha)
    assert rem == 0
    return BezoutPair(alpha_prime, beta_prime)


def reduce_mod1(x: RationalLike) -> AngleMod1:
    """Representative of ``x`` modulo 1 in ``[0, 1)``."""
    return to_rational(x) % 1


def to_rational(x: RationalLike) -> Rational:
    if isinstance(x, Rational):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, (int, Fraction, type(mpz()))):
        return mpq(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def parse_rational(text: str) -> Rational:
    """Parse ``"p/q"`` or ``"p"``; non-reduced input is reduced, ``q = 0`` rejected.

    Decimal and exponent notation are refused so that nothing inexact slips in.
    """
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not a rational of the form p/q: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return mpq(num, den)


def format_rational(x: Rational) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
