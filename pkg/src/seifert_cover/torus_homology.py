"""Integer homology of the boundary torus of a fibered solid torus.

Classes are written in a (cross section, fiber) basis ``(q, h)``.  A solid
torus with Seifert invariant ``(alpha, beta)`` has meridian ``alpha*q + beta*h``.
This module also holds the integer arithmetic that decides when a k-fold
fiber-preserving branched cover between two such solid tori exists.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional


class InvalidInvariantError(ValueError):
    """Raised when integers do not form a valid Seifert invariant."""


@dataclass(frozen=True, order=True)
class SeifertInvariant:
    alpha: int
    beta: int

    def __post_init__(self):
        if isinstance(self.alpha, bool) or not isinstance(self.alpha, int):
            raise InvalidInvariantError(f"alpha must be an integer, got {self.alpha!r}")
        if isinstance(self.beta, bool) or not isinstance(self.beta, int):
            raise InvalidInvariantError(f"beta must be an integer, got {self.beta!r}")
        if self.alpha < 1:
            raise InvalidInvariantError(f"alpha must be >= 1, got alpha={self.alpha}")
        if gcd(self.alpha, self.beta) != 1:
            raise InvalidInvariantError(
                f"gcd(alpha, beta) must be 1, got gcd({self.alpha}, {self.beta}) = "
                f"{gcd(self.alpha, self.beta)}"
            )

    def to_json(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta}

    @classmethod
    def from_json(cls, data) -> SeifertInvariant:
        if not isinstance(data, dict) or set(data) != {"alpha", "beta"}:
            raise InvalidInvariantError(f"expected {{'alpha', 'beta'}} object, got {data!r}")
        return cls(data["alpha"], data["beta"])

    @classmethod
    def parse(cls, text: str) -> SeifertInvariant:
        """Parse the ``"A,B"`` flag syntax."""
        parts = text.split(",")
        if len(parts) != 2:
            raise InvalidInvariantError(f"expected 'alpha,beta', got {text!r}")
        try:
            alpha, beta = (int(p.strip()) for p in parts)
        except ValueError:
            raise InvalidInvariantError(f"expected two integers, got {text!r}") from None
        return cls(alpha, beta)


@dataclass(frozen=True)
class TorusClass:
    q_coeff: int
    h_coeff: int

    def scale(self, n: int) -> TorusClass:
        return TorusClass(n * self.q_coeff, n * self.h_coeff)

    def is_primitive(self) -> bool:
        return gcd(self.q_coeff, self.h_coeff) == 1

    def to_json(self) -> dict:
        return {"q": self.q_coeff, "h": self.h_coeff}


@dataclass(frozen=True)
class BoundaryMapMatrix:
    """2x2 integer matrix acting on ``(q, h)`` coordinate columns."""

    entries: tuple[tuple[int, int], tuple[int, int]]

    @classmethod
    def diagonal(cls, a: int, d: int) -> BoundaryMapMatrix:
        return cls(((a, 0), (0, d)))

    def apply(self, c: TorusClass) -> TorusClass:
        (a, b), (c_, d) = self.entries
        return TorusClass(a * c.q_coeff + b * c.h_coeff, c_ * c.q_coeff + d * c.h_coeff)


@dataclass(frozen=True)
class NecessityWitness:
    s: int


@dataclass(frozen=True)
class CoverDecision:
    exists: bool
    section_shift: Optional[int] = None
    adjusted_invariant: Optional[SeifertInvariant] = None
    scale_s: Optional[int] = None

    def to_json(self) -> dict:
        return {
            "exists": self.exists,
            "section_shift": self.section_shift,
            "adjusted_invariant": (
                None if self.adjusted_invariant is None else self.adjusted_invariant.to_json()
            ),
            "scale_s": self.scale_s,
        }


def meridian_class(inv: SeifertInvariant) -> TorusClass:
    return TorusClass(inv.alpha, inv.beta)


def change_section(inv: SeifertInvariant, n: int) -> SeifertInvariant:
    """Invariant after replacing the cross section ``q`` by ``q + n*h``."""
    return SeifertInvariant(inv.alpha, inv.beta - n * inv.alpha)


def boundary_map(k: int) -> BoundaryMapMatrix:
    """Homology action of the boundary covering: ``q1 -> k*q2``, ``h1 -> h2``."""
    return BoundaryMapMatrix.diagonal(k, 1)


def boundary_pushforward(c: TorusClass, k: int) -> TorusClass:
    return boundary_map(k).apply(c)


def boundary_degree(m: BoundaryMapMatrix) -> int:
    (a, b), (c, d) = m.entries
    return a * d - b * c


def ratio_condition(inv1: SeifertInvariant, inv2: SeifertInvariant, k: int) -> bool:
    """``beta1/alpha1 == k*beta2/alpha2``, compared cross-multiplied."""
    return inv1.beta * inv2.alpha == k * inv2.beta * inv1.alpha


def violated_identity(inv1: SeifertInvariant, inv2: SeifertInvariant, k: int) -> str:
    lhs = inv1.beta * inv2.alpha
    rhs = k * inv2.beta * inv1.alpha
    return (
        f"beta1*alpha2 = {inv1.beta}*{inv2.alpha} = {lhs} != "
        f"k*beta2*alpha1 = {k}*{inv2.beta}*{inv1.alpha} = {rhs}"
    )


def necessity_scale(
    inv1: SeifertInvariant, inv2: SeifertInvariant, k: int
) -> Optional[NecessityWitness]:
    """The nonzero ``s`` with ``alpha1*k = s*alpha2`` and ``beta1 = s*beta2``, if any."""
    if inv2.beta == 0:
        # alpha2 == 1 here, so s is forced to alpha1*k
        if inv1.beta != 0:
            return None
        s = inv1.alpha * k
    else:
        s, rem = divmod(inv1.beta, inv2.beta)
        if rem:
            return None
    if s == 0 or inv1.alpha * k != s * inv2.alpha:
        return None
    return NecessityWitness(s)


def solve_source_beta(alpha1: int, inv2: SeifertInvariant, k: int) -> Optional[int]:
    beta1, rem = divmod(k * inv2.beta * alpha1, inv2.alpha)
    if rem or gcd(alpha1, beta1) != 1:
        return None
    return beta1


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def enumerate_sources(inv2: SeifertInvariant, k: int) -> list[SeifertInvariant]:
    """All source invariants admitting a k-fold cover onto ``inv2``, by ascending alpha1.

    A source must have ``alpha1 | alpha2``, so only divisors are scanned.
    """
    if inv2.beta == 0:
        return [SeifertInvariant(1, 0)]
    sources = []
    for alpha1 in _divisors(inv2.alpha):
        beta1 = solve_source_beta(alpha1, inv2, k)
        if beta1 is not None:
            sources.append(SeifertInvariant(alpha1, beta1))
    return sources


def decide_cover(
    inv1: SeifertInvariant, inv2: SeifertInvariant, k: int, search_sections: bool = False
) -> CoverDecision:
    """Decide existence of the cover, optionally allowing a change of source section.

    Only one section shift can work, since the target beta1 is pinned to
    ``k*beta2*alpha1/alpha2``; it is computed directly.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got k={k}")
    if not search_sections:
        if not ratio_condition(inv1, inv2, k):
            return CoverDecision(False)
        return CoverDecision(True, 0, inv1, necessity_scale(inv1, inv2, k).s)

    target, rem = divmod(k * inv2.beta * inv1.alpha, inv2.alpha)
    if rem:
        return CoverDecision(False)
    n, rem = divmod(inv1.beta - target, inv1.alpha)
    if rem:
        return CoverDecision(False)
    adjusted = change_section(inv1, n)
    witness = necessity_scale(adjusted, inv2, k)
    assert witness is not None
    return CoverDecision(True, n, adjusted, witness.s)
