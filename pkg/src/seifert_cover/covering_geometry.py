"""The explicit branched covering between two fibered solid tori.

A fibered solid torus with invariant ``(alpha, beta)`` is the quotient of
``D^2 x R`` by the screw motion

    (r, theta, t) -> (r, theta - alpha'/alpha, t + 1)

where ``alpha'`` comes from the normalized Bezout pair.  Points carry exact
rational coordinates, ``theta`` being the angle in turns (mod 1), so every
identity below is checked by exact comparison.

The lifted map is ``(r, theta, t) -> (r, theta_mult*theta, t_mult*t)`` with
``theta_mult = beta1/beta2`` and ``t_mult = alpha2/alpha1``.  It intertwines
the source screw motion with the ``t_mult``-th power of the target one and so
descends to the quotients.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Optional

from gmpy2 import mpq

from .exact_arith import (
    BezoutPair,
    Rational,
    bezout,
    format_rational,
    reduce_mod1,
    to_rational,
)
from .torus_homology import (
    InvalidInvariantError,
    SeifertInvariant,
    ratio_condition,
    violated_identity,
)

_ZERO = mpq(0)
_ONE = mpq(1)


class InvalidCoverSpecError(ValueError):
    """A cover specification violates one of its defining invariants."""


@dataclass(frozen=True)
class UCPoint:
    """Point ``(r*e^{2 pi i theta}, t)`` of the universal cover ``D^2 x R``.

    ``theta`` is kept reduced into ``[0, 1)`` and forced to 0 at the disk center.
    """

    r: Rational
    theta: Rational
    t: Rational

    def __post_init__(self):
        r = to_rational(self.r)
        if not 0 <= r <= 1:
            raise ValueError(f"r must lie in [0, 1], got {format_rational(r)}")
        theta = _ZERO if r == 0 else reduce_mod1(self.theta)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "t", to_rational(self.t))

    @classmethod
    def _trusted(cls, r: Rational, theta: Rational, t: Rational) -> UCPoint:
        # r already validated and theta any rational: skips the checks in __init__
        p = object.__new__(cls)
        _set(p, "r", r)
        _set(p, "theta", _ZERO if not r else theta % 1)
        _set(p, "t", t)
        return p

    def to_json(self) -> dict:
        return {
            "r": format_rational(self.r),
            "theta": format_rational(self.theta),
            "t": format_rational(self.t),
        }

    @classmethod
    def from_json(cls, data) -> UCPoint:
        if not isinstance(data, dict):
            raise ValueError(f"expected a point object, got {data!r}")
        return cls(*(_parse_coord(data, key) for key in ("r", "theta", "t")))


_set = object.__setattr__


def _parse_coord(data: dict, key: str) -> Rational:
    if key not in data:
        raise ValueError(f"point is missing coordinate {key!r}")
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ValueError(f"coordinate {key!r} must be a 'p/q' string, got {value!r}")
    return to_rational(value)


@dataclass(frozen=True)
class DeckAction:
    """Screw motion ``(r, theta, t) -> (r, theta - alpha_prime/alpha, t + 1)``."""

    alpha: int
    alpha_prime: int

    def __post_init__(self):
        if self.alpha < 1:
            raise ValueError(f"deck action needs alpha >= 1, got {self.alpha}")

    @classmethod
    def of(cls, inv: SeifertInvariant, bez: Optional[BezoutPair] = None) -> DeckAction:
        if bez is None:
            bez = bezout(inv)
        return cls(inv.alpha, bez.alpha_prime)

    def fiber_period(self) -> int:
        """Number of unit t-steps after which a non-central vertical line closes up."""
        return self.alpha // gcd(self.alpha, self.alpha_prime)


@dataclass(frozen=True)
class QuotientPoint:
    """Point of a solid torus, stored by its representative with ``0 <= t < 1``."""

    rep: UCPoint
    owner: DeckAction

    def __post_init__(self):
        if not 0 <= self.rep.t < 1:
            raise ValueError(
                f"quotient representative needs 0 <= t < 1, got t={format_rational(self.rep.t)}"
            )

    def to_json(self) -> dict:
        return self.rep.to_json()


@dataclass(frozen=True)
class CoverSpec:
    """Complete data of the construction.

    Construction does not validate; use :func:`build_cover_spec`,
    :func:`validate_cover_spec` or :func:`cover_spec_from_json`.  Leaving the
    dataclass unchecked lets tests build deliberately corrupted specs.
    """

    k: int
    inv1: SeifertInvariant
    inv2: SeifertInvariant
    bez1: BezoutPair
    bez2: BezoutPair
    theta_mult: int
    t_mult: int

    @cached_property
    def deck1(self) -> DeckAction:
        return DeckAction(self.inv1.alpha, self.bez1.alpha_prime)

    @cached_property
    def deck2(self) -> DeckAction:
        return DeckAction(self.inv2.alpha, self.bez2.alpha_prime)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "inv1": self.inv1.to_json(),
            "inv2": self.inv2.to_json(),
            "bez1": self.bez1.to_json(),
            "bez2": self.bez2.to_json(),
            "theta_mult": self.theta_mult,
            "t_mult": self.t_mult,
        }


@dataclass(frozen=True)
class BranchingData:
    branch_order: int
    central_preimage_count: int

    def to_json(self) -> dict:
        return {
            "branch_order": self.branch_order,
            "central_preimage_count": self.central_preimage_count,
        }


@dataclass
class VerificationReport:
    samples_checked: int = 0
    equivariance_failures: int = 0
    preimage_count_failures: int = 0
    fiber_degree_failures: int = 0
    details: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not (
            self.equivariance_failures or self.preimage_count_failures or self.fiber_degree_failures
        )

    def merge(self, other: VerificationReport) -> VerificationReport:
        return VerificationReport(
            self.samples_checked + other.samples_checked,
            self.equivariance_failures + other.equivariance_failures,
            self.preimage_count_failures + other.preimage_count_failures,
            self.fiber_degree_failures + other.fiber_degree_failures,
            self.details + other.details,
        )

    def to_json(self) -> dict:
        return {
            "samples_checked": self.samples_checked,
            "equivariance_failures": self.equivariance_failures,
            "preimage_count_failures": self.preimage_count_failures,
            "fiber_degree_failures": self.fiber_degree_failures,
            "details": self.details,
        }


# -- construction and validation ---------------------------------------------


def build_cover_spec(inv1: SeifertInvariant, inv2: SeifertInvariant, k: int) -> CoverSpec:
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise InvalidCoverSpecError(f"k must be a positive integer, got {k!r}")
    if not ratio_condition(inv1, inv2, k):
        raise InvalidCoverSpecError(f"ratio condition fails: {violated_identity(inv1, inv2, k)}")
    if inv2.beta == 0:
        # alpha1 = alpha2 = 1, beta1 = 0: use the model map theta -> k*theta, t -> t
        theta_mult, t_mult = k, 1
    else:
        theta_mult = inv1.beta // inv2.beta
        t_mult = inv2.alpha // inv1.alpha
    spec = CoverSpec(k, inv1, inv2, bezout(inv1), bezout(inv2), theta_mult, t_mult)
    validate_cover_spec(spec)
    return spec


def validate_cover_spec(spec: CoverSpec) -> None:
    """Raise :class:`InvalidCoverSpecError` naming the first violated invariant."""
    for name in ("k", "theta_mult", "t_mult"):
        value = getattr(spec, name)
        if isinstance(value, bool) or not isinstance(value, int):
            raise InvalidCoverSpecError(f"{name} must be an integer, got {value!r}")
    inv1, inv2, k = spec.inv1, spec.inv2, spec.k
    if k < 1:
        raise InvalidCoverSpecError(f"k must be >= 1, got k={k}")
    if not ratio_condition(inv1, inv2, k):
        raise InvalidCoverSpecError(f"ratio condition fails: {violated_identity(inv1, inv2, k)}")
    for j, inv, bez in ((1, inv1, spec.bez1), (2, inv2, spec.bez2)):
        if not bez.satisfies(inv.alpha, inv.beta):
            raise InvalidCoverSpecError(
                f"Bezout identity fails for bez{j}: alpha*beta' - alpha'*beta = "
                f"{inv.alpha * bez.beta_prime - bez.alpha_prime * inv.beta} != 1"
            )
        if not 0 <= bez.alpha_prime < inv.alpha:
            raise InvalidCoverSpecError(
                f"bez{j} not normalized: need 0 <= alpha' < {inv.alpha}, got {bez.alpha_prime}"
            )
    if spec.theta_mult * spec.t_mult != k:
        raise InvalidCoverSpecError(
            f"degree factorization fails: theta_mult*t_mult = "
            f"{spec.theta_mult}*{spec.t_mult} != k = {k}"
        )
    if inv2.beta == 0:
        if (spec.theta_mult, spec.t_mult) != (k, 1):
            raise InvalidCoverSpecError(
                f"trivial case needs theta_mult = k and t_mult = 1, "
                f"got {spec.theta_mult}, {spec.t_mult}"
            )
    else:
        if spec.theta_mult <= 0 or inv1.beta != spec.theta_mult * inv2.beta:
            raise InvalidCoverSpecError(
                f"theta_mult must equal beta1/beta2 = {inv1.beta}/{inv2.beta} > 0, "
                f"got {spec.theta_mult}"
            )
        if inv2.alpha != spec.t_mult * inv1.alpha:
            raise InvalidCoverSpecError(
                f"t_mult must equal alpha2/alpha1 = {inv2.alpha}/{inv1.alpha}, got {spec.t_mult}"
            )
    if (spec.bez2.alpha_prime - spec.theta_mult * spec.bez1.alpha_prime) % inv1.alpha:
        raise InvalidCoverSpecError(
            f"divisibility lemma fails: alpha1 = {inv1.alpha} does not divide "
            f"alpha2' - theta_mult*alpha1'"
        )


def cover_spec_from_json(data, validate: bool = True) -> CoverSpec:
    """Load a spec, re-validating every invariant unless ``validate`` is false."""
    expected = {"k", "inv1", "inv2", "bez1", "bez2", "theta_mult", "t_mult"}
    if not isinstance(data, dict) or set(data) != expected:
        got = sorted(data) if isinstance(data, dict) else type(data).__name__
        raise InvalidCoverSpecError(f"spec must have exactly the keys {sorted(expected)}, got {got}")
    try:
        inv1 = SeifertInvariant.from_json(data["inv1"])
        inv2 = SeifertInvariant.from_json(data["inv2"])
    except InvalidInvariantError as exc:
        raise InvalidCoverSpecError(f"invalid invariant: {exc}") from None
    bez = []
    for key in ("bez1", "bez2"):
        b = data[key]
        if not isinstance(b, dict) or set(b) != {"alpha_prime", "beta_prime"}:
            raise InvalidCoverSpecError(f"{key} must be {{'alpha_prime', 'beta_prime'}}, got {b!r}")
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in b.values()):
            raise InvalidCoverSpecError(f"{key} entries must be integers, got {b!r}")
        bez.append(BezoutPair(b["alpha_prime"], b["beta_prime"]))
    spec = CoverSpec(data["k"], inv1, inv2, bez[0], bez[1], data["theta_mult"], data["t_mult"])
    if validate:
        validate_cover_spec(spec)
    return spec


def divisibility_check(spec: CoverSpec) -> int:
    """The integer ``(alpha2' - theta_mult*alpha1') / alpha1``.

    This is the whole-turn gap between the two sides of the equivariance
    identity; it must be exact for any valid Bezout choice.
    """
    q, rem = divmod(spec.bez2.alpha_prime - spec.theta_mult * spec.bez1.alpha_prime, spec.inv1.alpha)
    if rem:
        raise ArithmeticError(
            f"alpha1 = {spec.inv1.alpha} does not divide alpha2' - theta_mult*alpha1' "
            f"for {spec.to_json()}"
        )
    return q


# -- geometry -----------------------------------------------------------------


def deck_apply(d: DeckAction, p: UCPoint, n: int = 1) -> UCPoint:
    """Apply the ``n``-th power of the screw motion (``n`` may be negative)."""
    if n == 0:
        return p
    return UCPoint._trusted(p.r, p.theta - mpq(n * d.alpha_prime, d.alpha), p.t + n)


def canonical_rep(d: DeckAction, p: UCPoint) -> QuotientPoint:
    n = -(p.t.numerator // p.t.denominator)
    return QuotientPoint(deck_apply(d, p, n), d)


def quotient_eq(d: DeckAction, a: UCPoint, b: UCPoint) -> bool:
    return canonical_rep(d, a).rep == canonical_rep(d, b).rep


def lifted_apply(spec: CoverSpec, p: UCPoint) -> UCPoint:
    return UCPoint._trusted(p.r, spec.theta_mult * p.theta, spec.t_mult * p.t)


def quotient_map_apply(spec: CoverSpec, x: QuotientPoint) -> QuotientPoint:
    if x.owner.alpha != spec.inv1.alpha:
        raise ValueError(f"point belongs to a solid torus with alpha={x.owner.alpha}, not the source")
    return canonical_rep(spec.deck2, lifted_apply(spec, x.rep))


def equivariance_holds(spec: CoverSpec, p: UCPoint) -> bool:
    lhs = lifted_apply(spec, deck_apply(spec.deck1, p, 1))
    rhs = deck_apply(spec.deck2, lifted_apply(spec, p), spec.t_mult)
    return lhs == rhs


def verify_equivariance(spec: CoverSpec, samples: list[UCPoint]) -> VerificationReport:
    report = VerificationReport()
    for p in samples:
        report.samples_checked += 1
        if not equivariance_holds(spec, p):
            report.equivariance_failures += 1
            report.details.append({"check": "equivariance", "point": p.to_json()})
    return report


def preimages(spec: CoverSpec, y: QuotientPoint, check: bool = True) -> list[QuotientPoint]:
    """All source points mapping to ``y``, solved in closed form.

    ``f(x) ~ y`` means ``lifted(x) = deck2^n(y.rep)`` for some ``n``.  The
    t-coordinate forces ``n`` into ``0..t_mult-1``; for each such ``n`` the
    angle congruence ``theta_mult*theta1 = theta2 - n*alpha2'/alpha2 (mod 1)``
    has ``theta_mult`` solutions.  On the central fiber only ``n`` matters.
    """
    d1, d2 = spec.deck1, spec.deck2
    rep = y.rep
    out = []
    for n in range(spec.t_mult):
        t1 = (rep.t + n) / spec.t_mult
        if rep.r == 0:
            out.append(QuotientPoint(UCPoint._trusted(rep.r, _ZERO, t1), d1))
            continue
        target = reduce_mod1(rep.theta - mpq(n * d2.alpha_prime, d2.alpha))
        for j in range(spec.theta_mult):
            out.append(QuotientPoint(UCPoint._trusted(rep.r, (target + j) / spec.theta_mult, t1), d1))
    if check:
        for x in out:
            if quotient_map_apply(spec, x) != y:
                raise ArithmeticError(f"preimage {x.to_json()} does not map to {y.to_json()}")
    return out


def fiber_degree(spec: CoverSpec, x: QuotientPoint) -> int:
    """Winding number of the image of the source fiber through ``x`` over its target fiber."""
    p = x.rep
    if p.r == 0:
        raise ValueError("fiber degree is defined on generic fibers (r > 0); "
                         "the central fiber covers with degree t_mult")
    d1, d2 = spec.deck1, spec.deck2
    period1 = d1.fiber_period()
    # the vertical segment [t, t + period1) closes up into the source fiber
    end = deck_apply(d1, p, period1)
    if (end.r, end.theta) != (p.r, p.theta):
        raise ArithmeticError("source fiber does not close up")
    start_img = lifted_apply(spec, p)
    end_img = lifted_apply(spec, end)
    if (end_img.r, end_img.theta) != (start_img.r, start_img.theta):
        raise ArithmeticError("image of the source fiber is not a closed vertical curve")
    extent = end_img.t - start_img.t
    period2 = d2.fiber_period()
    closing = deck_apply(d2, start_img, period2)
    if (closing.r, closing.theta) != (start_img.r, start_img.theta):
        raise ArithmeticError("target fiber does not close up")
    winding = extent / period2
    if winding.denominator != 1 or winding <= 0:
        raise ArithmeticError(f"image winds {winding} times around the target fiber")
    return int(winding.numerator)


def branching_data(spec: CoverSpec) -> BranchingData:
    return BranchingData(spec.theta_mult, spec.t_mult)


def verify_cover(spec: CoverSpec, samples: list[UCPoint]) -> VerificationReport:
    """Equivariance, preimage count and fiber degree over every sample.

    Each sample is used as a source point for equivariance and fiber degree
    and, after canonicalization in the target, as a target for preimages.
    """
    report = verify_equivariance(spec, samples)
    d1, d2 = spec.deck1, spec.deck2
    for p in samples:
        y = canonical_rep(d2, p)
        expected = spec.k if p.r > 0 else spec.t_mult
        try:
            pts = preimages(spec, y, check=False)
            ok = (
                len(pts) == expected
                and len({x.rep for x in pts}) == len(pts)
                and all(quotient_map_apply(spec, x) == y for x in pts)
            )
        except (ArithmeticError, ValueError):
            ok = False
        if not ok:
            report.preimage_count_failures += 1
            report.details.append({"check": "preimages", "point": y.to_json()})
        if p.r > 0:
            try:
                ok = fiber_degree(spec, canonical_rep(d1, p)) == 1
            except (ArithmeticError, ValueError):
                ok = False
            if not ok:
                report.fiber_degree_failures += 1
                report.details.append({"check": "fiber_degree", "point": p.to_json()})
    return report


def sample_points(seed: int, count: int, denominator_bound: int) -> list[UCPoint]:
    """Deterministic rational sample points.

    The first point is the center ``r = 0`` and the second (when
    ``count >= 2``) lies on the boundary ``r = 1``.  The rest have
    ``r`` in ``(0, 1]``, ``theta`` in ``[0, 1)`` and ``t`` in ``[-3, 3]``, with
    denominators at most ``denominator_bound``.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if denominator_bound < 2:
        raise ValueError(f"denominator_bound must be >= 2, got {denominator_bound}")
    rng = random.Random(seed)

    def rand_den() -> int:
        return rng.randint(1, denominator_bound)

    points = []
    for i in range(count):
        q = rand_den()
        theta = mpq(rng.randrange(q), q)
        q = rand_den()
        t = mpq(rng.randint(-3 * q, 3 * q), q)
        if i == 0:
            r = _ZERO
        elif i == 1:
            r = _ONE
        else:
            q = rand_den()
            r = mpq(rng.randint(1, q), q)
        points.append(UCPoint(r, theta, t))
    return points

