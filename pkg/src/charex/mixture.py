"""Mixture weights for scaled sums, the admissibility scan, and their identities.

For independent copies ``X_k`` of an exponential variable the characteristic
function of ``mu_1 X_1 + ... + mu_n X_n`` splits into ``sum_k theta_k phi(mu_k t)``.
The weights ``theta`` and the exact checks around them live here.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from .errors import (
    DuplicateMu,
    FamilyMismatch,
    NonPositiveMu,
    OddDegree,
    TooFewMu,
    ValidationError,
    ZeroMu,
)
from .symfunc import RationalLike, as_rational, complete_homogeneous, format_rational, power_sum

DEFAULT_SCAN_DEGREE = 64


class Family(enum.Enum):
    EXPONENTIAL = "exp"
    LAPLACE = "laplace"

    @classmethod
    def parse(cls, value: "Family | str") -> "Family":
        if isinstance(value, Family):
            return value
        aliases = {"exp": cls.EXPONENTIAL, "exponential": cls.EXPONENTIAL, "laplace": cls.LAPLACE}
        try:
            return aliases[str(value).lower()]
        except KeyError:
            raise ValidationError(f"unknown family {value!r}") from None


@dataclass(frozen=True)
class MuVector:
    """Distinct non-zero scale coefficients, positive as well for Laplace."""

    entries: tuple[Fraction, ...]
    family: Family = Family.EXPONENTIAL

    def __init__(self, entries: Sequence[RationalLike], family: "Family | str" = Family.EXPONENTIAL):
        values = tuple(as_rational(x) for x in entries)
        family = Family.parse(family)
        if len(values) < 2:
            raise TooFewMu(f"need at least 2 coefficients, got {len(values)}")
        seen: dict[Fraction, int] = {}
        for i, x in enumerate(values):
            if x == 0:
                raise ZeroMu(f"mu[{i}] is zero")
            if family is Family.LAPLACE and x < 0:
                raise NonPositiveMu(f"mu[{i}] = {format_rational(x)} is not positive")
            if x in seen:
                raise DuplicateMu(f"mu[{i}] duplicates mu[{seen[x]}] = {format_rational(x)}")
            seen[x] = i
        object.__setattr__(self, "entries", values)
        object.__setattr__(self, "family", family)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def with_family(self, family: "Family | str") -> "MuVector":
        return MuVector(self.entries, family)


@dataclass(frozen=True)
class ThetaSet:
    coefficients: tuple[Fraction, ...]
    family: Family
    source_mu: MuVector

    def __len__(self) -> int:
        return len(self.coefficients)

    def __iter__(self):
        return iter(self.coefficients)

    def __getitem__(self, i):
        return self.coefficients[i]

    def as_floats(self) -> list[float]:
        return [float(c) for c in self.coefficients]


def _as_mu(mu, family: Family) -> MuVector:
    if isinstance(mu, MuVector):
        if mu.family is not family:
            # re-validate under the requested family's constraints
            return mu.with_family(family)
        return mu
    return MuVector(mu, family)


def _product_weights(values: Sequence[Fraction]) -> tuple[Fraction, ...]:
    out = []
    for k, a in enumerate(values):
        w = Fraction(1)
        for j, b in enumerate(values):
            if j != k:
                if a == b:
                    raise DuplicateMu(f"coefficients {k} and {j} coincide")
                w *= a / (a - b)
        out.append(w)
    return tuple(out)


def theta_exponential(mu) -> ThetaSet:
    """Weights ``theta_k = prod_{j != k} mu_k / (mu_k - mu_j)``."""
    mu = _as_mu(mu, Family.EXPONENTIAL)
    return ThetaSet(_product_weights(mu.entries), Family.EXPONENTIAL, mu)


def theta_laplace(mu) -> ThetaSet:
    """Weights ``theta_k = prod_{j != k} mu_k**2 / (mu_k**2 - mu_j**2)``."""
    mu = _as_mu(mu, Family.LAPLACE)
    return ThetaSet(_product_weights([x * x for x in mu.entries]), Family.LAPLACE, mu)


def theta_for(mu, family: "Family | str") -> ThetaSet:
    family = Family.parse(family)
    if family is Family.LAPLACE:
        return theta_laplace(mu)
    return theta_exponential(mu)


def weighted_power_sum(theta: ThetaSet, m: int) -> Fraction:
    """``sum_k theta_k mu_k**m`` over the coefficients ``theta`` was built from."""
    return sum((t * x**m for t, x in zip(theta.coefficients, theta.source_mu.entries)), Fraction(0))


class ConditionReport(NamedTuple):
    """Outcome of scanning ``h_m(mu) != p_m(mu)`` over ``m >= 2``.

    ``verdict`` is ``"PassUpTo"`` (no equality for ``2 <= m <= checked_up_to``),
    ``"FailAt"`` (equality at ``m``, the first such degree) or
    ``"PassProvenAllM"`` (inequality holds for every ``m``).
    """

    verdict: str
    checked_up_to: Optional[int]
    m: Optional[int] = None
    h_m: Optional[Fraction] = None
    p_m: Optional[Fraction] = None

    @property
    def passed(self) -> bool:
        return self.verdict != "FailAt"

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "m": self.m,
            "h_m": None if self.h_m is None else format_rational(self.h_m),
            "p_m": None if self.p_m is None else format_rational(self.p_m),
        }

    def label(self) -> str:
        if self.verdict == "PassProvenAllM":
            return "PassProvenAllM"
        return f"{self.verdict}({self.m})"


def check_condition(mu, m_max: int = DEFAULT_SCAN_DEGREE) -> ConditionReport:
    """Check ``h_m(mu) != p_m(mu)`` for ``m >= 2``.

    All-positive coefficients pass for every ``m`` because ``h_m`` contains the
    ``mu_k**m`` terms plus strictly positive cross terms.  For two coefficients
    equality forces ``mu_2 = -mu_1`` and then holds exactly at the odd degrees,
    so that case is settled at ``m = 3`` without a scan.  Everything else is
    scanned exactly for ``2 <= m <= m_max``.
    """
    if not isinstance(mu, MuVector):
        mu = MuVector(mu)
    if m_max < 2:
        raise ValidationError(f"m_max must be at least 2, got {m_max}")
    values = mu.entries
    if all(x > 0 for x in values):
        return ConditionReport("PassProvenAllM", None)
    if len(values) == 2 and values[0] == -values[1]:
        return ConditionReport("FailAt", 3, 3, complete_homogeneous(values, 3), power_sum(values, 3))
    for m in range(2, m_max + 1):
        h = complete_homogeneous(values, m, max_degree=max(m_max, DEFAULT_SCAN_DEGREE))
        p = power_sum(values, m)
        if h == p:
            return ConditionReport("FailAt", m, m, h, p)
    return ConditionReport("PassUpTo", m_max, m_max)


class IdentityCheck(NamedTuple):
    holds: bool
    lhs: Fraction
    rhs: Fraction


def verify_lemma1(mu, theta: ThetaSet, m: int) -> IdentityCheck:
    """Exact check of ``sum_k theta_k mu_k**m == h_m(mu)``."""
    if theta.family is not Family.EXPONENTIAL:
        raise FamilyMismatch(f"expected exponential weights, got {theta.family.value}")
    if m < 0:
        raise ValidationError(f"degree must be non-negative, got {m}")
    values = mu.entries if isinstance(mu, MuVector) else tuple(as_rational(x) for x in mu)
    if values != theta.source_mu.entries:
        raise ValidationError("theta was not derived from this mu")
    lhs = weighted_power_sum(theta, m)
    rhs = complete_homogeneous(values, m, max_degree=max(m, DEFAULT_SCAN_DEGREE))
    return IdentityCheck(lhs == rhs, lhs, rhs)


def verify_lemma1_laplace(mu, theta: ThetaSet, m: int) -> IdentityCheck:
    """Exact check of ``sum_k theta_k mu_k**m == h_{m/2}(mu_1**2, ..., mu_n**2)`` for even ``m``.

    Odd degrees raise :class:`OddDegree`; their weighted sums are still
    available from :func:`weighted_power_sum`.
    """
    if theta.family is not Family.LAPLACE:
        raise FamilyMismatch(f"expected Laplace weights, got {theta.family.value}")
    if m < 0:
        raise ValidationError(f"degree must be non-negative, got {m}")
    if m % 2:
        raise OddDegree(f"degree {m} is odd; weighted sum is {format_rational(weighted_power_sum(theta, m))}")
    mu = _as_mu(mu, Family.LAPLACE)
    if mu.entries != theta.source_mu.entries:
        raise ValidationError("theta was not derived from this mu")
    lhs = weighted_power_sum(theta, m)
    squares = [x * x for x in mu.entries]
    rhs = complete_homogeneous(squares, m // 2, max_degree=max(m, DEFAULT_SCAN_DEGREE))
    return IdentityCheck(lhs == rhs, lhs, rhs)
