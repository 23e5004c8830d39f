"""Moment recursion obtained by differentiating the mixture identity at zero.

Moments are carried in the real domain, ``M_m = E(X**m)``, which is the
``m``-th derivative of the characteristic function at zero divided by
``i**m``.  Differentiating ``prod_k phi(mu_k t) = sum_k theta_k phi(mu_k t)``
``m`` times at ``t = 0`` gives

    sum_{k in W_{n,m}} multinomial(k) prod_j mu_j**k_j M_{k_j} = (sum_k theta_k mu_k**m) M_m.

The ``n`` compositions with a part equal to ``m`` contribute ``p_m(mu) M_m``,
so ``D_m M_m = R_m`` with ``D_m = sum_k theta_k mu_k**m - p_m(mu)`` and
``R_m`` the sum over compositions whose parts are all below ``m``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, NamedTuple, Optional, Sequence

from .errors import (
    DegreeLimitExceeded,
    Inconsistent,
    InsufficientMoments,
    InsufficientSeeds,
    MissingSeed,
    ValidationError,
)
from .mixture import Family, MuVector, ThetaSet, weighted_power_sum
from .symfunc import (
    DEFAULT_MAX_DEGREE,
    RationalLike,
    as_rational,
    composition_product_sum,
    format_rational,
    power_sum,
)

DEFAULT_RECURSION_DEGREE = 20

SOLVED = "Solved"
SINGULAR_CONSISTENT = "SingularConsistent"
SINGULAR_INCONSISTENT = "SingularInconsistent"


@dataclass(frozen=True)
class MomentSeq:
    """Exact raw moments ``M_0 = 1, M_1, ..., M_m``."""

    values: tuple[Fraction, ...]
    family: Optional[Family] = None

    def __post_init__(self):
        values = tuple(as_rational(v) for v in self.values)
        if not values or values[0] != 1:
            raise ValidationError("a moment sequence starts with M_0 = 1")
        if self.family is Family.EXPONENTIAL and len(values) > 2 and values[2] < values[1] ** 2:
            raise ValidationError("M_2 < M_1**2: negative variance")
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    @property
    def m_max(self) -> int:
        return len(self.values) - 1


class RecursionStep(NamedTuple):
    m: int
    denominator: Fraction
    rhs: Fraction
    outcome: str
    value: Optional[Fraction] = None

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "D": format_rational(self.denominator),
            "R": format_rational(self.rhs),
            "outcome": self.outcome,
        }


def _values(mu) -> tuple[Fraction, ...]:
    if isinstance(mu, MuVector):
        return mu.entries
    return tuple(as_rational(x) for x in mu)


def _expansion(mu: Sequence[Fraction], moments: Sequence[Fraction], m: int, drop_top: bool) -> Fraction:
    # sum over W_{n,m} of m!/prod k_j! * prod mu_j**k_j M_{k_j}, written as
    # m! * sum prod_j (mu_j**k_j M_{k_j} / k_j!) and evaluated with one
    # common denominator per row so the composition walk stays in integers.
    if m > DEFAULT_MAX_DEGREE:
        raise DegreeLimitExceeded(f"degree {m} exceeds limit {DEFAULT_MAX_DEGREE}")
    rows = []
    den_total = 1
    for a in mu:
        row = [a**k * moments[k] / math.factorial(k) for k in range(m)]
        row.append(Fraction(0) if drop_top else a**m * moments[m] / math.factorial(m))
        den = math.lcm(*(x.denominator for x in row))
        rows.append([int(x * den) for x in row])
        den_total *= den
    return Fraction(composition_product_sum(rows, m) * math.factorial(m), den_total)


def moment_of_sum(mu, moments: Sequence[RationalLike], m: int) -> Fraction:
    """``E(S**m)`` for ``S = mu_1 X_1 + ... + mu_n X_n`` with i.i.d. ``X_k``.

    ``moments`` holds ``E(X**0), ..., E(X**j)`` for some ``j >= m``.
    """
    values = _values(mu)
    if m < 0:
        raise ValidationError(f"degree must be non-negative, got {m}")
    if len(moments) <= m:
        raise InsufficientMoments(f"need moments up to degree {m}, have {len(moments) - 1}")
    moments = [as_rational(x) for x in moments[: m + 1]]
    return _expansion(values, moments, m, drop_top=False)


def forward_moments(family: "Family | str", lam: RationalLike, m_max: int) -> MomentSeq:
    """Exact moments of the exponential (``m!/lam**m``) or Laplace law."""
    family = Family.parse(family)
    lam = as_rational(lam)
    if lam <= 0:
        raise ValidationError(f"rate must be positive, got {lam}")
    values = []
    for m in range(m_max + 1):
        if family is Family.LAPLACE and m % 2:
            values.append(Fraction(0))
        else:
            values.append(Fraction(math.factorial(m)) / lam**m)
    return MomentSeq(tuple(values), family)


def recursion_denominator(theta: ThetaSet, m: int) -> Fraction:
    """``D_m = sum_k theta_k mu_k**m - p_m(mu)``, the coefficient of the unknown ``M_m``."""
    return weighted_power_sum(theta, m) - power_sum(theta.source_mu.entries, m)


def reconstruct_moments(
    mu,
    theta: ThetaSet,
    seeds: Mapping[int, RationalLike],
    m_max: int = DEFAULT_RECURSION_DEGREE,
) -> tuple[MomentSeq, list[RecursionStep]]:
    """Solve the differentiated identity for ``M_2, ..., M_{m_max}``.

    ``seeds[1]`` is the free first moment.  Higher seeds are consulted only at
    singular steps (``D_m == 0``): a consistent singular step takes its moment
    from ``seeds[m]`` and raises :class:`MissingSeed` if there is none, while a
    singular step with ``R_m != 0`` raises :class:`Inconsistent` because no law
    satisfies the identity with those lower moments.
    """
    values = _values(mu)
    if values != theta.source_mu.entries:
        raise ValidationError("theta was not derived from this mu")
    if m_max < 2:
        raise ValidationError(f"m_max must be at least 2, got {m_max}")
    if 1 not in seeds:
        raise InsufficientSeeds("the first moment must be seeded")
    seeds = {int(k): as_rational(v) for k, v in seeds.items()}
    moments = [Fraction(1), seeds[1]]
    steps: list[RecursionStep] = []
    for m in range(2, m_max + 1):
        d = recursion_denominator(theta, m)
        r = _expansion(values, moments + [Fraction(0)], m, drop_top=True)
        if d != 0:
            value = r / d
            steps.append(RecursionStep(m, d, r, SOLVED, value))
        elif r == 0:
            if m not in seeds:
                raise MissingSeed(m)
            value = seeds[m]
            steps.append(RecursionStep(m, d, r, SINGULAR_CONSISTENT, value))
        else:
            steps.append(RecursionStep(m, d, r, SINGULAR_INCONSISTENT))
            err = Inconsistent(m, r)
            err.steps = steps
            raise err
        moments.append(value)
    return MomentSeq(tuple(moments), theta.family), steps


class SeedVerdict(NamedTuple):
    kind: str
    rate: Optional[Fraction] = None

    def label(self) -> str:
        if self.rate is None:
            return self.kind
        return f"{self.kind}(lambda={format_rational(self.rate)})"


def classify_from_seed(m1: RationalLike) -> SeedVerdict:
    """Law pinned down by the first moment under the exponential-family identity.

    Zero mean is the point mass at zero, a positive mean ``E(X)`` an
    exponential with rate ``1/E(X)``, a negative mean the reflected case.
    """
    m1 = as_rational(m1)
    if m1 == 0:
        return SeedVerdict("Degenerate")
    if m1 > 0:
        return SeedVerdict("ExponentialWith", 1 / m1)
    return SeedVerdict("NegExponentialWith", -1 / m1)
