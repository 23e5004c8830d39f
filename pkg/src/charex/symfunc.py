"""Exact rationals, weak compositions and the symmetric sums built on them.

All quantities here are exact.  ``Rational`` is :class:`fractions.Fraction`,
which keeps numerator and denominator coprime with a positive denominator
after every operation.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence, Union

from .errors import DegreeLimitExceeded, ValidationError

Rational = Fraction
RationalLike = Union[Fraction, int, str]

#: Largest degree accepted by the enumeration routines unless overridden.
DEFAULT_MAX_DEGREE = 64


def as_rational(value: RationalLike) -> Fraction:
    """Convert ``value`` to an exact rational.

    Strings use the ``"p/q"`` or ``"p"`` form.  Floats are refused: silently
    turning ``0.1`` into ``3602879701896397/36028797018963968`` would defeat
    the point of the exact routines.
    """
    if isinstance(value, bool):
        raise ValidationError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if any(c in text for c in ".eE") or not text:
            raise ValidationError(f"not an exact rational literal: {value!r}")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"not an exact rational literal: {value!r}") from exc
    raise ValidationError(f"not a rational: {value!r}")


def format_rational(q: Fraction) -> str:
    """Canonical ``"p/q"`` string, or ``"p"`` when the denominator is 1."""
    return str(Fraction(q))


class Composition(tuple):
    """A weak composition ``(k_1, ..., k_n)``: non-negative parts."""

    def __new__(cls, parts: Iterable[int]):
        parts = tuple(int(k) for k in parts)
        if any(k < 0 for k in parts):
            raise ValidationError(f"negative part in composition {parts}")
        return super().__new__(cls, parts)

    @property
    def degree(self) -> int:
        return sum(self)


def _check_degree(m: int, max_degree: int) -> None:
    if m < 0:
        raise ValidationError(f"degree must be non-negative, got {m}")
    if m > max_degree:
        raise DegreeLimitExceeded(f"degree {m} exceeds limit {max_degree}")


def compositions(n: int, m: int, max_degree: int = DEFAULT_MAX_DEGREE) -> Iterator[Composition]:
    """Yield every weak composition of ``m`` into ``n`` parts, lexicographically.

    The stream has ``comb(m + n - 1, n - 1)`` elements.
    """
    if n < 1:
        raise ValidationError(f"need at least one part, got n={n}")
    _check_degree(m, max_degree)
    parts = [0] * n

    def walk(j: int, remaining: int) -> Iterator[Composition]:
        if j == n - 1:
            parts[j] = remaining
            yield Composition(parts)
            return
        for k in range(remaining + 1):
            parts[j] = k
            yield from walk(j + 1, remaining - k)

    yield from walk(0, m)


def count_compositions(n: int, m: int) -> int:
    return math.comb(m + n - 1, n - 1)


def multinomial(c: Sequence[int]) -> int:
    """``m! / (k_1! ... k_n!)`` for the composition ``c`` of degree ``m``."""
    c = Composition(c)
    out = math.factorial(c.degree)
    for k in c:
        out //= math.factorial(k)
    return out


def power_sum(mu: Sequence[RationalLike], m: int) -> Fraction:
    """``sum_k mu_k**m``; equals ``len(mu)`` at ``m = 0``."""
    mu = [as_rational(x) for x in mu]
    if not mu:
        raise ValidationError("empty coefficient vector")
    if m < 0:
        raise ValidationError(f"degree must be non-negative, got {m}")
    return sum((x**m for x in mu), Fraction(0))


def _common_denominator(mu: Sequence[Fraction]) -> tuple[tuple[int, ...], int]:
    den = math.lcm(*(x.denominator for x in mu))
    return tuple(int(x * den) for x in mu), den


def composition_product_sum(rows: Sequence[Sequence[int]], m: int) -> int:
    """Sum over ``W_{n,m}`` of ``prod_j rows[j][k_j]`` for integer tables.

    A depth-first walk over the same lexicographic tree as
    :func:`compositions`, carrying the prefix product so each composition
    costs one multiplication.  ``rows[j]`` must have at least ``m + 1`` entries.
    """
    n = len(rows)
    last = rows[-1]

    def walk(j: int, remaining: int, prefix: int) -> int:
        if not prefix:
            return 0
        if j == n - 1:
            return prefix * last[remaining]
        row = rows[j]
        return sum(walk(j + 1, remaining - k, prefix * row[k]) for k in range(remaining + 1))

    return walk(0, m, 1)


@lru_cache(maxsize=4096)
def _monomial_sum(nums: tuple[int, ...], m: int) -> int:
    rows = []
    for a in nums:
        row = [1] * (m + 1)
        for k in range(1, m + 1):
            row[k] = row[k - 1] * a
        rows.append(row)
    return composition_product_sum(rows, m)


def complete_homogeneous(
    mu: Sequence[RationalLike], m: int, max_degree: int = DEFAULT_MAX_DEGREE
) -> Fraction:
    """Complete homogeneous symmetric polynomial ``h_m(mu)``.

    Evaluated literally as the sum of ``prod_j mu_j**k_j`` over all weak
    compositions ``(k_1, ..., k_n)`` of ``m``.  Entries are put over a common
    denominator first so the walk multiplies plain integers.
    """
    mu = [as_rational(x) for x in mu]
    if not mu:
        raise ValidationError("empty coefficient vector")
    _check_degree(m, max_degree)
    nums, den = _common_denominator(mu)
    return Fraction(_monomial_sum(nums, m), den**m)


def newton_complete_homogeneous(mu: Sequence[RationalLike], m_max: int) -> list[Fraction]:
    """``[h_0, ..., h_{m_max}]`` via ``m h_m = sum_{j=1}^m p_j h_{m-j}``.

    Independent of :func:`complete_homogeneous`; used to cross-check it.
    """
    mu = [as_rational(x) for x in mu]
    p = [power_sum(mu, j) for j in range(m_max + 1)]
    h = [Fraction(1)]
    for m in range(1, m_max + 1):
        h.append(sum((p[j] * h[m - j] for j in range(1, m + 1)), Fraction(0)) / m)
    return h
