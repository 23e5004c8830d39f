"""Laws of scaled sums of exponentials: densities, CDFs, sampling, goodness of fit.

``S = mu_1 X_1 + ... + mu_n X_n`` with ``X_k`` i.i.d. exponential(``lam``) has
characteristic function ``sum_k theta_k lam / (lam - i mu_k t)``, so its density
is a signed mixture of one-sided exponentials: rate ``lam/mu_k`` on the positive
half-line when ``mu_k > 0`` and on the negative half-line when ``mu_k < 0``.
All-positive ``mu`` gives a hypoexponential law; mixed signs give a
difference of two hypoexponentials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .errors import RankOutOfRange, ValidationError
from .mixture import Family, MuVector, theta_exponential
from .parallel import ordered_map

#: Samples drawn per generator stream.  Fixed, so output never depends on worker count.
BLOCK_SIZE = 1 << 16

KS_FACTOR = 1.95


@dataclass(frozen=True)
class MixtureLaw:
    """Signed exponential mixture for ``S``; weights are the exact ``theta`` rounded once."""

    mu: MuVector
    lam: float
    weights: tuple[float, ...]
    rates: tuple[float, ...]
    weight_rounding: float

    @classmethod
    def from_mu(cls, mu, lam: float) -> "MixtureLaw":
        if not isinstance(mu, MuVector):
            mu = MuVector(mu, Family.EXPONENTIAL)
        lam = float(lam)
        if not lam > 0:
            raise ValidationError(f"rate must be positive, got {lam}")
        theta = theta_exponential(mu)
        weights = tuple(float(c) for c in theta.coefficients)
        rounding = max(abs(float(c - Fraction(w))) for c, w in zip(theta.coefficients, weights))
        rates = tuple(lam / float(x) for x in mu.entries)
        return cls(mu, lam, weights, rates, rounding)

    @property
    def positive_terms(self):
        return [(w, r) for w, r in zip(self.weights, self.rates) if r > 0]

    @property
    def negative_terms(self):
        return [(w, r) for w, r in zip(self.weights, self.rates) if r < 0]


def mixture_pdf(law: MixtureLaw, x):
    """Density of ``S``; at ``x = 0`` the right limit is returned."""
    x = np.asarray(x, dtype=float)
    right = x >= 0
    out = np.zeros_like(x)
    for w, r in law.positive_terms:
        out = out + np.where(right, w * r * np.exp(-r * np.where(right, x, 0.0)), 0.0)
    for w, r in law.negative_terms:
        out = out + np.where(right, 0.0, w * -r * np.exp(-r * np.where(right, 0.0, x)))
    return out[()] if out.ndim == 0 else out


def mixture_cdf(law: MixtureLaw, x):
    """Distribution function of ``S``, clipped to ``[0, 1]`` against rounding."""
    x = np.asarray(x, dtype=float)
    right = x >= 0
    xr = np.where(right, x, 0.0)
    xl = np.where(right, 0.0, x)
    out = np.zeros_like(x)
    for w, r in law.negative_terms:
        out = out + np.where(right, w, w * np.exp(-r * xl))
    for w, r in law.positive_terms:
        out = out + np.where(right, w * -np.expm1(-r * xr), 0.0)
    out = np.clip(out, 0.0, 1.0)
    return out[()] if out.ndim == 0 else out


def _block_streams(n_samples: int) -> list[tuple[int, int]]:
    return [(b, min(BLOCK_SIZE, n_samples - b * BLOCK_SIZE)) for b in range(-(-n_samples // BLOCK_SIZE))]


def sample_weighted_exponentials(
    coeffs: Sequence[float], lam: float, n_samples: int, seed: int, workers: int | None = None
) -> np.ndarray:
    """Draw ``sum_k coeffs[k] X_k`` with i.i.d. exponential(``lam``) ``X_k``.

    Each block of :data:`BLOCK_SIZE` draws has its own Philox stream keyed by
    ``(seed, block index)``; exponentials come from inverse transform of
    uniforms, ``X = -log(1 - U) / lam``.
    """
    if n_samples < 1:
        raise ValidationError(f"need at least one sample, got {n_samples}")
    lam = float(lam)
    if not lam > 0:
        raise ValidationError(f"rate must be positive, got {lam}")
    coeffs = [float(c) for c in coeffs]

    def draw(block):
        index, size = block
        gen = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(index,))))
        u = gen.random((size, len(coeffs)))
        x = -np.log1p(-u) / lam
        s = np.zeros(size)
        for k, c in enumerate(coeffs):
            s += c * x[:, k]
        return s

    return np.concatenate(ordered_map(draw, _block_streams(n_samples), workers))


def sample_sum(mu, lam: float, n_samples: int, seed: int, workers: int | None = None) -> np.ndarray:
    """``n_samples`` draws of ``S = sum_k mu_k X_k``; the same seed gives the same array."""
    if not isinstance(mu, MuVector):
        mu = MuVector(mu, Family.EXPONENTIAL)
    return sample_weighted_exponentials([float(x) for x in mu.entries], lam, n_samples, seed, workers)


def order_stat_cdf(L: int, n: int, lam: float, x):
    """CDF of the ``n``-th smallest of ``L`` i.i.d. exponential(``lam``) variables."""
    if not 1 <= n <= L:
        raise RankOutOfRange(f"rank {n} outside 1..{L}")
    x = np.asarray(x, dtype=float)
    xr = np.where(x > 0, x, 0.0)
    p = -np.expm1(-lam * xr)
    q = np.exp(-lam * xr)
    out = np.zeros_like(x)
    for j in range(n, L + 1):
        out = out + math.comb(L, j) * p**j * q ** (L - j)
    out = np.where(x > 0, np.clip(out, 0.0, 1.0), 0.0)
    return out[()] if out.ndim == 0 else out


def ks_statistic(samples, cdf: Callable) -> float:
    """Two-sided Kolmogorov-Smirnov distance between the sample and ``cdf``."""
    x = np.sort(np.asarray(samples, dtype=float))
    if x.size == 0:
        raise ValidationError("need at least one sample")
    f = np.asarray(cdf(x), dtype=float)
    n = x.size
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - f), np.max(f - (i - 1) / n)))


def ks_threshold(n_samples: int) -> float:
    return KS_FACTOR / math.sqrt(n_samples)


class RenyiReport(NamedTuple):
    L: int
    n: int
    lam: float
    n_samples: int
    ks_S: float
    ks_S_over_lambda: float
    threshold: float

    @property
    def matching(self) -> str:
        s_ok = self.ks_S < self.threshold
        scaled_ok = self.ks_S_over_lambda < self.threshold
        if s_ok and scaled_ok:
            return "both"
        if s_ok:
            return "S"
        if scaled_ok:
            return "S/lambda"
        return "neither"

    def to_json(self) -> dict:
        out = self._asdict()
        out["matching"] = self.matching
        return out


def renyi_check(L: int, n: int, lam: float, n_samples: int, seed: int, workers: int | None = None) -> RenyiReport:
    """Compare ``S`` and ``S/lam`` against the ``n``-th order statistic of ``L`` exponentials.

    ``S = sum_{k=1}^n X_k / (L - k + 1)`` with ``X_k`` exponential(``lam``).
    Both KS distances are reported; ``matching`` names whichever falls below
    the ``1.95/sqrt(N)`` threshold.
    """
    if not 1 <= n < L:
        raise RankOutOfRange(f"need L > n >= 1, got L={L}, n={n}")
    coeffs = [1.0 / (L - k + 1) for k in range(1, n + 1)]
    s = sample_weighted_exponentials(coeffs, lam, n_samples, seed, workers)
    target = lambda x: order_stat_cdf(L, n, lam, x)  # noqa: E731
    return RenyiReport(
        L,
        n,
        float(lam),
        n_samples,
        ks_statistic(s, target),
        ks_statistic(s / lam, target),
        ks_threshold(n_samples),
    )
