"""Closed-form characteristic functions and residuals of the functional equations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ValidationError
from .mixture import MuVector, ThetaSet
from .parallel import ordered_map

MODEL_KINDS = ("degenerate", "exp", "negexp", "laplace", "bernoulli")


@dataclass(frozen=True)
class CFModel:
    """A candidate law with closed-form characteristic function.

    ``kind`` is one of ``degenerate``, ``exp``, ``negexp``, ``laplace`` (all
    parametrised by a rate) or ``bernoulli``, the two-point law with mass 1/2
    at 0 and at ``param``.
    """

    kind: str
    param: float = 1.0

    def __post_init__(self):
        if self.kind not in MODEL_KINDS:
            raise ValidationError(f"unknown model {self.kind!r}")
        if self.kind != "degenerate" and not self.param > 0:
            raise ValidationError(f"{self.kind} parameter must be positive, got {self.param}")

    @classmethod
    def parse(cls, text: str) -> "CFModel":
        """Parse ``exp:2``, ``negexp:1``, ``laplace:0.5``, ``bernoulli:3`` or ``degenerate``."""
        kind, _, value = text.strip().partition(":")
        kind = kind.lower()
        if kind == "degenerate":
            if value:
                raise ValidationError("degenerate model takes no parameter")
            return cls("degenerate", 0.0)
        if not value:
            raise ValidationError(f"model {text!r} needs a parameter, e.g. {kind}:1")
        try:
            param = float(value)
        except ValueError:
            raise ValidationError(f"bad model parameter in {text!r}") from None
        return cls(kind, param)

    def label(self) -> str:
        if self.kind == "degenerate":
            return "degenerate"
        return f"{self.kind}:{self.param!r}"


def exponential(rate: float) -> CFModel:
    return CFModel("exp", rate)


def neg_exponential(rate: float) -> CFModel:
    return CFModel("negexp", rate)


def laplace(rate: float) -> CFModel:
    return CFModel("laplace", rate)


def half_bernoulli(atom: float) -> CFModel:
    return CFModel("bernoulli", atom)


DEGENERATE = CFModel("degenerate", 0.0)


def cf_eval(model: CFModel, t):
    """Characteristic function of ``model`` at ``t`` (scalar or array)."""
    t = np.asarray(t, dtype=float)
    lam = model.param
    if model.kind == "degenerate":
        out = np.ones_like(t, dtype=complex)
    elif model.kind == "exp":
        out = lam / (lam - 1j * t)
    elif model.kind == "negexp":
        out = lam / (lam + 1j * t)
    elif model.kind == "laplace":
        out = (lam * lam / (lam * lam + t * t)).astype(complex)
    else:
        out = 0.5 * (1.0 + np.exp(1j * lam * t))
    return out[()] if out.ndim == 0 else out


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid on ``[t_min, t_max]`` with ``points`` nodes, endpoints included."""

    t_min: float = -10.0
    t_max: float = 10.0
    points: int = 2001

    def __post_init__(self):
        if not self.t_min < self.t_max:
            raise ValidationError(f"grid needs t_min < t_max, got {self.t_min}, {self.t_max}")
        if self.points < 2:
            raise ValidationError(f"grid needs at least 2 points, got {self.points}")

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        try:
            lo, hi, n = text.split(":")
            return cls(float(lo), float(hi), int(n))
        except ValueError:
            raise ValidationError(f"grid must look like tmin:tmax:points, got {text!r}") from None

    def values(self) -> np.ndarray:
        return np.linspace(self.t_min, self.t_max, self.points)

    def to_json(self) -> dict:
        return {"t_min": self.t_min, "t_max": self.t_max, "points": self.points}


class Residual(NamedTuple):
    residual: float
    argmax_t: float
    grid: GridSpec

    def to_json(self) -> dict:
        return {"residual": self.residual, "argmax_t": self.argmax_t, "grid": self.grid.to_json()}


# chunk size is fixed so the per-point arithmetic never depends on worker count
_CHUNK = 512


def _max_over_grid(grid: GridSpec, pointwise) -> Residual:
    t = grid.values()
    chunks = [t[i : i + _CHUNK] for i in range(0, t.size, _CHUNK)]

    def reduce_chunk(ts):
        r = pointwise(ts)
        i = int(np.argmax(r))
        return float(r[i]), float(ts[i])

    best = max(ordered_map(reduce_chunk, chunks), key=lambda pair: pair[0])
    # max() keeps the first chunk among ties, so argmax_t is the leftmost maximiser
    return Residual(best[0], best[1], grid)


def identity_residual(model: CFModel, mu, theta: ThetaSet, grid: GridSpec | None = None) -> Residual:
    """Max over the grid of ``|prod_k phi(mu_k t) - sum_k theta_k phi(mu_k t)|``.

    The mixture side is accumulated in ascending ``|theta_k|`` order.
    """
    grid = grid or GridSpec()
    values = mu.entries if isinstance(mu, MuVector) else tuple(mu)
    if tuple(values) != theta.source_mu.entries:
        raise ValidationError("theta was not derived from this mu")
    scales = [float(x) for x in values]
    weights = theta.as_floats()
    order = sorted(range(len(weights)), key=lambda k: abs(theta.coefficients[k]))

    def pointwise(ts):
        phis = [cf_eval(model, a * ts) for a in scales]
        lhs = np.ones_like(ts, dtype=complex)
        for p in phis:
            lhs = lhs * p
        rhs = np.zeros_like(ts, dtype=complex)
        for k in order:
            rhs = rhs + weights[k] * phis[k]
        return np.abs(lhs - rhs)

    return _max_over_grid(grid, pointwise)


def phisa_residual(model: CFModel, grid: GridSpec | None = None) -> Residual:
    """Max over the grid of ``|phi(t) phi(-t) - (phi(t) + phi(-t)) / 2|``.

    This is the mixture identity for ``mu = (1, -1)``, where ``theta = (1/2, 1/2)``.
    """
    grid = grid or GridSpec()

    def pointwise(ts):
        a = cf_eval(model, ts)
        b = cf_eval(model, -ts)
        return np.abs(a * b - 0.5 * (a + b))

    return _max_over_grid(grid, pointwise)
