"""Lomax (Pareto type II) distribution: densities, survival quantities,
moments, the sufficient statistic, and inverse-transform sampling.

Everything here is a pure function of its inputs; parameter objects are
frozen and safe to share across threads.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

__all__ = [
    "LomaxParams",
    "Sample",
    "MomentUndefinedError",
    "pdf",
    "cdf",
    "reliability",
    "hazard",
    "mean",
    "variance",
    "sufficient_t",
    "sample_inverse",
]


class MomentUndefinedError(ValueError):
    """The requested moment does not exist for the given shape parameter."""


@dataclass(frozen=True)
class LomaxParams:
    """Shape ``alpha`` and scale ``lam`` of a Lomax distribution."""

    alpha: float
    lam: float

    def __post_init__(self) -> None:
        if not (self.alpha > 0.0 and math.isfinite(self.alpha)):
            raise ValueError(f"alpha must be a positive finite real, got {self.alpha}")
        if not (self.lam > 0.0 and math.isfinite(self.lam)):
            raise ValueError(f"lam must be a positive finite real, got {self.lam}")


@dataclass(frozen=True)
class Sample:
    """Observations with the cached statistic T = sum(ln(1 + x_i/lam)).

    ``t_stat`` is only meaningful for the ``lam`` it was computed with,
    which is stored alongside it.
    """

    values: tuple[float, ...]
    n: int
    t_stat: float
    lam: float

    @classmethod
    def from_values(cls, values: Sequence[float], lam: float) -> "Sample":
        t = sufficient_t(values, lam)
        return cls(values=tuple(float(v) for v in values), n=len(values),
                   t_stat=t, lam=float(lam))


def _check_nonnegative(x: float, name: str) -> None:
    if not (x >= 0.0):
        raise ValueError(f"{name} must be >= 0, got {x}")


def pdf(params: LomaxParams, x: float) -> float:
    """Density (alpha/lam) * (1 + x/lam)^-(alpha+1) for x >= 0."""
    _check_nonnegative(x, "x")
    return (params.alpha / params.lam) * math.exp(
        -(params.alpha + 1.0) * math.log1p(x / params.lam)
    )


def cdf(params: LomaxParams, x: float) -> float:
    """Distribution function 1 - (1 + x/lam)^-alpha for x >= 0."""
    _check_nonnegative(x, "x")
    return -math.expm1(-params.alpha * math.log1p(x / params.lam))


def reliability(params: LomaxParams, t: float) -> float:
    """Survival probability (1 + t/lam)^-alpha, the exact complement of cdf."""
    _check_nonnegative(t, "t")
    return 1.0 - cdf(params, t)


def hazard(params: LomaxParams, t: float) -> float:
    """Failure rate (alpha/lam) / (1 + t/lam); equals pdf/reliability."""
    _check_nonnegative(t, "t")
    return (params.alpha / params.lam) / (1.0 + t / params.lam)


def mean(params: LomaxParams) -> float:
    """Expectation lam/(alpha - 1); requires alpha > 1."""
    if params.alpha <= 1.0:
        raise MomentUndefinedError(
            f"mean requires alpha > 1, got alpha={params.alpha}"
        )
    return params.lam / (params.alpha - 1.0)


def variance(params: LomaxParams) -> float:
    """Variance alpha*lam^2 / ((alpha-1)^2 (alpha-2)); requires alpha > 2."""
    if params.alpha <= 2.0:
        raise MomentUndefinedError(
            f"variance requires alpha > 2, got alpha={params.alpha}"
        )
    a, lam = params.alpha, params.lam
    return a * lam * lam / ((a - 1.0) ** 2 * (a - 2.0))


def sufficient_t(values: Sequence[float], lam: float) -> float:
    """Statistic T = sum(ln(1 + x_i/lam)) over the observations.

    Summed with math.fsum (exactly rounded) in input order; each term uses
    log1p so small x/lam do not lose precision.
    """
    if len(values) == 0:
        raise ValueError("values must be a nonempty sequence")
    if not (lam > 0.0):
        raise ValueError(f"lam must be > 0, got {lam}")
    for v in values:
        if not (v > 0.0):
            raise ValueError(f"all observations must be > 0, got {v}")
    return math.fsum(math.log1p(v / lam) for v in values)


def sample_inverse(params: LomaxParams, u: float) -> float:
    """Inverse-transform draw lam * ((1-u)^(-1/alpha) - 1) for u in [0, 1).

    Round-trips through cdf to within floating round-off. u = 1 is
    excluded (the quantile is unbounded there).
    """
    if not (0.0 <= u < 1.0):
        raise ValueError(f"u must lie in [0, 1), got {u}")
    return params.lam * (math.pow(1.0 - u, -1.0 / params.alpha) - 1.0)
