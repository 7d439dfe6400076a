"""Seeded Monte Carlo harness for estimator performance tables.

Each grid cell draws ``reps`` samples of size ``n`` from a known Lomax
model via the inverse-transform map, evaluates the three E-Bayes
estimators and their E-MSE per replicate, and reports per-loss means with
Monte Carlo standard errors.

Reproducibility contract
------------------------
* The per-cell stream is Philox keyed by
  ``SeedSequence(entropy=seed, spawn_key=(cell_index,))``.
* Replicate r of a cell owns the counter range starting at block
  ``r * ceil(n/4)`` of that stream (Philox emits 4 doubles per counter
  block, so rows are padded to a multiple of 4 draws to stay
  block-aligned). Any replicate can be regenerated in isolation.
* Means and standard errors are reduced with ``math.fsum`` (exactly
  rounded, hence independent of chunking and thread schedule).

Cells are evaluated in parallel when ``threads > 1``; output is
byte-identical for any thread count.

The inner loop runs in the compiled kernel ``_speedups`` when available,
otherwise in the NumPy twin ``_kernel_py``; set LOMAX_EBAYES_BACKEND to
``cython`` or ``python`` to force one.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
from numpy.random import Generator, Philox, SeedSequence

from .emse import kl_mse_integral
from .estimators import LossKind, kl_integral

__all__ = [
    "SimConfig",
    "SimCellResult",
    "VALUE_COLUMNS",
    "simulation_backend",
    "replicate_values",
    "run_cell",
    "run_table",
]

_requested = os.environ.get("LOMAX_EBAYES_BACKEND", "auto").lower()
if _requested == "python":
    from . import _kernel_py as _kernel
elif _requested in ("auto", "cython"):
    try:
        from . import _speedups as _kernel  # type: ignore[no-redef]
    except ImportError:
        if _requested == "cython":
            raise
        from . import _kernel_py as _kernel
else:
    raise ImportError(
        f"LOMAX_EBAYES_BACKEND must be auto, cython or python, got {_requested!r}"
    )

VALUE_COLUMNS = ("t_stat", "eb_sel", "eb_kl", "eb_el",
                 "emse_sel", "emse_kl", "emse_el")

_CHUNK_ROWS = 16384


def simulation_backend() -> str:
    """Name of the active kernel backend ('cython' or 'python')."""
    return _kernel.BACKEND_NAME


@dataclass(frozen=True)
class SimConfig:
    """One simulation cell: true model, hyperprior bound, and run size."""

    alpha_true: float
    lam: float
    c: float
    n: int
    reps: int
    seed: int

    def __post_init__(self) -> None:
        if not (self.alpha_true > 0.0):
            raise ValueError(f"alpha_true must be > 0, got {self.alpha_true}")
        if not (self.lam > 0.0):
            raise ValueError(f"lam must be > 0, got {self.lam}")
        if not (self.c > 0.0):
            raise ValueError(f"c must be > 0, got {self.c}")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.reps < 1:
            raise ValueError(f"reps must be >= 1, got {self.reps}")
        if not (0 <= self.seed < 2**64):
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")


@dataclass(frozen=True)
class SimCellResult:
    """Per-loss means and Monte Carlo standard errors over the replicates."""

    config: SimConfig
    eb_mean: Mapping[LossKind, float]
    emse_mean: Mapping[LossKind, float]
    eb_stderr: Mapping[LossKind, float]
    emse_stderr: Mapping[LossKind, float]


def _cell_seed_sequence(seed: int, cell_index: int) -> SeedSequence:
    return SeedSequence(entropy=seed, spawn_key=(cell_index,))


def _cell_coefficients(alpha: float, n: int, c: float) -> tuple[float, ...]:
    # Shared by both kernels so scalar rounding is identical everywhere.
    return (
        -1.0 / alpha,
        (2.0 * n + 1.0) / (2.0 * c),
        kl_integral(n) / c,
        (2.0 * n - 1.0) / (2.0 * c),
        (2.0 * n + 1.0) / 2.0,
        2.0 * kl_mse_integral(n),
        (2.0 * n + 3.0) / 2.0,
    )


def replicate_values(config: SimConfig, cell_index: int = 0) -> np.ndarray:
    """Per-replicate (T, eb_*, emse_*) values, shape (reps, 7).

    Row r is a pure function of (seed, cell_index, r); the uniform block
    is drawn in fixed-size chunks so memory stays bounded without
    affecting the values.
    """
    ss = _cell_seed_sequence(config.seed, cell_index)
    n = config.n
    blocks_per_rep = (n + 3) // 4
    width = 4 * blocks_per_rep
    neg_inv_alpha, k_sel, k_kl, k_el, m_sel, m_kl, m_el = _cell_coefficients(
        config.alpha_true, n, config.c
    )

    out = np.empty((config.reps, 7))
    for start in range(0, config.reps, _CHUNK_ROWS):
        rows = min(_CHUNK_ROWS, config.reps - start)
        bitgen = Philox(ss)
        if start:
            bitgen.advance(start * blocks_per_rep)
        u = Generator(bitgen).random((rows, width))[:, :n]
        u = np.ascontiguousarray(u)
        out[start:start + rows] = _kernel.simulate_replicates(
            u, neg_inv_alpha, config.lam, config.c,
            k_sel, k_kl, k_el, m_sel, m_kl, m_el,
        )

    if __debug__:
        # Ordering holds per replicate, not just in the mean.
        assert np.all(out[:, 3] < out[:, 2]) and np.all(out[:, 2] < out[:, 1])
        assert np.all(out[:, 4] < out[:, 5]) and np.all(out[:, 5] < out[:, 6])
        assert np.all(out[:, 0] > 0.0)
    return out


def _column_stats(col: np.ndarray) -> tuple[float, float]:
    reps = col.shape[0]
    mean = math.fsum(col.tolist()) / reps
    if reps < 2:
        return mean, float("nan")
    sq = math.fsum(((col - mean) ** 2).tolist())
    return mean, math.sqrt(sq / (reps * (reps - 1)))


def run_cell(config: SimConfig, cell_index: int = 0) -> SimCellResult:
    """Simulate one cell and aggregate per-loss means and standard errors."""
    values = replicate_values(config, cell_index)
    stats = [_column_stats(values[:, k]) for k in range(1, 7)]
    losses = (LossKind.SEL, LossKind.KL, LossKind.EL)
    return SimCellResult(
        config=config,
        eb_mean={loss: stats[i][0] for i, loss in enumerate(losses)},
        eb_stderr={loss: stats[i][1] for i, loss in enumerate(losses)},
        emse_mean={loss: stats[i + 3][0] for i, loss in enumerate(losses)},
        emse_stderr={loss: stats[i + 3][1] for i, loss in enumerate(losses)},
    )


def run_table(
    alpha_true: float,
    lam: float,
    c_values: Sequence[float],
    n_values: Sequence[int],
    reps: int,
    seed: int,
    threads: int = 1,
) -> list[SimCellResult]:
    """Simulate the Cartesian grid of cells, c outer and n inner.

    Cell (i_c, i_n) uses the stream index i_c * len(n_values) + i_n, so
    results do not depend on the evaluation schedule.
    """
    if not c_values or not n_values:
        raise ValueError("c_values and n_values must be nonempty")
    cells = [
        (i_c * len(n_values) + i_n,
         SimConfig(alpha_true=alpha_true, lam=lam, c=c, n=n, reps=reps, seed=seed))
        for i_c, c in enumerate(c_values)
        for i_n, n in enumerate(n_values)
    ]
    if threads <= 1:
        return [run_cell(cfg, idx) for idx, cfg in cells]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda pair: run_cell(pair[1], pair[0]), cells))
