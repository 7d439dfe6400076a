"""Pure NumPy simulation kernel (fallback for the compiled extension).

The Cython twin in ``_speedups.pyx`` performs the same arithmetic in the
same order; the two agree to within a few ulps (NumPy's SIMD log1p/pow may
round differently from scalar libm in the last bit).
"""
from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"


def simulate_replicates(
    u: np.ndarray,
    neg_inv_alpha: float,
    lam: float,
    c: float,
    k_sel: float,
    k_kl: float,
    k_el: float,
    m_sel: float,
    m_kl: float,
    m_el: float,
) -> np.ndarray:
    """Per-replicate statistic and estimator values from uniform draws.

    ``u`` has one replicate per row. Each row is mapped through the
    quantile transform x = lam*((1-u)^(-1/alpha) - 1), T = sum(log1p(x/lam))
    is accumulated with Kahan compensation in column order, and the six
    estimator/E-MSE values are formed from the precomputed coefficients.

    Returns an array of shape (reps, 7) with columns
    (T, eb_sel, eb_kl, eb_el, emse_sel, emse_kl, emse_el).
    """
    reps, n = u.shape
    total = np.zeros(reps)
    comp = np.zeros(reps)
    for j in range(n):
        q = np.power(1.0 - u[:, j], neg_inv_alpha) - 1.0
        x = lam * q
        term = np.log1p(x / lam)
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t

    out = np.empty((reps, 7))
    log_term = np.log1p(c / total)
    den = total * (total + c)
    out[:, 0] = total
    out[:, 1] = k_sel * log_term
    out[:, 2] = k_kl * log_term
    out[:, 3] = k_el * log_term
    out[:, 4] = m_sel / den
    out[:, 5] = m_kl / den
    out[:, 6] = m_el / den
    return out
