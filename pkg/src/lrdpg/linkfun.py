"""Numerically stable logistic link helpers shared across modules."""

from __future__ import annotations

import numpy as np

__all__ = ["sigmoid", "logit", "log_sigmoid"]


def sigmoid(x):
    """1 / (1 + exp(-x)), stable for |x| up to the float64 range."""
    x = np.asarray(x, dtype=np.float64)
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out if out.ndim else float(out)


def logit(p):
    """Inverse logistic link log(p / (1 - p)) for p in (0, 1)."""
    p = np.asarray(p, dtype=np.float64)
    if np.any(p <= 0.0) or np.any(p >= 1.0):
        raise ValueError("logit requires values strictly inside (0, 1)")
    out = np.log(p) - np.log1p(-p)
    return out if out.ndim else float(out)


def log_sigmoid(x):
    """log(sigmoid(x)) without overflow: -softplus(-x)."""
    x = np.asarray(x, dtype=np.float64)
    out = np.where(x > 0, -np.log1p(np.exp(-np.abs(x))),
                   x - np.log1p(np.exp(-np.abs(x))))
    return out if out.ndim else float(out)
