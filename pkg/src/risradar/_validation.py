"""Input validation helpers shared across modules."""

from __future__ import annotations

import numbers

import numpy as np


def check_positive(value, name: str, *, strict: bool = True) -> float:
    """Return ``value`` as float, raising ValueError unless it is positive."""
    if not isinstance(value, numbers.Real) or isinstance(value, bool):
        raise TypeError(f"{name} must be a real number, got {type(value).__name__}")
    value = float(value)
    if not np.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value}")
    if strict and value <= 0.0:
        raise ValueError(f"{name} must be > 0, got {value}")
    if not strict and value < 0.0:
        raise ValueError(f"{name} must be >= 0, got {value}")
    return value


def check_fraction(value, name: str = "epsilon") -> float:
    """Power-split fractions live in the closed interval [0, 1]."""
    value = float(value)
    if not (0.0 <= value <= 1.0):
        raise ValueError(f"{name} must lie in [0, 1], got {value}")
    return value


def check_probability(value, name: str = "pfa") -> float:
    """Probabilities used for threshold inversion live in the open interval (0, 1)."""
    value = float(value)
    if not (0.0 < value < 1.0):
        raise ValueError(f"{name} must lie in (0, 1), got {value}")
    return value


def as_vec3(value, name: str) -> np.ndarray:
    arr = np.asarray(value, dtype=float)
    if arr.shape != (3,):
        raise ValueError(f"{name} must have exactly three components, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must have finite components, got {arr}")
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


def check_observations(X, n_observations: int) -> np.ndarray:
    """Coerce detector input to a complex array of shape (n_samples, n_observations).

    A 1-D input is accepted for single-observation detectors and is
    interpreted as one observation per sample.
    """
    X = np.asarray(X)
    if X.dtype.kind not in "biufc":
        raise TypeError(f"observations must be numeric, got dtype {X.dtype}")
    X = X.astype(complex, copy=False)
    if X.ndim == 1:
        if n_observations != 1:
            raise ValueError(
                f"expected observations of shape (n_samples, {n_observations}), got 1-D input"
            )
        X = X[:, None]
    if X.ndim != 2 or X.shape[1] != n_observations:
        raise ValueError(
            f"expected observations of shape (n_samples, {n_observations}), got {X.shape}"
        )
    if not np.all(np.isfinite(X)):
        raise ValueError("observations contain NaN or infinite values")
    return X
