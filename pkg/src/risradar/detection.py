"""GLRT statistics, false-alarm thresholds and closed-form detection probabilities.

Statistics are normalized by the noise power, so under the null hypothesis
a single-observation statistic is Exp(1) and the two-observation energy
statistic is Gamma(2, 1). Fluctuation laws refer to the target RCS: constant
(Marcum), exponential (Swerling 1/2) or gamma with shape 2 (Swerling 3/4).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq
from scipy.special import ive

from ._validation import check_positive, check_probability
from .exceptions import UnsupportedError
from .geometry import DetectionCase, SpacingRegime


class FluctuationLaw(enum.Enum):
    NON_FLUCTUATING = "nonfluctuating"
    EXPONENTIAL = "exponential"
    GAMMA = "gamma"


class DetectorKind(enum.Enum):
    COHERENT_COMBINER = "coherent_combiner"
    SINGLE_ENERGY = "single_energy"
    DUAL_ENERGY = "dual_energy"

    @property
    def n_observations(self) -> int:
        return 1 if self is DetectorKind.SINGLE_ENERGY else 2

    @property
    def null_degrees(self) -> int:
        """Number of complex noise dimensions in the null statistic."""
        return 2 if self is DetectorKind.DUAL_ENERGY else 1


def detector_kind_for(case: DetectionCase, regime: SpacingRegime) -> DetectorKind:
    if case is DetectionCase.C:
        return DetectorKind.SINGLE_ENERGY
    if regime is SpacingRegime.CLOSELY:
        return DetectorKind.COHERENT_COMBINER
    if regime is SpacingRegime.WIDELY:
        return DetectorKind.DUAL_ENERGY
    raise UnsupportedError(f"no GLRT defined for case {case.value} in regime {regime.value}")


@dataclass(frozen=True)
class Observation:
    """Matched-filter outputs; ``x1``/``x2`` may be arrays holding many trials."""

    x1: np.ndarray
    x2: np.ndarray | None
    noise_power: float

    @property
    def n_observations(self) -> int:
        return 1 if self.x2 is None else 2


@dataclass(frozen=True)
class DetectorConfig:
    kind: DetectorKind
    gamma: float
    weights: tuple[float, float] | None = None

    def __post_init__(self):
        if not (self.gamma >= 0.0 and math.isfinite(self.gamma)):
            raise ValueError(f"threshold must be finite and non-negative, got {self.gamma}")
        if (self.weights is not None) != (self.kind is DetectorKind.COHERENT_COMBINER):
            raise ValueError("weights are required for, and only for, the coherent combiner")


def combiner_weights(case: DetectionCase, alpha: float, alpha_indirect: float,
                     epsilon: float = 1.0) -> tuple[float, float]:
    """Real combining weights of the closely-spaced GLRT."""
    if case is DetectionCase.A:
        return float(alpha), float(alpha_indirect)
    if case is DetectionCase.B:
        return float(alpha * np.sqrt(epsilon)), float(alpha_indirect * np.sqrt(1.0 - epsilon))
    raise ValueError("the coherent combiner applies to cases a and b only")


def glrt_statistic(obs: Observation, config: DetectorConfig) -> np.ndarray:
    if obs.n_observations != config.kind.n_observations:
        raise ValueError(
            f"{config.kind.value} detector needs {config.kind.n_observations} observation(s), "
            f"got {obs.n_observations}"
        )
    pw = obs.noise_power
    x1 = np.asarray(obs.x1)
    if config.kind is DetectorKind.SINGLE_ENERGY:
        return np.abs(x1) ** 2 / pw
    x2 = np.asarray(obs.x2)
    if config.kind is DetectorKind.DUAL_ENERGY:
        return (np.abs(x1) ** 2 + np.abs(x2) ** 2) / pw
    w1, w2 = config.weights
    norm = w1 * w1 + w2 * w2
    if norm == 0.0:
        raise ValueError("combiner weight vector is zero")
    return np.abs(w1 * x1 + w2 * x2) ** 2 / (norm * pw)


# -- false alarm ---------------------------------------------------------------


def pfa_from_threshold(kind: DetectorKind, gamma: float) -> float:
    gamma = check_positive(gamma, "gamma", strict=False)
    if kind.null_degrees == 1:
        return math.exp(-gamma)
    return math.exp(-gamma) * (1.0 + gamma)


def threshold_from_pfa(kind: DetectorKind, pfa: float) -> float:
    """Invert the null tail. Single observation: -ln(Pfa); dual: root of e^-g (1+g) = Pfa."""
    pfa = check_probability(pfa, "pfa")
    log_pfa = math.log(pfa)
    if kind.null_degrees == 1:
        return -log_pfa

    def f(g):
        return -g + math.log1p(g) - log_pfa

    # f(0) = -log_pfa > 0 and f decreases monotonically; bracket by doubling
    hi = max(1.0, -log_pfa)
    while f(hi) > 0:
        hi *= 2.0
    return brentq(f, 0.0, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500)


# -- Marcum Q --------------------------------------------------------------------


def _marcum_q_scalar(a: float, b: float) -> float:
    if a < 0 or b < 0:
        raise ValueError("Marcum Q arguments must be non-negative")
    if b == 0.0:
        return 1.0
    if a == 0.0:
        return math.exp(-0.5 * b * b)
    x = a * b
    # I_k(x) e^{-(a^2+b^2)/2} = ive(k, x) e^{-(a-b)^2/2}; keep the series in log space
    base = -0.5 * (a - b) ** 2
    if a < b:
        log_ratio, k, sign, acc = math.log(a) - math.log(b), 0, 1.0, 0.0
    else:
        log_ratio, k, sign, acc = math.log(b) - math.log(a), 1, -1.0, 0.0
    peak = -math.inf
    while k < 100_000:
        iv = ive(k, x)
        if iv == 0.0:
            break
        log_term = base + k * log_ratio + math.log(iv)
        peak = max(peak, log_term)
        acc += math.exp(log_term)
        # terms decay monotonically once k exceeds ~sqrt(x)
        if log_term < peak - 50.0 and k * k > x:
            break
        k += 1
    return acc if sign > 0 else 1.0 - acc


def marcum_q(a, b):
    """First-order Marcum Q-function Q_1(a, b).

    Uses the Bessel series ``e^{-(a^2+b^2)/2} sum_k (a/b)^k I_k(ab)`` for
    ``a < b`` and its complement for ``a >= b``, with exponentially scaled
    Bessel functions so that neither factor overflows.
    """
    if np.ndim(a) == 0 and np.ndim(b) == 0:
        return _marcum_q_scalar(float(a), float(b))
    a, b = np.broadcast_arrays(np.asarray(a, dtype=float), np.asarray(b, dtype=float))
    out = np.empty(a.shape)
    for idx in np.ndindex(a.shape):
        out[idx] = _marcum_q_scalar(a[idx], b[idx])
    return out


# -- detection probability -------------------------------------------------------


def pd_single(law: FluctuationLaw, snr, gamma):
    """Pd of a single-observation energy (or combiner) statistic against threshold ``gamma``."""
    snr = np.asarray(snr, dtype=float)
    if np.any(snr < 0):
        raise ValueError("SNR must be non-negative")
    if law is FluctuationLaw.NON_FLUCTUATING:
        out = marcum_q(np.sqrt(2.0 * snr), np.sqrt(2.0 * np.asarray(gamma, dtype=float)))
    elif law is FluctuationLaw.EXPONENTIAL:
        out = np.exp(-gamma / (1.0 + snr))
    elif law is FluctuationLaw.GAMMA:
        h = 1.0 + snr / 2.0
        out = (1.0 + gamma * (snr / 2.0) / h**2) * np.exp(-gamma / h)
    else:
        raise UnsupportedError(f"unknown fluctuation law {law}")
    return float(out) if np.ndim(out) == 0 else out


def pd_dual_exponential(snr1, snr2, gamma):
    """Pd of |x1|^2 + |x2|^2 with independent exponential targets of SNRs snr1, snr2.

    The statistic is a sum of two exponentials with means 1 + snr_i, whose tail is
    ``[m1 e^{-g/m1} - m2 e^{-g/m2}] / (m1 - m2)``. Nearly equal SNRs switch to
    the Erlang-2 limit ``(1 + g/m) e^{-g/m}``.
    """
    s1, s2, g = np.broadcast_arrays(np.asarray(snr1, dtype=float),
                                    np.asarray(snr2, dtype=float),
                                    np.asarray(gamma, dtype=float))
    if np.any(s1 < 0) or np.any(s2 < 0):
        raise ValueError("SNR must be non-negative")
    m1, m2 = 1.0 + s1, 1.0 + s2
    equal = np.abs(s1 - s2) < 1e-9 * m1
    diff = np.where(equal, 1.0, s1 - s2)
    # m1 e^{-g/m1} - m2 e^{-g/m2} = diff e^{-g/m1} + m2 e^{-g/m2} expm1(g diff / (m1 m2)),
    # which avoids cancellation when both SNRs are small
    general = np.exp(-g / m1) + m2 * np.exp(-g / m2) * np.expm1(g * diff / (m1 * m2)) / diff
    m = 0.5 * (m1 + m2)
    erlang = (1.0 + g / m) * np.exp(-g / m)
    out = np.where(equal, erlang, general)
    return float(out) if out.ndim == 0 else out


def pd_dual_exponential_as_printed(snr1, snr2, gamma):
    """Two-SNR expression with the (1+snr) coefficients transposed.

    Kept only as the negative control for Monte Carlo arbitration; its
    equal-SNR limit is e^{-a}(a - 1) rather than the Erlang tail.
    """
    s1, s2 = float(snr1), float(snr2)
    if s1 == s2:
        raise ValueError("expression is singular for equal SNRs")
    return ((1 + s2) * math.exp(-gamma / (1 + s1)) - (1 + s1) * math.exp(-gamma / (1 + s2))) / (s1 - s2)


def pd_closed_form(law: FluctuationLaw, snr, gamma: float, kind: DetectorKind):
    """Dispatch to the closed form for ``kind``.

    ``snr`` is a scalar for single-observation kinds (coherent combiner and
    single energy) and a pair ``(snr1, snr2)`` for the dual energy detector.
    """
    gamma = check_positive(gamma, "gamma")
    if kind.null_degrees == 1:
        if np.ndim(snr) != 0:
            raise ValueError(f"{kind.value} detector takes a single SNR")
        return pd_single(law, snr, gamma)
    if law is not FluctuationLaw.EXPONENTIAL:
        raise UnsupportedError(
            f"no closed-form two-observation Pd for the {law.value} law; use Monte Carlo"
        )
    s1, s2 = snr
    return pd_dual_exponential(s1, s2, gamma)
