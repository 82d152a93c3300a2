"""scikit-learn compatible wrapper around the RIS-aided GLRT detectors."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_fraction, check_observations, check_positive, check_probability
from .detection import (
    DetectorConfig,
    DetectorKind,
    Observation,
    combiner_weights,
    detector_kind_for,
    glrt_statistic,
    threshold_from_pfa,
)
from .geometry import DetectionCase, SpacingRegime


class RisGlrtDetector(ClassifierMixin, BaseEstimator):
    """GLRT detector for a radar aided by a phase-aligned RIS.

    The detector structure follows from the beam configuration (``case``)
    and the spacing regime: a coherent combiner for closely spaced cases a
    and b, a two-observation energy detector for widely spaced cases a and
    b, and a single energy detector for case c. ``fit`` takes no training
    data; it fixes the threshold from ``pfa`` and the combining weights from
    the link amplitudes.

    Parameters
    ----------
    case : {"a", "b", "c"}
        Beam configuration.
    regime : {"closely", "widely"}
        Spacing of radar and RIS as seen by the target.
    pfa : float
        Design probability of false alarm, in (0, 1).
    epsilon : float
        Fraction of transmit power on the direct beam (cases b and c).
    alpha : float
        Direct-path amplitude.
    alpha_indirect : float
        Sum of the per-element RIS amplitudes for the relevant direction
        (receive for case a, transmit for cases b and c).
    noise_power : float
        Per-sample noise power P_w.

    Attributes
    ----------
    kind_ : DetectorKind
    threshold_ : float
    weights_ : tuple of float or None
        Combiner weights; None for energy detectors.
    n_observations_ : int
    classes_ : ndarray of shape (2,)
    """

    def __init__(self, case="a", regime="closely", pfa=1e-6, epsilon=1.0, alpha=1.0,
                 alpha_indirect=1.0, noise_power=1.0):
        self.case = case
        self.regime = regime
        self.pfa = pfa
        self.epsilon = epsilon
        self.alpha = alpha
        self.alpha_indirect = alpha_indirect
        self.noise_power = noise_power

    def fit(self, X=None, y=None):
        case = DetectionCase(self.case)
        regime = SpacingRegime(self.regime)
        check_probability(self.pfa)
        check_fraction(self.epsilon)
        check_positive(self.noise_power, "noise_power")
        check_positive(self.alpha, "alpha", strict=False)
        check_positive(self.alpha_indirect, "alpha_indirect", strict=False)

        self.kind_ = detector_kind_for(case, regime)
        self.threshold_ = threshold_from_pfa(self.kind_, self.pfa)
        if self.kind_ is DetectorKind.COHERENT_COMBINER:
            self.weights_ = combiner_weights(case, self.alpha, self.alpha_indirect, self.epsilon)
            if self.weights_ == (0.0, 0.0):
                raise ValueError("combiner weights are both zero")
        else:
            self.weights_ = None
        self.n_observations_ = self.kind_.n_observations
        self.classes_ = np.array([0, 1])
        return self

    def _config(self) -> DetectorConfig:
        return DetectorConfig(self.kind_, self.threshold_, self.weights_)

    def statistic(self, X) -> np.ndarray:
        """GLRT statistic for each row of complex observations ``X``."""
        check_is_fitted(self, "threshold_")
        X = check_observations(X, self.n_observations_)
        obs = Observation(X[:, 0], X[:, 1] if self.n_observations_ == 2 else None,
                          float(self.noise_power))
        return glrt_statistic(obs, self._config())

    def decision_function(self, X) -> np.ndarray:
        return self.statistic(X) - self.threshold_

    def predict(self, X) -> np.ndarray:
        return (self.decision_function(X) > 0).astype(int)

    def __sklearn_tags__(self):
        tags = super().__sklearn_tags__()
        tags.requires_fit = True
        tags.target_tags.required = False
        return tags
