"""Seeded Monte Carlo simulation of the received samples and empirical Pfa/Pd.

Trials are processed in fixed-size batches. Batch ``k`` draws from its own
Philox stream keyed by ``(seed, k)``, so an estimate depends only on the seed
and the trial count, never on how batches are scheduled or merged.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .channel import ChannelPhases
from .detection import DetectorConfig, FluctuationLaw, Observation, glrt_statistic
from .geometry import DetectionCase, SpacingRegime
from .ris import RisPhaseProgram, coherent_sum
from .snr import FluctuationModel

DEFAULT_BATCH = 1 << 16


class Hypothesis(enum.Enum):
    TARGET_PRESENT = "present"
    TARGET_ABSENT = "absent"


@dataclass(frozen=True)
class TrialConfig:
    seed: int
    trials: int
    hypothesis: Hypothesis = Hypothesis.TARGET_PRESENT

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("at least one trial is required")
        if not (0 <= self.seed < 2**64):
            raise ValueError("seed must be an unsigned 64-bit integer")


def batch_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(index,))))


@dataclass(frozen=True)
class EmpiricalRate:
    successes: int
    trials: int

    @property
    def estimate(self) -> float:
        return self.successes / self.trials

    @property
    def stderr(self) -> float:
        p = self.estimate
        return math.sqrt(p * (1.0 - p) / self.trials)

    def __add__(self, other: "EmpiricalRate") -> "EmpiricalRate":
        return EmpiricalRate(self.successes + other.successes, self.trials + other.trials)

    def deviation(self, reference: float) -> float:
        """|estimate - reference| in units of the binomial standard error."""
        diff = abs(self.estimate - reference)
        if self.stderr == 0.0:
            return 0.0 if diff == 0.0 else math.inf
        return diff / self.stderr

    def agrees_with(self, reference: float, k: float = 3.0) -> bool:
        return abs(self.estimate - reference) <= k * self.stderr


# -- signal model --------------------------------------------------------------


@dataclass(frozen=True)
class SignalModel:
    """Deterministic part of the received samples.

    ``indirect_rx`` and ``indirect_tx`` are the RIS coherent sums
    sum_l alpha_l e^{i(psi_t,l' + phi_l + psi_r,l)} for the receive (sr) and
    transmit (st) directions, excluding the random target factor.
    """

    alpha: float
    indirect_rx: complex
    indirect_tx: complex
    noise_power: float
    regime: SpacingRegime

    @classmethod
    def from_link(cls, link, phases: ChannelPhases, program: RisPhaseProgram,
                  regime: SpacingRegime | None = None) -> "SignalModel":
        regime = program.regime if regime is None else regime
        known = phases.known_target_phases(regime)
        return cls(
            alpha=link.alpha,
            indirect_rx=coherent_sum(link.alpha_sr, known, program.phi, phases.psi_r),
            indirect_tx=coherent_sum(link.alpha_st, known, program.phi, phases.psi_r),
            noise_power=link.P_w,
            regime=regime,
        )


@dataclass(frozen=True)
class TargetDraw:
    """Random target responses sqrt(sigma) e^{i beta} and sqrt(sigma_s) e^{i beta_s}."""

    direct: np.ndarray
    indirect: np.ndarray


def draw_rcs(law: FluctuationLaw, mean: float, size: int, rng: np.random.Generator) -> np.ndarray:
    if law is FluctuationLaw.NON_FLUCTUATING:
        return np.full(size, float(mean))
    if law is FluctuationLaw.EXPONENTIAL:
        return rng.exponential(mean, size)
    if law is FluctuationLaw.GAMMA:
        # shape 2: mean sigma_bar, variance sigma_bar^2 / 2
        return rng.exponential(mean / 2.0, size) + rng.exponential(mean / 2.0, size)
    raise ValueError(f"unknown fluctuation law {law}")


def draw_targets(model: FluctuationModel, regime: SpacingRegime, size: int,
                 rng: np.random.Generator) -> TargetDraw:
    """Closely spaced: one response shared by both paths. Widely: independent responses."""
    sigma = draw_rcs(model.law, model.sigma_bar, size, rng)
    beta = rng.uniform(0.0, 2 * np.pi, size)
    direct = np.sqrt(sigma) * np.exp(1j * beta)
    if regime is SpacingRegime.CLOSELY:
        return TargetDraw(direct=direct, indirect=direct)
    sigma_s = draw_rcs(model.law, model.sigma_s_bar, size, rng)
    beta_s = rng.uniform(0.0, 2 * np.pi, size)
    return TargetDraw(direct=direct, indirect=np.sqrt(sigma_s) * np.exp(1j * beta_s))


def complex_noise(power: float, size: int, rng: np.random.Generator) -> np.ndarray:
    scale = math.sqrt(power / 2.0)
    return scale * (rng.standard_normal(size) + 1j * rng.standard_normal(size))


def simulate_observation(signal: SignalModel, case: DetectionCase, epsilon: float,
                         draw: TargetDraw, rng: np.random.Generator,
                         hypothesis: Hypothesis = Hypothesis.TARGET_PRESENT) -> Observation:
    """Assemble x1 (and x2 for cases a/b) for every trial in ``draw``."""
    n = len(draw.direct)
    on = 1.0 if hypothesis is Hypothesis.TARGET_PRESENT else 0.0
    a, a_s = draw.direct * on, draw.indirect * on
    pw = signal.noise_power
    if case is DetectionCase.A:
        x1 = signal.alpha * a + complex_noise(pw, n, rng)
        x2 = signal.indirect_rx * a_s + complex_noise(pw, n, rng)
        return Observation(x1, x2, pw)
    direct = signal.alpha * math.sqrt(epsilon) * a
    indirect = signal.indirect_tx * math.sqrt(1.0 - epsilon) * a_s
    if case is DetectionCase.B:
        return Observation(direct + complex_noise(pw, n, rng),
                           indirect + complex_noise(pw, n, rng), pw)
    return Observation(direct + indirect + complex_noise(pw, n, rng), None, pw)


def estimate_rate(signal: SignalModel, case: DetectionCase, detector: DetectorConfig,
                  fluctuation: FluctuationModel, trials: TrialConfig, epsilon: float = 1.0,
                  batch_size: int = DEFAULT_BATCH) -> EmpiricalRate:
    """Fraction of trials whose GLRT statistic exceeds the detector threshold."""
    total = EmpiricalRate(0, 0)
    n_batches = -(-trials.trials // batch_size)
    for k in range(n_batches):
        size = min(batch_size, trials.trials - k * batch_size)
        rng = batch_rng(trials.seed, k)
        draw = draw_targets(fluctuation, signal.regime, size, rng)
        obs = simulate_observation(signal, case, epsilon, draw, rng, trials.hypothesis)
        stat = glrt_statistic(obs, detector)
        total = total + EmpiricalRate(int(np.count_nonzero(stat > detector.gamma)), size)
    return total


def synthetic_signal(snr_direct: float, snr_indirect: float, regime: SpacingRegime,
                     sigma_bar: float = 1.0, sigma_s_bar: float | None = None,
                     noise_power: float = 1.0) -> SignalModel:
    """Signal model with prescribed per-path SNRs alpha^2 sigma/P_w and |S|^2 sigma_s/P_w."""
    sigma_s_bar = sigma_bar if sigma_s_bar is None else sigma_s_bar
    alpha = math.sqrt(snr_direct * noise_power / sigma_bar)
    s = math.sqrt(snr_indirect * noise_power / sigma_s_bar)
    return SignalModel(alpha=alpha, indirect_rx=complex(s), indirect_tx=complex(s),
                       noise_power=noise_power, regime=regime)
