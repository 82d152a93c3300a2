"""SNRs, RIS gains, power-split optimization and the far-field approximations."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from ._validation import check_fraction
from .channel import LinkBudget
from .detection import FluctuationLaw, pd_dual_exponential
from .exceptions import UnsupportedError
from .geometry import DetectionCase, SpacingRegime, direction_angles


@dataclass(frozen=True)
class GainFactors:
    K_sr: float
    K_st: float


@dataclass(frozen=True)
class FluctuationModel:
    """Target RCS law seen from the radar (sigma) and from the RIS (sigma_s).

    Bounds default to the degenerate interval at the mean.
    """

    law: FluctuationLaw
    sigma_bar: float
    sigma_s_bar: float | None = None
    sigma_bounds: tuple[float, float] | None = None
    sigma_s_bounds: tuple[float, float] | None = None

    def __post_init__(self):
        if self.sigma_s_bar is None:
            object.__setattr__(self, "sigma_s_bar", self.sigma_bar)
        if self.sigma_bounds is None:
            object.__setattr__(self, "sigma_bounds", (self.sigma_bar, self.sigma_bar))
        if self.sigma_s_bounds is None:
            object.__setattr__(self, "sigma_s_bounds", (self.sigma_s_bar, self.sigma_s_bar))
        for mean, (lo, hi), name in ((self.sigma_bar, self.sigma_bounds, "sigma"),
                                     (self.sigma_s_bar, self.sigma_s_bounds, "sigma_s")):
            if mean < 0 or lo < 0 or lo > hi:
                raise ValueError(f"invalid {name} bounds [{lo}, {hi}]")
            if not (lo <= mean <= hi):
                raise ValueError(f"mean {name} {mean} outside its bounds [{lo}, {hi}]")

    @property
    def worst_case_ratio(self) -> float:
        """sigma_s,min / sigma_min."""
        return self.sigma_s_bounds[0] / self.sigma_bounds[0]


@dataclass(frozen=True)
class SnrReport:
    snr0: float
    case: DetectionCase
    regime: SpacingRegime
    epsilon: float | None
    snr_values: tuple[float, ...]

    @property
    def effective_snr(self) -> float:
        """SNR at the input of a single-threshold test.

        For the coherent combiner this is the sum of the per-observation
        values; two-observation energy detection has no single equivalent.
        """
        if len(self.snr_values) == 1 or self.regime is SpacingRegime.CLOSELY:
            return float(sum(self.snr_values))
        raise ValueError("two-observation energy detection has no single effective SNR")


def snr0(alpha: float, sigma_bar: float, P_w: float) -> float:
    if P_w <= 0:
        raise ValueError("noise power must be positive")
    return alpha**2 * sigma_bar / P_w


def gains(link: LinkBudget) -> GainFactors:
    """K = (sum_l alpha_l / alpha)^2 for both directions."""
    if link.alpha <= 0:
        raise ValueError("direct amplitude is zero; RIS gains are undefined")
    return GainFactors(K_sr=float((np.sum(link.alpha_sr) / link.alpha) ** 2),
                       K_st=float((np.sum(link.alpha_st) / link.alpha) ** 2))


def gains_distance_form(rho: float, d_t: float, G_rt: float, G_rs, S_sr, S_st, d_r_l) -> GainFactors:
    """K = rho^2 / (4 pi d_t^2 G_rt) * (sum_l sqrt(G_rs,l S_l) / d_r,l)^2."""
    G_rs, d_r_l = np.asarray(G_rs, dtype=float), np.asarray(d_r_l, dtype=float)
    pre = rho**2 / (4 * np.pi * d_t**2 * G_rt)
    k_sr = pre * np.sum(np.sqrt(G_rs * np.asarray(S_sr)) / d_r_l) ** 2
    k_st = pre * np.sum(np.sqrt(G_rs * np.asarray(S_st)) / d_r_l) ** 2
    return GainFactors(K_sr=float(k_sr), K_st=float(k_st))


# -- closely spaced ------------------------------------------------------------


def snr_closely(case: DetectionCase, snr0: float, K: GainFactors,
                epsilon: float | None = None) -> SnrReport:
    """Per-observation SNRs after phase alignment with a common target response.

    Cases a and b report two values whose sum is the combiner output SNR:
    SNR_0 (1 + K_sr) and SNR_0 (eps + K_st (1 - eps)). Case c reports the single
    value SNR_0 (sqrt(eps) + sqrt(K_st (1 - eps)))^2.
    """
    if case is DetectionCase.A:
        values = (snr0, snr0 * K.K_sr)
    else:
        if epsilon is None:
            raise ValueError(f"case {case.value} needs a power split epsilon")
        epsilon = check_fraction(epsilon)
        if case is DetectionCase.B:
            values = (snr0 * epsilon, snr0 * K.K_st * (1.0 - epsilon))
        else:
            values = (snr0 * (np.sqrt(epsilon) + np.sqrt(K.K_st * (1.0 - epsilon))) ** 2,)
    return SnrReport(snr0=snr0, case=case, regime=SpacingRegime.CLOSELY, epsilon=epsilon,
                     snr_values=tuple(float(v) for v in values))


def optimal_split_closely(case: DetectionCase, K_st: float) -> float:
    if K_st < 0:
        raise ValueError("K_st must be non-negative")
    if case is DetectionCase.B:
        return 1.0 if K_st <= 1.0 else 0.0
    if case is DetectionCase.C:
        return 1.0 / (1.0 + K_st)
    raise ValueError("case a has a single transmit beam; there is no power split")


# -- widely spaced -------------------------------------------------------------


def snr_widely(case: DetectionCase, snr0: float, K: GainFactors, epsilon: float | None,
               sigma_bar: float, sigma_s_bar: float) -> SnrReport:
    """SNRs with independent target responses on the direct and RIS paths."""
    if sigma_bar <= 0:
        raise ValueError("mean RCS seen by the radar must be positive")
    r = sigma_s_bar / sigma_bar
    if case is DetectionCase.A:
        values = (snr0, snr0 * K.K_sr * r)
    else:
        if epsilon is None:
            raise ValueError(f"case {case.value} needs a power split epsilon")
        epsilon = check_fraction(epsilon)
        if case is DetectionCase.B:
            values = (epsilon * snr0, (1.0 - epsilon) * snr0 * K.K_st * r)
        else:
            values = (snr0 * (epsilon + (1.0 - epsilon) * K.K_st * r),)
    return SnrReport(snr0=snr0, case=case, regime=SpacingRegime.WIDELY, epsilon=epsilon,
                     snr_values=tuple(float(v) for v in values))


def worst_case_pd_case_b(epsilon, K_st: float, snr0_min: float, ratio_min: float, gamma: float):
    """Case-b dual-energy Pd at the lower RCS bounds (exponential law)."""
    epsilon = np.asarray(epsilon, dtype=float)
    return pd_dual_exponential(epsilon * snr0_min,
                               (1.0 - epsilon) * snr0_min * K_st * ratio_min, gamma)


def optimal_split_widely(case: DetectionCase, K_st: float, model: FluctuationModel,
                         gamma: float | None = None, snr0_min: float | None = None,
                         grid_step: float = 1e-3) -> float:
    """Power split maximizing the worst case over the RCS bounds.

    Case c maximizes the worst-case SNR, giving an all-or-nothing split.
    Case b maximizes the worst-case Pd, which is attained at the lower
    bounds because Pd is nondecreasing in each SNR; ``snr0_min`` is SNR_0
    evaluated at sigma_min. The search is a uniform grid followed by a
    bounded scalar refinement around the best grid point.
    """
    if K_st < 0:
        raise ValueError("K_st must be non-negative")
    ratio = model.worst_case_ratio
    if case is DetectionCase.C:
        return 1.0 if K_st * ratio <= 1.0 else 0.0
    if case is not DetectionCase.B:
        raise ValueError("case a has a single transmit beam; there is no power split")
    if model.law is not FluctuationLaw.EXPONENTIAL:
        raise UnsupportedError("worst-case Pd optimization needs the exponential two-observation Pd")
    if gamma is None or snr0_min is None:
        raise ValueError("case b needs the threshold and the worst-case SNR_0")

    grid = np.linspace(0.0, 1.0, int(round(1.0 / grid_step)) + 1)
    values = worst_case_pd_case_b(grid, K_st, snr0_min, ratio, gamma)
    i = int(np.argmax(values))
    best_eps, best_val = float(grid[i]), float(values[i])
    lo, hi = max(0.0, best_eps - grid_step), min(1.0, best_eps + grid_step)
    res = minimize_scalar(lambda e: -worst_case_pd_case_b(e, K_st, snr0_min, ratio, gamma),
                          bounds=(lo, hi), method="bounded", options={"xatol": 1e-10})
    if res.success and -res.fun > best_val:
        best_eps = float(res.x)
    return best_eps


# -- far-field approximations -----------------------------------------------------


def ris_effective_area(n_elements: int, wavelength: float, theta_r: float, omega_r: float) -> float:
    """A_sr = L (lambda/2)^2 cos(theta_r) cos(omega_r)."""
    return n_elements * (wavelength / 2.0) ** 2 * np.cos(theta_r) * np.cos(omega_r)


def ris_gain(n_elements: int, theta_t: float, omega_t: float) -> float:
    """G_st = L pi cos(theta_t) cos(omega_t)."""
    return n_elements * np.pi * np.cos(theta_t) * np.cos(omega_t)


def approx_gain(rho: float, d_t: float, G_rt: float, A_sr: float, A_rs: float, G_st: float) -> float:
    """K ~ rho^2 G_st / (d_t^2 G_rt) * min(A_sr/A_rs, A_rs/A_sr)."""
    if A_sr <= 0 or A_rs <= 0:
        raise ValueError("effective and footprint areas must be positive")
    return rho**2 * G_st / (d_t**2 * G_rt) * min(A_sr / A_rs, A_rs / A_sr)


def approx_gain_for_scenario(geom, derived, antenna_target, antenna_ris) -> float:
    """Approximate K for a built scene, using RIS-centre incidence angles."""
    theta_r, omega_r = direction_angles(geom.radar_position - geom.ris_center, geom.ris_frame)
    theta_t, omega_t = derived.angles_target
    L = geom.n_elements
    return approx_gain(
        derived.rho, derived.d_t,
        antenna_target.gain(*derived.radar_target_array_angles),
        ris_effective_area(L, geom.wavelength, theta_r, omega_r),
        antenna_ris.footprint_area(derived.d_r),
        ris_gain(L, theta_t, omega_t),
    )


def indirect_radar_equation_snr(P_r: float, G_rt: float, G_st: float, wavelength: float,
                                rho: float, d_t: float, sigma_bar: float, P_w: float) -> float:
    """Radar equation with one radar gain replaced by the RIS gain."""
    return P_r * G_rt * G_st * wavelength**2 * sigma_bar / ((4 * np.pi) ** 3 * rho**2 * d_t**2 * P_w)


def to_db(x) -> np.ndarray:
    return 10.0 * np.log10(x)
