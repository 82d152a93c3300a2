"""Radar-equation link budget, RIS element RCS and channel phase decompositions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .antenna import SquareArrayAntenna
from .geometry import DerivedGeometry, ScenarioGeometry, SpacingRegime

TWO_PI = 2.0 * np.pi


def _cos_front(angle) -> np.ndarray:
    angle = np.asarray(angle, dtype=float)
    return np.where(np.abs(angle) < np.pi / 2, np.cos(angle), 0.0)


def element_rcs_from_angles(wavelength: float, theta_t, omega_t, theta_r, omega_r) -> np.ndarray:
    """pi (lambda/2)^2 cos(theta_t) cos(omega_t) cos(theta_r) cos(omega_r); zero off the front face."""
    area = np.pi * (wavelength / 2.0) ** 2
    return area * _cos_front(theta_t) * _cos_front(omega_t) * _cos_front(theta_r) * _cos_front(omega_r)


def element_rcs(geom: ScenarioGeometry, derived: DerivedGeometry) -> tuple[np.ndarray, np.ndarray]:
    """Bistatic RCS of every element for the target-RIS-radar and radar-RIS-target paths.

    The two paths share the same incidence angles, so ``S_sr == S_st``.
    """
    theta_t, omega_t = derived.angles_target
    s = element_rcs_from_angles(
        geom.wavelength, theta_t, omega_t,
        derived.angles_radar_l[:, 0], derived.angles_radar_l[:, 1],
    )
    return s, s.copy()


def direct_amplitude(P_r: float, G_rt: float, wavelength: float, rho: float) -> float:
    if rho <= 0:
        raise ValueError("radar-target distance must be positive")
    return float(np.sqrt(P_r * G_rt**2 * wavelength**2 / ((4 * np.pi) ** 3 * rho**4)))


def indirect_amplitudes(P_r: float, G_rt: float, G_rs, wavelength: float, S_sr, S_st,
                        rho: float, d_t: float, d_r_l) -> tuple[np.ndarray, np.ndarray]:
    """Per-element amplitudes of the RIS echo on receive (sr) and transmit (st)."""
    d_r_l = np.asarray(d_r_l, dtype=float)
    if rho <= 0 or d_t <= 0 or np.any(d_r_l <= 0):
        raise ValueError("all distances must be positive")
    common = P_r * G_rt * np.asarray(G_rs) * wavelength**2 / (
        (4 * np.pi) ** 4 * rho**2 * d_t**2 * d_r_l**2
    )
    return np.sqrt(common * np.asarray(S_sr)), np.sqrt(common * np.asarray(S_st))


@dataclass(frozen=True)
class LinkBudget:
    alpha: float
    alpha_sr: np.ndarray
    alpha_st: np.ndarray
    S_sr: np.ndarray
    S_st: np.ndarray
    G_rt: float
    G_rs: np.ndarray
    P_r: float
    P_w: float
    rho: float
    d_t: float
    d_r_l: np.ndarray


def link_budget(geom: ScenarioGeometry, derived: DerivedGeometry,
                antenna_target: SquareArrayAntenna, antenna_ris: SquareArrayAntenna,
                P_r: float, P_w: float) -> LinkBudget:
    """Evaluate both radar beams and every RIS element for a built scene."""
    if P_r <= 0 or P_w <= 0:
        raise ValueError("transmit and noise power must be positive")
    G_rt = antenna_target.gain(*derived.radar_target_array_angles)
    G_rs = np.asarray(antenna_ris.gain(derived.radar_ris_array_angles_l[:, 0],
                                       derived.radar_ris_array_angles_l[:, 1]))
    S_sr, S_st = element_rcs(geom, derived)
    alpha = direct_amplitude(P_r, G_rt, geom.wavelength, derived.rho)
    a_sr, a_st = indirect_amplitudes(P_r, G_rt, G_rs, geom.wavelength, S_sr, S_st,
                                     derived.rho, derived.d_t, derived.d_r_l)
    return LinkBudget(alpha=alpha, alpha_sr=a_sr, alpha_st=a_st, S_sr=S_sr, S_st=S_st,
                      G_rt=G_rt, G_rs=G_rs, P_r=float(P_r), P_w=float(P_w),
                      rho=derived.rho, d_t=derived.d_t, d_r_l=derived.d_r_l)


@dataclass(frozen=True)
class ChannelPhases:
    """Phases known to the detector.

    ``psi_t_prime`` is the target-RIS phase relative to the radar-target phase
    (closely spaced, psi_t = psi_t' + beta); ``psi_t_dprime`` is relative to the
    first element (widely spaced, psi_t = psi_t'' + beta_s). The latent
    beta and beta_s are drawn by the Monte Carlo module and never stored here.
    """

    psi_r: np.ndarray
    psi_t_prime: np.ndarray
    psi_t_dprime: np.ndarray

    def known_target_phases(self, regime) -> np.ndarray:
        if regime is SpacingRegime.CLOSELY:
            return self.psi_t_prime
        if regime is SpacingRegime.WIDELY:
            return self.psi_t_dprime
        raise ValueError(f"no known target phase decomposition for regime {regime}")


def wrap_phase(phase) -> np.ndarray:
    """Reduce to [0, 2pi); np.mod alone can return 2pi for tiny negative inputs."""
    out = np.mod(np.asarray(phase, dtype=float), TWO_PI)
    return np.where(out >= TWO_PI, 0.0, out)


def propagation_phase(distance, wavelength: float) -> np.ndarray:
    return wrap_phase(-TWO_PI * np.asarray(distance, dtype=float) / wavelength)


def phase_decomposition(geom: ScenarioGeometry, derived: DerivedGeometry) -> ChannelPhases:
    lam = geom.wavelength
    psi_r = propagation_phase(derived.d_r_l, lam)
    psi_t_prime = propagation_phase(derived.d_t_l - derived.rho, lam)
    psi_t_dprime = propagation_phase(derived.d_t_l - derived.d_t_l[0], lam)
    psi_t_dprime[0] = 0.0
    return ChannelPhases(psi_r=psi_r, psi_t_prime=psi_t_prime, psi_t_dprime=psi_t_dprime)
