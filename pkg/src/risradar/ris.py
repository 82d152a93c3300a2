"""RIS phase programming and the coherent indirect-echo sum."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import TWO_PI, ChannelPhases, wrap_phase
from .exceptions import UnsupportedError
from .geometry import SpacingRegime


@dataclass(frozen=True)
class RisPhaseProgram:
    phi: np.ndarray
    regime: SpacingRegime


def quantize_phases(phi, bits: int) -> np.ndarray:
    """Round phases to the nearest of 2**bits uniform levels in [0, 2pi)."""
    if bits < 1:
        raise ValueError("bits must be >= 1")
    step = TWO_PI / 2**bits
    return wrap_phase(np.round(np.asarray(phi) / step) * step)


def align_phases(phases: ChannelPhases, regime: SpacingRegime,
                 bits: int | None = None) -> RisPhaseProgram:
    """Program that cancels the known part of every RIS path phase.

    phi_l = -psi_t,l^known - psi_r,l, with the closely- or widely-spaced
    decomposition selected by ``regime``.
    """
    if regime is SpacingRegime.INDETERMINATE:
        raise UnsupportedError("phase alignment is undefined for an indeterminate spacing regime")
    known = phases.known_target_phases(regime)
    phi = wrap_phase(-known - phases.psi_r)
    if bits is not None:
        phi = quantize_phases(phi, bits)
    return RisPhaseProgram(phi=phi, regime=regime)


def coherent_sum(amplitudes, psi_t, phi, psi_r) -> complex:
    """sum_l a_l exp(i(psi_t,l + phi_l + psi_r,l)), without the common target factor."""
    arrays = [np.asarray(x, dtype=float) for x in (amplitudes, psi_t, phi, psi_r)]
    if len({a.shape for a in arrays}) != 1 or arrays[0].ndim != 1:
        raise ValueError("amplitudes and phase lists must be 1-D with equal length")
    a, pt, ph, pr = arrays
    return complex(np.sum(a * np.exp(1j * (pt + ph + pr))))
