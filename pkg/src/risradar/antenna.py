"""Uniform square radar arrays with a cosine element pattern."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.optimize import brentq

from .exceptions import ConfigurationError


def _array_factor_power(u, n: int) -> np.ndarray:
    """Normalized |AF|^2 of an n-element, half-wavelength-spaced uniform line array.

    ``u`` is the direction cosine along the array axis.
    """
    x = 0.5 * np.pi * np.asarray(u, dtype=float)
    s = np.sin(x)
    out = np.ones_like(x)
    mask = np.abs(s) > 1e-12
    out[mask] = (np.sin(n * x[mask]) / (n * s[mask])) ** 2
    return out


@dataclass(frozen=True)
class SquareArrayAntenna:
    """Uniform n x n planar array, lambda/2 spacing, cos(az)cos(el) element power pattern.

    The peak gain is fixed by numerically integrating the pattern over the
    front hemisphere (the back hemisphere radiates nothing), so the returned
    gains are directivities.
    """

    side: float
    wavelength: float
    quadrature_points: int = 2048

    def __post_init__(self):
        if self.side <= 0 or self.wavelength <= 0:
            raise ConfigurationError("antenna side and wavelength must be positive")
        if self.elements_per_side < 2:
            raise ConfigurationError(
                f"a {self.side} m array at lambda = {self.wavelength} m has fewer than two "
                "elements per side and is not directive"
            )

    @property
    def elements_per_side(self) -> int:
        return int(round(self.side / (self.wavelength / 2.0)))

    def normalized_pattern(self, az, el) -> np.ndarray:
        az = np.asarray(az, dtype=float)
        el = np.asarray(el, dtype=float)
        n = self.elements_per_side
        ux = np.sin(az) * np.cos(el)
        uy = np.sin(el)
        front = (np.abs(az) < np.pi / 2) & (np.abs(el) < np.pi / 2)
        element = np.where(front, np.cos(az) * np.cos(el), 0.0)
        return _array_factor_power(ux, n) * _array_factor_power(uy, n) * element

    @cached_property
    def pattern_integral(self) -> float:
        """Midpoint-rule integral of the normalized pattern over the sphere (sr)."""
        m = self.quadrature_points
        h = np.pi / m
        grid = -np.pi / 2 + (np.arange(m) + 0.5) * h
        total = 0.0
        # row blocks keep memory bounded for large grids
        for start in range(0, m, 256):
            az = grid[start:start + 256, None]
            total += np.sum(self.normalized_pattern(az, grid[None, :]) * np.cos(grid)[None, :])
        return float(total * h * h)

    @cached_property
    def peak_gain(self) -> float:
        return 4.0 * np.pi / self.pattern_integral

    def gain(self, az, el):
        g = self.peak_gain * self.normalized_pattern(az, el)
        return float(g) if np.ndim(g) == 0 else g

    @cached_property
    def half_power_beamwidth(self) -> float:
        """Full 3-dB beamwidth in the azimuth principal plane (rad)."""
        n = self.elements_per_side
        first_null = np.arcsin(min(1.0, 2.0 / n))
        half = brentq(
            lambda a: self.normalized_pattern(a, 0.0) - 0.5,
            0.0, first_null, xtol=1e-13, rtol=4 * np.finfo(float).eps,
        )
        return 2.0 * half

    def fill_distance(self, ris_side: float) -> float:
        """Distance at which the square 3-dB footprint (d*theta)^2 equals ris_side^2."""
        if ris_side <= 0:
            raise ValueError(f"ris_side must be positive, got {ris_side}")
        return ris_side / self.half_power_beamwidth

    def footprint_area(self, distance: float) -> float:
        return (distance * self.half_power_beamwidth) ** 2


def array_gain(ant: SquareArrayAntenna, az, el):
    return ant.gain(az, el)


def half_power_beamwidth(ant: SquareArrayAntenna) -> float:
    return ant.half_power_beamwidth


def fill_distance(ant: SquareArrayAntenna, ris_side: float) -> float:
    return ant.fill_distance(ris_side)
