"""End-to-end scenario assembly and the two reference layouts.

Closely spaced layout: radar at the origin with its target beam along +y,
target at ``(0, rho, 0)``, RIS centred at ``(0, -d_r, h)`` facing +y. Both radar
arrays and the RIS lie parallel to the x-z plane, the target sees radar and
RIS along (almost) the same line, and the extra path of the RIS echo is about
``2 d_r``.

Widely spaced layout: RIS centred at the origin facing +y, radar at distance
``d_r`` and angle ``radar_angle`` from the RIS normal (in the x-y plane, on the
-x side), target at distance ``d_t`` and angle ``target_angle`` on the +x side.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .antenna import SquareArrayAntenna
from .channel import ChannelPhases, LinkBudget, link_budget, phase_decomposition
from .geometry import (
    SPEED_OF_LIGHT,
    DerivedGeometry,
    FarFieldReport,
    ScenarioGeometry,
    SpacingRegime,
    build_geometry,
    classify_spacing,
    validate_far_field,
)
from .montecarlo import SignalModel
from .ris import RisPhaseProgram, align_phases
from .snr import GainFactors, gains


@dataclass(frozen=True)
class Scenario:
    geometry: ScenarioGeometry
    derived: DerivedGeometry
    antenna_target: SquareArrayAntenna
    antenna_ris: SquareArrayAntenna
    link: LinkBudget
    phases: ChannelPhases
    regime: SpacingRegime

    @cached_property
    def gains(self) -> GainFactors:
        return gains(self.link)

    @cached_property
    def far_field(self) -> FarFieldReport:
        return validate_far_field(self.geometry, self.derived)

    def aligned_program(self, regime: SpacingRegime | None = None,
                        bits: int | None = None) -> RisPhaseProgram:
        return align_phases(self.phases, self.regime if regime is None else regime, bits)

    def signal(self, program: RisPhaseProgram | None = None) -> SignalModel:
        """Signal model under ``program`` (default: aligned for the scene's regime)."""
        program = self.aligned_program() if program is None else program
        return SignalModel.from_link(self.link, self.phases, program, self.regime)

    def snr0(self, sigma_bar: float) -> float:
        return self.link.alpha**2 * sigma_bar / self.link.P_w


def build_scenario(geometry: ScenarioGeometry, derived: DerivedGeometry, *,
                   antenna_target: SquareArrayAntenna, antenna_ris: SquareArrayAntenna,
                   transmit_power: float, noise_power: float,
                   closeness_factor: float = 0.1) -> Scenario:
    link = link_budget(geometry, derived, antenna_target, antenna_ris, transmit_power, noise_power)
    return Scenario(
        geometry=geometry,
        derived=derived,
        antenna_target=antenna_target,
        antenna_ris=antenna_ris,
        link=link,
        phases=phase_decomposition(geometry, derived),
        regime=classify_spacing(geometry, derived, closeness_factor),
    )


def closely_spaced_geometry(*, ris_side: float, ris_distance: float, target_range: float,
                            wavelength: float, bandwidth: float, radar_aperture_target: float,
                            radar_aperture_ris: float, target_size: float,
                            ris_height: float = 0.0):
    return build_geometry(
        radar_position=(0.0, 0.0, 0.0),
        target_position=(0.0, target_range, 0.0),
        ris_center=(0.0, -ris_distance, ris_height),
        ris_normal=(0.0, 1.0, 0.0),
        ris_side=ris_side,
        wavelength=wavelength,
        bandwidth=bandwidth,
        radar_aperture_target=radar_aperture_target,
        radar_aperture_ris=radar_aperture_ris,
        target_size=target_size,
    )


def widely_spaced_geometry(*, ris_side: float, ris_distance: float, target_distance: float,
                           target_angle: float, wavelength: float, bandwidth: float,
                           radar_aperture_target: float, radar_aperture_ris: float,
                           target_size: float, radar_angle: float = 0.0):
    radar = ris_distance * np.array([-np.sin(radar_angle), np.cos(radar_angle), 0.0])
    target = target_distance * np.array([np.sin(target_angle), np.cos(target_angle), 0.0])
    return build_geometry(
        radar_position=radar,
        target_position=target,
        ris_center=(0.0, 0.0, 0.0),
        ris_normal=(0.0, 1.0, 0.0),
        ris_side=ris_side,
        wavelength=wavelength,
        bandwidth=bandwidth,
        radar_aperture_target=radar_aperture_target,
        radar_aperture_ris=radar_aperture_ris,
        target_size=target_size,
    )


def wavelength_from_frequency(frequency: float, speed_of_light: float = SPEED_OF_LIGHT) -> float:
    return speed_of_light / frequency
