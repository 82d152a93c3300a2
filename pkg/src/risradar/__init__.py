"""Detection of a radar target with the help of a reconfigurable intelligent surface.

Geometry and far-field checks, antenna patterns, RIS link budget and phase
alignment, GLRT detectors with closed-form and Monte Carlo performance, and
the experiment runners behind the ``risradar`` command.
"""

from .antenna import SquareArrayAntenna, array_gain, fill_distance, half_power_beamwidth
from .channel import ChannelPhases, LinkBudget, link_budget, phase_decomposition
from .detection import (
    DetectorConfig,
    DetectorKind,
    FluctuationLaw,
    Observation,
    glrt_statistic,
    marcum_q,
    pd_closed_form,
    pd_dual_exponential,
    pd_single,
    pfa_from_threshold,
    threshold_from_pfa,
)
from .estimator import RisGlrtDetector
from .exceptions import ConfigurationError, UnsupportedError
from .geometry import (
    BeamConfig,
    DerivedGeometry,
    DetectionCase,
    ScenarioGeometry,
    SpacingRegime,
    build_geometry,
    classify_delay_case,
    classify_spacing,
    validate_far_field,
)
from .montecarlo import EmpiricalRate, Hypothesis, TrialConfig, estimate_rate
from .ris import RisPhaseProgram, align_phases, coherent_sum
from .scenario import Scenario, build_scenario, closely_spaced_geometry, widely_spaced_geometry
from .snr import (
    FluctuationModel,
    GainFactors,
    approx_gain,
    gains,
    optimal_split_closely,
    optimal_split_widely,
    snr_closely,
    snr_widely,
)

__version__ = "0.1.0"

__all__ = [
    "SquareArrayAntenna", "array_gain", "fill_distance", "half_power_beamwidth",
    "ChannelPhases", "LinkBudget", "link_budget", "phase_decomposition",
    "DetectorConfig", "DetectorKind", "FluctuationLaw", "Observation", "glrt_statistic",
    "marcum_q", "pd_closed_form", "pd_dual_exponential", "pd_single", "pfa_from_threshold",
    "threshold_from_pfa", "RisGlrtDetector", "ConfigurationError", "UnsupportedError",
    "BeamConfig", "DerivedGeometry", "DetectionCase", "ScenarioGeometry", "SpacingRegime",
    "build_geometry", "classify_delay_case", "classify_spacing", "validate_far_field",
    "EmpiricalRate", "Hypothesis", "TrialConfig", "estimate_rate", "RisPhaseProgram",
    "align_phases", "coherent_sum", "Scenario", "build_scenario", "closely_spaced_geometry",
    "widely_spaced_geometry", "FluctuationModel", "GainFactors", "approx_gain", "gains",
    "optimal_split_closely", "optimal_split_widely", "snr_closely", "snr_widely",
]
