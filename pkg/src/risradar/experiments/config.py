"""Scenario configuration files.

Plain-text sections of ``key = value`` lines, ``#`` comments, comma-separated
lists, SI units (angles in radians). Every key is optional; missing keys take
the defaults of :class:`ScenarioConfig` for the selected layout. Example::

    [scenario]
    layout = closely            # closely | widely | explicit

    [radar]
    carrier_frequency = 3e9
    bandwidth_case_b = 10e6
    bandwidth_case_c = 1e6

    [ris]
    sides = 2, 2.5, 3, 3.5, 4, 4.5, 5
    distance = fill             # or a distance in meters
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

import numpy as np

from ..antenna import SquareArrayAntenna
from ..detection import FluctuationLaw
from ..exceptions import ConfigurationError
from ..geometry import SPEED_OF_LIGHT, build_geometry
from ..scenario import Scenario, build_scenario, closely_spaced_geometry, widely_spaced_geometry
from ..snr import FluctuationModel

LAYOUTS = ("closely", "widely", "explicit")

# (section, key) -> (attribute, parser)
_FLOAT = float


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(t) for t in text.split(",") if t.strip())


def _vec3(text: str) -> tuple[float, float, float]:
    v = _floats(text)
    if len(v) != 3:
        raise ValueError(f"expected three comma-separated components, got {text!r}")
    return v


def _pair(text: str) -> tuple[float, float]:
    v = _floats(text)
    if len(v) != 2:
        raise ValueError(f"expected 'low, high', got {text!r}")
    return v


def _distance(text: str):
    text = text.strip().lower()
    return "fill" if text == "fill" else float(text)


def _epsilon(text: str):
    text = text.strip().lower()
    return "optimal" if text == "optimal" else float(text)


def _optional_pair(text: str):
    return None if text.strip().lower() in ("", "none") else _pair(text)


_KEYS = {
    ("scenario", "layout"): ("layout", str.strip),
    ("scenario", "closeness_factor"): ("closeness_factor", _FLOAT),
    ("radar", "carrier_frequency"): ("carrier_frequency", _FLOAT),
    ("radar", "wavelength"): ("wavelength", _FLOAT),
    ("radar", "bandwidth"): ("bandwidth", _FLOAT),
    ("radar", "bandwidth_case_b"): ("bandwidth_case_b", _FLOAT),
    ("radar", "bandwidth_case_c"): ("bandwidth_case_c", _FLOAT),
    ("radar", "transmit_power"): ("transmit_power", _FLOAT),
    ("radar", "noise_power"): ("noise_power", _FLOAT),
    ("radar", "aperture_target"): ("aperture_target", _FLOAT),
    ("radar", "aperture_ris"): ("aperture_ris", _FLOAT),
    ("radar", "position"): ("radar_position", _vec3),
    ("ris", "sides"): ("ris_sides", _floats),
    ("ris", "side"): ("ris_sides", _floats),
    ("ris", "distance"): ("ris_distance", _distance),
    ("ris", "height"): ("ris_height", _FLOAT),
    ("ris", "radar_angle"): ("radar_angle", _FLOAT),
    ("ris", "center"): ("ris_center", _vec3),
    ("ris", "normal"): ("ris_normal", _vec3),
    ("target", "range"): ("target_range", _FLOAT),
    ("target", "distance"): ("target_distance", _FLOAT),
    ("target", "angle"): ("target_angle", _FLOAT),
    ("target", "size"): ("target_size", _FLOAT),
    ("target", "position"): ("target_position", _vec3),
    ("target", "law"): ("law", str.strip),
    ("target", "mean_rcs"): ("sigma_bar", _FLOAT),
    ("target", "mean_rcs_ris"): ("sigma_s_bar", _FLOAT),
    ("target", "rcs_bounds"): ("sigma_bounds", _optional_pair),
    ("target", "rcs_ris_bounds"): ("sigma_s_bounds", _optional_pair),
    ("detection", "pfa"): ("pfa", _FLOAT),
    ("detection", "epsilon"): ("epsilon", _epsilon),
    ("detection", "snr0_db"): ("snr0_db", _floats),
    ("montecarlo", "seed"): ("seed", int),
    ("montecarlo", "trials"): ("trials", int),
}


@dataclass(frozen=True)
class ScenarioConfig:
    layout: str = "closely"
    closeness_factor: float = 0.1

    carrier_frequency: float = 3e9
    wavelength: float | None = None
    bandwidth: float = 10e6
    bandwidth_case_b: float = 10e6
    bandwidth_case_c: float = 1e6
    transmit_power: float = 1e3
    noise_power: float = 4e-14
    aperture_target: float = 1.0
    aperture_ris: float = 1.0

    ris_sides: tuple[float, ...] = (2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0)
    ris_distance: float | str = "fill"
    ris_height: float = 0.0
    radar_angle: float = 0.0

    target_range: float = 10_000.0
    target_distance: float = 2_100.0
    target_angle: float = np.pi / 4
    target_size: float = 1.0

    radar_position: tuple[float, float, float] = (0.0, 0.0, 0.0)
    target_position: tuple[float, float, float] = (0.0, 10_000.0, 0.0)
    ris_center: tuple[float, float, float] = (0.0, -25.0, 0.0)
    ris_normal: tuple[float, float, float] = (0.0, 1.0, 0.0)

    law: str = "exponential"
    sigma_bar: float = 1.0
    sigma_s_bar: float | None = None
    sigma_bounds: tuple[float, float] | None = None
    sigma_s_bounds: tuple[float, float] | None = None

    pfa: float = 1e-6
    epsilon: float | str = "optimal"
    snr0_db: tuple[float, float, float] = (-10.0, 30.0, 0.5)

    seed: int = 20210301
    trials: int = 1_000_000
    speed_of_light: float = field(default=SPEED_OF_LIGHT, repr=False)

    def __post_init__(self):
        self.validate()

    # -- validation ------------------------------------------------------------

    def validate(self) -> None:
        if self.layout not in LAYOUTS:
            raise ConfigurationError(f"layout must be one of {LAYOUTS}, got {self.layout!r}")
        positive = ["carrier_frequency", "bandwidth", "bandwidth_case_b", "bandwidth_case_c",
                    "transmit_power", "noise_power", "aperture_target", "aperture_ris",
                    "target_range", "target_distance", "target_size", "sigma_bar", "pfa"]
        for name in positive:
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise ConfigurationError(f"{name} must be positive, got {value}")
        if not self.ris_sides or any(s <= 0 for s in self.ris_sides):
            raise ConfigurationError("ris sides must be a non-empty list of positive lengths")
        if self.ris_distance != "fill" and not self.ris_distance > 0:
            raise ConfigurationError("ris distance must be 'fill' or a positive number")
        if self.wavelength is not None:
            derived = self.speed_of_light / self.carrier_frequency
            if not np.isclose(self.wavelength, derived, rtol=1e-6):
                raise ConfigurationError(
                    f"wavelength {self.wavelength} m is inconsistent with carrier frequency "
                    f"{self.carrier_frequency} Hz (expected {derived} m)"
                )
        if not (0.0 < self.pfa < 1.0):
            raise ConfigurationError("pfa must lie in (0, 1)")
        if self.epsilon != "optimal" and not (0.0 <= self.epsilon <= 1.0):
            raise ConfigurationError("epsilon must be 'optimal' or a number in [0, 1]")
        if len(self.snr0_db) != 3 or self.snr0_db[2] <= 0 or self.snr0_db[1] < self.snr0_db[0]:
            raise ConfigurationError("snr0_db must be 'start, stop, step' with step > 0")
        if self.trials < 1 or not (0 <= self.seed < 2**64):
            raise ConfigurationError("trials must be >= 1 and seed an unsigned 64-bit integer")
        try:
            FluctuationLaw(self.law)
            self.fluctuation_model()
        except ValueError as exc:
            raise ConfigurationError(str(exc)) from exc

    # -- derived quantities ------------------------------------------------------

    @property
    def lam(self) -> float:
        return self.speed_of_light / self.carrier_frequency

    def antennas(self) -> tuple[SquareArrayAntenna, SquareArrayAntenna]:
        at = _antenna(self.aperture_target, self.lam)
        ar = at if self.aperture_ris == self.aperture_target else _antenna(self.aperture_ris, self.lam)
        return at, ar

    def fluctuation_model(self) -> FluctuationModel:
        return FluctuationModel(
            law=FluctuationLaw(self.law),
            sigma_bar=self.sigma_bar,
            sigma_s_bar=self.sigma_s_bar,
            sigma_bounds=self.sigma_bounds,
            sigma_s_bounds=self.sigma_s_bounds,
        )

    def ris_distance_for(self, side: float) -> float:
        if self.ris_distance == "fill":
            return self.antennas()[1].fill_distance(side)
        return float(self.ris_distance)

    def snr0_grid_db(self) -> np.ndarray:
        start, stop, step = self.snr0_db
        n = int(np.floor((stop - start) / step + 1e-9)) + 1
        return start + step * np.arange(n)

    def geometry(self, side: float, bandwidth: float | None = None):
        w = self.bandwidth if bandwidth is None else bandwidth
        common = dict(wavelength=self.lam, bandwidth=w,
                      radar_aperture_target=self.aperture_target,
                      radar_aperture_ris=self.aperture_ris, target_size=self.target_size)
        if self.layout == "closely":
            return closely_spaced_geometry(ris_side=side, ris_distance=self.ris_distance_for(side),
                                           target_range=self.target_range,
                                           ris_height=self.ris_height, **common)
        if self.layout == "widely":
            return widely_spaced_geometry(ris_side=side, ris_distance=self.ris_distance_for(side),
                                          target_distance=self.target_distance,
                                          target_angle=self.target_angle,
                                          radar_angle=self.radar_angle, **common)
        return build_geometry(radar_position=self.radar_position,
                              target_position=self.target_position,
                              ris_center=self.ris_center, ris_normal=self.ris_normal,
                              ris_side=side, speed_of_light=self.speed_of_light, **common)

    def scenario(self, side: float, bandwidth: float | None = None) -> Scenario:
        geom, derived = self.geometry(side, bandwidth)
        at, ar = self.antennas()
        return build_scenario(geom, derived, antenna_target=at, antenna_ris=ar,
                              transmit_power=self.transmit_power, noise_power=self.noise_power,
                              closeness_factor=self.closeness_factor)


_ANTENNAS: dict[tuple[float, float], SquareArrayAntenna] = {}


def _antenna(side: float, lam: float) -> SquareArrayAntenna:
    # the quadrature-normalized pattern is costly; share instances across scenarios
    key = (side, lam)
    if key not in _ANTENNAS:
        _ANTENNAS[key] = SquareArrayAntenna(side, lam)
    return _ANTENNAS[key]


WIDELY_DEFAULTS = dict(layout="widely", ris_sides=(3.0, 5.0), target_size=10.0)


def default_config(layout: str = "closely") -> ScenarioConfig:
    if layout == "widely":
        return ScenarioConfig(**WIDELY_DEFAULTS)
    return ScenarioConfig(layout=layout)


def parse_config(text: str) -> ScenarioConfig:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",), comment_prefixes=("#",),
                                       interpolation=None)
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigurationError(f"malformed configuration: {exc}") from exc

    values = {}
    for section in parser.sections():
        for key, raw in parser.items(section):
            if (section, key) not in _KEYS:
                raise ConfigurationError(f"unknown configuration key [{section}] {key}")
            attr, conv = _KEYS[(section, key)]
            try:
                values[attr] = conv(raw)
            except ValueError as exc:
                raise ConfigurationError(f"[{section}] {key}: {exc}") from exc
    base = default_config(values.get("layout", "closely"))
    known = {f.name for f in fields(ScenarioConfig)}
    return replace(base, **{k: v for k, v in values.items() if k in known})


def load_config(path) -> ScenarioConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigurationError(f"cannot read configuration {path}: {exc}") from exc
    return parse_config(text)
