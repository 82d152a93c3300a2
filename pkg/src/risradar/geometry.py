"""Scene construction: radar, target and a planar RIS element grid.

All positions are in meters in a common Cartesian frame. Angles of arrival
on a planar aperture (the RIS or one of the radar arrays) are expressed as an
(azimuth, elevation) pair measured from the aperture normal: azimuth is the
rotation toward the first in-plane axis, elevation the tilt toward the second
one, so that broadside is (0, 0). For a unit direction ``u`` expressed in the
aperture frame ``(e1, e2, n)``::

    azimuth   = atan2(u.e1, u.n)
    elevation = asin(u.e2)
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from ._validation import as_vec3, check_positive
from .exceptions import ConfigurationError, UnsupportedError

SPEED_OF_LIGHT = 299_792_458.0

_MIN_DISTANCE = 1e-9


class SpacingRegime(enum.Enum):
    CLOSELY = "closely"
    WIDELY = "widely"
    INDETERMINATE = "indeterminate"


class DetectionCase(enum.Enum):
    """Beam configuration cases.

    A: one transmit beam, two receive beams.
    B: two transmit beams, one receive beam, resolvable echo delays.
    C: two transmit beams, one receive beam, unresolvable echo delays.
    """

    A = "a"
    B = "b"
    C = "c"


@dataclass(frozen=True)
class BeamConfig:
    tx_beams: int
    rx_beams: int


def orthonormal_frame(normal, first_axis=None) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Right-handed frame ``(e1, e2, n)`` with ``n`` along ``normal``.

    If ``first_axis`` is omitted, ``e2`` is the projection of global +z onto
    the aperture plane (global +x when the normal is vertical).
    """
    n = np.asarray(normal, dtype=float)
    norm = np.linalg.norm(n)
    if not np.isfinite(norm) or norm < 1e-12:
        raise ConfigurationError("aperture normal must be a nonzero finite vector")
    n = n / norm
    if first_axis is not None:
        e1 = np.asarray(first_axis, dtype=float)
        e1 = e1 - (e1 @ n) * n
        if np.linalg.norm(e1) < 1e-12:
            raise ConfigurationError("first in-plane axis is parallel to the normal")
        e1 = e1 / np.linalg.norm(e1)
        e2 = np.cross(n, e1)
    else:
        ref = np.array([0.0, 0.0, 1.0])
        if abs(ref @ n) > 1.0 - 1e-9:
            ref = np.array([1.0, 0.0, 0.0])
        e2 = ref - (ref @ n) * n
        e2 = e2 / np.linalg.norm(e2)
        e1 = np.cross(e2, n)
    return e1, e2, n


def direction_angles(vectors, frame) -> np.ndarray:
    """(azimuth, elevation) of each row of ``vectors`` in ``frame``.

    Returns an array of shape ``vectors.shape[:-1] + (2,)``.
    """
    v = np.asarray(vectors, dtype=float)
    e1, e2, n = frame
    r = np.linalg.norm(v, axis=-1)
    az = np.arctan2(v @ e1, v @ n)
    el = np.arcsin(np.clip((v @ e2) / r, -1.0, 1.0))
    return np.stack([az, el], axis=-1)


@dataclass(frozen=True)
class ScenarioGeometry:
    radar_position: np.ndarray
    target_position: np.ndarray
    ris_center: np.ndarray
    ris_normal: np.ndarray
    ris_in_plane_axes: tuple[np.ndarray, np.ndarray]
    ris_side: float
    ris_element_spacing: float
    element_positions: np.ndarray  # (L, 3)
    wavelength: float
    bandwidth: float
    radar_aperture_target: float
    radar_aperture_ris: float
    target_size: float
    radar_boresight_target: np.ndarray
    radar_boresight_ris: np.ndarray
    speed_of_light: float = SPEED_OF_LIGHT

    @property
    def n_elements(self) -> int:
        return len(self.element_positions)

    @property
    def elements_per_side(self) -> int:
        return int(round(np.sqrt(self.n_elements)))

    @property
    def ris_frame(self):
        e1, e2 = self.ris_in_plane_axes
        return e1, e2, self.ris_normal

    def derive(self) -> "DerivedGeometry":
        radar, target, center = self.radar_position, self.target_position, self.ris_center
        rho = float(np.linalg.norm(target - radar))
        d_r = float(np.linalg.norm(center - radar))
        d_t = float(np.linalg.norm(target - center))
        to_radar = radar - self.element_positions
        to_target = target - self.element_positions
        d_r_l = np.linalg.norm(to_radar, axis=1)
        d_t_l = np.linalg.norm(to_target, axis=1)
        if min(rho, d_r, d_t, d_r_l.min(), d_t_l.min()) < _MIN_DISTANCE:
            raise ConfigurationError("radar, target and RIS elements must be at distinct positions")

        a, b = radar - target, center - target
        cos_xi = (a @ b) / (np.linalg.norm(a) * np.linalg.norm(b))
        xi = float(np.arccos(np.clip(cos_xi, -1.0, 1.0)))

        frame = self.ris_frame
        angles_target = direction_angles(target - center, frame)
        angles_radar_l = direction_angles(to_radar, frame)

        rt_frame = orthonormal_frame(self.radar_boresight_target)
        rs_frame = orthonormal_frame(self.radar_boresight_ris)
        rt_angles = direction_angles(target - radar, rt_frame)
        rs_angles_l = direction_angles(-to_radar, rs_frame)
        return DerivedGeometry(
            rho=rho,
            d_r=d_r,
            d_t=d_t,
            d_r_l=d_r_l,
            d_t_l=d_t_l,
            xi=xi,
            angles_target=(float(angles_target[0]), float(angles_target[1])),
            angles_radar_l=angles_radar_l,
            radar_target_array_angles=(float(rt_angles[0]), float(rt_angles[1])),
            radar_ris_array_angles_l=rs_angles_l,
        )


@dataclass(frozen=True)
class DerivedGeometry:
    """Distances and angles computed from a :class:`ScenarioGeometry`.

    ``angles_target`` and ``angles_radar_l`` are incidence angles on the RIS.
    The two ``radar_*_array_angles`` fields are the directions of the target
    and of each RIS element as seen by the corresponding radar array.
    """

    rho: float
    d_r: float
    d_t: float
    d_r_l: np.ndarray
    d_t_l: np.ndarray
    xi: float
    angles_target: tuple[float, float]
    angles_radar_l: np.ndarray
    radar_target_array_angles: tuple[float, float] = (0.0, 0.0)
    radar_ris_array_angles_l: np.ndarray = field(default_factory=lambda: np.zeros((0, 2)))

    @property
    def path_difference(self) -> float:
        """Extra propagation length of the RIS echo, d_t + d_r - rho."""
        return self.d_t + self.d_r - self.rho


def ris_element_grid(center, frame, side: float, wavelength: float) -> tuple[np.ndarray, float]:
    """Cell-centred n x n grid, n = round(side / (lambda/2)), spacing lambda/2."""
    spacing = wavelength / 2.0
    n = int(round(side / spacing))
    if n < 1:
        raise ConfigurationError(
            f"RIS side {side} m is smaller than half a wavelength ({spacing} m)"
        )
    e1, e2, _ = frame
    offsets = (np.arange(n) - (n - 1) / 2.0) * spacing
    u, v = np.meshgrid(offsets, offsets, indexing="ij")
    positions = center + u.reshape(-1, 1) * e1 + v.reshape(-1, 1) * e2
    return positions, spacing


def build_geometry(
    *,
    radar_position,
    target_position,
    ris_center,
    ris_normal,
    ris_side: float,
    wavelength: float,
    bandwidth: float,
    radar_aperture_target: float,
    radar_aperture_ris: float,
    target_size: float,
    ris_first_axis=None,
    radar_boresight_target=None,
    radar_boresight_ris=None,
    speed_of_light: float = SPEED_OF_LIGHT,
) -> tuple[ScenarioGeometry, DerivedGeometry]:
    """Build the scene and derive every distance and angle.

    Radar array boresights default to pointing exactly at the target and at
    the RIS centre respectively (no pointing loss).

    Raises:
        ConfigurationError: non-positive sizes, coincident points, or a zero
            RIS normal.
    """
    try:
        radar = as_vec3(radar_position, "radar_position")
        target = as_vec3(target_position, "target_position")
        center = as_vec3(ris_center, "ris_center")
        sizes = {
            "ris_side": ris_side,
            "wavelength": wavelength,
            "bandwidth": bandwidth,
            "radar_aperture_target": radar_aperture_target,
            "radar_aperture_ris": radar_aperture_ris,
            "target_size": target_size,
            "speed_of_light": speed_of_light,
        }
        sizes = {k: check_positive(v, k) for k, v in sizes.items()}
    except (TypeError, ValueError) as exc:
        raise ConfigurationError(str(exc)) from exc

    e1, e2, n = orthonormal_frame(ris_normal, ris_first_axis)
    positions, spacing = ris_element_grid(center, (e1, e2, n), sizes["ris_side"], sizes["wavelength"])
    positions.setflags(write=False)

    if radar_boresight_target is None:
        radar_boresight_target = target - radar
    if radar_boresight_ris is None:
        radar_boresight_ris = center - radar
    bt = np.asarray(radar_boresight_target, dtype=float)
    bs = np.asarray(radar_boresight_ris, dtype=float)
    for name, b in (("radar_boresight_target", bt), ("radar_boresight_ris", bs)):
        if b.shape != (3,) or np.linalg.norm(b) < _MIN_DISTANCE:
            raise ConfigurationError(f"{name} must be a nonzero 3-vector")

    geom = ScenarioGeometry(
        radar_position=radar,
        target_position=target,
        ris_center=center,
        ris_normal=n,
        ris_in_plane_axes=(e1, e2),
        ris_side=sizes["ris_side"],
        ris_element_spacing=spacing,
        element_positions=positions,
        wavelength=sizes["wavelength"],
        bandwidth=sizes["bandwidth"],
        radar_aperture_target=sizes["radar_aperture_target"],
        radar_aperture_ris=sizes["radar_aperture_ris"],
        target_size=sizes["target_size"],
        radar_boresight_target=bt / np.linalg.norm(bt),
        radar_boresight_ris=bs / np.linalg.norm(bs),
        speed_of_light=sizes["speed_of_light"],
    )
    return geom, geom.derive()


# -- far-field check ---------------------------------------------------------


@dataclass(frozen=True)
class FarFieldCondition:
    attained: float
    required: float

    @property
    def ratio(self) -> float:
        return self.attained / self.required if self.required > 0 else np.inf

    @property
    def ok(self) -> bool:
        # relative slack so that exact boundary cases survive rounding
        return self.attained >= self.required * (1.0 - 1e-12)


@dataclass(frozen=True)
class FarFieldReport:
    radar_target: FarFieldCondition
    ris_target: FarFieldCondition
    radar_ris: FarFieldCondition

    @property
    def all_ok(self) -> bool:
        return self.radar_target.ok and self.ris_target.ok and self.radar_ris.ok

    def as_dict(self) -> dict:
        out = {}
        for name in ("radar_target", "ris_target", "radar_ris"):
            cond = getattr(self, name)
            out[name] = {"ok": cond.ok, "ratio": cond.ratio,
                         "attained": cond.attained, "required": cond.required}
        return out


def validate_far_field(geom: ScenarioGeometry, derived: DerivedGeometry) -> FarFieldReport:
    lam = geom.wavelength
    return FarFieldReport(
        radar_target=FarFieldCondition(
            derived.rho, 2.0 * max(geom.radar_aperture_target**2, geom.target_size**2) / lam
        ),
        ris_target=FarFieldCondition(
            float(derived.d_t_l.min()), 2.0 * max(geom.target_size**2, geom.ris_side**2) / lam
        ),
        radar_ris=FarFieldCondition(
            float(derived.d_r_l.min()), 2.0 * geom.radar_aperture_ris**2 / lam
        ),
    )


# -- regime classification ---------------------------------------------------


def spacing_regime(xi: float, wavelength: float, target_size: float,
                   closeness_factor: float = 0.1) -> SpacingRegime:
    """Classify the angular separation ``xi`` seen from the target.

    Widely spaced when ``xi >= lambda/D_t``; closely spaced when
    ``xi <= closeness_factor * lambda/D_t``; indeterminate in between.
    """
    if target_size <= 0:
        raise ConfigurationError("target size must be positive to classify spacing")
    if not (0.0 < closeness_factor <= 1.0):
        raise ConfigurationError(f"closeness_factor must lie in (0, 1], got {closeness_factor}")
    lobe = wavelength / target_size
    if xi >= lobe:
        return SpacingRegime.WIDELY
    if xi <= closeness_factor * lobe:
        return SpacingRegime.CLOSELY
    return SpacingRegime.INDETERMINATE


def classify_spacing(geom: ScenarioGeometry, derived: DerivedGeometry,
                     closeness_factor: float = 0.1) -> SpacingRegime:
    return spacing_regime(derived.xi, geom.wavelength, geom.target_size, closeness_factor)


def delay_case(path_difference: float, bandwidth: float,
               speed_of_light: float = SPEED_OF_LIGHT) -> DetectionCase:
    """Case B or C for a two-transmit-beam configuration.

    Resolvable if the extra path is at least one range resolution ``c/W``;
    unresolvable if it is within half a range cell, ``c/(4W)``.
    """
    resolution = speed_of_light / bandwidth
    if path_difference >= resolution:
        return DetectionCase.B
    if path_difference <= resolution / 4.0:
        return DetectionCase.C
    raise UnsupportedError(
        f"path difference {path_difference:.3f} m lies between c/(4W) = {resolution / 4:.3f} m "
        f"and c/W = {resolution:.3f} m; only the resolvable and unresolvable extremes are modelled"
    )


def classify_delay_case(geom: ScenarioGeometry, derived: DerivedGeometry, beams: BeamConfig,
                        bandwidth: float | None = None) -> DetectionCase:
    if (beams.tx_beams, beams.rx_beams) == (1, 2):
        return DetectionCase.A
    if (beams.tx_beams, beams.rx_beams) == (2, 1):
        w = geom.bandwidth if bandwidth is None else bandwidth
        return delay_case(derived.path_difference, w, geom.speed_of_light)
    raise ConfigurationError(
        f"unsupported beam configuration: {beams.tx_beams} Tx / {beams.rx_beams} Rx"
    )
