import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.spatial.transform import Rotation

from risradar.exceptions import ConfigurationError, UnsupportedError
from risradar.geometry import (
    SPEED_OF_LIGHT,
    BeamConfig,
    DetectionCase,
    SpacingRegime,
    build_geometry,
    classify_delay_case,
    delay_case,
    direction_angles,
    orthonormal_frame,
    spacing_regime,
    validate_far_field,
)

COMMON = dict(wavelength=0.1, bandwidth=10e6, radar_aperture_target=1.0, radar_aperture_ris=1.0,
              target_size=1.0)


def scene(radar=(0, 50, 0), target=(300, 400, 0), center=(0, 0, 0), normal=(0, 1, 0), side=2.0,
          **kw):
    args = {**COMMON, **kw}
    return build_geometry(radar_position=radar, target_position=target, ris_center=center,
                          ris_normal=normal, ris_side=side, **args)


def test_broadside_radar_has_zero_angles():
    geom, d = scene(radar=(0, 37.0, 0))
    assert d.d_r == pytest.approx(37.0)
    angles = direction_angles(geom.radar_position - geom.ris_center, geom.ris_frame)
    assert np.allclose(angles, 0.0, atol=1e-15)


def test_element_count():
    geom, _ = scene(side=2.0)
    assert geom.elements_per_side == 40
    assert geom.n_elements == 1600
    assert geom.ris_element_spacing == pytest.approx(0.05)


def test_single_element_sits_at_center():
    geom, d = scene(side=0.05, center=(1.0, 2.0, 3.0), radar=(1.0, 60.0, 3.0))
    assert geom.n_elements == 1
    assert np.allclose(geom.element_positions, [[1.0, 2.0, 3.0]])
    assert d.d_r_l[0] == pytest.approx(d.d_r)


def test_element_positions_read_only():
    geom, _ = scene()
    with pytest.raises(ValueError):
        geom.element_positions[0, 0] = 1.0


@pytest.mark.parametrize("bad", [
    dict(radar=(0, 0, 0)),            # radar at the RIS centre
    dict(target=(0, 50, 0)),          # target on the radar
    dict(normal=(0, 0, 0)),
    dict(side=-1.0),
    dict(target_size=0.0),
    dict(side=0.01),                  # under half a wavelength
])
def test_degenerate_geometry_rejected(bad):
    with pytest.raises(ConfigurationError):
        scene(**bad)


def test_far_field_boundary_equality():
    # rho = 20 = 2 * 1^2 / 0.1 exactly
    geom, d = scene(radar=(0, 50, 0), target=(0, 70, 0), side=0.5)
    report = validate_far_field(geom, d)
    assert d.rho == pytest.approx(20.0)
    assert report.radar_target.required == pytest.approx(20.0)
    assert report.radar_target.ok


def test_far_field_ris_target_violation():
    geom, d = scene(radar=(0, 50, 0), target=(0, 100.0, 0), side=3.0)
    report = validate_far_field(geom, d)
    assert report.ris_target.required == pytest.approx(180.0)
    assert report.ris_target.attained == pytest.approx(100.0)
    assert not report.ris_target.ok
    assert not report.all_ok
    assert report.as_dict()["ris_target"]["ok"] is False


def test_far_field_tiny_sizes_always_pass():
    geom, d = scene(side=0.05, radar_aperture_target=1e-6, radar_aperture_ris=1e-6,
                    target_size=1e-6, wavelength=0.1, radar=(0, 0.5, 0), target=(0.3, 0.9, 0))
    assert validate_far_field(geom, d).all_ok


def test_spacing_examples():
    assert spacing_regime(0.0, 0.1, 1.0) is SpacingRegime.CLOSELY
    assert spacing_regime(0.1, 0.1, 1.0) is SpacingRegime.WIDELY
    assert spacing_regime(0.05, 0.1, 1.0, closeness_factor=0.1) is SpacingRegime.INDETERMINATE
    with pytest.raises(ConfigurationError):
        spacing_regime(0.0, 0.1, 0.0)


@given(st.floats(0.0, 0.5), st.floats(0.0, 0.5))
def test_spacing_monotone(a, b):
    order = {SpacingRegime.CLOSELY: 0, SpacingRegime.INDETERMINATE: 1, SpacingRegime.WIDELY: 2}
    lo, hi = sorted((a, b))
    assert order[spacing_regime(lo, 0.1, 1.0)] <= order[spacing_regime(hi, 0.1, 1.0)]


def test_delay_case_examples():
    assert SPEED_OF_LIGHT / 10e6 == pytest.approx(29.9792458)
    assert delay_case(40.0, 10e6) is DetectionCase.B
    assert delay_case(10.0, 1e6) is DetectionCase.C
    with pytest.raises(UnsupportedError):
        delay_case(20.0, 10e6)


def test_one_tx_two_rx_is_case_a():
    geom, d = scene()
    assert classify_delay_case(geom, d, BeamConfig(1, 2)) is DetectionCase.A
    with pytest.raises(ConfigurationError):
        classify_delay_case(geom, d, BeamConfig(2, 2))


def test_even_grid_distance_bound():
    geom, d = scene(side=2.0)
    assert geom.elements_per_side % 2 == 0
    assert abs(d.d_r - d.d_r_l.min()) <= geom.ris_side * np.sqrt(2) / 2


def test_odd_grid_center_element():
    geom, d = scene(side=0.15)
    assert geom.elements_per_side == 3
    assert d.d_r_l[geom.n_elements // 2] == pytest.approx(d.d_r, rel=1e-14)


def test_xi_is_arccos_of_directions():
    geom, d = scene()
    u = geom.radar_position - geom.target_position
    v = geom.ris_center - geom.target_position
    expected = np.arccos(u @ v / np.linalg.norm(u) / np.linalg.norm(v))
    assert d.xi == pytest.approx(expected, rel=1e-12)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_xi_rotation_invariant(seed):
    rng = np.random.default_rng(seed)
    rot = Rotation.random(random_state=rng)
    radar, target, center, normal = (np.array(v, float) for v in
                                     ((0, 50, 0), (300, 400, 20), (0, 0, 0), (0, 1, 0)))
    _, d0 = scene(radar=radar, target=target, center=center, normal=normal, side=0.5)
    _, d1 = scene(radar=rot.apply(radar), target=rot.apply(target), center=rot.apply(center),
                  normal=rot.apply(normal), side=0.5)
    assert d1.xi == pytest.approx(d0.xi, rel=1e-12, abs=1e-12)
    assert d1.rho == pytest.approx(d0.rho, rel=1e-12)


def test_frame_is_orthonormal_and_right_handed():
    for n in ((0, 1, 0), (0, 0, 1), (1, 2, 3)):
        e1, e2, nn = orthonormal_frame(n)
        m = np.stack([e1, e2, nn])
        assert np.allclose(m @ m.T, np.eye(3), atol=1e-14)
        assert np.allclose(np.cross(e1, e2), nn)


def test_closely_layout_builds_for_table_sweep(closely_config):
    for side in closely_config.ris_sides:
        sc = closely_config.scenario(side)
        assert sc.regime is SpacingRegime.CLOSELY
        assert sc.far_field.all_ok
        # radar and RIS arrays parallel to the x-z plane
        assert np.allclose(sc.geometry.ris_normal, (0, 1, 0))
