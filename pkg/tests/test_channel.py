import numpy as np
import pytest

from risradar.channel import (
    ChannelPhases,
    direct_amplitude,
    element_rcs_from_angles,
    indirect_amplitudes,
    link_budget,
    phase_decomposition,
    propagation_phase,
    wrap_phase,
)
from risradar.geometry import SpacingRegime

from conftest import random_scenario


def test_element_rcs_examples():
    assert element_rcs_from_angles(0.1, 0, 0, 0, 0) == pytest.approx(7.853981633974483e-3)
    assert element_rcs_from_angles(0.1, np.pi / 2, 0, 0, 0) == 0.0
    ratio = element_rcs_from_angles(0.1, 0, 0, 0, 0) / element_rcs_from_angles(0.1, np.pi / 3, 0, 0, 0)
    assert ratio == pytest.approx(2.0, rel=1e-15)


def test_element_rcs_back_face_is_zero():
    assert element_rcs_from_angles(0.1, 2.0, 0, 0, 0) == 0.0


def test_direct_amplitude_examples():
    assert direct_amplitude(1, 1, 1, 1) == pytest.approx(0.02244839026564582, rel=1e-14)
    assert direct_amplitude(1, 1, 1, 2) == pytest.approx(direct_amplitude(1, 1, 1, 1) / 4)
    assert direct_amplitude(1, 2, 1, 1) == pytest.approx(2 * direct_amplitude(1, 1, 1, 1))


def test_indirect_amplitude_examples():
    a_sr, a_st = indirect_amplitudes(1, 1, [1.0], 1, [1.0], [1.0], 1, 1, [1.0])
    assert a_sr[0] == pytest.approx(0.006332573977646111, rel=1e-14)
    assert a_st[0] == a_sr[0]
    dark, _ = indirect_amplitudes(1, 1, [1.0, 1.0], 1, [0.0, 1.0], [1.0, 1.0], 1, 1, [1.0, 1.0])
    assert dark[0] == 0.0


def test_sr_equals_st_on_every_scenario(antenna):
    rng = np.random.default_rng(7)
    for _ in range(5):
        link = random_scenario(rng, antenna).link
        assert np.array_equal(link.alpha_sr, link.alpha_st)


def test_amplitudes_scale_with_sqrt_power(antenna):
    rng = np.random.default_rng(11)
    for _ in range(5):
        sc = random_scenario(rng, antenna)
        lb1 = link_budget(sc.geometry, sc.derived, antenna, antenna, 3.0, 1.0)
        lb4 = link_budget(sc.geometry, sc.derived, antenna, antenna, 12.0, 1.0)
        assert lb4.alpha == pytest.approx(2 * lb1.alpha, rel=1e-14)
        assert np.allclose(lb4.alpha_sr, 2 * lb1.alpha_sr, rtol=1e-14, atol=0)


def test_widely_reference_phase_is_zero(widely_scenario):
    assert widely_scenario.phases.psi_t_dprime[0] == 0.0


def test_integer_wavelengths_give_zero_phase():
    lam = 0.125  # exact in binary so k*lambda has no rounding
    assert np.allclose(np.exp(1j * propagation_phase(np.arange(1, 50) * lam, lam)), 1.0, atol=1e-12)


def test_half_wavelength_offset_flips_phase():
    lam = 0.1
    p = propagation_phase(np.array([1000.0, 1000.05]) - 1000.0, lam)
    assert abs(p[1] - p[0]) == pytest.approx(np.pi, rel=1e-9)


def test_wrap_phase_range():
    x = np.array([-1e-18, -2 * np.pi, 0.0, 7.0, -7.0])
    w = wrap_phase(x)
    assert np.all((w >= 0) & (w < 2 * np.pi))


def test_closely_phase_differences_are_beta_free(closely_scenario):
    ph = closely_scenario.phases
    rng = np.random.default_rng(3)
    b1, b2 = rng.uniform(0, 2 * np.pi, 2)
    d1 = np.angle(np.exp(1j * ((ph.psi_t_prime + b1) - (ph.psi_t_prime[0] + b1))))
    d2 = np.angle(np.exp(1j * ((ph.psi_t_prime + b2) - (ph.psi_t_prime[0] + b2))))
    assert np.allclose(d1, d2, atol=1e-12)


def test_known_phases_select_regime():
    ph = ChannelPhases(np.zeros(2), np.ones(2), 2 * np.ones(2))
    assert ph.known_target_phases(SpacingRegime.CLOSELY)[0] == 1.0
    assert ph.known_target_phases(SpacingRegime.WIDELY)[0] == 2.0
    with pytest.raises(ValueError):
        ph.known_target_phases(SpacingRegime.INDETERMINATE)


def test_phase_decomposition_shapes(closely_scenario):
    ph = phase_decomposition(closely_scenario.geometry, closely_scenario.derived)
    L = closely_scenario.geometry.n_elements
    assert ph.psi_r.shape == ph.psi_t_prime.shape == ph.psi_t_dprime.shape == (L,)
