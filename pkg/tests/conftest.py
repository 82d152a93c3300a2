import numpy as np
import pytest

from risradar.antenna import SquareArrayAntenna
from risradar.experiments.config import default_config
from risradar.geometry import build_geometry
from risradar.scenario import build_scenario

LAMBDA = 0.1


@pytest.fixture(scope="session")
def antenna():
    return SquareArrayAntenna(1.0, LAMBDA)


@pytest.fixture(scope="session")
def closely_config():
    return default_config("closely")


@pytest.fixture(scope="session")
def widely_config():
    return default_config("widely")


@pytest.fixture(scope="session")
def closely_scenario(closely_config):
    return closely_config.scenario(2.0)


@pytest.fixture(scope="session")
def widely_scenario(widely_config):
    return widely_config.scenario(3.0)


def random_scenario(rng, antenna, *, ris_side=None, wavelength=LAMBDA):
    """A random far-field scene with the RIS facing the radar's half-space."""
    side = rng.uniform(0.3, 1.0) if ris_side is None else ris_side
    normal = rng.normal(size=3)
    normal /= np.linalg.norm(normal)
    helper = np.cross(normal, rng.normal(size=3))
    helper /= np.linalg.norm(helper)
    # radar and target in front of the RIS, off-axis by up to ~50 degrees
    def front(distance):
        t = rng.uniform(-0.8, 0.8) * helper + rng.uniform(-0.3, 0.3) * np.cross(normal, helper)
        d = normal + t
        return distance * d / np.linalg.norm(d)

    center = rng.uniform(-50, 50, size=3)
    radar = center + front(rng.uniform(30.0, 80.0))
    target = center + front(rng.uniform(500.0, 3000.0))
    geom, derived = build_geometry(
        radar_position=radar, target_position=target, ris_center=center, ris_normal=normal,
        ris_side=side, wavelength=wavelength, bandwidth=10e6, radar_aperture_target=1.0,
        radar_aperture_ris=1.0, target_size=1.0,
    )
    return build_scenario(geom, derived, antenna_target=antenna, antenna_ris=antenna,
                          transmit_power=rng.uniform(10.0, 1e4), noise_power=1e-13)


ACCEPTANCE_KEY = pytest.StashKey[dict]()


@pytest.fixture(scope="session")
def acceptance_log(request):
    return request.config.stash.setdefault(ACCEPTANCE_KEY, {})


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_KEY, {})
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(lines):
        terminalreporter.write_line(lines[number])
