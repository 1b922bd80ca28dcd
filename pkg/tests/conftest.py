import numpy as np
import pytest

from telemap import calibration, defaults


@pytest.fixture(scope="session")
def human():
    return defaults.load_human()


@pytest.fixture(scope="session")
def robot():
    return defaults.load_robot()


@pytest.fixture(scope="session")
def human_mapping(human):
    return defaults.calibrated_mapping(human)


@pytest.fixture(scope="session")
def robot_mapping(robot):
    return defaults.calibrated_mapping(robot)


@pytest.fixture(scope="session")
def robot_cal(robot):
    return calibration.load_calibration_set(
        defaults.data_dir() / "robot_default.cal", model=robot
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)


def random_pose(model, rng, margin=0.0):
    lo, hi = model.limits
    return rng.uniform(lo + margin, hi - margin)
