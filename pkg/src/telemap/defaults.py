"""Convenience loaders for the packaged default models and configs."""

from importlib import resources

from . import baselines, calibration, models


def data_dir():
    return resources.files("telemap") / "data"


def load_human():
    return models.load_model(data_dir() / "human_default.yaml")


def load_robot():
    return models.load_model(data_dir() / "robot_default.yaml")


def calibrated_mapping(model):
    """Calibrate a default model against its shipped calibration file."""
    cal = calibration.load_calibration_set(data_dir() / f"{model.name}.cal", model=model)
    mapping, _report = calibration.calibrate(model, cal)
    return mapping


def default_correspondence(master, slave):
    return baselines.load_correspondence(
        data_dir() / "correspondence_default.yaml", master, slave
    )


def default_fingertip_config(master=None, slave=None):
    return baselines.load_fingertip_config(
        data_dir() / "fingertip_default.yaml", master=master, slave=slave
    )


def sweep_path():
    return data_dir() / "sweep_500.csv"


def pinch_pose():
    import numpy as np
    import yaml

    with open(data_dir() / "pinch.yaml") as fh:
        doc = yaml.safe_load(fh)
    return np.asarray(doc["angles"], dtype=float)
