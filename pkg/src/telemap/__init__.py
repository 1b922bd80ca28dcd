"""Hand pose retargeting through a shared low-dimensional teleoperation
subspace, with joint-correspondence and fingertip-IK baselines."""

from importlib import resources

from .models import (
    FingerChain,
    HandModel,
    JointDescriptor,
    clamp_pose,
    forward_kinematics,
    load_model,
    save_model,
)
from .subspace import (
    ProjectionMatrix,
    ScalingFactors,
    SubspaceMapping,
    SubspacePoint,
    build_projection_matrix,
    load_mapping,
    map_pose,
    project_from_subspace,
    project_to_subspace,
    save_mapping,
)
from .calibration import (
    CalibrationSet,
    calibrate,
    compute_scaling,
    load_calibration_set,
    save_calibration_set,
)
from .baselines import (
    FingertipMapConfig,
    IkSettings,
    JointCorrespondence,
    fingertip_map,
    ik_solve,
    joint_map,
    load_correspondence,
    load_fingertip_config,
)
from .trajectory import Trajectory, read_trajectory, replay, write_trajectory

__version__ = "0.1.0"


def data_path(name):
    """Path to a packaged default data file (models, calibrations, sweeps)."""
    return resources.files("telemap") / "data" / name
