"""Hand models: joints with limits, finger chains, origin pose, and the
per-joint subspace axis assignment.

Models load from a YAML document (schema below) and are immutable after
load; every operation here is a pure function of its inputs.

Schema::

    name: robot_default
    joints:
      - {name: f0_prox, min: -0.3, max: 1.6, axis: sigma}   # axis: alpha|sigma|epsilon|none
    fingers:
      - name: f0
        base_position: [x, y, z]            # meters, hand frame
        base_orientation: [w, x, y, z]      # unit quaternion, or 3x3 nested rows
        joints: [f0_prox, f0_dis]           # names or indices, chain order
        link_lengths: [0.075, 0.055]        # one per flexion joint
        adduction_joint: f1_ad              # optional, must appear in joints
    origin_pose: [radians, ...]

Angles are radians, lengths meters, throughout.
"""

from dataclasses import dataclass, field

import numpy as np
import yaml

from .errors import (
    LengthMismatchError,
    LimitError,
    SchemaError,
    UnknownFingerError,
)
from . import kernels

AXIS_NAMES = ("alpha", "sigma", "epsilon")
AXIS_NONE = "none"


@dataclass(frozen=True)
class JointDescriptor:
    name: str
    min_angle: float
    max_angle: float
    axis: str = AXIS_NONE  # winner-take-all: one axis per joint, or "none"

    def __post_init__(self):
        if self.axis not in AXIS_NAMES + (AXIS_NONE,):
            raise SchemaError(f"unknown axis '{self.axis}'", field="axis")
        if not self.min_angle < self.max_angle:
            raise LimitError(
                f"joint '{self.name}': min_angle {self.min_angle} must be < "
                f"max_angle {self.max_angle}"
            )


@dataclass(frozen=True)
class FingerChain:
    name: str
    base_position: np.ndarray  # (3,) meters
    base_orientation: np.ndarray  # (3,3) rotation
    joint_indices: tuple  # chain order, indices into the model joint list
    link_lengths: np.ndarray  # one per flexion joint
    adduction_joint_index: int | None = None

    @property
    def flexion_indices(self):
        return tuple(i for i in self.joint_indices if i != self.adduction_joint_index)

    @property
    def has_adduction(self):
        return self.adduction_joint_index is not None

    @property
    def reach(self):
        return float(np.sum(self.link_lengths))

    def chain_order(self):
        """Model joint indices in kernel order: adduction first, then flexion."""
        if self.has_adduction:
            return (self.adduction_joint_index,) + self.flexion_indices
        return self.flexion_indices


@dataclass(frozen=True)
class HandModel:
    name: str
    joints: tuple  # of JointDescriptor
    fingers: tuple  # of FingerChain
    origin_pose: np.ndarray

    def __post_init__(self):
        n = len(self.joints)
        if self.origin_pose.shape != (n,):
            raise SchemaError(
                f"origin_pose has {self.origin_pose.shape[0]} entries, model has {n} joints",
                field="origin_pose",
            )
        lo, hi = self.limits
        if np.any(self.origin_pose < lo) or np.any(self.origin_pose > hi):
            bad = int(np.argmax((self.origin_pose < lo) | (self.origin_pose > hi)))
            raise LimitError(
                f"origin_pose[{bad}] = {self.origin_pose[bad]} outside limits of "
                f"joint '{self.joints[bad].name}'"
            )
        seen = {}
        for f in self.fingers:
            for i in f.joint_indices:
                if not 0 <= i < n:
                    raise SchemaError(
                        f"finger '{f.name}' references joint index {i}, model has {n} joints",
                        field="joints",
                    )
                if i in seen:
                    raise SchemaError(
                        f"joint '{self.joints[i].name}' referenced by fingers "
                        f"'{seen[i]}' and '{f.name}'",
                        field="joints",
                    )
                seen[i] = f.name
            if len(set(f.joint_indices)) != len(f.joint_indices):
                raise SchemaError(f"finger '{f.name}' repeats a joint index", field="joints")
            if f.adduction_joint_index is not None and f.adduction_joint_index not in f.joint_indices:
                raise SchemaError(
                    f"finger '{f.name}': adduction_joint not in its joint list",
                    field="adduction_joint",
                )
            if len(f.link_lengths) != len(f.flexion_indices):
                raise SchemaError(
                    f"finger '{f.name}': {len(f.link_lengths)} link lengths for "
                    f"{len(f.flexion_indices)} flexion joints",
                    field="link_lengths",
                )

    @property
    def joint_count(self):
        return len(self.joints)

    @property
    def joint_names(self):
        return tuple(j.name for j in self.joints)

    @property
    def limits(self):
        lo = np.array([j.min_angle for j in self.joints])
        hi = np.array([j.max_angle for j in self.joints])
        return lo, hi

    def finger(self, name):
        for f in self.fingers:
            if f.name == name:
                return f
        raise UnknownFingerError(
            f"model '{self.name}' has no finger '{name}' "
            f"(has: {', '.join(f.name for f in self.fingers)})"
        )

    def joint_index(self, ref):
        """Resolve a joint name or integer index."""
        if isinstance(ref, int):
            if not 0 <= ref < self.joint_count:
                raise SchemaError(f"joint index {ref} out of range for '{self.name}'")
            return ref
        for i, j in enumerate(self.joints):
            if j.name == ref:
                return i
        raise SchemaError(f"model '{self.name}' has no joint '{ref}'")


def check_pose(model, pose):
    """Validate and return a pose as a float array of the model's length."""
    q = np.asarray(pose, dtype=float)
    if q.shape != (model.joint_count,):
        raise LengthMismatchError(
            f"pose has {q.size} entries, model '{model.name}' has {model.joint_count} joints"
        )
    if not np.all(np.isfinite(q)):
        raise LengthMismatchError(f"pose for '{model.name}' contains non-finite values")
    return q


def clamp_pose(model, pose):
    """Clamp each angle into its joint's [min, max]. Idempotent."""
    q = check_pose(model, pose)
    lo, hi = model.limits
    return np.clip(q, lo, hi)


def pose_in_limits(model, pose, atol=0.0):
    q = check_pose(model, pose)
    lo, hi = model.limits
    return bool(np.all(q >= lo - atol) and np.all(q <= hi + atol))


def chain_state(model, pose, chain):
    """Extract a chain's state vector in kernel order [adduction?, flex...]."""
    q = check_pose(model, pose)
    return q[list(chain.chain_order())]


def forward_kinematics(model, pose, finger):
    """Fingertip position (meters, hand frame) of one finger chain."""
    chain = model.finger(finger)
    qc = chain_state(model, pose, chain)
    tip_local = kernels.chain_tip(qc, chain.link_lengths, chain.has_adduction)
    return chain.base_position + chain.base_orientation @ tip_local


def fingertips(model, pose):
    """All fingertip positions keyed by chain name."""
    return {f.name: forward_kinematics(model, pose, f.name) for f in model.fingers}


def _rotation_from_document(value, where):
    arr = np.asarray(value, dtype=float)
    if arr.shape == (4,):
        w, x, y, z = arr
        n = np.linalg.norm(arr)
        if abs(n - 1.0) > 1e-6:
            raise SchemaError(
                f"quaternion norm {n:.6g} is not 1", field="base_orientation", path=where
            )
        w, x, y, z = arr / n
        R = np.array(
            [
                [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
                [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
                [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
            ]
        )
    elif arr.shape == (3, 3):
        R = arr
    else:
        raise SchemaError(
            "base_orientation must be a quaternion [w,x,y,z] or a 3x3 matrix",
            field="base_orientation",
            path=where,
        )
    if np.max(np.abs(R.T @ R - np.eye(3))) > 1e-8 or np.linalg.det(R) < 0:
        raise SchemaError(
            "base_orientation is not a proper rotation", field="base_orientation", path=where
        )
    return R


def model_from_dict(doc, path=None):
    """Build and validate a HandModel from a parsed document."""
    if not isinstance(doc, dict):
        raise SchemaError("hand model document must be a mapping", path=path)
    for key in ("name", "joints", "origin_pose"):
        if key not in doc:
            raise SchemaError("missing required key", field=key, path=path)

    joints = []
    for i, j in enumerate(doc["joints"]):
        for key in ("name", "min", "max"):
            if key not in j:
                raise SchemaError(f"joints[{i}] missing key", field=key, path=path)
        joints.append(
            JointDescriptor(
                name=str(j["name"]),
                min_angle=float(j["min"]),
                max_angle=float(j["max"]),
                axis=str(j.get("axis", AXIS_NONE)),
            )
        )
    names = [j.name for j in joints]
    if len(set(names)) != len(names):
        raise SchemaError("duplicate joint names", field="joints", path=path)

    def resolve(ref, where):
        if isinstance(ref, int):
            if not 0 <= ref < len(joints):
                raise SchemaError(f"joint index {ref} out of range", field=where, path=path)
            return ref
        if ref not in names:
            raise SchemaError(f"unknown joint '{ref}'", field=where, path=path)
        return names.index(ref)

    fingers = []
    for f in doc.get("fingers", []):
        fname = str(f.get("name", "?"))
        for key in ("base_position", "joints", "link_lengths"):
            if key not in f:
                raise SchemaError(f"finger '{fname}' missing key", field=key, path=path)
        idx = tuple(resolve(r, f"fingers.{fname}.joints") for r in f["joints"])
        add = f.get("adduction_joint")
        add_idx = None if add is None else resolve(add, f"fingers.{fname}.adduction_joint")
        orientation = f.get("base_orientation", [1.0, 0.0, 0.0, 0.0])
        fingers.append(
            FingerChain(
                name=fname,
                base_position=np.asarray(f["base_position"], dtype=float),
                base_orientation=_rotation_from_document(orientation, path),
                joint_indices=idx,
                link_lengths=np.asarray(f["link_lengths"], dtype=float),
                adduction_joint_index=add_idx,
            )
        )

    return HandModel(
        name=str(doc["name"]),
        joints=tuple(joints),
        fingers=tuple(fingers),
        origin_pose=np.asarray(doc["origin_pose"], dtype=float),
    )


def model_to_dict(model):
    return {
        "name": model.name,
        "joints": [
            {"name": j.name, "min": j.min_angle, "max": j.max_angle, "axis": j.axis}
            for j in model.joints
        ],
        "fingers": [
            {
                "name": f.name,
                "base_position": [float(v) for v in f.base_position],
                "base_orientation": [[float(v) for v in row] for row in f.base_orientation],
                "joints": [model.joints[i].name for i in f.joint_indices],
                "link_lengths": [float(v) for v in f.link_lengths],
                "adduction_joint": (
                    None
                    if f.adduction_joint_index is None
                    else model.joints[f.adduction_joint_index].name
                ),
            }
            for f in model.fingers
        ],
        "origin_pose": [float(v) for v in model.origin_pose],
    }


def load_model(path):
    with open(path) as fh:
        try:
            doc = yaml.safe_load(fh)
        except yaml.YAMLError as exc:
            raise SchemaError(f"not valid YAML: {exc}", path=path) from exc
    return model_from_dict(doc, path=path)


def save_model(model, path):
    with open(path, "w") as fh:
        yaml.safe_dump(model_to_dict(model), fh, sort_keys=False)
