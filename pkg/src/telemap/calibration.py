"""Scaling-factor calibration from user-demonstrated extrema poses.

Each calibration pose carries one or more labels from
{alpha,sigma,epsilon}_{min,max}. Poses are projected unscaled,
t = (q - o) . A; per axis the min and max are taken over every pose
labeled for that axis, the range is |max| + |min|, and delta is its
reciprocal (0 for a zero range, which makes the axis inert).

Note the |max| + |min| convention: with extrema of opposite sign it
equals max - min; with same-sign extrema it does not. The report carries
both numbers so same-sign calibrations are visible.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np
import yaml

from .errors import CalibrationError, LimitError, SchemaError
from .models import AXIS_NAMES, check_pose, pose_in_limits
from .subspace import (
    ScalingFactors,
    SubspaceMapping,
    build_projection_matrix,
)

VALID_LABELS = tuple(f"{axis}_{end}" for axis in AXIS_NAMES for end in ("min", "max"))


@dataclass(frozen=True)
class CalibrationSet:
    model_name: str
    poses: tuple  # of (labels: tuple of str, pose: np.ndarray)

    def labeled_for(self, axis):
        """Poses carrying any label of the given axis."""
        want = (f"{axis}_min", f"{axis}_max")
        return [p for labels, p in self.poses if any(l in want for l in labels)]

    def has_both_ends(self, axis):
        labels = {l for ls, _ in self.poses for l in ls}
        return f"{axis}_min" in labels and f"{axis}_max" in labels


@dataclass
class AxisReport:
    axis: str
    inert: bool
    t_min: float = 0.0
    t_max: float = 0.0
    range_abs: float = 0.0  # |max| + |min|, the normative range
    range_span: float = 0.0  # max - min, for comparison in the report
    delta: float = 0.0


@dataclass
class CalibrationReport:
    model_name: str
    axes: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    def format(self):
        lines = [f"calibration report for '{self.model_name}'"]
        for a in self.axes:
            if a.inert and a.range_abs == 0.0 and a.t_min == a.t_max == 0.0:
                lines.append(f"  {a.axis:8s} inert (zero projection column or zero range)")
                continue
            lines.append(
                f"  {a.axis:8s} t_min={a.t_min:+.6f} t_max={a.t_max:+.6f} "
                f"|max|+|min|={a.range_abs:.6f} max-min={a.range_span:.6f} "
                f"delta={a.delta:.6f}{'  [inert]' if a.inert else ''}"
            )
        for w in self.warnings:
            lines.append(f"  warning: {w}")
        return "\n".join(lines)


def compute_scaling(cal_set, origin, matrix):
    """Scaling factors per the extrema-pose procedure; see module docstring.

    Returns (ScalingFactors, CalibrationReport). Axes with a zero
    projection column are inert and need no labeled poses; otherwise both
    a *_min and a *_max labeled pose are required.
    """
    report = CalibrationReport(model_name=cal_set.model_name)
    inert_axes = matrix.inert_axes()
    delta = np.zeros(3)
    if len(inert_axes) == 3:
        msg = "projection matrix is all zero: every axis is inert"
        report.warnings.append(msg)
        warnings.warn(msg, stacklevel=2)

    for c, axis in enumerate(AXIS_NAMES):
        if c in inert_axes:
            report.axes.append(AxisReport(axis=axis, inert=True))
            if len(inert_axes) < 3:
                report.warnings.append(f"axis {axis} has no assigned joints; inert")
            continue
        poses = cal_set.labeled_for(axis)
        if not poses or not cal_set.has_both_ends(axis):
            raise CalibrationError(
                f"axis {axis}: calibration set needs at least one {axis}_min and "
                f"one {axis}_max labeled pose"
            )
        t_vals = [float((q - origin) @ matrix.columns[:, c]) for q in poses]
        t_min, t_max = min(t_vals), max(t_vals)
        range_abs = abs(t_max) + abs(t_min)
        d = 0.0 if range_abs == 0.0 else 1.0 / range_abs
        delta[c] = d
        inert = d == 0.0
        if inert:
            report.warnings.append(f"axis {axis} has zero calibrated range; inert")
        elif t_min * t_max > 0:
            report.warnings.append(
                f"axis {axis} extrema share a sign: |max|+|min|={range_abs:.6g} "
                f"differs from max-min={t_max - t_min:.6g}"
            )
        report.axes.append(
            AxisReport(
                axis=axis,
                inert=inert,
                t_min=t_min,
                t_max=t_max,
                range_abs=range_abs,
                range_span=t_max - t_min,
                delta=d,
            )
        )
    return ScalingFactors.from_delta(delta), report


def calibrate(model, cal_set):
    """Full bundle: origin from the model, winner-take-all matrix, scaling
    from the extrema poses. Returns (SubspaceMapping, CalibrationReport)."""
    if cal_set.model_name and cal_set.model_name != model.name:
        raise CalibrationError(
            f"calibration set is for '{cal_set.model_name}', model is '{model.name}'"
        )
    for labels, q in cal_set.poses:
        if not pose_in_limits(model, q, atol=1e-9):
            raise LimitError(
                f"calibration pose labeled {list(labels)} violates joint limits of "
                f"'{model.name}'"
            )
    matrix = build_projection_matrix(model)
    scaling, report = compute_scaling(cal_set, model.origin_pose, matrix)
    mapping = SubspaceMapping(
        model_name=model.name,
        origin=model.origin_pose.copy(),
        matrix=matrix,
        scaling=scaling,
    )
    return mapping, report


def calibration_set_from_dict(doc, model=None, path=None):
    if not isinstance(doc, dict):
        raise SchemaError("calibration document must be a mapping", path=path)
    for key in ("model_name", "poses"):
        if key not in doc:
            raise SchemaError("missing required key", field=key, path=path)
    poses = []
    for i, entry in enumerate(doc["poses"]):
        for key in ("labels", "angles"):
            if key not in entry:
                raise SchemaError(f"poses[{i}] missing key", field=key, path=path)
        labels = tuple(str(l) for l in entry["labels"])
        for l in labels:
            if l not in VALID_LABELS:
                raise SchemaError(
                    f"poses[{i}]: unknown label '{l}' (valid: {', '.join(VALID_LABELS)})",
                    field="labels",
                    path=path,
                )
        q = np.asarray(entry["angles"], dtype=float)
        if model is not None:
            q = check_pose(model, q)
        poses.append((labels, q))
    return CalibrationSet(model_name=str(doc["model_name"]), poses=tuple(poses))


def calibration_set_to_dict(cal_set):
    return {
        "model_name": cal_set.model_name,
        "poses": [
            {"labels": list(labels), "angles": [float(v) for v in q]}
            for labels, q in cal_set.poses
        ],
    }


def load_calibration_set(path, model=None):
    with open(path) as fh:
        try:
            doc = yaml.safe_load(fh)
        except yaml.YAMLError as exc:
            raise SchemaError(f"not valid YAML: {exc}", path=path) from exc
    return calibration_set_from_dict(doc, model=model, path=path)


def save_calibration_set(cal_set, path):
    with open(path, "w") as fh:
        yaml.safe_dump(calibration_set_to_dict(cal_set), fh, sort_keys=False)
