"""Timestamped pose trajectories: delimited-text I/O, replay through any
of the three mapping methods, and desk-scale comparison metrics.

File format: an optional comment line ``# model: <name>``, then a header
row ``time,<joint names...>``, one sample per row. Seconds and radians.
"""

import csv
import time as _time
from dataclasses import dataclass, field

import numpy as np

from .errors import SchemaError, TelemapError
from .models import check_pose, clamp_pose, forward_kinematics
from .subspace import map_pose
from .baselines import fingertip_map, joint_map

METHODS = ("subspace", "joint", "fingertip")


@dataclass(frozen=True)
class Trajectory:
    model_name: str
    times: np.ndarray  # (S,), strictly increasing seconds
    poses: np.ndarray  # (S, N) radians
    joint_names: tuple = ()

    def __post_init__(self):
        if self.times.ndim != 1 or self.poses.ndim != 2 or self.times.shape[0] != self.poses.shape[0]:
            raise SchemaError("trajectory times and poses must align")
        if self.times.shape[0] > 1 and not np.all(np.diff(self.times) > 0):
            bad = int(np.argmax(np.diff(self.times) <= 0)) + 1
            raise SchemaError(f"timestamps must strictly increase (row {bad})")
        if self.joint_names and len(self.joint_names) != self.poses.shape[1]:
            raise SchemaError("joint_names length does not match pose width")

    def __len__(self):
        return self.times.shape[0]


@dataclass
class MethodReport:
    method: str
    mean_fingertip_error: float  # meters, vs. the scaled/rotated master tips
    max_joint_velocity: float  # rad/s between consecutive slave samples
    subspace_residual: float  # max distance of slave poses from origin+span(A_s)
    latency_median: float  # seconds per sample, mapping call only
    latency_mean: float
    latency_p95: float
    latency_histogram_edges: list = field(default_factory=list)  # seconds
    latency_histogram_counts: list = field(default_factory=list)
    ik_converged_fraction: float = 1.0

    def format(self):
        return (
            f"{self.method:10s} tip_err={self.mean_fingertip_error * 1e3:8.3f} mm  "
            f"max_vel={self.max_joint_velocity:8.3f} rad/s  "
            f"residual={self.subspace_residual:.3e}  "
            f"lat_med={self.latency_median * 1e6:8.2f} us  "
            f"lat_p95={self.latency_p95 * 1e6:8.2f} us  "
            f"ik_conv={self.ik_converged_fraction:.2f}"
        )


def write_trajectory(traj, path):
    with open(path, "w", newline="") as fh:
        if traj.model_name:
            fh.write(f"# model: {traj.model_name}\n")
        w = csv.writer(fh)
        names = traj.joint_names or tuple(f"q{i}" for i in range(traj.poses.shape[1]))
        w.writerow(("time",) + names)
        for t, q in zip(traj.times, traj.poses):
            w.writerow([repr(float(t))] + [repr(float(v)) for v in q])


def read_trajectory(path, model=None):
    model_name = ""
    times = []
    rows = []
    with open(path, newline="") as fh:
        first = fh.readline()
        if first.startswith("#"):
            if "model:" in first:
                model_name = first.split("model:", 1)[1].strip()
            header_line = fh.readline()
        else:
            header_line = first
        header = next(csv.reader([header_line])) if header_line.strip() else []
        if not header or header[0] != "time":
            raise SchemaError("header must start with 'time'", path=path)
        names = tuple(header[1:])
        width = len(names)
        for lineno, row in enumerate(csv.reader(fh), start=3):
            if not row:
                continue
            if len(row) != width + 1:
                raise SchemaError(
                    f"row {lineno}: expected {width + 1} columns, got {len(row)}", path=path
                )
            try:
                times.append(float(row[0]))
                rows.append([float(v) for v in row[1:]])
            except ValueError as exc:
                raise SchemaError(f"row {lineno}: {exc}", path=path) from exc
    traj = Trajectory(
        model_name=model_name,
        times=np.asarray(times, dtype=float),
        poses=np.asarray(rows, dtype=float).reshape(len(rows), width),
        joint_names=names,
    )
    if model is not None:
        if traj.poses.shape[1] != model.joint_count:
            raise SchemaError(
                f"trajectory has {traj.poses.shape[1]} joints, model "
                f"'{model.name}' has {model.joint_count}",
                path=path,
            )
        if traj.joint_names and traj.joint_names != model.joint_names:
            raise SchemaError(
                f"trajectory joint names do not match model '{model.name}'", path=path
            )
    return traj


def _span_residual(q_s, slave_mapping):
    """Distance (inf-norm) of a slave pose from origin + span(A_slave)."""
    A = slave_mapping.matrix.columns
    d = q_s - slave_mapping.origin
    return float(np.max(np.abs(d - A @ (A.T @ d))))


def replay(
    traj,
    method,
    master,
    slave,
    master_mapping=None,
    slave_mapping=None,
    correspondence=None,
    fingertip_config=None,
):
    """Map every sample of a master trajectory to the slave hand.

    Fingertip IK is warm-started from the previous output sample; the
    first sample seeds at the slave origin. Returns
    (slave Trajectory, MethodReport).
    """
    if method not in METHODS:
        raise TelemapError(f"unknown method '{method}' (have: {', '.join(METHODS)})")
    if traj.poses.shape[1] != master.joint_count:
        raise TelemapError(
            f"trajectory width {traj.poses.shape[1]} does not match master "
            f"'{master.name}' ({master.joint_count} joints)"
        )
    if method == "subspace" and (master_mapping is None or slave_mapping is None):
        raise TelemapError("subspace replay needs master and slave mappings")
    if method == "joint" and correspondence is None:
        raise TelemapError("joint replay needs a correspondence table")
    if method == "fingertip" and fingertip_config is None:
        raise TelemapError("fingertip replay needs a fingertip config")

    n_samples = len(traj)
    out = np.empty((n_samples, slave.joint_count))
    latencies = np.empty(n_samples)
    converged = 0
    ik_calls = 0
    seed = slave.origin_pose.copy()

    for k in range(n_samples):
        q_m = traj.poses[k]
        t0 = _time.perf_counter()
        if method == "subspace":
            q_s = map_pose(q_m, master_mapping, slave_mapping)
        elif method == "joint":
            q_s = joint_map(q_m, correspondence, slave)
        else:
            q_s, reports = fingertip_map(q_m, master, slave, fingertip_config, seed)
            for r in reports.values():
                ik_calls += 1
                converged += int(r.converged)
            seed = q_s
        latencies[k] = _time.perf_counter() - t0
        out[k] = clamp_pose(slave, q_s)

    slave_traj = Trajectory(
        model_name=slave.name,
        times=traj.times.copy(),
        poses=out,
        joint_names=slave.joint_names,
    )
    report = _build_report(
        method, traj, slave_traj, master, slave, slave_mapping, fingertip_config, latencies
    )
    if ik_calls:
        report.ik_converged_fraction = converged / ik_calls
    return slave_traj, report


def _build_report(method, traj, slave_traj, master, slave, slave_mapping, ft_cfg, latencies):
    # fingertip tracking error against the scaled, rotated master tips,
    # using the shipped fingertip-config pairing when available
    tip_err = 0.0
    if ft_cfg is not None and ft_cfg.finger_pairs:
        errs = []
        for k in range(len(traj)):
            for m_name, s_name in ft_cfg.finger_pairs:
                target = ft_cfg.hand_frame_rotation @ (
                    ft_cfg.scale * forward_kinematics(master, traj.poses[k], m_name)
                )
                tip = forward_kinematics(slave, slave_traj.poses[k], s_name)
                errs.append(np.linalg.norm(target - tip))
        tip_err = float(np.mean(errs))

    max_vel = 0.0
    if len(traj) > 1:
        dt = np.diff(slave_traj.times)[:, None]
        max_vel = float(np.max(np.abs(np.diff(slave_traj.poses, axis=0)) / dt))

    residual = 0.0
    if slave_mapping is not None:
        residual = max(_span_residual(q, slave_mapping) for q in slave_traj.poses)

    edges = np.array([0.0, 1e-6, 2e-6, 5e-6, 1e-5, 2e-5, 5e-5, 1e-4, 1e-3, np.inf])
    counts, _ = np.histogram(latencies, bins=edges)
    return MethodReport(
        method=method,
        mean_fingertip_error=tip_err,
        max_joint_velocity=max_vel,
        subspace_residual=residual,
        latency_median=float(np.median(latencies)),
        latency_mean=float(np.mean(latencies)),
        latency_p95=float(np.percentile(latencies, 95)),
        latency_histogram_edges=[float(e) for e in edges[:-1]],
        latency_histogram_counts=[int(c) for c in counts],
    )


def report_to_dict(report):
    return {
        "method": report.method,
        "mean_fingertip_error_m": report.mean_fingertip_error,
        "max_joint_velocity_rad_s": report.max_joint_velocity,
        "subspace_residual": report.subspace_residual,
        "latency_median_s": report.latency_median,
        "latency_mean_s": report.latency_mean,
        "latency_p95_s": report.latency_p95,
        "latency_histogram_edges_s": report.latency_histogram_edges,
        "latency_histogram_counts": report.latency_histogram_counts,
        "ik_converged_fraction": report.ik_converged_fraction,
    }
