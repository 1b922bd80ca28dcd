"""Baseline retargeting methods: per-joint affine correspondence mapping,
and Cartesian fingertip mapping (FK, scale, frame rotation, damped
least-squares IK per finger).
"""

import math
from dataclasses import dataclass, field

import numpy as np
import yaml

from . import kernels
from .errors import SchemaError, TelemapError
from .models import chain_state, check_pose, clamp_pose, forward_kinematics


@dataclass(frozen=True)
class JointCorrespondence:
    """Pairs (master index, slave index, gain, offset); each slave joint is
    driven by at most one master joint."""

    pairs: tuple  # of (int, int, float, float)

    def __post_init__(self):
        slaves = [p[1] for p in self.pairs]
        if len(set(slaves)) != len(slaves):
            dup = next(s for s in slaves if slaves.count(s) > 1)
            raise SchemaError(f"slave joint {dup} driven by more than one master joint")


@dataclass(frozen=True)
class IkSettings:
    damping: float = 0.01
    max_iterations: int = 200
    position_tolerance: float = 1e-6  # meters
    step_limit: float = 0.2  # radians per iteration

    def __post_init__(self):
        for name in ("damping", "max_iterations", "position_tolerance", "step_limit"):
            if getattr(self, name) <= 0:
                raise SchemaError(f"IK setting '{name}' must be positive")


@dataclass
class IkReport:
    finger: str
    iterations: int
    final_error: float  # meters
    converged: bool


@dataclass(frozen=True)
class FingertipMapConfig:
    scale: float = 1.5  # human-to-robot finger length ratio
    hand_frame_rotation: np.ndarray = field(default_factory=lambda: np.eye(3))
    finger_pairs: tuple = ()  # of (master chain name, slave chain name)
    ik: IkSettings = field(default_factory=IkSettings)

    def __post_init__(self):
        R = self.hand_frame_rotation
        if R.shape != (3, 3) or np.max(np.abs(R.T @ R - np.eye(3))) > 1e-9 or np.linalg.det(R) < 0:
            raise SchemaError("hand_frame_rotation must be a proper rotation (tolerance 1e-9)")


def joint_map(q_m, corr, slave):
    """Slave pose from the correspondence table: start at the slave origin,
    set slave[j] = gain * q_m[i] + offset per pair, clamp to limits."""
    q_m = np.asarray(q_m, dtype=float)
    q_s = slave.origin_pose.copy()
    for i, j, gain, offset in corr.pairs:
        if not 0 <= i < q_m.shape[0]:
            raise SchemaError(f"master joint index {i} out of range")
        if not 0 <= j < slave.joint_count:
            raise SchemaError(f"slave joint index {j} out of range for '{slave.name}'")
        q_s[j] = gain * q_m[i] + offset
    return clamp_pose(slave, q_s)


def ik_solve(model, finger, target, seed, settings=None):
    """Damped least-squares IK moving only the named chain's joints.

    `target` is in the hand frame. Unreachable targets are not fatal: the
    best-effort pose comes back with converged=False in the report.
    Returns (pose, IkReport).
    """
    settings = settings or IkSettings()
    chain = model.finger(finger)
    q = check_pose(model, seed).copy()
    target = np.asarray(target, dtype=float)
    if target.shape != (3,):
        raise TelemapError(f"IK target must be a 3-vector, got shape {target.shape}")

    # express the target in the chain's local frame
    target_local = chain.base_orientation.T @ (target - chain.base_position)

    order = list(chain.chain_order())
    lo = np.array([model.joints[i].min_angle for i in order])
    hi = np.array([model.joints[i].max_angle for i in order])

    def run(start):
        return kernels.dls_solve(
            target_local,
            start,
            chain.link_lengths,
            chain.has_adduction,
            lo,
            hi,
            settings.damping,
            settings.max_iterations,
            settings.position_tolerance,
            settings.step_limit,
        )

    qc_new, iters, err, converged = run(chain_state(model, q, chain))
    total_iters = int(iters)
    if not converged:
        # DLS can stall in a fold of the workspace (e.g. curled-back
        # targets); restart from a deterministic grid over the chain box
        # and keep the best result
        levels = [lo + f * (hi - lo) for f in (0.0, 0.25, 0.5, 0.75, 1.0)]
        for combo in _seed_grid(levels):
            qc_try, iters, err_try, conv_try = run(combo)
            total_iters += int(iters)
            if err_try < err:
                qc_new, err, converged = qc_try, err_try, conv_try
            if converged:
                break

    q[order] = qc_new
    return q, IkReport(finger=finger, iterations=total_iters, final_error=float(err),
                       converged=bool(converged))


def _seed_grid(levels):
    """All combinations of per-joint levels, one chain state per combo."""
    m = levels[0].shape[0]
    grids = np.meshgrid(*[[lv[j] for lv in levels] for j in range(m)], indexing="ij")
    return [np.array(combo) for combo in zip(*(g.ravel() for g in grids))]


def analytic_two_link_ik(chain, target):
    """Closed-form IK for an (adduction +) two-flexion-link chain; both
    elbow branches, hand-frame target. Cross-check for the DLS path;
    ignores joint limits. Returns a list of chain-state vectors."""
    if chain.link_lengths.shape[0] != 2:
        raise TelemapError("analytic IK only covers two-link chains")
    l1, l2 = chain.link_lengths
    p = chain.base_orientation.T @ (np.asarray(target, dtype=float) - chain.base_position)
    if chain.has_adduction:
        add = math.atan2(p[1], p[0])
        r = math.hypot(p[0], p[1])
        add_flip = add - math.pi if add > 0 else add + math.pi
        families = [(add, r), (add_flip, -r)]  # curled-back targets: negative radius
    else:
        families = [(None, p[0])]
    z = -p[2]  # positive flexion curls toward -z
    solutions = []
    for add, r in families:
        d2 = r * r + z * z
        c2 = (d2 - l1 * l1 - l2 * l2) / (2 * l1 * l2)
        if abs(c2) > 1.0 + 1e-12:
            continue
        c2 = min(1.0, max(-1.0, c2))
        for s2 in (math.sqrt(1 - c2 * c2), -math.sqrt(1 - c2 * c2)):
            th2 = math.atan2(s2, c2)
            th1 = math.atan2(z, r) - math.atan2(l2 * s2, l1 + l2 * c2)
            qc = [th1, th2] if add is None else [add, th1, th2]
            solutions.append(np.array(qc))
    return solutions


def fingertip_map(q_m, master, slave, cfg, slave_seed):
    """Retarget fingertips: master FK, scale, rotate into the slave hand
    frame, then per-finger IK from the seed. Unpaired slave joints keep
    their seed values. Returns (pose, {slave finger: IkReport})."""
    q_m = check_pose(master, q_m)
    q_s = check_pose(slave, slave_seed).copy()
    reports = {}
    for m_name, s_name in cfg.finger_pairs:
        p = forward_kinematics(master, q_m, m_name)
        target = cfg.hand_frame_rotation @ (cfg.scale * p)
        q_s, reports[s_name] = ik_solve(slave, s_name, target, q_s, cfg.ik)
    return q_s, reports


def correspondence_from_dict(doc, master, slave, path=None):
    """Parse [{master, slave, gain, offset}, ...]; names or indices."""
    if not isinstance(doc, (list, tuple)):
        raise SchemaError("correspondence document must be an array of pairs", path=path)
    pairs = []
    for k, entry in enumerate(doc):
        for key in ("master", "slave"):
            if key not in entry:
                raise SchemaError(f"pairs[{k}] missing key", field=key, path=path)
        pairs.append(
            (
                master.joint_index(entry["master"]),
                slave.joint_index(entry["slave"]),
                float(entry.get("gain", 1.0)),
                float(entry.get("offset", 0.0)),
            )
        )
    return JointCorrespondence(pairs=tuple(pairs))


def load_correspondence(path, master, slave):
    with open(path) as fh:
        try:
            doc = yaml.safe_load(fh)
        except yaml.YAMLError as exc:
            raise SchemaError(f"not valid YAML: {exc}", path=path) from exc
    return correspondence_from_dict(doc, master, slave, path=path)


def fingertip_config_from_dict(doc, master=None, slave=None, path=None):
    """Parse {scale, rotation (3x3 rows), pairs, ik: {...}}."""
    if not isinstance(doc, dict):
        raise SchemaError("fingertip config must be a mapping", path=path)
    ik = doc.get("ik", {})
    cfg = FingertipMapConfig(
        scale=float(doc.get("scale", 1.5)),
        hand_frame_rotation=np.asarray(doc.get("rotation", np.eye(3)), dtype=float),
        finger_pairs=tuple((str(m), str(s)) for m, s in doc.get("pairs", [])),
        ik=IkSettings(
            damping=float(ik.get("damping", 0.01)),
            max_iterations=int(ik.get("max_iterations", 200)),
            position_tolerance=float(ik.get("position_tolerance", 1e-6)),
            step_limit=float(ik.get("step_limit", 0.2)),
        ),
    )
    for m_name, s_name in cfg.finger_pairs:
        if master is not None:
            master.finger(m_name)
        if slave is not None:
            slave.finger(s_name)
    return cfg


def load_fingertip_config(path, master=None, slave=None):
    with open(path) as fh:
        try:
            doc = yaml.safe_load(fh)
        except yaml.YAMLError as exc:
            raise SchemaError(f"not valid YAML: {exc}", path=path) from exc
    return fingertip_config_from_dict(doc, master=master, slave=slave, path=path)
