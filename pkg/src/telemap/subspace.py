"""Shared 3-D teleoperation subspace: projection matrix construction,
joint-space <-> subspace projection, and the composed master->slave map.

The subspace axes are alpha (finger spread), sigma (grasp size), and
epsilon (finger curl). Each joint contributes to at most one axis
(winner-take-all), so the projection columns have disjoint supports and,
after L2 normalization, A'A is the identity on non-zero columns.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import yaml

from .errors import LengthMismatchError, SchemaError
from .models import AXIS_NAMES


class SubspacePoint(NamedTuple):
    alpha: float
    sigma: float
    epsilon: float

    def as_array(self):
        return np.array(self, dtype=float)


@dataclass(frozen=True)
class ProjectionMatrix:
    columns: np.ndarray  # (N, 3): psi_alpha, psi_sigma, psi_epsilon

    def __post_init__(self):
        A = self.columns
        if A.ndim != 2 or A.shape[1] != 3:
            raise SchemaError(f"projection matrix must be Nx3, got {A.shape}")
        for c in range(3):
            norm = np.linalg.norm(A[:, c])
            if norm > 0 and abs(norm - 1.0) > 1e-9:
                raise SchemaError(f"column {AXIS_NAMES[c]} has norm {norm}, expected 1 or 0")
        support = A != 0.0
        if np.any(np.sum(support, axis=1) > 1):
            raise SchemaError("projection columns overlap: a joint may drive only one axis")

    @property
    def joint_count(self):
        return self.columns.shape[0]

    def inert_axes(self):
        """Axis indices whose column is all zero."""
        return tuple(c for c in range(3) if not np.any(self.columns[:, c]))


def _exact_reciprocal_pair(d0):
    """(d, 1/d) with d * (1/d) == 1.0 in floating point, 0 mapping to 0.

    Some doubles have no representable exact reciprocal, so d itself may be
    nudged by up to a few ulps (far below calibration noise) until the
    product rounds to exactly 1.
    """
    if d0 == 0.0:
        return 0.0, 0.0
    candidates = [d0]
    up = down = d0
    for _ in range(3):
        up = np.nextafter(up, np.inf)
        down = np.nextafter(down, -np.inf)
        candidates.extend((up, down))
    for d in candidates:
        r = 1.0 / d
        for c in (r, np.nextafter(r, np.inf), np.nextafter(r, -np.inf)):
            if c * d == 1.0:
                return float(d), float(c)
    raise SchemaError(f"no exactly invertible scaling near {d0!r}")  # pragma: no cover


@dataclass(frozen=True)
class ScalingFactors:
    delta: np.ndarray  # (3,)
    delta_star: np.ndarray  # (3,)

    def __post_init__(self):
        d, ds = self.delta, self.delta_star
        if d.shape != (3,) or ds.shape != (3,):
            raise SchemaError("scaling factors must be 3-vectors")
        for i in range(3):
            prod = d[i] * ds[i]
            if not ((d[i] == 0.0 and ds[i] == 0.0) or prod == 1.0):
                raise SchemaError(
                    f"delta[{i}] * delta_star[{i}] = {prod!r}; must be exactly 1, "
                    "or both components zero"
                )

    @classmethod
    def from_delta(cls, delta):
        pairs = [_exact_reciprocal_pair(v) for v in np.asarray(delta, dtype=float)]
        return cls(
            delta=np.array([p[0] for p in pairs]),
            delta_star=np.array([p[1] for p in pairs]),
        )

    @classmethod
    def unit(cls):
        return cls.from_delta(np.ones(3))


@dataclass(frozen=True)
class SubspaceMapping:
    model_name: str
    origin: np.ndarray  # (N,)
    matrix: ProjectionMatrix  # (N, 3)
    scaling: ScalingFactors

    def __post_init__(self):
        if self.origin.shape[0] != self.matrix.joint_count:
            raise SchemaError(
                f"origin has {self.origin.shape[0]} entries, "
                f"matrix has {self.matrix.joint_count} rows"
            )

    @property
    def joint_count(self):
        return self.origin.shape[0]


def build_projection_matrix(model):
    """Winner-take-all 0/1 columns from the model's axis assignments,
    then L2 normalization of each non-zero column."""
    A = np.zeros((model.joint_count, 3))
    for i, joint in enumerate(model.joints):
        if joint.axis in AXIS_NAMES:
            A[i, AXIS_NAMES.index(joint.axis)] = 1.0
    for c in range(3):
        norm = np.linalg.norm(A[:, c])
        if norm > 0:
            A[:, c] /= norm
    return ProjectionMatrix(columns=A)


def mapping_for(model, scaling=None):
    """Assemble a mapping from a model with given (default unit) scaling."""
    return SubspaceMapping(
        model_name=model.name,
        origin=model.origin_pose.copy(),
        matrix=build_projection_matrix(model),
        scaling=scaling if scaling is not None else ScalingFactors.unit(),
    )


def project_to_subspace(q, mapping):
    """t = ((q - o) . A) * delta, elementwise scaling."""
    q = np.asarray(q, dtype=float)
    if q.shape != (mapping.joint_count,):
        raise LengthMismatchError(
            f"pose has {q.size} entries, mapping '{mapping.model_name}' expects "
            f"{mapping.joint_count}"
        )
    t = ((q - mapping.origin) @ mapping.matrix.columns) * mapping.scaling.delta
    return SubspacePoint(*t)


def project_from_subspace(t, mapping):
    """q = ((t * delta_star) . A') + o; not clamped to joint limits here."""
    t = np.asarray(t, dtype=float)
    if t.shape != (3,):
        raise LengthMismatchError(f"subspace point must have 3 entries, got {t.size}")
    if not np.all(np.isfinite(t)):
        raise LengthMismatchError("subspace point contains non-finite values")
    return (t * mapping.scaling.delta_star) @ mapping.matrix.columns.T + mapping.origin


def map_pose(q_m, master, slave):
    """Master pose -> shared subspace -> slave pose. Identical by
    construction to project_from_subspace(project_to_subspace(q_m))."""
    return project_from_subspace(project_to_subspace(q_m, master), slave)


def mapping_to_dict(mapping):
    return {
        "model_name": mapping.model_name,
        "origin": [float(v) for v in mapping.origin],
        "matrix": [[float(v) for v in row] for row in mapping.matrix.columns],
        "delta": [float(v) for v in mapping.scaling.delta],
        "delta_star": [float(v) for v in mapping.scaling.delta_star],
    }


def mapping_from_dict(doc, path=None):
    if not isinstance(doc, dict):
        raise SchemaError("mapping document must be a mapping", path=path)
    for key in ("model_name", "origin", "matrix", "delta", "delta_star"):
        if key not in doc:
            raise SchemaError("missing required key", field=key, path=path)
    try:
        return SubspaceMapping(
            model_name=str(doc["model_name"]),
            origin=np.asarray(doc["origin"], dtype=float),
            matrix=ProjectionMatrix(np.asarray(doc["matrix"], dtype=float)),
            scaling=ScalingFactors(
                delta=np.asarray(doc["delta"], dtype=float),
                delta_star=np.asarray(doc["delta_star"], dtype=float),
            ),
        )
    except SchemaError as exc:
        if path is not None and exc.path is None:
            raise SchemaError(str(exc), path=path) from exc
        raise


def load_mapping(path):
    with open(path) as fh:
        try:
            doc = yaml.safe_load(fh)
        except yaml.YAMLError as exc:
            raise SchemaError(f"not valid YAML: {exc}", path=path) from exc
    return mapping_from_dict(doc, path=path)


def save_mapping(mapping, path):
    with open(path, "w") as fh:
        yaml.safe_dump(mapping_to_dict(mapping), fh, sort_keys=False)
