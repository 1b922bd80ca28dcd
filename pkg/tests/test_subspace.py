import math

import numpy as np
import pytest

from telemap import subspace
from telemap.errors import LengthMismatchError, SchemaError
from telemap.subspace import (
    ProjectionMatrix,
    ScalingFactors,
    SubspaceMapping,
    build_projection_matrix,
    map_pose,
    mapping_for,
    project_from_subspace,
    project_to_subspace,
)

from conftest import random_pose

# winner-take-all columns for the 8-joint robot hand, before normalization
PSI_ALPHA = np.array([0, 0, 1, 0, 0, 1, 0, 0], dtype=float)
PSI_SIGMA = np.array([1, 0, 0, 1, 0, 0, 1, 0], dtype=float)
PSI_EPSILON = np.array([0, 1, 0, 0, 1, 0, 0, 1], dtype=float)


def test_robot_matrix_matches_reference_columns(robot):
    A = build_projection_matrix(robot).columns
    np.testing.assert_array_equal(A[:, 0] != 0, PSI_ALPHA != 0)
    np.testing.assert_array_equal(A[:, 1] != 0, PSI_SIGMA != 0)
    np.testing.assert_array_equal(A[:, 2] != 0, PSI_EPSILON != 0)
    np.testing.assert_allclose(A[:, 0], PSI_ALPHA / math.sqrt(2), atol=1e-15)
    np.testing.assert_allclose(A[:, 1], PSI_SIGMA / math.sqrt(3), atol=1e-15)
    np.testing.assert_allclose(A[:, 2], PSI_EPSILON / math.sqrt(3), atol=1e-15)


def test_all_unassigned_model_yields_zero_matrix(robot):
    from telemap import models

    doc = models.model_to_dict(robot)
    for j in doc["joints"]:
        j["axis"] = "none"
    bare = models.model_from_dict(doc)
    A = build_projection_matrix(bare).columns
    assert not np.any(A)
    assert ProjectionMatrix(A).inert_axes() == (0, 1, 2)


def test_columns_orthonormal(human_mapping, robot_mapping):
    for m in (human_mapping, robot_mapping):
        A = m.matrix.columns
        G = A.T @ A
        for c in range(3):
            expected = 0.0 if c in m.matrix.inert_axes() else 1.0
            assert abs(G[c, c] - expected) <= 1e-12
        off = G - np.diag(np.diag(G))
        assert np.max(np.abs(off)) <= 1e-12


def test_origin_projects_to_zero(robot_mapping):
    t = project_to_subspace(robot_mapping.origin, robot_mapping)
    assert t == (0.0, 0.0, 0.0)


def test_unit_sigma_move(robot):
    m = mapping_for(robot)  # unit scaling
    q = robot.origin_pose + m.matrix.columns[:, 1]
    t = project_to_subspace(q, m)
    np.testing.assert_allclose(t.as_array(), [0.0, 1.0, 0.0], atol=1e-12)
    back = project_from_subspace((0.0, 1.0, 0.0), m)
    np.testing.assert_allclose(back, q, atol=1e-12)


def test_projection_formula_against_direct_evaluation(robot, robot_mapping, rng):
    # straight-line re-implementation of the projection formula as oracle
    for _ in range(50):
        q = random_pose(robot, rng)
        t = project_to_subspace(q, robot_mapping).as_array()
        o = robot_mapping.origin
        A = robot_mapping.matrix.columns
        d = robot_mapping.scaling.delta
        expected = np.array(
            [sum((q[i] - o[i]) * A[i, c] for i in range(8)) * d[c] for c in range(3)]
        )
        np.testing.assert_allclose(t, expected, atol=1e-14)


def test_round_trip_on_span(robot, robot_mapping, rng):
    A = robot_mapping.matrix.columns
    o = robot_mapping.origin
    for _ in range(200):
        q = o + A @ rng.uniform(-1, 1, size=3)
        back = project_from_subspace(project_to_subspace(q, robot_mapping), robot_mapping)
        assert np.max(np.abs(back - q)) <= 1e-12


def test_general_round_trip_is_orthogonal_projection(human, human_mapping, rng):
    A = human_mapping.matrix.columns
    o = human_mapping.origin
    for _ in range(100):
        q = random_pose(human, rng)
        back = project_from_subspace(project_to_subspace(q, human_mapping), human_mapping)
        expected = o + A @ (A.T @ (q - o))
        np.testing.assert_allclose(back, expected, atol=1e-10)


def test_unassigned_joints_frozen_at_origin(human, human_mapping, rng):
    frozen = [i for i, j in enumerate(human.joints) if j.axis == "none"]
    assert frozen, "default human model should have unassigned joints"
    for _ in range(20):
        t = rng.uniform(-1, 1, size=3)
        q = project_from_subspace(t, human_mapping)
        np.testing.assert_array_equal(q[frozen], human_mapping.origin[frozen])


def test_map_pose_equals_composition(human_mapping, robot_mapping, human, rng):
    for _ in range(100):
        q = random_pose(human, rng)
        composed = project_from_subspace(
            project_to_subspace(q, human_mapping), robot_mapping
        )
        np.testing.assert_array_equal(
            map_pose(q, human_mapping, robot_mapping), composed
        )


def test_origin_maps_to_origin(human_mapping, robot_mapping):
    q_s = map_pose(human_mapping.origin, human_mapping, robot_mapping)
    np.testing.assert_array_equal(q_s, robot_mapping.origin)


def test_self_mapping_identity_on_span(robot_mapping, rng):
    A = robot_mapping.matrix.columns
    o = robot_mapping.origin
    for _ in range(50):
        q = o + A @ rng.uniform(-0.5, 0.5, size=3)
        np.testing.assert_allclose(
            map_pose(q, robot_mapping, robot_mapping), q, atol=1e-12
        )


def test_degenerate_axis_inert(robot_mapping):
    scaling = ScalingFactors.from_delta([0.0, 1.0, 1.0])
    m = SubspaceMapping(
        model_name=robot_mapping.model_name,
        origin=robot_mapping.origin,
        matrix=robot_mapping.matrix,
        scaling=scaling,
    )
    q = m.origin + 0.7 * m.matrix.columns[:, 0]
    t = project_to_subspace(q, m)
    assert t.alpha == 0.0
    a = project_from_subspace((123.0, 0.5, 0.5), m)
    b = project_from_subspace((-7.0, 0.5, 0.5), m)
    np.testing.assert_array_equal(a, b)  # alpha input ignored entirely


def test_scaling_invariant_enforced():
    with pytest.raises(SchemaError):
        ScalingFactors(delta=np.array([0.5, 1.0, 1.0]), delta_star=np.array([1.9, 1.0, 1.0]))
    with pytest.raises(SchemaError):
        ScalingFactors(delta=np.array([0.0, 1.0, 1.0]), delta_star=np.array([1.0, 1.0, 1.0]))


def test_reciprocal_exact_products(rng):
    for d in rng.uniform(0.01, 100.0, size=500):
        s = ScalingFactors.from_delta([d, 1.0, 1.0])
        assert s.delta[0] * s.delta_star[0] == 1.0


def test_mapping_serialization_roundtrip(robot_mapping, tmp_path):
    p = tmp_path / "m.yaml"
    subspace.save_mapping(robot_mapping, p)
    again = subspace.load_mapping(p)
    np.testing.assert_array_equal(again.origin, robot_mapping.origin)
    np.testing.assert_array_equal(again.matrix.columns, robot_mapping.matrix.columns)
    np.testing.assert_array_equal(again.scaling.delta, robot_mapping.scaling.delta)


def test_mapping_loader_rejects_broken_invariant(robot_mapping, tmp_path):
    doc = subspace.mapping_to_dict(robot_mapping)
    doc["delta_star"][1] = doc["delta_star"][1] * 1.5
    p = tmp_path / "bad.yaml"
    import yaml

    with open(p, "w") as fh:
        yaml.safe_dump(doc, fh)
    with pytest.raises(SchemaError):
        subspace.load_mapping(p)


def test_length_mismatch(robot_mapping):
    with pytest.raises(LengthMismatchError):
        project_to_subspace(np.zeros(5), robot_mapping)
    with pytest.raises(LengthMismatchError):
        project_from_subspace(np.array([0.0, np.inf, 0.0]), robot_mapping)
