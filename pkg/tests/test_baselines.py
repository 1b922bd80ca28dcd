import numpy as np
import pytest

from telemap import baselines, defaults, models
from telemap.baselines import (
    FingertipMapConfig,
    IkSettings,
    JointCorrespondence,
    analytic_two_link_ik,
    fingertip_map,
    ik_solve,
    joint_map,
)
from telemap.errors import SchemaError

from conftest import random_pose


@pytest.fixture(scope="module")
def corr(human, robot):
    return defaults.default_correspondence(human, robot)


@pytest.fixture(scope="module")
def ft_cfg(human, robot):
    return defaults.default_fingertip_config(human, robot)


def test_identity_correspondence_is_identity(robot, rng):
    corr = JointCorrespondence(tuple((i, i, 1.0, 0.0) for i in range(8)))
    for _ in range(20):
        q = random_pose(robot, rng)
        np.testing.assert_allclose(joint_map(q, corr, robot), q, atol=1e-15)


def test_duplicate_slave_joint_rejected():
    with pytest.raises(SchemaError):
        JointCorrespondence(((0, 1, 1.0, 0.0), (2, 1, 1.0, 0.0)))


def test_default_table_thumb_adductor_drives_proximal(human, robot, corr):
    i_add = human.joint_index("thumb_adduction")
    j_prox = robot.joint_index("f0_prox")
    assert any(i == i_add and j == j_prox for i, j, _, _ in corr.pairs)
    # moving only the human thumb adductor moves the robot thumb proximal
    q = human.origin_pose.copy()
    q[i_add] += 0.2
    q_s = joint_map(q, corr, robot)
    assert q_s[j_prox] != robot.origin_pose[j_prox]


def test_default_offsets_give_origin_correspondence(human, robot, corr):
    q_s = joint_map(human.origin_pose, corr, robot)
    np.testing.assert_allclose(q_s, robot.origin_pose, atol=1e-12)


def test_joint_map_monotone_in_positive_gain(human, robot, corr, rng):
    i, j, gain, _ = corr.pairs[3]
    assert gain > 0
    q = human.origin_pose.copy()
    prev = -np.inf
    for v in np.linspace(human.joints[i].min_angle, human.joints[i].max_angle, 7):
        q[i] = v
        cur = joint_map(q, corr, robot)[j]
        assert cur >= prev - 1e-15
        prev = cur


def test_ik_at_target_returns_seed(robot):
    seed = robot.origin_pose.copy()
    target = models.forward_kinematics(robot, seed, "f1")
    q, report = ik_solve(robot, "f1", target, seed)
    assert report.converged and report.iterations == 0
    np.testing.assert_array_equal(q, seed)


def test_ik_moves_only_chain_joints(robot, rng):
    chain = robot.finger("f1")
    goal = random_pose(robot, rng)
    target = models.forward_kinematics(robot, goal, "f1")
    q, _ = ik_solve(robot, "f1", target, robot.origin_pose)
    untouched = [i for i in range(8) if i not in chain.joint_indices]
    np.testing.assert_array_equal(q[untouched], robot.origin_pose[untouched])


def test_ik_respects_limits(robot, rng):
    lo, hi = robot.limits
    for _ in range(20):
        target = rng.uniform(-0.2, 0.2, size=3)
        q, _ = ik_solve(robot, "f2", target, robot.origin_pose)
        assert np.all(q >= lo) and np.all(q <= hi)


def test_ik_unreachable_reports_reach_gap(robot):
    chain = robot.finger("f1")
    # straight chain pointed at the target is within limits, so the
    # best-effort tip sits on the reach sphere
    direction = chain.base_orientation @ np.array([np.cos(0.4), 0.0, -np.sin(0.4)])
    dist = 1.4 * chain.reach
    target = chain.base_position + dist * direction
    q, report = ik_solve(robot, "f1", target, robot.origin_pose)
    assert not report.converged
    gap = dist - chain.reach
    assert abs(report.final_error - gap) <= 1e-3


def test_ik_agrees_with_analytic_solution(robot, rng):
    chain = robot.finger("f1")
    for _ in range(25):
        goal = random_pose(robot, rng)
        target = models.forward_kinematics(robot, goal, "f1")
        tight = IkSettings(position_tolerance=1e-10, max_iterations=500)
        q, report = ik_solve(robot, "f1", target, robot.origin_pose, tight)
        assert report.converged
        solutions = analytic_two_link_ik(chain, target)
        assert solutions
        qc = q[list(chain.chain_order())]
        best = min(np.max(np.abs(s - qc)) for s in solutions)
        assert best <= 1e-4


def test_fingertip_self_retarget(human):
    cfg = FingertipMapConfig(
        scale=1.0,
        hand_frame_rotation=np.eye(3),
        finger_pairs=(("thumb", "thumb"), ("index", "index"), ("ring", "ring")),
        ik=IkSettings(),
    )
    q_m = defaults.pinch_pose()
    q_s, reports = fingertip_map(q_m, human, human, cfg, human.origin_pose)
    for m_name, s_name in cfg.finger_pairs:
        want = models.forward_kinematics(human, q_m, m_name)
        got = models.forward_kinematics(human, q_s, s_name)
        assert np.linalg.norm(want - got) <= 1e-6


def test_fingertip_target_is_scaled_before_ik():
    R = np.eye(3)
    p = np.array([0.04, 0.0, 0.02])
    target = R @ (1.5 * p)
    np.testing.assert_allclose(target, [0.06, 0.0, 0.03], atol=1e-15)


def test_fingertip_unpaired_joints_keep_seed(human, robot, ft_cfg):
    seed = robot.origin_pose.copy()
    q_s, _ = fingertip_map(human.origin_pose, human, robot, ft_cfg, seed)
    paired = {i for name in ("f0", "f1", "f2") for i in robot.finger(name).joint_indices}
    untouched = [i for i in range(8) if i not in paired]
    np.testing.assert_array_equal(q_s[untouched], seed[untouched])


def test_fingertip_pinch_distance_ratio(human, robot, ft_cfg):
    pinch = defaults.pinch_pose()
    q_s, reports = fingertip_map(pinch, human, robot, ft_cfg, robot.origin_pose)
    d_h = np.linalg.norm(
        models.forward_kinematics(human, pinch, "thumb")
        - models.forward_kinematics(human, pinch, "index")
    )
    d_r = np.linalg.norm(
        models.forward_kinematics(robot, q_s, "f0")
        - models.forward_kinematics(robot, q_s, "f1")
    )
    assert abs(d_r - 1.5 * d_h) <= 2e-3


def test_bad_rotation_rejected():
    with pytest.raises(SchemaError):
        FingertipMapConfig(hand_frame_rotation=np.diag([1.0, 1.0, -1.0]))


def test_ik_settings_positive():
    with pytest.raises(SchemaError):
        IkSettings(damping=0.0)
