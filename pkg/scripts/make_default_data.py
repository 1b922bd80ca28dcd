"""Generate the packaged default data files.

Builds the default human (master) and robot (slave) hand models, their
calibration sets, the joint correspondence table, the fingertip mapping
config, the pinch pose, and the 500-sample open-close-grasp sweep
trajectory, then sanity-checks the bundle (reachability of the pinch
targets, no limit clamping on the mapped sweep) before writing
everything into src/telemap/data/.

Run from the repo root: python scripts/make_default_data.py
"""

import math
import pathlib

import numpy as np
import yaml

from telemap import baselines, calibration, models, subspace, trajectory

DATA = pathlib.Path(__file__).resolve().parent.parent / "src" / "telemap" / "data"


def rz_quat(theta):
    return [math.cos(theta / 2), 0.0, 0.0, math.sin(theta / 2)]


def human_model_dict():
    joints = [
        # name, min, max, axis, origin
        # thumb adduction origin matches the pinch pose so the thumb-tip
        # azimuth is shared; the robot thumb plane can then hold both the
        # mapped origin and pinch targets (f0 has no adduction joint)
        ("thumb_adduction", -0.5, 1.0, "alpha", 0.9),
        ("thumb_proximal_flexion", 0.0, 1.3, "sigma", 0.4),
        ("thumb_distal_flexion", -0.2, 1.5, "epsilon", 0.2),
        ("index_middle_adduction", -0.35, 0.35, "alpha", 0.0),
        ("index_proximal_flexion", -0.3, 1.6, "sigma", 0.4),
        ("index_medial_flexion", 0.0, 1.8, "epsilon", 0.3),
        ("index_distal_flexion", 0.0, 1.4, "epsilon", 0.2),
        ("middle_proximal_flexion", -0.3, 1.6, "sigma", 0.4),
        ("middle_medial_flexion", 0.0, 1.8, "epsilon", 0.3),
        ("middle_distal_flexion", 0.0, 1.4, "epsilon", 0.2),
        ("ring_proximal_flexion", -0.3, 1.6, "none", 0.4),
        ("ring_medial_flexion", 0.0, 1.8, "none", 0.3),
        ("ring_distal_flexion", 0.0, 1.4, "none", 0.2),
        ("pinky_proximal_flexion", -0.3, 1.6, "none", 0.4),
        ("pinky_medial_flexion", 0.0, 1.8, "none", 0.3),
        ("pinky_distal_flexion", 0.0, 1.4, "none", 0.2),
    ]
    return {
        "name": "human_default",
        "joints": [
            {"name": n, "min": lo, "max": hi, "axis": ax} for n, lo, hi, ax, _ in joints
        ],
        "fingers": [
            {
                "name": "thumb",
                "base_position": [0.02, -0.04, 0.0],
                "base_orientation": rz_quat(-1.0),
                "joints": [
                    "thumb_adduction",
                    "thumb_proximal_flexion",
                    "thumb_distal_flexion",
                ],
                "link_lengths": [0.049, 0.036],
                "adduction_joint": "thumb_adduction",
            },
            {
                "name": "index",
                "base_position": [0.09, -0.015, 0.0],
                "base_orientation": rz_quat(0.0),
                "joints": [
                    "index_middle_adduction",
                    "index_proximal_flexion",
                    "index_medial_flexion",
                    "index_distal_flexion",
                ],
                "link_lengths": [0.045, 0.028, 0.022],
                "adduction_joint": "index_middle_adduction",
            },
            {
                "name": "middle",
                "base_position": [0.09, 0.01, 0.0],
                "base_orientation": rz_quat(0.0),
                "joints": [
                    "middle_proximal_flexion",
                    "middle_medial_flexion",
                    "middle_distal_flexion",
                ],
                "link_lengths": [0.05, 0.032, 0.024],
            },
            {
                "name": "ring",
                "base_position": [0.088, 0.033, 0.0],
                "base_orientation": rz_quat(0.0),
                "joints": [
                    "ring_proximal_flexion",
                    "ring_medial_flexion",
                    "ring_distal_flexion",
                ],
                "link_lengths": [0.046, 0.03, 0.022],
            },
            {
                "name": "pinky",
                "base_position": [0.082, 0.055, 0.0],
                "base_orientation": rz_quat(0.0),
                "joints": [
                    "pinky_proximal_flexion",
                    "pinky_medial_flexion",
                    "pinky_distal_flexion",
                ],
                "link_lengths": [0.036, 0.024, 0.018],
            },
        ],
        "origin_pose": [v for _, _, _, _, v in joints],
    }


PINCH = [0.9, 0.8, 0.6, 0.1, 0.8, 0.7, 0.5, 0.4, 0.3, 0.2, 0.8, 0.7, 0.5, 0.6, 0.5, 0.3]

SCALE = 1.5


def robot_model_dict(human):
    """Eight joints in [f0_prox, f0_dis, f1_ad, f1_prox, f1_dis, f2_ad,
    f2_prox, f2_dis] order. Geometry is 1.5x the human thumb/index/ring
    bases, with link lengths long enough to reach the scaled human
    fingertips; the thumb plane is aligned with the scaled origin thumb
    tip (and therefore with the pinch target, which shares its azimuth).
    The origin pose is the exact analytic IK solution for the scaled
    human origin fingertips, so all retargeting methods map origin to
    origin."""
    thumb_base = SCALE * np.array([0.02, -0.04, 0.0])
    p_thumb = models.forward_kinematics(human, human.origin_pose, "thumb")
    d = SCALE * p_thumb - thumb_base
    theta = math.atan2(d[1], d[0])  # put the origin/pinch targets in the f0 plane
    joints = [
        ("f0_prox", -0.3, 1.6, "sigma"),
        ("f0_dis", -0.3, 1.6, "epsilon"),
        ("f1_ad", -0.7, 0.7, "alpha"),
        ("f1_prox", -0.3, 1.6, "sigma"),
        ("f1_dis", -0.3, 1.6, "epsilon"),
        ("f2_ad", -0.7, 0.7, "alpha"),
        ("f2_prox", -0.3, 1.6, "sigma"),
        ("f2_dis", -0.3, 1.6, "epsilon"),
    ]
    doc = {
        "name": "robot_default",
        "joints": [
            {"name": n, "min": lo, "max": hi, "axis": ax} for n, lo, hi, ax in joints
        ],
        "fingers": [
            {
                "name": "f0",
                "base_position": [float(v) for v in thumb_base],
                "base_orientation": rz_quat(theta),
                "joints": ["f0_prox", "f0_dis"],
                "link_lengths": [0.0735, 0.054],
            },
            {
                "name": "f1",
                "base_position": [0.135, -0.0225, 0.0],
                "base_orientation": rz_quat(0.0),
                "joints": ["f1_ad", "f1_prox", "f1_dis"],
                "link_lengths": [0.075, 0.0675],
                "adduction_joint": "f1_ad",
            },
            {
                "name": "f2",
                "base_position": [0.132, 0.0495, 0.0],
                "base_orientation": rz_quat(0.0),
                "joints": ["f2_ad", "f2_prox", "f2_dis"],
                "link_lengths": [0.078, 0.0675],
                "adduction_joint": "f2_ad",
            },
        ],
        "origin_pose": [0.0] * len(joints),
    }
    proto = models.model_from_dict(doc)
    origin = np.zeros(len(joints))
    for m_name, s_name in (("thumb", "f0"), ("index", "f1"), ("ring", "f2")):
        chain = proto.finger(s_name)
        target = SCALE * models.forward_kinematics(human, human.origin_pose, m_name)
        solutions = baselines.analytic_two_link_ik(chain, target)
        lo = np.array([proto.joints[i].min_angle for i in chain.chain_order()])
        hi = np.array([proto.joints[i].max_angle for i in chain.chain_order()])
        good = [s for s in solutions if np.all(s >= lo) and np.all(s <= hi)]
        assert good, f"scaled origin target unreachable for {s_name}"
        # prefer the curled (elbow-positive) branch
        best = max(good, key=lambda s: s[-1])
        origin[list(chain.chain_order())] = best
    doc["origin_pose"] = [float(v) for v in origin]
    return doc


def human_calibration(human):
    o = human.origin_pose

    def pose(**overrides):
        q = o.copy()
        for name, v in overrides.items():
            q[human.joint_index(name)] = v
        return [float(x) for x in q]

    poses = [
        {
            "labels": ["sigma_max", "alpha_min"],
            # flat open hand, fingers together
            "angles": pose(
                thumb_adduction=-0.4,
                index_middle_adduction=-0.3,
                thumb_proximal_flexion=0.0,
                index_proximal_flexion=-0.3,
                middle_proximal_flexion=-0.3,
            ),
        },
        {
            "labels": ["alpha_max"],
            # fingers spread wide
            "angles": pose(thumb_adduction=0.9, index_middle_adduction=0.3),
        },
        {
            "labels": ["epsilon_min", "sigma_min"],
            # closed around the smallest object, fingers straight at the tip
            "angles": pose(
                thumb_proximal_flexion=1.2,
                index_proximal_flexion=1.5,
                middle_proximal_flexion=1.5,
                thumb_distal_flexion=0.0,
                index_medial_flexion=0.0,
                index_distal_flexion=0.0,
                middle_medial_flexion=0.0,
                middle_distal_flexion=0.0,
            ),
        },
        {
            "labels": ["epsilon_max"],
            # full curl
            "angles": pose(
                thumb_distal_flexion=1.4,
                index_medial_flexion=1.7,
                index_distal_flexion=1.3,
                middle_medial_flexion=1.7,
                middle_distal_flexion=1.3,
            ),
        },
    ]
    return {"model_name": "human_default", "poses": poses}


def robot_calibration(robot):
    o = robot.origin_pose

    def shifted(indices, amount):
        q = o.copy()
        for i, a in zip(indices, amount):
            q[i] += a
        return [float(x) for x in q]

    poses = [
        {"labels": ["alpha_max"], "angles": shifted((2, 5), (0.4, 0.4))},
        {"labels": ["alpha_min"], "angles": shifted((2, 5), (-0.4, -0.4))},
        {"labels": ["sigma_max"], "angles": shifted((0, 3, 6), (0.8, 0.8, 0.8))},
        {"labels": ["sigma_min"], "angles": shifted((0, 3, 6), (-0.6, -0.6, -0.6))},
        {"labels": ["epsilon_max"], "angles": shifted((1, 4, 7), (0.8, 0.8, 0.8))},
        {"labels": ["epsilon_min"], "angles": shifted((1, 4, 7), (-0.45, -0.45, -0.45))},
    ]
    return {"model_name": "robot_default", "poses": poses}


# Cyberglove-sensor to robot-joint table, thumb proximal driven by the
# human thumb adductor. Gains are 1 except the mirrored second adductor;
# offsets make the origins correspond and are filled in numerically.
CORRESPONDENCE_SKELETON = [
    ("thumb_adduction", "f0_prox", 1.0),
    ("thumb_distal_flexion", "f0_dis", 1.0),
    ("index_middle_adduction", "f1_ad", 1.0),
    ("index_proximal_flexion", "f1_prox", 1.0),
    ("index_medial_flexion", "f1_dis", 1.0),
    ("index_middle_adduction", "f2_ad", -1.0),
    ("middle_proximal_flexion", "f2_prox", 1.0),
    ("middle_medial_flexion", "f2_dis", 1.0),
]


def correspondence(human, robot):
    out = []
    for m_name, s_name, gain in CORRESPONDENCE_SKELETON:
        i = human.joint_index(m_name)
        j = robot.joint_index(s_name)
        offset = float(robot.origin_pose[j] - gain * human.origin_pose[i])
        out.append({"master": m_name, "slave": s_name, "gain": gain, "offset": offset})
    return out


def fingertip_config():
    return {
        "scale": SCALE,
        "rotation": [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
        "pairs": [["thumb", "f0"], ["index", "f1"], ["ring", "f2"]],
        "ik": {
            "damping": 0.01,
            "max_iterations": 200,
            "position_tolerance": 1e-6,
            "step_limit": 0.2,
        },
    }


def sweep_trajectory(human, cal_doc):
    """Open-close-grasp sweep: origin -> each calibration extreme -> origin,
    cosine-blended, 500 samples at 100 Hz."""
    o = human.origin_pose
    waypoints = [o] + [np.asarray(p["angles"]) for p in cal_doc["poses"]] + [o]
    n_total = 500
    legs = len(waypoints) - 1
    per_leg = [n_total // legs] * legs
    per_leg[-1] += n_total - sum(per_leg)
    rows = []
    for leg, count in enumerate(per_leg):
        a, b = waypoints[leg], waypoints[leg + 1]
        for k in range(count):
            s = (k + 1) / count
            blend = 0.5 - 0.5 * math.cos(math.pi * s)
            rows.append(a + blend * (b - a))
    times = np.arange(n_total) * 0.01
    return trajectory.Trajectory(
        model_name="human_default",
        times=times,
        poses=np.asarray(rows),
        joint_names=human.joint_names,
    )


def main():
    DATA.mkdir(parents=True, exist_ok=True)

    human_doc = human_model_dict()
    human = models.model_from_dict(human_doc)
    robot_doc = robot_model_dict(human)
    robot = models.model_from_dict(robot_doc)

    human_cal_doc = human_calibration(human)
    robot_cal_doc = robot_calibration(robot)
    human_cal = calibration.calibration_set_from_dict(human_cal_doc, model=human)
    robot_cal = calibration.calibration_set_from_dict(robot_cal_doc, model=robot)

    m_map, m_report = calibration.calibrate(human, human_cal)
    s_map, s_report = calibration.calibrate(robot, robot_cal)
    print(m_report.format())
    print(s_report.format())
    assert np.all(m_map.scaling.delta > 0), "human axes must all be active"
    assert np.all(s_map.scaling.delta > 0), "robot axes must all be active"

    # every calibration pose must respect joint limits
    for cal_set, model in ((human_cal, human), (robot_cal, robot)):
        for labels, q in cal_set.poses:
            assert models.pose_in_limits(model, q), f"{labels} outside limits"

    # fingertip mapping must take the master origin to the slave origin
    cfg0 = baselines.fingertip_config_from_dict(fingertip_config(), human, robot)
    q_o, rep_o = baselines.fingertip_map(
        human.origin_pose, human, robot, cfg0, robot.origin_pose
    )
    assert all(r.converged for r in rep_o.values())
    assert np.max(np.abs(q_o - robot.origin_pose)) < 1e-9, "origin correspondence broken"

    # pinch pose: fingertip mapping must be able to land on every target
    pinch = np.asarray(PINCH)
    cfg = baselines.fingertip_config_from_dict(fingertip_config(), human, robot)
    q_s, reports = baselines.fingertip_map(pinch, human, robot, cfg, robot.origin_pose)
    for r in reports.values():
        print(f"pinch ik {r.finger}: err={r.final_error:.2e} iters={r.iterations}")
        assert r.converged, f"pinch target unreachable for {r.finger}"
    d_h = np.linalg.norm(
        models.forward_kinematics(human, pinch, "thumb")
        - models.forward_kinematics(human, pinch, "index")
    )
    d_r = np.linalg.norm(
        models.forward_kinematics(robot, q_s, "f0")
        - models.forward_kinematics(robot, q_s, "f1")
    )
    print(f"pinch distance human={d_h:.4f} robot={d_r:.4f} ratio={d_r / d_h:.4f}")
    assert abs(d_r - SCALE * d_h) < 2e-3, "pinch distance ratio off"

    # the mapped sweep must stay inside robot limits (no clamp distortion)
    sweep = sweep_trajectory(human, human_cal_doc)
    lo, hi = robot.limits
    for q_m in sweep.poses:
        q_r = subspace.map_pose(q_m, m_map, s_map)
        assert np.all(q_r >= lo - 1e-12) and np.all(q_r <= hi + 1e-12), "sweep clamps"

    with open(DATA / "human_default.yaml", "w") as fh:
        yaml.safe_dump(human_doc, fh, sort_keys=False)
    with open(DATA / "robot_default.yaml", "w") as fh:
        yaml.safe_dump(robot_doc, fh, sort_keys=False)
    with open(DATA / "human_default.cal", "w") as fh:
        yaml.safe_dump(human_cal_doc, fh, sort_keys=False)
    with open(DATA / "robot_default.cal", "w") as fh:
        yaml.safe_dump(robot_cal_doc, fh, sort_keys=False)
    with open(DATA / "correspondence_default.yaml", "w") as fh:
        yaml.safe_dump(correspondence(human, robot), fh, sort_keys=False)
    with open(DATA / "fingertip_default.yaml", "w") as fh:
        yaml.safe_dump(fingertip_config(), fh, sort_keys=False)
    with open(DATA / "pinch.yaml", "w") as fh:
        yaml.safe_dump({"model_name": "human_default", "angles": PINCH}, fh, sort_keys=False)
    trajectory.write_trajectory(sweep, DATA / "sweep_500.csv")
    print(f"wrote defaults to {DATA}")


if __name__ == "__main__":
    main()
