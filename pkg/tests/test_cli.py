import numpy as np
import yaml
from click.testing import CliRunner

from telemap import defaults, subspace
from telemap.cli import main


def run(*args):
    return CliRunner().invoke(main, list(args))


def test_calibrate_writes_mapping(tmp_path):
    out = tmp_path / "robot.map"
    r = run(
        "calibrate",
        "--model", "robot_default",
        "--poses", str(defaults.data_dir() / "robot_default.cal"),
        "--out", str(out),
    )
    assert r.exit_code == 0, r.output
    assert "wrote" in r.output
    mapping = subspace.load_mapping(out)
    # spread on joints 2 and 5, grasp size on 0/3/6, curl on 1/4/7,
    # columns unit-normalized
    A = mapping.matrix.columns
    assert np.flatnonzero(A[:, 0]).tolist() == [2, 5]
    assert np.flatnonzero(A[:, 1]).tolist() == [0, 3, 6]
    assert np.flatnonzero(A[:, 2]).tolist() == [1, 4, 7]
    np.testing.assert_allclose(np.linalg.norm(A, axis=0), 1.0, atol=1e-12)


def test_map_origin_is_subspace_zero():
    origin = defaults.load_human().origin_pose
    r = run("map", "--pose", ",".join(str(v) for v in origin))
    assert r.exit_code == 0, r.output
    t_line = next(l for l in r.output.splitlines() if l.startswith("t:"))
    t = [float(v) for v in t_line.split(":")[1].split(",")]
    np.testing.assert_allclose(t, [0.0, 0.0, 0.0], atol=1e-12)
    pose_line = next(l for l in r.output.splitlines() if l.startswith("slave pose:"))
    q_s = [float(v) for v in pose_line.split(":")[1].split(",")]
    np.testing.assert_allclose(q_s, defaults.load_robot().origin_pose, atol=1e-12)


def test_map_bad_pose_exit_1():
    r = run("map", "--pose", "0.1,zebra")
    assert r.exit_code == 1


def test_map_wrong_length_exit_1():
    r = run("map", "--pose", "0.1,0.2")
    assert r.exit_code == 1


def test_calibrate_missing_file_exit_2(tmp_path):
    r = run(
        "calibrate",
        "--model", "robot_default",
        "--poses", str(tmp_path / "missing.cal"),
        "--out", str(tmp_path / "o.map"),
    )
    assert r.exit_code == 2


def test_replay_writes_outputs(tmp_path):
    out = tmp_path / "slave.csv"
    rep = tmp_path / "report.yaml"
    r = run(
        "replay",
        "--trajectory", str(defaults.sweep_path()),
        "--method", "subspace",
        "--out", str(out),
        "--report", str(rep),
    )
    assert r.exit_code == 0, r.output
    assert out.exists() and rep.exists()
    doc = yaml.safe_load(rep.read_text())
    assert doc["method"] == "subspace"
    assert doc["subspace_residual"] <= 1e-10


def test_compare_residual_and_latency(tmp_path):
    rep = tmp_path / "cmp.yaml"
    r = run(
        "compare",
        "--trajectory", str(defaults.sweep_path()),
        "--report", str(rep),
    )
    assert r.exit_code == 0, r.output
    doc = yaml.safe_load(rep.read_text())
    assert set(doc) == {"subspace", "joint", "fingertip"}
    assert doc["subspace"]["subspace_residual"] <= 1e-10
    for method in doc:
        assert doc[method]["latency_median_s"] > 0


def test_replay_bad_method_usage_error():
    r = run("replay", "--trajectory", "x.csv", "--method", "magic")
    assert r.exit_code == 2  # click usage error for a bad choice


def test_replay_mismatched_model_exit_1(tmp_path):
    r = run(
        "replay",
        "--trajectory", str(defaults.sweep_path()),
        "--method", "subspace",
        "--master-model", "robot_default",
    )
    assert r.exit_code == 1
