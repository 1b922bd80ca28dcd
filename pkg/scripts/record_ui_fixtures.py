"""Record HTTP service fixtures for the frontend contract tests.

Replays a fixed set of requests against the in-process service and dumps
request/response pairs as JSON the vitest suite consumes, so the UI is
tested against real service behavior without a running backend.

Run from the repo root: python3 scripts/record_ui_fixtures.py
"""

import json
import pathlib

import yaml
from fastapi.testclient import TestClient

from telemap import defaults
from telemap.service import create_app

OUT = pathlib.Path(__file__).resolve().parent.parent / "frontend" / "fixtures"


def main():
    client = TestClient(create_app())
    human = defaults.load_human()
    fixtures = {}

    fixtures["models"] = client.get("/models").json()

    def record_session(method, poses):
        sid = client.post(
            "/session",
            json={"master": "human_default", "slave": "robot_default", "method": method},
        ).json()["id"]
        out = []
        for q in poses:
            angles = [float(v) for v in q]
            resp = client.post(f"/session/{sid}/pose", json={"angles": angles})
            assert resp.status_code == 200, resp.text
            out.append({"request": {"angles": angles}, "response": resp.json()})
        return out

    origin = human.origin_pose
    pinch = defaults.pinch_pose()

    # sigma slider sweep: only the master grasp-size joints move
    sigma_idx = [i for i, j in enumerate(human.joints) if j.axis == "sigma"]
    sweep = []
    for k in range(5):
        q = origin.copy()
        q[sigma_idx] += 0.1 * k
        sweep.append(q)

    fixtures["subspace_poses"] = record_session("subspace", [origin, pinch])
    fixtures["sigma_sweep"] = record_session("subspace", sweep)
    fixtures["joint_poses"] = record_session("joint", [origin, pinch])
    fixtures["fingertip_poses"] = record_session("fingertip", [origin, pinch])

    # calibration draft golden file: what the recorder must emit
    draft_poses = [
        {"labels": ["sigma_max"], "angles": [float(v) for v in sweep[4]]},
        {"labels": ["sigma_min", "epsilon_min"], "angles": [float(v) for v in origin]},
    ]
    draft = {"model_name": "human_default", "poses": draft_poses}
    calibration_yaml = yaml.safe_dump(draft, sort_keys=False)

    OUT.mkdir(parents=True, exist_ok=True)
    with open(OUT / "service_fixtures.json", "w") as fh:
        json.dump(fixtures, fh, indent=2)
    with open(OUT / "calibration_draft.json", "w") as fh:
        json.dump({"draft": draft, "yaml": calibration_yaml}, fh, indent=2)
    print(f"wrote fixtures to {OUT}")


if __name__ == "__main__":
    main()
