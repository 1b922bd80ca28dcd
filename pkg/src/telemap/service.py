"""HTTP control surface for steering a retargeting session.

Thin wrapper over the library: every endpoint result is reproducible by a
direct library call. Sessions are in-memory, serialized per session, and
evicted after an idle timeout.
"""

import threading
import time
import uuid
from pathlib import Path

import numpy as np
import yaml
from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from . import baselines, calibration, defaults, models, subspace, trajectory
from .errors import TelemapError


class SessionRequest(BaseModel):
    master: str
    slave: str
    method: str = "subspace"


class PoseRequest(BaseModel):
    angles: list[float]


class MethodRequest(BaseModel):
    method: str


class CalibrateRequest(BaseModel):
    model: str
    calibration: dict


class _Session:
    def __init__(self, master, slave, method, master_mapping, slave_mapping,
                 correspondence, fingertip_config):
        self.master = master
        self.slave = slave
        self.method = method
        self.master_mapping = master_mapping
        self.slave_mapping = slave_mapping
        self.correspondence = correspondence
        self.fingertip_config = fingertip_config
        self.last_master_pose = master.origin_pose.copy()
        self.last_slave_pose = slave.origin_pose.copy()
        self.last_access = time.monotonic()
        self.lock = threading.Lock()


def _discover_models(models_dir):
    """Load every hand-model YAML in the directory, keyed by model name."""
    found = {}
    for path in sorted(Path(models_dir).glob("*.yaml")):
        try:
            with open(path) as fh:
                doc = yaml.safe_load(fh)
        except yaml.YAMLError:
            continue
        if isinstance(doc, dict) and "joints" in doc and "origin_pose" in doc:
            model = models.model_from_dict(doc, path=path)
            found[model.name] = model
    return found


def _mapping_for(model, models_dir):
    cal_path = Path(models_dir) / f"{model.name}.cal"
    if cal_path.exists():
        cal = calibration.load_calibration_set(cal_path, model=model)
        mapping, _ = calibration.calibrate(model, cal)
        return mapping
    return subspace.mapping_for(model)


def create_app(models_dir=None, idle_timeout=1800.0):
    models_dir = Path(models_dir) if models_dir else defaults.data_dir()
    registry = _discover_models(models_dir)
    app = FastAPI(title="telemap", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions = {}
    sessions_lock = threading.Lock()

    def evict_idle():
        now = time.monotonic()
        stale = [k for k, s in sessions.items() if now - s.last_access > idle_timeout]
        for k in stale:
            del sessions[k]

    def get_session(session_id):
        with sessions_lock:
            evict_idle()
            session = sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail=f"unknown session '{session_id}'")
        session.last_access = time.monotonic()
        return session

    def get_model(name):
        model = registry.get(name)
        if model is None:
            raise HTTPException(
                status_code=404,
                detail=f"unknown model '{name}' (have: {', '.join(sorted(registry))})",
            )
        return model

    @app.get("/models")
    def list_models():
        return [
            {
                "name": m.name,
                "joints": [
                    {"name": j.name, "min": j.min_angle, "max": j.max_angle, "axis": j.axis}
                    for j in m.joints
                ],
                "fingers": [
                    {
                        "name": f.name,
                        "joints": [m.joints[i].name for i in f.joint_indices],
                        "base_position": [float(v) for v in f.base_position],
                        "base_orientation": [
                            [float(v) for v in row] for row in f.base_orientation
                        ],
                        "link_lengths": [float(v) for v in f.link_lengths],
                        "has_adduction": f.has_adduction,
                    }
                    for f in m.fingers
                ],
                "origin_pose": [float(v) for v in m.origin_pose],
            }
            for m in registry.values()
        ]

    @app.post("/session")
    def create_session(req: SessionRequest):
        if req.method not in trajectory.METHODS:
            raise HTTPException(
                status_code=422,
                detail=f"unknown method '{req.method}' (have: {', '.join(trajectory.METHODS)})",
            )
        master = get_model(req.master)
        slave = get_model(req.slave)
        corr = None
        ft_cfg = None
        corr_path = models_dir / "correspondence_default.yaml"
        ft_path = models_dir / "fingertip_default.yaml"
        try:
            if corr_path.exists():
                corr = baselines.load_correspondence(corr_path, master, slave)
        except TelemapError:
            corr = None  # table does not fit this pairing
        try:
            if ft_path.exists():
                ft_cfg = baselines.load_fingertip_config(ft_path, master=master, slave=slave)
        except TelemapError:
            ft_cfg = None
        session = _Session(
            master=master,
            slave=slave,
            method=req.method,
            master_mapping=_mapping_for(master, models_dir),
            slave_mapping=_mapping_for(slave, models_dir),
            correspondence=corr,
            fingertip_config=ft_cfg,
        )
        _check_method_supported(session, req.method)
        session_id = uuid.uuid4().hex
        with sessions_lock:
            evict_idle()
            sessions[session_id] = session
        return {"id": session_id, "method": session.method}

    def _check_method_supported(session, method):
        if method == "joint" and session.correspondence is None:
            raise HTTPException(
                status_code=409,
                detail="no joint correspondence table fits this master/slave pair",
            )
        if method == "fingertip" and session.fingertip_config is None:
            raise HTTPException(
                status_code=409,
                detail="no fingertip config fits this master/slave pair",
            )

    @app.post("/session/{session_id}/method")
    def set_method(session_id: str, req: MethodRequest):
        session = get_session(session_id)
        if req.method not in trajectory.METHODS:
            raise HTTPException(
                status_code=422,
                detail=f"unknown method '{req.method}' (have: {', '.join(trajectory.METHODS)})",
            )
        with session.lock:
            _check_method_supported(session, req.method)
            session.method = req.method
        return {"id": session_id, "method": req.method}

    @app.post("/session/{session_id}/pose")
    def map_master_pose(session_id: str, req: PoseRequest):
        session = get_session(session_id)
        q_m = np.asarray(req.angles, dtype=float)
        if q_m.shape != (session.master.joint_count,):
            raise HTTPException(
                status_code=422,
                detail=f"pose has {q_m.size} entries, master '{session.master.name}' "
                f"has {session.master.joint_count} joints",
            )
        if not np.all(np.isfinite(q_m)):
            raise HTTPException(status_code=422, detail="pose contains non-finite values")

        with session.lock:
            t = subspace.project_to_subspace(q_m, session.master_mapping)
            convergence = None
            if session.method == "subspace":
                q_s = subspace.map_pose(q_m, session.master_mapping, session.slave_mapping)
            elif session.method == "joint":
                q_s = baselines.joint_map(q_m, session.correspondence, session.slave)
            else:
                q_s, reports = baselines.fingertip_map(
                    q_m,
                    session.master,
                    session.slave,
                    session.fingertip_config,
                    session.last_slave_pose,
                )
                convergence = {
                    name: {
                        "iterations": r.iterations,
                        "final_error": r.final_error,
                        "converged": r.converged,
                    }
                    for name, r in reports.items()
                }
            q_s = models.clamp_pose(session.slave, q_s)
            session.last_master_pose = q_m
            session.last_slave_pose = q_s

        return {
            "slave_angles": [float(v) for v in q_s],
            "subspace": {"alpha": t.alpha, "sigma": t.sigma, "epsilon": t.epsilon},
            "fingertips": {
                "master": {
                    name: [float(v) for v in tip]
                    for name, tip in models.fingertips(session.master, q_m).items()
                },
                "slave": {
                    name: [float(v) for v in tip]
                    for name, tip in models.fingertips(session.slave, q_s).items()
                },
            },
            "method": session.method,
            "convergence": convergence,
        }

    @app.post("/calibrate")
    def calibrate_model(req: CalibrateRequest):
        model = get_model(req.model)
        try:
            cal = calibration.calibration_set_from_dict(req.calibration, model=model)
            mapping, report = calibration.calibrate(model, cal)
        except TelemapError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return {
            "mapping": subspace.mapping_to_dict(mapping),
            "report": report.format(),
        }

    return app


def serve(port=8090, models_dir=None, host="127.0.0.1"):
    import uvicorn

    uvicorn.run(create_app(models_dir=models_dir), host=host, port=port)
