"""Command-line front door.

Exit codes: 0 success, 1 validation error (bad content), 2 I/O error
(missing or unreadable file). Poses on the command line are
comma-separated radians; everything longer lives in files.

File formats (all YAML unless noted):
  hand model      see telemap.models docstring
  calibration     {model_name, poses: [{labels: [...], angles: [...]}]}
  mapping         {model_name, origin, matrix (Nx3 rows), delta, delta_star}
  correspondence  [{master, slave, gain, offset}, ...]
  fingertip cfg   {scale, rotation (3x3 rows), pairs, ik: {...}}
  trajectory      CSV: optional '# model: name', header 'time,<joints...>'
"""

import functools
import sys

import click
import numpy as np
import yaml

from . import (
    baselines,
    calibration,
    defaults,
    models,
    subspace,
    trajectory,
)
from .errors import TelemapError


def _handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except TelemapError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)
        except OSError as exc:
            click.echo(f"i/o error: {exc}", err=True)
            sys.exit(2)

    return wrapper


def _parse_pose(text):
    try:
        return np.array([float(v) for v in text.split(",")])
    except ValueError as exc:
        raise TelemapError(f"pose must be comma-separated radians: {exc}") from exc


def _load_model_arg(path_or_name):
    """A model file path, or the name of a packaged default."""
    candidate = defaults.data_dir() / f"{path_or_name}.yaml"
    if candidate.is_file():
        return models.load_model(candidate)
    return models.load_model(path_or_name)


@click.group()
def main():
    """Hand pose retargeting through a shared teleoperation subspace."""


@main.command("calibrate")
@click.option("--model", "model_arg", required=True,
              help="Hand model file, or a default model name (human_default, robot_default).")
@click.option("--poses", "poses_path", required=True, type=click.Path(),
              help="Calibration set file with labeled extrema poses.")
@click.option("--out", "out_path", required=True, type=click.Path(),
              help="Where to write the calibrated mapping.")
@_handle_errors
def calibrate_cmd(model_arg, poses_path, out_path):
    """Compute scaling factors from extrema poses and write a mapping."""
    model = _load_model_arg(model_arg)
    cal_set = calibration.load_calibration_set(poses_path, model=model)
    mapping, report = calibration.calibrate(model, cal_set)
    subspace.save_mapping(mapping, out_path)
    click.echo(report.format())
    click.echo(f"wrote {out_path}")


@main.command("map")
@click.option("--master-mapping", "master_path", type=click.Path(),
              help="Mapping file for the master hand (default: calibrated human_default).")
@click.option("--slave-mapping", "slave_path", type=click.Path(),
              help="Mapping file for the slave hand (default: calibrated robot_default).")
@click.option("--pose", "pose_text", required=True,
              help="Master pose, comma-separated radians.")
@_handle_errors
def map_cmd(master_path, slave_path, pose_text, ):
    """Map one master pose to the slave hand; prints the slave pose and t."""
    master = (subspace.load_mapping(master_path) if master_path
              else defaults.calibrated_mapping(defaults.load_human()))
    slave = (subspace.load_mapping(slave_path) if slave_path
             else defaults.calibrated_mapping(defaults.load_robot()))
    q_m = _parse_pose(pose_text)
    t = subspace.project_to_subspace(q_m, master)
    q_s = subspace.project_from_subspace(t, slave)
    click.echo("t: " + ",".join(f"{v:.12g}" for v in t))
    click.echo("slave pose: " + ",".join(f"{v:.12g}" for v in q_s))


def _replay_inputs(master_model, slave_model, master_mapping, slave_mapping,
                   correspondence, fingertip_config):
    master = _load_model_arg(master_model) if master_model else defaults.load_human()
    slave = _load_model_arg(slave_model) if slave_model else defaults.load_robot()
    m_map = (subspace.load_mapping(master_mapping) if master_mapping
             else defaults.calibrated_mapping(master))
    s_map = (subspace.load_mapping(slave_mapping) if slave_mapping
             else defaults.calibrated_mapping(slave))
    corr = (baselines.load_correspondence(correspondence, master, slave)
            if correspondence else defaults.default_correspondence(master, slave))
    ft_cfg = (baselines.load_fingertip_config(fingertip_config, master, slave)
              if fingertip_config else defaults.default_fingertip_config(master, slave))
    return master, slave, m_map, s_map, corr, ft_cfg


_config_options = [
    click.option("--master-model", help="Master model file or default name."),
    click.option("--slave-model", help="Slave model file or default name."),
    click.option("--master-mapping", type=click.Path(), help="Master mapping file."),
    click.option("--slave-mapping", type=click.Path(), help="Slave mapping file."),
    click.option("--correspondence", type=click.Path(), help="Joint correspondence file."),
    click.option("--fingertip-config", type=click.Path(), help="Fingertip mapping config."),
]


def _with_config_options(fn):
    for opt in reversed(_config_options):
        fn = opt(fn)
    return fn


@main.command("replay")
@click.option("--trajectory", "traj_path", required=True, type=click.Path(),
              help="Master trajectory CSV.")
@click.option("--method", required=True, type=click.Choice(trajectory.METHODS))
@_with_config_options
@click.option("--out", "out_path", type=click.Path(), help="Slave trajectory CSV output.")
@click.option("--report", "report_path", type=click.Path(), help="Report YAML output.")
@_handle_errors
def replay_cmd(traj_path, method, master_model, slave_model, master_mapping,
               slave_mapping, correspondence, fingertip_config, out_path, report_path):
    """Replay a master trajectory through one mapping method."""
    master, slave, m_map, s_map, corr, ft_cfg = _replay_inputs(
        master_model, slave_model, master_mapping, slave_mapping,
        correspondence, fingertip_config)
    traj = trajectory.read_trajectory(traj_path, model=master)
    slave_traj, report = trajectory.replay(
        traj, method, master, slave,
        master_mapping=m_map, slave_mapping=s_map,
        correspondence=corr, fingertip_config=ft_cfg)
    if out_path:
        trajectory.write_trajectory(slave_traj, out_path)
        click.echo(f"wrote {out_path}")
    if report_path:
        with open(report_path, "w") as fh:
            yaml.safe_dump(trajectory.report_to_dict(report), fh, sort_keys=False)
        click.echo(f"wrote {report_path}")
    click.echo(report.format())


@main.command("compare")
@click.option("--trajectory", "traj_path", required=True, type=click.Path(),
              help="Master trajectory CSV.")
@_with_config_options
@click.option("--report", "report_path", type=click.Path(), help="Report YAML output.")
@_handle_errors
def compare_cmd(traj_path, master_model, slave_model, master_mapping, slave_mapping,
                correspondence, fingertip_config, report_path):
    """Replay through all three methods and print a side-by-side report."""
    master, slave, m_map, s_map, corr, ft_cfg = _replay_inputs(
        master_model, slave_model, master_mapping, slave_mapping,
        correspondence, fingertip_config)
    traj = trajectory.read_trajectory(traj_path, model=master)
    reports = {}
    for method in trajectory.METHODS:
        _, reports[method] = trajectory.replay(
            traj, method, master, slave,
            master_mapping=m_map, slave_mapping=s_map,
            correspondence=corr, fingertip_config=ft_cfg)
    click.echo(f"comparison over {len(traj)} samples ({traj_path}):")
    for method in trajectory.METHODS:
        click.echo("  " + reports[method].format())
    if report_path:
        with open(report_path, "w") as fh:
            yaml.safe_dump(
                {m: trajectory.report_to_dict(r) for m, r in reports.items()},
                fh, sort_keys=False)
        click.echo(f"wrote {report_path}")


@main.command("serve")
@click.option("--port", default=8090, show_default=True, help="HTTP port.")
@click.option("--models-dir", type=click.Path(),
              help="Directory with model/calibration/config files (default: packaged).")
@click.option("--host", default="127.0.0.1", show_default=True)
@_handle_errors
def serve_cmd(port, models_dir, host):
    """Run the HTTP control service."""
    from . import service

    service.serve(port=port, models_dir=models_dir, host=host)


if __name__ == "__main__":
    main()
