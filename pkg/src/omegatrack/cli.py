"""
Command-line front end: ``simulate``, ``estimate``, ``segment`` and ``sweep``.

Every subcommand resolves its configuration as defaults <- ``--config`` JSON
<- explicit flags, echoes the resolved JSON to stderr, and can save it with
``--save-config``. Feeding that file back through ``--config`` reproduces the
run byte for byte.

Exit codes: 0 success, 2 input/config error, 3 no valid result.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .errors import NonPositiveDepth, OmegaTrackError, TooFewSamples
from .estimator import EstimatorConfig, estimate_trajectory, estimate_two_point_trajectory
from .numdiff import DerivativeSeries, differentiate
from .scene import BodyPoint, CameraModel, MotionProfile, RigidScene, SamplingPlan, add_noise, simulate
from .segmentation import segment_points
from .sweep import perspective_sweep
from .trackio import parse_tracks, table1_fixture, write_estimates, write_sample_table, write_tracks

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NO_RESULT = 3

SIMULATE_DEFAULTS = {
    "bodies": [{"omega": 0.5, "center_offset": 0.0, "points": [{"radius": 1.0, "phase": 0.0}]}],
    "camera": {"kind": "orthographic", "focal_length": 1.0, "standoff": None},
    "depth_of_axis": None,
    "t_start": 0.0,
    "dt": 0.0157,
    "n_samples": 400,
    "sigma": 0.0,
    "seed": 0,
    "units": None,
    "out": None,
}

ESTIMATE_DEFAULTS = {
    "input": None,
    "fixture": None,
    "scheme": "central",
    "eps_rel": 0.05,
    "aggregation": "mean",
    "reference": None,
    "out": None,
    "table": None,
}

SEGMENT_DEFAULTS = dict(ESTIMATE_DEFAULTS, tol=0.05)

SWEEP_DEFAULTS = {
    "half_fov": [0.0, 1.0, 5.0, 10.0, 20.0, 30.0],
    "omega": 0.5,
    "radius": 1.0,
    "dt": 1e-3,
    "n_samples": None,
    "scheme": "central",
    "eps_rel": 0.05,
    "focal_length": 1.0,
    "out": None,
}


class ConfigError(Exception):
    """Invalid run configuration; the message names the offending field."""


def _point(text):
    parts = text.split(",")
    if not 1 <= len(parts) <= 4:
        raise argparse.ArgumentTypeError("expected R[,PHASE[,HEIGHT[,LABEL]]]")
    try:
        pt = {"radius": float(parts[0])}
        if len(parts) > 1:
            pt["phase"] = float(parts[1])
        if len(parts) > 2:
            pt["height"] = float(parts[2])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if len(parts) > 3:
        pt["label"] = parts[3]
    return pt


def _resolve(defaults, args, flag_map):
    cfg = json.loads(json.dumps(defaults))
    if getattr(args, "config", None):
        try:
            loaded = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise ConfigError(f"config: cannot read {args.config}: {exc}") from None
        unknown = set(loaded) - set(defaults)
        if unknown:
            raise ConfigError(f"config: unknown field(s) {sorted(unknown)}")
        cfg.update(loaded)
    for attr, setter in flag_map.items():
        val = getattr(args, attr, None)
        if val is not None:
            setter(cfg, val)
    return cfg


def _set(key):
    def setter(cfg, val):
        cfg[key] = val

    return setter


def _echo(cfg, args):
    text = json.dumps(cfg, indent=2, sort_keys=True) + "\n"
    sys.stderr.write(text)
    if getattr(args, "save_config", None):
        Path(args.save_config).write_text(text, encoding="utf-8")


def _emit(text, path):
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# --- simulate --------------------------------------------------------------

def _body_setter(field):
    def setter(cfg, val):
        for body in cfg["bodies"]:
            body[field] = val

    return setter


def _camera_setter(field):
    def setter(cfg, val):
        cfg["camera"][field] = val

    return setter


def _points_setter(cfg, val):
    for body in cfg["bodies"]:
        body["points"] = val


def build_simulation(cfg):
    """Scenes, camera and sampling plan from a resolved simulate config."""
    try:
        n = cfg["n_samples"]
        if not isinstance(n, int) or n < 3:
            raise ConfigError(f"n_samples: must be an integer >= 3 (minimum 3), got {n!r}")
        if not cfg["dt"] > 0:
            raise ConfigError(f"dt: must be > 0, got {cfg['dt']!r}")
        if cfg["sigma"] < 0:
            raise ConfigError(f"sigma: must be >= 0, got {cfg['sigma']!r}")
        plan = SamplingPlan(float(cfg["t_start"]), float(cfg["dt"]), n)
        try:
            cam = CameraModel(**cfg["camera"])
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"camera: {exc}") from None
        if not cfg["bodies"]:
            raise ConfigError("bodies: at least one body is required")
        multi = len(cfg["bodies"]) > 1
        scenes = []
        for b, body in enumerate(cfg["bodies"]):
            if not body.get("points"):
                raise ConfigError(f"bodies[{b}].points: at least one point is required")
            pts = []
            for k, p in enumerate(body["points"]):
                label = p.get("label") or (f"b{b}p{k}" if multi else f"p{k}")
                try:
                    pts.append(BodyPoint(float(p["radius"]), float(p.get("phase", 0.0)),
                                         float(p.get("height", 0.0)), label))
                except (KeyError, ValueError) as exc:
                    raise ConfigError(f"bodies[{b}].points[{k}]: {exc}") from None
            motion = MotionProfile(float(body["omega"]), float(body.get("center_offset", 0.0)))
            scenes.append(RigidScene(pts, motion, cfg["depth_of_axis"]))
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"{exc}: missing or malformed field") from None
    return scenes, cam, plan


def run_simulate(args):
    cfg = _resolve(SIMULATE_DEFAULTS, args, {
        "omega": _body_setter("omega"),
        "offset": _body_setter("center_offset"),
        "point": _points_setter,
        "camera": _camera_setter("kind"),
        "focal": _camera_setter("focal_length"),
        "standoff": _camera_setter("standoff"),
        "depth_of_axis": _set("depth_of_axis"),
        "t_start": _set("t_start"),
        "dt": _set("dt"),
        "n_samples": _set("n_samples"),
        "sigma": _set("sigma"),
        "seed": _set("seed"),
        "units": _set("units"),
        "out": _set("out"),
    })
    scenes, cam, plan = build_simulation(cfg)
    _echo(cfg, args)
    trajs = []
    for scene in scenes:
        trajs.extend(simulate(scene, cam, plan))
    trajs = add_noise(trajs, cfg["sigma"], cfg["seed"])
    _emit(write_tracks(trajs, units=cfg["units"]), cfg["out"])
    if cfg["out"]:
        truth = {
            "bodies": [
                {
                    "omega": s.motion.omega,
                    "omega_magnitude": abs(s.motion.omega),
                    "center_offset": s.motion.center_offset,
                    "points": s.point_ids(),
                }
                for s in scenes
            ],
            "config": cfg,
        }
        Path(cfg["out"] + ".truth.json").write_text(
            json.dumps(truth, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return EXIT_OK


# --- estimate / segment ----------------------------------------------------

def _load_tracks(cfg):
    if cfg["fixture"]:
        if cfg["fixture"] != "table1":
            raise ConfigError(f"fixture: unknown fixture {cfg['fixture']!r}")
        return table1_fixture()
    if not cfg["input"]:
        raise ConfigError("input: give a track file or --fixture table1")
    try:
        text = Path(cfg["input"]).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"input: {exc}") from None
    return parse_tracks(text)


def _empty_series(traj):
    nan = np.full(traj.y.shape, np.nan)
    return DerivativeSeries(traj.point_id, traj.t.copy(), traj.y.copy(), nan, nan.copy(), "none")


def _estimate_all(cfg):
    if cfg["scheme"] not in ("backward", "central"):
        raise ConfigError(f"scheme: must be backward or central, got {cfg['scheme']!r}")
    try:
        est_cfg = EstimatorConfig(float(cfg["eps_rel"]), cfg["aggregation"])
    except ValueError as exc:
        raise ConfigError(f"eps_rel/aggregation: {exc}") from None
    trajs = _load_tracks(cfg)
    series = []
    short = 0
    for tr in trajs:
        try:
            series.append(differentiate(tr, cfg["scheme"]))
        except TooFewSamples:
            short += 1
            series.append(_empty_series(tr))
    if short == len(trajs):
        return series, None, "insufficient samples: every point needs at least 3 samples"

    if cfg["reference"]:
        by_id = {s.point_id: s for s in series}
        if cfg["reference"] not in by_id:
            raise ConfigError(f"reference: unknown point id {cfg['reference']!r}")
        ref = by_id[cfg["reference"]]
        series = [s for s in series if s.point_id != ref.point_id]
        estimates = [estimate_two_point_trajectory(s, ref, est_cfg) for s in series]
    else:
        estimates = [estimate_trajectory(s, est_cfg) for s in series]
    if not any(e.n_valid for e in estimates):
        return series, estimates, "no valid samples for any point"
    return series, estimates, None


def _estimate_flags():
    return {
        "input": _set("input"),
        "fixture": _set("fixture"),
        "scheme": _set("scheme"),
        "eps_rel": _set("eps_rel"),
        "aggregation": _set("aggregation"),
        "reference": _set("reference"),
        "out": _set("out"),
        "table": _set("table"),
    }


def run_estimate(args):
    cfg = _resolve(ESTIMATE_DEFAULTS, args, _estimate_flags())
    _echo(cfg, args)
    series, estimates, failure = _estimate_all(cfg)
    if failure:
        sys.stderr.write(f"error: {failure}\n")
        return EXIT_NO_RESULT
    _emit(write_estimates(estimates, config=cfg), cfg["out"])
    if cfg["table"]:
        Path(cfg["table"]).write_text(write_sample_table(series, estimates), encoding="utf-8")
    return EXIT_OK


def run_segment(args):
    flags = _estimate_flags()
    flags["tol"] = _set("tol")
    cfg = _resolve(SEGMENT_DEFAULTS, args, flags)
    if not cfg["tol"] > 0:
        raise ConfigError(f"tol: must be > 0, got {cfg['tol']!r}")
    _echo(cfg, args)
    series, estimates, failure = _estimate_all(cfg)
    if failure:
        sys.stderr.write(f"error: {failure}\n")
        return EXIT_NO_RESULT
    labeling = segment_points(estimates, cfg["tol"])
    _emit(write_estimates(estimates, labeling, config=cfg), cfg["out"])
    if cfg["table"]:
        Path(cfg["table"]).write_text(write_sample_table(series, estimates), encoding="utf-8")
    return EXIT_OK


# --- sweep -----------------------------------------------------------------

def run_sweep(args):
    cfg = _resolve(SWEEP_DEFAULTS, args, {
        "half_fov": _set("half_fov"),
        "omega": _set("omega"),
        "radius": _set("radius"),
        "dt": _set("dt"),
        "n_samples": _set("n_samples"),
        "scheme": _set("scheme"),
        "eps_rel": _set("eps_rel"),
        "focal": _set("focal_length"),
        "out": _set("out"),
    })
    if cfg["omega"] == 0:
        raise ConfigError("omega: must be nonzero (relative error undefined for omega = 0)")
    if not cfg["radius"] > 0:
        raise ConfigError("radius: must be > 0")
    if not cfg["dt"] > 0:
        raise ConfigError("dt: must be > 0")
    if any(a < 0 for a in cfg["half_fov"]):
        raise ConfigError("half_fov: angles must be >= 0 degrees")
    _echo(cfg, args)
    try:
        est_cfg = EstimatorConfig(float(cfg["eps_rel"]))
    except ValueError as exc:
        raise ConfigError(f"eps_rel: {exc}") from None
    try:
        rows = perspective_sweep(
            cfg["half_fov"], omega=cfg["omega"], radius=cfg["radius"], dt=cfg["dt"],
            n_samples=cfg["n_samples"], scheme=cfg["scheme"], cfg=est_cfg,
            focal_length=cfg["focal_length"],
        )
    except NonPositiveDepth as exc:
        raise ConfigError(f"half_fov: invalid geometry, {exc}") from None
    lines = ["half_fov_deg,relative_error"]
    lines += [f"{a!r},{e!r}" for a, e in rows]
    _emit("\n".join(lines) + "\n", cfg["out"])
    return EXIT_OK


# --- parser ----------------------------------------------------------------

def _common(p):
    p.add_argument("--config", help="JSON file with configuration fields")
    p.add_argument("--save-config", help="write the resolved configuration here")
    p.add_argument("--out", help="output path (default: stdout)")


def _estimate_args(p):
    src = p.add_mutually_exclusive_group()
    src.add_argument("--in", dest="input", help="track file (t,point_id,y)")
    src.add_argument("--fixture", choices=["table1"], help="embedded dataset")
    p.add_argument("--scheme", choices=["backward", "central"])
    p.add_argument("--eps-rel", type=float, help="near-singular threshold relative to max|y|")
    p.add_argument("--aggregation", choices=["mean", "median"])
    p.add_argument("--reference", help="point id to difference against (unknown axis offset)")
    p.add_argument("--table", help="write the per-sample long-form table here")


def build_parser():
    parser = argparse.ArgumentParser(prog="omegatrack", description=__doc__.split("\n\n")[0].strip())
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="synthesise tracks for a rotating body")
    _common(p)
    p.add_argument("--omega", type=float, help="rotation rate, rad/s")
    p.add_argument("--offset", type=float, help="axis offset from the fixation point")
    p.add_argument("--point", type=_point, action="append",
                   help="body point R[,PHASE[,HEIGHT[,LABEL]]]; repeatable")
    p.add_argument("--camera", choices=["orthographic", "perspective"])
    p.add_argument("--focal", type=float)
    p.add_argument("--standoff", type=float)
    p.add_argument("--depth-of-axis", type=float)
    p.add_argument("--t-start", type=float)
    p.add_argument("--dt", type=float)
    p.add_argument("--n-samples", type=int)
    p.add_argument("--sigma", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--units")
    p.set_defaults(func=run_simulate)

    p = sub.add_parser("estimate", help="per-point rotation rate")
    _common(p)
    _estimate_args(p)
    p.set_defaults(func=run_estimate)

    p = sub.add_parser("segment", help="group points by rotation rate")
    _common(p)
    _estimate_args(p)
    p.add_argument("--tol", type=float, help="largest omega gap inside a cluster, rad/s")
    p.set_defaults(func=run_segment)

    p = sub.add_parser("sweep", help="perspective error vs half field of view")
    _common(p)
    p.add_argument("--half-fov", type=float, nargs="+", help="degrees; 0 = orthographic")
    p.add_argument("--omega", type=float)
    p.add_argument("--radius", type=float)
    p.add_argument("--dt", type=float)
    p.add_argument("--n-samples", type=int)
    p.add_argument("--scheme", choices=["backward", "central"])
    p.add_argument("--eps-rel", type=float)
    p.add_argument("--focal", type=float)
    p.set_defaults(func=run_sweep)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    try:
        return args.func(args)
    except (ConfigError, OmegaTrackError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
