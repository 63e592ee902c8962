"""Command-line interface.

Exit codes: 0 success, 1 infeasible or empty result, 2 usage or validation error.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .config import FAMILIES, load_preset, resolve_config
from .errors import CalibrationError, ConfigError, DegenerateFitError, DomainError, GridTooLargeError, IngestionError
from .experiments import calibrate_mu, fit_affine, load_measurements
from .explorer import Requirement, SweepSpec, pareto_front, read_sweep_csv, recommend, run_sweep, write_sweep_csv
from .geometry import WireRouteModel, chain_pose, wire_path_length, write_pose_csv
from .tension import AttenuationModel, crossover_joint, joint_tension, tip_torque_profile

EXIT_OK, EXIT_EMPTY, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@contextlib.contextmanager
def _output(path: Optional[str]):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _nonneg_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number") from None
    if not v >= 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def cmd_torque(args) -> int:
    cfg = resolve_config(args.config)
    mech = cfg.mechanism
    tension = joint_tension(args.tension, mech.attenuation, args.joint)
    print(f"torque_Nm={mech.torque_at(tension)!r}")
    return EXIT_OK


def cmd_propagate(args) -> int:
    cfg = resolve_config(args.config)
    model = AttenuationModel(args.k) if args.k is not None else None
    prof = tip_torque_profile(cfg.mechanism, cfg.chain(args.joints, args.tension), model)
    with _output(args.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["joint_index", "tension_N", "torque_Nm"])
        for (i, tq), t in zip(prof.entries, prof.tensions):
            w.writerow([i, repr(t), repr(tq)])
    return EXIT_OK


def cmd_geometry(args) -> int:
    cfg = resolve_config(args.config)
    try:
        angles = [float(a) for a in args.angles.split(",") if a.strip()]
    except ValueError:
        raise UsageError(f"--angles must be comma-separated numbers, got {args.angles!r}") from None
    if not angles:
        raise UsageError("--angles needs at least one value")
    chain = cfg.chain(len(angles))
    route = WireRouteModel(args.route)
    length = wire_path_length(chain, angles, route, max_angle=cfg.max_joint_angle)
    with _output(args.out) as fh:
        write_pose_csv(fh, chain_pose(chain, angles), length)
    return EXIT_OK


def cmd_calibrate(args) -> int:
    cfg = resolve_config(args.config)
    with open(args.data, encoding="utf-8", newline="") as fh:
        data = load_measurements(fh, lever_arm=args.lever_arm, default_mechanism=cfg.mechanism.name)
    points = data.points(args.mechanism)
    if not points:
        raise UsageError(f"no records for mechanism {args.mechanism!r}")
    report = {"mechanism": cfg.mechanism.family, "n_points": len(points)}
    for key, origin in (("free_intercept", False), ("through_origin", True)):
        fit = fit_affine(points, through_origin=origin)
        entry = fit.as_dict()
        try:
            entry["mu_effective"] = calibrate_mu(cfg.mechanism.params, fit).mu
        except CalibrationError:
            entry["mu_effective"] = None
        report[key] = entry
    with _output(args.out) as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")
    return EXIT_OK


def _load_sweep_spec(path: Path) -> SweepSpec:
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"{path}: {exc}") from exc
    unknown = set(doc) - {"mechanism", "config", "ranges", "joints", "root_tension_N", "lever_arm_m", "cap"}
    if unknown:
        raise UsageError(f"{path}: unknown key(s) {', '.join(sorted(unknown))}")
    if "config" in doc:
        cfg = resolve_config(str((path.parent / doc["config"]) if not Path(doc["config"]).is_absolute() else doc["config"]))
    elif doc.get("mechanism") in FAMILIES:
        cfg = load_preset(doc["mechanism"])
    else:
        raise UsageError(f"{path}: give 'mechanism' ({'/'.join(FAMILIES)}) or 'config'")
    ranges = {k: tuple(v) for k, v in doc.get("ranges", {}).items()}
    if any(len(v) != 3 for v in ranges.values()):
        raise UsageError(f"{path}: each range is [min, max, steps]")
    chain = cfg.chain(int(doc.get("joints", 4)), float(doc.get("root_tension_N", 50.0)), float(doc.get("lever_arm_m", 0.122)))
    return SweepSpec(cfg.mechanism, chain, ranges, cap=int(doc.get("cap", 10**6)))


def cmd_sweep(args) -> int:
    spec = _load_sweep_spec(Path(args.spec))
    records = run_sweep(spec, workers=args.workers)
    with _output(args.out) as fh:
        write_sweep_csv(fh, records, [n for n, _ in spec.axes()])
    return EXIT_OK


def _parse_objectives(text: str) -> list[tuple[str, str]]:
    out = []
    for item in text.split(","):
        name, _, direction = item.strip().partition(":")
        if direction not in ("max", "min") or not name:
            raise UsageError(f"objective {item!r} must look like field:max or field:min")
        out.append((name, direction))
    return out


def cmd_pareto(args) -> int:
    objectives = _parse_objectives(args.objectives)
    with open(args.input, encoding="utf-8", newline="") as fh:
        records = read_sweep_csv(fh)
    try:
        front = pareto_front(records, objectives)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    names = [n for n in ("radius", "count", "thickness", "clearance", "mu", "k") if records and n in records[0].params]
    with _output(args.out) as fh:
        write_sweep_csv(fh, front, names)
    return EXIT_OK if front else EXIT_EMPTY


def cmd_crossover(args) -> int:
    a, b = resolve_config(args.config_a), resolve_config(args.config_b)
    chain = a.chain(args.joints, args.tension)
    joint = crossover_joint(a.mechanism, b.mechanism, chain)
    if joint is None:
        print("crossover_joint=none")
        return EXIT_EMPTY
    print(f"crossover_joint={joint}")
    return EXIT_OK


def cmd_recommend(args) -> int:
    refs = args.configs or list(FAMILIES)
    presets = {}
    for ref in refs:
        cfg = resolve_config(ref)
        label = cfg.mechanism.name if cfg.mechanism.name not in presets else ref
        presets[label] = (cfg.mechanism, cfg.inter_axial_distance)
    req = Requirement(args.min_tip_torque, args.max_width, args.joints, args.max_tension)
    rec = recommend(req, presets)
    with _output(args.out) as fh:
        json.dump(rec.as_dict(), fh, indent=2)
        fh.write("\n")
    return EXIT_OK if rec.ranked else EXIT_EMPTY


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="jamstring", description="Jamming-string holding torque and design tools.")
    sub = p.add_subparsers(dest="command", required=True)
    cfg_help = "mechanism config file, or bead/comb/radial for a bundled preset"

    s = sub.add_parser("torque", help="single-joint holding torque")
    s.add_argument("config", help=cfg_help)
    s.add_argument("--tension", type=_nonneg_float, required=True, help="root wire tension, N")
    s.add_argument("--joint", type=_positive_int, default=1, help="joint index along the chain (default 1, the root)")
    s.set_defaults(func=cmd_torque)

    s = sub.add_parser("propagate", help="per-joint torque profile as CSV")
    s.add_argument("config", help=cfg_help)
    s.add_argument("--joints", type=_positive_int, required=True)
    s.add_argument("--tension", type=_nonneg_float, default=50.0, help="root wire tension, N (default 50)")
    s.add_argument("--k", type=float, default=None, help="override per-joint retention factor")
    s.add_argument("--out", default=None, help="output CSV (default stdout)")
    s.set_defaults(func=cmd_propagate)

    s = sub.add_parser("geometry", help="chain pose and wire route length as CSV")
    s.add_argument("config", help=cfg_help)
    s.add_argument("--angles", required=True, help="comma-separated joint angles, deg")
    s.add_argument("--route", choices=[m.value for m in WireRouteModel], default="conical")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_geometry)

    s = sub.add_parser("calibrate", help="fit torque against tension and derive mu, JSON report")
    s.add_argument("config", help=cfg_help)
    s.add_argument("--data", required=True, help="measurement CSV")
    s.add_argument("--mechanism", default=None, help="only use rows with this mechanism tag")
    s.add_argument("--lever-arm", type=float, default=0.122, help="m, converts force_N columns to torque")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_calibrate)

    s = sub.add_parser("sweep", help="grid sweep to CSV")
    s.add_argument("--spec", required=True, help="sweep spec JSON")
    s.add_argument("--out", default=None)
    s.add_argument("--workers", type=_positive_int, default=1)
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("pareto", help="non-dominated rows of a sweep CSV")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--objectives", required=True, help="e.g. tip_torque_Nm:max,width_m:min")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_pareto)

    s = sub.add_parser("crossover", help="first joint where A holds at least as much torque as B")
    s.add_argument("config_a")
    s.add_argument("config_b")
    s.add_argument("--joints", type=_positive_int, required=True)
    s.add_argument("--tension", type=_nonneg_float, default=50.0)
    s.set_defaults(func=cmd_crossover)

    s = sub.add_parser("recommend", help="rank mechanisms against a requirement, JSON report")
    s.add_argument("configs", nargs="*", help="configs to consider (default: the three presets)")
    s.add_argument("--min-tip-torque", type=float, required=True, help="N*m")
    s.add_argument("--max-width", type=float, required=True, help="m")
    s.add_argument("--joints", type=_positive_int, required=True)
    s.add_argument("--max-tension", type=float, default=50.0, help="N")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_recommend)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except IngestionError as exc:
        print(f"jamstring {args.command}: {exc}", file=sys.stderr)
    except (UsageError, ConfigError, DomainError, DegenerateFitError, CalibrationError, GridTooLargeError, OSError) as exc:
        print(f"jamstring {args.command}: error: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
