"""Grid sweeps over mechanism parameters, Pareto filtering, and mechanism recommendation."""
from __future__ import annotations

import csv
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import IO, Mapping, Optional, Sequence

import numpy as np

from .errors import DomainError, GridTooLargeError
from .tension import AttenuationModel, ChainConfig, Mechanism, TorqueProfile, tip_torque_profile
from .torque_models import BeadParams, CombParams, Material, MechanismParams, RadialParams, layer_radii

PARAM_ORDER = ("radius", "count", "thickness", "clearance", "mu", "k")
_FIELD_FOR = {
    "bead": {"radius": "contact_radius"},
    "comb": {"radius": "plate_radius", "count": "plate_count", "thickness": "plate_thickness", "clearance": "clearance"},
    "radial": {"radius": "outer_radius", "count": "layer_count", "thickness": "wall_thickness", "clearance": "clearance"},
}
OUTPUT_FIELDS = ("root_torque_Nm", "tip_torque_Nm", "width_m", "part_weight_proxy")
DEFAULT_CAP = 10**6


@dataclass(frozen=True)
class SweepSpec:
    """Cartesian grid of ``(min, max, steps)`` ranges applied on top of ``base``."""

    base: Mechanism
    chain: ChainConfig
    ranges: Mapping[str, tuple[float, float, int]] = field(default_factory=dict)
    cap: int = DEFAULT_CAP

    @property
    def family(self) -> str:
        return self.base.family

    def __post_init__(self):
        allowed = set(_FIELD_FOR[self.family]) | {"mu", "k"}
        for name, rng in self.ranges.items():
            if name not in allowed:
                raise DomainError(f"parameter {name!r} cannot be swept for {self.family}; choose from {sorted(allowed)}")
            lo, hi, steps = rng
            if int(steps) != steps or steps < 1:
                raise DomainError(f"{name}: steps must be a positive integer")
            if lo > hi:
                raise DomainError(f"{name}: min {lo} > max {hi}")

    def axes(self) -> list[tuple[str, list[float]]]:
        out = []
        for name in PARAM_ORDER:
            if name not in self.ranges:
                continue
            lo, hi, steps = self.ranges[name]
            values = [float(v) for v in np.linspace(lo, hi, int(steps))] if steps > 1 else [float(lo)]
            if name == "count":
                if any(v != round(v) for v in values):
                    raise DomainError(f"count range {self.ranges[name]} does not land on integers")
                values = [int(round(v)) for v in values]
            out.append((name, values))
        return out

    def size(self) -> int:
        return math.prod(int(r[2]) for r in self.ranges.values())


@dataclass(frozen=True)
class DesignRecord:
    family: str
    params: dict
    feasible: bool
    reason: str = ""
    root_torque_Nm: float = 0.0
    tip_torque_Nm: float = 0.0
    width_m: float = 0.0
    part_weight_proxy: float = 0.0
    part_count: int = 1

    def value(self, name: str) -> float:
        if name in OUTPUT_FIELDS or name == "part_count":
            return getattr(self, name)
        if name in self.params:
            return self.params[name]
        raise KeyError(f"unknown field {name!r}")


def weight_proxy(params: MechanismParams) -> float:
    """Material cross-section area, mm^2.

    Solid disc for a bead, a stack of plate discs for a comb, and the sum of
    annular walls for a radial part.
    """
    if isinstance(params, BeadParams):
        area = math.pi * params.contact_radius**2
    elif isinstance(params, CombParams):
        area = params.plate_count * math.pi * params.plate_radius**2
    elif isinstance(params, RadialParams):
        t = params.wall_thickness
        area = sum(math.pi * (r**2 - max(r - t, 0.0) ** 2) for r in layer_radii(params))
    else:
        raise TypeError(type(params).__name__)
    return area * 1e6


def part_count(params: MechanismParams) -> int:
    if isinstance(params, CombParams):
        return int(params.plate_count)
    if isinstance(params, RadialParams):
        return int(params.layer_count)
    return 1


def evaluate_design(mech: Mechanism, chain: ChainConfig) -> tuple[TorqueProfile, float, float]:
    prof = tip_torque_profile(mech, chain)
    return prof, weight_proxy(mech.params), mech.params.width


def _apply(base: Mechanism, assignment: Mapping[str, float]) -> Mechanism:
    fam = base.family
    changes = {_FIELD_FOR[fam][k]: v for k, v in assignment.items() if k in _FIELD_FOR[fam]}
    params = base.params
    if "mu" in assignment:
        changes["material"] = Material(assignment["mu"])
    params = replace(params, **changes)
    attenuation = AttenuationModel(assignment["k"]) if "k" in assignment else base.attenuation
    return replace(base, params=params, attenuation=attenuation)


def _evaluate_point(args) -> DesignRecord:
    base, chain, assignment = args
    fam = base.family
    try:
        mech = _apply(base, assignment)
        prof, proxy, width = evaluate_design(mech, chain)
    except DomainError as exc:
        return DesignRecord(fam, dict(assignment), False, str(exc))
    return DesignRecord(
        fam,
        dict(assignment),
        True,
        "",
        root_torque_Nm=prof.torques[0],
        tip_torque_Nm=prof.tip_torque,
        width_m=width,
        part_weight_proxy=proxy,
        part_count=part_count(mech.params),
    )


def grid_points(spec: SweepSpec) -> list[dict]:
    axes = spec.axes()
    names = [n for n, _ in axes]
    return [dict(zip(names, combo)) for combo in itertools.product(*(v for _, v in axes))]


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[DesignRecord]:
    """Evaluate every grid point; output order is the lexicographic grid order."""
    size = spec.size()
    if size > spec.cap:
        raise GridTooLargeError(size, spec.cap)
    jobs = [(spec.base, spec.chain, a) for a in grid_points(spec)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_evaluate_point, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    return [_evaluate_point(j) for j in jobs]


def pareto_front(records: Sequence[DesignRecord], objectives: Sequence[tuple[str, str]]) -> list[DesignRecord]:
    """Non-dominated feasible records, returned in their input order.

    ``objectives`` pairs a field name with ``"max"`` or ``"min"``.
    """
    if not objectives:
        raise ValueError("at least one objective is required")
    for _, direction in objectives:
        if direction not in ("max", "min"):
            raise ValueError(f"direction must be 'max' or 'min', got {direction!r}")
    feasible = [r for r in records if r.feasible]
    if not feasible:
        return []
    # flip signs so that larger is better on every column
    pts = np.array(
        [[r.value(name) * (1 if d == "max" else -1) for name, d in objectives] for r in feasible], dtype=float
    )
    # best-first lexicographic order: nothing later can dominate anything earlier
    order = np.lexsort(tuple(-pts[:, j] for j in reversed(range(pts.shape[1]))))
    front_idx: list[int] = []
    front = np.empty((0, pts.shape[1]))
    for i in order:
        p = pts[i]
        if front.size and np.any(np.all(front >= p, axis=1) & np.any(front > p, axis=1)):
            continue
        front_idx.append(i)
        front = np.vstack([front, p])
    return [feasible[i] for i in sorted(front_idx)]


def write_sweep_csv(stream: IO[str], records: Sequence[DesignRecord], param_names: Optional[Sequence[str]] = None) -> None:
    if param_names is None:
        seen = {k for r in records for k in r.params}
        param_names = [n for n in PARAM_ORDER if n in seen]
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(["family", *param_names, "feasible", *OUTPUT_FIELDS, "part_count", "reason"])
    for r in records:
        w.writerow(
            [r.family, *(repr(r.params[n]) for n in param_names), int(r.feasible)]
            + [repr(float(getattr(r, f))) for f in OUTPUT_FIELDS]
            + [r.part_count, r.reason]
        )


def read_sweep_csv(stream: IO[str]) -> list[DesignRecord]:
    reader = csv.DictReader(stream)
    fixed = {"family", "feasible", "part_count", "reason", *OUTPUT_FIELDS}
    params = [c for c in (reader.fieldnames or []) if c not in fixed]
    out = []
    for row in reader:
        p = {n: (int(row[n]) if n == "count" else float(row[n])) for n in params}
        out.append(
            DesignRecord(
                row["family"],
                p,
                row["feasible"] == "1",
                row.get("reason", ""),
                part_count=int(row["part_count"]),
                **{f: float(row[f]) for f in OUTPUT_FIELDS},
            )
        )
    return out


@dataclass(frozen=True)
class Requirement:
    min_tip_torque: float
    max_width: float
    joint_count: int
    max_tension: float

    def __post_init__(self):
        if not (self.min_tip_torque > 0 and self.max_width > 0 and self.joint_count >= 1 and self.max_tension > 0):
            raise DomainError("requirement fields must all be positive")


@dataclass(frozen=True)
class Candidate:
    family: str
    mechanism: Mechanism
    profile: TorqueProfile
    width: float
    margin: float


@dataclass
class Recommendation:
    ranked: list[Candidate]
    infeasible: dict[str, list[str]]

    def as_dict(self) -> dict:
        return {
            "ranked": [
                {
                    "family": c.family,
                    "mu": c.mechanism.params.material.mu,
                    "retention_per_joint": c.mechanism.attenuation.retention_per_joint,
                    "width_m": c.width,
                    "tip_torque_Nm": c.profile.tip_torque,
                    "margin_Nm": c.margin,
                    "profile_Nm": list(c.profile.torques),
                }
                for c in self.ranked
            ],
            "infeasible": self.infeasible,
        }


def recommend(requirement: Requirement, presets: Mapping[str, tuple[Mechanism, float]]) -> Recommendation:
    """Rank the given designs against a requirement.

    ``presets`` maps a label to ``(mechanism, inter_axial_distance)``. Each is
    evaluated on a chain of ``requirement.joint_count`` joints pulled at
    ``requirement.max_tension``. Ties on tip torque go to the narrower part,
    then to the one with fewer plates or layers.
    """
    ranked, infeasible = [], {}
    for label, (mech, spacing) in presets.items():
        chain = ChainConfig(requirement.joint_count, spacing, root_tension=requirement.max_tension)
        prof, _, width = evaluate_design(mech, chain)
        binding = []
        if prof.tip_torque < requirement.min_tip_torque:
            binding.append(
                f"min_tip_torque: tip holds {prof.tip_torque:.4g} N*m < required {requirement.min_tip_torque:.4g} N*m"
            )
        if width > requirement.max_width:
            binding.append(f"max_width: {width:.4g} m > allowed {requirement.max_width:.4g} m")
        if binding:
            infeasible[label] = binding
        else:
            ranked.append(Candidate(label, mech, prof, width, prof.tip_torque - requirement.min_tip_torque))
    ranked.sort(key=lambda c: (-c.profile.tip_torque, c.width, part_count(c.mechanism.params)))
    return Recommendation(ranked, infeasible)
