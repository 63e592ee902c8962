"""Measurement ingestion, affine fits, friction calibration and experiment replays."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, replace
from typing import IO, Iterable, Mapping, Sequence

import numpy as np

from .errors import CalibrationError, DegenerateFitError, DomainError, IngestionError
from .tension import ChainConfig, Mechanism, TorqueProfile, joint_tension, tip_torque_profile
from .torque_models import BeadParams, CombParams, Material, MechanismParams, RadialParams, layer_radii, normal_load_from_tension, with_mu

# fourth-joint holding torques at 50 N root tension, N*m
ANCHOR_TORQUES = {"bead": 0.13, "comb": 0.20, "radial": 0.39}
ANCHOR_JOINT = 4
ANCHOR_TENSION = 50.0
LEVER_ARM = 0.122


@dataclass(frozen=True)
class MeasurementRecord:
    mechanism_id: str
    joint_index: int
    tension: float
    torque: float

    def __post_init__(self):
        if self.joint_index < 1:
            raise DomainError("joint_index must be >= 1")
        if not (self.tension >= 0 and self.torque >= 0):
            raise DomainError("tension and torque must be >= 0")


@dataclass
class MeasurementSet:
    records: list[MeasurementRecord]
    lever_arm: float = LEVER_ARM
    push_distance: float = 0.015
    push_velocity: float = 10.0  # mm/min

    def __post_init__(self):
        if not self.lever_arm > 0:
            raise DomainError("lever_arm must be > 0")

    def mechanisms(self) -> list[str]:
        return sorted({r.mechanism_id for r in self.records})

    def points(self, mechanism_id: str | None = None) -> list[tuple[float, float]]:
        return [(r.tension, r.torque) for r in self.records if mechanism_id is None or r.mechanism_id == mechanism_id]

    def __len__(self):
        return len(self.records)


# accepted torque-like columns and their conversion to N*m (force_N uses the lever arm)
_TORQUE_COLUMNS = {"torque_Nm": 1.0, "torque_Nmm": 1e-3, "force_N": None}


def load_measurements(
    source: IO[str] | Iterable[str],
    lever_arm: float = LEVER_ARM,
    default_mechanism: str = "unknown",
) -> MeasurementSet:
    """Parse a measurement CSV.

    Required columns are ``joint_index``, ``tension_N`` and one of
    ``torque_Nm``, ``torque_Nmm`` or ``force_N`` (push reaction force, turned
    into torque through ``lever_arm``). A ``mechanism`` column is optional.
    Every bad row is collected before raising.
    """
    reader = csv.reader(source)
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise IngestionError([(1, "empty file, header row required")]) from None

    problems: list[tuple[int, str]] = []
    missing = [c for c in ("joint_index", "tension_N") if c not in header]
    torque_col = next((c for c in _TORQUE_COLUMNS if c in header), None)
    if torque_col is None:
        missing.append("torque_Nm")
    if missing:
        raise IngestionError([(1, f"missing column(s): {', '.join(missing)}")])

    col = {name: header.index(name) for name in header}
    scale = _TORQUE_COLUMNS[torque_col]
    records = []
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(header):
            problems.append((lineno, f"expected {len(header)} cells, got {len(row)}"))
            continue
        try:
            jidx_f = float(row[col["joint_index"]])
            tension = float(row[col["tension_N"]])
            raw = float(row[col[torque_col]])
        except ValueError as exc:
            problems.append((lineno, f"non-numeric cell ({exc})"))
            continue
        bad = []
        if jidx_f != int(jidx_f) or jidx_f < 1:
            bad.append(f"joint_index {row[col['joint_index']]!r} is not a positive integer")
        if not (tension >= 0 and math.isfinite(tension)):
            bad.append(f"tension_N {tension:g} is negative or not finite")
        if not (raw >= 0 and math.isfinite(raw)):
            bad.append(f"{torque_col} {raw:g} is negative or not finite")
        if bad:
            problems.append((lineno, "; ".join(bad)))
            continue
        torque = raw * lever_arm if scale is None else raw * scale
        mech = row[col["mechanism"]].strip() if "mechanism" in col else default_mechanism
        records.append(MeasurementRecord(mech, int(jidx_f), tension, torque))

    if problems:
        raise IngestionError(problems)
    return MeasurementSet(records, lever_arm=lever_arm)


@dataclass(frozen=True)
class AffineFit:
    slope: float
    intercept: float
    r_squared: float
    engagement_tension: float = field(init=False)

    def __post_init__(self):
        if not 0 <= self.r_squared <= 1:
            raise ValueError(f"r_squared out of [0, 1]: {self.r_squared!r}")
        eng = -self.intercept / self.slope if self.intercept < 0 and self.slope > 0 else 0.0
        object.__setattr__(self, "engagement_tension", eng)

    def predict(self, tension: float) -> float:
        return self.slope * tension + self.intercept

    def as_dict(self) -> dict:
        return {
            "slope_Nm_per_N": self.slope,
            "intercept_Nm": self.intercept,
            "r_squared": self.r_squared,
            "engagement_tension_N": self.engagement_tension,
        }


def fit_affine(points: Sequence[tuple[float, float]], through_origin: bool = False) -> AffineFit:
    """Ordinary least-squares line through (tension, torque) points.

    ``r_squared`` is 1 - SS_res / SS_tot about the mean in both variants;
    for the through-origin fit it is clipped at 0. Data with zero spread in
    torque counts as perfectly explained when the residual vanishes.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    x, y = pts[:, 0], pts[:, 1]
    if np.unique(x).size < 2:
        raise DegenerateFitError("need at least two distinct tension values")
    if through_origin:
        slope = float(np.dot(x, y) / np.dot(x, x))
        intercept = 0.0
    else:
        xm, ym = x.mean(), y.mean()
        slope = float(np.dot(x - xm, y - ym) / np.dot(x - xm, x - xm))
        intercept = float(ym - slope * xm)
    resid = y - (slope * x + intercept)
    ss_res = float(np.dot(resid, resid))
    ss_tot = float(np.dot(y - y.mean(), y - y.mean()))
    scale = max(float(np.dot(y, y)), 1e-300)
    if ss_tot <= 1e-24 * scale:
        r2 = 1.0 if ss_res <= 1e-24 * scale else 0.0
    else:
        r2 = min(1.0, max(0.0, 1.0 - ss_res / ss_tot))
    return AffineFit(slope, intercept, r2)


def calibrate_mu(params: MechanismParams, fit: AffineFit) -> Material:
    """Invert a mechanism's torque model for the friction coefficient."""
    if not fit.slope > 0:
        raise CalibrationError(f"cannot calibrate from non-positive slope {fit.slope!r}")
    if isinstance(params, BeadParams):
        return Material(fit.slope / params.contact_radius)
    if isinstance(params, RadialParams):
        return Material(fit.slope / sum(layer_radii(params)))
    if isinstance(params, CombParams):
        dload_dtension = normal_load_from_tension(1.0, params.wrap_angle)
        return Material(fit.slope / (params.contact_surfaces * 2.0 / 3.0 * params.plate_radius * dload_dtension))
    raise TypeError(f"unknown mechanism parameters {type(params).__name__}")


def calibrate_to_anchor(
    mech: Mechanism,
    torque: float,
    joint_index: int = ANCHOR_JOINT,
    root_tension: float = ANCHOR_TENSION,
) -> Mechanism:
    """Set mu so the mechanism holds ``torque`` at ``joint_index`` of a chain pulled at ``root_tension``."""
    local = joint_tension(root_tension, mech.attenuation, joint_index) - mech.engagement_tension
    if not local > 0:
        raise CalibrationError("anchor joint sees no tension above the engagement threshold")
    slope = torque / local
    fit = AffineFit(slope, -slope * mech.engagement_tension, 1.0)
    return replace(mech, params=with_mu(mech.params, calibrate_mu(mech.params, fit).mu))


def calibrate_anchored_trio(mechs: Mapping[str, Mechanism]) -> dict[str, Mechanism]:
    """Calibrate bead/comb/radial mechanisms (keyed by family) to the fourth-joint anchors."""
    return {fam: calibrate_to_anchor(m, ANCHOR_TORQUES[fam]) for fam, m in mechs.items()}


def simulate_experiment_i(mechs: Sequence[Mechanism], chain: ChainConfig) -> list[TorqueProfile]:
    """Holding torque at every joint of a chain pulled at ``chain.root_tension``."""
    return [tip_torque_profile(m, chain) for m in mechs]


def simulate_experiment_ii(mechs: Sequence[Mechanism], tension_grid: Sequence[float]) -> dict[str, list[tuple[float, float]]]:
    """Root-joint holding torque against wire tension."""
    if len(tension_grid) == 0:
        raise DomainError("tension_grid is empty")
    if any(not t >= 0 for t in tension_grid):
        raise DomainError("tensions must be >= 0")
    return {m.name: [(float(t), m.torque_at(t)) for t in tension_grid] for m in mechs}


def synthetic_measurements(
    mechs: Sequence[Mechanism],
    tension_grid: Sequence[float],
    noise_fraction: float = 0.0,
    seed: int = 0,
) -> MeasurementSet:
    """Root-joint readings from the models, with optional Gaussian noise.

    Noise sigma is ``noise_fraction`` of each mechanism's torque range.
    """
    rng = np.random.default_rng(seed)
    records = []
    for name, pts in simulate_experiment_ii(mechs, tension_grid).items():
        torques = np.array([t for _, t in pts])
        sigma = noise_fraction * float(np.ptp(torques))
        noisy = np.clip(torques + rng.normal(0.0, sigma, size=torques.size), 0.0, None) if sigma else torques
        records += [MeasurementRecord(name, 1, float(T), float(tq)) for (T, _), tq in zip(pts, noisy)]
    return MeasurementSet(records)


def write_measurements_csv(stream: IO[str], data: MeasurementSet) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(["mechanism", "joint_index", "tension_N", "torque_Nm"])
    for r in data.records:
        w.writerow([r.mechanism_id, r.joint_index, repr(r.tension), repr(r.torque)])
