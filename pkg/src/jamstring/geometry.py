"""Planar pose of a jamming chain and the length of its wire route.

Joint ``i`` sits at pivot ``P[i]`` and rotates every part beyond it by
``angles[i]`` degrees. Part ``i`` spans ``P[i]`` to ``P[i+1]``; the fixed
base part lies along -x behind ``P[0]``.
"""
from __future__ import annotations

import csv
import enum
import math
from typing import IO, Optional, Sequence

import numpy as np

from .errors import DomainError
from .tension import ChainConfig
from .torque_models import BeadParams, CombParams, MechanismParams, RadialParams


class WireRouteModel(enum.Enum):
    THROUGH_HOLE_STRAIGHT = "straight"
    CONICAL_PIVOT = "conical"


def _check_angles(chain: ChainConfig, angles: Sequence[float]) -> np.ndarray:
    a = np.asarray(angles, dtype=float)
    if a.ndim != 1 or a.size != chain.joint_count:
        raise DomainError(f"expected {chain.joint_count} joint angles, got {a.size}")
    return a


def chain_pose(chain: ChainConfig, angles: Sequence[float]) -> np.ndarray:
    """Joint centres followed by the tip, shape (joint_count + 1, 2)."""
    a = _check_angles(chain, angles)
    heading = np.cumsum(np.radians(a))
    steps = chain.inter_axial_distance * np.column_stack([np.cos(heading), np.sin(heading)])
    return np.vstack([np.zeros((1, 2)), np.cumsum(steps, axis=0)])


def _route_waypoints(chain: ChainConfig, angles: Sequence[float], model: WireRouteModel) -> np.ndarray:
    pose = chain_pose(chain, angles)
    if model is WireRouteModel.CONICAL_PIVOT:
        # the cone apex of each part meets the wire at the pivot itself
        return pose
    # plain through-hole: the wire threads the part centres, midway between pivots
    base_centre = np.array([[-chain.inter_axial_distance / 2, 0.0]])
    return np.vstack([base_centre, 0.5 * (pose[:-1] + pose[1:])])


def wire_path_length(
    chain: ChainConfig,
    angles: Sequence[float],
    model: WireRouteModel,
    max_angle: Optional[float] = None,
) -> float:
    a = _check_angles(chain, angles)
    if max_angle is not None:
        for i, ang in enumerate(a, start=1):
            if abs(ang) > max_angle:
                raise DomainError(f"joint {i}: angle {ang:g} deg exceeds range of motion {max_angle:g} deg")
    elif np.any(np.abs(a) >= 180):
        raise DomainError("joint angles must satisfy |angle| < 180 deg")
    pts = _route_waypoints(chain, a, model)
    return float(np.sum(np.hypot(*np.diff(pts, axis=0).T)))


def max_joint_angle(params: MechanismParams) -> float:
    """Range of motion per bending side, degrees.

    Beads: the wire can swing inside the cone until it touches the wall,
    i.e. half the apex angle. Comb and radial parts: the clearance between
    layers closes, arctan(clearance / contact radius).
    """
    if isinstance(params, BeadParams):
        return params.cone_apex_angle / 2
    if isinstance(params, CombParams):
        return math.degrees(math.atan(params.clearance / params.plate_radius))
    if isinstance(params, RadialParams):
        return math.degrees(math.atan(params.clearance / params.outer_radius))
    raise TypeError(f"unknown mechanism parameters {type(params).__name__}")


def write_pose_csv(stream: IO[str], pose: np.ndarray, path_length: Optional[float] = None) -> None:
    w = csv.writer(stream, lineterminator="\n")
    header = ["joint_index", "x_m", "y_m"]
    if path_length is not None:
        header.append("wire_length_m")
    w.writerow(header)
    for i, (x, y) in enumerate(pose, start=1):
        row = [i, repr(float(x)), repr(float(y))]
        if path_length is not None:
            row.append(repr(path_length))
        w.writerow(row)
