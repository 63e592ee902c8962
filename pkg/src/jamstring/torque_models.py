"""Holding-torque models for bead, comb and radial-layer jamming joints.

All quantities are SI: lengths in m, forces in N, torques in N*m. Angles
are degrees wherever they appear in a parameter set.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Union

import numpy as np

from .errors import DomainError


def _require_nonneg(**values: float) -> None:
    for name, v in values.items():
        if not v >= 0:
            raise DomainError(f"{name} must be >= 0, got {v!r}")


@dataclass(frozen=True)
class Material:
    mu: float

    def __post_init__(self):
        _require_nonneg(mu=self.mu)


@dataclass(frozen=True)
class BeadParams:
    contact_radius: float
    cone_apex_angle: float
    material: Material

    family = "bead"

    def __post_init__(self):
        if not self.contact_radius > 0:
            raise DomainError(f"contact_radius must be > 0, got {self.contact_radius!r}")
        if not 0 < self.cone_apex_angle < 180:
            raise DomainError(f"cone_apex_angle must be in (0, 180), got {self.cone_apex_angle!r}")

    @property
    def width(self) -> float:
        return 2 * self.contact_radius


@dataclass(frozen=True)
class CombParams:
    plate_radius: float
    plate_count: int
    plate_thickness: float
    clearance: float
    training_angle: float
    material: Material

    family = "comb"

    def __post_init__(self):
        for name in ("plate_radius", "plate_thickness", "clearance"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be > 0, got {getattr(self, name)!r}")
        if int(self.plate_count) != self.plate_count or self.plate_count < 1:
            raise DomainError(f"plate_count must be a positive integer, got {self.plate_count!r}")
        if not 0 < self.training_angle < 90:
            raise DomainError(f"training_angle must be in (0, 90), got {self.training_angle!r}")

    @property
    def wrap_angle(self) -> float:
        """Wire-pulley contact angle; twice the training angle (45 deg -> 90 deg)."""
        return 2 * self.training_angle

    @property
    def contact_surfaces(self) -> int:
        return 2 * int(self.plate_count) - 1

    @property
    def width(self) -> float:
        return 2 * self.plate_radius


@dataclass(frozen=True)
class RadialParams:
    outer_radius: float
    layer_count: int
    wall_thickness: float
    clearance: float
    material: Material

    family = "radial"

    def __post_init__(self):
        for name in ("outer_radius", "wall_thickness", "clearance"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be > 0, got {getattr(self, name)!r}")
        if int(self.layer_count) != self.layer_count or self.layer_count < 1:
            raise DomainError(f"layer_count must be a positive integer, got {self.layer_count!r}")
        layer_radii(self)

    @property
    def width(self) -> float:
        return 2 * self.outer_radius


MechanismParams = Union[BeadParams, CombParams, RadialParams]


def bead_holding_torque(params: BeadParams, tension: float) -> float:
    _require_nonneg(tension=tension)
    return params.material.mu * params.contact_radius * tension


def disc_friction_torque(mu: float, normal_load: float, radius: float) -> float:
    """Friction torque of one flat circular contact under uniform pressure.

    Integrating mu * r * dF over a disc of radius R with dF = F r dr dtheta / (pi R^2)
    gives (2/3) mu F R. No factor of pi survives the integration.
    """
    _require_nonneg(mu=mu, normal_load=normal_load, radius=radius)
    return 2.0 / 3.0 * mu * normal_load * radius


def disc_friction_torque_numeric(
    mu: float, normal_load: float, radius: float, radial_cells: int, angular_cells: int
) -> float:
    """Midpoint-rule evaluation of the disc friction double integral in polar coordinates."""
    _require_nonneg(mu=mu, normal_load=normal_load, radius=radius)
    if radial_cells < 1 or angular_cells < 1:
        raise DomainError("radial_cells and angular_cells must be >= 1")
    if radius == 0:
        return 0.0
    dr = radius / radial_cells
    dtheta = 2 * math.pi / angular_cells
    r = (np.arange(radial_cells) + 0.5) * dr
    theta = (np.arange(angular_cells) + 0.5) * dtheta
    pressure = normal_load / (math.pi * radius**2)
    # integrand mu * p * r^2 has no theta dependence, but keep the full 2D grid
    integrand = mu * pressure * np.outer(r**2, np.ones_like(theta))
    return float(integrand.sum() * dr * dtheta)


def comb_holding_torque(params: CombParams, normal_load: float) -> float:
    _require_nonneg(normal_load=normal_load)
    per_surface = disc_friction_torque(params.material.mu, normal_load, params.plate_radius)
    return params.contact_surfaces * per_surface


def normal_load_from_tension(tension: float, wrap_angle: float) -> float:
    """Resultant of the two wire tensions pressing on an ideal pulley."""
    _require_nonneg(tension=tension)
    if not 0 <= wrap_angle <= 180:
        raise DomainError(f"wrap_angle must be in [0, 180], got {wrap_angle!r}")
    return 2 * tension * math.sin(math.radians(wrap_angle) / 2)


def layer_radii(params: RadialParams) -> list[float]:
    step = params.wall_thickness + params.clearance
    radii = [params.outer_radius - i * step for i in range(int(params.layer_count))]
    if radii[-1] <= 0:
        raise DomainError(
            f"innermost layer radius {radii[-1]:.6g} m is not positive "
            f"({params.layer_count} layers of pitch {step:.6g} m in outer radius {params.outer_radius:.6g} m)"
        )
    return radii


def radial_holding_torque(params: RadialParams, tension: float) -> float:
    _require_nonneg(tension=tension)
    return params.material.mu * sum(layer_radii(params)) * tension


def torque_per_tension(params: MechanismParams) -> float:
    """Slope of holding torque against wire tension (N*m per N)."""
    if isinstance(params, BeadParams):
        return params.material.mu * params.contact_radius
    if isinstance(params, CombParams):
        dload = normal_load_from_tension(1.0, params.wrap_angle)
        return params.contact_surfaces * disc_friction_torque(params.material.mu, dload, params.plate_radius)
    if isinstance(params, RadialParams):
        return params.material.mu * sum(layer_radii(params))
    raise TypeError(f"unknown mechanism parameters {type(params).__name__}")


def holding_torque(params: MechanismParams, tension: float, engagement_tension: float = 0.0) -> float:
    """Single-joint holding torque at a given wire tension.

    With a nonzero engagement tension the torque is zero below the threshold
    and rises with the usual slope above it.
    """
    _require_nonneg(tension=tension, engagement_tension=engagement_tension)
    effective = max(tension - engagement_tension, 0.0)
    if isinstance(params, BeadParams):
        return bead_holding_torque(params, effective)
    if isinstance(params, CombParams):
        return comb_holding_torque(params, normal_load_from_tension(effective, params.wrap_angle))
    if isinstance(params, RadialParams):
        return radial_holding_torque(params, effective)
    raise TypeError(f"unknown mechanism parameters {type(params).__name__}")


def with_mu(params: MechanismParams, mu: float) -> MechanismParams:
    return replace(params, material=Material(mu))
