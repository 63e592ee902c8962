"""Wire tension loss along a joint chain and the torque profiles it produces."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .errors import DomainError, NoHalvingError
from .torque_models import MechanismParams, holding_torque

# 6 %/joint for comb; bead and radial lose 4x and 2x less
DEFAULT_RETENTION = {"bead": 0.985, "comb": 0.94, "radial": 0.97}


@dataclass(frozen=True)
class AttenuationModel:
    retention_per_joint: float = 1.0

    def __post_init__(self):
        if not 0 < self.retention_per_joint <= 1:
            raise DomainError(f"retention_per_joint must be in (0, 1], got {self.retention_per_joint!r}")

    @classmethod
    def default_for(cls, family: str) -> "AttenuationModel":
        return cls(DEFAULT_RETENTION[family])


@dataclass(frozen=True)
class ChainConfig:
    joint_count: int
    inter_axial_distance: float
    lever_arm: float = 0.122
    root_tension: float = 50.0

    def __post_init__(self):
        if int(self.joint_count) != self.joint_count or self.joint_count < 1:
            raise DomainError(f"joint_count must be a positive integer, got {self.joint_count!r}")
        if not (self.inter_axial_distance > 0 and self.lever_arm > 0):
            raise DomainError("inter_axial_distance and lever_arm must be > 0")
        if not self.root_tension >= 0:
            raise DomainError(f"root_tension must be >= 0, got {self.root_tension!r}")


@dataclass(frozen=True)
class Mechanism:
    """A joint design together with its per-joint loss and engagement threshold."""

    name: str
    params: MechanismParams
    attenuation: AttenuationModel = field(default_factory=AttenuationModel)
    engagement_tension: float = 0.0

    @property
    def family(self) -> str:
        return self.params.family

    def torque_at(self, tension: float) -> float:
        return holding_torque(self.params, tension, self.engagement_tension)


@dataclass(frozen=True)
class TorqueProfile:
    mechanism_id: str
    tensions: tuple[float, ...]
    torques: tuple[float, ...]

    def __post_init__(self):
        if len(self.tensions) != len(self.torques):
            raise ValueError("tensions and torques differ in length")
        if any(not t >= 0 for t in self.torques):
            raise DomainError("profile torques must be >= 0")

    @property
    def entries(self) -> list[tuple[int, float]]:
        return [(i, t) for i, t in enumerate(self.torques, start=1)]

    def torque(self, joint_index: int) -> float:
        return self.torques[joint_index - 1]

    @property
    def tip_torque(self) -> float:
        return self.torques[-1]

    def __len__(self):
        return len(self.torques)


def joint_tension(root_tension: float, model: AttenuationModel, joint_index: int) -> float:
    """Tension reaching joint ``joint_index``; joint 1 (root) sees the full value."""
    if joint_index < 1:
        raise DomainError(f"joint_index must be >= 1, got {joint_index!r}")
    return root_tension * model.retention_per_joint ** (joint_index - 1)


def retention_after(model: AttenuationModel, joints: int) -> float:
    """Fraction of the root tension left after passing ``joints`` joints."""
    return model.retention_per_joint**joints


def tip_torque_profile(mech: Mechanism, chain: ChainConfig, model: Optional[AttenuationModel] = None) -> TorqueProfile:
    model = model or mech.attenuation
    tensions = tuple(joint_tension(chain.root_tension, model, i) for i in range(1, chain.joint_count + 1))
    torques = tuple(mech.torque_at(t) for t in tensions)
    return TorqueProfile(mech.name, tensions, torques)


def halving_joint(model: AttenuationModel) -> int:
    """Smallest n >= 1 with k**n <= 1/2."""
    k = model.retention_per_joint
    if k >= 1:
        raise NoHalvingError("a lossless chain never halves its tension")
    n = max(1, math.ceil(math.log(0.5) / math.log(k)))
    # guard the float ceil against landing one off either side
    while n > 1 and k ** (n - 1) <= 0.5:
        n -= 1
    while k**n > 0.5:
        n += 1
    return n


def crossover_joint(mech_a: Mechanism, mech_b: Mechanism, chain: ChainConfig) -> Optional[int]:
    """First joint where ``mech_a`` holds at least as much torque as ``mech_b``."""
    prof_a = tip_torque_profile(mech_a, chain)
    prof_b = tip_torque_profile(mech_b, chain)
    for i, (ta, tb) in enumerate(zip(prof_a.torques, prof_b.torques), start=1):
        if ta >= tb:
            return i
    return None
