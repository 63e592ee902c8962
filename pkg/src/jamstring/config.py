"""Mechanism configuration files (YAML) and the bundled prototype presets."""
from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any, Optional, Union

import yaml

from .errors import ConfigError, DomainError
from .geometry import max_joint_angle
from .tension import AttenuationModel, ChainConfig, Mechanism
from .torque_models import BeadParams, CombParams, Material, RadialParams

FAMILIES = ("bead", "comb", "radial")

_COMMON_KEYS = {"mechanism", "units", "mu", "attenuation", "engagement_tension_N", "inter_axial_distance", "max_joint_angle_deg", "name"}
_FAMILY_KEYS = {
    "bead": {"contact_radius", "cone_apex_angle"},
    "comb": {"plate_radius", "plate_count", "plate_thickness", "clearance", "training_angle"},
    "radial": {"outer_radius", "layer_count", "wall_thickness", "clearance"},
}
_LENGTH_KEYS = {"contact_radius", "plate_radius", "plate_thickness", "clearance", "outer_radius", "wall_thickness", "inter_axial_distance"}
_UNIT_SCALE = {"si": 1.0, "mm": 1e-3}


@dataclass(frozen=True)
class MechanismConfig:
    mechanism: Mechanism
    inter_axial_distance: float
    max_joint_angle: float

    def chain(self, joint_count: int, root_tension: float = 50.0, lever_arm: float = 0.122) -> ChainConfig:
        return ChainConfig(joint_count, self.inter_axial_distance, lever_arm, root_tension)


def parse_config(doc: Any, source: str = "<config>") -> MechanismConfig:
    if not isinstance(doc, dict):
        raise ConfigError(f"{source}: expected a mapping at top level")
    family = doc.get("mechanism")
    if family not in FAMILIES:
        raise ConfigError(f"{source}: 'mechanism' must be one of {', '.join(FAMILIES)}, got {family!r}")
    units = doc.get("units")
    if units not in _UNIT_SCALE:
        raise ConfigError(f"{source}: 'units' must be 'si' or 'mm', got {units!r}")
    allowed = _COMMON_KEYS | _FAMILY_KEYS[family]
    unknown = sorted(set(doc) - allowed)
    if unknown:
        raise ConfigError(f"{source}: unknown key(s) for {family}: {', '.join(unknown)}")
    required = _FAMILY_KEYS[family] | {"mu", "inter_axial_distance"}
    missing = sorted(required - set(doc))
    if missing:
        raise ConfigError(f"{source}: missing key(s): {', '.join(missing)}")

    scale = _UNIT_SCALE[units]
    values = {}
    for key in _FAMILY_KEYS[family] | {"inter_axial_distance"}:
        v = doc[key]
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ConfigError(f"{source}: {key} must be numeric, got {v!r}")
        values[key] = v * scale if key in _LENGTH_KEYS else v

    attenuation = doc.get("attenuation", {})
    if not isinstance(attenuation, dict) or set(attenuation) - {"k"}:
        raise ConfigError(f"{source}: 'attenuation' must be a mapping with only key 'k'")

    try:
        material = Material(float(doc["mu"]))
        inter_axial = values.pop("inter_axial_distance")
        if family == "bead":
            params = BeadParams(material=material, **values)
        elif family == "comb":
            params = CombParams(material=material, **values)
        else:
            params = RadialParams(material=material, **values)
        k = attenuation.get("k")
        model = AttenuationModel(float(k)) if k is not None else AttenuationModel.default_for(family)
        mech = Mechanism(
            name=str(doc.get("name", family)),
            params=params,
            attenuation=model,
            engagement_tension=float(doc.get("engagement_tension_N", 0.0)),
        )
        if mech.engagement_tension < 0:
            raise DomainError("engagement_tension_N must be >= 0")
        if not inter_axial > 0:
            raise DomainError("inter_axial_distance must be > 0")
        rom = doc.get("max_joint_angle_deg")
        rom = float(rom) if rom is not None else max_joint_angle(params)
        if not 0 < rom < 180:
            raise DomainError("max_joint_angle_deg must be in (0, 180)")
    except (DomainError, TypeError, ValueError) as exc:
        raise ConfigError(f"{source}: {exc}") from exc
    return MechanismConfig(mech, inter_axial, rom)


def load_config(path: Union[str, Path]) -> MechanismConfig:
    path = Path(path)
    try:
        doc = yaml.safe_load(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: not valid YAML ({exc})") from exc
    return parse_config(doc, str(path))


def preset_path(family: str) -> Path:
    if family not in FAMILIES:
        raise ConfigError(f"no preset for {family!r}")
    return Path(str(resources.files("jamstring") / "presets" / f"{family}.tbl1"))


def load_preset(family: str) -> MechanismConfig:
    return load_config(preset_path(family))


def resolve_config(ref: str) -> MechanismConfig:
    """Accept a file path, or a bare family name for the bundled preset."""
    if ref in FAMILIES and not Path(ref).exists():
        return load_preset(ref)
    return load_config(ref)


def config_to_dict(cfg: MechanismConfig, mu: Optional[float] = None) -> dict:
    """SI-units document equivalent to ``cfg``; round-trips through parse_config."""
    p = cfg.mechanism.params
    doc: dict[str, Any] = {"mechanism": p.family, "units": "si", "name": cfg.mechanism.name}
    for key in sorted(_FAMILY_KEYS[p.family]):
        doc[key] = getattr(p, key)
    doc["mu"] = p.material.mu if mu is None else mu
    doc["inter_axial_distance"] = cfg.inter_axial_distance
    doc["attenuation"] = {"k": cfg.mechanism.attenuation.retention_per_joint}
    doc["engagement_tension_N"] = cfg.mechanism.engagement_tension
    doc["max_joint_angle_deg"] = cfg.max_joint_angle
    return doc
