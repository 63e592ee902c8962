"""Regenerate the bundled presets with friction coefficients fitted to the
fourth-joint holding torques (0.13 / 0.20 / 0.39 N*m at 50 N root tension).

    python scripts/calibrate_presets.py
"""
from pathlib import Path

from jamstring.config import parse_config
from jamstring.experiments import ANCHOR_TORQUES, calibrate_to_anchor

OUT = Path(__file__).resolve().parents[1] / "src" / "jamstring" / "presets"

TEMPLATES = {
    "bead": """\
# Bead jamming part, prototype dimensions in mm.
mechanism: bead
units: mm
contact_radius: 6.0        # part width 12.0 mm, halved
cone_apex_angle: 70.0      # full apex of the conical wire route, deg
inter_axial_distance: 6.0  # pivot spacing, mm
mu: {mu!r}  # fitted: 0.13 N*m at joint 4, 50 N root tension
attenuation:
  k: 0.985                 # comb loss rate divided by 4
engagement_tension_N: 0.0
""",
    "comb": """\
# Comb jamming part, prototype dimensions in mm.
mechanism: comb
units: mm
plate_radius: 6.0          # part width 12.0 mm, halved
plate_count: 5
plate_thickness: 1.10
clearance: 1.12
training_angle: 45.0       # deg; gives a 90 deg wire-pulley contact
inter_axial_distance: 30.0
mu: {mu!r}  # fitted: 0.20 N*m at joint 4, 50 N root tension
attenuation:
  k: 0.94                  # 6 % pulley loss per joint
engagement_tension_N: 0.0
""",
    "radial": """\
# Radial-layer jamming part, prototype dimensions in mm.
mechanism: radial
units: mm
outer_radius: 7.5          # part width 15.0 mm, halved
layer_count: 3
wall_thickness: 0.90
clearance: 1.05
inter_axial_distance: 9.1
mu: {mu!r}  # fitted: 0.39 N*m at joint 4, 50 N root tension
attenuation:
  k: 0.97                  # comb loss rate divided by 2
engagement_tension_N: 0.0
""",
}


def main():
    import yaml

    for family, template in TEMPLATES.items():
        cfg = parse_config(yaml.safe_load(template.format(mu=1.0)), family)
        mu = calibrate_to_anchor(cfg.mechanism, ANCHOR_TORQUES[family]).params.material.mu
        path = OUT / f"{family}.tbl1"
        path.write_text(template.format(mu=mu), encoding="utf-8")
        print(f"{family:7s} mu={mu:.6f} -> {path}")


if __name__ == "__main__":
    main()
