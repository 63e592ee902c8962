"""Write the bundled SYNTHETIC measurement set: root-joint torque against
tension for the three calibrated presets, 1 % Gaussian noise, fixed seed.
No measured data are involved.

    python scripts/make_synthetic_data.py
"""
from pathlib import Path

from jamstring.config import load_preset
from jamstring.experiments import synthetic_measurements, write_measurements_csv

OUT = Path(__file__).resolve().parents[1] / "src" / "jamstring" / "data" / "synthetic_measurements.csv"


def main():
    mechs = [load_preset(f).mechanism for f in ("bead", "comb", "radial")]
    data = synthetic_measurements(mechs, [10.0 + 5.0 * i for i in range(11)], noise_fraction=0.01, seed=0)
    with open(OUT, "w", encoding="utf-8", newline="") as fh:
        write_measurements_csv(fh, data)
    print(f"{len(data)} records -> {OUT}")


if __name__ == "__main__":
    main()
