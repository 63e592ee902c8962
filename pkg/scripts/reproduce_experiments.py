"""Replay both bench experiments with the calibrated presets and write CSVs.

    python scripts/reproduce_experiments.py [outdir]

experiment_i.csv   holding torque per joint, 10-joint chain at 50 N
experiment_ii.csv  root-joint holding torque against wire tension
"""
import csv
import sys
from pathlib import Path

from jamstring.config import load_preset
from jamstring.experiments import fit_affine, simulate_experiment_i, simulate_experiment_ii
from jamstring.tension import AttenuationModel, crossover_joint, halving_joint


def main(outdir="results"):
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    cfgs = {f: load_preset(f) for f in ("bead", "comb", "radial")}
    mechs = [c.mechanism for c in cfgs.values()]

    profiles = simulate_experiment_i(mechs, cfgs["comb"].chain(10, 50.0))
    with open(out / "experiment_i.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["mechanism", "joint_index", "tension_N", "torque_Nm"])
        for p in profiles:
            for (i, tq), t in zip(p.entries, p.tensions):
                w.writerow([p.mechanism_id, i, f"{t:.6f}", f"{tq:.6f}"])
    for p in profiles:
        print(f"{p.mechanism_id:7s} joint 1 {p.torque(1):.3f}  joint 4 {p.torque(4):.3f}  joint 10 {p.torque(10):.3f} N*m")

    grid = [5.0 * i for i in range(13)]
    series = simulate_experiment_ii(mechs, grid)
    with open(out / "experiment_ii.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["mechanism", "tension_N", "torque_Nm"])
        for name, pts in series.items():
            for t, tq in pts:
                w.writerow([name, f"{t:.1f}", f"{tq:.6f}"])
    for name, pts in series.items():
        print(f"{name:7s} slope {fit_affine(pts).slope * 1e3:.3f} mN*m/N")

    comb = cfgs["comb"].mechanism
    print(f"comb tension halves by joint {halving_joint(comb.attenuation)}")
    long_chain = cfgs["radial"].chain(40, 50.0)
    print(f"radial >= comb from joint {crossover_joint(cfgs['radial'].mechanism, comb, long_chain)}")
    print(f"bead >= comb from joint {crossover_joint(cfgs['bead'].mechanism, comb, long_chain)}")


if __name__ == "__main__":
    main(*sys.argv[1:])
