"""Analytic minimiser against the brute-force oracle over random scenes.

    python scripts/oracle_sweep.py --scenes 10 --cases 30 --seed 0
"""

import argparse
import math
import time

import numpy as np

from snellwave import FocusEllipse, Isotropic, Scene
from snellwave.oracle import verify


def random_scene(rng):
    def profile():
        if rng.random() < 0.25:
            return Isotropic(float(rng.uniform(0.3, 3.0)))
        return FocusEllipse(float(rng.uniform(0.3, 3.0)), float(rng.uniform(0.0, 0.85)),
                            float(rng.uniform(-math.pi, math.pi)))
    return Scene(profile(), profile())


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--scenes", type=int, default=10)
    ap.add_argument("--cases", type=int, default=30)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--grid", type=int, default=256)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    failures = 0
    start = time.perf_counter()
    for k in range(args.scenes):
        scene = random_scene(rng)
        report = verify(scene, args.cases, seed=args.seed + k, grid_n=args.grid)
        diffs = np.array([c.diff for c in report])
        bad = sum(not c.passed for c in report)
        failures += bad
        print(f"scene {k:2d}: oracle - analytic in [{diffs.min():+.1e}, {diffs.max():+.1e}], {bad} outside tolerance")
    print(f"{failures} failures in {args.scenes * args.cases} cases ({time.perf_counter() - start:.1f} s)")
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
