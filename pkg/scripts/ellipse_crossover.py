"""Straight versus three-segment traveltime between mirror-image points.

Sources sit at (-x0, -y0) and targets at (-x0, y0) in the two-ellipse scene.
Prints the analytic candidates, the oracle minimum and the winner for a sweep
of y0, then locates the crossover by bisection.

    python scripts/ellipse_crossover.py --x0 1 --ymax 4 --steps 16
"""

import argparse
import math

import numpy as np

from snellwave import TrajectoryKind, brute_force_min, global_minimizer, two_ellipse_scene
from snellwave.trajectories import straight_between, three_segment_between


def crossover(scene, x0, lo, hi, tol=1e-12):
    def three_wins(y0):
        return global_minimizer(scene, (-x0, -y0), (-x0, y0)).kind is TrajectoryKind.THREE_SEGMENT

    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        lo, hi = (lo, mid) if three_wins(mid) else (mid, hi)
    return 0.5 * (lo + hi)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--x0", type=float, default=1.0)
    ap.add_argument("--ymax", type=float, default=4.0)
    ap.add_argument("--steps", type=int, default=16)
    args = ap.parse_args()

    scene = two_ellipse_scene()
    x0 = args.x0
    print(f"{'y0':>8} {'straight':>12} {'three-seg':>12} {'oracle':>12}  winner")
    for y0 in np.linspace(args.ymax / args.steps, args.ymax, args.steps):
        q1, q2 = (-x0, -y0), (-x0, y0)
        t_line = straight_between(scene, q1, q2).time
        three = three_segment_between(scene, q1, q2, 1)
        t_three = math.nan if three is None else three.time
        oracle = brute_force_min(scene, q1, q2, grid_n=256).time
        winner = global_minimizer(scene, q1, q2).kind.value
        print(f"{y0:8.4f} {t_line:12.6f} {t_three:12.6f} {oracle:12.6f}  {winner}")

    y_cross = crossover(scene, x0, x0 / math.sqrt(3), 10 * x0 + 10)
    print(f"\ncrossover y0 = {y_cross:.12f}   (sqrt(3) * x0 = {math.sqrt(3) * x0:.12f})")


if __name__ == "__main__":
    main()
