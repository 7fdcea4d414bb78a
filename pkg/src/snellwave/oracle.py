"""
Brute-force traveltime minimisation, independent of the Snell machinery.

Within each medium the fastest path is a straight leg, so any competitive
path is described by where it touches x = 0. The oracle searches:

* ``Straight``: the direct leg (both ends in the same closed medium);
* ``OneBreak``: one touch point ``y`` on a grid;
* ``TwoBreakEtaRun``: arrive at ``y1``, run along x = 0 costed by the right
  medium, leave at ``y2`` (left-medium targets only; for other targets the
  run is dominated by a single break through the triangle inequality).

Each family is convex in its break coordinates, so repeatedly re-gridding a
10x smaller bracket around the incumbent converges to the family minimum.
No refraction or reflection law is used anywhere.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .interface_laws import Scene
from .profiles import Vector2, as_vector, cost_xy
from .trajectories import Region, Trajectory, TrajectoryKind, chain, region_of

BOUNDARY_BAND = 2e-3


class Family(str, enum.Enum):
    STRAIGHT = "Straight"
    ONE_BREAK = "OneBreak"
    TWO_BREAK = "TwoBreakEtaRun"


class Reachability(str, enum.Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"
    BOUNDARY = "boundary"


@dataclass(frozen=True)
class OracleResult:
    time: float
    path: Trajectory
    family: Family
    history: tuple = ()
    by_family: dict = field(default_factory=dict, compare=False)


def _band(q1: Vector2, q2: Vector2):
    d = 2.0 * (abs(q1.x) + abs(q2.x) + abs(q1.y - q2.y))
    return min(q1.y, q2.y) - d, max(q1.y, q2.y) + d


def _last_leg_profile(scene: Scene, target: Region):
    return scene.profile1 if target is Region.Q1 else scene.profile2


def _one_break_cost(scene, q1, q2, target, y):
    last = _last_leg_profile(scene, target)
    return cost_xy(scene.profile1, -q1.x, y - q1.y) + cost_xy(last, q2.x, q2.y - y)


def _two_break_cost(scene, q1, q2, y1, y2):
    return (cost_xy(scene.profile1, -q1.x, y1 - q1.y)
            + cost_xy(scene.profile2, 0.0, y2 - y1)
            + cost_xy(scene.profile1, q2.x, q2.y - y2))


def brute_force_min(scene: Scene, q1, q2, grid_n: int = 512, refine_rounds: int = 4) -> OracleResult:
    """Minimum traveltime from ``q1`` (x < 0) to ``q2`` over the oracle's path families.

    ``history`` records the best time after the initial grid and after every
    refinement round; it never increases. ``by_family`` keeps each searched
    family's own minimum.
    """
    q1, q2 = as_vector(q1), as_vector(q2)
    if grid_n < 64:
        raise ValueError("grid_n must be at least 64")
    if not q1.x < 0:
        raise ValueError("oracle source must lie in the left medium")
    target = region_of(q2)
    if target is Region.ETA:
        q2 = Vector2(0.0, q2.y)
    lo, hi = _band(q1, q2)

    best = {}
    if target is not Region.Q2:
        d = q2 - q1
        best[Family.STRAIGHT] = (float(cost_xy(scene.profile1, d.x, d.y)), ())

    # one break
    y_best, t_best = None, np.inf
    a, b = lo, hi
    hist1 = []
    for _ in range(refine_rounds + 1):
        ys = np.linspace(a, b, grid_n)
        if y_best is not None:
            ys = np.append(ys, y_best)
        cost = _one_break_cost(scene, q1, q2, target, ys)
        i = int(np.argmin(cost))
        if cost[i] < t_best:
            t_best, y_best = float(cost[i]), float(ys[i])
        hist1.append(t_best)
        half = (b - a) / 20.0
        a, b = y_best - half, y_best + half
    best[Family.ONE_BREAK] = (t_best, (y_best,))

    hist2 = []
    if target is Region.Q1:
        pair, t2 = None, np.inf
        a1, b1, a2, b2 = lo, hi, lo, hi
        for _ in range(refine_rounds + 1):
            y1 = np.linspace(a1, b1, grid_n)
            y2 = np.linspace(a2, b2, grid_n)
            if pair is not None:
                y1 = np.sort(np.append(y1, pair[0]))
                y2 = np.sort(np.append(y2, pair[1]))
            Y1, Y2 = np.meshgrid(y1, y2, indexing="ij")
            cost = _two_break_cost(scene, q1, q2, Y1, Y2)
            # argmin returns the first minimum: lexicographically smallest (y1, y2)
            i, j = np.unravel_index(int(np.argmin(cost)), cost.shape)
            if cost[i, j] < t2:
                t2, pair = float(cost[i, j]), (float(y1[i]), float(y2[j]))
            hist2.append(t2)
            h1, h2 = (b1 - a1) / 20.0, (b2 - a2) / 20.0
            a1, b1, a2, b2 = pair[0] - h1, pair[0] + h1, pair[1] - h2, pair[1] + h2
        best[Family.TWO_BREAK] = (t2, pair)

    family = min(best, key=lambda k: (best[k][0], list(Family).index(k)))
    time, ys = best[family]
    path = _build_path(scene, q1, q2, target, family, ys)
    straight = best.get(Family.STRAIGHT, (np.inf,))[0]
    history = tuple(min(straight, h1, h2) for h1, h2 in
                    zip(hist1, hist2 or [np.inf] * len(hist1)))
    return OracleResult(time, path, family, history, {k: v[0] for k, v in best.items()})


def _build_path(scene, q1, q2, target, family, ys) -> Trajectory:
    if family is Family.STRAIGHT:
        return chain(scene, [q1, q2], [Region.Q1], TrajectoryKind.STRAIGHT)
    if family is Family.ONE_BREAK:
        b = Vector2(0.0, ys[0])
        kind = {Region.Q1: TrajectoryKind.REFLECTED, Region.Q2: TrajectoryKind.REFRACTED,
                Region.ETA: TrajectoryKind.CRITICAL_RUN}[target]
        last = Region.ETA if target is Region.ETA else target
        return chain(scene, [q1, b, q2], [Region.Q1, last], kind)
    b1, b2 = Vector2(0.0, ys[0]), Vector2(0.0, ys[1])
    return chain(scene, [q1, b1, b2, q2], [Region.Q1, Region.ETA, Region.Q1], TrajectoryKind.THREE_SEGMENT)


def reachable_check(scene: Scene, q1, t0: float, probe, grid_n: int = 512,
                    refine_rounds: int = 4) -> Reachability:
    """Classify ``probe`` against the front at ``t0`` using oracle arrival times."""
    t = brute_force_min(scene, q1, probe, grid_n, refine_rounds).time
    if t < t0 - BOUNDARY_BAND:
        return Reachability.INSIDE
    if t > t0 + BOUNDARY_BAND:
        return Reachability.OUTSIDE
    return Reachability.BOUNDARY


# -- verification report -----------------------------------------------------

AGREEMENT_TOL = 2e-3
UNDERSHOOT_TOL = 1e-9


@dataclass(frozen=True)
class VerifyCase:
    q1: Vector2
    q2: Vector2
    analytic: float
    oracle: float
    kind: str

    @property
    def diff(self) -> float:
        return self.oracle - self.analytic

    @property
    def passed(self) -> bool:
        # the oracle only ever finds feasible paths, so it may not undercut the true minimum
        return -UNDERSHOOT_TOL <= self.diff <= AGREEMENT_TOL


def random_pairs(cases: int, seed: int = 0, extent: float = 3.0):
    """Source in the left medium; target spread over left, right and interface."""
    rng = np.random.default_rng(seed)
    out = []
    for k in range(cases):
        q1 = Vector2(float(rng.uniform(-extent, -0.1)), float(rng.uniform(-extent, extent)))
        y2 = float(rng.uniform(-extent, extent))
        where = k % 3
        if where == 0:
            q2 = Vector2(float(rng.uniform(-extent, -0.1)), y2)
        elif where == 1:
            q2 = Vector2(float(rng.uniform(0.1, extent)), y2)
        else:
            q2 = Vector2(0.0, y2)
        out.append((q1, q2))
    return out


def verify(scene: Scene, cases: int = 50, seed: int = 0, grid_n: int = 512, refine_rounds: int = 4):
    from .trajectories import global_minimizer

    report = []
    for q1, q2 in random_pairs(cases, seed):
        g = global_minimizer(scene, q1, q2)
        o = brute_force_min(scene, q1, q2, grid_n, refine_rounds)
        report.append(VerifyCase(q1, q2, g.time, o.time, g.kind.value))
    return report


def format_report(report) -> str:
    lines = [f"{'case':>4}  {'q1':>24}  {'q2':>24}  {'kind':>13}  {'analytic':>20}  {'oracle':>20}  {'diff':>10}  result"]
    for i, c in enumerate(report):
        lines.append(
            f"{i:>4}  {f'({c.q1.x:.4f}, {c.q1.y:.4f})':>24}  {f'({c.q2.x:.4f}, {c.q2.y:.4f})':>24}  "
            f"{c.kind:>13}  {c.analytic:>20.15f}  {c.oracle:>20.15f}  {c.diff:>10.2e}  "
            f"{'PASS' if c.passed else 'FAIL'}"
        )
    failed = sum(not c.passed for c in report)
    lines.append(f"{len(report) - failed}/{len(report)} cases within tolerance")
    return "\n".join(lines) + "\n"
