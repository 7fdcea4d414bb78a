"""
Piecewise-straight trajectories between points and their traveltimes.

Every leg of a time-minimising path in this setting is straight, so a
trajectory is a chain of segments tagged with the medium they cross. Legs
lying on the interface are costed with ``profile2``: running along x = 0 only
pays off at the right medium's speed.

Global minimisers come from three families: refracted paths (target on the
right), the straight line or a three-segment path that runs along the
interface at a critical angle (target on the left), and the direct line or a
critical run (target on the interface).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import MalformedTrajectory, MissingCriticalAngle, NoConvergence, RegionMismatch
from .interface_laws import (
    HALF_PI,
    Critical,
    Refracted,
    Scene,
    TotalReflection,
    critical_angles,
    invert_raypath_front_array,
    refract,
    reflect,
)
from .profiles import Vector2, as_vector, finsler_cost, raypath_parameter, speed

ETA_TOL = 1e-12
CONTIGUITY_TOL = 1e-9
TIE_TOL = 1e-9
DEGENERATE_RUN_TOL = 1e-12
SCAN_SAMPLES = 512
BISECT_ITERS = 120


class Region(str, enum.Enum):
    Q1 = "Q1"
    Q2 = "Q2"
    ETA = "Eta"


class TrajectoryKind(str, enum.Enum):
    STRAIGHT = "straight"
    REFRACTED = "refracted"
    CRITICAL_RUN = "critical-run"
    REFLECTED = "reflected"
    THREE_SEGMENT = "three-segment"


def region_of(p) -> Region:
    p = as_vector(p)
    if abs(p.x) <= ETA_TOL:
        return Region.ETA
    return Region.Q1 if p.x < 0 else Region.Q2


def profile_of(scene: Scene, region: Region):
    return scene.profile1 if region is Region.Q1 else scene.profile2


@dataclass(frozen=True)
class Segment:
    start: Vector2
    end: Vector2
    region: Region
    theta: float
    t_start: float
    t_end: float

    @property
    def duration(self) -> float:
        return self.t_end - self.t_start

    def at(self, t: float) -> Vector2:
        """Position at absolute time ``t`` (uniform motion along the leg)."""
        if self.t_end <= self.t_start:
            return self.start
        w = (t - self.t_start) / (self.t_end - self.t_start)
        return self.start + (self.end - self.start) * w


@dataclass(frozen=True)
class Trajectory:
    segments: tuple
    kind: TrajectoryKind

    @property
    def start(self) -> Vector2:
        return self.segments[0].start

    @property
    def end(self) -> Vector2:
        return self.segments[-1].end

    @property
    def time(self) -> float:
        return self.segments[-1].t_end - self.segments[0].t_start if self.segments else 0.0

    @property
    def break_points(self) -> list:
        return [s.end for s in self.segments[:-1]]

    def position(self, t: float) -> Vector2:
        for seg in self.segments:
            if t <= seg.t_end:
                return seg.at(t)
        return self.end


def chain(scene: Scene, points: Sequence, regions: Sequence[Region], kind: TrajectoryKind,
          thetas: Optional[Sequence[float]] = None, t0: float = 0.0) -> Trajectory:
    """Build a time-tagged trajectory through ``points``.

    ``thetas`` overrides the per-leg direction (useful for zero-length legs
    whose direction is still meaningful, such as a degenerate interface run).
    """
    pts = [as_vector(p) for p in points]
    segs = []
    t = t0
    for i, region in enumerate(regions):
        a, b = pts[i], pts[i + 1]
        d = b - a
        theta = thetas[i] if thetas is not None else d.angle()
        dt = finsler_cost(profile_of(scene, region), d)
        segs.append(Segment(a, b, region, theta, t, t + dt))
        t += dt
    return Trajectory(tuple(segs), kind)


def traveltime(scene: Scene, traj: Trajectory) -> float:
    """Sum of per-leg Minkowski costs; validates contiguity of the chain."""
    total = 0.0
    prev = None
    for seg in traj.segments:
        if prev is not None:
            gap = (seg.start - prev.end).norm()
            if gap > CONTIGUITY_TOL or abs(seg.t_start - prev.t_end) > CONTIGUITY_TOL:
                raise MalformedTrajectory(f"segments are not contiguous (gap {gap:.3g})")
        total += finsler_cost(profile_of(scene, seg.region), seg.end - seg.start)
        prev = seg
    return total


# -- rays ------------------------------------------------------------------

def trace_ray(scene: Scene, source, theta1: float, t: float):
    """Follow the ray leaving ``source`` (left medium) in direction ``theta1``.

    Returns ``(position at time t, trajectory up to time t)``.
    """
    q = as_vector(source)
    if not q.x < 0:
        raise ValueError("ray source must lie in the left medium")
    if t < 0:
        raise ValueError("time must be non-negative")
    v1 = speed(scene.profile1, theta1)
    cos1 = math.cos(theta1)
    hit = -q.x / (v1 * cos1) if cos1 > 0 else math.inf
    if t <= hit:
        p = q + Vector2.polar(v1 * t, theta1)
        seg = Segment(q, p, Region.Q1, theta1, 0.0, t)
        return p, Trajectory((seg,), TrajectoryKind.STRAIGHT)

    b = Vector2(0.0, q.y + v1 * hit * math.sin(theta1))
    first = Segment(q, b, Region.Q1, theta1, 0.0, hit)
    outcome = refract(scene, theta1)
    if isinstance(outcome, Refracted):
        theta, region, prof, kind = outcome.theta2, Region.Q2, scene.profile2, TrajectoryKind.REFRACTED
    elif isinstance(outcome, Critical):
        theta, region, prof, kind = outcome.theta2, Region.ETA, scene.profile2, TrajectoryKind.CRITICAL_RUN
    else:
        theta, region, prof, kind = outcome.theta3, Region.Q1, scene.profile1, TrajectoryKind.REFLECTED
    p = b + Vector2.polar(speed(prof, theta) * (t - hit), theta)
    if region is Region.ETA:
        p = Vector2(0.0, p.y)
    second = Segment(b, p, region, theta, hit, t)
    return p, Trajectory((first, second), kind)


def interface_hit(source, theta1: float) -> Vector2:
    """Point where the ray from ``source`` at ``theta1`` meets x = 0."""
    q = as_vector(source)
    return Vector2(0.0, q.y - q.x * math.tan(theta1))


# -- point-to-point solvers ------------------------------------------------

def _scan_bisect(residual, lo: float, hi: float, what: str, residual_array=None) -> float:
    """Root of ``residual`` on (lo, hi): uniform scan for a sign change, then bisection.

    ``residual_array`` may evaluate the scan in one vectorised call.
    """
    span = hi - lo
    # a few points hugging the open ends, where the residual blows up
    edges = [lo + span * 10.0 ** -k for k in (12, 9, 6)]
    grid = sorted(set(edges + list(np.linspace(lo, hi, SCAN_SAMPLES + 2)[1:-1])
                      + [hi - e + lo for e in edges]))
    if residual_array is not None:
        scan = [float(r) for r in residual_array(np.array(grid))]
    else:
        scan = [residual(th) for th in grid]
    prev_t, prev_r = None, None
    for th, r in zip(grid, scan):
        if not math.isfinite(r):
            continue
        if r == 0.0:
            return th
        if prev_r is not None and (r > 0) != (prev_r > 0):
            a, b, ra = prev_t, th, prev_r
            for _ in range(BISECT_ITERS):
                m = 0.5 * (a + b)
                if m <= a or m >= b:
                    break
                rm = residual(m)
                if rm == 0.0:
                    return m
                if (rm > 0) == (ra > 0):
                    a, ra = m, rm
                else:
                    b = m
            return 0.5 * (a + b)
        prev_t, prev_r = th, r
    raise NoConvergence(f"{what}: no sign change of the miss residual found")


def _require_left(*points):
    for p in points:
        if not p.x < 0:
            raise RegionMismatch(f"point {tuple(p)} must lie in the left medium (x < 0)")


def straight_between(scene: Scene, q1, q2) -> Trajectory:
    """Single straight leg inside one medium (the interface line counts as its closure)."""
    q1, q2 = as_vector(q1), as_vector(q2)
    r1, r2 = region_of(q1), region_of(q2)
    if r1 is Region.ETA and r2 is Region.ETA:
        region = Region.ETA
    elif r1 is Region.ETA or r2 is Region.ETA or r1 is r2:
        region = r2 if r1 is Region.ETA else r1
    else:
        raise RegionMismatch("straight_between needs both points in the same medium")
    return chain(scene, [q1, q2], [region], TrajectoryKind.STRAIGHT)


def refracted_between(scene: Scene, q1, q2) -> Trajectory:
    """The unique two-leg path from ``q1`` (x < 0) to ``q2`` (x > 0) obeying Snell's law."""
    q1, q2 = as_vector(q1), as_vector(q2)
    _require_left(q1)
    if not q2.x > 0:
        raise RegionMismatch("refracted_between needs the target in the right medium")
    crit = critical_angles(scene)
    lo, hi = crit.window()

    def residual(th):
        out = refract(scene, th)
        if not isinstance(out, Refracted):
            return math.nan
        b = interface_hit(q1, th)
        return q2.y - (b.y + q2.x * math.tan(out.theta2))

    def residual_array(th):
        p1 = scene.profile1.raypath(th)
        theta2 = invert_raypath_front_array(scene.profile2, p1)
        b_y = q1.y - q1.x * np.tan(th)
        return q2.y - (b_y + q2.x * np.tan(theta2))

    theta1 = _scan_bisect(residual, lo, hi, "refracted_between", residual_array)
    b = interface_hit(q1, theta1)
    return chain(scene, [q1, b, q2], [Region.Q1, Region.Q2], TrajectoryKind.REFRACTED)


def reflected_between(scene: Scene, q1, q2) -> Trajectory:
    """The unique two-leg path between two left-medium points touching x = 0 once."""
    q1, q2 = as_vector(q1), as_vector(q2)
    _require_left(q1, q2)
    if q1 == q2:
        raise ValueError("reflected_between needs distinct endpoints")

    def residual(th):
        theta3 = reflect(scene, th)
        b = interface_hit(q1, th)
        return q2.y - (b.y + q2.x * math.tan(theta3))

    def residual_array(th):
        p1 = scene.profile1.raypath(th)
        # P(pi - psi) is the raypath parameter of the x-mirrored profile at psi
        theta3 = math.pi - invert_raypath_front_array(scene.profile1.mirrored(), p1)
        b_y = q1.y - q1.x * np.tan(th)
        return q2.y - (b_y + q2.x * np.tan(theta3))

    theta1 = _scan_bisect(residual, -HALF_PI, HALF_PI, "reflected_between", residual_array)
    b = interface_hit(q1, theta1)
    return chain(scene, [q1, b, q2], [Region.Q1, Region.Q1], TrajectoryKind.REFLECTED)


def three_segment_between(scene: Scene, q1, q2, sign: int) -> Optional[Trajectory]:
    """Critical-angle leg, run along x = 0, reflected leg to ``q2``.

    Returns ``None`` when the run would have to go against ``sign``. A run of
    zero length degenerates to the critical reflection (kind ``REFLECTED``).
    """
    q1, q2 = as_vector(q1), as_vector(q2)
    _require_left(q1, q2)
    tc = critical_angles(scene).get(sign)
    if tc is None:
        raise MissingCriticalAngle(f"no critical angle for sign {sign:+d}")
    theta3 = reflect(scene, tc)
    b1 = interface_hit(q1, tc)
    b2 = Vector2(0.0, q2.y - q2.x * math.tan(theta3))
    run = (b2.y - b1.y) * sign
    if run < -DEGENERATE_RUN_TOL:
        return None
    if run <= DEGENERATE_RUN_TOL:
        return chain(scene, [q1, b1, q2], [Region.Q1, Region.Q1], TrajectoryKind.REFLECTED,
                     thetas=[tc, theta3])
    return chain(scene, [q1, b1, b2, q2], [Region.Q1, Region.ETA, Region.Q1],
                 TrajectoryKind.THREE_SEGMENT, thetas=[tc, sign * HALF_PI, theta3])


def critical_run_to(scene: Scene, q1, target, sign: int) -> Optional[Trajectory]:
    """Critical-angle leg followed by a run along x = 0 ending at ``target`` on it."""
    q1 = as_vector(q1)
    target = Vector2(0.0, as_vector(target).y)
    tc = critical_angles(scene).get(sign)
    if tc is None:
        raise MissingCriticalAngle(f"no critical angle for sign {sign:+d}")
    b1 = interface_hit(q1, tc)
    if (target.y - b1.y) * sign < 0:
        return None
    return chain(scene, [q1, b1, target], [Region.Q1, Region.ETA], TrajectoryKind.CRITICAL_RUN,
                 thetas=[tc, sign * HALF_PI])


# -- global minimiser ------------------------------------------------------

@dataclass(frozen=True)
class MinimizerResult:
    """Globally time-minimising trajectory and how it was classified.

    ``on_cut_locus`` is set when a second, geometrically different trajectory
    reaches the target in the same time (within ``TIE_TOL``); that competitor
    is kept in ``competitor``. ``sign`` identifies the interface branch for
    three-segment and critical-run winners.
    """

    trajectory: Trajectory
    time: float
    kind: TrajectoryKind
    sign: Optional[int] = None
    on_cut_locus: bool = False
    competitor: Optional[Trajectory] = None
    candidates: dict = field(default_factory=dict, compare=False, repr=False)


def _mirror_traj(traj: Trajectory) -> Trajectory:
    flip = {Region.Q1: Region.Q2, Region.Q2: Region.Q1, Region.ETA: Region.ETA}
    segs = []
    for s in traj.segments:
        th = math.pi - s.theta
        th = th - 2 * math.pi if th > math.pi else th
        segs.append(Segment(Vector2(-s.start.x, s.start.y), Vector2(-s.end.x, s.end.y),
                            flip[s.region], th, s.t_start, s.t_end))
    return Trajectory(tuple(segs), traj.kind)


def global_minimizer(scene: Scene, q1, q2) -> MinimizerResult:
    """Fastest path from ``q1`` to ``q2`` among all piecewise-smooth curves."""
    q1, q2 = as_vector(q1), as_vector(q2)
    if region_of(q1) is Region.ETA:
        raise RegionMismatch("sources on the interface are not supported")
    if q1.x > 0:
        res = global_minimizer(scene.mirrored(), Vector2(-q1.x, q1.y), Vector2(-q2.x, q2.y))
        return MinimizerResult(
            _mirror_traj(res.trajectory), res.time, res.kind, res.sign, res.on_cut_locus,
            None if res.competitor is None else _mirror_traj(res.competitor),
        )

    target = region_of(q2)
    crit = critical_angles(scene)
    if target is Region.Q2:
        traj = refracted_between(scene, q1, q2)
        return MinimizerResult(traj, traj.time, traj.kind)

    if target is Region.ETA:
        q2 = Vector2(0.0, q2.y)
        cands = {("straight", None): straight_between(scene, q1, q2)}
        for sign in (1, -1):
            if crit.get(sign) is not None:
                run = critical_run_to(scene, q1, q2, sign)
                if run is not None:
                    cands[("critical-run", sign)] = run
        (_, sign), best = min(cands.items(), key=lambda kv: kv[1].time)
        return MinimizerResult(best, best.time, best.kind, sign if best.kind is TrajectoryKind.CRITICAL_RUN else None,
                               candidates=cands)

    straight = straight_between(scene, q1, q2)
    cands = {("straight", None): straight}
    for sign in (1, -1):
        if crit.get(sign) is not None:
            three = three_segment_between(scene, q1, q2, sign)
            if three is not None:
                cands[("three-segment", sign)] = three
    best_key = ("straight", None)
    for key, traj in cands.items():
        if traj.time < cands[best_key].time - TIE_TOL:
            best_key = key
    best = cands[best_key]
    rivals = [t for k, t in cands.items()
              if k != best_key and t.kind is TrajectoryKind.THREE_SEGMENT and abs(t.time - best.time) <= TIE_TOL]
    if best_key == ("straight", None) and rivals:
        return MinimizerResult(best, best.time, best.kind, None, True, rivals[0], cands)
    return MinimizerResult(best, best.time, best.kind, best_key[1], False, None, cands)


def snell_residual(scene: Scene, traj: Trajectory) -> float:
    """Largest raypath mismatch over the breaks of a refracted or reflected path."""
    worst = 0.0
    for a, b in zip(traj.segments, traj.segments[1:]):
        pa = raypath_parameter(profile_of(scene, a.region), a.theta)
        pb = raypath_parameter(profile_of(scene, b.region), b.theta)
        worst = max(worst, abs(pa - pb))
    return worst
