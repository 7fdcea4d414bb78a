"""
Wavefronts from a point source in the left medium and the cut locus they create.

Three families of time-minimising rays compete at time ``t0``:

* standard: straight rays that stay left, landing on ``q1 + t0 * indicatrix``;
* refracted: rays that cross x = 0 (including the critical rays that run
  along it);
* reflected: critical rays that run along x = 0 and then peel back left at
  the reflection angle. At a fixed time these land on the segment joining
  the critical runner ``gamma(t0)`` and the critical reflection ``phi(t0)``.

The composite front keeps, for each direction, whichever family arrives
first. Where the standard and reflected fronts cross, two different rays
arrive together: that point traces the cut locus as time grows.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import MissingCriticalAngle, NoConvergence, TooEarly
from .interface_laws import HALF_PI, Scene, critical_angles, reflect
from .profiles import Vector2, as_vector, finsler_cost, speed
from .trajectories import interface_hit, trace_ray

BISECT_CAP = 200
CROSSING_SAMPLES = 1024
MIN_ARC_SAMPLES = 16


class ArcKind(str, enum.Enum):
    STANDARD = "standard"
    REFRACTED = "refracted"
    REFLECTED = "reflected"


@dataclass(frozen=True)
class WavefrontArc:
    """Sampled piece of a wavefront.

    ``params`` holds the natural parameter of each sample: the ray angle for
    standard and refracted arcs (unwrapped, so it may exceed pi), the segment
    coordinate ``s`` in [0, 1] for reflected arcs.
    """

    kind: ArcKind
    points: np.ndarray
    params: np.ndarray
    sign: Optional[int] = None

    @property
    def param_range(self) -> tuple:
        return float(self.params[0]), float(self.params[-1])

    @property
    def first(self) -> np.ndarray:
        return self.points[0]

    @property
    def last(self) -> np.ndarray:
        return self.points[-1]


@dataclass(frozen=True)
class CompositeWavefront:
    time: float
    arcs: tuple
    closed: bool

    def gaps(self) -> list:
        """Distances between consecutive arc ends, including last-to-first."""
        out = []
        for a, b in zip(self.arcs, self.arcs[1:] + self.arcs[:1]):
            out.append(float(np.hypot(*(b.first - a.last))))
        return out

    def points(self) -> np.ndarray:
        return np.vstack([a.points for a in self.arcs])


@dataclass(frozen=True)
class CutLocusSample:
    branch: int
    t: float
    point: Vector2


def _check_source(q1: Vector2):
    if not q1.x < 0:
        raise ValueError("wavefront source must lie in the left medium")


def standard_wavefront(scene: Scene, q1, t0: float, n: int = 256,
                       theta_range: tuple = (-math.pi, math.pi)) -> WavefrontArc:
    """Points reached at ``t0`` by straight rays: the indicatrix scaled by ``t0``."""
    q1 = as_vector(q1)
    if t0 < 0:
        raise ValueError("t0 must be non-negative")
    if n < MIN_ARC_SAMPLES:
        raise ValueError(f"need at least {MIN_ARC_SAMPLES} samples")
    theta = np.linspace(theta_range[0], theta_range[1], n)
    r = t0 * speed(scene.profile1, theta)
    pts = np.column_stack([q1.x + r * np.cos(theta), q1.y + r * np.sin(theta)])
    return WavefrontArc(ArcKind.STANDARD, pts, theta)


def _ternary_min(f, lo, hi, tol):
    while hi - lo > tol:
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if f(m1) < f(m2):
            hi = m2
        else:
            lo = m1
    return 0.5 * (lo + hi)


def time_to_interface(scene: Scene, q1) -> float:
    """Earliest arrival of the standard front at x = 0 (the F1-distance to it)."""
    q1 = as_vector(q1)
    _check_source(q1)
    f = lambda y: finsler_cost(scene.profile1, (-q1.x, y - q1.y))
    # convex in y; grow the bracket until both ends climb
    w = max(1.0, -q1.x)
    lo, hi = q1.y - w, q1.y + w
    while f(lo) <= f(lo + 0.5 * w) or f(hi) <= f(hi - 0.5 * w):
        w *= 2.0
        lo, hi = q1.y - w, q1.y + w
        if w > 1e12:
            raise NoConvergence("could not bracket the distance to the interface")
    y = _ternary_min(f, lo, hi, 1e-10)
    return f(y)


def critical_times(scene: Scene, q1) -> dict:
    """Times at which the critical rays reach x = 0, keyed by sign (+1/-1)."""
    q1 = as_vector(q1)
    _check_source(q1)
    crit = critical_angles(scene)
    out = {}
    for sign in (1, -1):
        tc = crit.get(sign)
        if tc is not None:
            out[sign] = -q1.x / (speed(scene.profile1, tc) * math.cos(tc))
    return out


def _bisect_sign(f, lo, hi):
    """Root of ``f`` between ``lo`` and ``hi`` given opposite signs at the ends."""
    f_lo = f(lo)
    for _ in range(BISECT_CAP):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            return mid
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (f_lo > 0):
            lo, f_lo = mid, fm
        else:
            hi = mid
    raise NoConvergence("bisection did not converge")


def interface_crossings(scene: Scene, q1, t0: float) -> tuple:
    """Angles ``(theta_eta_minus, theta_eta_plus)`` where the standard front meets x = 0.

    The minus angle is the crossing with the smaller y.
    """
    q1 = as_vector(q1)
    _check_source(q1)
    tau_eta = time_to_interface(scene, q1)
    if not t0 > tau_eta:
        raise TooEarly(f"t0={t0!r} does not exceed the interface time {tau_eta!r}")
    g = lambda th: q1.x + t0 * speed(scene.profile1, th) * math.cos(th)

    grid = list(np.linspace(-math.pi, math.pi, CROSSING_SAMPLES + 1)[1:])
    # the farthest-reaching direction keeps a barely-touching front detectable
    grid.append(_ternary_min(lambda th: -g(th), -HALF_PI, HALF_PI, 1e-12))
    grid.sort()
    vals = [g(th) for th in grid]
    roots = []
    for i in range(len(grid)):
        j = (i + 1) % len(grid)
        if (vals[i] > 0) != (vals[j] > 0):
            a, b = grid[i], grid[j]
            if j == 0:
                b += 2.0 * math.pi
            roots.append(_bisect_sign(g, a, b))
    if len(roots) != 2:
        raise NoConvergence(f"expected two interface crossings, found {len(roots)}")
    ys = [q1.y + t0 * speed(scene.profile1, th) * math.sin(th) for th in roots]
    lo, hi = (roots[0], roots[1]) if ys[0] <= ys[1] else (roots[1], roots[0])
    return lo, hi


def _reflected_ends(scene: Scene, q1: Vector2, t0: float, sign: int):
    crit = critical_angles(scene)
    tc = crit.get(sign)
    if tc is None:
        raise MissingCriticalAngle(f"no critical angle for sign {sign:+d}")
    tau = critical_times(scene, q1)[sign]
    if not t0 > tau:
        raise TooEarly(f"reflected front {sign:+d} appears only after t={tau!r}")
    b1 = interface_hit(q1, tc)
    dt = t0 - tau
    runner = Vector2(0.0, b1.y + sign * dt * speed(scene.profile2, sign * HALF_PI))
    theta3 = reflect(scene, tc)
    bounce = b1 + Vector2.polar(dt * speed(scene.profile1, theta3), theta3)
    return runner, bounce


def reflected_wavefront(scene: Scene, q1, t0: float, sign: int, n: int = 2,
                        s_range: tuple = (0.0, 1.0)) -> WavefrontArc:
    """Segment from the critical runner (s = 0) to the critical reflection (s = 1)."""
    q1 = as_vector(q1)
    _check_source(q1)
    runner, bounce = _reflected_ends(scene, q1, t0, sign)
    s = np.linspace(s_range[0], s_range[1], max(n, 2))
    pts = np.column_stack([runner.x + s * (bounce.x - runner.x), runner.y + s * (bounce.y - runner.y)])
    return WavefrontArc(ArcKind.REFLECTED, pts, s, sign)


def wavefront_intersection(scene: Scene, q1, t0: float, sign: int) -> tuple:
    """Crossing of the standard and reflected fronts: ``(theta0, s0, point)``."""
    q1 = as_vector(q1)
    _check_source(q1)
    runner, bounce = _reflected_ends(scene, q1, t0, sign)
    at = lambda s: runner + (bounce - runner) * s
    f = lambda s: finsler_cost(scene.profile1, at(s) - q1) - t0
    if not (f(0.0) > 0.0 > f(1.0)):
        raise NoConvergence("reflected front does not straddle the standard front")
    s0 = _bisect_sign(f, 0.0, 1.0)
    p = at(s0)
    return (p - q1).angle(), s0, p


def refracted_wavefront(scene: Scene, q1, t0: float, n: int = 256) -> WavefrontArc:
    """Points reached at ``t0`` by rays that crossed (or run along) x = 0.

    Rays are swept in increasing incidence angle between the two interface
    crossings of the standard front, clipped to the critical angles. Past a
    critical time the end ray is the critical one, whose endpoint runs along
    the interface.
    """
    q1 = as_vector(q1)
    if n < MIN_ARC_SAMPLES:
        raise ValueError(f"need at least {MIN_ARC_SAMPLES} samples")
    th_lo, th_hi = interface_crossings(scene, q1, t0)
    crit = critical_angles(scene)
    if crit.minus is not None:
        th_lo = max(th_lo, crit.minus)
    if crit.plus is not None:
        th_hi = min(th_hi, crit.plus)
    theta = np.linspace(th_lo, th_hi, n)
    pts = np.array([tuple(trace_ray(scene, q1, th, t0)[0]) for th in theta])
    return WavefrontArc(ArcKind.REFRACTED, pts, theta)


def composite_wavefront(scene: Scene, q1, t0: float, n: int = 256) -> CompositeWavefront:
    """Actual front at ``t0``: arcs ordered counterclockwise around ``q1``.

    Before the front touches x = 0 it is the whole standard front. Afterwards
    it is the refracted arc, then (past the + critical time) the clipped + reflected
    arc, the standard arc in the left medium, and (past the - critical time)
    the clipped - reflected arc traversed back to the interface.
    """
    q1 = as_vector(q1)
    _check_source(q1)
    if n < 64:
        raise ValueError("composite wavefront needs at least 64 samples per arc")
    tau_eta = time_to_interface(scene, q1)
    if t0 <= tau_eta:
        arc = standard_wavefront(scene, q1, t0, n)
        return CompositeWavefront(t0, (arc,), True)

    taus = critical_times(scene, q1)
    th_eta_lo, th_eta_hi = interface_crossings(scene, q1, t0)
    arcs = [refracted_wavefront(scene, q1, t0, n)]

    start, end = th_eta_hi, th_eta_lo
    if 1 in taus and t0 > taus[1]:
        th0, s0, _ = wavefront_intersection(scene, q1, t0, 1)
        arcs.append(reflected_wavefront(scene, q1, t0, 1, n, (0.0, s0)))
        start = th0
    lower = None
    if -1 in taus and t0 > taus[-1]:
        th0, s0, _ = wavefront_intersection(scene, q1, t0, -1)
        lower = reflected_wavefront(scene, q1, t0, -1, n, (s0, 0.0))
        end = th0
    while end <= start:
        end += 2.0 * math.pi
    arcs.append(standard_wavefront(scene, q1, t0, n, (start, end)))
    if lower is not None:
        arcs.append(lower)

    front = CompositeWavefront(t0, tuple(arcs), True)
    return CompositeWavefront(t0, front.arcs, max(front.gaps()) <= 1e-6)


def cut_locus(scene: Scene, q1, t_max: float, n: int = 64) -> list:
    """Samples of the cut-locus branches at ``n`` evenly spaced times in (tau, t_max]."""
    q1 = as_vector(q1)
    _check_source(q1)
    if n < 2:
        raise ValueError("need at least two samples per branch")
    taus = critical_times(scene, q1)
    if not taus:
        raise MissingCriticalAngle("the scene has no critical angle, so no cut locus")
    out = []
    for sign in (1, -1):
        tau = taus.get(sign)
        if tau is None or t_max <= tau:
            continue
        for k in range(1, n + 1):
            t = tau + (t_max - tau) * k / n
            _, _, p = wavefront_intersection(scene, q1, t, sign)
            out.append(CutLocusSample(sign, t, p))
    if not out:
        raise TooEarly(f"t_max={t_max!r} precedes every critical time")
    return out


def sandwich(scene: Scene, q1, t0: float, sign: int) -> tuple:
    """``(F1(phi(t0) - q1), F1(gamma(t0) - q1))``: the critical reflection lies
    inside the standard front and the runner outside."""
    q1 = as_vector(q1)
    runner, bounce = _reflected_ends(scene, q1, t0, sign)
    return finsler_cost(scene.profile1, bounce - q1), finsler_cost(scene.profile1, runner - q1)
