"""
Refraction and reflection at the straight interface x = 0.

The left half-plane (x < 0) carries ``profile1`` and the right half-plane
(x > 0) carries ``profile2``. Both laws reduce to matching the raypath
parameter across the interface: refraction solves ``P1(theta1) = P2(theta2)``
with ``theta2`` pointing right, reflection solves ``P1(theta1) = P1(theta3)``
with ``theta3`` pointing back left. ``P`` is strictly increasing on
[-pi/2, pi/2] and strictly decreasing on [pi/2, 3pi/2], so every solve is a
bisection.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InvalidIncidence, InvalidScene, TargetOutOfRange, NoConvergence
from .profiles import (
    SpeedProfile,
    Vector2,
    as_vector,
    convexity_margin,
    raypath_parameter,
    speed,
)

HALF_PI = 0.5 * math.pi
BISECTION_CAP = 200
ANGLE_TOL = 1e-12
CRITICAL_TOL = 1e-12


@dataclass(frozen=True)
class Scene:
    profile1: SpeedProfile
    profile2: SpeedProfile

    def __post_init__(self):
        for name in ("profile1", "profile2"):
            margin = convexity_margin(getattr(self, name))
            if not margin > 0.0:
                raise InvalidScene(f"{name} indicatrix is not strongly convex (margin {margin:.3g})")

    def mirrored(self) -> "Scene":
        """Scene seen through x -> -x: the media swap sides."""
        return Scene(self.profile2.mirrored(), self.profile1.mirrored())


@dataclass(frozen=True)
class Refracted:
    theta2: float


@dataclass(frozen=True)
class Critical:
    sign: int

    @property
    def theta2(self) -> float:
        return self.sign * HALF_PI


@dataclass(frozen=True)
class TotalReflection:
    theta3: float


@dataclass(frozen=True)
class CriticalAngles:
    plus: Optional[float]
    minus: Optional[float]

    def get(self, sign: int) -> Optional[float]:
        return self.plus if sign > 0 else self.minus

    def window(self) -> tuple[float, float]:
        """Open interval of sub-critical incidence angles."""
        lo = -HALF_PI if self.minus is None else self.minus
        hi = HALF_PI if self.plus is None else self.plus
        return lo, hi


def wrap_back(theta: float) -> float:
    """Map an angle of (pi/2, 3pi/2) into (-pi, -pi/2) U (pi/2, pi]."""
    return theta - 2.0 * math.pi if theta > math.pi else theta


def _bisect_increasing(f, lo, hi, target):
    """Bisection on an increasing ``f`` down to floating-point resolution."""
    for _ in range(BISECTION_CAP):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if f(mid) < target:
            lo = mid
        else:
            hi = mid
    else:
        if hi - lo > ANGLE_TOL:
            raise NoConvergence(f"bisection stalled with bracket width {hi - lo:.3g}")
    f_lo, f_hi = f(lo), f(hi)
    return lo if abs(f_lo - target) <= abs(f_hi - target) else hi


def invert_raypath(profile: SpeedProfile, target: float, branch: str = "front") -> float:
    """Angle on the requested branch whose raypath parameter equals ``target``.

    ``front`` searches [-pi/2, pi/2] (rays heading right), ``back`` searches
    [pi/2, 3pi/2] (rays heading left) and returns the angle wrapped to
    (-pi, -pi/2] U [pi/2, pi].
    """
    if branch == "front":
        lo, hi = -HALF_PI, HALF_PI
        f = lambda th: raypath_parameter(profile, th)
    elif branch == "back":
        lo, hi = HALF_PI, 3.0 * HALF_PI
        # P decreases on the back branch; negate to reuse increasing bisection
        f = lambda th: -raypath_parameter(profile, th)
        target = -target
    else:
        raise ValueError(f"unknown branch {branch!r}")
    f_lo, f_hi = f(lo), f(hi)
    slack = 1e-14 * max(1.0, abs(f_lo), abs(f_hi))
    if not (f_lo - slack <= target <= f_hi + slack):
        raise TargetOutOfRange(
            f"raypath value {target if branch == 'front' else -target!r} outside "
            f"the {branch} branch range"
        )
    theta = _bisect_increasing(f, lo, hi, target)
    return wrap_back(theta) if branch == "back" else theta


def invert_raypath_front_array(profile: SpeedProfile, targets) -> np.ndarray:
    """Vectorised front-branch inversion; targets outside the range clip to +-pi/2."""
    targets = np.asarray(targets, dtype=float)
    lo = np.full(targets.shape, -HALF_PI)
    hi = np.full(targets.shape, HALF_PI)
    for _ in range(64):
        mid = 0.5 * (lo + hi)
        below = profile.raypath(mid) < targets
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return 0.5 * (lo + hi)


@functools.lru_cache(maxsize=256)
def critical_angles(scene: Scene) -> CriticalAngles:
    """Incidence angles whose refraction runs along the interface.

    The ``plus`` angle exists iff ``V1(pi/2) < V2(pi/2)`` and the ``minus``
    angle iff ``V1(-pi/2) < V2(-pi/2)``.
    """
    out = {}
    for sign, key in ((1, "plus"), (-1, "minus")):
        edge = sign * HALF_PI
        if speed(scene.profile1, edge) < speed(scene.profile2, edge):
            out[key] = invert_raypath(scene.profile1, raypath_parameter(scene.profile2, edge))
        else:
            out[key] = None
    return CriticalAngles(**out)


def _check_incidence(theta1: float):
    if not (-HALF_PI < theta1 < HALF_PI):
        raise InvalidIncidence(f"incidence angle {theta1!r} must lie in (-pi/2, pi/2)")


def reflect(scene: Scene, theta1: float) -> float:
    """Reflection angle for a ray hitting the interface from the left."""
    _check_incidence(theta1)
    return invert_raypath(scene.profile1, raypath_parameter(scene.profile1, theta1), "back")


def refract(scene: Scene, theta1: float):
    """Outcome of a ray hitting the interface from the left at ``theta1``.

    Returns ``Refracted``, ``Critical`` (refracted ray runs along the interface)
    or ``TotalReflection`` for super-critical incidence.
    """
    _check_incidence(theta1)
    crit = critical_angles(scene)
    for sign in (1, -1):
        tc = crit.get(sign)
        if tc is not None and abs(theta1 - tc) <= CRITICAL_TOL:
            return Critical(sign)
    lo, hi = crit.window()
    if not (lo < theta1 < hi):
        return TotalReflection(reflect(scene, theta1))
    p1 = raypath_parameter(scene.profile1, theta1)
    return Refracted(invert_raypath(scene.profile2, p1, "front"))


def refraction_window(scene: Scene, source) -> tuple[float, float]:
    """Interval of interface heights reachable by refracting rays from ``source``.

    Bounded on a side only when the corresponding critical angle exists; its
    length is the classical window ``2 d n2 / sqrt(n1^2 - n2^2)`` for
    isotropic media with both critical angles.
    """
    q = as_vector(source)
    if not q.x < 0.0:
        raise ValueError("source must lie in the left medium")
    crit = critical_angles(scene)
    d = -q.x
    lo = -math.inf if crit.minus is None else q.y + d * math.tan(crit.minus)
    hi = math.inf if crit.plus is None else q.y + d * math.tan(crit.plus)
    return lo, hi


__all__ = [
    "Scene",
    "Refracted",
    "Critical",
    "TotalReflection",
    "CriticalAngles",
    "invert_raypath",
    "critical_angles",
    "refract",
    "reflect",
    "refraction_window",
    "wrap_back",
    "Vector2",
]
