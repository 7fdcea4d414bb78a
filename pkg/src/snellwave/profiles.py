"""
Direction-dependent speed profiles and the Minkowski norms they induce.

A profile is a speed ``V(theta) > 0`` for every absolute direction ``theta``
(measured from the +x axis). It defines the norm ``F(v) = |v| / V(theta(v))``
whose unit circle (the indicatrix) is the polar plot of ``V``. Straight lines
are geodesics of such a norm, and ``F`` of a displacement is the time it takes
to cover it.

All functions accept scalars or numpy arrays for angles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import InvalidProfile

DEFAULT_CONVEXITY_SAMPLES = 3600


@dataclass(frozen=True)
class Vector2:
    x: float
    y: float

    def __add__(self, other):
        other = as_vector(other)
        return Vector2(self.x + other.x, self.y + other.y)

    def __sub__(self, other):
        other = as_vector(other)
        return Vector2(self.x - other.x, self.y - other.y)

    def __mul__(self, k):
        return Vector2(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __neg__(self):
        return Vector2(-self.x, -self.y)

    def __iter__(self):
        yield self.x
        yield self.y

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def angle(self) -> float:
        return math.atan2(self.y, self.x)

    @classmethod
    def polar(cls, r: float, theta: float) -> "Vector2":
        return cls(r * math.cos(theta), r * math.sin(theta))


def as_vector(v) -> Vector2:
    if isinstance(v, Vector2):
        return v
    x, y = v
    return Vector2(float(x), float(y))


@dataclass(frozen=True)
class Isotropic:
    """Same speed ``c`` in every direction (a circular indicatrix)."""

    c: float

    def __post_init__(self):
        if not (math.isfinite(self.c) and self.c > 0):
            raise InvalidProfile(f"isotropic speed must be positive, got {self.c!r}")

    def derivs(self, theta):
        z = 0.0 * np.asarray(theta, dtype=float)
        return self.c + z, z, z

    def raypath(self, theta):
        return np.sin(theta) / self.c

    def mirrored(self) -> "Isotropic":
        return self


@dataclass(frozen=True)
class FocusEllipse:
    """Ellipse indicatrix with the origin at one focus.

    ``a`` is the semi-major axis, ``eps`` the eccentricity and ``phi`` the
    direction from the centred focus towards the other focus, so the fastest
    direction is ``phi`` with speed ``a (1 + eps)``.
    """

    a: float
    eps: float
    phi: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.a) and self.a > 0):
            raise InvalidProfile(f"semi-major axis must be positive, got {self.a!r}")
        if not (0.0 <= self.eps < 1.0):
            raise InvalidProfile(f"eccentricity must lie in [0, 1), got {self.eps!r}")
        if not math.isfinite(self.phi):
            raise InvalidProfile(f"orientation must be finite, got {self.phi!r}")

    @property
    def semi_latus(self) -> float:
        return self.a * (1.0 - self.eps ** 2)

    def derivs(self, theta):
        u = np.asarray(theta, dtype=float) - self.phi
        e = self.eps
        d = 1.0 - e * np.cos(u)
        s = np.sin(u)
        v = self.semi_latus / d
        dv = -self.semi_latus * e * s / d ** 2
        d2v = -self.semi_latus * e * (np.cos(u) * d - 2.0 * e * s ** 2) / d ** 3
        return v, dv, d2v

    def raypath(self, theta):
        # closed form of sin/V + cos * d(1/V)/dtheta for this family
        return (np.sin(theta) - self.eps * math.sin(self.phi)) / self.semi_latus

    def mirrored(self) -> "FocusEllipse":
        return FocusEllipse(self.a, self.eps, math.pi - self.phi)


SpeedProfile = Union[Isotropic, FocusEllipse]


def _out(x):
    """Collapse 0-d arrays to Python floats."""
    return float(x) if np.ndim(x) == 0 else x


def speed(profile: SpeedProfile, theta):
    return _out(profile.derivs(theta)[0])


def speed_derivs(profile: SpeedProfile, theta):
    """Return ``(V, dV/dtheta, d2V/dtheta2)`` at ``theta``."""
    return tuple(_out(x) for x in profile.derivs(theta))


def cost_xy(profile: SpeedProfile, vx, vy):
    """Vectorised ``finsler_cost`` over component arrays."""
    vx = np.asarray(vx, dtype=float)
    vy = np.asarray(vy, dtype=float)
    r = np.hypot(vx, vy)
    v = profile.derivs(np.arctan2(vy, vx))[0]
    return _out(np.where(r > 0.0, r / v, 0.0))


def finsler_cost(profile: SpeedProfile, v) -> float:
    """Time needed to cover the displacement ``v`` at the profile's speed."""
    v = as_vector(v)
    if v.x == 0.0 and v.y == 0.0:
        return 0.0
    return v.norm() / speed(profile, v.angle())


def raypath_parameter(profile: SpeedProfile, theta):
    """Conserved quantity dF/dvy along a straight ray of direction ``theta``.

    Equals ``sin(theta)/V + cos(theta) * d(1/V)/dtheta``; at ``theta = +-pi/2``
    it reduces to ``+-1/V(+-pi/2)``.
    """
    return _out(profile.raypath(theta))


def raypath_derivative(profile: SpeedProfile, theta):
    v, dv, d2v = profile.derivs(theta)
    return _out(np.cos(theta) / v ** 3 * (v ** 2 + 2.0 * dv ** 2 - v * d2v))


def convexity_bracket(profile: SpeedProfile, theta):
    """``V^2 + 2 V'^2 - V V''``: positive iff the indicatrix curves inward at theta."""
    v, dv, d2v = profile.derivs(theta)
    return _out(v ** 2 + 2.0 * dv ** 2 - v * d2v)


def convexity_margin(profile: SpeedProfile, n_samples: int = DEFAULT_CONVEXITY_SAMPLES) -> float:
    """Minimum of the convexity bracket over a uniform grid on (-pi, pi]."""
    if n_samples < 8:
        raise ValueError("n_samples must be at least 8")
    theta = np.linspace(-math.pi, math.pi, n_samples, endpoint=False) + 2.0 * math.pi / n_samples
    return float(np.min(convexity_bracket(profile, theta)))
