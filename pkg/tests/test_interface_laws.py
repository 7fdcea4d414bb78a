import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from snellwave import (
    Critical,
    FocusEllipse,
    InvalidIncidence,
    InvalidScene,
    Isotropic,
    Refracted,
    Scene,
    TargetOutOfRange,
    TotalReflection,
    critical_angles,
    invert_raypath,
    reflect,
    refract,
    refraction_window,
)
from snellwave.profiles import raypath_parameter, speed

from conftest import scenes

HALF_PI = math.pi / 2
incidence = st.floats(-HALF_PI + 1e-6, HALF_PI - 1e-6)


def test_classic_critical_angles(classic):
    crit = critical_angles(classic)
    assert crit.plus == pytest.approx(math.pi / 6, abs=1e-12)
    assert crit.minus == pytest.approx(-math.pi / 6, abs=1e-12)


def test_no_critical_angle_into_a_slower_medium():
    crit = critical_angles(Scene(Isotropic(2.0), Isotropic(1.0)))
    assert crit.plus is None and crit.minus is None


def test_ellipse_scene_refraction_and_reflection(ellipse):
    crit = critical_angles(ellipse)
    assert crit.plus == pytest.approx(math.pi / 6, abs=1e-12)
    assert crit.minus is None
    assert reflect(ellipse, math.pi / 6) == pytest.approx(5 * math.pi / 6, abs=1e-12)
    assert refract(ellipse, 0.0).theta2 == pytest.approx(math.pi / 6, abs=1e-12)


def test_refract_outcomes(classic):
    assert isinstance(refract(classic, 0.3), Refracted)
    assert refract(classic, math.pi / 6) == Critical(1)
    assert refract(classic, -math.pi / 6) == Critical(-1)
    assert Critical(-1).theta2 == -HALF_PI
    out = refract(classic, 1.0)
    assert isinstance(out, TotalReflection)
    assert out.theta3 == pytest.approx(math.pi - 1.0, abs=1e-12)


@pytest.mark.parametrize("theta", [HALF_PI, -HALF_PI, 2.0, math.nan])
def test_grazing_or_outgoing_incidence_is_rejected(classic, theta):
    with pytest.raises(InvalidIncidence):
        refract(classic, theta)
    with pytest.raises(InvalidIncidence):
        reflect(classic, theta)


def test_invert_raypath_out_of_range():
    with pytest.raises(TargetOutOfRange):
        invert_raypath(Isotropic(1.0), 1.5)
    with pytest.raises(ValueError):
        invert_raypath(Isotropic(1.0), 0.0, "sideways")


def test_degenerate_scene_rejected():
    class Dented:
        # speed with a deep notch: the indicatrix is not convex there
        def derivs(self, theta):
            th = np.asarray(theta, dtype=float)
            v = 1.0 + 0.6 * np.cos(4 * th)
            return v, -2.4 * np.sin(4 * th), -9.6 * np.cos(4 * th)

    with pytest.raises(InvalidScene):
        Scene(Dented(), Isotropic(1.0))


def test_window_width_classic(classic):
    lo, hi = refraction_window(classic, (-1.0, 0.0))
    assert hi - lo == pytest.approx(2 / math.sqrt(3), abs=1e-9)
    lo, hi = refraction_window(Scene(Isotropic(1.0), Isotropic(0.5)), (-1.0, 0.0))
    assert (lo, hi) == (-math.inf, math.inf)


@given(st.sampled_from([0.5, 1.0, 1.5, 2.0]), st.sampled_from([0.5, 1.0, 1.5, 2.0]), incidence)
def test_classical_snell(n1, n2, theta1):
    out = refract(Scene(Isotropic(1 / n1), Isotropic(1 / n2)), theta1)
    assume(isinstance(out, Refracted))
    assert abs(n1 * math.sin(theta1) - n2 * math.sin(out.theta2)) <= 1e-10


@given(scenes, incidence)
def test_refraction_preserves_raypath(scene, theta1):
    out = refract(scene, theta1)
    p1 = raypath_parameter(scene.profile1, theta1)
    if isinstance(out, Refracted):
        assert -HALF_PI < out.theta2 < HALF_PI
        assert raypath_parameter(scene.profile2, out.theta2) == pytest.approx(p1, abs=1e-12)
    elif isinstance(out, TotalReflection):
        assert raypath_parameter(scene.profile1, out.theta3) == pytest.approx(p1, abs=1e-12)


@given(scenes, st.floats(-HALF_PI + 1e-3, HALF_PI - 1e-3))
def test_refraction_round_trip(scene, theta2):
    # only outgoing angles whose raypath value the left medium can produce
    p2 = raypath_parameter(scene.profile2, theta2)
    p_lo, p_hi = raypath_parameter(scene.profile1, -HALF_PI), raypath_parameter(scene.profile1, HALF_PI)
    assume(p_lo + 1e-9 < p2 < p_hi - 1e-9)
    theta1 = invert_raypath(scene.profile1, p2)
    out = refract(scene, theta1)
    assume(isinstance(out, Refracted))
    assert out.theta2 == pytest.approx(theta2, abs=1e-9)


@given(scenes, incidence)
def test_reflection_is_an_involution(scene, theta1):
    theta3 = reflect(scene, theta1)
    assert theta3 > HALF_PI or theta3 < -HALF_PI
    back = invert_raypath(scene.profile1, raypath_parameter(scene.profile1, theta3))
    assert back == pytest.approx(theta1, abs=1e-9)


@given(scenes)
def test_critical_angle_existence_rule(scene):
    crit = critical_angles(scene)
    for sign in (1, -1):
        edge = sign * HALF_PI
        exists = speed(scene.profile1, edge) < speed(scene.profile2, edge)
        assert (crit.get(sign) is not None) == exists
        if exists:
            tc = crit.get(sign)
            assert raypath_parameter(scene.profile1, tc) == pytest.approx(
                raypath_parameter(scene.profile2, edge), abs=1e-12)


@given(scenes)
def test_refraction_map_is_increasing(scene):
    lo, hi = critical_angles(scene).window()
    th = np.linspace(lo, hi, 42)[1:-1]
    out = [refract(scene, t).theta2 for t in th]
    assert all(b > a for a, b in zip(out, out[1:]))


def test_ellipse_profiles_mirror_consistently():
    p = FocusEllipse(1.0, 0.5, 0.3)
    assert p.mirrored().mirrored().phi == pytest.approx(p.phi)
    assert speed(p.mirrored(), 0.2) == pytest.approx(speed(p, math.pi - 0.2))
