import math

import numpy as np
import pytest
from hypothesis import strategies as st

from snellwave import FocusEllipse, Isotropic, Scene

SQRT3 = math.sqrt(3.0)


def ellipse_scene() -> Scene:
    """Left medium fastest towards +x, right medium fastest towards +y."""
    return Scene(FocusEllipse(1.0, 0.5, 0.0), FocusEllipse(1.0, 0.5, math.pi / 2))


@pytest.fixture
def ellipse():
    return ellipse_scene()


@pytest.fixture
def classic():
    """Isotropic scene with refractive indices 1 and 1/2."""
    return Scene(Isotropic(1.0), Isotropic(2.0))


speeds = st.floats(0.3, 3.0)
isotropics = st.builds(Isotropic, speeds)
ellipses = st.builds(FocusEllipse, speeds, st.floats(0.0, 0.85), st.floats(-math.pi, math.pi))
profiles = st.one_of(isotropics, ellipses)
scenes = st.builds(Scene, profiles, profiles)


def random_profile(rng: np.random.Generator):
    if rng.random() < 0.25:
        return Isotropic(float(rng.uniform(0.3, 3.0)))
    return FocusEllipse(float(rng.uniform(0.3, 3.0)), float(rng.uniform(0.0, 0.85)),
                        float(rng.uniform(-math.pi, math.pi)))


def random_scene(rng: np.random.Generator) -> Scene:
    return Scene(random_profile(rng), random_profile(rng))


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
