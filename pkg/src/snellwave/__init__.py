"""Traveltime-minimising rays, wavefronts and cut loci across a straight
interface between two anisotropic media."""

from .errors import (
    InvalidIncidence,
    InvalidProfile,
    InvalidScene,
    MalformedTrajectory,
    MissingCriticalAngle,
    NoConvergence,
    RegionMismatch,
    SceneFileError,
    SnellwaveError,
    TargetOutOfRange,
    TooEarly,
)
from .interface_laws import (
    Critical,
    CriticalAngles,
    Refracted,
    Scene,
    TotalReflection,
    critical_angles,
    invert_raypath,
    reflect,
    refract,
    refraction_window,
)
from .oracle import Family, OracleResult, Reachability, brute_force_min, reachable_check
from .profiles import (
    FocusEllipse,
    Isotropic,
    Vector2,
    convexity_margin,
    finsler_cost,
    raypath_derivative,
    raypath_parameter,
    speed,
    speed_derivs,
)
from .trajectories import (
    MinimizerResult,
    Region,
    Segment,
    Trajectory,
    TrajectoryKind,
    global_minimizer,
    reflected_between,
    refracted_between,
    straight_between,
    three_segment_between,
    trace_ray,
    traveltime,
)
from .wavefront import (
    ArcKind,
    CompositeWavefront,
    CutLocusSample,
    WavefrontArc,
    composite_wavefront,
    critical_times,
    cut_locus,
    interface_crossings,
    reflected_wavefront,
    refracted_wavefront,
    standard_wavefront,
    time_to_interface,
    wavefront_intersection,
)

__version__ = "0.1.0"


def two_ellipse_scene() -> Scene:
    """Left: focus ellipse a=1, eps=1/2 pointing +x. Right: same ellipse pointing +y."""
    import math

    return Scene(FocusEllipse(1.0, 0.5, 0.0), FocusEllipse(1.0, 0.5, math.pi / 2))
