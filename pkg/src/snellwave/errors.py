"""Exception hierarchy shared by all solvers."""


class SnellwaveError(Exception):
    """Base class for domain errors raised by this package."""


class InvalidProfile(SnellwaveError, ValueError):
    pass


class InvalidScene(SnellwaveError, ValueError):
    pass


class InvalidIncidence(SnellwaveError, ValueError):
    pass


class TargetOutOfRange(SnellwaveError, ValueError):
    pass


class NoConvergence(SnellwaveError, RuntimeError):
    pass


class MissingCriticalAngle(SnellwaveError):
    pass


class TooEarly(SnellwaveError, ValueError):
    pass


class MalformedTrajectory(SnellwaveError, ValueError):
    pass


class RegionMismatch(SnellwaveError, ValueError):
    pass


class SceneFileError(SnellwaveError, ValueError):
    """Syntax or key error in a scene file; carries the offending line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
