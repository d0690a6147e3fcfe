"""Exception types shared across the package."""


class WaveboundError(Exception):
    """Base class for all package errors."""


class GeometryError(WaveboundError):
    """Invalid body geometry (surface-piercing, self-intersecting, ...)."""


class ParameterError(WaveboundError):
    """Parameter outside its admissible range."""


class SolverError(WaveboundError):
    """Boundary-integral solve failed (singular or ill-conditioned system)."""


class ExtractionError(WaveboundError):
    """Independent far-field extraction methods disagree."""


class EvaluationError(WaveboundError):
    """Kernel evaluation could not reach the requested accuracy."""
