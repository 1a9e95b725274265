"""Exception types raised by the container routines."""


class GeometryError(ValueError):
    """Base class for invalid geometric input."""


class DegenerateInput(GeometryError):
    pass


class EmptyIntersection(GeometryError):
    pass


class DegenerateTriangle(GeometryError):
    pass


class InvalidAxes(GeometryError):
    pass


class InvalidInput(GeometryError):
    pass


class NoConvergence(RuntimeError):
    """Iteration cap hit. ``best`` holds the last iterate."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class GenerationExhausted(RuntimeError):
    pass
