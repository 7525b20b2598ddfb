"""Exception types raised across the package."""


class FrechetVoronoiError(Exception):
    """Base class for all errors raised by this package."""


# geometry
class DegenerateInput(FrechetVoronoiError, ValueError):
    """Points are not affinely independent (singular bisector system)."""


class RadiusTooSmall(FrechetVoronoiError, ValueError):
    """Requested radius is below the circumradius of the points in their hull."""


class AmbiguousSide(FrechetVoronoiError, ValueError):
    """The side hint does not single out one of the two candidate centers."""


class NoSolution(FrechetVoronoiError, ValueError):
    """No point is at the requested distance from both inputs."""


# dfd
class DimensionMismatch(FrechetVoronoiError, ValueError):
    """Curves (or points) live in different ambient dimensions."""


class TooLarge(FrechetVoronoiError, ValueError):
    """Input exceeds the size cap of an exhaustive routine."""


# constructions
class InvalidParams(FrechetVoronoiError, ValueError):
    """Construction parameters violate one or more constraints."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class GeometryFailure(FrechetVoronoiError):
    """A geometric assertion of the query synthesis did not hold."""


# verifier
class EmptyFamily(FrechetVoronoiError, ValueError):
    pass


class TooManyTuples(FrechetVoronoiError, ValueError):
    pass


class GridTooLarge(FrechetVoronoiError, ValueError):
    pass


class NotOneDimensional(FrechetVoronoiError, ValueError):
    pass
