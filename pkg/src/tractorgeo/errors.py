"""Exception types shared across the toolkit."""


class GeometryError(Exception):
    """Base class for all geometry-level failures."""


class UnsupportedOrder(GeometryError):
    """A derivative jet of an order the engine does not provide was requested."""


class DegenerateMetric(GeometryError):
    """|det g| fell below the degeneracy threshold at a sampled point."""


class SignatureMismatch(GeometryError):
    """Eigenvalue signs of the metric do not match its declared signature."""


class NotSpacelike(GeometryError):
    """The induced metric has a non-positive eigenvalue at a sampled point."""


class DegenerateNormalBundle(GeometryError):
    """The normal plane is not two-dimensional with Lorentzian induced metric."""


class HintInvalid(GeometryError):
    """A supplied normal-frame hint fails normality, nullity or pairing checks."""


class FrameFieldUnavailable(GeometryError):
    """A normal frame field could not be evaluated on the local stencil."""


class StencilOutOfDomain(GeometryError):
    """A finite-difference stencil point left the chart domain."""


class NonpositiveFactor(GeometryError):
    """A conformal factor is not strictly positive on the sample grid."""


class BasepointNotNormalized(GeometryError):
    """The warp function is not equal to one at the slice basepoint."""


class NoNullFrame(GeometryError):
    """The base metric admits no validated lightlike pair with pairing -1."""


class InvalidDimension(GeometryError):
    """A constructor was called with a dimension outside its supported range."""


class DimensionTooLow(GeometryError):
    """The requested tensor is only defined for fiber dimension n >= 3."""


class ExpressionError(GeometryError):
    """Parse or evaluation failure in the arithmetic expression language."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class ConfigError(GeometryError):
    """Invalid run configuration; carries the offending key when known."""

    def __init__(self, message, key=None):
        if key is not None:
            message = f"{message} (key: {key})"
        super().__init__(message)
        self.key = key


class UnknownScenario(ConfigError):
    """The configured scenario name is not in the registry."""


class UnknownParameter(ConfigError):
    """A sweep or override referenced a parameter the scenario does not declare."""
