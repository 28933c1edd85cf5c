"""Exception hierarchy shared by the geometry core and the CLI."""


class IsoformsError(Exception):
    """Base class for every error raised by isoforms."""


class InputError(IsoformsError, ValueError):
    """Malformed request payload or matrix."""


class NotInGroup(IsoformsError, ValueError):
    """Matrix is not a member of the requested isometry group within tolerance."""

    def __init__(self, message: str, residual: float | None = None) -> None:
        super().__init__(message)
        self.residual = residual


class NotProper(NotInGroup):
    """Lorentz matrix reverses time orientation (upper-left entry is not positive)."""


class ConvergenceFailure(IsoformsError):
    """The dense eigensolver did not converge."""


class DegenerateSpan(IsoformsError):
    """The bilinear form restricted to a span is singular (light-like span)."""


class InternalInconsistency(IsoformsError):
    """Rank decisions contradict a structure theorem; tolerances are mis-set."""


class UnsupportedDimension(IsoformsError, ValueError):
    """Dimension outside the validity range of the requested space."""


class InvariantViolation(IsoformsError, ValueError):
    """A Segre symbol or variety fails its type invariants."""


class SymbolSyntaxError(IsoformsError, ValueError):
    """Segre string does not follow the grammar."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position


class DegreeRangeError(IsoformsError, ValueError):
    """Requested degree k is outside the admissible range."""


class NoMatch(IsoformsError, ValueError):
    """No Segre symbol has the supplied dimension vectors."""


class AmbiguousMatch(IsoformsError):
    """Several Segre symbols share the supplied dimension vectors."""
