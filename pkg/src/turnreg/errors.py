"""Exception types shared across the package."""


class TurnRegError(Exception):
    """Base class for all library errors."""


class DegreeTooHigh(TurnRegError):
    """A vertex exceeds the maximum degree of four."""


class NotSimple(TurnRegError):
    """Self-loop or parallel edge in the input."""


class InconsistentRotation(TurnRegError):
    """Rotation lists are malformed or darts lack twins."""


class EulerViolation(TurnRegError):
    """Face traversal contradicts a sphere embedding (V - E + F != 2)."""


class NotBiconnected(TurnRegError):
    """Operation requires a biconnected graph."""


class InvalidRepresentation(TurnRegError):
    """An orthogonal representation violates one of its invariants."""


class InvalidDrawing(TurnRegError):
    """A grid drawing violates one of its invariants."""

    def __init__(self, message, violations=None):
        super().__init__(message)
        self.violations = list(violations or [])


class PreconditionUnmet(TurnRegError):
    """Caller violated a documented precondition."""


class NotHamiltonianCycle(TurnRegError):
    """The given vertex sequence is not a Hamiltonian cycle of the graph."""


class FaceTooLarge(TurnRegError):
    """Face degree exceeds what the operation supports."""


class IndexOutOfFace(TurnRegError):
    """Corner index does not belong to the face."""


class NotDirectional(TurnRegError):
    """Corner has no direction (flat or convex corner of a degree>=2 host)."""


class Infeasible(TurnRegError):
    """Flow does not saturate the demands; no representation exists."""


class BudgetExceeded(TurnRegError):
    """Enumeration budget exhausted."""


class ParseError(TurnRegError):
    """Input file does not match the documented JSON format."""
