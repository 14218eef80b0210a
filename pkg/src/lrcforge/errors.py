"""Exception types shared across the library."""


class LrcforgeError(Exception):
    """Base class for all lrcforge errors."""


class NotPrime(LrcforgeError):
    """The requested field characteristic is not a prime."""


class FieldTooLarge(LrcforgeError):
    """Requested field exceeds the 2**16-element table cap."""


class DivisionByZero(LrcforgeError):
    """Multiplicative inverse of zero requested."""


class FieldMismatch(LrcforgeError):
    """Operands belong to different fields."""


class NotQuadraticExtension(LrcforgeError):
    """Operation needs a field of order q0**2 over the stated base."""


class NoSuchRoot(LrcforgeError):
    """No primitive n-th root of unity: n does not divide q-1."""


class InvalidParameters(LrcforgeError):
    """Arguments violate a documented precondition."""


class ShapeMismatch(LrcforgeError):
    """Matrix dimensions or index lists are inconsistent."""


class LengthMismatch(LrcforgeError):
    """Constituent codes do not share a common length."""


class NotDerivable(LrcforgeError):
    """The greedy permutation rule has no valid continuation."""


class PostconditionFailed(LrcforgeError):
    """A self-check that must hold by construction failed; indicates a bug
    or an inconsistent input rather than a user error."""


class HypothesisUnmet(LrcforgeError):
    """A named hypothesis of a construction is violated."""

    def __init__(self, condition: str):
        super().__init__(condition)
        self.condition = condition


class NoAdmissibleScalars(LrcforgeError):
    """Exhaustive scalar search found no admissible (lambda, mu) pair."""


class DistanceUnresolved(LrcforgeError):
    """An exact distance was required but the search budget only produced
    a bracket."""
