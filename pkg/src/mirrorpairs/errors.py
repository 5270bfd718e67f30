"""Exception hierarchy shared by all modules."""


class MirrorPairsError(Exception):
    """Base class for every error raised by this package."""


class ParseError(MirrorPairsError, ValueError):
    pass


class ValidationError(MirrorPairsError, ValueError):
    """Input parsed but violates a structural law (Jacobi, J^2 = -1, ...)."""

    def __init__(self, message, location=None):
        super().__init__(message if location is None else f"{message} (at {location})")
        self.location = location


class JacobiFailure(ValidationError):
    pass


class DegenerateForm(MirrorPairsError, ArithmeticError):
    pass


class SingularMatrix(MirrorPairsError, ArithmeticError):
    pass


class InconsistentSystem(MirrorPairsError, ArithmeticError):
    pass


class DimensionMismatch(MirrorPairsError, ValueError):
    pass


class DegreeOverflow(MirrorPairsError, ValueError):
    pass


class ArityMismatch(MirrorPairsError, ValueError):
    pass


class OddDimension(MirrorPairsError, ValueError):
    pass


class NotARepresentation(ValidationError):
    pass


class NotTotallyReal(ValidationError):
    pass


class NotLagrangian(ValidationError):
    pass


class NotClosed(ValidationError):
    pass


class NotFlatOrTorsionFree(ValidationError):
    pass


class NotIntegrable(ValidationError):
    pass


class NotSymplectic(ValidationError):
    pass


class Incompatible(ValidationError):
    """Raised when omega(Jx, Jy) != omega(x, y); carries the offending pair."""

    def __init__(self, pair):
        super().__init__(f"omega(Jx, Jy) != omega(x, y) for basis pair {pair}")
        self.pair = pair


class BracketMismatch(MirrorPairsError, ArithmeticError):
    def __init__(self, pair, message="bracket not preserved"):
        super().__init__(f"{message} on basis pair {pair}")
        self.pair = pair


class NotProportional(MirrorPairsError, ArithmeticError):
    pass


class NonRationalOrthonormalization(MirrorPairsError, ArithmeticError):
    pass


class UnknownEntry(MirrorPairsError, KeyError):
    pass
