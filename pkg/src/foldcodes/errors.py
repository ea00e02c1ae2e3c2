"""Exception types raised across the package."""


class FoldCodesError(Exception):
    """Base class for every error raised by foldcodes."""


class InversionOfZero(FoldCodesError, ZeroDivisionError):
    pass


class NotPrime(FoldCodesError, ValueError):
    pass


class ZeroPolynomial(FoldCodesError, ValueError):
    pass


class TooLong(FoldCodesError, ValueError):
    """More evaluation points requested than the field can supply."""


class DegreeTooHigh(FoldCodesError, ValueError):
    pass


class SpecMismatch(FoldCodesError, ValueError):
    pass


class InvalidSpec(FoldCodesError, ValueError):
    pass


class ListExceedsFolding(FoldCodesError, ValueError):
    pass


class InfeasibleEpsilon(FoldCodesError, ValueError):
    pass


class EmptySet(FoldCodesError, ValueError):
    pass


class InstanceTooLarge(FoldCodesError, ValueError):
    pass


class NotProperSubset(FoldCodesError, ValueError):
    pass


class ZeroMissing(FoldCodesError, ValueError):
    pass


class NotDistinct(FoldCodesError, ValueError):
    pass


class MatrixTooLarge(FoldCodesError, ValueError):
    pass


class PreconditionViolated(FoldCodesError, ValueError):
    pass


class AllZero(FoldCodesError, ValueError):
    pass


class EmptySubset(FoldCodesError, ValueError):
    pass


class VertexCountTooLarge(FoldCodesError, ValueError):
    pass


class BadM(FoldCodesError, ValueError):
    pass
