"""Exception types shared across the package."""


class K3PicError(Exception):
    """Base class for all package-specific errors."""


class NotPrime(K3PicError):
    pass


class NoIrreducibleFound(K3PicError):
    pass


class ZeroPolynomial(K3PicError):
    pass


class DivisionRequested(K3PicError):
    """Raised when a general field division sneaks into expression building.

    Inverses of symbolic field elements are an explicit operation
    (SymElem.inverse), not part of +,-,* normalization.
    """


class NotInvertible(K3PicError):
    pass


class BadReduction(K3PicError):
    """A denominator vanishes at the chosen specialization/reduction."""


class NoPrimeFound(K3PicError):
    pass


class SingularMember(K3PicError):
    pass


class IdentityFails(K3PicError):
    pass


class StructureMismatch(K3PicError):
    pass


class CommonComponent(K3PicError):
    pass


class Degenerate(K3PicError):
    pass


class NotEven(K3PicError):
    pass


class TooLarge(K3PicError):
    pass


class NotFullRank(K3PicError):
    pass


class RankMismatch(K3PicError):
    pass


class NonIntegralClass(K3PicError):
    pass


class NotIsometry(K3PicError):
    pass


class NoSolution(K3PicError):
    pass


class ClosureBudgetExceeded(K3PicError):
    pass


class EnumerationTooLarge(K3PicError):
    pass


class VerificationFailed(K3PicError):
    pass


class ResourceBudgetExceeded(K3PicError):
    pass
