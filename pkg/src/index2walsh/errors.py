"""Exception hierarchy shared by every module of the package."""


class Index2WalshError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInput(Index2WalshError, ValueError):
    pass


class UnsupportedDiscriminant(InvalidInput):
    pass


class NoRepresentation(Index2WalshError):
    pass


class InvalidInstance(InvalidInput):
    """Raised when a (p, l) pair is not a valid index-2 instance."""


class BadL(InvalidInstance):
    pass


class NotIndexTwo(InvalidInstance):
    pass


class NotAResidue(InvalidInput):
    pass


class DomainMismatch(Index2WalshError, TypeError):
    pass


class InvalidExponent(InvalidInput):
    pass


class Unsupported(Index2WalshError):
    pass


class ZeroInput(InvalidInput):
    pass


class CannotCertifyPrimitive(Index2WalshError):
    pass


class InternalInconsistency(Index2WalshError, AssertionError):
    """A mathematical guarantee failed; this always signals a bug."""
