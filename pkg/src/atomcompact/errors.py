"""Exception types shared across the library."""


class AtomCompactError(Exception):
    """Base class for all library errors."""


class TheoryMismatch(AtomCompactError):
    pass


class ArityMismatch(AtomCompactError):
    pass


class AmbientMissing(AtomCompactError):
    pass


class NotInDomain(AtomCompactError):
    pass


class NotTotal(AtomCompactError):
    pass


class NotASubset(AtomCompactError):
    pass


class NotASubsetOfCompactification(AtomCompactError):
    pass


class UnsupportedTheory(AtomCompactError):
    pass


class NonzeroResidual(AtomCompactError):
    """Internal consistency failure of the triangular decomposition."""


class SystemInsolvable(AtomCompactError):
    """Internal consistency failure of the hyperrectangle linear solve."""


class BasisMismatch(AtomCompactError):
    pass


class DecompositionOutsideHomBasis(AtomCompactError):
    pass


class KernelNotDefinable(AtomCompactError):
    pass


class LetterNotInAlphabet(AtomCompactError):
    pass


class PoolTooSmall(AtomCompactError):
    pass


class SchemaError(AtomCompactError):
    """Malformed or unsupported document."""
