"""Exception types shared across the package.

Every domain error carries its class name into CLI reports, so the names
are part of the public surface.
"""


class RecoverRepError(Exception):
    """Base class for all domain errors."""


# lattice
class NotFreeQuotient(RecoverRepError):
    pass


class InconsistentDiagram(RecoverRepError):
    pass


# weights
class NotDivisible(RecoverRepError):
    pass


class NotASymPower(RecoverRepError):
    pass


class NotATensorPower(RecoverRepError):
    pass


class KTooLarge(RecoverRepError):
    pass


class RankMismatch(RecoverRepError):
    pass


class EmptyMultiset(RecoverRepError):
    pass


# liealg
class DimensionOverflow(RecoverRepError):
    pass


# finchar
class GroupMismatch(RecoverRepError):
    pass


class DimMismatch(RecoverRepError):
    pass


class NonRationalResult(RecoverRepError):
    pass


class NotNormal(RecoverRepError):
    pass


class NotAutomorphism(RecoverRepError):
    pass


class NotEqualOnSubgroup(RecoverRepError):
    pass


class NotAHomomorphism(RecoverRepError):
    pass


class BadParameters(RecoverRepError):
    pass


class GroupTooLarge(RecoverRepError):
    pass


class IncompleteCharacterTable(RecoverRepError):
    pass
