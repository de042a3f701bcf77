class BranchInvariantsError(Exception):
    """Base class of every error raised by the library."""


class ConfigError(BranchInvariantsError):
    pass


class InputError(BranchInvariantsError, ValueError):
    """Arguments outside the domain of an operation, such as a level k > g."""


class CheckFailure(BranchInvariantsError):
    """A check could not be carried out on valid input."""


# SEMIGROUPS
class NonPrimitive(BranchInvariantsError):
    pass


class NotCharSequence(BranchInvariantsError):
    pass


class NotPlaneBranchSemigroup(BranchInvariantsError):
    pass


# SERIES AND POLYNOMIALS
class OrderUnknown(BranchInvariantsError):
    pass


class NotPrimitive(BranchInvariantsError):
    pass


class NotMonic(BranchInvariantsError):
    pass


class TruncationError(BranchInvariantsError):
    """Something was not decidable inside the working truncation window."""


class InsufficientTruncation(TruncationError):
    pass


# BRANCHES
class SupportViolation(BranchInvariantsError):
    pass


class ValueAboveTruncation(TruncationError):
    pass


# DIFFERENTIALS
class TorsionOrTruncation(TruncationError):
    pass


class WindowTooLarge(BranchInvariantsError):
    pass


class DeltaInSemigroup(BranchInvariantsError):
    pass


class DeltaNotValue(BranchInvariantsError):
    pass


class NotInEPart(CheckFailure):
    pass


class NotLogarithmic(CheckFailure):
    pass


class JetCutoffExceeded(CheckFailure):
    pass


# THEOREMS
class NotNg2Class(BranchInvariantsError):
    pass
