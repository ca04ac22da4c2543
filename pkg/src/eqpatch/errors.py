"""Exception hierarchy shared by every layer of the package."""


class EqPatchError(Exception):
    """Base class for all library errors."""


class NotAUnit(EqPatchError, ArithmeticError):
    pass


class RingMismatch(EqPatchError, ValueError):
    pass


class UnsupportedRing(EqPatchError, ValueError):
    pass


class ShapeError(EqPatchError, ValueError):
    pass


class ContextMismatch(EqPatchError, ValueError):
    pass


class NonInvertible(EqPatchError, ArithmeticError):
    pass


class BudgetExceeded(EqPatchError, RuntimeError):
    """An exhaustive enumeration hit its hard cap."""


class BoundExceeded(EqPatchError, RuntimeError):
    """A certified degree bound or search cap was insufficient."""


class InternalCheckFailure(EqPatchError, AssertionError):
    """A runtime-verified mathematical guarantee did not hold."""


class ParseError(EqPatchError, ValueError):
    pass
