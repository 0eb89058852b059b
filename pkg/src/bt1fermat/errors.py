"""Exception hierarchy shared by every module of the package."""


class BT1Error(Exception):
    """Base class for all package errors."""


class EmptyWord(BT1Error, ValueError):
    def __init__(self, msg="the empty word is not allowed here"):
        super().__init__(msg)


class BadCharacter(BT1Error, ValueError):
    def __init__(self, position, char=None):
        self.position = position
        self.char = char
        super().__init__(f"bad character {char!r} at position {position}; alphabet is {{f, v}}")


class NotPrimitive(BT1Error, ValueError):
    pass


class NotABijection(BT1Error, ValueError):
    pass


class UnknownLabel(BT1Error, KeyError):
    pass


class NotPrime(BT1Error, ValueError):
    pass


class DegreeTooLarge(BT1Error, ValueError):
    pass


class ShapeMismatch(BT1Error, ValueError):
    pass


class Singular(BT1Error, ValueError):
    pass


class FieldMismatch(BT1Error, ValueError):
    pass


class NotCoprime(BT1Error, ValueError):
    pass


class DegreeTooSmall(BT1Error, ValueError):
    pass


class NotDivisible(BT1Error, ValueError):
    pass


class BudgetExceeded(BT1Error):
    def __init__(self, size, budget):
        self.size = size
        self.budget = budget
        super().__init__(f"index set of size {size} exceeds enumeration budget {budget}")


class OutOfRange(BT1Error, ValueError):
    pass


class ExcludedResidue(BT1Error, ValueError):
    pass


class NotRealizable(BT1Error):
    pass


class DegreeOne(BT1Error):
    pass


class SearchExhausted(BT1Error):
    def __init__(self, budget, detail=""):
        self.budget = budget
        super().__init__(f"witness search exhausted (budget {budget}) {detail}".strip())


class NotSelfDual(BT1Error, ValueError):
    def __init__(self, key):
        self.key = key
        super().__init__(f"multiset is not self-dual: {key!r} has no matching complement")


class NotRealizableByPaper(BT1Error):
    """Raised when no construction route applies; carries diagnostics."""

    def __init__(self, msg, diagnostics=None):
        self.diagnostics = diagnostics or {}
        super().__init__(msg)


class VerificationFailed(BT1Error):
    def __init__(self, detail):
        self.detail = detail
        super().__init__(f"verification failed: {detail}")
