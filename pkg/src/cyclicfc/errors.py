class CoxeterError(Exception):
    """Base class for all domain errors raised by this package."""


class RangeError(CoxeterError, ValueError):
    pass


class UnknownGeneratorError(CoxeterError, ValueError):
    def __init__(self, token, known=()):
        self.token = token
        msg = f"unknown generator {token!r}"
        if known:
            msg += f" (expected one of: {' '.join(known)})"
        super().__init__(msg)


class CapExceededError(CoxeterError, RuntimeError):
    def __init__(self, what, cap):
        self.cap = cap
        super().__init__(f"{what} exceeded the cap of {cap} states")


class PreconditionError(CoxeterError, ValueError):
    pass


class ClassifierUnavailableError(CoxeterError):
    pass


class UnresolvedError(CoxeterError):
    """A series still carries an unresolved polynomial part."""


class InconclusiveError(CoxeterError):
    """Not enough data to decide."""


class InconsistencyError(CoxeterError):
    """Data contradicts a claimed closed form."""
