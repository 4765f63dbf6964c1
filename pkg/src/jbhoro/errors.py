"""Exception types shared across the package."""


class ShapeError(ValueError):
    """Block shapes of the operands do not belong to one space."""


class NotTripotentError(ValueError):
    """An argument required to be a tripotent fails {e,e,e} = e."""


class OutsideDomainError(ValueError):
    """A point required to lie in the open unit ball has norm >= 1."""


class InvalidDatumError(ValueError):
    """A boundary datum violates its frame or weight constraints."""


class NonConvergenceError(RuntimeError):
    """A sequence-limit evaluation failed to converge.

    Carries the partial ladder so callers can report diagnostics.
    """

    def __init__(self, message, ladder=None):
        super().__init__(message)
        self.ladder = list(ladder) if ladder is not None else []
