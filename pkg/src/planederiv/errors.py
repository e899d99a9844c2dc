"""Shared exception types."""


class ArityError(ValueError):
    """Variable counts of the operands do not match the operation."""


class DomainError(ValueError):
    """Input violates a mathematical precondition (zero divisor, bad index, ...)."""


class BudgetError(RuntimeError):
    """A configured size/step budget would be exceeded."""


class NotAnAutomorphismError(ValueError):
    """A polynomial map failed automorphism validation.

    ``stage`` records where validation failed: ``"arity"``, ``"jacobian"``
    (non-constant or zero Jacobian determinant) or ``"stuck"`` (no tame
    reduction step exists).
    """

    def __init__(self, stage: str, detail: str = ""):
        self.stage = stage
        self.detail = detail
        super().__init__(f"not an automorphism ({stage})" + (f": {detail}" if detail else ""))
