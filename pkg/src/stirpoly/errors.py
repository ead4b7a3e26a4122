class BudgetExceeded(RuntimeError):
    """An enumeration or counting job would exceed its configured cap."""


class InconsistentParameters(ValueError):
    """Shape and numeric parameters do not fit together."""


class ConsistencyError(AssertionError):
    """An identity that must hold for a correct build did not."""
