"""Exception hierarchy. Everything derives from KasnerError."""


class KasnerError(Exception):
    pass


class DegenerateError(KasnerError, ValueError):
    """Zero-area input, coincident vertices, or vanishing wedges."""


class ConvexityError(KasnerError, ValueError):
    """Polygon (or parameter set) is not strictly convex and counterclockwise."""


class UnsupportedError(KasnerError, ValueError):
    pass


class WrongArityError(KasnerError, ValueError):
    """Operation defined only for a specific vertex count."""


class ConstructionError(KasnerError, RuntimeError):
    pass


class LemmaViolationError(KasnerError, AssertionError):
    """A proved identity or inequality failed numerically.

    This means a bug or a tolerance problem, never a genuine counterexample.
    """


class BudgetExhaustedError(KasnerError, RuntimeError):
    pass


class RetryExhaustedError(KasnerError, RuntimeError):
    pass
