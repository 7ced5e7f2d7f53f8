"""Exception hierarchy. Everything derives from ``ValueError`` except numerical failures."""


class QsepError(Exception):
    pass


class DimensionError(QsepError, ValueError):
    """Shapes or bipartite dimensions do not fit together."""


class ValidationError(QsepError, ValueError):
    """An operator fails a structural invariant (Hermiticity, trace, positivity, norm)."""


class DomainError(QsepError, ValueError):
    """A scalar parameter or distribution lies outside its allowed range."""


class UnsupportedDimensionError(QsepError, ValueError):
    pass


class NumericalError(QsepError, ArithmeticError):
    """A linear-algebra routine failed to converge."""
