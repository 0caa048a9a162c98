"""Exception types shared across the package."""


class QudiscError(Exception):
    """Base class for all package-specific errors."""


class PreconditionError(QudiscError):
    """An operation was called outside its stated domain (e.g. an
    equal-copies formula with unequal program registers)."""


class OracleError(QudiscError):
    """A dense-matrix certification step failed its own sanity checks
    (non-Hermitian input, eigensolver residual too large, dimension cap)."""
