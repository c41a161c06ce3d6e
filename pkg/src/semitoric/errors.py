"""Exception hierarchy shared by all modules."""


class SemitoricError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(SemitoricError, ValueError):
    """Malformed input: wrong lengths, bad indices, schema violations."""


class PreconditionError(SemitoricError, ValueError):
    """A mathematical precondition of an operation is not satisfied."""


class NotCartierError(PreconditionError):
    """The divisor admits no integral support function on some cone."""


class RationalVertexError(PreconditionError):
    """A lattice polytope was required but the polytope has rational vertices."""


class CertificateError(PreconditionError):
    """A nondegeneracy/codimension certificate failed or was required."""


class InconsistencyError(SemitoricError, RuntimeError):
    """Two internal algorithms that must agree disagreed (a bug, not bad input)."""
