"""Exception hierarchy shared across the toolkit."""


class KchError(Exception):
    """Base class for all toolkit errors."""


class ParseError(KchError):
    """Malformed input text: polynomial grammar, PD code, or DGA document."""


class RingMismatchError(KchError):
    """Operands were declared over different variable rings."""


class DomainError(KchError):
    """Input lies outside an operation's domain (zero torus value, singular
    quadratic form, branch point, ...)."""


class ResourceLimitError(KchError):
    """A configured work cap was exceeded before the computation finished."""


class VerificationError(KchError):
    """A dual-route consistency check failed; the result cannot be trusted."""
