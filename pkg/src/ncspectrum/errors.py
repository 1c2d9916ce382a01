"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Raised when input data violates a structural invariant."""


class VerificationError(Exception):
    """Raised when a verification check fails.

    Carries a machine-readable witness so callers can reproduce the
    failure in isolation.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class SubdiagramInsufficientError(VerificationError):
    """The sampled subdiagram is too coarse for the requested check.

    This is a reportable outcome, not a bug: the full diagram of
    commutative subalgebras is infinite and the finite sample may miss
    identifications.  Callers must surface this rather than accept a
    partial answer.
    """
