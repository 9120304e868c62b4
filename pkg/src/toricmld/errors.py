"""Exceptions shared across the package."""


class VerificationFailure(Exception):
    """Raised when a produced certificate fails its independent check.

    This signals an internal inconsistency: the classifier emitted a
    certificate that the verifier rejects.  It is never raised for
    merely invalid user input.
    """
