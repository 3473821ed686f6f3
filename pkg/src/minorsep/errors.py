"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed instance, file, or parameter supplied by the caller."""


class ModelError(ValueError):
    """An operation would break the minor-model invariants."""


class SelfVerificationError(RuntimeError):
    """A run produced output that failed its own verification pass."""
