"""Exception types shared across the package."""


class LambdaLabError(Exception):
    """Base class for errors raised by lambda_lab."""


class FieldMismatchError(LambdaLabError, ValueError):
    """Operands live in different finite fields."""

    def __init__(self, msg="field mismatch"):
        super().__init__(msg)


class RingMismatchError(LambdaLabError, ValueError):
    """Operands live in different product rings."""

    def __init__(self, msg="ring mismatch"):
        super().__init__(msg)


class PreconditionError(LambdaLabError, ValueError):
    """An operation was called outside its documented domain."""


class SizeLimitError(LambdaLabError, OverflowError):
    """An instance exceeds the size cap that keeps exhaustive checks tractable."""
