"""Exception types shared across the package."""


class ContractViolation(ValueError):
    """An operation was called outside its documented preconditions."""


class DocumentError(ValueError):
    """A network/layout/config document failed to parse or validate.

    ``context`` carries the offending field, id, or line when known.
    """

    def __init__(self, message: str, context: str | None = None):
        super().__init__(message if context is None else f"{message} ({context})")
        self.context = context


class PathCountCapExceeded(RuntimeError):
    """Simple-path enumeration grew past the configured cap."""

    def __init__(self, cap: int):
        super().__init__(f"simple-path enumeration exceeded cap of {cap}")
        self.cap = cap
