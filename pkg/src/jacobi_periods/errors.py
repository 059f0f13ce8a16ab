"""Exception types shared across the package."""


class InvalidElementError(ValueError):
    """Raw data does not satisfy the invariants of the requested element."""


class DomainError(ValueError):
    """Input is outside the domain an operation supports."""


class ResourceLimitError(RuntimeError):
    """A computation would exceed the configured term-count budget."""


class PrecisionError(RuntimeError):
    """A numerical evaluation cannot certify the requested tolerance.

    ``required_qbound`` carries an estimate of the truncation order that
    would be needed, when one is available.
    """

    def __init__(self, message, required_qbound=None):
        super().__init__(message)
        self.required_qbound = required_qbound
