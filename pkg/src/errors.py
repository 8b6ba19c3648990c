"""Exceptions shared across the computation modules."""


class GuardError(ValueError):
    """A resource guard rejected an argument that would be too expensive."""

    def __init__(self, what: str, value: int, limit: int):
        super().__init__(f"{what}={value} exceeds the configured limit {limit}")
        self.what = what
        self.value = value
        self.limit = limit


class InconsistencyError(RuntimeError):
    """An identity that must hold by construction did not hold."""
