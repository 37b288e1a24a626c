"""Exception types shared across the toolkit."""


class ModVertexError(Exception):
    """Base class for toolkit errors."""


class ConfigError(ModVertexError, ValueError):
    """Invalid configuration or parameter outside the supported range."""


class DomainError(ModVertexError, ValueError):
    """Mathematical precondition violated (e.g. inverse of zero, H not a subgroup)."""


class ParseError(ModVertexError, ValueError):
    """Malformed textual input."""


class BudgetError(ModVertexError):
    """A configured enumeration budget would be exceeded."""

    def __init__(self, what: str, size: int, budget: int):
        super().__init__(f"{what}: size {size} exceeds budget {budget}")
        self.what = what
        self.size = size
        self.budget = budget


class InconclusiveError(ModVertexError):
    """An algorithm exhausted its strategies without a certificate."""
