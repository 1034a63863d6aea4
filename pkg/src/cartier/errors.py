"""Exception types shared across the package."""

from __future__ import annotations


class CartierError(Exception):
    """Base class for domain errors (CLI exit status 1)."""


class ContextMismatch(CartierError):
    pass


class ExponentOverflow(CartierError):
    pass


class PolynomialSyntaxError(CartierError):
    """Raised by the polynomial parser; ``position`` is a 0-based offset."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class UnknownVariable(PolynomialSyntaxError):
    def __init__(self, name: str, position: int, text: str = ""):
        self.name = name
        super().__init__(f"unknown variable '{name}'", position, text)


class UnsupportedIdealClass(CartierError):
    pass


class GroebnerBudgetExceeded(CartierError):
    pass


class InvalidSpec(CartierError):
    pass
