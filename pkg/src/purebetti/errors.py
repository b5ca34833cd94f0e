"""Exception hierarchy shared by the whole package.

Every domain failure raises a subclass of :class:`DomainError` so the CLI can
map them uniformly to exit code 1 with a machine-readable payload.
"""

from __future__ import annotations


class DomainError(Exception):
    """Base class for all domain-level errors (bad inputs, undefined objects)."""

    code = "domain-error"

    def payload(self) -> dict:
        return {"error": self.code, "message": str(self)}


class ComplexError(DomainError):
    code = "complex-error"


class FieldError(DomainError):
    code = "field-error"


class DiagramError(DomainError):
    code = "diagram-error"


class ZeroIdealError(DomainError):
    """Raised when a Betti diagram is requested for the zero or unit ideal."""

    code = "zero-ideal"


class UniverseTooLarge(DomainError):
    """Canonical-form search refused: too many inequivalent vertices."""

    code = "universe-too-large"


class VertexCapExceeded(DomainError):
    """A pipeline step would grow the vertex universe past the configured cap."""

    code = "vertex-cap-exceeded"

    def __init__(self, message: str, step: str, current: int, needed: int, cap: int):
        super().__init__(message)
        self.step = step
        self.current = current
        self.needed = needed
        self.cap = cap

    def payload(self) -> dict:
        out = super().payload()
        out.update(step=self.step, current=self.current, needed=self.needed, cap=self.cap)
        return out
