"""Exception hierarchy shared by every wahlflip module."""


class WahlflipError(Exception):
    """Base class for all wahlflip errors."""


class DomainError(WahlflipError, ValueError):
    """Input outside the domain of an operation (non-coprime, out of range, ...)."""


class CapacityError(DomainError):
    """An enumeration would exceed its configured bound."""


class ConsistencyError(WahlflipError, RuntimeError):
    """An identity that must hold failed.

    Carries the intermediate values in ``derivation`` so the failure can be
    reproduced by hand.
    """

    def __init__(self, message: str, derivation: dict | None = None):
        super().__init__(message)
        self.derivation = derivation or {}

    def __str__(self) -> str:
        base = super().__str__()
        if not self.derivation:
            return base
        details = ", ".join(f"{k}={v}" for k, v in self.derivation.items())
        return f"{base} ({details})"


class UnsupportedConfiguration(WahlflipError):
    """The MMP engine refuses to guess (reattachment ambiguity, interior contacts)."""
