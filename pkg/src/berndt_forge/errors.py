"""Exception hierarchy shared by every module."""


class BerndtError(Exception):
    """Base class for errors raised by berndt_forge."""


class SpecError(BerndtError, ValueError):
    """An integral spec violates the congruence / range conditions."""


class DomainError(BerndtError, ValueError):
    """A sum family or index combination outside the supported pipeline."""


class StructureError(BerndtError, ArithmeticError):
    """A value that should lie in Q[X, Y] does not (pipeline bug)."""


class MalformedElementError(BerndtError, ArithmeticError):
    """A ring element cannot be evaluated at the requested point."""


class FitError(BerndtError, RuntimeError):
    """Ansatz fitting could not produce a certified closed form."""

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class FixtureError(BerndtError, RuntimeError):
    """A frozen fixture is unreadable or fails its certification."""

    def __init__(self, message: str, path=None):
        super().__init__(message)
        self.path = path
