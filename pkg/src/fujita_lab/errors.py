"""Exception hierarchy shared by all modules."""


class FujitaError(Exception):
    """Base class for errors raised by fujita_lab."""


class DomainError(FujitaError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class LatticeMismatchError(DomainError):
    """Two classes (or a class and a lattice) do not belong together."""


class PreconditionError(FujitaError, ValueError):
    """A declared hypothesis of a criterion does not hold."""


class InconsistentVerdictError(FujitaError, RuntimeError):
    """Two rules produced contradictory bounds; indicates a transcription bug."""


class SchemaError(FujitaError, ValueError):
    """A surface description file does not match the schema."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field
