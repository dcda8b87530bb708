class BlockcondError(Exception):
    """Base class for errors raised by this package."""


class ConfigError(BlockcondError):
    """Malformed configuration; ``pointer`` is a JSON pointer to the culprit."""

    def __init__(self, message: str, pointer: str = ""):
        self.pointer = pointer
        super().__init__(f"{pointer or '/'}: {message}")


class ValidationError(BlockcondError):
    """Inner-twist data failing one or more consistency checks."""

    def __init__(self, diagnostics: list[str]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics))


class InconsistentInputError(BlockcondError):
    """Input data contradicting the level/conductor relations."""


class LevelConflictError(InconsistentInputError):
    pass


class IndeterminateError(BlockcondError):
    """A quantity depends on twist levels that are only known as intervals."""
