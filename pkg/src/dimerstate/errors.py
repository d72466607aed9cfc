"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the domain of a model (non-positive temperature, V <= 0, ...)."""


class InconsistentDataError(ValueError):
    """Susceptibility data that no spin-1/2 dimer could have produced."""


class RejectedInputError(ValueError):
    """Input data that cannot be used: too few points, duplicates, missing columns."""


class ParseError(ValueError):
    """A DFT output file or CSV series could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")
