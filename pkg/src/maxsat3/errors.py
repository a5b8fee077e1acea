"""Exception hierarchy shared by every module of the toolkit."""

from __future__ import annotations


class CnfError(Exception):
    """Base class for all errors raised by maxsat3."""


# -- formula construction -------------------------------------------------

class InvalidFormulaError(CnfError, ValueError):
    pass


class TautologyError(InvalidFormulaError):
    pass


class EmptyClauseError(InvalidFormulaError):
    pass


class NonPositiveWeightError(InvalidFormulaError):
    pass


class WeightOverflowError(InvalidFormulaError):
    pass


class NotSubformulaError(CnfError, ValueError):
    pass


class IncompleteAssignmentError(CnfError, ValueError):
    pass


class DomainOverlapError(CnfError, ValueError):
    pass


# -- preconditions on formula shape ---------------------------------------

class NotThreeSatisfiableError(CnfError):
    pass


class ConflictingUnitsError(NotThreeSatisfiableError):
    """Both {x} and {-x} are present, so the formula is not even 2-satisfiable."""


class NotNormalizedError(CnfError):
    pass


class NotHardError(CnfError):
    pass


class NotExpandingError(CnfError):
    pass


class NotMaximumError(CnfError):
    pass


class CertificateError(CnfError):
    """A constructed assignment failed its own guarantee; always a bug."""


# -- resource limits --------------------------------------------------------

class ResourceLimitError(CnfError):
    pass


class DistributionTooLargeError(ResourceLimitError):
    pass


class TooManyVariablesError(ResourceLimitError):
    pass


class GenerationExhaustedError(ResourceLimitError):
    pass


# -- DIMACS input -------------------------------------------------------------

class DimacsSyntaxError(CnfError, ValueError):
    """Malformed DIMACS text; ``line`` is the 1-based line where parsing stopped."""

    def __init__(self, message: str, line: int = 1):
        self.line = max(line, 1)
        self.message = message
        super().__init__(f"line {self.line}: {message}")

    @property
    def diagnostics(self) -> dict:
        return {"line": self.line, "message": self.message}


class HeaderMismatchError(DimacsSyntaxError):
    pass
