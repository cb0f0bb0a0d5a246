"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: ``ValidationError`` and ``DomainError``
give 1, ``DescriptorParseError`` gives 2, ``InconsistencyError`` gives 3.
"""


class LoopHomError(Exception):
    """Base class for all package errors."""


class UsageError(LoopHomError, ValueError):
    """Arguments that do not fit together (mismatched orders, alphabets)."""


class DomainError(LoopHomError, ValueError):
    """An argument outside the domain of an operation."""


class NonUnitError(DomainError):
    """A power series whose constant term is not 1."""


class RealizabilityError(DomainError):
    """Cohomology data that no closed manifold in the family can carry."""


class SliceTooLargeError(DomainError):
    """A word space above the configured size guard."""


class InconsistencyError(LoopHomError):
    """Two independent routes disagree, or an internal invariant broke."""

    def __init__(self, message, degree=None):
        super().__init__(message)
        self.degree = degree


class ComplementError(InconsistencyError):
    """The avoiding words are not a complement of the ideal slice."""


class DescriptorParseError(LoopHomError):
    """A descriptor file that cannot be parsed."""

    def __init__(self, message, line=None, column=None, path=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        if path is not None:
            where.append(f"at {path}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
        self.line = line
        self.column = column
        self.path = path


class ValidationError(LoopHomError):
    """A descriptor violating one or more hypotheses.

    ``violations`` holds every problem found, not just the first.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations)
        super().__init__(f"{len(self.violations)} violation(s): {lines}")
