"""Exception hierarchy shared across the package."""


class MnhdError(Exception):
    """Base class for all errors raised by drg_mnhd."""


class InfeasibleParams(MnhdError):
    """Parameters do not give a feasible intersection array."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class WrongDiameter(MnhdError):
    pass


class UnexpectedOrdering(MnhdError):
    """Exact eigenvalue ordering contradicts the expected case split."""


class DegenerateSpectrum(MnhdError):
    """Two of the nontrivial eigenvalues coincide."""


class OrderingViolation(MnhdError):
    pass


class BadDistance(MnhdError):
    pass


class SizeLimit(MnhdError):
    pass


class Disconnected(MnhdError):
    pass


class GraphFormatError(MnhdError):
    """Malformed edge-list input; carries the 1-based offending line."""

    def __init__(self, line, message):
        super().__init__(f"line {line}: {message}")
        self.line = line


class NoConvergence(MnhdError):
    pass


class NegativeTime(MnhdError):
    pass


class SameVertex(MnhdError):
    pass


class WrongSpectrumSize(MnhdError):
    pass


class MixedRadicand(MnhdError):
    """Arithmetic between quadratic numbers from different extensions."""
