"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class GraphEnergyError(Exception):
    """Base class for all errors raised by graphenergy."""


class NotSymmetricError(GraphEnergyError, ValueError):
    """A symmetric-only operation received a matrix that is not symmetric."""


class ConvergenceError(GraphEnergyError, ArithmeticError):
    """The Jacobi eigensolver hit its sweep cap before converging."""

    def __init__(self, off_norm: float, sweeps: int, threshold: float) -> None:
        self.off_norm = off_norm
        self.sweeps = sweeps
        self.threshold = threshold
        super().__init__(
            f"Jacobi iteration did not converge after {sweeps} sweeps: "
            f"off-diagonal norm {off_norm:.3e} > {threshold:.3e}"
        )


class PreconditionError(GraphEnergyError, ValueError):
    """An operation was called on an input outside its domain."""


class InconsistencyError(GraphEnergyError, ArithmeticError):
    """Two independent computations of the same quantity disagree."""


class GraphParseError(GraphEnergyError, ValueError):
    """Base class for graph document errors; ``field`` names the culprit."""

    def __init__(self, field: str, message: str) -> None:
        self.field = field
        super().__init__(f"{field}: {message}")


class MalformedDocumentError(GraphParseError):
    pass


class EdgeRangeError(GraphParseError):
    pass


class SelfLoopError(GraphParseError):
    pass


class DuplicateEdgeError(GraphParseError):
    pass


class WeightError(GraphParseError):
    pass


class TrialError(GraphEnergyError, ValueError):
    """Instance generation failed inside a sweep; ``trial`` is its index."""

    def __init__(self, trial: int, cause: Exception) -> None:
        self.trial = trial
        super().__init__(f"trial {trial}: {cause}")
