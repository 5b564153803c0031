"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class WrongRegionError(DomainError):
    """Evaluation was requested in the wrong spectral region.

    Raised e.g. when an off-cut evaluator is handed a point on the
    continuous-spectrum cut; the message names the correct entry point.
    """


class EvaluationError(RuntimeError):
    """A numerical evaluation produced non-finite or unusable values."""


class IllConditionedContourError(RuntimeError):
    """A zero-counting contour passes too close to the cut or to a zero."""
