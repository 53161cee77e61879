"""Exception types shared across the package."""


class PulseFrontError(Exception):
    """Base class for all solver-specific failures."""


class ToleranceUnreachable(PulseFrontError):
    """No rational direction within the angle tolerance under the denominator cap."""

    def __init__(self, message, best_angle=None, best_direction=None):
        super().__init__(message)
        self.best_angle = best_angle
        self.best_direction = best_direction


class NotInLattice(PulseFrontError):
    """An integer vector failed to decompose integrally (must never fire)."""


class ValidationFailed(PulseFrontError):
    """Medium hypothesis validation failed; carries the report with witnesses."""

    def __init__(self, report):
        super().__init__(f"medium hypothesis validation failed: {report.failures()}")
        self.report = report


class NoConvergence(PulseFrontError):
    """An iterative solver hit its iteration cap before meeting tolerance."""

    def __init__(self, message, iterations=None, defect=None):
        super().__init__(message)
        self.iterations = iterations
        self.defect = defect


class BracketFailure(PulseFrontError):
    """Geometric expansion failed to bracket the dispersion minimum."""


class NoRoot(PulseFrontError):
    """k_lambda - c*lambda has no positive root: speed is below the minimal speed."""


class NotSupercritical(PulseFrontError):
    """Sub/supersolution construction requires c strictly above the minimal speed."""


class SandwichViolation(PulseFrontError):
    """An iterate escaped the sub/supersolution sandwich beyond tolerance."""

    def __init__(self, message, excursion=None):
        super().__init__(message)
        self.excursion = excursion


class DomainTooSmall(PulseFrontError):
    """Strip end values do not meet the limit tolerances at the widest strip."""

    def __init__(self, message, right_end=None, left_end=None):
        super().__init__(message)
        self.right_end = right_end
        self.left_end = left_end


class IncompatibleMedium(PulseFrontError):
    """Medium is not periodic on the product cell of the requested direction."""


class ConfigError(PulseFrontError):
    """Run configuration failed to parse or validate."""
