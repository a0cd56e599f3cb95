"""
Exception types raised across SolitonJitter and their CLI exit statuses.
"""


class DomainError(ValueError):
    """Physically meaningless input (negative loss, z outside the link, zero field...)."""


class ConfigurationError(ValueError):
    """Invalid scenario file, CLI argument or environment setting."""


class NumericalFailureError(RuntimeError):
    """The propagated field stopped being finite."""

    def __init__(self, message: str, z: float | None = None):
        super().__init__(message if z is None else f"{message} (z = {z:.6g} m)")
        self.z = z


class AcceptanceError(RuntimeError):
    """An analytic comparison exceeded its tolerance."""


EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_ACCEPTANCE = 4


def exit_code_for(exc: BaseException) -> int:
    match exc:
        case ConfigurationError() | DomainError():
            return EXIT_CONFIG
        case NumericalFailureError():
            return EXIT_NUMERICAL
        case AcceptanceError():
            return EXIT_ACCEPTANCE
        case _:
            return 1
