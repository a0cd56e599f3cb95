"""Tests for exception types and their exit statuses."""

import pytest

from src.errors import (
    EXIT_ACCEPTANCE,
    EXIT_CONFIG,
    EXIT_NUMERICAL,
    AcceptanceError,
    ConfigurationError,
    DomainError,
    NumericalFailureError,
    exit_code_for,
)


@pytest.mark.parametrize(
    "error, code",
    [
        (ConfigurationError("bad key"), EXIT_CONFIG),
        (DomainError("negative loss"), EXIT_CONFIG),
        (NumericalFailureError("NaN in field", z=103.0), EXIT_NUMERICAL),
        (AcceptanceError("deviation too large"), EXIT_ACCEPTANCE),
        (RuntimeError("anything else"), 1),
    ],
)
def test_exit_codes(error, code):
    """
    Each failure class maps to its own exit status.

    Args:
        error: Exception raised by a command.
        code: Process exit status expected for it.
    """
    assert exit_code_for(error) == code


def test_numerical_failure_carries_position():
    """The failing z is kept and appended to the message."""
    error = NumericalFailureError("Field is no longer finite", z=103.25)
    assert error.z == 103.25
    assert str(error) == "Field is no longer finite (z = 103.25 m)"
    assert str(NumericalFailureError("Field is no longer finite")) == "Field is no longer finite"
