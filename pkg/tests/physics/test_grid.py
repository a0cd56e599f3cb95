"""
Tests for the time grid, the transform pair and the launch pulses.
"""

import numpy as np
import pytest

from src.errors import ConfigurationError
from src.physics.grid import (
    Envelope,
    TimeGrid,
    from_spectrum,
    make_gaussian_pulse,
    make_sech_soliton,
    spectrum_shifted,
    to_spectrum,
)


def test_grid_requires_power_of_two() -> None:
    """FFT grids are restricted to powers of two."""
    with pytest.raises(ConfigurationError):
        TimeGrid(n_points=1000, dt=0.1)


def test_grid_axes(small_grid) -> None:
    """Time axis is centred and omega is in FFT order with spacing 2 pi / window."""
    # Assert
    assert small_grid.t[small_grid.n_points // 2] == 0.0
    assert small_grid.omega[0] == 0.0
    assert small_grid.omega[1] == pytest.approx(small_grid.domega)
    assert np.all(np.diff(small_grid.omega_shifted) > 0)


def test_sech_soliton_photon_number(small_grid) -> None:
    """The sech amplitude sqrt(N / 2 tau) integrates to N."""
    # Act
    envelope = make_sech_soliton(small_grid, 1.0, 1.5e7)

    # Assert
    assert envelope.photon_number() == pytest.approx(1.5e7, rel=1e-9)
    assert envelope.intensity.max() == pytest.approx(1.5e7 / 2.0, rel=1e-12)


def test_sech_soliton_needs_wide_window() -> None:
    """The window must hold at least 30 tau."""
    # Arrange
    grid = TimeGrid.from_window(512, 20.0)

    # Act & Assert
    with pytest.raises(ConfigurationError, match="narrower"):
        make_sech_soliton(grid, 1.0, 1e6)


def test_spectrum_preserves_photon_number(small_grid) -> None:
    """The transform pair is unitary: spectral and temporal photon numbers agree."""
    # Arrange
    envelope = make_gaussian_pulse(small_grid, 1.5, 1e4, chirp_q=0.2)

    # Act
    spectral = envelope.spectral_photon_number()

    # Assert
    assert spectral == pytest.approx(envelope.photon_number(), rel=1e-12)


def test_from_spectrum_inverts_to_spectrum(small_grid) -> None:
    """Going to the frequency domain and back returns the samples."""
    # Arrange
    envelope = make_sech_soliton(small_grid, 1.0, 100.0)

    # Act
    restored = from_spectrum(small_grid, to_spectrum(envelope))

    # Assert
    np.testing.assert_allclose(restored.samples, envelope.samples, atol=1e-12)


def test_gaussian_spectrum_matches_closed_form(small_grid) -> None:
    """An unchirped Gaussian has spectral intensity N tau / sqrt(pi) exp(-w^2 tau^2)."""
    # Arrange
    tau, n = 1.0, 1e3
    envelope = make_gaussian_pulse(small_grid, tau, n)

    # Act
    density = np.abs(spectrum_shifted(envelope)) ** 2

    # Assert
    expected = n * tau / np.sqrt(np.pi) * np.exp(-(small_grid.omega_shifted**2) * tau**2)
    np.testing.assert_allclose(density, expected, atol=1e-9 * expected.max())


def test_envelope_shape_must_match_grid(small_grid) -> None:
    """Samples and grid size must agree."""
    with pytest.raises(ConfigurationError):
        Envelope(small_grid, np.zeros(10))


def test_edge_fraction(small_grid) -> None:
    """A centred soliton leaves the window edges dark; one drifted onto the edge does not."""
    # Arrange
    centred = make_sech_soliton(small_grid, 1.0, 1e7)
    drifted = Envelope(small_grid, np.roll(centred.samples, small_grid.n_points // 2))

    # Act / Assert
    assert centred.edge_fraction() < 1e-10
    assert drifted.edge_fraction() > 0.9


@pytest.mark.parametrize("shift_samples", [48, -20])
def test_time_shift_is_linear_spectral_phase(small_grid, shift_samples: int) -> None:
    """
    A(t - t0) has spectrum exp(+i w t0) a(w), the sign set by the exp(-i w t) synthesis.

    Args:
        small_grid: 1024-point, 64 ps grid fixture.
        shift_samples: Shift t0 in units of the grid spacing; positive delays the pulse.
    """
    # Arrange
    envelope = make_gaussian_pulse(small_grid, 1.0, 1e4, chirp_q=0.1)
    t0 = shift_samples * small_grid.dt
    delayed = Envelope(small_grid, np.roll(envelope.samples, shift_samples))

    # Act
    spectrum = to_spectrum(envelope)
    delayed_spectrum = to_spectrum(delayed)

    # Assert
    np.testing.assert_allclose(
        delayed_spectrum, np.exp(1j * small_grid.omega * t0) * spectrum, atol=1e-12 * np.abs(spectrum).max()
    )
    ratio = delayed_spectrum[1] / spectrum[1]
    assert np.angle(ratio) == pytest.approx(small_grid.domega * t0, rel=1e-9)
