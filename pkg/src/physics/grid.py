"""
Uniform retarded-time grid and the complex pulse envelope living on it.

Transform convention: A(t) = (1/sqrt(2 pi)) int dw a(w) exp(-i w t), so a
positive envelope frequency w corresponds to exp(-i w t). Spectral arrays are
kept in FFT order (``TimeGrid.omega``); ``TimeGrid.omega_shifted`` and
``spectrum_shifted`` give the ascending order used for output files.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.fft

from src.errors import ConfigurationError, DomainError

SQRT_2PI = np.sqrt(2.0 * np.pi)
MIN_WINDOW_OVER_TAU = 30.0
GAUSSIAN_MIN_WINDOW_OVER_TAU = 12.0


def _is_power_of_two(n: int) -> bool:
    return n >= 2 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class TimeGrid:
    n_points: int
    dt: float  # ps
    t_center: float = 0.0  # ps

    def __post_init__(self):
        if not _is_power_of_two(self.n_points):
            raise ConfigurationError(f"n_points must be a power of two >= 2, got {self.n_points}")
        if not self.dt > 0:
            raise ConfigurationError(f"dt must be positive, got {self.dt}")

    @classmethod
    def from_window(cls, n_points: int, window: float, t_center: float = 0.0) -> "TimeGrid":
        return cls(n_points=n_points, dt=window / n_points, t_center=t_center)

    @property
    def window(self) -> float:
        return self.n_points * self.dt

    @property
    def domega(self) -> float:
        return 2.0 * np.pi / (self.n_points * self.dt)

    @property
    def t(self) -> np.ndarray:
        return self.t_center + (np.arange(self.n_points) - self.n_points // 2) * self.dt

    @property
    def omega(self) -> np.ndarray:
        """Envelope angular frequencies (1/ps) in FFT order."""
        return 2.0 * np.pi * scipy.fft.fftfreq(self.n_points, d=self.dt)

    @property
    def omega_shifted(self) -> np.ndarray:
        return scipy.fft.fftshift(self.omega)

    def require_window(self, tau: float, factor: float = MIN_WINDOW_OVER_TAU) -> None:
        if self.window < factor * tau:
            raise ConfigurationError(
                f"Time window {self.window:.4g} ps is narrower than {factor:g} x tau = {factor * tau:.4g} ps"
            )


@dataclass
class Envelope:
    """Complex envelope samples A(t_k) in (photons/ps)^(1/2)."""

    grid: TimeGrid
    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=complex)
        if self.samples.shape != (self.grid.n_points,):
            raise ConfigurationError(
                f"Envelope needs {self.grid.n_points} samples, got array of shape {self.samples.shape}"
            )

    def copy(self) -> "Envelope":
        return Envelope(self.grid, self.samples.copy())

    @property
    def intensity(self) -> np.ndarray:
        return np.abs(self.samples) ** 2

    def photon_number(self) -> float:
        return float(np.sum(self.intensity) * self.grid.dt)

    def spectral_photon_number(self) -> float:
        return float(np.sum(np.abs(to_spectrum(self)) ** 2) * self.grid.domega)

    def time_derivative(self) -> np.ndarray:
        """dA/dt evaluated spectrally."""
        return scipy.fft.fft(-1j * self.grid.omega * scipy.fft.ifft(self.samples))

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.samples)))

    def edge_fraction(self, margin: float = 0.05) -> float:
        """Share of the photons within ``margin`` x window of either window edge."""
        offset = np.abs(self.grid.t - self.grid.t_center)
        edge = offset > (0.5 - margin) * self.grid.window
        total = np.sum(self.intensity)
        return float(np.sum(self.intensity[edge]) / total) if total > 0 else 0.0


def to_spectrum(envelope: Envelope) -> np.ndarray:
    """a(w_j) = (1/sqrt(2 pi)) int dt A(t) exp(+i w_j t), FFT order, unitary with from_spectrum."""
    grid = envelope.grid
    t0 = grid.t[0]
    return grid.dt / SQRT_2PI * grid.n_points * np.exp(1j * grid.omega * t0) * scipy.fft.ifft(envelope.samples)


def from_spectrum(grid: TimeGrid, spectrum: np.ndarray) -> Envelope:
    t0 = grid.t[0]
    samples = SQRT_2PI / (grid.n_points * grid.dt) * scipy.fft.fft(np.exp(-1j * grid.omega * t0) * spectrum)
    return Envelope(grid, samples)


def spectrum_shifted(envelope: Envelope) -> np.ndarray:
    """Spectrum in ascending-frequency order, matching ``TimeGrid.omega_shifted``."""
    return scipy.fft.fftshift(to_spectrum(envelope))


def make_sech_soliton(grid: TimeGrid, tau: float, n_photons: float) -> Envelope:
    """A(t) = sqrt(N / (2 tau)) sech(t / tau) centred on the window."""
    if tau <= 0:
        raise DomainError(f"tau must be positive, got {tau}")
    if n_photons < 0:
        raise DomainError(f"Photon number must be non-negative, got {n_photons}")
    grid.require_window(tau)
    x = (grid.t - grid.t_center) / tau
    # 1/cosh overflows for |x| > ~710; the field there is zero to double precision anyway
    sech = np.where(np.abs(x) < 700.0, 1.0 / np.cosh(np.clip(x, -700.0, 700.0)), 0.0)
    return Envelope(grid, np.sqrt(n_photons / (2.0 * tau)) * sech)


def make_gaussian_pulse(grid: TimeGrid, tau: float, n_photons: float, chirp_q: float = 0.0) -> Envelope:
    """
    Gaussian with |A|^2 proportional to exp(-t^2 / tau^2) and optional phase exp(i q t^2).

    Transform-limited moments: dt_rms^2 = tau^2 / 2, domega_rms^2 = 1 / (2 tau^2).
    """
    if tau <= 0:
        raise DomainError(f"tau must be positive, got {tau}")
    grid.require_window(tau, factor=GAUSSIAN_MIN_WINDOW_OVER_TAU)
    x = grid.t - grid.t_center
    amplitude = (n_photons / (np.sqrt(np.pi) * tau)) ** 0.5
    return Envelope(grid, amplitude * np.exp(-(x**2) / (2.0 * tau**2) + 1j * chirp_q * x**2))
