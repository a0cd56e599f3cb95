"""
Classical pulse moments N, dt_rms, C, domega_rms extracted from an envelope.
"""

from dataclasses import dataclass

import numpy as np

from src.errors import DomainError
from src.physics.grid import Envelope, to_spectrum
from src.physics.jitter import JitterState


@dataclass(frozen=True)
class PulseMoments:
    n_photons: float
    dt_rms: float  # ps
    chirp: float  # dimensionless
    domega_rms: float  # 1/ps
    centroid: float = 0.0  # ps
    mean_omega: float = 0.0  # 1/ps

    @property
    def dt2(self) -> float:
        return self.dt_rms**2

    @property
    def domega2(self) -> float:
        return self.domega_rms**2

    @property
    def time_bandwidth_product(self) -> float:
        """4 dt^2 domega^2; >= 1 + C^2 for a classical field, reported only."""
        return 4.0 * self.dt2 * self.domega2


def measure(envelope: Envelope) -> PulseMoments:
    """
    Moments about the intensity centroid.

    The chirp is C = -(2/N) Im int (t - t_c) A* dA/dt dt, which equals the expectation
    of the symmetrized operator t (i d/dt) + (i d/dt) t after integration by parts.
    """
    grid = envelope.grid
    intensity = envelope.intensity
    n_photons = float(np.sum(intensity) * grid.dt)
    if not n_photons > 0:
        raise DomainError("Cannot take moments of a zero field")

    t = grid.t
    centroid = float(np.sum(t * intensity) * grid.dt / n_photons)
    t_rel = t - centroid
    dt2 = float(np.sum(t_rel**2 * intensity) * grid.dt / n_photons)

    spectral_density = np.abs(to_spectrum(envelope)) ** 2
    n_spectral = float(np.sum(spectral_density) * grid.domega)
    omega = grid.omega
    mean_omega = float(np.sum(omega * spectral_density) * grid.domega / n_spectral)
    domega2 = float(np.sum((omega - mean_omega) ** 2 * spectral_density) * grid.domega / n_spectral)

    cross = np.sum(t_rel * np.conj(envelope.samples) * envelope.time_derivative()) * grid.dt
    chirp = float(-2.0 * cross.imag / n_photons)

    return PulseMoments(
        n_photons=n_photons,
        dt_rms=float(np.sqrt(dt2)),
        chirp=chirp,
        domega_rms=float(np.sqrt(domega2)),
        centroid=centroid,
        mean_omega=mean_omega,
    )


def coherent_jitter_init(moments: PulseMoments) -> JitterState:
    """Coherent-field statistics: <T^2> = dt^2/N, <Omega^2> = domega^2/N, <TO+OT> = C/N."""
    n = moments.n_photons
    return JitterState(
        t2_init=moments.dt2 / n,
        sym_init=moments.chirp / n,
        omega2_init=moments.domega2 / n,
    )


def uncertainty_product_ok(t2: float, omega2: float, n_photons: float, rel_tol: float = 1e-9) -> bool:
    """<T^2><Omega^2> >= 1/(4 N^2)."""
    return t2 * omega2 >= (1.0 - rel_tol) / (4.0 * n_photons**2)
