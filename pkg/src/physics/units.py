"""
Canonical units and datasheet conversions.

Every quantity held in memory uses the canonical system:

    time          ps
    length        m
    beta (GVD)    ps^2/m
    alpha (loss)  1/m, natural-log power attenuation
    kappa (Kerr)  ps/m, so that kappa * |A|^2 with |A|^2 in photons/ps is 1/m
    energy        J

Datasheet units (dB/km, ps^2/km, cm^2/W, um^2, nm, pJ) are converted here and
nowhere else.
"""

import math
from dataclasses import dataclass

import scipy.constants

from src.errors import DomainError

PS_PER_S = 1e12
M_PER_KM = 1e3


@dataclass(frozen=True)
class PhysicalConstants:
    c_light: float = scipy.constants.c  # m/s
    hbar: float = scipy.constants.hbar  # J s
    pi: float = scipy.constants.pi

    @property
    def h(self) -> float:
        return 2.0 * self.pi * self.hbar

    def carrier_frequency(self, lambda0: float) -> float:
        """Angular carrier frequency omega_0 = 2 pi c / lambda_0 in rad/s."""
        return 2.0 * self.pi * self.c_light / lambda0

    def photon_energy(self, lambda0: float) -> float:
        """hbar omega_0 in J."""
        return self.hbar * self.carrier_frequency(lambda0)


CONSTANTS = PhysicalConstants()


def alpha_from_db_per_km(a_db: float) -> float:
    """Power loss in dB/km to the natural-log coefficient in 1/m."""
    if a_db < 0:
        raise DomainError(f"Loss must be non-negative (gain is not modelled), got {a_db} dB/km")
    return a_db * math.log(10.0) / 10.0 / M_PER_KM


def db_per_km_from_alpha(alpha: float) -> float:
    return alpha * M_PER_KM * 10.0 / math.log(10.0)


def beta_from_ps2_per_km(beta_ps2_km: float) -> float:
    return beta_ps2_km / M_PER_KM


def n2_from_cm2_per_w(n2_cm2_w: float) -> float:
    return n2_cm2_w * 1e-4


def kappa_from_fiber(n2: float, a_eff: float, lambda0: float, constants: PhysicalConstants = CONSTANTS) -> float:
    """
    Normalized Kerr coefficient kappa = hbar w0 (w0 n2 / (c A_eff)), in ps/m.

    n2 in m^2/W, a_eff in m^2, lambda0 in m.
    """
    if n2 <= 0 or a_eff <= 0 or lambda0 <= 0:
        raise DomainError(f"n2, A_eff and lambda0 must be positive (got {n2}, {a_eff}, {lambda0})")
    omega0 = constants.carrier_frequency(lambda0)
    kappa_si = constants.hbar * omega0 * omega0 * n2 / (constants.c_light * a_eff)  # s/m
    return kappa_si * PS_PER_S


def photon_number_from_energy(energy: float, lambda0: float, constants: PhysicalConstants = CONSTANTS) -> float:
    if energy < 0:
        raise DomainError(f"Pulse energy must be non-negative, got {energy} J")
    if lambda0 <= 0:
        raise DomainError(f"Wavelength must be positive, got {lambda0} m")
    return energy / constants.photon_energy(lambda0)


def energy_from_photon_number(n_photons: float, lambda0: float, constants: PhysicalConstants = CONSTANTS) -> float:
    if n_photons < 0:
        raise DomainError(f"Photon number must be non-negative, got {n_photons}")
    return n_photons * constants.photon_energy(lambda0)


def soliton_photon_number(beta: float, tau: float, kappa: float) -> float:
    """Photon number of a fundamental sech soliton of width tau: N = 2|beta| / (kappa tau)."""
    if beta >= 0:
        raise DomainError(f"A bright soliton needs anomalous dispersion (beta < 0), got {beta}")
    if tau <= 0 or kappa <= 0:
        raise DomainError("tau and kappa must be positive")
    return 2.0 * abs(beta) / (kappa * tau)


def soliton_width(beta: float, n_photons: float, kappa: float) -> float:
    """tau = 2|beta| / (kappa N)."""
    if beta == 0:
        raise DomainError("No soliton without dispersion (beta = 0)")
    if n_photons <= 0 or kappa <= 0:
        raise DomainError("N and kappa must be positive")
    return 2.0 * abs(beta) / (kappa * n_photons)
