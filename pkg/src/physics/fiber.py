"""
Fiber link description: loss, Kerr coefficient, length and z-dependent
group-velocity dispersion per segment.

Dispersion profiles carry exact antiderivatives, so the net dispersion that
drives the quantum-dispersion and Gordon-Haus terms never goes through
quadrature.
"""

import bisect
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field

import numpy as np

from src.errors import ConfigurationError, DomainError
from src.logger import log


class DispersionProfile(ABC):
    """beta(z) over a segment, z measured from the segment start."""

    @abstractmethod
    def beta(self, z: float) -> float: ...

    @abstractmethod
    def integral(self, z: float) -> float:
        """int_0^z beta(z') dz' in ps^2."""

    @abstractmethod
    def derivative(self, z: float) -> float: ...

    def scale_length(self, z: float) -> float:
        """|beta / (dbeta/dz)|, infinite for a constant profile."""
        slope = self.derivative(z)
        if slope == 0:
            return math.inf
        return abs(self.beta(z) / slope)


@dataclass(frozen=True)
class ConstantDispersion(DispersionProfile):
    beta_value: float  # ps^2/m

    def beta(self, z: float) -> float:
        return self.beta_value

    def integral(self, z: float) -> float:
        return self.beta_value * z

    def derivative(self, z: float) -> float:
        return 0.0


@dataclass(frozen=True)
class DispersionIncreasing(DispersionProfile):
    """beta(z) = beta_end / (1 + (L - z) / L_beta)."""

    beta_end: float  # ps^2/m
    length: float  # m
    l_beta: float  # m

    def __post_init__(self):
        if not self.l_beta > 0:
            raise ConfigurationError(f"L_beta must be positive, got {self.l_beta}")
        if not self.length > 0:
            raise ConfigurationError(f"Profile length must be positive, got {self.length}")

    def _denominator(self, z: float) -> float:
        return self.l_beta + self.length - z

    def beta(self, z: float) -> float:
        return self.beta_end * self.l_beta / self._denominator(z)

    def integral(self, z: float) -> float:
        return self.beta_end * self.l_beta * math.log((self.l_beta + self.length) / self._denominator(z))

    def derivative(self, z: float) -> float:
        return self.beta_end * self.l_beta / self._denominator(z) ** 2


@dataclass(frozen=True)
class FiberSegment:
    length: float  # m
    alpha: float  # 1/m
    kappa: float  # ps/m
    dispersion: DispersionProfile
    name: str = ""

    def __post_init__(self):
        if not self.length > 0:
            raise ConfigurationError(f"Segment length must be positive, got {self.length}")
        if self.alpha < 0:
            raise ConfigurationError(f"Segment loss must be non-negative, got {self.alpha}")
        if self.kappa < 0:
            raise ConfigurationError(f"Segment Kerr coefficient must be non-negative, got {self.kappa}")
        if isinstance(self.dispersion, DispersionIncreasing) and not math.isclose(
            self.dispersion.length, self.length, rel_tol=1e-12
        ):
            raise ConfigurationError(
                f"Dispersion profile length {self.dispersion.length} differs from segment length {self.length}"
            )

    def beta(self, z_local: float) -> float:
        return self.dispersion.beta(z_local)

    @property
    def net_dispersion(self) -> float:
        return self.dispersion.integral(self.length)

    @property
    def loss_length(self) -> float:
        """1/alpha, the photon-number decay length."""
        return math.inf if self.alpha == 0 else 1.0 / self.alpha


@dataclass(frozen=True)
class FiberLink:
    segments: tuple[FiberSegment, ...]
    starts: tuple[float, ...] = field(init=False)

    def __post_init__(self):
        if not self.segments:
            raise ConfigurationError("A fiber link needs at least one segment")
        object.__setattr__(self, "segments", tuple(self.segments))
        starts = np.concatenate(([0.0], np.cumsum([s.length for s in self.segments[:-1]])))
        object.__setattr__(self, "starts", tuple(float(s) for s in starts))

    @property
    def total_length(self) -> float:
        return self.starts[-1] + self.segments[-1].length

    def _check_range(self, z: float) -> None:
        if z < 0 or z > self.total_length * (1 + 1e-12):
            raise DomainError(f"z = {z} m lies outside the link [0, {self.total_length}] m")

    def locate(self, z: float) -> tuple[int, float]:
        """Segment index and segment-local coordinate for a global z; boundaries belong to the next segment."""
        self._check_range(z)
        index = min(bisect.bisect_right(self.starts, z) - 1, len(self.segments) - 1)
        return index, min(z - self.starts[index], self.segments[index].length)

    def segment_at(self, z: float) -> FiberSegment:
        return self.segments[self.locate(z)[0]]

    def beta_at(self, z: float) -> float:
        index, z_local = self.locate(z)
        return self.segments[index].beta(z_local)

    def alpha_at(self, z: float) -> float:
        return self.segment_at(z).alpha

    def kappa_at(self, z: float) -> float:
        return self.segment_at(z).kappa

    def net_dispersion(self, z: float) -> float:
        """int_0^z beta(z') dz' in ps^2, exact per profile."""
        index, z_local = self.locate(z)
        done = sum(segment.net_dispersion for segment in self.segments[:index])
        return done + self.segments[index].dispersion.integral(z_local)

    def accumulated_loss(self, z: float) -> float:
        """int_0^z alpha(z') dz' (dimensionless)."""
        index, z_local = self.locate(z)
        done = sum(segment.alpha * segment.length for segment in self.segments[:index])
        return done + self.segments[index].alpha * z_local

    def dispersion_scale_length(self, z: float) -> float:
        index, z_local = self.locate(z)
        return self.segments[index].dispersion.scale_length(z_local)


def soliton_period(beta: float, tau: float) -> float:
    """Lambda = (pi/2) tau^2 / |beta| in m."""
    if beta == 0:
        raise DomainError("Soliton period is undefined without dispersion (beta = 0)")
    if tau <= 0:
        raise DomainError(f"tau must be positive, got {tau}")
    return 0.5 * math.pi * tau**2 / abs(beta)


def figure_of_merit(alpha: float, beta: float, tau: float) -> float:
    """FOM = 1 / (alpha Lambda) = (2/pi) |beta| / (alpha tau^2)."""
    if alpha <= 0:
        raise DomainError(f"The figure of merit needs a positive loss, got alpha = {alpha}")
    return 1.0 / (alpha * soliton_period(beta, tau))


@dataclass(frozen=True)
class AdiabaticityReport:
    z: float
    soliton_period: float
    dispersion_scale_length: float
    loss_length: float

    @property
    def dispersion_ratio(self) -> float:
        return self.dispersion_scale_length / self.soliton_period

    @property
    def loss_ratio(self) -> float:
        return self.loss_length / self.soliton_period

    @property
    def min_ratio(self) -> float:
        return min(self.dispersion_ratio, self.loss_ratio)


def adiabaticity_report(link: FiberLink, z: float, tau: float) -> AdiabaticityReport:
    """
    Report |beta / (dbeta/dz)| and 1/alpha against the local soliton period.

    Adiabatic soliton control needs both ratios >> 1. The values are reported, not enforced.
    """
    index, z_local = link.locate(z)
    segment = link.segments[index]
    report = AdiabaticityReport(
        z=z,
        soliton_period=soliton_period(segment.beta(z_local), tau),
        dispersion_scale_length=segment.dispersion.scale_length(z_local),
        loss_length=segment.loss_length,
    )
    if report.min_ratio < 1.0:
        log.debug(f"Adiabaticity ratio {report.min_ratio:.3g} < 1 at z = {z:.1f} m")
    return report


def compensating_length(link: FiberLink, beta_dcf: float) -> float:
    """Length of a constant-beta fiber that brings the net dispersion of ``link`` back to zero."""
    total = link.net_dispersion(link.total_length)
    if beta_dcf == 0 or total == 0 or math.copysign(1.0, beta_dcf) == math.copysign(1.0, total):
        raise DomainError(
            f"Compensating fiber dispersion {beta_dcf} ps^2/m cannot cancel net dispersion {total} ps^2"
        )
    return -total / beta_dcf
