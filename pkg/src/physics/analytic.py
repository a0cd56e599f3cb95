"""
Closed-form results used to cross-check the numerical engine and to explore
parameter space quickly:

  - ideal adiabatic soliton compression
  - jitter in linear non-dispersive, linear dispersive and soliton-like systems
  - order-of-magnitude Gordon-Haus estimates for dispersion-managed links
  - moments of the jointly Gaussian N-photon state and its behaviour under loss
  - the exact Heisenberg limit for Fock statistics

Divergent quantities (R -> 1/N, b -> 0 pulse width) come back as ``math.inf``.
"""

import math
from dataclasses import dataclass

import numpy as np

from src.errors import DomainError
from src.physics.fiber import FiberSegment, soliton_period
from src.physics.jitter import JitterState
from src.physics.moments import PulseMoments

SECH_TIME_BANDWIDTH = math.pi**2 / 9.0  # 4 dt^2 domega^2 of a sech pulse
SECH_DT_OVER_TAU = math.pi / (2.0 * math.sqrt(3.0))
HEISENBERG_RTOL = 1e-12  # relative slack on N R = 1


def _check_alpha(alpha: float) -> None:
    if alpha < 0:
        raise DomainError(f"Loss must be non-negative, got alpha = {alpha}")


# Adiabatic soliton compression


@dataclass(frozen=True)
class AdiabaticSolitonPath:
    segment: FiberSegment
    n0: float
    kappa: float

    def n_photons(self, z):
        return self.n0 * np.exp(-self.segment.alpha * np.asarray(z, dtype=float))

    def beta(self, z):
        return np.vectorize(self.segment.beta, otypes=[float])(z)

    def tau(self, z):
        return 2.0 * np.abs(self.beta(z)) / (self.kappa * self.n_photons(z))

    def a0(self, z):
        return np.sqrt(self.n_photons(z) / (2.0 * self.tau(z)))

    def dt(self, z):
        return SECH_DT_OVER_TAU * self.tau(z)

    def domega(self, z):
        return 1.0 / (math.sqrt(3.0) * self.tau(z))

    def lambda_period(self, z):
        return 0.5 * math.pi * self.tau(z) ** 2 / np.abs(self.beta(z))

    def bandwidth_narrowing(self) -> float:
        """domega(0) / domega(L)."""
        return float(self.domega(0.0) / self.domega(self.segment.length))


def adiabatic_ideal(segment: FiberSegment, n0: float, kappa: float | None = None) -> AdiabaticSolitonPath:
    kappa = segment.kappa if kappa is None else kappa
    if kappa <= 0:
        raise DomainError("Adiabatic soliton path needs a positive Kerr coefficient")
    if n0 <= 0:
        raise DomainError(f"Photon number must be positive, got {n0}")
    _check_alpha(segment.alpha)
    betas = [segment.beta(z) for z in np.linspace(0.0, segment.length, 33)]
    if max(betas) >= 0:
        raise DomainError("Adiabatic soliton compression needs beta < 0 along the whole segment")
    return AdiabaticSolitonPath(segment=segment, n0=n0, kappa=kappa)


def ideal_squeezing_ratio(beta0: float, beta_l: float) -> float:
    """R = (pi^2/9) beta(0)^2 / beta(L)^2 for lossless, perfectly adiabatic compression."""
    if beta0 == 0 or beta_l == 0:
        raise DomainError("Dispersion at both fiber ends must be nonzero")
    return SECH_TIME_BANDWIDTH * beta0**2 / beta_l**2


# Linear non-dispersive systems


def linear_nondispersive_t2(t2_0: float, dt0: float, n0: float, alpha: float, z: float) -> float:
    """<T^2(z)> = <T^2(0)> + (dt0^2 / N(z)) (1 - exp(-alpha z))."""
    _check_alpha(alpha)
    n_z = n0 * math.exp(-alpha * z)
    return t2_0 + dt0**2 / n_z * -math.expm1(-alpha * z)


def linear_nondispersive_R(r0: float, dt0: float, domega0: float, alpha: float, z: float) -> float:
    """R(z) = R(0) exp(-alpha z) + 4 dt0^2 domega0^2 (1 - exp(-alpha z))."""
    _check_alpha(alpha)
    decay = math.exp(-alpha * z)
    return r0 * decay + 4.0 * dt0**2 * domega0**2 * -math.expm1(-alpha * z)


# Linear dispersive systems


def linear_dispersive_moments(
    dt0_sq: float, chirp0: float, domega0_sq: float, d_net: float
) -> tuple[float, float, float]:
    """(dt^2(z), C(z), domega^2(z)) after net dispersion d_net = int beta dz in a linear fiber."""
    return (
        dt0_sq + chirp0 * d_net + domega0_sq * d_net**2,
        chirp0 + 2.0 * domega0_sq * d_net,
        domega0_sq,
    )


def linear_dispersive_t2(initial: JitterState, moments0: PulseMoments, alpha: float, z: float, d_net: float) -> float:
    """
    <T^2(z)> = <T^2(0)> + <TO+OT>(0) D + <O^2(0)> D^2 + (dt^2(z) / N(z)) (1 - exp(-alpha z)).

    Valid for any beta(z) profile with net dispersion D and uniform loss.
    """
    _check_alpha(alpha)
    dt_sq, _, _ = linear_dispersive_moments(moments0.dt2, moments0.chirp, moments0.domega2, d_net)
    n_z = moments0.n_photons * math.exp(-alpha * z)
    quantum_dispersion = initial.t2_init + initial.sym_init * d_net + initial.omega2_init * d_net**2
    return quantum_dispersion + dt_sq / n_z * -math.expm1(-alpha * z)


def normalized_distance(domega0_sq: float, d_net: float) -> float:
    """zeta = domega^2(0) int beta dz."""
    return domega0_sq * d_net


def linear_dispersive_R(r0: float, tbp0: float, zeta: float, alpha: float, z: float) -> float:
    """
    R(z) = [R0 + 4 zeta^2 / R0] exp(-alpha z) + [tbp0 + 4 zeta^2] (1 - exp(-alpha z)).

    tbp0 = 4 dt^2(0) domega^2(0); for a jointly Gaussian input use ``time_bandwidth_product``.
    """
    _check_alpha(alpha)
    lost = -math.expm1(-alpha * z)
    coherent_part = (r0 + 4.0 * zeta**2 / r0) * math.exp(-alpha * z)
    if lost == 0:
        return coherent_part
    return coherent_part + (tbp0 + 4.0 * zeta**2) * lost


# Soliton-like systems with constant dispersion


def _gh_kernel(alpha: float, z: float) -> float:
    """(exp(alpha z) - 1)/alpha^2 - z/alpha - z^2/2, with its alpha -> 0 series."""
    x = alpha * z
    if x == 0:
        return 0.0
    if abs(x) < 1e-3:
        return z**3 * alpha / 6.0 * (1.0 + x / 4.0 + x**2 / 20.0 + x**3 / 120.0)
    return (math.expm1(x) - x - 0.5 * x * x) / alpha**2


def soliton_constant_disp_t2(
    t2_0: float, omega2_0: float, dt0: float, domega0: float, n0: float, beta: float, alpha: float, z: float
) -> float:
    """
    Frozen-moment soliton in constant dispersion, <TO+OT>(0) = 0:

        <T^2(z)> = <T^2(0)> + <O^2(0)> beta^2 z^2 + (dt0^2/N0)(exp(alpha z) - 1)
                   + (2 beta^2 domega0^2 / N0) [(exp(alpha z) - 1)/alpha^2 - z/alpha - z^2/2]
    """
    _check_alpha(alpha)
    return (
        t2_0
        + omega2_0 * beta**2 * z**2
        + dt0**2 / n0 * math.expm1(alpha * z)
        + 2.0 * beta**2 * domega0**2 / n0 * _gh_kernel(alpha, z)
    )


def soliton_constant_disp_R(
    r0: float, z: float, period: float, alpha: float, tbp: float = SECH_TIME_BANDWIDTH
) -> float:
    """
    Normalized form of ``soliton_constant_disp_t2`` for a sech soliton with
    4 <T^2(0)> <O^2(0)> = (pi^2/9) / N0^2.

    The diffusive term is written as tbp (1 - exp(-alpha z)), tbp = 4 dt^2 domega^2.
    """
    _check_alpha(alpha)
    decay = math.exp(-alpha * z)
    return (
        r0 * decay
        + math.pi**4 / 81.0 / r0 * (z / period) ** 2 * decay
        + tbp * -math.expm1(-alpha * z)
        + 2.0 * math.pi**2 / 9.0 * decay / period**2 * _gh_kernel(alpha, z)
    )


def soliton_constant_disp_R_low_loss(
    r0: float, z: float, period: float, alpha: float, tbp: float = SECH_TIME_BANDWIDTH
) -> float:
    """Leading order of ``soliton_constant_disp_R`` for alpha Lambda << 1 and alpha z << 1."""
    _check_alpha(alpha)
    return (
        r0
        + math.pi**4 / 81.0 / r0 * (z / period) ** 2
        + tbp * alpha * z
        + math.pi**2 / 27.0 * (z / period) ** 2 * (alpha * z)
    )


# Gordon-Haus estimates for a dispersion-managed link


@dataclass(frozen=True)
class GordonHausEstimate:
    managed_t2: float  # ps^2, after the compensating fiber
    managed_ratio: float  # managed GH jitter / SQL
    unmanaged_ratio: float  # GH jitter at the end of the first fiber / SQL
    rough_ratio: float  # (L / Lambda)^2 (alpha L)
    length_cubed_bound: float  # m^3; L^3 must stay well below this


def gh_estimates(
    length: float,
    dcf_length: float,
    beta: float,
    alpha: float,
    domega0: float,
    n0: float,
    period: float,
    squeezing_ratio: float = 1.0,
) -> GordonHausEstimate:
    """
    Soliton in constant beta over ``length`` followed by a short compensating fiber
    (beta L + beta' L' = 0) in which the bandwidth stays frozen.
    """
    _check_alpha(alpha)
    if dcf_length > length:
        raise DomainError(f"The estimate assumes L' << L, got L'/L = {dcf_length / length:.3g}")
    if period <= 0:
        raise DomainError(f"Soliton period must be positive, got {period}")
    ratio_sq = (length / period) ** 2
    return GordonHausEstimate(
        managed_t2=alpha * domega0**2 * beta**2 * length**2 * (length + dcf_length) / (6.0 * n0),
        managed_ratio=math.pi**2 / 54.0 * ratio_sq * alpha * length,
        unmanaged_ratio=math.pi**2 / 27.0 * ratio_sq * alpha * length,
        rough_ratio=ratio_sq * alpha * length,
        length_cubed_bound=math.inf if alpha == 0 else 54.0 / math.pi**2 * period**2 / alpha * squeezing_ratio,
    )


# Jointly Gaussian N-photon state


@dataclass(frozen=True)
class JointlyGaussianState:
    n_photons: int
    big_b: float  # B, 1/ps
    small_b: float  # b, 1/ps

    def __post_init__(self):
        if self.n_photons < 1:
            raise DomainError(f"The jointly Gaussian state needs N >= 1, got {self.n_photons}")
        if not self.big_b > 0:
            raise DomainError(f"B must be positive, got {self.big_b}")
        if self.small_b < 0:
            raise DomainError(f"b must be non-negative, got {self.small_b}")


@dataclass(frozen=True)
class GaussianStateMoments:
    omega2: float
    t2: float
    domega2: float
    dt2: float
    tbp: float
    squeezing_ratio: float


def gaussian_state_moments(state: JointlyGaussianState) -> GaussianStateMoments:
    n = state.n_photons
    big_b2 = state.big_b**2
    small_b2 = state.small_b**2
    excess = 1.0 - 1.0 / n
    t2 = 1.0 / (4.0 * n**2 * big_b2)
    domega2 = big_b2 + excess * small_b2
    if excess == 0:
        dt2 = t2
    elif small_b2 == 0:
        dt2 = math.inf
    else:
        dt2 = t2 + excess / (4.0 * small_b2)
    return GaussianStateMoments(
        omega2=big_b2,
        t2=t2,
        domega2=domega2,
        dt2=dt2,
        tbp=4.0 * dt2 * domega2,
        squeezing_ratio=domega2 / (n * big_b2),
    )


def time_bandwidth_product(squeezing_ratio: float, n_photons: float) -> float:
    """4 dt^2 domega^2 = R/N + (1 - 1/N)^2 / (1 - 1/(N R)); infinite at and below R = 1/N."""
    n = n_photons
    excess = 1.0 - 1.0 / n
    if excess == 0:
        return squeezing_ratio / n
    # N R within rounding of 1 is the Heisenberg-limited state
    n_r = n * squeezing_ratio
    if n_r <= 1.0 or math.isclose(n_r, 1.0, rel_tol=HEISENBERG_RTOL):
        return math.inf
    return squeezing_ratio / n + excess**2 / (1.0 - 1.0 / n_r)


def gaussian_lossy_R(state: JointlyGaussianState, alpha: float, z: float) -> float:
    """R(z) = R(0) exp(-alpha z) + tbp(0) (1 - exp(-alpha z)) for a jointly Gaussian input."""
    _check_alpha(alpha)
    moments = gaussian_state_moments(state)
    lost = -math.expm1(-alpha * z)
    r0 = moments.squeezing_ratio
    if lost == 0:
        return r0
    if math.isinf(moments.tbp):
        return math.inf
    return r0 * math.exp(-alpha * z) + moments.tbp * lost


def exact_heisenberg_t2(n_photons: int, domega_prime: float = 1.0) -> float:
    """
    <T'^2>_H = <N^-2> / (4 domega'^2) under Fock statistics, <N^-2> = 1/N^2.

    Other photon statistics are not modelled.
    """
    if n_photons < 1:
        raise DomainError(f"Fock state needs N >= 1, got {n_photons}")
    if domega_prime <= 0:
        raise DomainError(f"Bandwidth must be positive, got {domega_prime}")
    return 1.0 / (n_photons**2 * 4.0 * domega_prime**2)


def soliton_period_at_end(segment: FiberSegment, n_end: float) -> float:
    """Soliton period at the end of an anomalous segment for the adiabatic width 2|beta|/(kappa N)."""
    beta_l = segment.beta(segment.length)
    return soliton_period(beta_l, 2.0 * abs(beta_l) / (segment.kappa * n_end))


def gaussian_jitter_init(state: JointlyGaussianState) -> JitterState:
    """Initial jitter of a jointly Gaussian state; its time-frequency cross moment vanishes."""
    moments = gaussian_state_moments(state)
    return JitterState(t2_init=moments.t2, sym_init=0.0, omega2_init=moments.omega2)
