"""
Timing-jitter evolution of a pulse in a lossy, dispersive, nonlinear fiber.

The position variance is

    <T^2(z)> = <T^2(0)> + <TO+OT>(0) D(z) + <O^2(0)> D(z)^2
               + int a dt^2/N                                  (diffusive)
               + int b int a C/N                               (chirp-induced)
               + 2 int b int b int a domega^2/N                (Gordon-Haus)

with D(z) = int b, a = alpha, b = beta. The nested integrals are carried as the
running cascade (c1, g1, g2), so one forward pass over z is enough and no
history is stored:

    c1' = a C/N,          t2_chirp' = b c1
    g1' = a domega^2/N,   g2' = b g1,   t2_gh' = 2 b g2
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from src.physics.moments import PulseMoments


@dataclass(frozen=True)
class JitterState:
    t2_init: float  # ps^2
    sym_init: float  # ps
    omega2_init: float  # 1/ps^2
    d_net: float = 0.0  # ps^2
    g1: float = 0.0  # 1/ps^2
    g2: float = 0.0  # 1/ps
    t2_gh: float = 0.0  # ps^2
    c1: float = 0.0  # 1/ps
    t2_chirp: float = 0.0  # ps^2
    t2_diff: float = 0.0  # ps^2

    @property
    def t2_initial_dispersive(self) -> float:
        return self.t2_init + self.sym_init * self.d_net + self.omega2_init * self.d_net**2

    @property
    def t2_noise(self) -> float:
        return self.t2_diff + self.t2_chirp + self.t2_gh


def _drive(alpha: float, moments: PulseMoments) -> tuple[float, float, float]:
    scale = alpha / moments.n_photons
    return scale * moments.dt2, scale * moments.chirp, scale * moments.domega2


def advance(
    state: JitterState,
    dz: float,
    beta: float,
    alpha: float,
    moments: PulseMoments,
    moments_next: PulseMoments | None = None,
) -> JitterState:
    """
    Advance the jitter state over one step of length dz.

    beta is the step-averaged dispersion. The drive terms are taken linear between
    ``moments`` (step start) and ``moments_next`` (step end); without ``moments_next``
    they are frozen over the step. For constant beta and linear drives the update is exact.
    """
    d_a, h_a, f_a = _drive(alpha, moments)
    d_b, h_b, f_b = _drive(alpha, moments_next) if moments_next is not None else (d_a, h_a, f_a)
    dz2 = dz * dz
    dz3 = dz2 * dz

    t2_chirp = state.t2_chirp + beta * (state.c1 * dz + h_a * dz2 / 2 + (h_b - h_a) * dz2 / 6)
    t2_gh = state.t2_gh + 2 * beta * (
        state.g2 * dz + beta * (state.g1 * dz2 / 2 + f_a * dz3 / 6 + (f_b - f_a) * dz3 / 24)
    )
    g2 = state.g2 + beta * (state.g1 * dz + f_a * dz2 / 2 + (f_b - f_a) * dz2 / 6)

    return replace(
        state,
        d_net=state.d_net + beta * dz,
        t2_diff=state.t2_diff + 0.5 * (d_a + d_b) * dz,
        c1=state.c1 + 0.5 * (h_a + h_b) * dz,
        t2_chirp=t2_chirp,
        g1=state.g1 + 0.5 * (f_a + f_b) * dz,
        g2=g2,
        t2_gh=t2_gh,
    )


def total_t2(state: JitterState) -> float:
    return state.t2_initial_dispersive + state.t2_noise


def total_omega2(state: JitterState) -> float:
    return state.omega2_init + state.g1


def to_db(ratio: float) -> float:
    if ratio <= 0:
        return -math.inf
    return 10.0 * math.log10(ratio)


@dataclass(frozen=True)
class JitterReport:
    t2_total: float
    t2_initial_dispersive: float
    t2_diffusive: float
    t2_chirp: float
    t2_gordon_haus: float
    omega2_total: float
    sql_t2: float
    heisenberg_t2: float
    squeezing_ratio: float
    squeezing_ratio_db: float

    @property
    def components(self) -> tuple[float, float, float, float]:
        return self.t2_initial_dispersive, self.t2_diffusive, self.t2_chirp, self.t2_gordon_haus


def report(state: JitterState, moments: PulseMoments) -> JitterReport:
    """Position variance against SQL 1/(4 N domega^2) and Heisenberg limit 1/(4 N^2 domega^2)."""
    n = moments.n_photons
    sql = 1.0 / (4.0 * n * moments.domega2)
    t2 = total_t2(state)
    ratio = t2 / sql
    return JitterReport(
        t2_total=t2,
        t2_initial_dispersive=state.t2_initial_dispersive,
        t2_diffusive=state.t2_diff,
        t2_chirp=state.t2_chirp,
        t2_gordon_haus=state.t2_gh,
        omega2_total=total_omega2(state),
        sql_t2=sql,
        heisenberg_t2=sql / n,
        squeezing_ratio=ratio,
        squeezing_ratio_db=to_db(ratio),
    )


@dataclass(frozen=True)
class MomentumReport:
    omega2_total: float
    sql_omega2: float
    heisenberg_omega2: float
    fock_heisenberg_omega2: float

    @property
    def ratio(self) -> float:
        return self.omega2_total / self.sql_omega2


def momentum_report(state: JitterState, moments: PulseMoments) -> MomentumReport:
    """Momentum variance against SQL 1/(4 N dt^2) and Heisenberg limit 1/(4 N^2 dt^2)."""
    n = moments.n_photons
    sql = 1.0 / (4.0 * n * moments.dt2)
    heisenberg = sql / n
    return MomentumReport(
        omega2_total=total_omega2(state),
        sql_omega2=sql,
        heisenberg_omega2=heisenberg,
        # <N^-2> / (4 dt^2) with Fock statistics, <N^-2> = 1/N^2
        fock_heisenberg_omega2=heisenberg,
    )
