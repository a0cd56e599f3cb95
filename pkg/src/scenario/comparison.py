"""
Numerical jitter against the closed forms, for scenarios that satisfy the
assumptions of one of them.
"""

import math
from dataclasses import dataclass, replace

from src.errors import ConfigurationError
from src.logger import log
from src.physics.analytic import linear_dispersive_t2, linear_nondispersive_t2, soliton_constant_disp_t2
from src.physics.fiber import ConstantDispersion
from src.physics.jitter import advance, total_t2
from src.physics.moments import measure
from src.scenario.model import AnalyticRegime, Scenario
from src.scenario.runner import propagate_scenario

DEFAULT_COMPARISON_TOLERANCE = 1e-6


@dataclass(frozen=True)
class ComparisonResult:
    regime: AnalyticRegime
    max_relative_deviation: float
    worst_z: float  # m
    samples: int
    tolerance: float = DEFAULT_COMPARISON_TOLERANCE

    @property
    def passed(self) -> bool:
        return self.max_relative_deviation < self.tolerance

    def as_line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"regime={self.regime} max_relative_deviation={self.max_relative_deviation:.9g} "
            f"worst_z_m={self.worst_z:.9g} samples={self.samples} tolerance={self.tolerance:g} status={status}"
        )


def _uniform_alpha(scenario: Scenario) -> float:
    alphas = {segment.alpha for segment in scenario.link.segments}
    if len(alphas) != 1:
        raise ConfigurationError("Closed-form comparison needs the same loss in every segment")
    return alphas.pop()


def _check_regime(scenario: Scenario, regime: AnalyticRegime) -> None:
    segments = scenario.link.segments
    match regime:
        case AnalyticRegime.LINEAR_NONDISPERSIVE:
            if any(s.kappa != 0 for s in segments):
                raise ConfigurationError("linear-nondispersive needs nonlinear = false on every segment")
            if any(not isinstance(s.dispersion, ConstantDispersion) or s.beta(0.0) != 0 for s in segments):
                raise ConfigurationError("linear-nondispersive needs beta = 0 on every segment")
        case AnalyticRegime.LINEAR_DISPERSIVE:
            if any(s.kappa != 0 for s in segments):
                raise ConfigurationError("linear-dispersive needs nonlinear = false on every segment")
        case AnalyticRegime.FROZEN_SOLITON:
            if len(segments) != 1 or not isinstance(segments[0].dispersion, ConstantDispersion):
                raise ConfigurationError("frozen-soliton needs a single constant-dispersion segment")


def _deviations(pairs: list[tuple[float, float, float]]) -> tuple[float, float]:
    worst, worst_z = 0.0, 0.0
    for z, numeric, closed in pairs:
        deviation = abs(numeric - closed) / abs(closed)
        if deviation > worst:
            worst, worst_z = deviation, z
    return worst, worst_z


def _linear_pairs(scenario: Scenario, regime: AnalyticRegime, alpha: float) -> list[tuple[float, float, float]]:
    records = propagate_scenario(scenario)
    moments0 = records[0].moments
    initial = records[0].jitter
    pairs = []
    for record in records:
        numeric = record.report.t2_total
        if regime == AnalyticRegime.LINEAR_NONDISPERSIVE:
            closed = linear_nondispersive_t2(total_t2(initial), moments0.dt_rms, moments0.n_photons, alpha, record.z)
        else:
            d_net = scenario.link.net_dispersion(record.z)
            closed = linear_dispersive_t2(initial, moments0, alpha, record.z, d_net)
        pairs.append((record.z, numeric, closed))
    return pairs


def _frozen_soliton_pairs(scenario: Scenario, alpha: float) -> list[tuple[float, float, float]]:
    """Drive the jitter engine with moments frozen at launch, only N decaying."""
    segment = scenario.link.segments[0]
    beta = segment.beta(0.0)
    moments0 = replace(measure(scenario.pulse.envelope(scenario.numerics.grid())), chirp=0.0)
    state = scenario.statistics.initial_state(moments0)
    t2_0, omega2_0 = state.t2_init, state.omega2_init

    def closed(z: float) -> float:
        return soliton_constant_disp_t2(
            t2_0, omega2_0, moments0.dt_rms, moments0.domega_rms, moments0.n_photons, beta, alpha, z
        )

    n_steps = max(1, math.ceil(segment.length / scenario.numerics.dz - 1e-9))
    dz = segment.length / n_steps
    record_steps = max(1, round(scenario.numerics.record_every / dz))
    pairs = [(0.0, total_t2(state), closed(0.0))]
    moments = moments0
    for k in range(1, n_steps + 1):
        z = k * dz
        moments_next = replace(moments0, n_photons=moments0.n_photons * math.exp(-alpha * z))
        state = advance(state, dz, beta, alpha, moments, moments_next)
        moments = moments_next
        if k % record_steps == 0 or k == n_steps:
            pairs.append((z, total_t2(state), closed(z)))
    return pairs


def compare_with_closed_form(
    scenario: Scenario, tolerance: float = DEFAULT_COMPARISON_TOLERANCE, regime: AnalyticRegime | None = None
) -> ComparisonResult:
    regime = regime or scenario.regime
    if regime is None:
        raise ConfigurationError(f"Scenario '{scenario.name}' does not name an analytic regime")
    _check_regime(scenario, regime)
    alpha = _uniform_alpha(scenario)
    log.info(f"Comparing '{scenario.name}' against the {regime} closed form")

    if regime == AnalyticRegime.FROZEN_SOLITON:
        pairs = _frozen_soliton_pairs(scenario, alpha)
    else:
        pairs = _linear_pairs(scenario, regime, alpha)

    worst, worst_z = _deviations(pairs)
    return ComparisonResult(
        regime=regime, max_relative_deviation=worst, worst_z=worst_z, samples=len(pairs), tolerance=tolerance
    )
