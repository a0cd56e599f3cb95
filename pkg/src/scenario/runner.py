"""
End-to-end scenario execution: build the launch pulse, propagate it through the
link and collect the records and the derived figures reported for a run.
"""

import math
from dataclasses import dataclass, field

from src.errors import DomainError
from src.logger import log
from src.physics.analytic import adiabatic_ideal
from src.physics.jitter import JitterReport
from src.physics.moments import measure
from src.physics.propagator import PropagationRecord, Propagator
from src.scenario.model import Scenario

DEFAULT_CONVERGENCE_TOLERANCE = 0.005


@dataclass(frozen=True)
class ConvergenceCheck:
    dz: float  # m
    dz_halved: float  # m
    squeezing_ratio: float
    squeezing_ratio_halved: float
    tolerance: float

    @property
    def relative_change(self) -> float:
        return abs(self.squeezing_ratio - self.squeezing_ratio_halved) / abs(self.squeezing_ratio_halved)

    @property
    def passed(self) -> bool:
        return self.relative_change <= self.tolerance


@dataclass
class RunOutput:
    scenario: Scenario
    dz: float
    records: list[PropagationRecord] = field(repr=False)
    ideal_bandwidth_narrowing: float | None = None
    convergence: ConvergenceCheck | None = None

    @property
    def final(self) -> JitterReport:
        return self.records[-1].report

    @property
    def t2_initial(self) -> float:
        return self.records[0].report.t2_total

    @property
    def bandwidth_narrowing(self) -> float:
        """domega(0) / domega(end)."""
        return self.records[0].moments.domega_rms / self.records[-1].moments.domega_rms

    @property
    def min_adiabaticity(self) -> float | None:
        ratios = [r.adiabaticity for r in self.records if r.adiabaticity is not None]
        return min(ratios) if ratios else None

    @property
    def normalized_components(self) -> dict[str, float]:
        """Jitter contributions at the link end divided by <T^2(0)>."""
        t2_0 = self.t2_initial
        final = self.final
        return {
            "diffusive": final.t2_diffusive / t2_0,
            "chirp": final.t2_chirp / t2_0,
            "gordon_haus": final.t2_gordon_haus / t2_0,
            "total": final.t2_total / t2_0,
        }


def propagate_scenario(scenario: Scenario, dz: float | None = None) -> list[PropagationRecord]:
    grid = scenario.numerics.grid()
    envelope = scenario.pulse.envelope(grid)
    log.debug(f"Grid: {grid.n_points} points over {grid.window:.4g} ps (dt = {grid.dt:.4g} ps)")
    initial_state = scenario.statistics.initial_state(measure(envelope))
    control = scenario.numerics.control(snapshots=scenario.snapshots, dz=dz)
    return Propagator(scenario.link, control).propagate(envelope, initial_state)


def _ideal_narrowing(scenario: Scenario) -> float | None:
    first = scenario.link.segments[0]
    try:
        return adiabatic_ideal(first, scenario.pulse.n_photons).bandwidth_narrowing()
    except DomainError:
        return None


def run_scenario(
    scenario: Scenario,
    dz: float | None = None,
    check_convergence: bool = False,
    tolerance: float = DEFAULT_CONVERGENCE_TOLERANCE,
) -> RunOutput:
    dz_used = scenario.numerics.dz if dz is None else dz
    log.info(f"Running scenario '{scenario.name}' over {scenario.link.total_length:.4g} m with dz = {dz_used:g} m")
    output = RunOutput(
        scenario=scenario,
        dz=dz_used,
        records=propagate_scenario(scenario, dz_used),
        ideal_bandwidth_narrowing=_ideal_narrowing(scenario),
    )

    if check_convergence:
        log.info(f"Convergence check: repeating with dz = {dz_used / 2:g} m")
        halved = propagate_scenario(scenario, dz_used / 2)
        output.convergence = ConvergenceCheck(
            dz=dz_used,
            dz_halved=dz_used / 2,
            squeezing_ratio=output.final.squeezing_ratio,
            squeezing_ratio_halved=halved[-1].report.squeezing_ratio,
            tolerance=tolerance,
        )
        change = output.convergence.relative_change
        if output.convergence.passed:
            log.info(f"Step halving changed R by {change:.3e} (tolerance {tolerance:g})")
        else:
            log.warning(f"Step halving changed R by {change:.3e}, above the tolerance {tolerance:g}")

    if not math.isfinite(output.final.squeezing_ratio):
        log.warning(f"Scenario '{scenario.name}' ended with a non-finite squeezing ratio")
    return output
