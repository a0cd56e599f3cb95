"""
Parameter sweeps over a scenario template.

A parameter is written ``section.key=lo:hi:n`` (``n`` evenly spaced values,
``n = 0`` for none). Several parameters span their Cartesian product in the
order given; every point is an independent run.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from src.errors import ConfigurationError
from src.scenario.model import Sections, apply_overrides, build_scenario
from src.scenario.runner import run_scenario

SWEEP_RESULT_COLUMNS = (
    "R_db",
    "T2_diff_rel",
    "T2_chirp_rel",
    "T2_gh_rel",
    "T2_total_rel",
    "bandwidth_narrowing",
    "min_adiabaticity",
)


@dataclass(frozen=True)
class SweepParameter:
    name: str
    low: float
    high: float
    count: int

    @classmethod
    def parse(cls, text: str) -> "SweepParameter":
        name, sep, span = text.partition("=")
        name = name.strip().lower()
        if not sep or "." not in name:
            raise ConfigurationError(f"Expected section.key=lo:hi:n, got '{text}'")
        parts = span.split(":")
        if len(parts) != 3:
            raise ConfigurationError(f"Expected a range lo:hi:n, got '{span}'")
        try:
            low, high, count = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError:
            raise ConfigurationError(f"Invalid range '{span}'")
        if not (math.isfinite(low) and math.isfinite(high)):
            raise ConfigurationError(f"Sweep range for {name} must be finite")
        if count < 0:
            raise ConfigurationError(f"Sweep count for {name} must be non-negative, got {count}")
        if count == 1 and low != high:
            raise ConfigurationError(f"A single-point sweep of {name} needs lo == hi")
        return cls(name=name, low=low, high=high, count=count)

    @property
    def values(self) -> list[float]:
        return [float(v) for v in np.linspace(self.low, self.high, self.count)]


def sweep_points(parameters: list[SweepParameter]) -> list[dict[str, float]]:
    names = [p.name for p in parameters]
    if len(set(names)) != len(names):
        raise ConfigurationError("Each sweep parameter may be given only once")
    return [dict(zip(names, values)) for values in itertools.product(*(p.values for p in parameters))]


@dataclass(frozen=True)
class SweepRow:
    parameters: tuple[float, ...]
    r_db: float
    t2_diff_rel: float
    t2_chirp_rel: float
    t2_gh_rel: float
    t2_total_rel: float
    bandwidth_narrowing: float
    min_adiabaticity: float

    def results(self) -> tuple[float, ...]:
        return (
            self.r_db,
            self.t2_diff_rel,
            self.t2_chirp_rel,
            self.t2_gh_rel,
            self.t2_total_rel,
            self.bandwidth_narrowing,
            self.min_adiabaticity,
        )


def validate_template(sections: Sections, points: list[dict[str, float]]) -> None:
    """Build the first point up front so a bad template fails before any worker starts."""
    if points:
        build_scenario(apply_overrides(sections, points[0]))


def run_sweep_point(sections: Sections, overrides: dict[str, float]) -> SweepRow:
    """One sweep run; module-level so a process pool can pickle it."""
    output = run_scenario(build_scenario(apply_overrides(sections, overrides)))
    components = output.normalized_components
    adiabaticity = output.min_adiabaticity
    return SweepRow(
        parameters=tuple(overrides.values()),
        r_db=output.final.squeezing_ratio_db,
        t2_diff_rel=components["diffusive"],
        t2_chirp_rel=components["chirp"],
        t2_gh_rel=components["gordon_haus"],
        t2_total_rel=components["total"],
        bandwidth_narrowing=output.bandwidth_narrowing,
        min_adiabaticity=math.nan if adiabaticity is None else adiabaticity,
    )
