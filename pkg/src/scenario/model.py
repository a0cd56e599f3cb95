"""
Scenario files: a flat, sectioned key-value format, datasheet units on disk and
canonical units (ps, m) in memory.

    [scenario]          name, description, regime (optional: linear-nondispersive,
                        linear-dispersive, frozen-soliton)
    [pulse]             shape (sech | gaussian), tau_ps, wavelength_nm,
                        energy_pj | n_photons (number or "soliton"), chirp_q_per_ps2 (gaussian only)
    [link]              defaults inherited by every segment: alpha_db_per_km,
                        n2_m2_per_w, a_eff_um2, nonlinear
    [link.<segment>]    one section per segment, in file order: length_m, dispersion
                        (constant | increasing), beta_ps2_per_km (the end value for
                        increasing), l_beta_m, auto_compensate, plus any [link] default
    [numerics]          n_points, window_ps, dz_m, record_every_m
    [statistics]        kind (coherent | jointly-gaussian), big_b_per_ps, small_b_per_ps
    [outputs]           snapshots

Comments start with ``#`` or ``;``. Keys are case-insensitive.
"""

import configparser
import math
from dataclasses import dataclass
from enum import StrEnum
from pathlib import Path

from src.errors import ConfigurationError, DomainError
from src.logger import log
from src.physics.analytic import JointlyGaussianState, gaussian_jitter_init
from src.physics.fiber import (
    ConstantDispersion,
    DispersionIncreasing,
    DispersionProfile,
    FiberLink,
    FiberSegment,
    compensating_length,
)
from src.physics.grid import (
    GAUSSIAN_MIN_WINDOW_OVER_TAU,
    MIN_WINDOW_OVER_TAU,
    Envelope,
    TimeGrid,
    make_gaussian_pulse,
    make_sech_soliton,
)
from src.physics.jitter import JitterState
from src.physics.moments import PulseMoments, coherent_jitter_init
from src.physics.propagator import StepControl
from src.physics.units import (
    alpha_from_db_per_km,
    beta_from_ps2_per_km,
    kappa_from_fiber,
    photon_number_from_energy,
    soliton_photon_number,
)

# Bundled scenarios live at the project root, next to src/
SCENARIO_DIR = Path(__file__).resolve().parents[2] / "scenarios"
SCENARIO_SUFFIX = ".ini"
LINK_PREFIX = "link."

Sections = dict[str, dict[str, str]]

_SEGMENT_DEFAULT_KEYS = {"alpha_db_per_km", "n2_m2_per_w", "a_eff_um2", "nonlinear"}
_ALLOWED_KEYS = {
    "scenario": {"name", "description", "regime"},
    "pulse": {"shape", "tau_ps", "wavelength_nm", "energy_pj", "n_photons", "chirp_q_per_ps2"},
    "link": _SEGMENT_DEFAULT_KEYS,
    "numerics": {"n_points", "window_ps", "dz_m", "record_every_m"},
    "statistics": {"kind", "big_b_per_ps", "small_b_per_ps"},
    "outputs": {"snapshots"},
}
_SEGMENT_KEYS = _SEGMENT_DEFAULT_KEYS | {"length_m", "dispersion", "beta_ps2_per_km", "l_beta_m", "auto_compensate"}
_REQUIRED_SECTIONS = ("pulse", "numerics")


class PulseShape(StrEnum):
    SECH = "sech"
    GAUSSIAN = "gaussian"


class StatisticsKind(StrEnum):
    COHERENT = "coherent"
    JOINTLY_GAUSSIAN = "jointly-gaussian"


class AnalyticRegime(StrEnum):
    LINEAR_NONDISPERSIVE = "linear-nondispersive"
    LINEAR_DISPERSIVE = "linear-dispersive"
    FROZEN_SOLITON = "frozen-soliton"


class DispersionKind(StrEnum):
    CONSTANT = "constant"
    INCREASING = "increasing"


@dataclass(frozen=True)
class PulseSpec:
    shape: PulseShape
    tau: float  # ps
    n_photons: float
    wavelength: float  # m
    chirp_q: float = 0.0  # 1/ps^2

    def envelope(self, grid: TimeGrid) -> Envelope:
        match self.shape:
            case PulseShape.SECH:
                return make_sech_soliton(grid, self.tau, self.n_photons)
            case PulseShape.GAUSSIAN:
                return make_gaussian_pulse(grid, self.tau, self.n_photons, chirp_q=self.chirp_q)


@dataclass(frozen=True)
class NumericsSpec:
    n_points: int
    window: float  # ps
    dz: float  # m
    record_every: float  # m

    def grid(self) -> TimeGrid:
        return TimeGrid.from_window(self.n_points, self.window)

    def control(self, snapshots: bool = False, dz: float | None = None) -> StepControl:
        return StepControl(dz=self.dz if dz is None else dz, record_every=self.record_every, snapshots=snapshots)


@dataclass(frozen=True)
class StatisticsSpec:
    kind: StatisticsKind = StatisticsKind.COHERENT
    big_b: float | None = None  # 1/ps
    small_b: float | None = None  # 1/ps

    def initial_state(self, moments: PulseMoments) -> JitterState:
        if self.kind == StatisticsKind.COHERENT:
            return coherent_jitter_init(moments)
        state = JointlyGaussianState(n_photons=round(moments.n_photons), big_b=self.big_b, small_b=self.small_b)
        expected = self.big_b**2 + (1.0 - 1.0 / state.n_photons) * self.small_b**2
        if not math.isclose(expected, moments.domega2, rel_tol=1e-2):
            log.warning(
                f"Jointly Gaussian bandwidth B^2 + (1 - 1/N) b^2 = {expected:.4g} /ps^2 differs from "
                f"the pulse bandwidth {moments.domega2:.4g} /ps^2"
            )
        return gaussian_jitter_init(state)


@dataclass(frozen=True)
class Scenario:
    name: str
    pulse: PulseSpec
    link: FiberLink
    numerics: NumericsSpec
    statistics: StatisticsSpec
    snapshots: bool = False
    regime: AnalyticRegime | None = None
    description: str = ""


def resolve_scenario_path(name: str) -> Path:
    """Accept a path or the name of a bundled scenario."""
    path = Path(name)
    if path.is_file():
        return path
    bundled = SCENARIO_DIR / (name if name.endswith(SCENARIO_SUFFIX) else name + SCENARIO_SUFFIX)
    if bundled.is_file():
        return bundled
    raise ConfigurationError(f"Scenario file not found: {name}")


def parse_sections(text: str, source: str = "<string>") -> Sections:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"), interpolation=None)
    try:
        parser.read_string(text, source=source)
    except configparser.Error as e:
        raise ConfigurationError(f"Malformed scenario {source}: {e}") from e
    return {section: dict(parser[section]) for section in parser.sections()}


def read_scenario_sections(path: str | Path) -> Sections:
    path = resolve_scenario_path(str(path))
    return parse_sections(path.read_text(encoding="utf-8"), source=str(path))


def load_scenario(path: str | Path) -> Scenario:
    path = resolve_scenario_path(str(path))
    return build_scenario(read_scenario_sections(path), default_name=path.stem)


def apply_overrides(sections: Sections, overrides: dict[str, float]) -> Sections:
    """Return a copy with ``section.key`` entries replaced; the section must exist."""
    updated = {name: dict(values) for name, values in sections.items()}
    for address, value in overrides.items():
        section, _, key = address.lower().rpartition(".")
        if not section or section not in updated:
            raise ConfigurationError(f"Unknown scenario section in parameter '{address}'")
        updated[section][key] = format(value, ".17g")
    return updated


def _check_keys(section: str, values: dict[str, str], allowed: set[str]) -> None:
    unknown = sorted(set(values) - allowed)
    if unknown:
        raise ConfigurationError(f"Unknown key(s) in [{section}]: {', '.join(unknown)}")


def _float(section: str, values: dict[str, str], key: str, default: float | None = None) -> float:
    raw = values.get(key)
    if raw is None:
        if default is None:
            raise ConfigurationError(f"Missing '{key}' in [{section}]")
        return default
    try:
        value = float(raw)
    except ValueError:
        raise ConfigurationError(f"[{section}] {key} must be a number, got '{raw}'")
    if not math.isfinite(value):
        raise ConfigurationError(f"[{section}] {key} must be finite, got '{raw}'")
    return value


def _int(section: str, values: dict[str, str], key: str) -> int:
    raw = values.get(key)
    if raw is None:
        raise ConfigurationError(f"Missing '{key}' in [{section}]")
    try:
        return int(raw)
    except ValueError:
        raise ConfigurationError(f"[{section}] {key} must be an integer, got '{raw}'")


def _bool(section: str, values: dict[str, str], key: str, default: bool = False) -> bool:
    raw = values.get(key)
    if raw is None:
        return default
    lowered = raw.strip().lower()
    if lowered in ("true", "yes", "on", "1"):
        return True
    if lowered in ("false", "no", "off", "0"):
        return False
    raise ConfigurationError(f"[{section}] {key} must be a boolean, got '{raw}'")


def _enum(section: str, values: dict[str, str], key: str, enum_type, default=None):
    raw = values.get(key)
    if raw is None:
        if default is None:
            raise ConfigurationError(f"Missing '{key}' in [{section}]")
        return default
    try:
        return enum_type(raw.strip().lower())
    except ValueError:
        options = ", ".join(member.value for member in enum_type)
        raise ConfigurationError(f"[{section}] {key} must be one of {options}, got '{raw}'")


def _build_dispersion(section: str, values: dict[str, str], length: float) -> DispersionProfile:
    beta = beta_from_ps2_per_km(_float(section, values, "beta_ps2_per_km"))
    match _enum(section, values, "dispersion", DispersionKind, DispersionKind.CONSTANT):
        case DispersionKind.CONSTANT:
            return ConstantDispersion(beta)
        case DispersionKind.INCREASING:
            return DispersionIncreasing(beta_end=beta, length=length, l_beta=_float(section, values, "l_beta_m"))


def _build_segment(section: str, values: dict[str, str], wavelength: float, length: float) -> FiberSegment:
    alpha = alpha_from_db_per_km(_float(section, values, "alpha_db_per_km", 0.0))
    kappa = 0.0
    if _bool(section, values, "nonlinear", True):
        n2 = _float(section, values, "n2_m2_per_w")
        a_eff = _float(section, values, "a_eff_um2") * 1e-12
        kappa = kappa_from_fiber(n2, a_eff, wavelength)
    return FiberSegment(
        length=length,
        alpha=alpha,
        kappa=kappa,
        dispersion=_build_dispersion(section, values, length),
        name=section.removeprefix(LINK_PREFIX),
    )


def _build_link(sections: Sections, wavelength: float) -> FiberLink:
    defaults = sections.get("link", {})
    names = [name for name in sections if name.startswith(LINK_PREFIX)]
    if not names:
        raise ConfigurationError("A scenario needs at least one [link.<segment>] section")

    segments: list[FiberSegment] = []
    for position, name in enumerate(names):
        values = {**defaults, **sections[name]}
        _check_keys(name, sections[name], _SEGMENT_KEYS)
        if _bool(name, values, "auto_compensate"):
            if position != len(names) - 1 or not segments:
                raise ConfigurationError(f"[{name}] auto_compensate is only allowed on the last of several segments")
            if _enum(name, values, "dispersion", DispersionKind, DispersionKind.CONSTANT) != DispersionKind.CONSTANT:
                raise ConfigurationError(f"[{name}] a compensating segment must have constant dispersion")
            beta = beta_from_ps2_per_km(_float(name, values, "beta_ps2_per_km"))
            try:
                length = compensating_length(FiberLink(tuple(segments)), beta)
            except DomainError as e:
                raise ConfigurationError(f"[{name}] {e}") from e
            log.debug(f"Compensating segment '{name}' set to {length:.4g} m")
        else:
            length = _float(name, values, "length_m")
        try:
            segments.append(_build_segment(name, values, wavelength, length))
        except DomainError as e:
            raise ConfigurationError(f"[{name}] {e}") from e
    return FiberLink(tuple(segments))


def _resolve_photon_number(values: dict[str, str], tau: float, wavelength: float, link: FiberLink) -> float:
    has_energy = "energy_pj" in values
    has_number = "n_photons" in values
    if has_energy == has_number:
        raise ConfigurationError("[pulse] needs exactly one of energy_pj and n_photons")
    if has_energy:
        return photon_number_from_energy(_float("pulse", values, "energy_pj") * 1e-12, wavelength)
    if values["n_photons"].strip().lower() == "soliton":
        first = link.segments[0]
        try:
            return soliton_photon_number(first.beta(0.0), tau, first.kappa)
        except DomainError as e:
            raise ConfigurationError(f"[pulse] n_photons = soliton: {e}") from e
    n_photons = _float("pulse", values, "n_photons")
    if not n_photons > 0:
        raise ConfigurationError(f"[pulse] n_photons must be positive, got {n_photons}")
    return n_photons


def build_scenario(sections: Sections, default_name: str = "scenario") -> Scenario:
    """Validate every section and convert datasheet units once."""
    for name in _REQUIRED_SECTIONS:
        if name not in sections:
            raise ConfigurationError(f"Missing section [{name}]")
    for name, values in sections.items():
        if name.startswith(LINK_PREFIX):
            continue
        if name not in _ALLOWED_KEYS:
            raise ConfigurationError(f"Unknown section [{name}]")
        _check_keys(name, values, _ALLOWED_KEYS[name])

    pulse_values = sections["pulse"]
    wavelength = _float("pulse", pulse_values, "wavelength_nm", 1550.0) * 1e-9
    tau = _float("pulse", pulse_values, "tau_ps")
    if not tau > 0:
        raise ConfigurationError(f"[pulse] tau_ps must be positive, got {tau}")
    link = _build_link(sections, wavelength)
    shape = _enum("pulse", pulse_values, "shape", PulseShape, PulseShape.SECH)
    if shape == PulseShape.SECH and "chirp_q_per_ps2" in pulse_values:
        raise ConfigurationError("[pulse] chirp_q_per_ps2 only applies to gaussian pulses")
    pulse = PulseSpec(
        shape=shape,
        tau=tau,
        n_photons=_resolve_photon_number(pulse_values, tau, wavelength, link),
        wavelength=wavelength,
        chirp_q=_float("pulse", pulse_values, "chirp_q_per_ps2", 0.0),
    )

    numerics_values = sections["numerics"]
    numerics = NumericsSpec(
        n_points=_int("numerics", numerics_values, "n_points"),
        window=_float("numerics", numerics_values, "window_ps"),
        dz=_float("numerics", numerics_values, "dz_m"),
        record_every=_float("numerics", numerics_values, "record_every_m"),
    )
    window_factor = MIN_WINDOW_OVER_TAU if pulse.shape == PulseShape.SECH else GAUSSIAN_MIN_WINDOW_OVER_TAU
    try:
        numerics.grid().require_window(tau, factor=window_factor)
        numerics.control()
    except ConfigurationError as e:
        raise ConfigurationError(f"[numerics] {e}") from e

    statistics_values = sections.get("statistics", {})
    kind = _enum("statistics", statistics_values, "kind", StatisticsKind, StatisticsKind.COHERENT)
    statistics = StatisticsSpec(kind=kind)
    if kind == StatisticsKind.JOINTLY_GAUSSIAN:
        statistics = StatisticsSpec(
            kind=kind,
            big_b=_float("statistics", statistics_values, "big_b_per_ps"),
            small_b=_float("statistics", statistics_values, "small_b_per_ps"),
        )

    scenario_values = sections.get("scenario", {})
    regime = None
    if "regime" in scenario_values:
        regime = _enum("scenario", scenario_values, "regime", AnalyticRegime)

    return Scenario(
        name=scenario_values.get("name", default_name),
        pulse=pulse,
        link=link,
        numerics=numerics,
        statistics=statistics,
        snapshots=_bool("outputs", sections.get("outputs", {}), "snapshots"),
        regime=regime,
        description=scenario_values.get("description", ""),
    )
