"""
Symmetric split-step Fourier integrator of

    i dA/dz = (beta/2) d^2A/dt^2 - kappa |A|^2 A - (i alpha / 2) A

with the timing-jitter cascade advanced alongside, one step at a time.
"""

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
import scipy.fft

from src.errors import ConfigurationError, NumericalFailureError
from src.logger import log
from src.physics.fiber import FiberLink, FiberSegment, adiabaticity_report, soliton_period
from src.physics.grid import Envelope, spectrum_shifted
from src.physics.jitter import JitterReport, JitterState, advance, report, total_omega2, total_t2
from src.physics.moments import PulseMoments, coherent_jitter_init, measure, uncertainty_product_ok

STEPS_PER_SOLITON_PERIOD = 200
EDGE_FRACTION_LIMIT = 1e-6
_Z_EPS = 1e-9  # m


@dataclass(frozen=True)
class StepControl:
    dz: float  # m
    record_every: float  # m
    snapshots: bool = False

    def __post_init__(self):
        if not self.dz > 0:
            raise ConfigurationError(f"dz must be positive, got {self.dz}")
        if self.dz > self.record_every:
            raise ConfigurationError(f"dz = {self.dz} m exceeds record_every = {self.record_every} m")

    def halved(self) -> "StepControl":
        return StepControl(dz=self.dz / 2, record_every=self.record_every, snapshots=self.snapshots)

    def check_soliton_period(self, min_period: float) -> None:
        limit = min_period / STEPS_PER_SOLITON_PERIOD
        if self.dz > limit:
            raise ConfigurationError(
                f"dz = {self.dz} m is too coarse: the shortest soliton period is {min_period:.4g} m, "
                f"so dz must not exceed {limit:.4g} m"
            )


@dataclass
class PropagationRecord:
    z: float
    moments: PulseMoments
    jitter: JitterState
    report: JitterReport
    adiabaticity: float | None = None
    intensity: np.ndarray | None = field(default=None, repr=False)
    spectrum: np.ndarray | None = field(default=None, repr=False)


def step(envelope: Envelope, segment: FiberSegment, z_local: float, dz: float, z_offset: float = 0.0) -> Envelope:
    """
    One symmetric step: half linear (frequency domain), full Kerr (time domain), half linear.

    Loss sits inside the linear operator, so N decays exactly as exp(-alpha dz).
    """
    if not dz > 0:
        raise ConfigurationError(f"Step size must be positive, got {dz}")
    if z_local + dz > segment.length * (1 + 1e-12) + _Z_EPS:
        raise ConfigurationError(f"Step [{z_local}, {z_local + dz}] m leaves the {segment.length} m segment")

    omega = envelope.grid.omega
    beta_mid = segment.beta(min(z_local + 0.5 * dz, segment.length))
    half_linear = np.exp(0.25j * beta_mid * omega**2 * dz - 0.25 * segment.alpha * dz)

    field_t = scipy.fft.fft(half_linear * scipy.fft.ifft(envelope.samples))
    if segment.kappa:
        field_t = field_t * np.exp(1j * segment.kappa * np.abs(field_t) ** 2 * dz)
    field_t = scipy.fft.fft(half_linear * scipy.fft.ifft(field_t))

    result = Envelope(envelope.grid, field_t)
    if not result.is_finite():
        raise NumericalFailureError("Field became non-finite", z=z_offset + z_local + dz)
    return result


def estimate_min_soliton_period(link: FiberLink, tau0: float, n0: float, samples: int = 65) -> float:
    """
    Shortest soliton period expected along the anomalous-dispersion, nonlinear segments.

    Uses the launched width at z = 0 and the adiabatic width 2|beta|/(kappa N) elsewhere.
    Normal-dispersion and linear segments do not constrain the step.
    """
    periods = []
    start = 0.0
    for index, segment in enumerate(link.segments):
        if segment.kappa > 0:
            for z_local in np.linspace(0.0, segment.length, samples):
                beta = segment.beta(z_local)
                if beta >= 0:
                    continue
                n = n0 * math.exp(-link.accumulated_loss(start + z_local))
                periods.append(soliton_period(beta, 2.0 * abs(beta) / (segment.kappa * n)))
        start += segment.length
    first = link.segments[0]
    if first.beta(0.0) < 0 and first.kappa > 0:
        periods.append(soliton_period(first.beta(0.0), tau0))
    return min(periods) if periods else math.inf


class Propagator:
    """Walks an envelope through a fiber link, recording moments and jitter."""

    def __init__(
        self,
        link: FiberLink,
        control: StepControl,
        engine: Callable[..., JitterState] = advance,
        enforce_step_limit: bool = True,
    ):
        self.link = link
        self.control = control
        self.engine = engine
        self.enforce_step_limit = enforce_step_limit
        self._edge_warned = False

    def _record(self, z: float, envelope: Envelope, moments: PulseMoments, state: JitterState) -> PropagationRecord:
        jitter_report = report(state, moments)
        if not uncertainty_product_ok(total_t2(state), total_omega2(state), moments.n_photons):
            log.warning(f"Uncertainty floor <T^2><O^2> >= 1/(4N^2) violated at z = {z:.3f} m")
        if not self._edge_warned and envelope.edge_fraction() > EDGE_FRACTION_LIMIT:
            log.warning(f"Pulse reaches the time-window edges at z = {z:.3f} m, consider a wider window_ps")
            self._edge_warned = True
        if abs(moments.centroid - envelope.grid.t_center) > moments.dt_rms / 100:
            log.debug(f"Pulse centroid drifted to {moments.centroid:.4g} ps at z = {z:.3f} m")
        adiabaticity = None
        index, z_local = self.link.locate(z)
        segment = self.link.segments[index]
        if segment.beta(z_local) < 0:
            tau = 2.0 * math.sqrt(3.0) * moments.dt_rms / math.pi
            adiabaticity = adiabaticity_report(self.link, z, tau).min_ratio
        return PropagationRecord(
            z=z,
            moments=moments,
            jitter=state,
            report=jitter_report,
            adiabaticity=adiabaticity,
            intensity=envelope.intensity.copy() if self.control.snapshots else None,
            spectrum=np.abs(spectrum_shifted(envelope)) ** 2 if self.control.snapshots else None,
        )

    def propagate(self, envelope: Envelope, jitter_state: JitterState | None = None) -> list[PropagationRecord]:
        """
        Propagate through every segment.

        The jitter cascade is advanced every step with the moments at both step ends;
        records are taken every ``record_every`` metres, at segment ends and at the link end.
        """
        self._edge_warned = False
        moments = measure(envelope)
        if self.enforce_step_limit:
            tau0 = 2.0 * math.sqrt(3.0) * moments.dt_rms / math.pi
            self.control.check_soliton_period(estimate_min_soliton_period(self.link, tau0, moments.n_photons))
        state = jitter_state if jitter_state is not None else coherent_jitter_init(moments)

        records = [self._record(0.0, envelope, moments, state)]
        since_record = 0.0
        z_start = 0.0
        for index, segment in enumerate(self.link.segments):
            n_steps = max(1, math.ceil(segment.length / self.control.dz - 1e-9))
            dz = segment.length / n_steps
            name = segment.name or "unnamed"
            log.debug(f"Segment {index} ({name}): {segment.length:.4g} m in {n_steps} steps of {dz:.4g} m")
            for k in range(n_steps):
                z_local = k * dz
                envelope = step(envelope, segment, z_local, dz, z_offset=z_start)
                moments_next = measure(envelope)
                z_end_local = segment.length if k == n_steps - 1 else (k + 1) * dz
                beta_avg = (segment.dispersion.integral(z_end_local) - segment.dispersion.integral(z_local)) / dz
                state = self.engine(state, dz, beta_avg, segment.alpha, moments, moments_next)
                moments = moments_next
                since_record += dz

                last_step = k == n_steps - 1
                if since_record >= self.control.record_every - _Z_EPS or last_step:
                    records.append(self._record(z_start + z_end_local, envelope, moments, state))
                    since_record = 0.0
            z_start += segment.length

        final = records[-1].report
        log.info(
            f"Propagated {self.link.total_length:.4g} m: R = {final.squeezing_ratio:.4f} "
            f"({final.squeezing_ratio_db:+.2f} dB), N = {records[-1].moments.n_photons:.4g}"
        )
        return records


def propagate(
    envelope: Envelope,
    link: FiberLink,
    control: StepControl,
    jitter_state: JitterState | None = None,
    engine: Callable[..., JitterState] = advance,
) -> list[PropagationRecord]:
    return Propagator(link, control, engine=engine).propagate(envelope, jitter_state)
