"""
Physics module - contains the fiber model, the split-step propagator, pulse moments,
the timing-jitter engine and the closed-form reference results.
"""

from src.physics.fiber import FiberLink, FiberSegment
from src.physics.grid import Envelope, TimeGrid
from src.physics.jitter import JitterReport, JitterState
from src.physics.moments import PulseMoments
from src.physics.propagator import PropagationRecord, Propagator, StepControl

__all__ = [
    "Envelope",
    "FiberLink",
    "FiberSegment",
    "JitterReport",
    "JitterState",
    "PropagationRecord",
    "Propagator",
    "PulseMoments",
    "StepControl",
    "TimeGrid",
]
