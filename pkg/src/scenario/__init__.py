"""
Scenario module - scenario files, runs, sweeps, closed-form comparisons and their output tables.
"""

from src.scenario.model import AnalyticRegime, Scenario, load_scenario
from src.scenario.runner import RunOutput, run_scenario

__all__ = ["AnalyticRegime", "RunOutput", "Scenario", "load_scenario", "run_scenario"]
