"""
SolitonJitterApp module handling the run, sweep and compare-analytic commands.
"""

import asyncio
from argparse import Namespace
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from src.config import SolitonJitterConfig
from src.errors import AcceptanceError
from src.logger import configure_worker_logging, log
from src.scenario.comparison import DEFAULT_COMPARISON_TOLERANCE, compare_with_closed_form
from src.scenario.model import load_scenario, read_scenario_sections
from src.scenario.output import (
    COMPARISON_FILE,
    SWEEP_FILE,
    summary_lines,
    write_comparison,
    write_run_output,
    write_sweep_csv,
)
from src.scenario.runner import RunOutput, run_scenario
from src.scenario.sweep import SweepRow, run_sweep_point, sweep_points, validate_template


class SolitonJitterApp:
    """
    Runs scenarios and writes their tables; one method per command.
    """

    def __init__(self, config: SolitonJitterConfig, args: Namespace):
        self.config = config
        self.args = args

    def _output_dir(self, default_name: str) -> Path:
        out = getattr(self.args, "out", None)
        return Path(out) if out else Path(self.config.output_dir) / default_name

    def run(self) -> RunOutput:
        """Propagate one scenario and write records.csv and summary.txt."""
        scenario = load_scenario(self.args.scenario)
        output = run_scenario(
            scenario,
            dz=getattr(self.args, "dz", None),
            check_convergence=getattr(self.args, "check_convergence", False),
            tolerance=self.config.convergence_tolerance,
        )
        for line in summary_lines(output):
            log.info(line)
        write_run_output(self._output_dir(scenario.name), output)
        return output

    async def sweep(self) -> list[SweepRow]:
        """Run every grid point in a process pool; rows keep the grid order."""
        sections = read_scenario_sections(self.args.template)
        parameters = self.args.param
        points = sweep_points(parameters)
        validate_template(sections, points)
        names = [p.name for p in parameters]
        log.info(f"Sweeping {', '.join(names)} over {len(points)} point(s) with {self.config.sweep_workers} worker(s)")

        rows: list[SweepRow] = []
        if points:
            loop = asyncio.get_running_loop()
            worker_logging = (self.config.log_timezone, self.config.log_path, getattr(self.args, "verbose", False))
            with ProcessPoolExecutor(
                max_workers=self.config.sweep_workers,
                initializer=configure_worker_logging,
                initargs=worker_logging,
            ) as pool:
                futures = [loop.run_in_executor(pool, run_sweep_point, sections, point) for point in points]
                rows = list(await asyncio.gather(*futures))

        template_name = Path(self.args.template).stem
        path = self._output_dir(f"{template_name}_sweep") / SWEEP_FILE
        write_sweep_csv(path, names, rows)
        log.info(f"Sweep table written to {path}")
        return rows

    def compare_analytic(self):
        """Compare the jitter engine with the matching closed form; fails above the tolerance."""
        scenario = load_scenario(self.args.scenario)
        tolerance = getattr(self.args, "tolerance", None) or DEFAULT_COMPARISON_TOLERANCE
        result = compare_with_closed_form(scenario, tolerance=tolerance)
        log.info(result.as_line())
        write_comparison(self._output_dir(scenario.name) / COMPARISON_FILE, result)
        if not result.passed:
            raise AcceptanceError(
                f"{result.regime}: relative deviation {result.max_relative_deviation:.3e} "
                f"at z = {result.worst_z:.4g} m exceeds {result.tolerance:g}"
            )
        return result
