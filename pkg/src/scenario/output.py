"""
Tables and text written for a run, a sweep or a comparison.

Every float goes through ``fmt`` (9 significant digits) and rows are written in
record order, so identical scenarios give byte-identical files.
"""

import csv
from pathlib import Path

import numpy as np

from src.logger import log
from src.physics.grid import TimeGrid
from src.physics.propagator import PropagationRecord
from src.physics.units import db_per_km_from_alpha
from src.scenario.comparison import ComparisonResult
from src.scenario.runner import RunOutput
from src.scenario.sweep import SWEEP_RESULT_COLUMNS, SweepRow

RECORDS_HEADER = (
    "z_m",
    "N",
    "dt_ps",
    "chirp",
    "domega_per_ps",
    "T2_total_ps2",
    "T2_diff_ps2",
    "T2_chirp_ps2",
    "T2_gh_ps2",
    "Omega2_per_ps2",
    "SQL_T2_ps2",
    "HL_T2_ps2",
    "R",
    "R_db",
)
RECORDS_FILE = "records.csv"
SUMMARY_FILE = "summary.txt"
INTENSITY_FILE = "intensity.csv"
SPECTRUM_FILE = "spectrum.csv"
SWEEP_FILE = "sweep.csv"
COMPARISON_FILE = "comparison.txt"


def fmt(value: float) -> str:
    return f"{value:.9g}"


def record_row(record: PropagationRecord) -> list[str]:
    moments, report = record.moments, record.report
    values = (
        record.z,
        moments.n_photons,
        moments.dt_rms,
        moments.chirp,
        moments.domega_rms,
        report.t2_total,
        report.t2_diffusive,
        report.t2_chirp,
        report.t2_gordon_haus,
        report.omega2_total,
        report.sql_t2,
        report.heisenberg_t2,
        report.squeezing_ratio,
        report.squeezing_ratio_db,
    )
    return [fmt(v) for v in values]


def _writer(handle):
    return csv.writer(handle, lineterminator="\n")


def write_records_csv(path: Path, records: list[PropagationRecord]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = _writer(f)
        writer.writerow(RECORDS_HEADER)
        for record in records:
            writer.writerow(record_row(record))


def _write_matrix(path: Path, axis_name: str, axis: np.ndarray, records: list[PropagationRecord], attr: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = _writer(f)
        writer.writerow([f"z_m\\{axis_name}", *(fmt(x) for x in axis)])
        for record in records:
            writer.writerow([fmt(record.z), *(fmt(x) for x in getattr(record, attr))])


def write_snapshots(out_dir: Path, grid: TimeGrid, records: list[PropagationRecord]) -> None:
    """|A(z,t)|^2 and |a(z,w)|^2 (ascending w) at every record point."""
    _write_matrix(out_dir / INTENSITY_FILE, "t_ps", grid.t, records, "intensity")
    _write_matrix(out_dir / SPECTRUM_FILE, "omega_per_ps", grid.omega_shifted, records, "spectrum")


def summary_lines(output: RunOutput) -> list[str]:
    scenario = output.scenario
    final = output.final
    lines = [
        f"scenario = {scenario.name}",
        f"length_m = {fmt(scenario.link.total_length)}",
        f"segments = {', '.join(s.name or '?' for s in scenario.link.segments)}",
    ]
    for segment in scenario.link.segments:
        lines.append(
            f"segment.{segment.name}.length_m = {fmt(segment.length)}; "
            f"alpha_db_per_km = {fmt(db_per_km_from_alpha(segment.alpha))}; kappa_ps_per_m = {fmt(segment.kappa)}"
        )
    lines += [
        f"n_photons_initial = {fmt(output.records[0].moments.n_photons)}",
        f"n_photons_final = {fmt(output.records[-1].moments.n_photons)}",
        f"dz_m = {fmt(output.dz)}",
        f"records = {len(output.records)}",
        f"R = {fmt(final.squeezing_ratio)}",
        f"R_db = {fmt(final.squeezing_ratio_db)}",
        f"bandwidth_narrowing = {fmt(output.bandwidth_narrowing)}",
    ]
    if output.ideal_bandwidth_narrowing is not None:
        lines.append(f"ideal_bandwidth_narrowing = {fmt(output.ideal_bandwidth_narrowing)}")
    if output.min_adiabaticity is not None:
        lines.append(f"min_adiabaticity = {fmt(output.min_adiabaticity)}")
    for name, value in output.normalized_components.items():
        lines.append(f"T2_{name}_rel = {fmt(value)}")
    if output.convergence is not None:
        check = output.convergence
        lines += [
            f"convergence.dz_halved_m = {fmt(check.dz_halved)}",
            f"convergence.R_halved = {fmt(check.squeezing_ratio_halved)}",
            f"convergence.relative_change = {fmt(check.relative_change)}",
            f"convergence.passed = {str(check.passed).lower()}",
        ]
    return lines


def write_summary(path: Path, output: RunOutput) -> None:
    path.write_text("\n".join(summary_lines(output)) + "\n", encoding="utf-8")


def write_run_output(out_dir: Path, output: RunOutput) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    write_records_csv(out_dir / RECORDS_FILE, output.records)
    write_summary(out_dir / SUMMARY_FILE, output)
    if output.scenario.snapshots:
        write_snapshots(out_dir, output.scenario.numerics.grid(), output.records)
    log.info(f"Results written to {out_dir}")


def write_sweep_csv(path: Path, parameter_names: list[str], rows: list[SweepRow]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = _writer(f)
        writer.writerow([*parameter_names, *SWEEP_RESULT_COLUMNS])
        for row in rows:
            writer.writerow([fmt(v) for v in (*row.parameters, *row.results())])


def write_comparison(path: Path, result: ComparisonResult) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(result.as_line() + "\n", encoding="utf-8")
