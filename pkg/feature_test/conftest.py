import pytest

from src.scenario.model import load_scenario
from src.scenario.runner import RunOutput, run_scenario


def pytest_configure():
    from pathlib import Path

    log_dir = Path("log")
    log_dir.mkdir(parents=True, exist_ok=True)
    log_file_path = log_dir / "solitonjitter.log"
    with open(log_file_path, "w") as f:
        f.write("")


@pytest.fixture(scope="session")
def bundled_runs():
    """Full-resolution runs are slow; each bundled scenario is propagated once per session."""
    cache: dict[str, RunOutput] = {}

    def get(name: str) -> RunOutput:
        if name not in cache:
            cache[name] = run_scenario(load_scenario(name))
        return cache[name]

    return get


@pytest.fixture(scope="session")
def reference_run(bundled_runs) -> RunOutput:
    return bundled_runs("reference_2km")
