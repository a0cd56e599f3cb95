import pytest

from src.physics.fiber import ConstantDispersion, DispersionIncreasing, FiberLink, FiberSegment
from src.physics.grid import TimeGrid
from src.physics.units import alpha_from_db_per_km, kappa_from_fiber


def pytest_configure():
    from pathlib import Path

    # Create a temporary directory
    log_dir = Path("log")
    log_dir.mkdir(parents=True, exist_ok=True)
    # Create a fake log file in the temporary directory
    log_file_path = log_dir / "solitonjitter.log"
    with open(log_file_path, "w") as f:
        f.write("")


@pytest.fixture(scope="session", autouse=True)
def cleanup_log_dir():
    from pathlib import Path

    log_dir = Path("log")
    log_file_path = log_dir / "solitonjitter.log"
    yield
    # Cleanup after tests
    log_file_path.unlink(missing_ok=True)


@pytest.fixture
def small_grid() -> TimeGrid:
    return TimeGrid.from_window(1024, 64.0)


@pytest.fixture
def kappa() -> float:
    return kappa_from_fiber(2.6e-20, 30e-12, 1550e-9)


@pytest.fixture
def reference_link(kappa) -> FiberLink:
    """2 km dispersion-increasing fiber followed by 110 m of compensating fiber, 0.4 dB/km."""
    alpha = alpha_from_db_per_km(0.4)
    first = FiberSegment(
        length=2000.0,
        alpha=alpha,
        kappa=kappa,
        dispersion=DispersionIncreasing(beta_end=-12.75e-3, length=2000.0, l_beta=1000.0),
        name="dispersion_increasing",
    )
    dcf = FiberSegment(
        length=110.0,
        alpha=alpha,
        kappa=kappa_from_fiber(2.7e-20, 15e-12, 1550e-9),
        dispersion=ConstantDispersion(0.1275),
        name="dcf",
    )
    return FiberLink((first, dcf))


@pytest.fixture
def scenario_text() -> str:
    """A small, fast scenario; tests replace lines to build variants."""
    return """
[scenario]
name = tiny

[pulse]
shape = sech
tau_ps = 1.0
n_photons = soliton

[link]
alpha_db_per_km = 0.4
n2_m2_per_w = 2.6e-20
a_eff_um2 = 30

[link.fiber]
length_m = 200
dispersion = constant
beta_ps2_per_km = -20.0

[numerics]
n_points = 512
window_ps = 64
dz_m = 0.25
record_every_m = 50
"""
