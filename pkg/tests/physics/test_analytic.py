"""
Tests for the closed-form reference results.

Includes the jointly Gaussian N-photon state limits: b -> 0 reaches the
Heisenberg limit and B^2 = b^2 / N the standard quantum limit.
"""

import math

import numpy as np
import pytest

from src.errors import DomainError
from src.physics.analytic import (
    SECH_TIME_BANDWIDTH,
    JointlyGaussianState,
    adiabatic_ideal,
    exact_heisenberg_t2,
    gaussian_jitter_init,
    gaussian_lossy_R,
    gaussian_state_moments,
    gh_estimates,
    ideal_squeezing_ratio,
    linear_dispersive_moments,
    linear_dispersive_R,
    linear_dispersive_t2,
    linear_nondispersive_R,
    linear_nondispersive_t2,
    soliton_constant_disp_R,
    soliton_constant_disp_R_low_loss,
    soliton_constant_disp_t2,
    soliton_period_at_end,
    time_bandwidth_product,
)
from src.physics.fiber import ConstantDispersion, FiberSegment, soliton_period
from src.physics.jitter import JitterState
from src.physics.moments import PulseMoments

SECH_DT = math.pi / (2 * math.sqrt(3))
SECH_DOMEGA = 1 / math.sqrt(3)


class TestAdiabaticCompression:
    def test_ideal_bandwidth_narrowing_reference_fiber(self, reference_link) -> None:
        """Lossy but perfectly adiabatic compression narrows the bandwidth by 3 N(0)/N(L), about 3.6."""
        # Act
        path = adiabatic_ideal(reference_link.segments[0], 1.87e7)

        # Assert
        assert path.bandwidth_narrowing() == pytest.approx(3.6, abs=0.05)

    def test_path_stays_fundamental_soliton(self, reference_link) -> None:
        """tau = 2|beta|/(kappa N) everywhere and the amplitude follows sqrt(N / 2 tau)."""
        # Arrange
        segment = reference_link.segments[0]
        path = adiabatic_ideal(segment, 1.87e7)

        # Act
        tau_end = path.tau(2000.0)

        # Assert
        n_end = 1.87e7 * math.exp(-segment.alpha * 2000.0)
        assert tau_end == pytest.approx(2 * 12.75e-3 / (segment.kappa * n_end), rel=1e-12)
        assert path.a0(2000.0) == pytest.approx(math.sqrt(n_end / (2 * tau_end)), rel=1e-12)
        assert path.lambda_period(0.0) == pytest.approx(soliton_period(-4.25e-3, path.tau(0.0)), rel=1e-12)

    def test_soliton_period_at_end(self, reference_link) -> None:
        """The end-of-fiber period matches the adiabatic path evaluated at L."""
        segment = reference_link.segments[0]
        path = adiabatic_ideal(segment, 1.87e7)
        n_end = float(path.n_photons(2000.0))
        assert soliton_period_at_end(segment, n_end) == pytest.approx(float(path.lambda_period(2000.0)), rel=1e-12)

    def test_adiabatic_path_needs_anomalous_dispersion(self, reference_link) -> None:
        """The compensating fiber cannot support the adiabatic soliton path."""
        with pytest.raises(DomainError):
            adiabatic_ideal(reference_link.segments[1], 1.87e7)

    def test_ideal_squeezing_ratio(self) -> None:
        """A threefold dispersion increase gives R = (pi^2/9) / 9."""
        assert ideal_squeezing_ratio(-4.25e-3, -12.75e-3) == pytest.approx(math.pi**2 / 81, rel=1e-12)


class TestLinearSystems:
    def test_nondispersive_t2_and_ratio_agree(self) -> None:
        """R(z) = <T^2(z)> 4 N(z) domega^2 for the non-dispersive closed form."""
        # Arrange
        n0, dt0, domega0, alpha, z = 1e7, 0.7, 0.9, 1e-4, 3000.0
        t2_0 = dt0**2 / n0

        # Act
        t2 = linear_nondispersive_t2(t2_0, dt0, n0, alpha, z)
        ratio = linear_nondispersive_R(4 * n0 * domega0**2 * t2_0, dt0, domega0, alpha, z)

        # Assert
        assert ratio == pytest.approx(t2 * 4 * n0 * math.exp(-alpha * z) * domega0**2, rel=1e-12)

    def test_nondispersive_ratio_fixed_at_time_bandwidth(self) -> None:
        """Starting at R = 4 dt^2 domega^2, loss leaves R unchanged."""
        tbp = 4 * 0.7**2 * 0.9**2
        assert linear_nondispersive_R(tbp, 0.7, 0.9, 1e-3, 5000.0) == pytest.approx(tbp, rel=1e-12)

    def test_dispersive_moments(self) -> None:
        """Chirp grows as 2 domega^2 D and dt^2 is quadratic in D."""
        # Act
        dt2, chirp, domega2 = linear_dispersive_moments(0.5, -0.2, 0.52, -2.0)

        # Assert
        assert dt2 == pytest.approx(0.5 + 0.4 + 0.52 * 4.0)
        assert chirp == pytest.approx(-0.2 - 2.08)
        assert domega2 == 0.52

    def test_dispersive_ratio_lossless(self) -> None:
        """Without loss R = R0 + 4 zeta^2 / R0."""
        assert linear_dispersive_R(1.0, 1.0, 0.5, 0.0, 100.0) == pytest.approx(2.0, rel=1e-12)

    def test_dispersive_t2_with_loss(self) -> None:
        """Half the photons lost: partition noise adds dt^2(z) / N(z) / 2 on top of the dispersed input jitter."""
        # Arrange
        moments0 = PulseMoments(n_photons=1e6, dt_rms=1.0, chirp=0.0, domega_rms=0.5)
        initial = JitterState(t2_init=1e-6, sym_init=0.0, omega2_init=0.25e-6)
        z = 1000.0
        alpha = math.log(2.0) / z

        # Act
        lossless = linear_dispersive_t2(initial, moments0, 0.0, z, 2.0)
        lossy = linear_dispersive_t2(initial, moments0, alpha, z, 2.0)

        # Assert
        assert lossless == pytest.approx(2e-6, rel=1e-12)
        assert lossy == pytest.approx(4e-6, rel=1e-9)


class TestSolitonConstantDispersion:
    def test_normalized_form_matches_unnormalized(self) -> None:
        """R(z) from the closed form equals <T^2(z)> 4 N(z) domega^2 for a coherent sech soliton."""
        # Arrange
        n0, beta, alpha, z = 1e7, -0.02, 9.2e-5, 4000.0
        t2_0, omega2_0 = SECH_DT**2 / n0, SECH_DOMEGA**2 / n0
        period = soliton_period(beta, 1.0)

        # Act
        t2 = soliton_constant_disp_t2(t2_0, omega2_0, SECH_DT, SECH_DOMEGA, n0, beta, alpha, z)
        ratio = soliton_constant_disp_R(SECH_TIME_BANDWIDTH, z, period, alpha)

        # Assert
        n_z = n0 * math.exp(-alpha * z)
        assert ratio == pytest.approx(t2 * 4 * n_z * SECH_DOMEGA**2, rel=1e-12)

    def test_low_loss_form_is_first_order(self) -> None:
        """The low-loss expansion differs from the full form by O(alpha z)."""
        # Arrange
        period, z = 80.0, 400.0
        alpha = 1e-6

        # Act
        full = soliton_constant_disp_R(SECH_TIME_BANDWIDTH, z, period, alpha)
        low = soliton_constant_disp_R_low_loss(SECH_TIME_BANDWIDTH, z, period, alpha)

        # Assert
        assert abs(full - low) / full < 2 * alpha * z

    def test_continuous_across_small_loss_series(self) -> None:
        """The small-alpha series and the exact Gordon-Haus kernel join smoothly."""
        # Arrange
        z = 1000.0
        below = soliton_constant_disp_t2(1e-8, 1e-8, 1.0, 0.6, 1e7, -0.02, 0.9999e-3 / z, z)
        above = soliton_constant_disp_t2(1e-8, 1e-8, 1.0, 0.6, 1e7, -0.02, 1.0001e-3 / z, z)

        # Assert
        assert above == pytest.approx(below, rel=1e-3)

    def test_lossless_reduces_to_quantum_dispersion(self) -> None:
        """With alpha = 0 only <O^2(0)> beta^2 z^2 is added."""
        t2 = soliton_constant_disp_t2(1e-8, 2e-8, 1.0, 0.6, 1e7, -0.02, 0.0, 100.0)
        assert t2 == pytest.approx(1e-8 + 2e-8 * 4.0, rel=1e-12)


class TestGordonHausEstimates:
    def test_halving_loss_halves_estimates(self) -> None:
        """Every Gordon-Haus estimate is linear in alpha."""
        # Act
        full = gh_estimates(2000.0, 110.0, -0.01, 9.2e-5, 0.5, 1.9e7, 500.0)
        half = gh_estimates(2000.0, 110.0, -0.01, 4.6e-5, 0.5, 1.9e7, 500.0)

        # Assert
        assert half.managed_t2 == pytest.approx(full.managed_t2 / 2, rel=1e-12)
        assert half.managed_ratio == pytest.approx(full.managed_ratio / 2, rel=1e-12)
        assert half.rough_ratio == pytest.approx(full.rough_ratio / 2, rel=1e-12)
        assert half.length_cubed_bound == pytest.approx(full.length_cubed_bound * 2, rel=1e-12)

    def test_management_halves_gordon_haus_ratio(self) -> None:
        """The compensated link accumulates half the unmanaged Gordon-Haus jitter."""
        estimate = gh_estimates(2000.0, 110.0, -0.01, 9.2e-5, 0.5, 1.9e7, 500.0)
        assert estimate.managed_ratio == pytest.approx(estimate.unmanaged_ratio / 2, rel=1e-12)

    def test_requires_short_compensating_fiber(self) -> None:
        """L' longer than L breaks the estimate's assumptions."""
        with pytest.raises(DomainError):
            gh_estimates(100.0, 200.0, -0.01, 1e-4, 0.5, 1e7, 50.0)


class TestJointlyGaussianState:
    def test_time_bandwidth_at_sql(self) -> None:
        """tbp(R = 1) = 1 for any N."""
        for n in (1, 2, 10, 1_000_000):
            assert time_bandwidth_product(1.0, n) == pytest.approx(1.0, abs=1e-14)

    def test_narrow_b_reaches_heisenberg_limit(self) -> None:
        """b -> 0: <T^2> = 1/(4 N^2 domega^2) and R = 1/N."""
        # Act
        moments = gaussian_state_moments(JointlyGaussianState(n_photons=10, big_b=0.8, small_b=0.0))

        # Assert
        assert moments.t2 == pytest.approx(1 / (4 * 100 * moments.domega2), rel=1e-12)
        assert moments.squeezing_ratio == pytest.approx(0.1, rel=1e-12)
        assert moments.dt2 == math.inf

    def test_uncorrelated_limit_is_sql(self) -> None:
        """B^2 = b^2 / N: <T^2> = 1/(4 N domega^2), R = 1 and tbp = 1."""
        # Arrange
        n, b = 25, 1.3
        state = JointlyGaussianState(n_photons=n, big_b=b / math.sqrt(n), small_b=b)

        # Act
        moments = gaussian_state_moments(state)

        # Assert
        assert moments.domega2 == pytest.approx(b**2, rel=1e-12)
        assert moments.t2 == pytest.approx(1 / (4 * n * moments.domega2), rel=1e-12)
        assert moments.squeezing_ratio == pytest.approx(1.0, rel=1e-12)
        assert moments.tbp == pytest.approx(1.0, rel=1e-12)

    def test_time_bandwidth_formula_matches_state(self) -> None:
        """tbp computed from (B, b) equals the expression in R and N."""
        # Arrange
        moments = gaussian_state_moments(JointlyGaussianState(n_photons=40, big_b=0.3, small_b=2.0))

        # Assert
        assert time_bandwidth_product(moments.squeezing_ratio, 40) == pytest.approx(moments.tbp, rel=1e-12)

    def test_time_bandwidth_diverges_at_heisenberg(self) -> None:
        """R <= 1/N has no finite time-bandwidth product."""
        assert time_bandwidth_product(0.1, 10) == math.inf

    def test_lossy_ratio_direct_evaluation(self) -> None:
        """R(z) = R0 exp(-alpha z) + tbp0 (1 - exp(-alpha z))."""
        # Arrange
        state = JointlyGaussianState(n_photons=40, big_b=0.3, small_b=2.0)
        moments = gaussian_state_moments(state)
        alpha, z = 2e-4, 1500.0

        # Act
        ratio = gaussian_lossy_R(state, alpha, z)

        # Assert
        decay = math.exp(-alpha * z)
        assert ratio == pytest.approx(moments.squeezing_ratio * decay + moments.tbp * (1 - decay), rel=1e-12)
        assert gaussian_lossy_R(state, alpha, 0.0) == pytest.approx(moments.squeezing_ratio, rel=1e-12)

    @pytest.mark.parametrize("big_b", [0.3, 0.8, 1.7])
    def test_lossy_ratio_infinite_from_heisenberg_state(self, big_b: float) -> None:
        """
        Any loss applied to a Heisenberg-limited state gives a divergent ratio.

        R(0) = 1/N lands within rounding of the divergence for most N, so every
        N up to a few hundred is checked.

        Args:
            big_b: Centre-of-mass bandwidth B of the state in 1/ps.
        """
        for n in range(2, 400):
            state = JointlyGaussianState(n_photons=n, big_b=big_b, small_b=0.0)
            assert gaussian_lossy_R(state, 1e-4, 100.0) == math.inf, f"N = {n} gave a finite ratio"

    @pytest.mark.parametrize("n_photons", [2, 7, 10, 100, 1_000_000])
    def test_time_bandwidth_bounded_and_decreasing(self, n_photons: int) -> None:
        """
        On R in (1/N, 1] the time-bandwidth product stays above 1 - 1/N and falls as R grows.

        Args:
            n_photons: Photon number N of the state.
        """
        # Arrange
        ratios = np.linspace(1.0 / n_photons, 1.0, 4001)[1:]

        # Act
        tbp = np.array([time_bandwidth_product(float(r), n_photons) for r in ratios])

        # Assert
        assert np.all(np.isfinite(tbp))
        assert np.all(tbp >= 1.0 - 1.0 / n_photons)
        assert np.all(np.diff(tbp) <= 1e-12 * tbp[1:])

    def test_time_bandwidth_worked_value(self) -> None:
        """N = 100 and R = 0.1 give 0.001 + 0.99^2 / 0.9."""
        assert time_bandwidth_product(0.1, 100) == pytest.approx(1.090, abs=5e-4)

    def test_time_bandwidth_heisenberg_within_rounding(self) -> None:
        """R = 1/N computed in floating point still counts as the divergence."""
        for n in range(2, 400):
            assert time_bandwidth_product(1.0 / n, n) == math.inf

    @pytest.mark.parametrize("small_b", [0.0, 0.4, 2.0])
    def test_centre_of_mass_moments_saturate_uncertainty(self, small_b: float) -> None:
        """
        The centre-of-mass moments of the state meet 4 N^2 <T^2> <O^2> = 1 exactly.

        Args:
            small_b: Relative-coordinate bandwidth b in 1/ps; zero is the Heisenberg-limited state.
        """
        for n in (1, 3, 50, 10_000):
            moments = gaussian_state_moments(JointlyGaussianState(n_photons=n, big_b=0.7, small_b=small_b))
            assert 4 * n**2 * moments.t2 * moments.omega2 == pytest.approx(1.0, rel=1e-12)

    def test_gaussian_jitter_init(self) -> None:
        """The initial jitter state carries <T^2> = 1/(4 N^2 B^2) and <O^2> = B^2."""
        state = gaussian_jitter_init(JointlyGaussianState(n_photons=4, big_b=0.5, small_b=1.0))
        assert state.t2_init == pytest.approx(1 / (4 * 16 * 0.25), rel=1e-12)
        assert state.omega2_init == 0.25
        assert state.sym_init == 0.0

    def test_invalid_state(self) -> None:
        """N must be at least one and B positive."""
        with pytest.raises(DomainError):
            JointlyGaussianState(n_photons=0, big_b=1.0, small_b=1.0)
        with pytest.raises(DomainError):
            JointlyGaussianState(n_photons=3, big_b=0.0, small_b=1.0)


def test_exact_heisenberg_fock() -> None:
    """<N^-2> = 1/N^2 for a Fock state."""
    assert exact_heisenberg_t2(10, 2.0) == pytest.approx(1 / (100 * 4 * 4), rel=1e-12)
    with pytest.raises(DomainError):
        exact_heisenberg_t2(0)


def test_constant_segment_path() -> None:
    """Constant dispersion with loss broadens the adiabatic soliton as exp(alpha z)."""
    # Arrange
    segment = FiberSegment(length=1000.0, alpha=1e-4, kappa=4.5e-10, dispersion=ConstantDispersion(-0.02))

    # Act
    path = adiabatic_ideal(segment, 1e7)

    # Assert
    assert path.tau(1000.0) / path.tau(0.0) == pytest.approx(math.exp(0.1), rel=1e-12)
