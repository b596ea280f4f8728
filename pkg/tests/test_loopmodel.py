import numpy as np
import pytest

from app.core.errors import InputError, ModeBudgetError, UnsupportedInputError
from app.models.loop import ChiProfile, SobolevWeight, TruncatedLoop
from app.services import loopmodel
from app.services.lie_realizations import algebra_residuals, build_compact_algebra


@pytest.mark.parametrize("name,h", [("A1", 2), ("A2", 3), ("B2", 3)])
def test_killing_form_level(name, h):
    alg = build_compact_algebra(name)
    level = loopmodel.level_check(alg)
    assert level["dual_coxeter"] == h
    assert level["residual"] < 1e-9
    assert max(algebra_residuals(alg).values()) < 1e-9


def test_cartan_vector_validation(su2_algebra):
    assert loopmodel.cartan_vector(su2_algebra, [0.3]).shape == (3,)
    with pytest.raises(UnsupportedInputError):
        loopmodel.cartan_vector(su2_algebra, [0.0, 1.0, 0.0])
    with pytest.raises(UnsupportedInputError):
        loopmodel.cartan_vector(su2_algebra, [0.1, 0.2])


class TestTruncatedLoop:
    def test_wrong_shape_rejected(self):
        with pytest.raises(InputError):
            TruncatedLoop(2, np.zeros((3, 3)))

    def test_mode_beyond_cutoff_rejected(self):
        with pytest.raises(InputError):
            TruncatedLoop.from_modes(2, 3, {3: np.ones(3)})

    def test_cosine_evaluates_pointwise(self):
        X = np.array([1.0, -2.0, 0.5])
        loop = TruncatedLoop.cosine(4, X, 2)
        values = loop.evaluate(np.array([0.0, 0.125, 0.25]))
        assert np.allclose(values, np.outer([1.0, 0.0, -1.0], X))
        assert loop.is_real
        assert loop.max_mode == 2

    def test_sobolev_weight(self):
        assert SobolevWeight(0.0).norm(TruncatedLoop.constant(3, np.array([3.0, 4.0]))) == pytest.approx(5.0)
        assert float(SobolevWeight(2.0).weight(1)) == pytest.approx(1 + 4 * np.pi ** 2)


def test_chi_profile():
    chi = ChiProfile(1.0)
    assert float(chi(0.0)) == pytest.approx(0.5)
    assert float(chi(2.0)) == pytest.approx(2.0)
    assert float(chi(-3.0)) == pytest.approx(3.0)
    with pytest.raises(InputError):
        ChiProfile(0.0)


class TestCocycles:
    def test_kp_closed_form(self, su2_algebra, rng):
        X, Y = rng.standard_normal(3), rng.standard_normal(3)
        for n in (1, 3):
            xi = TruncatedLoop.from_modes(8, 3, {n: X})
            zeta = TruncatedLoop.from_modes(8, 3, {-n: Y})
            expected = -4 * np.pi ** 2 * n * 2 * (X @ Y)
            assert loopmodel.kp_cocycle(su2_algebra, xi, zeta) == pytest.approx(expected)

    def test_central_cocycle_closed_form(self, rng):
        X, Y = rng.standard_normal(3), rng.standard_normal(3)
        xi = TruncatedLoop.from_modes(4, 3, {1: X})
        zeta = TruncatedLoop.from_modes(4, 3, {-1: Y})
        assert loopmodel.central_cocycle(xi, zeta) == pytest.approx(-4 * np.pi ** 2 * (X @ Y))

    def test_cocycle_identity(self, su2_algebra, rng):
        loops = [TruncatedLoop.random_real(12, 3, rng, max_mode=4) for _ in range(3)]
        result = loopmodel.cocycle_identity_check(su2_algebra, *loops)
        assert result["relative"] < 1e-10
        jacobi = loopmodel.central_jacobi_check(su2_algebra, *loops)
        assert jacobi["loop_part"] < 1e-10
        assert jacobi["central_part"] < 1e-10

    def test_mode_budget(self, su2_algebra, rng):
        loops = [TruncatedLoop.random_real(6, 3, rng, max_mode=3) for _ in range(3)]
        with pytest.raises(ModeBudgetError):
            loopmodel.cocycle_identity_check(su2_algebra, *loops)

    def test_bracket_leaving_cutoff(self, su2_algebra):
        x = TruncatedLoop.from_modes(2, 3, {2: np.ones(3)})
        with pytest.raises(ModeBudgetError):
            loopmodel.loop_bracket(su2_algebra, x, x)


class TestSpectralOperators:
    def test_j0_convention(self, su2_algebra):
        J = loopmodel.jmu(su2_algebra, [0.0], 3)
        assert np.allclose(J.block(2), 1j * np.eye(3))
        assert np.allclose(J.block(-1), -1j * np.eye(3))
        assert np.allclose(J.block(0), 0)

    def test_chi_rank_at_zero(self, su2_algebra):
        result = loopmodel.chi_cutoff(su2_algebra, [0.0], 4, ChiProfile(1.0))
        assert result["kernel_dim"] == 3
        assert result["finite_rank_diff"] == 3
        assert result["spectral_bound"] == 3

    def test_chi_must_be_positive(self, su2_algebra):
        chi = ChiProfile(1.0, chi_zero=0.0)
        with pytest.raises(InputError):
            loopmodel.chi_cutoff(su2_algebra, [0.0], 2, chi)

    def test_flip_count_small_mu(self, su2_algebra):
        flips = loopmodel.flip_count(su2_algebra, [0.1], 4)
        assert flips["sign_changes"] == 2
        assert flips["rank"] == 2

    def test_compatible_metric_kernel(self, su2_algebra):
        result = loopmodel.compatible_metric_matrix(su2_algebra, [0.0], 3)
        assert result["kernel_dim"] == result["expected_kernel_dim"] == 3
        assert result["symmetry"] < 1e-9
        assert result["min_eigenvalue"] > -1e-9

    def test_spectrum_frame(self, su2_algebra):
        frame = loopmodel.spectrum_frame(su2_algebra, [0.0], 2)
        assert list(frame.columns) == ["mode", "eigenvalue_real", "eigenvalue_imag"]
        assert len(frame) == 5 * 3


@pytest.mark.parametrize("mu,dim", [([0.0], 3), ([2 ** -0.5], 3), ([0.1], 1)])
def test_rmu_smu_kernel_dimension(su2_algebra, mu, dim):
    result = loopmodel.rmu_smu(su2_algebra, mu, 4)
    assert result["g_a_dim"] == dim
    R, S = result["R"].matrix, result["S"]
    assert np.allclose(S @ R, result["kernel_projection"])


def test_weak_strong_band_at_half(su2_algebra):
    report = loopmodel.weak_strong_report(su2_algebra, [0.0], 0.5, [8, 16, 32])
    assert report["band_variation"] <= 0.05


def test_strong_decay_above_half(su2_algebra):
    report = loopmodel.weak_strong_report(su2_algebra, [0.0], 1.0, [8, 16, 32])
    assert report["monotone_decay"]
    assert report["rate_consistent"]


def test_sobolev_gram(su2_algebra):
    assert np.allclose(loopmodel.sobolev_gram(su2_algebra, 2, 0.0), np.eye(15))
    diagonal = np.diag(loopmodel.sobolev_gram(su2_algebra, 2, 1.0))
    assert diagonal[0] == pytest.approx(1 + (4 * np.pi) ** 2)
    assert diagonal[6] == pytest.approx(1.0)
