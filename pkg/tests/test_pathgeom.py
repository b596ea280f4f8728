import numpy as np
import pytest

from app.core.errors import GridMismatchError, InputError, UnsupportedInputError
from app.models.path import BandLimitedPath, BandLimitedVariation, DiscretePath, TangentVariation
from app.services import pathgeom

M = 50


def _linear(x):
    zeros = np.zeros((1, len(x)))
    return BandLimitedVariation(np.zeros(len(x)), np.asarray(x, dtype=float), zeros, zeros)


def test_unsupported_group():
    with pytest.raises(UnsupportedInputError):
        pathgeom.matrix_group("SU4")


class TestDiscretePath:
    def test_rejects_non_unitary_samples(self, su2):
        samples = np.stack([2 * np.eye(2)] * 4)
        with pytest.raises(InputError):
            DiscretePath(su2, samples)

    def test_needs_three_samples(self, su2):
        with pytest.raises(InputError):
            DiscretePath(su2, np.stack([np.eye(2)] * 2))

    def test_periodic_path_has_trivial_holonomy(self, su2, rng):
        loop = BandLimitedPath.random(su2, rng, periodic=True).sample(M)
        assert np.allclose(loop.holonomy, np.eye(2))

    def test_variation_grid_must_match(self, su2):
        path = BandLimitedPath.constant(su2).sample(M)
        v = TangentVariation(np.zeros((M, su2.dim)))
        with pytest.raises(GridMismatchError):
            pathgeom.varpi_eval(path, v, v)


class TestVarpi:
    def test_closed_form_on_constant_path(self, su2, rng):
        X, Y = rng.standard_normal(3), rng.standard_normal(3)
        path = BandLimitedPath.constant(su2).sample(M)
        value = pathgeom.varpi_eval(path, _linear(X).sample(M), BandLimitedVariation.constant(Y).sample(M))
        assert value == pytest.approx(-X @ Y, abs=1e-12)

    def test_antisymmetric(self, su2, rng):
        path = BandLimitedPath.random(su2, rng).sample(M)
        v, w = (BandLimitedVariation.random(3, rng).sample(M) for _ in range(2))
        assert pathgeom.varpi_eval(path, v, w) == pytest.approx(-pathgeom.varpi_eval(path, w, v), abs=1e-12)

    def test_identity_twist_is_untwisted_form(self, su2, rng):
        path = BandLimitedPath.random(su2, rng).sample(M)
        v, w = (BandLimitedVariation.random(3, rng).sample(M) for _ in range(2))
        identity = pathgeom.identity_automorphism(su2)
        assert pathgeom.varpi_twisted(path, identity, v, w) == pathgeom.varpi_eval(path, v, w)


def test_cartan_eta_constant(su2, rng):
    u, v, w = (rng.standard_normal(3) for _ in range(3))
    assert pathgeom.cartan_eta(su2, u, v, w) == pytest.approx(0.5 * u @ su2.algebra.bracket(v, w))
    assert pathgeom.cartan_eta(su2, u, v, w) == pytest.approx(-pathgeom.cartan_eta(su2, u, w, v))


class TestAutomorphisms:
    def test_unknown_kind(self, su2):
        with pytest.raises(InputError):
            pathgeom.build_automorphism(su2, "bogus")

    def test_conjugation_on_su3(self):
        kappa = pathgeom.complex_conjugation(pathgeom.matrix_group("SU3"))
        K = kappa.algebra_matrix
        assert np.allclose(K.T @ K, np.eye(8))
        assert np.allclose(K @ K, np.eye(8))

    def test_twisted_loop_needs_periodic_zeta(self, su2, rng):
        kappa = pathgeom.build_automorphism(su2, "inner", rng)
        with pytest.raises(UnsupportedInputError):
            pathgeom.twisted_loop_variation(BandLimitedVariation.random(3, rng), kappa, M)


class TestConvergenceRows:
    def test_second_order(self):
        rows = pathgeom.convergence_rows(lambda M_k, h_k: h_k ** 2, 100, 1e-2, levels=3)
        assert [r["M"] for r in rows] == [100, 200, 400]
        assert rows[0]["order"] is None
        assert rows[-1]["order"] == pytest.approx(2.0)
        assert pathgeom.order_estimate(rows) == pytest.approx(2.0)

    def test_no_order_below_floor(self):
        rows = pathgeom.convergence_rows(lambda M_k, h_k: 0.0, 100, 1e-2)
        assert pathgeom.order_estimate(rows) is None

    def test_fitted_order_drops_levels_at_the_floor(self):
        assert pathgeom.fitted_order([1e-4, 2.5e-5, 0.0]) == pytest.approx(2.0)
        assert pathgeom.fitted_order([1e-4, 1e-14, 0.0]) is None

    def test_pooled_order_sums_scattered_paths(self):
        # per-path two-level orders of 5.3 and 1.1; the sums drop by exactly 4 per level
        first = {"rows": [{"residual": 4.0}, {"residual": 0.1}, {"residual": 0.25}]}
        second = {"rows": [{"residual": 4.0}, {"residual": 1.9}, {"residual": 0.25}]}
        assert pathgeom.pooled_order([first, second]) == pytest.approx(2.0)
        assert pathgeom.pooled_order([]) is None

    def test_dvarpi_order_is_two(self, su2, rng):
        source = BandLimitedPath.random(su2, rng)
        u, v, w = (BandLimitedVariation.random(3, rng) for _ in range(3))
        result = pathgeom.check_dvarpi(source, u, v, w, 100, 1e-3, levels=3)
        assert result["order_estimate"] == pytest.approx(2.0, abs=0.2)


class TestSymmetries:
    def test_varpi_invariance(self, su2, rng):
        path = BandLimitedPath.random(su2, rng).sample(M)
        loop = BandLimitedPath.random(su2, rng, periodic=True).sample(M)
        v, w = (BandLimitedVariation.random(3, rng).sample(M) for _ in range(2))
        g = su2.exp(rng.standard_normal(3))
        assert pathgeom.check_varpi_invariance(path, v, w, g, loop)["residual"] < 1e-10

    def test_varpi_invariance_needs_a_loop(self, su2, rng):
        path = BandLimitedPath.random(su2, rng).sample(M)
        v, w = (BandLimitedVariation.random(3, rng).sample(M) for _ in range(2))
        with pytest.raises(UnsupportedInputError):
            pathgeom.check_varpi_invariance(path, v, w, np.eye(2), path)

    def test_twist_correspondence(self, su2, rng):
        path = BandLimitedPath.random(su2, rng).sample(M)
        v, w = (BandLimitedVariation.random(3, rng).sample(M) for _ in range(2))
        Y = 0.5 * rng.standard_normal(3)
        assert pathgeom.check_twist_correspondence(path, Y, v, w)["residual"] < 1e-10

    def test_gauge_equivariance(self, su2, rng):
        path = BandLimitedPath.random(su2, rng).sample(M)
        loop = BandLimitedPath.random(su2, rng, periodic=True).sample(M)
        g = su2.exp(rng.standard_normal(3))
        assert pathgeom.check_gauge_equivariance(path, g, loop)["residual"] < 1e-10
