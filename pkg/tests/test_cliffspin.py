import numpy as np
import pytest

from app.core.errors import InputError
from app.models.algebra import TorusElement
from app.models.spinor import ComplexStructureOperator, EuclideanSpace
from app.services import cliffspin, rootsys
from app.utils.linalg import random_metric, random_orthogonal, random_orthogonal_structure


def _module(dim):
    return cliffspin.spinor_module(EuclideanSpace.standard(dim), ComplexStructureOperator.standard(dim))


def test_fock_basis_order():
    assert cliffspin.fock_basis(2) == ((), (0,), (0, 1), (1,))


def test_creation_operators_are_fermionic():
    cdag = cliffspin.creation_operators(3)
    c = np.conj(np.transpose(cdag, (0, 2, 1)))
    ident = np.eye(8)
    for j in range(3):
        assert np.abs(cdag[j] @ cdag[j]).max() == 0
        for k in range(3):
            anti = cdag[j] @ c[k] + c[k] @ cdag[j]
            assert np.allclose(anti, ident if j == k else 0 * ident)


class TestSpinorModule:
    def test_standard_relations(self):
        residuals = cliffspin.clifford_residuals(_module(6))
        assert residuals["anticommutator"] < 1e-12
        assert residuals["parity"] < 1e-12
        assert residuals["vacuum"] < 1e-12

    def test_random_metric_and_structure(self, rng):
        g = random_metric(4, rng)
        J = ComplexStructureOperator(random_orthogonal_structure(g, rng), orthogonal_wrt=g)
        S = cliffspin.spinor_module(EuclideanSpace(g), J)
        assert S.fock_dim == 4
        assert max(cliffspin.clifford_residuals(S).values()) < 1e-10

    def test_odd_dimension_rejected(self):
        with pytest.raises(InputError):
            EuclideanSpace.standard(3)

    def test_non_complex_structure_rejected(self):
        with pytest.raises(InputError):
            ComplexStructureOperator(np.eye(2))


class TestImplementer:
    def test_identity_maps_to_identity(self):
        S = _module(4)
        assert np.allclose(cliffspin.implementer(np.eye(4), S), np.eye(4))

    def test_complex_structure_acts_by_powers_of_i(self):
        S = _module(4)
        U = cliffspin.implementer(S.complex_structure.matrix, S)
        assert np.allclose(U, np.diag([1j ** len(s) for s in S.basis]))

    def test_random_orthogonal_is_implemented(self, rng):
        S = _module(6)
        A = random_orthogonal(np.eye(6), rng)
        U = cliffspin.implementer(A, S)
        assert cliffspin.implementer_residual(U, A, S) < 1e-10
        assert np.allclose(U.conj().T @ U, np.eye(8))

    def test_non_orthogonal_rejected(self):
        with pytest.raises(InputError):
            cliffspin.implementer(2 * np.eye(4), _module(4))


def test_parity_of_kernel():
    J = ComplexStructureOperator.standard(4).matrix
    assert cliffspin.parity_of_kernel(J, J) == 0
    assert cliffspin.parity_of_kernel(J, -J) == 0
    J2 = ComplexStructureOperator.standard(2).matrix
    assert cliffspin.parity_of_kernel(J2, -J2) == 1


def test_opposite_structures_give_odd_intertwiner():
    space = EuclideanSpace.standard(2)
    J = ComplexStructureOperator.standard(2)
    S0 = cliffspin.spinor_module(space, J)
    S1 = cliffspin.spinor_module(space, ComplexStructureOperator(-J.matrix))
    assert cliffspin.intertwiner_space(S0, S1)["parity"] == 1
    assert cliffspin.intertwiner_space(S0, S0)["parity"] == 0


@pytest.mark.parametrize("name", ["A1", "A2"])
def test_commweil_scalar(name, rng):
    rs = rootsys.build_root_system(*rootsys.parse_algebra(name))
    for w in rootsys.weyl_group(rs):
        result = cliffspin.commweil_check(rs, w, TorusElement.random(rs.rank, rng))
        assert result["pass"], result


def test_graded_character_vanishes_at_identity(a2):
    S, T = cliffspin.weyl_spinor_module(a2)
    assert abs(cliffspin.graded_character(S, T, TorusElement.identity(a2.rank))) < 1e-12
