from fractions import Fraction

import pytest

from app.core.errors import CapExceededError, InputError, UnsupportedAlgebraError
from app.models.algebra import AffineRoot, LaurentCharacter
from app.services import rootsys


@pytest.mark.parametrize("name,order,h,n_positive", [
    ("A1", 2, 2, 1),
    ("A2", 6, 3, 3),
    ("A3", 24, 4, 6),
    ("B2", 8, 3, 4),
    ("B3", 48, 5, 9),
    ("C3", 48, 4, 9),
    ("G2", 12, 4, 6),
])
def test_classical_invariants(name, order, h, n_positive):
    rs = rootsys.build_root_system(*rootsys.parse_algebra(name))
    assert len(rs.positive_roots) == n_positive
    assert rs.inner(rs.theta, rs.theta) == 2
    assert rootsys.dual_coxeter(rs) == h
    assert len(rootsys.weyl_group(rs)) == order


def test_a2_roots_and_rho(a2):
    assert a2.positive_roots == ((1, 0), (0, 1), (1, 1))
    assert a2.theta == (1, 1)
    assert a2.rho == (1, 1)


def test_b2_highest_root_and_rho():
    rs = rootsys.build_root_system("B", 2)
    assert rs.theta == (1, 2)
    assert rs.rho == (Fraction(3, 2), 2)


def test_unsupported_algebra_is_rejected():
    with pytest.raises(UnsupportedAlgebraError):
        rootsys.parse_algebra("E8")
    with pytest.raises(UnsupportedAlgebraError):
        rootsys.parse_algebra("A9")


def test_weyl_group_properties(a2):
    props = rootsys.weyl_group_properties(a2)
    assert props["order"] == 6
    assert props["max_length"] == 3
    assert props["preserves_form"]
    assert props["length_matches_inversions"]
    assert props["length_subadditive"]
    assert props["sign_homomorphism"]


def test_weyl_group_cap(a2):
    with pytest.raises(CapExceededError):
        rootsys.weyl_group(a2, cap=3)


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2"])
def test_weyl_denominator_identity(name):
    rs = rootsys.build_root_system(*rootsys.parse_algebra(name))
    result = rootsys.weyl_denominator_identity(rs)
    assert result["equal"]
    assert len(result["lhs"]) == len(rootsys.weyl_group(rs))


def test_a1_denominator_by_hand(a1):
    lhs = rootsys.weyl_denominator_identity(a1)["lhs"]
    assert lhs == LaurentCharacter.from_dict({(0,): 1, (-1,): -1})


def test_affine_roots_count(a1):
    roots = rootsys.affine_roots(a1, 1)
    # three real roots per mode plus one imaginary root for n = +-1
    assert len(roots) == 8
    assert sum(r.multiplicity for r in roots if not any(r.finite_part)) == 2


def test_zero_affine_root_is_rejected():
    with pytest.raises(InputError):
        AffineRoot(finite_part=(0,), mode=0)


def test_affine_generator_s0_on_a1(a1):
    s0 = rootsys.affine_generators(a1)[0]
    assert s0.length == 1
    assert s0.translation == (2,)
    assert rootsys.affine_weyl_apply(a1, s0, a1.rho) == (Fraction(3, 2),)
    assert rootsys.shifted_weight_sum(a1, s0) == (-1,)


@pytest.mark.parametrize("name,max_length", [("A1", 6), ("A2", 4)])
def test_shifted_weight_sum_over_short_elements(name, max_length):
    rs = rootsys.build_root_system(*rootsys.parse_algebra(name))
    for w in rootsys.affine_weyl_elements(rs, max_length):
        assert len(rootsys.affine_inversion_set(rs, w)) == w.length
        rootsys.shifted_weight_sum(rs, w)


def test_affine_reflection_is_an_involution(a2):
    root = AffineRoot(finite_part=(1, 1), mode=2)
    s = rootsys.affine_reflection(a2, root)
    square = rootsys.affine_compose(a2, s, s)
    assert square.length == 0
    assert square.translation == (0, 0)


def test_imaginary_root_has_no_reflection(a1):
    with pytest.raises(InputError):
        rootsys.affine_reflection(a1, AffineRoot(finite_part=(0,), mode=1))
