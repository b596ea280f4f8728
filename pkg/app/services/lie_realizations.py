"""
Matrix realizations of the compact simple Lie algebras behind each supported
root system, normalized to the basic inner product.

Normalization: with e_a orthonormal for -Re tr(XY), the longest root has
|alpha|^2 = L in that form; the basic inner product is B = (L / 8 pi^2)(-tr),
so that t^alpha = exp(2 pi i alpha(xi)) has B(theta, theta) = 2.
"""
import itertools
import logging
from functools import lru_cache
from typing import List

import numpy as np
from scipy.linalg import null_space, orth

from app.core.errors import StructuralError
from app.models.algebra import LieType
from app.models.lie import CompactLieAlgebra
from app.services.rootsys import build_root_system, parse_algebra

logger = logging.getLogger(__name__)

CARTAN_SEED = 20_240_601

G2_FORM_TERMS = [
    (+1, (1, 2, 3)), (+1, (1, 4, 5)), (+1, (1, 6, 7)), (+1, (2, 4, 6)),
    (-1, (2, 5, 7)), (-1, (3, 4, 7)), (-1, (3, 5, 6)),
]


def _unit(n: int, i: int, j: int) -> np.ndarray:
    m = np.zeros((n, n), dtype=complex)
    m[i, j] = 1.0
    return m


def unitary_generators(n: int) -> List[np.ndarray]:
    """Spanning set of u(n)."""
    out = []
    for i, j in itertools.combinations(range(n), 2):
        out.append(_unit(n, i, j) - _unit(n, j, i))
        out.append(1j * (_unit(n, i, j) + _unit(n, j, i)))
    for i in range(n):
        out.append(1j * _unit(n, i, i))
    return out


def su_generators(n: int) -> List[np.ndarray]:
    out = [X for X in unitary_generators(n) if abs(np.trace(X)) == 0]
    for i in range(n - 1):
        out.append(1j * (_unit(n, i, i) - _unit(n, i + 1, i + 1)))
    return out


def so_generators(n: int) -> List[np.ndarray]:
    return [_unit(n, i, j) - _unit(n, j, i) for i, j in itertools.combinations(range(n), 2)]


def sp_generators(rank: int) -> List[np.ndarray]:
    """Compact sp(rank) = u(2 rank) cap sp(2 rank, C), by projection X -> (X - Omega^{-1} X^T Omega)/2."""
    n = 2 * rank
    omega = np.zeros((n, n))
    omega[:rank, rank:] = np.eye(rank)
    omega[rank:, :rank] = -np.eye(rank)
    omega_inv = np.linalg.inv(omega)
    return [(X - omega_inv @ X.T @ omega) / 2 for X in unitary_generators(n)]


def g2_generators() -> List[np.ndarray]:
    """Stabilizer in so(7) of the associative 3-form."""
    phi = np.zeros((7, 7, 7))
    for sign, (a, b, c) in G2_FORM_TERMS:
        for perm in itertools.permutations(range(3)):
            idx = tuple((a - 1, b - 1, c - 1)[p] for p in perm)
            parity = np.linalg.det(np.eye(3)[list(perm)])
            phi[idx] = sign * parity
    basis = so_generators(7)
    columns = []
    for X in basis:
        x = X.real
        action = (
            np.einsum("ad,dbc->abc", x, phi)
            + np.einsum("bd,adc->abc", x, phi)
            + np.einsum("cd,abd->abc", x, phi)
        )
        columns.append(action.ravel())
    kernel = null_space(np.array(columns).T)
    if kernel.shape[1] != 14:
        raise StructuralError(f"stabilizer of the 3-form has dimension {kernel.shape[1]}, expected 14")
    return [np.tensordot(kernel[:, k], np.array(basis), axes=1) for k in range(kernel.shape[1])]


REALIZATIONS = {
    (LieType.A, 1): lambda: su_generators(2),
    (LieType.A, 2): lambda: su_generators(3),
    (LieType.A, 3): lambda: su_generators(4),
    (LieType.B, 2): lambda: so_generators(5),
    (LieType.B, 3): lambda: so_generators(7),
    (LieType.C, 3): lambda: sp_generators(3),
    (LieType.G, 2): g2_generators,
}


def _trace_orthonormal(generators: List[np.ndarray]) -> np.ndarray:
    """Orthonormal basis of the real span for -Re tr(XY) (= Frobenius on anti-hermitian matrices)."""
    n = generators[0].shape[0]
    embedded = np.array([np.concatenate([X.real.ravel(), X.imag.ravel()]) for X in generators]).T
    q = orth(embedded)
    return np.array([(q[: n * n, k] + 1j * q[n * n:, k]).reshape(n, n) for k in range(q.shape[1])])


def _structure_constants(matrices: np.ndarray) -> np.ndarray:
    """f_abc = <[e_a, e_b], e_c> for a trace-orthonormal basis."""
    commutators = np.einsum("aij,bjk->abik", matrices, matrices) - np.einsum("bij,ajk->abik", matrices, matrices)
    return -np.einsum("abij,cji->abc", commutators, matrices).real


@lru_cache(maxsize=None)
def build_compact_algebra(name: str) -> CompactLieAlgebra:
    lie_type, rank = parse_algebra(name)
    rs = build_root_system(lie_type, rank)
    generators = REALIZATIONS[(lie_type, rank)]()
    basis = _trace_orthonormal(generators)
    dim = basis.shape[0]
    expected_dim = rank + 2 * len(rs.positive_roots)
    if dim != expected_dim:
        raise StructuralError(f"realization of {name} has dimension {dim}, expected {expected_dim}")
    f = _structure_constants(basis)

    # Cartan subalgebra: centralizer of a fixed generic element
    rng = np.random.default_rng(CARTAN_SEED)
    generic = rng.standard_normal(dim)
    ad_generic = np.einsum("a,abc->cb", generic, f)
    cartan = null_space(ad_generic, rcond=1e-9)
    if cartan.shape[1] != rank:
        raise StructuralError(f"centralizer of a generic element has dimension {cartan.shape[1]}, expected {rank}")
    complement = null_space(cartan.T)
    Q = np.hstack([cartan, complement])
    basis = np.einsum("aj,amn->jmn", Q, basis)
    f = np.einsum("ai,bj,ck,abc->ijk", Q, Q, Q, f)

    # roots: simultaneous eigenvalues of ad(h_i) on the complement of t
    blocks = [f[i].T[rank:, rank:] for i in range(rank)]
    mix = rng.standard_normal(rank)
    generic_h = sum(m * b for m, b in zip(mix, blocks))
    _, vectors = np.linalg.eigh(-1j * generic_h)
    pairings = np.array([[np.vdot(v, -1j * b @ v).real for b in blocks] for v in vectors.T])
    longest = float(np.max(np.sum(pairings ** 2, axis=1)))
    trace_scale = longest / (8 * np.pi ** 2)
    root_scale = 1.0 / np.sqrt(trace_scale)

    algebra = CompactLieAlgebra(
        lie_type=lie_type,
        rank=rank,
        matrices=basis * root_scale,
        structure_constants=f * root_scale,
        trace_scale=trace_scale,
        root_pairings=pairings * root_scale,
        root_system=rs,
    )
    logger.info(f"✅ Compact Lie algebra {name} realized: dim {dim}, matrix size {algebra.matrix_size}")
    return algebra


def algebra_residuals(alg: CompactLieAlgebra) -> dict:
    """Antisymmetry, Jacobi, invariance and orthonormality defects of the structure constants."""
    f = alg.structure_constants
    antisymmetry = float(np.abs(f + np.transpose(f, (1, 0, 2))).max())
    invariance = float(np.abs(f + np.transpose(f, (0, 2, 1))).max())
    # [[x_a, x_b], x_c] + cyclic
    jacobi_tensor = (
        np.einsum("abd,dce->abce", f, f)
        + np.einsum("bcd,dae->abce", f, f)
        + np.einsum("cad,dbe->abce", f, f)
    )
    gram = -alg.trace_scale * np.einsum("aij,bji->ab", alg.matrices, alg.matrices).real
    commutators = np.einsum("aij,bjk->abik", alg.matrices, alg.matrices) - np.einsum(
        "bij,ajk->abik", alg.matrices, alg.matrices
    )
    closure = float(np.abs(commutators - np.einsum("abc,cij->abij", f, alg.matrices)).max())
    return {
        "antisymmetry": antisymmetry,
        "invariance": invariance,
        "jacobi": float(np.abs(jacobi_tensor).max()),
        "orthonormality": float(np.abs(gram - np.eye(alg.dim)).max()),
        "closure": closure,
    }
