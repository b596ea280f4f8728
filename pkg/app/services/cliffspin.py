"""
Spinor modules S_H = wedge(H+) for finite-dimensional Clifford algebras.

Fock basis: index subsets of the H+ basis sorted lexicographically, vacuum
first. Creation c_k^dag carries the sign (-1)^{#{j in S : j < k}}.
For the J-adapted orthonormal basis (e_k, f_k = J e_k):
    rho(e_k) = c_k^dag + c_k,   rho(f_k) = i (c_k^dag - c_k).
"""
import itertools
import logging
from functools import lru_cache
from typing import Dict, List, Tuple

import numpy as np
from scipy.linalg import null_space

from app.core.config import settings
from app.core.errors import InputError, StructuralError
from app.models.algebra import RootSystem, TorusElement, WeylElement
from app.models.spinor import ComplexStructureOperator, EuclideanSpace, SpinorModule, TorusAction
from app.services.rootsys import weyl_inverse

logger = logging.getLogger(__name__)


def fock_basis(modes: int) -> Tuple[Tuple[int, ...], ...]:
    subsets = [c for r in range(modes + 1) for c in itertools.combinations(range(modes), r)]
    return tuple(sorted(subsets))


def creation_operators(modes: int) -> np.ndarray:
    basis = fock_basis(modes)
    index = {s: i for i, s in enumerate(basis)}
    ops = np.zeros((modes, len(basis), len(basis)), dtype=complex)
    for k in range(modes):
        for s in basis:
            if k in s:
                continue
            sign = -1.0 if sum(1 for j in s if j < k) % 2 else 1.0
            target = tuple(sorted(s + (k,)))
            ops[k, index[target], index[s]] = sign
    return ops


def adapted_basis(space: EuclideanSpace, J: ComplexStructureOperator) -> Tuple[np.ndarray, np.ndarray]:
    """g-orthonormal (e_k, J e_k) by Gram-Schmidt over the standard basis vectors."""
    g, j = space.metric, J.matrix
    es: List[np.ndarray] = []
    fs: List[np.ndarray] = []
    for candidate in np.eye(space.dim):
        v = candidate.copy()
        for e, f in zip(es, fs):
            v = v - (e @ g @ v) * e - (f @ g @ v) * f
        norm = np.sqrt(v @ g @ v)
        if norm < 1e-8:
            continue
        e = v / norm
        es.append(e)
        fs.append(j @ e)
        if len(es) == space.dim // 2:
            break
    return np.array(es).T, np.array(fs).T


def spinor_module(space: EuclideanSpace, J: ComplexStructureOperator) -> SpinorModule:
    if J.dim != space.dim:
        raise InputError(f"J has dimension {J.dim}, space has {space.dim}")
    g = space.metric
    defect = np.linalg.norm(J.matrix.T @ g @ J.matrix - g)
    if defect > settings.ORTHOGONALITY_TOL * max(1.0, np.linalg.norm(g)):
        raise InputError(f"J is not orthogonal for g: ||J^T g J - g|| = {defect:.3e}")

    modes = space.dim // 2
    basis = fock_basis(modes)
    cdag = creation_operators(modes)
    c = np.conj(np.transpose(cdag, (0, 2, 1)))
    rho_e = cdag + c
    rho_f = 1j * (cdag - c)

    e, f = adapted_basis(space, J)
    # standard basis vector x_i = sum_k g(x_i, e_k) e_k + g(x_i, f_k) f_k
    coeff_e = g @ e
    coeff_f = g @ f
    action = np.einsum("ik,kab->iab", coeff_e, rho_e) + np.einsum("ik,kab->iab", coeff_f, rho_f)
    grading = np.array([(-1) ** len(s) for s in basis], dtype=float)
    return SpinorModule(
        space=space,
        basis=basis,
        clifford_action=action,
        grading=grading,
        complex_structure=J,
        adapted_e=e,
        adapted_f=f,
    )


def clifford_residuals(S: SpinorModule) -> Dict[str, float]:
    """Anticommutator, parity and vacuum defects of a module."""
    g = S.space.metric
    n = S.fock_dim
    ident = np.eye(n)
    gamma = S.grading_operator
    anticommutator = 0.0
    parity = 0.0
    for i in range(S.space.dim):
        a = S.clifford_action[i]
        parity = max(parity, np.abs(gamma @ a + a @ gamma).max())
        for k in range(i, S.space.dim):
            b = S.clifford_action[k]
            anticommutator = max(anticommutator, np.abs(a @ b + b @ a - 2 * g[i, k] * ident).max())
    out = {"anticommutator": float(anticommutator), "parity": float(parity)}
    if S.adapted_e is not None:
        vacuum = np.zeros(n)
        vacuum[0] = 1.0
        annihilated = max(
            np.abs(S.rho(S.adapted_e[:, k] + 1j * S.adapted_f[:, k]) @ vacuum).max()
            for k in range(S.adapted_e.shape[1])
        )
        out["vacuum"] = float(annihilated)
    return out


def _solve_intertwiners(actions0: np.ndarray, actions1: np.ndarray) -> np.ndarray:
    """Null space of T rho0(v) = rho1(v) T, vec(T) column-major; returns (k, n1, n0)."""
    n0, n1 = actions0.shape[1], actions1.shape[1]
    blocks = [np.kron(a0.T, np.eye(n1)) - np.kron(np.eye(n0), a1) for a0, a1 in zip(actions0, actions1)]
    kernel = null_space(np.vstack(blocks), rcond=1e-10)
    return np.array([kernel[:, j].reshape((n1, n0), order="F") for j in range(kernel.shape[1])])


def _fix_phase(T: np.ndarray) -> np.ndarray:
    flat = T.ravel(order="F")
    pivot = flat[np.argmax(np.abs(flat) > 1e-8 * np.abs(flat).max())]
    return T * (np.abs(pivot) / pivot)


def intertwiner_space(S0: SpinorModule, S1: SpinorModule) -> Dict[str, object]:
    if S0.space.dim != S1.space.dim or not np.allclose(S0.space.metric, S1.space.metric, atol=1e-12):
        raise InputError("intertwiners need modules over the same Euclidean space")
    solutions = _solve_intertwiners(S0.clifford_action, S1.clifford_action)
    if len(solutions) != 1:
        raise StructuralError(f"intertwiner space has dimension {len(solutions)}, expected 1")
    T = solutions[0]
    T = T / np.sqrt(np.trace(T.conj().T @ T).real / S0.fock_dim)
    T = _fix_phase(T)
    graded = S1.grading_operator @ T @ S0.grading_operator
    if np.abs(graded - T).max() < 1e-8:
        parity = 0
    elif np.abs(graded + T).max() < 1e-8:
        parity = 1
    else:
        raise StructuralError("intertwiner is not homogeneous")
    return {"dimension": 1, "parity": parity, "basis": T}


def implementer(A: np.ndarray, S: SpinorModule, tol: float = None) -> np.ndarray:
    """
    Unitary U with U rho(v) U^{-1} = rho(A v). U.vacuum is the pure spinor
    annihilated by rho(A(e_k + i J e_k)); its first nonzero entry is made real
    positive, and U|S> = prod_k (rho(A e_k) - i rho(A f_k))/2 applied to it.
    """
    tol = tol or settings.IMPLEMENTER_TOL
    if S.adapted_e is None:
        raise InputError("implementer needs a module built from a complex structure")
    A = np.asarray(A, dtype=float)
    g = S.space.metric
    defect = np.linalg.norm(A.T @ g @ A - g)
    if defect > tol * max(1.0, np.linalg.norm(g)):
        raise InputError(f"A is not orthogonal: ||A^T g A - g|| = {defect:.3e}")

    e, f = S.adapted_e, S.adapted_f
    modes = e.shape[1]
    annihilators = [S.rho(A @ (e[:, k] + 1j * f[:, k])) for k in range(modes)]
    kernel = null_space(np.vstack(annihilators), rcond=1e-10)
    if kernel.shape[1] != 1:
        raise InputError(f"no implementer at tolerance: pure-spinor space has dimension {kernel.shape[1]}")
    psi = kernel[:, 0]
    psi = psi / np.linalg.norm(psi)
    pivot = psi[np.argmax(np.abs(psi) > 1e-8)]
    psi = psi * (np.abs(pivot) / pivot)

    creators = [(S.rho(A @ e[:, k]) - 1j * S.rho(A @ f[:, k])) / 2 for k in range(modes)]
    U = np.zeros((S.fock_dim, S.fock_dim), dtype=complex)
    for col, subset in enumerate(S.basis):
        vec = psi
        for k in reversed(subset):
            vec = creators[k] @ vec
        U[:, col] = vec

    residual = implementer_residual(U, A, S)
    unitarity = np.abs(U.conj().T @ U - np.eye(S.fock_dim)).max()
    if residual > tol or unitarity > tol:
        raise InputError(
            f"no implementer at tolerance {tol:.1e}: intertwining {residual:.3e}, unitarity {unitarity:.3e}"
        )
    return U


def implementer_residual(U: np.ndarray, A: np.ndarray, S: SpinorModule) -> float:
    Uinv = U.conj().T
    return float(
        max(
            np.abs(U @ S.clifford_action[i] @ Uinv - S.rho(A[:, i])).max()
            for i in range(S.space.dim)
        )
    )


def scalar_ratio(X: np.ndarray, Y: np.ndarray) -> Tuple[complex, float]:
    """Best scalar c with X = c Y and the remaining defect."""
    c = np.vdot(Y, X) / np.vdot(Y, Y)
    return complex(c), float(np.abs(X - c * Y).max())


def parity_of_kernel(J0: np.ndarray, J1: np.ndarray, tol: float = 1e-8) -> int:
    """Parity of half the dimension of ker(J0 + J1)."""
    singular = np.linalg.svd(J0 + J1, compute_uv=False)
    kernel_dim = int(np.sum(singular < tol))
    return (kernel_dim // 2) % 2


# --- the spinor module of g/t ---------------------------------------------


@lru_cache(maxsize=None)
def weyl_spinor_module(rs: RootSystem) -> Tuple[SpinorModule, TorusAction]:
    """
    S_{g/t}: real coordinates (x_a, y_a) per positive root a, J x_a = y_a, so
    that the k-th H+ basis vector carries weight alpha_k.
    """
    dim = 2 * len(rs.positive_roots)
    space = EuclideanSpace.standard(dim)
    J = ComplexStructureOperator.standard(dim)
    S = spinor_module(space, J)
    T = TorusAction(weights=rs.positive_roots, basis=S.basis)
    return S, T


def torus_rotation(rs: RootSystem, t: TorusElement) -> np.ndarray:
    """Rotation of plane a by 2 pi alpha_a(xi)."""
    dim = 2 * len(rs.positive_roots)
    R = np.zeros((dim, dim))
    for k, alpha in enumerate(rs.positive_roots):
        angle = 2 * np.pi * sum(c * a for c, a in zip(alpha, t.angles))
        c, s = np.cos(angle), np.sin(angle)
        R[2 * k:2 * k + 2, 2 * k:2 * k + 2] = [[c, -s], [s, c]]
    return R


def weyl_orthogonal_map(rs: RootSystem, w: WeylElement) -> np.ndarray:
    """A_w on g/t: plane of alpha goes to plane of |w alpha|, conjugated when w alpha < 0."""
    dim = 2 * len(rs.positive_roots)
    A = np.zeros((dim, dim))
    for k, alpha in enumerate(rs.positive_roots):
        image = tuple(int(c) for c in w.apply(alpha))
        if rs.is_positive(image):
            j, sign = rs.positive_index(image), 1.0
        else:
            j, sign = rs.positive_index(tuple(-c for c in image)), -1.0
        A[2 * j, 2 * k] = 1.0
        A[2 * j + 1, 2 * k + 1] = sign
    return A


def commweil_check(rs: RootSystem, w: WeylElement, t: TorusElement, tol: float = None) -> Dict[str, object]:
    """g^-1 T(t) g T(w^-1 t)^-1 must be the scalar t^{rho - w rho}."""
    tol = tol or settings.IMPLEMENTER_TOL
    S, T = weyl_spinor_module(rs)
    g_hat = implementer(weyl_orthogonal_map(rs, w), S)
    w_inv_t = t.inverse_image(w)
    operator = g_hat.conj().T @ T.matrix(t) @ g_hat @ np.linalg.inv(T.matrix(w_inv_t))
    scalar = complex(operator[0, 0])
    spread = float(np.abs(operator - scalar * np.eye(S.fock_dim)).max())
    if spread > tol:
        raise StructuralError(f"commutation operator is not scalar (spread {spread:.3e}) for w = {w.word}")
    shift = tuple(int(a - b) for a, b in zip(rs.rho, w.apply(rs.rho)))
    expected = t.character(shift)
    return {
        "scalar": scalar,
        "expected": expected,
        "weight": shift,
        "error": abs(scalar - expected),
        "pass": abs(scalar - expected) <= tol,
    }


def graded_character(S: SpinorModule, T: TorusAction, t: TorusElement) -> complex:
    """Supertrace tr(t|S_even) - tr(t|S_odd)."""
    return complex(np.sum(S.grading * np.diag(T.matrix(t))))


def subspace_factorization(
    space: EuclideanSpace,
    W_basis: np.ndarray,
    J: ComplexStructureOperator,
    J_prime: np.ndarray,
) -> SpinorModule:
    """
    S_W = Hom_{Cl(H')}(S_{H'}, S_H) with H' = W^perp. Cl(W) acts by
    w.T = rho_H(w) T Gamma_{H'}; the grading is T -> Gamma_H T Gamma_{H'}.
    The returned basis lists the even part first.
    """
    g = space.metric
    W_basis = np.atleast_2d(np.asarray(W_basis, dtype=float))
    k = np.linalg.matrix_rank(W_basis)
    if k % 2 or k != W_basis.shape[1]:
        raise InputError(f"W must have even dimension with independent columns, got rank {k}")

    W = _g_orthonormalize(W_basis, g)
    U = _g_orthonormalize(null_space(W.T @ g), g)
    j_prime = np.asarray(J_prime, dtype=float)
    restricted = U.T @ g @ j_prime @ U
    if np.abs(j_prime @ U - U @ restricted).max() > settings.ORTHOGONALITY_TOL:
        raise InputError("J' does not preserve W^perp")

    S_H = spinor_module(space, J)
    S_Hp = spinor_module(EuclideanSpace.standard(U.shape[1]), ComplexStructureOperator(restricted))
    ambient = np.array([S_H.rho(U[:, a]) for a in range(U.shape[1])])
    hom = _solve_intertwiners(S_Hp.clifford_action, ambient)
    expected = 2 ** (k // 2)
    if len(hom) != expected:
        raise StructuralError(f"Hom dimension {len(hom)} differs from 2^(dim W/2) = {expected}")

    gamma_H, gamma_Hp = S_H.grading_operator, S_Hp.grading_operator
    flat = np.array([T.ravel() for T in hom]).T
    q, _ = np.linalg.qr(flat)
    graded = np.array([(gamma_H @ q[:, a].reshape(hom[0].shape) @ gamma_Hp).ravel() for a in range(expected)]).T
    parity_matrix = q.conj().T @ graded
    eigvals, eigvecs = np.linalg.eigh((parity_matrix + parity_matrix.conj().T) / 2)
    order = np.argsort(-eigvals, kind="stable")
    basis_flat = q @ eigvecs[:, order]
    grading = np.where(eigvals[order] > 0, 1.0, -1.0)
    maps = [basis_flat[:, a].reshape(hom[0].shape) for a in range(expected)]

    action = np.zeros((k, expected, expected), dtype=complex)
    for i in range(k):
        rho_w = S_H.rho(W[:, i])
        for b, Tb in enumerate(maps):
            image = (rho_w @ Tb @ gamma_Hp).ravel()
            action[i, :, b] = basis_flat.conj().T @ image
    labels = tuple(("even" if s > 0 else "odd", a) for a, s in enumerate(grading))
    logger.debug(f"S_W built: dim W = {k}, Hom dimension {expected}")
    return SpinorModule(
        space=EuclideanSpace.standard(k),
        basis=labels,
        clifford_action=action,
        grading=grading,
    )


def _g_orthonormalize(vectors: np.ndarray, g: np.ndarray) -> np.ndarray:
    out: List[np.ndarray] = []
    for v in vectors.T:
        v = v.astype(float).copy()
        for u in out:
            v = v - (u @ g @ v) * u
        norm = np.sqrt(v @ g @ v)
        if norm > 1e-10:
            out.append(v / norm)
    return np.array(out).T
