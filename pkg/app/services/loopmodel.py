"""
Fourier-truncated loop algebra L g with constant connections mu in t.

For mu in t, d_mu = d + ad_mu is block diagonal in the Fourier modes:
on the mode-n block it is 2 pi i n + ad_mu, and -i d_mu has eigenvalues
2 pi n + a_j where ad_mu v_j = i a_j v_j. Every spectral operator
(J_mu, D_mu, chi(d_mu)) is assembled from that one eigendecomposition.
"""
import logging
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy.linalg import block_diag

from app.core.config import settings
from app.core.errors import InputError, ModeBudgetError, StructuralError, UnsupportedInputError
from app.models.lie import CompactLieAlgebra
from app.models.loop import ChiProfile, LoopOperator, SobolevWeight, TruncatedLoop
from app.services.rootsys import dual_coxeter

logger = logging.getLogger(__name__)


def cartan_vector(alg: CompactLieAlgebra, mu) -> np.ndarray:
    """Accepts t-coordinates (length rank) or full coordinates that must lie in t."""
    mu = np.asarray(mu, dtype=float)
    if mu.shape == (alg.rank,):
        return alg.cartan_element(mu)
    if mu.shape != (alg.dim,):
        raise UnsupportedInputError(f"mu must have {alg.rank} or {alg.dim} coordinates, got {mu.shape}")
    if np.abs(mu[alg.rank:]).max(initial=0.0) > 1e-12:
        raise UnsupportedInputError("mu is not in the Cartan subalgebra t")
    return mu


@lru_cache(maxsize=256)
def _spectral_cache(alg: CompactLieAlgebra, mu_key: Tuple[float, ...]) -> Tuple[np.ndarray, np.ndarray]:
    ad_mu = alg.ad(np.array(mu_key))
    values, vectors = np.linalg.eigh(-1j * ad_mu)
    return values, vectors


def spectral_data(alg: CompactLieAlgebra, mu) -> Tuple[np.ndarray, np.ndarray]:
    """(a, V) with -i ad_mu = V diag(a) V^dagger."""
    return _spectral_cache(alg, tuple(float(x) for x in cartan_vector(alg, mu)))


def modes(N: int) -> np.ndarray:
    return np.arange(-N, N + 1)


def block_eigenvalues(alg: CompactLieAlgebra, mu, N: int) -> np.ndarray:
    """Eigenvalues of -i d_mu, shape (2N+1, dim), row n+N."""
    a, _ = spectral_data(alg, mu)
    return 2 * np.pi * modes(N)[:, None] + a[None, :]


def _spectral_operator(alg: CompactLieAlgebra, mu, N: int, fn: Callable[[np.ndarray], np.ndarray],
                       label: str) -> LoopOperator:
    _, V = spectral_data(alg, mu)
    lam = block_eigenvalues(alg, mu, N)
    blocks = [(V * fn(lam[k])) @ V.conj().T for k in range(2 * N + 1)]
    return LoopOperator(matrix=block_diag(*blocks), label=label, cutoff=N, dim=alg.dim)


def covariant_derivative(alg: CompactLieAlgebra, mu, N: int) -> LoopOperator:
    ad_mu = alg.ad(cartan_vector(alg, mu))
    blocks = [2j * np.pi * n * np.eye(alg.dim) + ad_mu for n in modes(N)]
    return LoopOperator(matrix=block_diag(*blocks), label="d_mu", cutoff=N, dim=alg.dim)


def _sign(lam: np.ndarray, tol: float) -> np.ndarray:
    return np.where(np.abs(lam) <= tol, 0.0, np.sign(lam))


def jmu(alg: CompactLieAlgebra, mu, N: int, tol: float = None) -> LoopOperator:
    """J_mu = d_mu / |d_mu| off the kernel, zero on it."""
    tol = tol or settings.KERNEL_TOL
    return _spectral_operator(alg, mu, N, lambda lam: 1j * _sign(lam, tol), "J_mu")


def dmu(alg: CompactLieAlgebra, mu, N: int, tol: float = None) -> LoopOperator:
    """|d_mu| off the kernel, the identity on it."""
    tol = tol or settings.KERNEL_TOL
    return _spectral_operator(alg, mu, N, lambda lam: np.where(np.abs(lam) <= tol, 1.0, np.abs(lam)), "D_mu")


def kernel_projection(alg: CompactLieAlgebra, mu, N: int, tol: float = None) -> LoopOperator:
    tol = tol or settings.KERNEL_TOL
    return _spectral_operator(alg, mu, N, lambda lam: (np.abs(lam) <= tol).astype(float), "P_ker")


def chi_cutoff(alg: CompactLieAlgebra, mu, N: int, chi: ChiProfile, tol: float = None) -> Dict[str, object]:
    """chi(d_mu) by spectral calculus and its finite-rank difference from D_mu."""
    tol = tol or settings.KERNEL_TOL
    lam = block_eigenvalues(alg, mu, N)
    chi_values = chi(lam)
    if chi_values.min() <= 0:
        raise InputError(f"chi is not strictly positive on the spectrum (min {chi_values.min():.3e})")
    d_values = np.where(np.abs(lam) <= tol, 1.0, np.abs(lam))
    rank_diff = int(np.sum(np.abs(chi_values - d_values) > settings.RANK_TOL))
    kernel_dim = int(np.sum(np.abs(lam) <= tol))
    small = int(np.sum((np.abs(lam) > tol) & (np.abs(lam) < chi.eps)))
    bound = kernel_dim + small
    if rank_diff > bound:
        raise StructuralError(f"rank(chi(d_mu) - D_mu) = {rank_diff} exceeds spectral bound {bound}")
    return {
        "op": _spectral_operator(alg, mu, N, chi, "chi(d_mu)"),
        "sqrt_op": _spectral_operator(alg, mu, N, lambda x: np.sqrt(chi(x)), "chi(d_mu)^1/2"),
        "finite_rank_diff": rank_diff,
        "spectral_bound": bound,
        "kernel_dim": kernel_dim,
    }


def flip_count(alg: CompactLieAlgebra, mu, N: int, tol: float = None) -> Dict[str, int]:
    """rank(J_mu - J_0) blockwise against the sign changes of the spectrum."""
    tol = tol or settings.KERNEL_TOL
    lam_mu = block_eigenvalues(alg, mu, N)
    lam_0 = np.repeat((2 * np.pi * modes(N))[:, None], alg.dim, axis=1)
    changed = int(np.sum(_sign(lam_mu, tol) != _sign(lam_0, tol)))
    J_mu = jmu(alg, mu, N, tol)
    J_0 = jmu(alg, np.zeros(alg.rank), N, tol)
    rank = 0
    for n in modes(N):
        diff = J_mu.block(n) - J_0.block(n)
        rank += int(np.linalg.matrix_rank(diff, tol=settings.RANK_TOL))
    return {"rank": rank, "sign_changes": changed, "flip_pairs": changed // 2}


def mode_reversal(N: int, dim: int) -> np.ndarray:
    """Matrix of the bilinear L^2 pairing: <xi, zeta> = sum_n xi_n . zeta_{-n}."""
    size = (2 * N + 1) * dim
    perm = np.zeros((size, size))
    for k in range(2 * N + 1):
        j = 2 * N - k
        perm[k * dim:(k + 1) * dim, j * dim:(j + 1) * dim] = np.eye(dim)
    return perm


def l2_pairing(xi: TruncatedLoop, zeta: TruncatedLoop) -> complex:
    return complex(np.sum(xi.coefficients * zeta.coefficients[::-1]))


def coadjoint_form(alg: CompactLieAlgebra, mu, xi: TruncatedLoop, zeta: TruncatedLoop) -> float:
    """omega_mu(xi, zeta) = int d_mu xi . zeta."""
    if xi.cutoff != zeta.cutoff:
        raise InputError("loops must share a cutoff")
    value = l2_pairing(covariant_derivative(alg, mu, xi.cutoff).apply(xi), zeta)
    return float(value.real)


def real_loop_basis(N: int, dim: int) -> np.ndarray:
    """Columns: constants, then cos and sin in each mode, as coefficient vectors."""
    columns = []
    eye = np.eye(dim)
    for a in range(dim):
        columns.append(TruncatedLoop.constant(N, eye[a]).vector)
    for n in range(1, N + 1):
        for a in range(dim):
            columns.append(TruncatedLoop.cosine(N, eye[a], n).vector)
            columns.append(TruncatedLoop.sine(N, eye[a], n).vector)
    return np.array(columns).T


def compatible_metric_matrix(alg: CompactLieAlgebra, mu, N: int, tol: float = None) -> Dict[str, object]:
    """
    g_mu(xi, zeta) = omega_mu(xi, J_mu zeta) on the real loop basis, compared
    with the D_mu-weighted pairing on the complement of ker d_mu.
    """
    tol = tol or settings.KERNEL_TOL
    basis = real_loop_basis(N, alg.dim)
    pairing = mode_reversal(N, alg.dim)
    d = covariant_derivative(alg, mu, N).matrix
    J = jmu(alg, mu, N).matrix
    D = dmu(alg, mu, N).matrix
    P = kernel_projection(alg, mu, N).matrix
    complement = np.eye(P.shape[0]) - P
    g = ((d @ basis).T @ pairing @ (J @ basis)).real
    weighted = ((D @ complement @ basis).T @ pairing @ (complement @ basis)).real
    eigenvalues = np.linalg.eigvalsh((g + g.T) / 2)
    scale = max(1.0, np.abs(eigenvalues).max())
    kernel_dim = int(np.sum(np.abs(eigenvalues) <= tol * scale))
    expected_kernel = int(np.sum(np.abs(block_eigenvalues(alg, mu, N)) <= tol))
    return {
        "metric": g,
        "symmetry": float(np.abs(g - g.T).max()),
        "min_eigenvalue": float(eigenvalues.min()),
        "kernel_dim": kernel_dim,
        "expected_kernel_dim": expected_kernel,
        "weighted_residual": float(np.abs(g - weighted).max()),
    }


def sobolev_gram(alg: CompactLieAlgebra, N: int, s: float) -> np.ndarray:
    """Gram matrix of sum_n w(n)^2 X_n . conj(Y_n), w(n) = (1 + (2 pi n)^2)^{s/2}."""
    weights = SobolevWeight(s).weight(modes(N)) ** 2
    return np.diag(np.repeat(weights, alg.dim))


def normalized_singular_values(alg: CompactLieAlgebra, mu, N: int, s: float, tol: float = None) -> np.ndarray:
    """Singular values of omega^flat : H_s -> (H_s)^*, off the kernel."""
    tol = tol or settings.KERNEL_TOL
    weight = SobolevWeight(s)
    ad_mu = alg.ad(cartan_vector(alg, mu))
    values = []
    for n in modes(N):
        w = float(weight.weight(n))
        block = (2j * np.pi * n * np.eye(alg.dim) + ad_mu) / (w * w)
        sigma = np.linalg.svd(block, compute_uv=False)
        values.extend(sigma[sigma * w * w > tol])
    return np.array(values)


def weak_strong_report(alg: CompactLieAlgebra, mu, s: float, N_list: Sequence[int]) -> Dict[str, object]:
    rows = []
    for N in N_list:
        sigma = normalized_singular_values(alg, mu, N, s)
        rows.append({
            "N": int(N),
            "sigma_min": float(sigma.min()),
            "sigma_max": float(sigma.max()),
            "band_ratio": float(sigma.max() / sigma.min()),
        })
    frame = pd.DataFrame(rows)
    ratios = frame["band_ratio"].to_numpy()
    variation = float(np.max(np.abs(np.diff(ratios)) / ratios[:-1])) if len(ratios) > 1 else 0.0
    minima = frame["sigma_min"].to_numpy()
    monotone = bool(np.all(np.diff(minima) < 0))
    predicted = (frame["N"].to_numpy() / frame["N"].iloc[0]) ** (1 - 2 * s)
    observed = minima / minima[0]
    rate_ratio = observed / predicted
    return {
        "sobolev": s,
        "rows": rows,
        "band_variation": variation,
        "monotone_decay": monotone,
        "rate_ratio_min": float(rate_ratio.min()),
        "rate_ratio_max": float(rate_ratio.max()),
        "rate_consistent": bool(np.all((rate_ratio >= 0.5) & (rate_ratio <= 2.0))),
    }


# --- brackets and cocycles -------------------------------------------------


def loop_bracket(alg: CompactLieAlgebra, xi: TruncatedLoop, zeta: TruncatedLoop) -> TruncatedLoop:
    """Pointwise bracket by mode convolution; modes beyond the cutoff must vanish."""
    N = xi.cutoff
    if xi.max_mode + zeta.max_mode > N:
        raise ModeBudgetError(f"bracket of modes {xi.max_mode} and {zeta.max_mode} leaves cutoff {N}")
    out = np.zeros_like(xi.coefficients)
    f = alg.structure_constants
    for n in range(-xi.max_mode, xi.max_mode + 1):
        x = xi.mode(n)
        if not np.any(x):
            continue
        for m in range(-zeta.max_mode, zeta.max_mode + 1):
            out[n + m + N] += np.einsum("a,b,abc->c", x, zeta.mode(m), f)
    return TruncatedLoop(N, out)


def kp_cocycle(alg: CompactLieAlgebra, xi: TruncatedLoop, zeta: TruncatedLoop) -> complex:
    """psi(xi, zeta) = (1/4 pi i) int B_kil(d xi, zeta) = 1/2 sum_n n B_kil(X_n, Y_{-n})."""
    killing = alg.killing_form
    total = 0j
    for n in range(-xi.cutoff, xi.cutoff + 1):
        if n:
            total += n * (xi.mode(n) @ killing @ zeta.mode(-n))
    return complex(total / 2)


def central_cocycle(xi: TruncatedLoop, zeta: TruncatedLoop) -> complex:
    """2 pi i int d xi . zeta for the basic inner product."""
    total = 0j
    for n in range(-xi.cutoff, xi.cutoff + 1):
        if n:
            total += 2j * np.pi * n * (xi.mode(n) @ zeta.mode(-n))
    return complex(2j * np.pi * total)


def central_bracket(alg: CompactLieAlgebra, a: Tuple[TruncatedLoop, complex],
                    b: Tuple[TruncatedLoop, complex]) -> Tuple[TruncatedLoop, complex]:
    (xi1, _), (xi2, _) = a, b
    return loop_bracket(alg, xi1, xi2), central_cocycle(xi1, xi2)


def _check_budget(loops: Iterable[TruncatedLoop]) -> None:
    for loop in loops:
        if 3 * loop.max_mode > loop.cutoff:
            raise ModeBudgetError(f"mode {loop.max_mode} exceeds the budget N/3 for N = {loop.cutoff}")


def cocycle_identity_check(alg: CompactLieAlgebra, x1: TruncatedLoop, x2: TruncatedLoop,
                           x3: TruncatedLoop) -> Dict[str, float]:
    """psi([x1,x2],x3) + psi([x2,x3],x1) + psi([x3,x1],x2) = 0."""
    _check_budget((x1, x2, x3))
    terms = [
        kp_cocycle(alg, loop_bracket(alg, x1, x2), x3),
        kp_cocycle(alg, loop_bracket(alg, x2, x3), x1),
        kp_cocycle(alg, loop_bracket(alg, x3, x1), x2),
    ]
    absolute = abs(sum(terms))
    scale = max(1.0, sum(abs(t) for t in terms))
    return {"absolute": float(absolute), "relative": float(absolute / scale),
            "antisymmetry": float(abs(kp_cocycle(alg, x1, x2) + kp_cocycle(alg, x2, x1)))}


def central_jacobi_check(alg: CompactLieAlgebra, x1: TruncatedLoop, x2: TruncatedLoop,
                         x3: TruncatedLoop) -> Dict[str, float]:
    """Jacobi identity of the centrally extended bracket, loop and central parts."""
    _check_budget((x1, x2, x3))
    elements = [(x, 0j) for x in (x1, x2, x3)]
    loop_part = np.zeros_like(x1.coefficients)
    loop_scale = 0.0
    central_part = 0j
    central_scale = 0.0
    for i in range(3):
        a, b, c = elements[i], elements[(i + 1) % 3], elements[(i + 2) % 3]
        inner = central_bracket(alg, a, b)
        outer_loop, outer_central = central_bracket(alg, inner, c)
        loop_part = loop_part + outer_loop.coefficients
        loop_scale += float(np.abs(outer_loop.coefficients).max())
        central_part += outer_central
        central_scale += abs(outer_central)
    return {
        "loop_part": float(np.abs(loop_part).max() / max(1.0, loop_scale)),
        "central_part": float(abs(central_part) / max(1.0, central_scale)),
    }


def level_check(alg: CompactLieAlgebra) -> Dict[str, float]:
    """B_kil = -8 pi^2 h B_basic; the basis is B_basic-orthonormal."""
    h = dual_coxeter(alg.root_system)
    expected = -8 * np.pi ** 2 * h * np.eye(alg.dim)
    return {"dual_coxeter": h, "residual": float(np.abs(alg.killing_form - expected).max())}


# --- projections onto ker d_mu ---------------------------------------------


def rmu_smu(alg: CompactLieAlgebra, mu, N: int, tol: float = None) -> Dict[str, object]:
    """
    R: loops -> g_a, orthogonal projection onto ker d_mu followed by
    v_j z^n -> v_j (the kernel loops are Ad_{exp(-t mu)} X); S is its adjoint.
    """
    tol = tol or settings.KERNEL_TOL
    _, V = spectral_data(alg, mu)
    lam = block_eigenvalues(alg, mu, N)
    size = (2 * N + 1) * alg.dim
    stack: List[np.ndarray] = []
    targets: List[np.ndarray] = []
    for k, n in enumerate(modes(N)):
        for j in np.nonzero(np.abs(lam[k]) <= tol)[0]:
            column = np.zeros(size, dtype=complex)
            column[k * alg.dim:(k + 1) * alg.dim] = V[:, j]
            stack.append(column)
            targets.append(V[:, j])
    if not stack:
        raise StructuralError("ker d_mu is empty; the Cartan part should always be there")
    stack_m = np.array(stack).T
    target_m = np.array(targets).T
    R = target_m @ stack_m.conj().T
    S = stack_m @ target_m.conj().T
    return {
        "R": LoopOperator(matrix=R, label="R_mu", cutoff=N, dim=alg.dim),
        "S": S,
        "g_a_projection": target_m @ target_m.conj().T,
        "kernel_projection": stack_m @ stack_m.conj().T,
        "g_a_dim": stack_m.shape[1],
    }


# --- exports ---------------------------------------------------------------


def spectrum_frame(alg: CompactLieAlgebra, mu, N: int) -> pd.DataFrame:
    lam = block_eigenvalues(alg, mu, N)
    rows = [
        {"mode": int(n), "eigenvalue_real": 0.0, "eigenvalue_imag": float(value)}
        for n, values in zip(modes(N), lam)
        for value in values
    ]
    return pd.DataFrame(rows, columns=["mode", "eigenvalue_real", "eigenvalue_imag"])


def export_spectrum_csv(alg: CompactLieAlgebra, mu, N: int, path) -> None:
    spectrum_frame(alg, mu, N).to_csv(path, index=False)
    logger.info(f"✅ Spectrum of d_mu written to {path}")
