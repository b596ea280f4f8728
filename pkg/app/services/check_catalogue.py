"""
Registered checks. Each runner takes validated parameters and a seeded
generator and returns residuals, exact flags and details; grading against
the tolerance happens in the registry.
"""
import logging
import math
from fractions import Fraction
from typing import Dict, List, Optional

import numpy as np
from scipy.linalg import eigh, null_space

from app.core.config import settings
from app.core.errors import InputError, ModeBudgetError
from app.models.algebra import AffineRoot, AffineWeylElement, TorusElement, normalize_weight
from app.models.loop import ChiProfile, SobolevWeight, TruncatedLoop
from app.models.params import (
    AffineParams,
    AlgebraParams,
    CliffordParams,
    LoopParams,
    PathParams,
    Profile,
    SubspaceParams,
    SymplecticParams,
    WeakStrongParams,
    WeylSpinorParams,
)
from app.models.path import BandLimitedPath, BandLimitedVariation, TangentVariation
from app.models.spinor import ComplexStructureOperator, EuclideanSpace
from app.models.symplectic import MetricPair, SymplecticForm
from app.services import cliffspin, loopmodel, pathgeom, rootsys, symplin
from app.services.check_registry import CheckOutcome, CheckRegistry
from app.services.lie_realizations import algebra_residuals, build_compact_algebra
from app.utils.linalg import (
    metric_factor,
    random_compatible_structure,
    random_metric,
    random_orthogonal,
    random_orthogonal_structure,
    random_symplectic,
    standard_complex_structure,
)
from app.utils.serialization import (
    clifford_to_json,
    laurent_to_json,
    path_to_json,
    root_system_to_json,
    variation_to_json,
)

logger = logging.getLogger(__name__)

registry = CheckRegistry()

EXPECTED_DUAL_COXETER = {"A1": 2, "A2": 3, "A3": 4, "B2": 3, "B3": 5, "C3": 4, "G2": 4}
EXPECTED_WEYL_ORDER = {"A1": 2, "A2": 6, "A3": 24, "B2": 8, "B3": 48, "C3": 48, "G2": 12}

# generic Cartan element for the loop operators: some root pairings exceed 2 pi
DEFAULT_MU = (1.3, 0.41, 0.17)

CONVERGENCE_TOL = 1e-3

INTERP_DIMS = (2, 4, 8, 12, 16, 20, 24, 32, 40)
# A1 root pairing is 2 pi sqrt(2) mu; the grid avoids its integer multiples of 2 pi
LOOP_MU_GRID = (0.0, 0.1, 0.45, 1.3, 2.2)


def _root_system(name: str):
    return rootsys.build_root_system(*rootsys.parse_algebra(name))


def _order_ok(order: Optional[float]) -> bool:
    return order is None or settings.ORDER_BAND_LOW <= order <= settings.ORDER_BAND_HIGH


def _random_rational_point(rank: int, rng: np.random.Generator):
    return normalize_weight(Fraction(int(a), int(b)) for a, b in zip(rng.integers(-6, 7, rank), rng.integers(1, 4, rank)))


# --- rootsys ---------------------------------------------------------------


@registry.register("weyl-denominator", "rootsys", AlgebraParams, tolerance=0.0)
def run_weyl_denominator(params: AlgebraParams, rng: np.random.Generator) -> CheckOutcome:
    """Weyl denominator identity expanded exactly on both sides."""
    rs = _root_system(params.algebra)
    result = rootsys.weyl_denominator_identity(rs)
    zero = (0,) * rs.rank
    return CheckOutcome(
        exact={
            "equal": result["equal"],
            "identity_term": result["rhs"].coefficient(zero) == 1,
            "one_monomial_per_element": len(result["rhs"]) == len(rootsys.weyl_group(rs)),
        },
        details={"lhs": laurent_to_json(result["lhs"]), "rhs": laurent_to_json(result["rhs"])},
    )


@registry.register("dual-coxeter", "rootsys", AlgebraParams, tolerance=0.0)
def run_dual_coxeter(params: AlgebraParams, rng: np.random.Generator) -> CheckOutcome:
    """h = 1 + B(rho, theta) against the known values."""
    rs = _root_system(params.algebra)
    h = rootsys.dual_coxeter(rs)
    half_sum = normalize_weight(Fraction(sum(r[i] for r in rs.positive_roots), 2) for i in range(rs.rank))
    return CheckOutcome(
        exact={
            "matches_table": h == EXPECTED_DUAL_COXETER[params.algebra],
            "theta_normalized": rs.inner(rs.theta, rs.theta) == 2,
            "rho_half_sum": half_sum == rs.rho,
        },
        details={"dual_coxeter": h, "root_system": root_system_to_json(rs)},
    )


@registry.register("weyl-group", "rootsys", AlgebraParams, tolerance=0.0)
def run_weyl_group(params: AlgebraParams, rng: np.random.Generator) -> CheckOutcome:
    """Order, B-invariance, length/inversion agreement, subadditivity and sign multiplicativity."""
    rs = _root_system(params.algebra)
    props = rootsys.weyl_group_properties(rs)
    return CheckOutcome(
        exact={
            "order": props["order"] == EXPECTED_WEYL_ORDER[params.algebra],
            "preserves_form": props["preserves_form"],
            "length_matches_inversions": props["length_matches_inversions"],
            "length_subadditive": props["length_subadditive"],
            "sign_homomorphism": props["sign_homomorphism"],
        },
        details={"order": props["order"], "max_length": props["max_length"]},
    )


@registry.register("affine-roots", "rootsys", AffineParams, tolerance=0.0)
def run_affine_roots(params: AffineParams, rng: np.random.Generator) -> CheckOutcome:
    """Positive affine roots: counting oracle and positivity rule."""
    rs = _root_system(params.algebra)
    n = params.n_max
    roots = rootsys.affine_roots(rs, n)
    positives = [r for r in roots if r.is_positive]
    counted = sum(r.multiplicity for r in positives if 1 <= r.mode <= n)
    zero_mode = sorted(r.finite_part for r in positives if r.mode == 0)
    return CheckOutcome(
        exact={
            "positive_count": counted == n * (len(rs.roots) + rs.rank),
            "zero_mode_positive": zero_mode == sorted(rs.positive_roots),
            "positive_negative_balance": len(positives) == len(roots) - len(positives),
        },
        details={"positive_count": counted, "total": len(roots)},
    )


@registry.register("shifted-weight-sum", "rootsys", AffineParams, tolerance=0.0)
def run_shifted_weight_sum(params: AffineParams, rng: np.random.Generator) -> CheckOutcome:
    """Sum of finite parts over the inversion set equals rho - w rho for every short element."""
    rs = _root_system(params.algebra)
    elements = rootsys.affine_weyl_elements(rs, params.max_length)
    lengths_ok = True
    for w in elements:
        rootsys.shifted_weight_sum(rs, w)
        lengths_ok &= len(rootsys.affine_inversion_set(rs, w)) == w.length
    s0 = rootsys.affine_generators(rs)[0]
    identity = elements[0]
    return CheckOutcome(
        exact={
            "all_elements": True,
            "lengths_match_inversions": lengths_ok,
            "identity_zero": rootsys.shifted_weight_sum(rs, identity) == (0,) * rs.rank,
            "s0_minus_theta": rootsys.shifted_weight_sum(rs, s0) == tuple(-c for c in rs.theta),
        },
        details={"elements": len(elements), "max_length": params.max_length},
    )


@registry.register("affine-reflections", "rootsys", AffineParams, tolerance=0.0)
def run_affine_reflections(params: AffineParams, rng: np.random.Generator) -> CheckOutcome:
    """Affine reflections are involutive isometries fixing their hyperplane; s0 rho = rho + theta."""
    rs = _root_system(params.algebra)
    h = rootsys.dual_coxeter(rs)
    identity = AffineWeylElement(translation=(0,) * rs.rank, finite=rootsys.weyl_group(rs)[0], length=0)
    involutive = isometric = fixes_hyperplane = linear_at_zero = True
    count = 0
    for n in range(0, params.n_max + 1):
        for alpha in rs.roots:
            root = AffineRoot(finite_part=alpha, mode=n)
            if not root.is_positive:
                continue
            count += 1
            s = rootsys.affine_reflection(rs, root)
            involutive &= rootsys.affine_compose(rs, s, s).key == identity.key
            on_plane = normalize_weight(-Fraction(n * h, 2) * Fraction(c) for c in rs.coroot(alpha))
            fixes_hyperplane &= rootsys.affine_weyl_apply(rs, s, on_plane) == on_plane
            p, q = _random_rational_point(rs.rank, rng), _random_rational_point(rs.rank, rng)
            sp, sq = rootsys.affine_weyl_apply(rs, s, p), rootsys.affine_weyl_apply(rs, s, q)
            before = [Fraction(a) - Fraction(b) for a, b in zip(p, q)]
            after = [Fraction(a) - Fraction(b) for a, b in zip(sp, sq)]
            isometric &= rs.inner(before, before) == rs.inner(after, after)
            if n == 0:
                # s_alpha p = p - <p, alpha^vee> alpha
                linear = normalize_weight(Fraction(x) - rs.pairing(p, alpha) * a for x, a in zip(p, alpha))
                linear_at_zero &= (not any(s.translation)) and sp == linear
    s0 = rootsys.affine_generators(rs)[0]
    shifted = normalize_weight(Fraction(a) + b for a, b in zip(rs.rho, rs.theta))
    return CheckOutcome(
        exact={
            "involutive": involutive,
            "isometric": isometric,
            "fixes_hyperplane": fixes_hyperplane,
            "linear_at_mode_zero": linear_at_zero,
            "s0_rho": rootsys.affine_weyl_apply(rs, s0, rs.rho) == shifted,
        },
        details={"reflections": count},
    )


# --- cliffspin -------------------------------------------------------------


def _random_module(dim: int, rng: np.random.Generator):
    g = random_metric(dim, rng)
    J = ComplexStructureOperator(random_orthogonal_structure(g, rng), orthogonal_wrt=g)
    return cliffspin.spinor_module(EuclideanSpace(g), J)


@registry.register("clifford-relations", "cliffspin", CliffordParams, tolerance=settings.CLIFFORD_TOL)
def run_clifford_relations(params: CliffordParams, rng: np.random.Generator) -> CheckOutcome:
    """Anticommutator, parity and vacuum relations on random metrics and complex structures."""
    worst = {"anticommutator": 0.0, "parity": 0.0, "vacuum": 0.0}
    fock_ok = True
    for _ in range(params.trials):
        S = _random_module(params.dim, rng)
        fock_ok &= S.fock_dim == 2 ** (params.dim // 2)
        for key, value in cliffspin.clifford_residuals(S).items():
            worst[key] = max(worst[key], value)
    standard = cliffspin.spinor_module(EuclideanSpace.standard(2), ComplexStructureOperator.standard(2))
    square = float(np.abs(standard.clifford_action[0] @ standard.clifford_action[0] - np.eye(2)).max())
    return CheckOutcome(
        residuals={**worst, "dim2_square": square},
        exact={"fock_dimension": fock_ok},
        details={"dim2_module": clifford_to_json(standard)},
    )


@registry.register("implementer", "cliffspin", CliffordParams, tolerance=settings.IMPLEMENTER_TOL)
def run_implementer(params: CliffordParams, rng: np.random.Generator) -> CheckOutcome:
    """Implementer property on random orthogonal maps, multiplicativity, and the A = I, A = J cases."""
    S = _random_module(params.dim, rng)
    g = S.space.metric
    intertwining = unitarity = multiplicative = phase = 0.0
    for _ in range(params.trials):
        A, B = random_orthogonal(g, rng), random_orthogonal(g, rng)
        UA, UB, UAB = (cliffspin.implementer(X, S) for X in (A, B, A @ B))
        for U, X in ((UA, A), (UB, B), (UAB, A @ B)):
            intertwining = max(intertwining, cliffspin.implementer_residual(U, X, S))
            unitarity = max(unitarity, float(np.abs(U.conj().T @ U - np.eye(S.fock_dim)).max()))
        c, defect = cliffspin.scalar_ratio(UAB, UA @ UB)
        multiplicative = max(multiplicative, defect)
        phase = max(phase, abs(abs(c) - 1))
    identity = float(np.abs(cliffspin.implementer(np.eye(params.dim), S) - np.eye(S.fock_dim)).max())
    U_J = cliffspin.implementer(S.complex_structure.matrix, S)
    expected = np.diag([1j ** len(s) for s in S.basis])
    return CheckOutcome(
        residuals={
            "intertwining": intertwining,
            "unitarity": unitarity,
            "multiplicativity": multiplicative,
            "unit_scalar": phase,
            "identity": identity,
            "complex_structure_diagonal": float(np.abs(U_J - expected).max()),
        },
    )


@registry.register("intertwiner-parity", "cliffspin", CliffordParams, tolerance=0.0)
def run_intertwiner_parity(params: CliffordParams, rng: np.random.Generator) -> CheckOutcome:
    """Intertwiner parity equals the parity of half dim ker(J0 + J1), dims 2 through dim."""
    agree = True
    family = []
    for d in range(2, params.dim + 1, 2):
        space = EuclideanSpace.standard(d)
        for k in range(0, min(2, d // 2) + 1):
            J0 = standard_complex_structure(d)
            J1 = J0.copy()
            for p in range(k):
                J1[2 * p:2 * p + 2, 2 * p:2 * p + 2] *= -1
            O = random_orthogonal(np.eye(d), rng)
            J0, J1 = O @ J0 @ O.T, O @ J1 @ O.T
            S0 = cliffspin.spinor_module(space, ComplexStructureOperator(J0, orthogonal_wrt=np.eye(d)))
            S1 = cliffspin.spinor_module(space, ComplexStructureOperator(J1, orthogonal_wrt=np.eye(d)))
            parity = cliffspin.intertwiner_space(S0, S1)["parity"]
            predicted = cliffspin.parity_of_kernel(J0, J1)
            agree &= parity == predicted == k % 2
            family.append({"dim": d, "flipped_planes": k, "parity": parity, "predicted": predicted})
    return CheckOutcome(exact={"parity_rule": agree}, details={"family": family})


@registry.register("commweil", "cliffspin", WeylSpinorParams, tolerance=settings.IMPLEMENTER_TOL)
def run_commweil(params: WeylSpinorParams, rng: np.random.Generator) -> CheckOutcome:
    """g^-1 t g = t^(rho - w rho) w^-1(t) on the spinor module of g/t, all w, random t."""
    rs = _root_system(params.algebra)
    worst = 0.0
    identity_scalar = None
    for w in rootsys.weyl_group(rs):
        for _ in range(params.trials):
            result = cliffspin.commweil_check(rs, w, TorusElement.random(rs.rank, rng))
            worst = max(worst, result["error"])
            if w.length == 0:
                identity_scalar = result["scalar"]
    return CheckOutcome(
        residuals={"scalar_error": worst, "identity_scalar": abs(identity_scalar - 1)},
        details={"weyl_order": len(rootsys.weyl_group(rs))},
    )


@registry.register("graded-character", "cliffspin", WeylSpinorParams, tolerance=settings.CLIFFORD_TOL)
def run_graded_character(params: WeylSpinorParams, rng: np.random.Generator) -> CheckOutcome:
    """Conjugate supertrace of t on S_(g/t) against prod (1 - t^-alpha)."""
    rs = _root_system(params.algebra)
    S, T = cliffspin.weyl_spinor_module(rs)
    product = rootsys.weyl_denominator_identity(rs)["lhs"]
    worst = 0.0
    for _ in range(params.trials):
        t = TorusElement.random(rs.rank, rng)
        worst = max(worst, abs(np.conj(cliffspin.graded_character(S, T, t)) - product.evaluate(t)))
    at_identity = abs(cliffspin.graded_character(S, T, TorusElement.identity(rs.rank)))
    return CheckOutcome(residuals={"character": worst, "vanishes_at_identity": at_identity})


@registry.register("subspace-factorization", "cliffspin", SubspaceParams, tolerance=settings.CLIFFORD_TOL)
def run_subspace_factorization(params: SubspaceParams, rng: np.random.Generator) -> CheckOutcome:
    """S_W = Hom_Cl(H')(S_H', S_H) carries Cl(W) with the expected dimension."""
    d, k = params.dim, params.w_dim
    if k % 2 or k >= d:
        raise InputError(f"w_dim must be even and below dim, got {k} for dim {d}")
    g = random_metric(d, rng)
    J = ComplexStructureOperator(random_orthogonal_structure(g, rng), orthogonal_wrt=g)
    W_basis = rng.standard_normal((d, k))
    U = null_space(W_basis.T @ g)
    U = U @ np.linalg.inv(metric_factor(U.T @ g @ U)).T
    J_prime = U @ standard_complex_structure(d - k) @ U.T @ g
    S_W = cliffspin.subspace_factorization(EuclideanSpace(g), W_basis, J, J_prime)
    residuals = cliffspin.clifford_residuals(S_W)
    return CheckOutcome(
        residuals=residuals,
        exact={
            "dimension": S_W.fock_dim == 2 ** (k // 2),
            "tensor_count": 2 ** (d // 2) == S_W.fock_dim * 2 ** ((d - k) // 2),
            "balanced_grading": int(np.sum(S_W.grading)) == 0,
        },
        details={"basis": [list(b) for b in S_W.basis]},
    )


# --- symplin ---------------------------------------------------------------

HAND_J0 = standard_complex_structure(2)
HAND_S = np.diag([2.0, 0.5])
HAND_J1 = HAND_S @ HAND_J0 @ np.linalg.inv(HAND_S)


@registry.register("interp-cs", "symplin", SymplecticParams, tolerance=settings.SPECTRAL_TOL)
def run_interp_cs(params: SymplecticParams, rng: np.random.Generator) -> CheckOutcome:
    """J_t = K_t (-K_t^2)^-1/2 stays a compatible complex structure and hits both endpoints."""
    omega = SymplecticForm.standard(params.dim)
    grid = np.linspace(0.0, 1.0, params.t_steps)
    worst = {"square_residual": 0.0, "endpoint_residual": 0.0, "max_real_part": 0.0}
    compatible = True
    lipschitz = []
    for _ in range(params.trials):
        J0 = random_compatible_structure(omega.matrix, rng)
        J1 = random_compatible_structure(omega.matrix, rng)
        report = symplin.interpolation_report(omega, J0, J1, grid)
        for key in worst:
            worst[key] = max(worst[key], report[key])
        compatible &= report["compatible_everywhere"]
        lipschitz.append(report["lipschitz_estimate"])
    hand_omega = SymplecticForm.standard(2)
    J_half = symplin.interpolate_cs(hand_omega, HAND_J0, HAND_J1, [0.5])[0]
    K_half = (HAND_J0 + HAND_J1) / 2
    return CheckOutcome(
        residuals={
            **worst,
            "hand_example": float(np.abs(J_half - np.array([[0.0, -2.0], [0.5, 0.0]])).max()),
            "series_cross_check": symplin.inverse_sqrt_series_check(K_half),
        },
        exact={"compatible_everywhere": compatible},
        details={"lipschitz_estimates": lipschitz},
    )


@registry.register("polar-retraction", "symplin", SymplecticParams, tolerance=settings.SYMPLECTIC_TOL)
def run_polar_retraction(params: SymplecticParams, rng: np.random.Generator) -> CheckOutcome:
    """A_t = R P^t stays symplectic, starts in U_J, ends at A, and retracts U_J trivially."""
    omega = SymplecticForm.standard(params.dim)
    grid = np.linspace(0.0, 1.0, params.t_steps)
    worst: Dict[str, float] = {}
    constants = []
    for _ in range(params.trials):
        J = random_compatible_structure(omega.matrix, rng)
        A = random_symplectic(omega.matrix, rng)
        path = symplin.polar_retraction(A, omega, J, grid)
        report = symplin.retraction_report(path, omega, J)
        again = symplin.polar_retraction(path.start, omega, J, grid)
        report["idempotence"] = max(float(np.abs(A_t - path.start).max()) for A_t in again.operators)
        constants.append(report.pop("commutator_constant"))
        for key, value in report.items():
            worst[key] = max(worst.get(key, 0.0), value)
    diagonal = np.diag([2.0, 0.5])
    hand = symplin.polar_retraction(diagonal, SymplecticForm.standard(2), HAND_J0, grid)
    expected = [np.diag([2.0 ** t, 2.0 ** -t]) for t in grid]
    worst["diagonal_example"] = max(float(np.abs(a - b).max()) for a, b in zip(hand.operators, expected))
    return CheckOutcome(residuals=worst, details={"commutator_constants": constants})


@registry.register("hs-equivalence", "symplin", SymplecticParams, tolerance=settings.SPECTRAL_TOL)
def run_hs_equivalence(params: SymplecticParams, rng: np.random.Generator) -> CheckOutcome:
    """g1^-1 g0 = J1^-1 J0 for compatible pairs."""
    omega = SymplecticForm.standard(params.dim)
    worst = 0.0
    for _ in range(params.trials):
        J0 = random_compatible_structure(omega.matrix, rng)
        J1 = random_compatible_structure(omega.matrix, rng)
        worst = max(worst, symplin.hs_equivalence_identity(omega, J0, J1)["residual"])
    J = random_compatible_structure(omega.matrix, rng)
    same = symplin.hs_equivalence_identity(omega, J, J)
    hand = symplin.hs_equivalence_identity(SymplecticForm.standard(2), HAND_J0, HAND_J1)
    return CheckOutcome(
        residuals={
            "random_pairs": worst,
            "equal_pair_identity": float(np.abs(same["lhs"] - np.eye(params.dim)).max()),
            "hand_pair": hand["residual"],
        },
    )


@registry.register("metric-isometry", "symplin", SymplecticParams, tolerance=settings.SPECTRAL_TOL)
def run_metric_isometry(params: SymplecticParams, rng: np.random.Generator) -> CheckOutcome:
    """A = (g1^-1 g0)^1/2 pulls g1 back to g0."""
    worst = {"pullback": 0.0, "c_symmetry": 0.0}
    positive = True
    for _ in range(params.trials):
        pair = MetricPair(random_metric(params.dim, rng), random_metric(params.dim, rng))
        A = symplin.metric_isometry(pair)
        report = symplin.isometry_residuals(pair, A)
        positive &= report["min_eigenvalue"] > 0
        for key in worst:
            worst[key] = max(worst[key], report[key])
    hand = symplin.metric_isometry(MetricPair(np.eye(2), np.diag([4.0, 1.0])))
    equal = symplin.metric_isometry(MetricPair(np.eye(params.dim), np.eye(params.dim)))
    return CheckOutcome(
        residuals={
            **worst,
            "hand_example": float(np.abs(hand - np.diag([0.5, 1.0])).max()),
            "equal_metrics": float(np.abs(equal - np.eye(params.dim)).max()),
        },
        exact={"positive_spectrum": positive},
    )


@registry.register("restricted-norm", "symplin", SymplecticParams, tolerance=settings.SPECTRAL_TOL)
def run_restricted_norm(params: SymplecticParams, rng: np.random.Generator) -> CheckOutcome:
    """||A|| + ||[J, A]||_HS against an independent evaluation; ||J||_J = 1."""
    omega = SymplecticForm.standard(params.dim)
    worst = 0.0
    for _ in range(params.trials):
        J = random_compatible_structure(omega.matrix, rng)
        g = omega.matrix @ J
        A = random_symplectic(omega.matrix, rng)
        norm = symplin.restricted_norm(A, J, g)
        # generalized eigenvalues of (A^T g A, g) and tr(C g^-1 C^T g) for C = [J, A]
        op = math.sqrt(eigh(A.T @ g @ A, g, eigvals_only=True).max())
        C = J @ A - A @ J
        hs = math.sqrt(max(0.0, float(np.trace(C @ np.linalg.solve(g, C.T) @ g))))
        worst = max(worst, abs(norm["total"] - (op + hs)) / max(1.0, norm["total"]))
    J = random_compatible_structure(omega.matrix, rng)
    of_J = symplin.restricted_norm(J, J, omega.matrix @ J)
    return CheckOutcome(residuals={"independent_evaluation": worst, "norm_of_J": abs(of_J["total"] - 1.0)})


# --- loopmodel -------------------------------------------------------------


def _mu(alg, values: Optional[List[float]], default=DEFAULT_MU) -> np.ndarray:
    if values is None:
        values = list(default[: alg.rank]) + [0.0] * max(0, alg.rank - len(default))
    return loopmodel.cartan_vector(alg, values)


@registry.register("kp-level", "loopmodel", AlgebraParams, tolerance=settings.LEVEL_TOL)
def run_kp_level(params: AlgebraParams, rng: np.random.Generator) -> CheckOutcome:
    """B_kil = -8 pi^2 h B_basic from structure constants, plus structure-constant identities."""
    alg = build_compact_algebra(params.algebra)
    level = loopmodel.level_check(alg)
    structure = algebra_residuals(alg)
    lengths = np.sort(np.sum(alg.root_pairings ** 2, axis=1) / (4 * np.pi ** 2))
    expected = np.sort([float(alg.root_system.inner(r, r)) for r in alg.root_system.roots])
    return CheckOutcome(
        residuals={"level": level["residual"], "root_lengths": float(np.abs(lengths - expected).max()), **structure},
        details={"dual_coxeter": level["dual_coxeter"], "dim": alg.dim},
    )


def _budget(N: int) -> int:
    budget = N // 3
    if budget < 1:
        raise InputError(f"cutoff {N} leaves no room for mode-budgeted loops (need N >= 3)")
    return budget


@registry.register("kp-cocycle", "loopmodel", LoopParams, tolerance=settings.COCYCLE_TOL)
def run_kp_cocycle(params: LoopParams, rng: np.random.Generator) -> CheckOutcome:
    """Cocycle identity, antisymmetry and the closed form on X z^n, Y z^-n."""
    alg = build_compact_algebra(params.algebra)
    N, budget = params.modes, _budget(params.modes)
    identity = antisymmetry = 0.0
    for _ in range(params.trials):
        x1, x2, x3 = (TruncatedLoop.random_real(N, alg.dim, rng, max_mode=budget) for _ in range(3))
        result = loopmodel.cocycle_identity_check(alg, x1, x2, x3)
        identity = max(identity, result["relative"])
        scale = max(1.0, abs(loopmodel.kp_cocycle(alg, x1, x2)))
        antisymmetry = max(antisymmetry, result["antisymmetry"] / scale)
    h = rootsys.dual_coxeter(alg.root_system)
    closed_form = 0.0
    for n in range(1, min(8, N) + 1):
        X, Y = rng.standard_normal(alg.dim), rng.standard_normal(alg.dim)
        value = loopmodel.kp_cocycle(
            alg, TruncatedLoop.from_modes(N, alg.dim, {n: X}), TruncatedLoop.from_modes(N, alg.dim, {-n: Y})
        )
        expected = -4 * np.pi ** 2 * n * h * (X @ Y)
        closed_form = max(closed_form, abs(value - expected) / max(1.0, abs(expected)))
    over = TruncatedLoop.from_modes(N, alg.dim, {budget + 1: np.ones(alg.dim)})
    try:
        loopmodel.cocycle_identity_check(alg, over, over, over)
        enforced = False
    except ModeBudgetError:
        enforced = True
    return CheckOutcome(
        residuals={"cocycle_identity": identity, "antisymmetry": antisymmetry, "closed_form": closed_form},
        exact={"budget_enforced": enforced},
    )


@registry.register("central-jacobi", "loopmodel", LoopParams, tolerance=settings.COCYCLE_TOL)
def run_central_jacobi(params: LoopParams, rng: np.random.Generator) -> CheckOutcome:
    """Jacobi identity of the centrally extended loop bracket."""
    alg = build_compact_algebra(params.algebra)
    N, budget = params.modes, _budget(params.modes)
    worst = {"loop_part": 0.0, "central_part": 0.0}
    for _ in range(params.trials):
        triple = [TruncatedLoop.random_real(N, alg.dim, rng, max_mode=budget) for _ in range(3)]
        for key, value in loopmodel.central_jacobi_check(alg, *triple).items():
            worst[key] = max(worst[key], value)
    return CheckOutcome(residuals=worst)


@registry.register("loop-operators", "loopmodel", LoopParams, tolerance=settings.OPERATOR_TOL)
def run_loop_operators(params: LoopParams, rng: np.random.Generator) -> CheckOutcome:
    """d_mu, J_mu, D_mu and chi(d_mu): skewness, commutation, spectral identities and rank counts."""
    alg = build_compact_algebra(params.algebra)
    N = params.modes
    mu = _mu(alg, params.mu)
    zero = np.zeros(alg.rank)
    a, _ = loopmodel.spectral_data(alg, mu)
    scale = 2 * np.pi * N + float(np.abs(a).max())
    size = (2 * N + 1) * alg.dim

    d = loopmodel.covariant_derivative(alg, mu, N).matrix
    J = loopmodel.jmu(alg, mu, N).matrix
    D = loopmodel.dmu(alg, mu, N).matrix
    P = loopmodel.kernel_projection(alg, mu, N).matrix
    chi = loopmodel.chi_cutoff(alg, mu, N, ChiProfile(params.eps))
    flips = loopmodel.flip_count(alg, mu, N)

    d0_spectrum = loopmodel.block_eigenvalues(alg, zero, N)
    expected_d0 = np.repeat((2 * np.pi * loopmodel.modes(N))[:, None], alg.dim, axis=1)
    D0_diagonal = np.real(np.diag(loopmodel.dmu(alg, zero, N).matrix))
    expected_D0 = np.where(expected_d0 == 0, 1.0, np.abs(expected_d0)).ravel()
    half = loopmodel.chi_cutoff(alg, zero, N, ChiProfile(1.0, chi_zero=0.5))["finite_rank_diff"]
    full = loopmodel.chi_cutoff(alg, zero, N, ChiProfile(1.0, chi_zero=1.0))["finite_rank_diff"]

    X = rng.standard_normal(alg.dim)
    n = min(2, N)
    omega_example = loopmodel.coadjoint_form(
        alg, zero, TruncatedLoop.cosine(N, X, n), TruncatedLoop.sine(N, X, n)
    )
    xi, zeta = (TruncatedLoop.random_real(N, alg.dim, rng) for _ in range(2))
    antisymmetry = abs(loopmodel.coadjoint_form(alg, mu, xi, zeta) + loopmodel.coadjoint_form(alg, mu, zeta, xi))

    sobolev = 0.0
    for s in (0.0, 0.5, 1.0):
        weight = SobolevWeight(s)
        sobolev = max(sobolev, abs(weight.norm(TruncatedLoop.constant(N, X)) - np.linalg.norm(X)))
        expected = float(weight.weight(n)) * np.linalg.norm(X) / np.sqrt(2)
        sobolev = max(sobolev, abs(weight.norm(TruncatedLoop.cosine(N, X, n)) - expected) / max(1.0, expected))

    return CheckOutcome(
        residuals={
            "skew_adjoint": float(np.abs(d + d.conj().T).max() / scale),
            "J_commutes": float(np.abs(J @ d - d @ J).max() / scale),
            "D_commutes": float(np.abs(D @ d - d @ D).max() / scale ** 2),
            "J_square": float(np.abs(J @ J + np.eye(size) - P).max()),
            "chi_sqrt": float(np.abs(chi["sqrt_op"].matrix @ chi["sqrt_op"].matrix - chi["op"].matrix).max() / scale),
            "d0_spectrum": float(np.abs(d0_spectrum - expected_d0).max() / scale),
            "D0_diagonal": float(np.abs(D0_diagonal - expected_D0).max() / scale),
            "coadjoint_example": abs(omega_example + np.pi * n * (X @ X)) / max(1.0, np.pi * n * (X @ X)),
            "coadjoint_antisymmetry": antisymmetry / scale,
            "sobolev_norms": float(sobolev),
        },
        exact={
            "D_positive": bool(np.linalg.eigvalsh((D + D.conj().T) / 2).min() > 0),
            "chi_rank_bound": chi["finite_rank_diff"] <= chi["spectral_bound"],
            "flip_rank": flips["rank"] == flips["sign_changes"],
            "kernel_at_zero": int(np.sum(np.abs(d0_spectrum) <= settings.KERNEL_TOL)) == alg.dim,
            "chi_half_rank": half == alg.dim,
            "chi_one_rank": full == 0,
            "spectrum_rows": len(loopmodel.spectrum_frame(alg, mu, N)) == size,
        },
        details={
            "finite_rank_diff": chi["finite_rank_diff"],
            "spectral_bound": chi["spectral_bound"],
            "flip_pairs": flips["flip_pairs"],
            "j0_convention": "J_0 = +i on positive modes, -i on negative modes",
        },
    )


@registry.register("coadjoint-metric", "loopmodel", LoopParams, tolerance=settings.SPECTRAL_TOL)
def run_coadjoint_metric(params: LoopParams, rng: np.random.Generator) -> CheckOutcome:
    """omega(xi, J_mu zeta) is symmetric, positive semidefinite, with kernel ker d_mu."""
    alg = build_compact_algebra(params.algebra)
    N = params.modes
    mu = _mu(alg, params.mu)
    result = loopmodel.compatible_metric_matrix(alg, mu, N)
    scale = max(1.0, float(np.abs(result["metric"]).max()))
    return CheckOutcome(
        residuals={
            "symmetry": result["symmetry"] / scale,
            "d_mu_weighted": result["weighted_residual"] / scale,
            "negativity": max(0.0, -result["min_eigenvalue"]) / scale,
        },
        exact={"kernel_is_ker_d_mu": result["kernel_dim"] == result["expected_kernel_dim"]},
        details={"kernel_dim": result["kernel_dim"]},
    )


@registry.register("weak-strong", "loopmodel", WeakStrongParams, tolerance=0.0)
def run_weak_strong(params: WeakStrongParams, rng: np.random.Generator) -> CheckOutcome:
    """Normalized singular values of omega^flat: a stable band at s = 1/2, decay at rate N^(1-2s) above."""
    alg = build_compact_algebra(params.algebra)
    mu = _mu(alg, params.mu, default=(0.0, 0.0, 0.0))
    report = loopmodel.weak_strong_report(alg, mu, params.sobolev, params.modes_list)
    rows = report["rows"]
    if math.isclose(params.sobolev, 0.5):
        exact = {"stable_band": report["band_variation"] < settings.BAND_VARIATION_MAX}
    elif params.sobolev > 0.5:
        exact = {"monotone_decay": report["monotone_decay"], "rate_consistent": report["rate_consistent"]}
    else:
        exact = {"growing_top": all(b["sigma_max"] >= a["sigma_max"] for a, b in zip(rows, rows[1:]))}
    return CheckOutcome(exact=exact, details=report)


@registry.register("rmu-smu", "loopmodel", LoopParams, tolerance=settings.OPERATOR_TOL)
def run_rmu_smu(params: LoopParams, rng: np.random.Generator) -> CheckOutcome:
    """R S = identity on g_a, S R = projection onto ker d_mu, R kills the complement."""
    alg = build_compact_algebra(params.algebra)
    N = params.modes
    mu = _mu(alg, params.mu, default=(0.0, 0.0, 0.0))
    result = loopmodel.rmu_smu(alg, mu, N)
    R = result["R"].matrix
    S = result["S"]
    P = loopmodel.kernel_projection(alg, mu, N).matrix
    size = P.shape[0]
    residuals = {
        "RS_identity": float(np.abs(R @ S - result["g_a_projection"]).max()),
        "SR_projection": float(np.abs(S @ R - P).max()),
        "annihilates_complement": float(np.abs(R @ (np.eye(size) - P)).max()),
    }
    if not np.any(mu):
        extraction = np.zeros((alg.dim, size))
        extraction[:, N * alg.dim:(N + 1) * alg.dim] = np.eye(alg.dim)
        residuals["zero_mode_extraction"] = float(np.abs(R - extraction).max())
    expected_dim = int(np.sum(np.abs(loopmodel.block_eigenvalues(alg, mu, N)) <= settings.KERNEL_TOL))
    return CheckOutcome(
        residuals=residuals,
        exact={"g_a_dimension": result["g_a_dim"] == expected_dim},
        details={"g_a_dim": result["g_a_dim"]},
    )


# --- pathgeom --------------------------------------------------------------


def _variations(group, rng: np.random.Generator, count: int, bandwidth: int, periodic: bool = False):
    return [BandLimitedVariation.random(group.dim, rng, bandwidth, periodic=periodic) for _ in range(count)]


def _linear(x: np.ndarray) -> BandLimitedVariation:
    """t -> t x."""
    zeros = np.zeros((1, len(x)))
    return BandLimitedVariation(np.zeros(len(x)), np.asarray(x, dtype=float), zeros, zeros)


def _one_sided_ok(order: Optional[float]) -> bool:
    return order is None or order >= settings.ORDER_BAND_LOW


def _convergence_outcome(results: List[Dict[str, object]], extra: Optional[Dict[str, float]] = None,
                         one_sided: bool = False) -> CheckOutcome:
    """
    Grades on the order fitted to residuals summed over all paths at each
    level; discretization residuals are reported, not thresholded.
    """
    pooled = pathgeom.pooled_order(results)
    ok = _one_sided_ok(pooled) if one_sided else _order_ok(pooled)
    return CheckOutcome(
        residuals=dict(extra or {}),
        exact={"order_at_least_band" if one_sided else "order_in_band": ok},
        details={
            "pooled_order": pooled,
            "order_estimates": [r["order_estimate"] for r in results],
            "finest_residual": max(r["rows"][-1]["residual"] for r in results),
            "rows": [r["rows"] for r in results[:3]],
        },
    )


@registry.register("dvarpi", "pathgeom", PathParams, tolerance=CONVERGENCE_TOL)
def run_dvarpi(params: PathParams, rng: np.random.Generator) -> CheckOutcome:
    """d varpi = -q^* eta by chart finite differences, with second-order convergence."""
    group = pathgeom.matrix_group(params.group)
    results = []
    for _ in range(params.paths):
        source = BandLimitedPath.random(group, rng, params.bandwidth)
        u, v, w = _variations(group, rng, 3, params.bandwidth)
        results.append(pathgeom.check_dvarpi(source, u, v, w, params.samples, params.fd_step, None, params.levels))
    # gamma = e with u = tU, v = tV, w = tW: d varpi = -1/2 <U, [V, W]>
    U, V, W = (rng.standard_normal(group.dim) for _ in range(3))
    constant = BandLimitedPath.constant(group).sample(params.samples)
    fields = [_linear(x).sample(params.samples) for x in (U, V, W)]
    closed = pathgeom.dvarpi_residual(constant, *fields, params.fd_step)["dvarpi"]
    outcome = _convergence_outcome(results, {"identity_path": abs(closed + 0.5 * U @ group.algebra.bracket(V, W))})
    outcome.details["eta_constant"] = pathgeom.CARTAN_ETA_CONSTANT
    return outcome


@registry.register("contraction-loop", "pathgeom", PathParams, tolerance=CONVERGENCE_TOL)
def run_contraction_loop(params: PathParams, rng: np.random.Generator) -> CheckOutcome:
    """iota(xi_PG) varpi = p^* d<mu, xi> for loops xi."""
    group = pathgeom.matrix_group(params.group)
    results = []
    for _ in range(params.paths):
        source = BandLimitedPath.random(group, rng, params.bandwidth)
        (xi,) = _variations(group, rng, 1, params.bandwidth, periodic=True)
        (w,) = _variations(group, rng, 1, params.bandwidth)
        results.append(pathgeom.check_contraction_loop(source, xi, w, params.samples, params.fd_step, params.levels))
    path = BandLimitedPath.random(group, rng, params.bandwidth).sample(params.samples)
    (w,) = _variations(group, rng, 1, params.bandwidth)
    zero = TangentVariation(np.zeros((params.samples + 1, group.dim)))
    zero_case = pathgeom.contraction_loop_residual(path, zero, w.sample(params.samples), params.fd_step)
    return _convergence_outcome(results, {"zero_xi": zero_case["residual"]})


@registry.register("contraction-group", "pathgeom", PathParams, tolerance=CONVERGENCE_TOL)
def run_contraction_group(params: PathParams, rng: np.random.Generator) -> CheckOutcome:
    """iota(X_PG) varpi = -q^*(1/2 (theta^L + theta^R) . X)."""
    group = pathgeom.matrix_group(params.group)
    results = []
    for _ in range(params.paths):
        source = BandLimitedPath.random(group, rng, params.bandwidth)
        (w,) = _variations(group, rng, 1, params.bandwidth)
        X = rng.standard_normal(group.dim)
        results.append(pathgeom.check_contraction_group(source, X, w, params.samples, params.fd_step,
                                                        None, params.levels))
    constant = BandLimitedPath.constant(group).sample(params.samples)
    identity_case = pathgeom.contraction_group_residual(
        constant, rng.standard_normal(group.dim), _linear(rng.standard_normal(group.dim)).sample(params.samples),
        params.fd_step,
    )
    return _convergence_outcome(results, {"identity_path": identity_case["residual"]})


@registry.register("varpi-quadrature", "pathgeom", PathParams, tolerance=CONVERGENCE_TOL)
def run_varpi_quadrature(params: PathParams, rng: np.random.Generator) -> CheckOutcome:
    """Quadrature order of varpi, antisymmetry, and the closed form on the constant path."""
    group = pathgeom.matrix_group(params.group)
    results = []
    antisymmetry = 0.0
    for _ in range(params.paths):
        source = BandLimitedPath.random(group, rng, params.bandwidth)
        v, w = _variations(group, rng, 2, params.bandwidth)
        results.append(pathgeom.varpi_quadrature_rows(source, v, w, params.samples, params.levels + 1))
        path = source.sample(params.samples)
        vs, ws = v.sample(params.samples), w.sample(params.samples)
        antisymmetry = max(antisymmetry,
                           abs(pathgeom.varpi_eval(path, vs, ws) + pathgeom.varpi_eval(path, ws, vs)),
                           abs(pathgeom.varpi_eval(path, vs, vs)))
    X, Y = rng.standard_normal(group.dim), rng.standard_normal(group.dim)
    constant = BandLimitedPath.constant(group).sample(params.samples)
    closed = pathgeom.varpi_eval(constant, _linear(X).sample(params.samples),
                                 BandLimitedVariation.constant(Y).sample(params.samples))
    return _convergence_outcome(results, {"antisymmetry": antisymmetry, "closed_form": abs(closed + X @ Y)})


@registry.register("twisted-identity", "pathgeom", PathParams, tolerance=CONVERGENCE_TOL)
def run_twisted_identity(params: PathParams, rng: np.random.Generator) -> CheckOutcome:
    """kappa = id reproduces varpi exactly; d varpi^(kappa) = -q_kappa^* eta for the chosen twist."""
    group = pathgeom.matrix_group(params.group)
    identity = pathgeom.identity_automorphism(group)
    kappa = pathgeom.build_automorphism(group, params.automorphism, rng)
    bit_for_bit = True
    results = []
    for _ in range(params.paths):
        source = BandLimitedPath.random(group, rng, params.bandwidth)
        u, v, w = _variations(group, rng, 3, params.bandwidth)
        path = source.sample(params.samples)
        vs, ws = v.sample(params.samples), w.sample(params.samples)
        bit_for_bit &= pathgeom.varpi_twisted(path, identity, vs, ws) == pathgeom.varpi_eval(path, vs, ws)
        results.append(pathgeom.check_dvarpi(source, u, v, w, params.samples, params.fd_step, kappa, params.levels))
    K = kappa.algebra_matrix
    outcome = _convergence_outcome(results, {"kappa_orthogonality": float(np.abs(K.T @ K - np.eye(len(K))).max())})
    outcome.exact["identity_bit_for_bit"] = bit_for_bit
    outcome.details["automorphism"] = kappa.kind
    return outcome


@registry.register("twisted-moment", "pathgeom", PathParams, tolerance=CONVERGENCE_TOL)
def run_twisted_moment(params: PathParams, rng: np.random.Generator) -> CheckOutcome:
    """Twisted group contraction against -1/2 q^*(theta^L . kappa X + theta^R . X), and twisted loops."""
    group = pathgeom.matrix_group(params.group)
    kappa = pathgeom.build_automorphism(group, params.automorphism, rng)
    group_results, loop_results = [], []
    for _ in range(params.paths):
        source = BandLimitedPath.random(group, rng, params.bandwidth)
        (w,) = _variations(group, rng, 1, params.bandwidth)
        (zeta,) = _variations(group, rng, 1, params.bandwidth, periodic=True)
        X = rng.standard_normal(group.dim)
        group_results.append(pathgeom.check_contraction_group(source, X, w, params.samples, params.fd_step,
                                                              kappa, params.levels))
        loop_results.append(pathgeom.check_twisted_contraction_loop(source, zeta, w, kappa, params.samples,
                                                                    params.fd_step, params.levels))
    # the twisted group residual can vanish faster than h^2; only a floor on the order applies
    outcome = _convergence_outcome(group_results + loop_results, one_sided=True)
    outcome.details["automorphism"] = kappa.kind
    return outcome


@registry.register("twist-correspondence", "pathgeom", PathParams, tolerance=settings.GROUP_TOL)
def run_twist_correspondence(params: PathParams, rng: np.random.Generator) -> CheckOutcome:
    """varpi^(Ad_h) at gamma sigma^-1 equals varpi at gamma, sigma(t) = exp(tY), h = exp(Y)."""
    group = pathgeom.matrix_group(params.group)
    worst = 0.0
    for _ in range(params.paths):
        path = BandLimitedPath.random(group, rng, params.bandwidth).sample(params.samples)
        v, w = (x.sample(params.samples) for x in _variations(group, rng, 2, params.bandwidth))
        Y = 0.5 * rng.standard_normal(group.dim)
        worst = max(worst, pathgeom.check_twist_correspondence(path, Y, v, w)["residual"])
    fixture = {"path": path_to_json(path), "v": variation_to_json(v), "w": variation_to_json(w), "Y": Y}
    return CheckOutcome(residuals={"correspondence": worst}, details={"last_fixture": fixture})


@registry.register("varpi-invariance", "pathgeom", PathParams, tolerance=settings.GROUP_TOL)
def run_varpi_invariance(params: PathParams, rng: np.random.Generator) -> CheckOutcome:
    """varpi is unchanged under gamma -> g gamma lambda^-1 with variations Ad_g."""
    group = pathgeom.matrix_group(params.group)
    worst = 0.0
    for _ in range(params.paths):
        path = BandLimitedPath.random(group, rng, params.bandwidth).sample(params.samples)
        loop = BandLimitedPath.random(group, rng, params.bandwidth, periodic=True).sample(params.samples)
        v, w = (x.sample(params.samples) for x in _variations(group, rng, 2, params.bandwidth))
        g = group.exp(rng.standard_normal(group.dim))
        worst = max(worst, pathgeom.check_varpi_invariance(path, v, w, g, loop)["residual"])
    return CheckOutcome(residuals={"invariance": worst})


@registry.register("gauge-equivariance", "pathgeom", PathParams, tolerance=settings.GROUP_TOL)
def run_gauge_equivariance(params: PathParams, rng: np.random.Generator) -> CheckOutcome:
    """p(g gamma lambda^-1) = Ad_lambda p(gamma) - d lambda lambda^-1."""
    group = pathgeom.matrix_group(params.group)
    worst = 0.0
    for _ in range(params.paths):
        path = BandLimitedPath.random(group, rng, params.bandwidth).sample(params.samples)
        loop = BandLimitedPath.random(group, rng, params.bandwidth, periodic=True).sample(params.samples)
        g = group.exp(rng.standard_normal(group.dim))
        worst = max(worst, pathgeom.check_gauge_equivariance(path, g, loop)["residual"])
    return CheckOutcome(residuals={"equivariance": worst})


# --- suites ----------------------------------------------------------------


def _register_suites() -> None:
    quick, full = Profile.QUICK, Profile.FULL
    for profile in (quick, full):
        small = ("A1", "A2", "B2")
        algebras = small if profile is quick else small + ("A3", "B3", "C3", "G2")
        for name in ("weyl-denominator", "dual-coxeter", "weyl-group"):
            for algebra in algebras:
                registry.add_to_suite(profile, name, algebra=algebra)
        registry.add_to_suite(profile, "affine-roots", algebra="A1", n_max=4)
        registry.add_to_suite(profile, "affine-roots", algebra="A2", n_max=3)
        registry.add_to_suite(profile, "shifted-weight-sum", algebra="A1", max_length=8)
        registry.add_to_suite(profile, "shifted-weight-sum", algebra="A2", max_length=6 if profile is quick else 8)
        if profile is full:
            registry.add_to_suite(profile, "shifted-weight-sum", algebra="B2", max_length=8)
            registry.add_to_suite(profile, "shifted-weight-sum", algebra="G2", max_length=6)
        for algebra in ("A1", "A2"):
            registry.add_to_suite(profile, "affine-reflections", algebra=algebra, n_max=2)

        registry.add_to_suite(profile, "clifford-relations", dim=6)
        registry.add_to_suite(profile, "intertwiner-parity", dim=6 if profile is quick else 8)
        for algebra in ("A1", "A2", "B2") if profile is full else ("A1", "A2"):
            registry.add_to_suite(profile, "commweil", algebra=algebra)
            registry.add_to_suite(profile, "graded-character", algebra=algebra)
        registry.add_to_suite(profile, "subspace-factorization", dim=4, w_dim=2)
        if profile is full:
            registry.add_to_suite(profile, "subspace-factorization", dim=8, w_dim=4)

        registry.add_to_suite(profile, "hs-equivalence", dim=8)
        registry.add_to_suite(profile, "metric-isometry", dim=6)
        registry.add_to_suite(profile, "restricted-norm", dim=6)

        for algebra in ("A1", "A2") if profile is quick else ("A1", "A2", "B2", "G2"):
            registry.add_to_suite(profile, "kp-level", algebra=algebra)
        registry.add_to_suite(profile, "kp-cocycle", algebra="A1", modes=24, trials=50)
        registry.add_to_suite(profile, "central-jacobi", algebra="A1", modes=12)
        registry.add_to_suite(profile, "coadjoint-metric", algebra="A1", modes=8)
        registry.add_to_suite(profile, "weak-strong", algebra="A1", sobolev=0.5, modes_list=[8, 16, 24])
        registry.add_to_suite(profile, "rmu-smu", algebra="A1", modes=8)
        registry.add_to_suite(profile, "rmu-smu", algebra="A1", modes=8, mu=[2 ** -0.5])

        registry.add_to_suite(profile, "dvarpi", group="SU2", paths=1)
        registry.add_to_suite(profile, "varpi-quadrature", group="SU2", paths=1, samples=50)
        registry.add_to_suite(profile, "twisted-identity", group="SU2", paths=1)

    registry.add_to_suite(quick, "implementer", dim=6)
    registry.add_to_suite(quick, "interp-cs", dim=8, t_steps=11)
    registry.add_to_suite(quick, "polar-retraction", dim=6, t_steps=11)
    registry.add_to_suite(quick, "loop-operators", algebra="A1", modes=16)

    # sweeps: 108 interpolation pairs over dims 2..40, 100 symplectic maps up to dim 20,
    # 52 orthogonal maps over dims 2..8, loop operators on a cutoff x mu grid
    for dim in INTERP_DIMS:
        registry.add_to_suite(full, "interp-cs", dim=dim, t_steps=11, trials=12)
    for dim in range(2, 21, 2):
        registry.add_to_suite(full, "polar-retraction", dim=dim, t_steps=11, trials=10)
    for dim in (2, 4, 6, 8):
        registry.add_to_suite(full, "implementer", dim=dim, trials=13)
    for modes in (16, 32, 64):
        for mu in LOOP_MU_GRID:
            registry.add_to_suite(full, "loop-operators", algebra="A1", modes=modes, mu=[mu])

    registry.add_to_suite(full, "kp-cocycle", algebra="A2", modes=24, trials=20)
    registry.add_to_suite(full, "central-jacobi", algebra="A2", modes=12)
    registry.add_to_suite(full, "loop-operators", algebra="A2", modes=24)
    registry.add_to_suite(full, "coadjoint-metric", algebra="A2", modes=8)
    registry.add_to_suite(full, "weak-strong", algebra="A1", sobolev=0.5, modes_list=[8, 16, 32, 64])
    registry.add_to_suite(full, "weak-strong", algebra="A1", sobolev=1.0, modes_list=[8, 16, 32, 64])
    for group, paths in (("SU2", 20), ("SU3", 5)):
        for name in ("dvarpi", "contraction-loop", "contraction-group"):
            registry.add_to_suite(full, name, group=group, paths=paths)
        registry.add_to_suite(full, "varpi-quadrature", group=group, paths=paths, samples=50)
    registry.add_to_suite(full, "twisted-moment", group="SU2", automorphism="inner", paths=5)
    registry.add_to_suite(full, "twisted-moment", group="SU3", automorphism="conjugation", paths=5)
    registry.add_to_suite(full, "twisted-identity", group="SU3", automorphism="conjugation", paths=2)
    for name in ("twist-correspondence", "varpi-invariance", "gauge-equivariance"):
        registry.add_to_suite(full, name, group="SU2", paths=5)
        registry.add_to_suite(full, name, group="SU3", paths=2)


_register_suites()
