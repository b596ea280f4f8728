"""
Discretized path fibration PG -> G over SU(2) and SU(3).

Tangent vectors to PG are right-trivialized, v_t = delta gamma_t gamma_t^{-1}.
With generating vector fields X_M = d/ds exp(-sX).m the loop group acts by
xi_PG = Ad_gamma xi and G by X_PG = -X. Integrals use product trapezoid
rules on t_j = j/M that are symmetric under reversing the interval, so the
discretization error expands in even powers of 1/M; together with central
differences in h every check converges at order 2 in (1/M, h).
"""
import logging
import math
from functools import lru_cache
from typing import Callable, Dict, List, Optional

import numpy as np
from scipy.linalg import expm

from app.core.config import settings
from app.core.errors import InputError, UnsupportedInputError
from app.models.path import (
    Automorphism,
    BandLimitedPath,
    BandLimitedVariation,
    DiscretePath,
    MatrixGroup,
    TangentVariation,
)
from app.services.lie_realizations import build_compact_algebra

logger = logging.getLogger(__name__)

GROUP_ALGEBRAS = {"SU2": "A1", "SU3": "A2"}

# eta(u, v, w) = c <u, [v, w]> for eta = (1/12) theta . [theta, theta]; the
# first-order expansion of varpi in an exponential chart gives
# d varpi(u, v, w) = -(1/2) <Tq u, [Tq v, Tq w]>, which fixes c = 1/2.
CARTAN_ETA_CONSTANT = 0.5

RESIDUAL_FLOOR = 1e-13


@lru_cache(maxsize=None)
def matrix_group(name: str) -> MatrixGroup:
    if name not in GROUP_ALGEBRAS:
        raise UnsupportedInputError(f"unsupported group {name!r}; expected one of {sorted(GROUP_ALGEBRAS)}")
    return MatrixGroup(name=name, algebra=build_compact_algebra(GROUP_ALGEBRAS[name]))


# --- automorphisms ---------------------------------------------------------


def identity_automorphism(group: MatrixGroup) -> Automorphism:
    return Automorphism("identity", np.eye(group.dim), lambda g: g, group.algebra)


def inner_automorphism(group: MatrixGroup, h: np.ndarray) -> Automorphism:
    h = np.asarray(h, dtype=complex)
    h_inv = group.inverse(h)
    return Automorphism("inner", group.adjoint_matrix(h), lambda g: h @ g @ h_inv, group.algebra)


def complex_conjugation(group: MatrixGroup) -> Automorphism:
    """Entrywise conjugation; outer for SU(3), inner for SU(2)."""
    algebra = group.algebra
    matrix = algebra.to_coords(np.conj(algebra.matrices)).T
    return Automorphism("conjugation", matrix, np.conj, algebra)


def build_automorphism(group: MatrixGroup, kind: str, rng: Optional[np.random.Generator] = None) -> Automorphism:
    if kind == "identity":
        return identity_automorphism(group)
    if kind == "inner":
        rng = rng or np.random.default_rng(settings.DEFAULT_SEED)
        return inner_automorphism(group, group.exp(rng.standard_normal(group.dim)))
    if kind == "conjugation":
        return complex_conjugation(group)
    raise InputError(f"unknown automorphism kind {kind!r}")


# --- the 2-form ------------------------------------------------------------


def left_trivialize(path: DiscretePath, v: TangentVariation) -> np.ndarray:
    """theta^L(v)_t = Ad_{gamma_t^{-1}} v_t."""
    return path.group.conjugate(path.group.inverse(path.samples), v.values)


def right_trivialize(path: DiscretePath, x: np.ndarray) -> TangentVariation:
    """Ad_{gamma_t} x_t, the right-trivialized form of a left-trivialized field."""
    return TangentVariation(path.group.conjugate(path.samples, x))


def _varpi(path: DiscretePath, v: TangentVariation, w: TangentVariation,
           kappa: Optional[Automorphism]) -> float:
    v.require_grid(path)
    w.require_grid(path)
    # trapezoid rule for int v dw - w dv on each [t_j, t_j+1]
    a, b = v.values, w.values
    integral = 0.5 * float(np.sum(a[:-1] * b[1:] - b[:-1] * a[1:]))
    left_v, left_w = left_trivialize(path, v), left_trivialize(path, w)
    start_v, start_w = left_v[0], left_w[0]
    if kappa is not None:
        start_v, start_w = kappa.apply(start_v), kappa.apply(start_w)
    boundary = 0.5 * (start_v @ left_w[-1] - start_w @ left_v[-1])
    return float(integral + boundary)


def varpi_eval(path: DiscretePath, v: TangentVariation, w: TangentVariation) -> float:
    """varpi = 1/2 int theta^R . d/dt theta^R + 1/2 ev_0^* theta^L . ev_1^* theta^L."""
    return _varpi(path, v, w, None)


def varpi_twisted(path: DiscretePath, kappa: Automorphism, v: TangentVariation, w: TangentVariation) -> float:
    if kappa.is_identity:
        return varpi_eval(path, v, w)
    return _varpi(path, v, w, kappa)


def _form(path: DiscretePath, v: TangentVariation, w: TangentVariation, kappa: Optional[Automorphism]) -> float:
    return varpi_eval(path, v, w) if kappa is None else varpi_twisted(path, kappa, v, w)


def cartan_eta(group: MatrixGroup, u: np.ndarray, v: np.ndarray, w: np.ndarray) -> float:
    return float(CARTAN_ETA_CONSTANT * (u @ group.algebra.bracket(v, w)))


def twisted_holonomy(path: DiscretePath, kappa: Optional[Automorphism] = None) -> np.ndarray:
    """q(gamma) = gamma(1) kappa(gamma(0))^{-1}."""
    if kappa is None:
        return path.holonomy
    return path.samples[-1] @ path.group.inverse(kappa.group_action(path.samples[0]))


def holonomy_differential(path: DiscretePath, v: TangentVariation,
                          kappa: Optional[Automorphism] = None) -> np.ndarray:
    """Right-trivialized Tq(v) = v_1 - Ad_q kappa_*(v_0)."""
    q = twisted_holonomy(path, kappa)
    start = v.values[0] if kappa is None else kappa.apply(v.values[0])
    return v.values[-1] - path.group.conjugate(q, start)


# --- exponential chart -----------------------------------------------------


def _chart_path(path: DiscretePath, X: np.ndarray) -> DiscretePath:
    """exp(X_t) gamma_t."""
    return DiscretePath(path.group, path.group.exp(X) @ path.samples)


def _chart_field(group: MatrixGroup, X: np.ndarray, v: TangentVariation) -> TangentVariation:
    """Right-trivialized d/ds exp(X + s v) at s = 0: L(X, v) exp(-X)."""
    n = group.size
    Xm = group.algebra.to_matrix(X)
    block = np.zeros((X.shape[0], 2 * n, 2 * n), dtype=complex)
    block[:, :n, :n] = Xm
    block[:, n:, n:] = Xm
    block[:, :n, n:] = group.algebra.to_matrix(v.values)
    frechet = expm(block)[:, :n, n:]
    return TangentVariation(group.algebra.to_coords(frechet @ expm(-Xm)))


def _deformed_form(path: DiscretePath, shift: np.ndarray, a: TangentVariation, b: TangentVariation,
                   kappa: Optional[Automorphism]) -> float:
    group = path.group
    moved = _chart_path(path, shift)
    return _form(moved, _chart_field(group, shift, a), _chart_field(group, shift, b), kappa)


def _directional(path: DiscretePath, direction: TangentVariation, a: TangentVariation, b: TangentVariation,
                 h: float, kappa: Optional[Automorphism]) -> float:
    plus = _deformed_form(path, h * direction.values, a, b, kappa)
    minus = _deformed_form(path, -h * direction.values, a, b, kappa)
    return (plus - minus) / (2 * h)


def dvarpi_residual(path: DiscretePath, u: TangentVariation, v: TangentVariation, w: TangentVariation,
                    h: float, kappa: Optional[Automorphism] = None) -> Dict[str, float]:
    """
    d varpi(u, v, w) = U varpi(V, W) - V varpi(U, W) + W varpi(U, V) on the
    chart coordinate fields, whose brackets vanish, against -q^* eta.
    """
    if h <= 0:
        raise InputError("finite-difference step must be positive")
    for x in (u, v, w):
        x.require_grid(path)
    d_varpi = (
        _directional(path, u, v, w, h, kappa)
        - _directional(path, v, u, w, h, kappa)
        + _directional(path, w, u, v, h, kappa)
    )
    tq = [holonomy_differential(path, x, kappa) for x in (u, v, w)]
    pullback = -cartan_eta(path.group, *tq)
    return {"dvarpi": d_varpi, "pullback_eta": pullback, "residual": abs(d_varpi - pullback)}


# --- contraction identities ------------------------------------------------


def path_connection(path: DiscretePath) -> np.ndarray:
    """p(gamma) = gamma^{-1} d gamma / dt; exact velocities are used when the path carries them."""
    if path.velocity is not None:
        velocity = path.velocity
    else:
        velocity = np.gradient(path.samples, 1.0 / path.M, axis=0, edge_order=2)
    return path.group.algebra.to_coords(path.group.inverse(path.samples) @ velocity)


def connection_pairing(path: DiscretePath, xi: TangentVariation) -> float:
    """
    <mu, xi> = int mu_t . xi_t dt for mu = gamma^{-1} d gamma, with mu dt on
    [t_j, t_j+1] taken as (gamma_j^{-1} + gamma_j+1^{-1}) / 2 . (gamma_j+1 - gamma_j).
    """
    xi.require_grid(path)
    inverse = path.group.inverse(path.samples)
    increments = 0.5 * (inverse[:-1] + inverse[1:]) @ np.diff(path.samples, axis=0)
    mu_dt = path.group.algebra.to_coords(increments)
    return float(np.sum(mu_dt * 0.5 * (xi.values[:-1] + xi.values[1:])))


def _require_twisted_periodic(xi: TangentVariation, kappa: Optional[Automorphism]) -> None:
    end = xi.values[0] if kappa is None else kappa.apply(xi.values[0])
    defect = np.abs(xi.values[-1] - end).max()
    if defect > 1e-12 * max(1.0, np.abs(xi.values).max()):
        raise UnsupportedInputError(f"xi is not a (twisted) loop: |xi(1) - kappa xi(0)| = {defect:.3e}")


def contraction_loop_residual(path: DiscretePath, xi: TangentVariation, w: TangentVariation, h: float,
                              kappa: Optional[Automorphism] = None) -> Dict[str, float]:
    """iota(xi_PG) varpi = p^* d <mu, xi> with xi_PG = Ad_gamma xi."""
    xi.require_grid(path)
    w.require_grid(path)
    _require_twisted_periodic(xi, kappa)
    lhs = _form(path, right_trivialize(path, xi.values), w, kappa)
    plus = connection_pairing(_chart_path(path, h * w.values), xi)
    minus = connection_pairing(_chart_path(path, -h * w.values), xi)
    rhs = (plus - minus) / (2 * h)
    return {"lhs": lhs, "rhs": rhs, "residual": abs(lhs - rhs)}


def contraction_group_residual(path: DiscretePath, X: np.ndarray, w: TangentVariation, h: float,
                               kappa: Optional[Automorphism] = None) -> Dict[str, float]:
    """iota(X_PG) varpi = -q^*(1/2 (theta^L . kappa X + theta^R . X)) with X_PG = -X."""
    w.require_grid(path)
    X = np.asarray(X, dtype=float)
    group = path.group
    generator = TangentVariation(np.tile(-X, (path.M + 1, 1)))
    lhs = _form(path, generator, w, kappa)
    q = twisted_holonomy(path, kappa)
    q_plus = twisted_holonomy(_chart_path(path, h * w.values), kappa)
    q_minus = twisted_holonomy(_chart_path(path, -h * w.values), kappa)
    delta_q = (q_plus - q_minus) / (2 * h)
    theta_right = group.algebra.to_coords(delta_q @ group.inverse(q))
    theta_left = group.algebra.to_coords(group.inverse(q) @ delta_q)
    twisted_X = X if kappa is None else kappa.apply(X)
    rhs = -0.5 * (theta_left @ twisted_X + theta_right @ X)
    return {"lhs": lhs, "rhs": rhs, "residual": abs(lhs - rhs)}


def twisted_loop_variation(zeta: BandLimitedVariation, kappa: Automorphism, M: int) -> TangentVariation:
    """(1 - t) zeta + t kappa_* zeta, a twisted loop when zeta is periodic."""
    if not zeta.is_periodic:
        raise UnsupportedInputError("zeta must be periodic")
    t = np.linspace(0.0, 1.0, M + 1)[:, None]
    values = zeta.evaluate(t[:, 0])
    return TangentVariation((1 - t) * values + t * kappa.apply(values))


# --- convergence drivers ---------------------------------------------------


def convergence_rows(residual_at: Callable[[int, float], float], M: int, h: float,
                     levels: int = 2) -> List[Dict[str, Optional[float]]]:
    """Residuals under simultaneous refinement (M, h) -> (2M, h/2) with observed orders."""
    rows: List[Dict[str, Optional[float]]] = []
    for k in range(levels):
        M_k, h_k = M * 2 ** k, h / 2 ** k
        residual = float(residual_at(M_k, h_k))
        order = None
        if rows and rows[-1]["residual"] > RESIDUAL_FLOOR and residual > RESIDUAL_FLOOR:
            order = math.log2(rows[-1]["residual"] / residual)
        rows.append({"M": M_k, "h": h_k, "residual": residual, "order": order})
    return rows


def fitted_order(residuals: List[float]) -> Optional[float]:
    """
    Least-squares slope of -log2(residual) against refinement level.

    Levels at or below RESIDUAL_FLOOR carry no order information and are
    dropped; fewer than two remaining levels give None.
    """
    points = [(k, math.log2(r)) for k, r in enumerate(residuals) if r > RESIDUAL_FLOOR]
    if len(points) < 2:
        return None
    levels, logs = zip(*points)
    slope = np.polyfit(np.array(levels, dtype=float), np.array(logs), 1)[0]
    return float(-slope)


def order_estimate(rows: List[Dict[str, Optional[float]]]) -> Optional[float]:
    return fitted_order([row["residual"] for row in rows])


def pooled_order(results: List[Dict[str, object]]) -> Optional[float]:
    """Fitted order of the level-wise summed residuals over several convergence runs."""
    if not results:
        return None
    depth = min(len(r["rows"]) for r in results)
    totals = [sum(r["rows"][k]["residual"] for r in results) for k in range(depth)]
    return fitted_order(totals)


def check_dvarpi(source: BandLimitedPath, u: BandLimitedVariation, v: BandLimitedVariation,
                 w: BandLimitedVariation, M: int, h: float, kappa: Optional[Automorphism] = None,
                 levels: int = 2) -> Dict[str, object]:
    logger.info(f"🔍 d varpi check on {source.group.name}, M={M}, h={h}")

    def residual_at(M_k: int, h_k: float) -> float:
        path = source.sample(M_k)
        return dvarpi_residual(path, u.sample(M_k), v.sample(M_k), w.sample(M_k), h_k, kappa)["residual"]

    rows = convergence_rows(residual_at, M, h, levels)
    return {"rows": rows, "residual": rows[0]["residual"], "order_estimate": order_estimate(rows)}


def check_contraction_loop(source: BandLimitedPath, xi: BandLimitedVariation, w: BandLimitedVariation,
                           M: int, h: float, levels: int = 2) -> Dict[str, object]:
    if not xi.is_periodic:
        raise UnsupportedInputError("xi must be a loop: its linear part must vanish")

    def residual_at(M_k: int, h_k: float) -> float:
        path = source.sample(M_k)
        return contraction_loop_residual(path, xi.sample(M_k), w.sample(M_k), h_k)["residual"]

    rows = convergence_rows(residual_at, M, h, levels)
    return {"rows": rows, "residual": rows[0]["residual"], "order_estimate": order_estimate(rows)}


def check_twisted_contraction_loop(source: BandLimitedPath, zeta: BandLimitedVariation, w: BandLimitedVariation,
                                   kappa: Automorphism, M: int, h: float, levels: int = 2) -> Dict[str, object]:
    def residual_at(M_k: int, h_k: float) -> float:
        path = source.sample(M_k)
        xi = twisted_loop_variation(zeta, kappa, M_k)
        return contraction_loop_residual(path, xi, w.sample(M_k), h_k, kappa)["residual"]

    rows = convergence_rows(residual_at, M, h, levels)
    return {"rows": rows, "residual": rows[0]["residual"], "order_estimate": order_estimate(rows)}


def check_contraction_group(source: BandLimitedPath, X: np.ndarray, w: BandLimitedVariation, M: int, h: float,
                            kappa: Optional[Automorphism] = None, levels: int = 2) -> Dict[str, object]:
    def residual_at(M_k: int, h_k: float) -> float:
        return contraction_group_residual(source.sample(M_k), X, w.sample(M_k), h_k, kappa)["residual"]

    rows = convergence_rows(residual_at, M, h, levels)
    return {"rows": rows, "residual": rows[0]["residual"], "order_estimate": order_estimate(rows)}


def varpi_quadrature_rows(source: BandLimitedPath, v: BandLimitedVariation, w: BandLimitedVariation,
                          M: int, levels: int = 3) -> Dict[str, object]:
    """Richardson-style order of the quadrature: successive differences shrink by 4."""
    values = [varpi_eval(source.sample(M * 2 ** k), v.sample(M * 2 ** k), w.sample(M * 2 ** k))
              for k in range(levels + 1)]
    differences = [abs(b - a) for a, b in zip(values, values[1:])]
    rows = []
    for k, diff in enumerate(differences):
        order = None
        if k and differences[k - 1] > RESIDUAL_FLOOR and diff > RESIDUAL_FLOOR:
            order = math.log2(differences[k - 1] / diff)
        rows.append({"M": M * 2 ** (k + 1), "h": None, "residual": diff, "order": order})
    return {"values": values, "rows": rows, "order_estimate": order_estimate(rows)}


# --- symmetry checks -------------------------------------------------------


def check_twist_correspondence(path: DiscretePath, Y: np.ndarray, v: TangentVariation,
                               w: TangentVariation) -> Dict[str, float]:
    """varpi^(Ad_h)(gamma sigma^{-1}) = varpi(gamma) for sigma(t) = exp(tY), h = exp(Y)."""
    group = path.group
    Y = np.asarray(Y, dtype=float)
    sigma = group.exp(np.outer(path.t_grid, Y))
    moved = DiscretePath(group, path.samples @ group.inverse(sigma))
    kappa = inner_automorphism(group, group.exp(Y))
    twisted = varpi_twisted(moved, kappa, v, w)
    plain = varpi_eval(path, v, w)
    return {"twisted": twisted, "untwisted": plain, "residual": abs(twisted - plain)}


def check_varpi_invariance(path: DiscretePath, v: TangentVariation, w: TangentVariation, g: np.ndarray,
                           loop: DiscretePath) -> Dict[str, float]:
    """varpi at g gamma lambda^{-1} with variations Ad_g v equals varpi at gamma."""
    group = path.group
    if np.abs(loop.samples[-1] - loop.samples[0]).max() > settings.GROUP_TOL:
        raise UnsupportedInputError("lambda must be a loop")
    moved = DiscretePath(group, g @ path.samples @ group.inverse(loop.samples))
    moved_v = TangentVariation(group.conjugate(g, v.values))
    moved_w = TangentVariation(group.conjugate(g, w.values))
    before = varpi_eval(path, v, w)
    after = varpi_eval(moved, moved_v, moved_w)
    return {"before": before, "after": after, "residual": abs(before - after)}


def gauge_action(loop: DiscretePath, mu: np.ndarray) -> np.ndarray:
    """lambda . mu = Ad_lambda mu - d lambda lambda^{-1}."""
    group = loop.group
    return group.conjugate(loop.samples, mu) - group.algebra.to_coords(loop.velocity @ group.inverse(loop.samples))


def check_gauge_equivariance(path: DiscretePath, g: np.ndarray, loop: DiscretePath) -> Dict[str, float]:
    """p(g gamma lambda^{-1}) = lambda . p(gamma), with exact velocities on both paths."""
    if path.velocity is None or loop.velocity is None:
        raise InputError("gauge equivariance needs paths with exact velocities")
    group = path.group
    loop_inv = group.inverse(loop.samples)
    samples = g @ path.samples @ loop_inv
    velocity = g @ path.velocity @ loop_inv - samples @ loop.velocity @ loop_inv
    moved = DiscretePath(group, samples, velocity)
    lhs = path_connection(moved)
    rhs = gauge_action(loop, path_connection(path))
    return {"residual": float(np.abs(lhs - rhs).max())}
