"""
Exact combinatorics of finite and affine root systems.

Everything here runs on ints and Fractions (numpy object arrays where a
matrix product is needed); no floating point enters the results.
"""
import logging
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from app.core.config import settings
from app.core.errors import CapExceededError, InputError, StructuralError, UnsupportedAlgebraError
from app.models.algebra import (
    AffineRoot,
    AffineWeylElement,
    LaurentCharacter,
    LieType,
    RootSystem,
    Weight,
    WeylElement,
    exact_matrix,
    exact_vector,
    integral_weight,
    normalize_weight,
)

logger = logging.getLogger(__name__)

F = Fraction

# Gram matrices B(alpha_i, alpha_j) of the simple roots, long roots of length^2 2.
GRAM_TABLES: Dict[Tuple[LieType, int], List[List[Fraction]]] = {
    (LieType.A, 1): [[F(2)]],
    (LieType.A, 2): [[F(2), F(-1)], [F(-1), F(2)]],
    (LieType.A, 3): [[F(2), F(-1), F(0)], [F(-1), F(2), F(-1)], [F(0), F(-1), F(2)]],
    (LieType.B, 2): [[F(2), F(-1)], [F(-1), F(1)]],
    (LieType.B, 3): [[F(2), F(-1), F(0)], [F(-1), F(2), F(-1)], [F(0), F(-1), F(1)]],
    (LieType.C, 3): [[F(1), F(-1, 2), F(0)], [F(-1, 2), F(1), F(-1)], [F(0), F(-1), F(2)]],
    (LieType.G, 2): [[F(2, 3), F(-1)], [F(-1), F(2)]],
}


def supported_algebras() -> List[str]:
    return [f"{t.value}{r}" for (t, r) in GRAM_TABLES]


def parse_algebra(name: str) -> Tuple[LieType, int]:
    """'A2' -> (LieType.A, 2)."""
    try:
        lie_type, rank = LieType(name[0].upper()), int(name[1:])
    except (ValueError, IndexError):
        raise UnsupportedAlgebraError(f"unsupported algebra: {name!r}")
    if (lie_type, rank) not in GRAM_TABLES:
        raise UnsupportedAlgebraError(f"unsupported algebra: {name!r}")
    return lie_type, rank


@lru_cache(maxsize=None)
def build_root_system(lie_type: Union[LieType, str], rank: int) -> RootSystem:
    try:
        lie_type = LieType(lie_type)
    except ValueError:
        raise UnsupportedAlgebraError(f"unsupported algebra: {lie_type}{rank}")
    if (lie_type, rank) not in GRAM_TABLES:
        raise UnsupportedAlgebraError(f"unsupported algebra: {lie_type.value}{rank}")

    gram = GRAM_TABLES[(lie_type, rank)]
    cartan = []
    for i in range(rank):
        row = []
        for j in range(rank):
            entry = 2 * gram[i][j] / gram[j][j]
            if entry.denominator != 1:
                raise StructuralError(f"non-integral Cartan entry at ({i},{j}) for {lie_type.value}{rank}")
            row.append(int(entry))
        cartan.append(tuple(row))

    positive = _positive_roots(cartan, rank)
    theta = max(positive, key=sum)
    if sum(1 for r in positive if sum(r) == sum(theta)) != 1:
        raise StructuralError("highest root is not unique")
    rho = normalize_weight(F(sum(r[i] for r in positive), 2) for i in range(rank))

    rs = RootSystem(
        lie_type=lie_type,
        rank=rank,
        cartan_matrix=tuple(cartan),
        gram=tuple(tuple(row) for row in gram),
        positive_roots=positive,
        theta=theta,
        rho=rho,
    )
    if rs.inner(theta, theta) != 2:
        raise StructuralError(f"B(theta, theta) = {rs.inner(theta, theta)} for {rs.name}")
    logger.info(f"✅ Root system {rs.name} built with {len(positive)} positive roots")
    return rs


def _positive_roots(cartan: List[Tuple[int, ...]], rank: int) -> Tuple[Tuple[int, ...], ...]:
    """Grow positive roots by height using alpha_i-strings: p - q = -<beta, alpha_i^vee>."""
    simple = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
    known = list(simple)
    seen = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(rank):
                q = 0
                probe = list(beta)
                while True:
                    probe[i] -= 1
                    if tuple(probe) in seen:
                        q += 1
                    else:
                        break
                pairing = sum(beta[j] * cartan[j][i] for j in range(rank))
                if q - pairing > 0:
                    grown = tuple(c + (1 if j == i else 0) for j, c in enumerate(beta))
                    if grown not in seen:
                        seen.add(grown)
                        nxt.append(grown)
        known.extend(sorted(nxt))
        layer = sorted(nxt)
    return tuple(sorted(known, key=lambda r: (sum(r), tuple(-c for c in r))))


@lru_cache(maxsize=None)
def dual_coxeter(rs: RootSystem) -> int:
    value = 1 + rs.inner(rs.rho, rs.theta)
    if value.denominator != 1 or value <= 0:
        raise StructuralError(f"1 + B(rho, theta) = {value} is not a positive integer for {rs.name}")
    return int(value)


def _simple_reflection_matrix(rs: RootSystem, i: int) -> np.ndarray:
    # column j is s_i(alpha_j) = alpha_j - A_ji alpha_i
    s = np.eye(rs.rank, dtype=int)
    for j in range(rs.rank):
        s[i, j] -= rs.cartan_matrix[j][i]
    return s


def _as_key(matrix: np.ndarray) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in matrix)


@lru_cache(maxsize=None)
def weyl_group(rs: RootSystem, cap: Optional[int] = None) -> Tuple[WeylElement, ...]:
    """Breadth-first enumeration by right multiplication with simple reflections."""
    cap = cap or settings.WEYL_GROUP_CAP
    reflections = [_simple_reflection_matrix(rs, i) for i in range(rs.rank)]
    identity = WeylElement(word=(), matrix=_as_key(np.eye(rs.rank, dtype=int)), length=0)
    seen: Dict[Tuple[Tuple[int, ...], ...], WeylElement] = {identity.matrix: identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for w in frontier:
            current = np.array(w.matrix, dtype=int)
            for i, s in enumerate(reflections):
                key = _as_key(current @ s)
                if key in seen:
                    continue
                element = WeylElement(word=w.word + (i + 1,), matrix=key, length=w.length + 1)
                seen[key] = element
                nxt.append(element)
                if len(seen) > cap:
                    raise CapExceededError(f"Weyl group of {rs.name} exceeds cap {cap}")
        frontier = nxt
    logger.debug(f"Weyl group of {rs.name}: {len(seen)} elements")
    return tuple(seen.values())


@lru_cache(maxsize=None)
def _weyl_lookup(rs: RootSystem) -> Dict[Tuple[Tuple[int, ...], ...], WeylElement]:
    return {w.matrix: w for w in weyl_group(rs)}


def weyl_element_for_matrix(rs: RootSystem, matrix) -> WeylElement:
    key = _as_key(np.array(matrix, dtype=object).astype(int))
    try:
        return _weyl_lookup(rs)[key]
    except KeyError:
        raise StructuralError(f"matrix {key} is not a Weyl group element of {rs.name}")


def weyl_multiply(rs: RootSystem, a: WeylElement, b: WeylElement) -> WeylElement:
    return weyl_element_for_matrix(rs, np.array(a.matrix, dtype=int) @ np.array(b.matrix, dtype=int))


def weyl_inverse(rs: RootSystem, w: WeylElement) -> WeylElement:
    return weyl_element_for_matrix(rs, w.inverse_matrix())


def reflection_element(rs: RootSystem, root) -> WeylElement:
    """Finite reflection s_alpha(v) = v - <v, alpha^vee> alpha."""
    root = tuple(root)
    columns = []
    for j in range(rs.rank):
        simple = rs.simple_roots[j]
        k = rs.pairing(simple, root)
        columns.append([F(simple[i]) - k * root[i] for i in range(rs.rank)])
    matrix = [[columns[j][i] for j in range(rs.rank)] for i in range(rs.rank)]
    return weyl_element_for_matrix(rs, matrix)


def inversion_set(rs: RootSystem, w: WeylElement) -> List[Tuple[int, ...]]:
    """Positive roots beta with w^{-1} beta negative."""
    inverse = weyl_inverse(rs, w)
    return [beta for beta in rs.positive_roots if not rs.is_positive(inverse.apply(beta))]


def weyl_group_properties(rs: RootSystem) -> Dict[str, object]:
    elements = weyl_group(rs)
    gram = exact_matrix(rs.gram)
    preserves_form = all(
        np.array_equal(exact_matrix(w.matrix).T @ gram @ exact_matrix(w.matrix), gram) for w in elements
    )
    length_matches_inversions = all(len(inversion_set(rs, w)) == w.length for w in elements)
    subadditive = True
    sign_homomorphism = True
    for a in elements:
        for b in elements:
            ab = weyl_multiply(rs, a, b)
            subadditive &= ab.length <= a.length + b.length
            sign_homomorphism &= ab.sign == a.sign * b.sign
    return {
        "order": len(elements),
        "max_length": max(w.length for w in elements),
        "preserves_form": preserves_form,
        "length_matches_inversions": length_matches_inversions,
        "length_subadditive": subadditive,
        "sign_homomorphism": sign_homomorphism,
    }


def weyl_denominator_identity(rs: RootSystem) -> Dict[str, object]:
    """prod_{alpha>0} (1 - t^{-alpha}) against sum_w (-1)^{l(w)} t^{w rho - rho}."""
    one = LaurentCharacter.one(rs.rank)
    lhs = one
    for alpha in rs.positive_roots:
        lhs = lhs * (one - LaurentCharacter.monomial(tuple(-c for c in alpha)))
    rhs = LaurentCharacter()
    for w in weyl_group(rs):
        shift = tuple(F(a) - F(b) for a, b in zip(w.apply(rs.rho), rs.rho))
        rhs = rhs + LaurentCharacter.monomial(shift, w.sign)
    return {"lhs": lhs, "rhs": rhs, "equal": lhs == rhs}


# --- affine combinatorics -------------------------------------------------


def affine_roots(rs: RootSystem, n_max: int) -> List[AffineRoot]:
    """All affine roots (alpha, n) with |n| <= n_max; (0, n) carries multiplicity rank."""
    if n_max < 0:
        raise InputError("n_max must be nonnegative")
    zero = (0,) * rs.rank
    out = []
    for n in range(-n_max, n_max + 1):
        for alpha in rs.roots:
            out.append(AffineRoot(finite_part=alpha, mode=n))
        if n != 0:
            out.append(AffineRoot(finite_part=zero, mode=n, multiplicity=rs.rank))
    return out


def _identity_affine(rs: RootSystem) -> AffineWeylElement:
    identity = weyl_group(rs)[0]
    return AffineWeylElement(translation=(0,) * rs.rank, finite=identity, length=0, word=())


def affine_weyl_apply(rs: RootSystem, w: AffineWeylElement, xi) -> Weight:
    image = w.finite.apply(xi)
    return normalize_weight(F(a) + F(b) for a, b in zip(image, w.translation))


def _product(rs: RootSystem, a: AffineWeylElement, b: AffineWeylElement) -> Tuple[Weight, WeylElement]:
    translation = normalize_weight(
        F(x) + F(y) for x, y in zip(a.translation, a.finite.apply(b.translation))
    )
    return translation, weyl_multiply(rs, a.finite, b.finite)


def affine_compose(rs: RootSystem, a: AffineWeylElement, b: AffineWeylElement) -> AffineWeylElement:
    """(l1, w1)(l2, w2) = (l1 + w1 l2, w1 w2)."""
    translation, finite = _product(rs, a, b)
    word = a.word + b.word if a.word is not None and b.word is not None else None
    draft = AffineWeylElement(translation=translation, finite=finite, length=0, word=word)
    return AffineWeylElement(
        translation=translation, finite=finite, length=len(affine_inversion_set(rs, draft)), word=word
    )


def affine_inverse_act(rs: RootSystem, w: AffineWeylElement, root: AffineRoot) -> AffineRoot:
    """w^{-1}.(alpha, n) = (u^{-1} alpha, n + B(alpha, lambda)/h)."""
    shift = rs.inner(root.finite_part, w.translation) / dual_coxeter(rs)
    if shift.denominator != 1:
        raise StructuralError(f"non-integral mode shift {shift} for {w.translation}")
    finite = weyl_inverse(rs, w.finite).apply(root.finite_part)
    return AffineRoot(finite_part=integral_weight(finite), mode=root.mode + int(shift), multiplicity=root.multiplicity)


def affine_act(rs: RootSystem, w: AffineWeylElement, root: AffineRoot) -> AffineRoot:
    """w.(alpha, n) = (u alpha, n - B(u alpha, lambda)/h)."""
    image = integral_weight(w.finite.apply(root.finite_part))
    shift = rs.inner(image, w.translation) / dual_coxeter(rs)
    if shift.denominator != 1:
        raise StructuralError(f"non-integral mode shift {shift} for {w.translation}")
    return AffineRoot(finite_part=image, mode=root.mode - int(shift), multiplicity=root.multiplicity)


def affine_inversion_set(rs: RootSystem, w: AffineWeylElement, cap: Optional[int] = None) -> List[AffineRoot]:
    """Positive affine roots beta with w^{-1} beta negative."""
    cap = cap or settings.AFFINE_MODE_CAP
    h = dual_coxeter(rs)
    bound = max(abs(rs.inner(alpha, w.translation)) for alpha in rs.positive_roots) / h
    n_max = int(bound) + 1
    if n_max > cap:
        raise CapExceededError(f"inversion set needs modes up to {n_max}, cap is {cap}")
    out = []
    for n in range(0, n_max + 1):
        for alpha in rs.roots:
            root = AffineRoot(finite_part=alpha, mode=n)
            if root.is_positive and not affine_inverse_act(rs, w, root).is_positive:
                out.append(root)
    return out


def affine_reflection(rs: RootSystem, root: AffineRoot) -> AffineWeylElement:
    """Reflection in h H_{(alpha, n)}: xi -> s_alpha xi - n h alpha^vee."""
    if not any(root.finite_part):
        raise InputError("imaginary affine roots have no reflection")
    h = dual_coxeter(rs)
    coroot = rs.coroot(root.finite_part)
    translation = normalize_weight(-root.mode * h * F(c) for c in coroot)
    finite = reflection_element(rs, root.finite_part)
    draft = AffineWeylElement(translation=translation, finite=finite, length=0)
    return AffineWeylElement(
        translation=translation, finite=finite, length=len(affine_inversion_set(rs, draft))
    )


@lru_cache(maxsize=None)
def affine_generators(rs: RootSystem) -> Tuple[AffineWeylElement, ...]:
    """s_0 (reflection in h H_{(-theta, 1)}) followed by the finite simple reflections."""
    theta = rs.theta
    s0 = affine_reflection(rs, AffineRoot(finite_part=tuple(-c for c in theta), mode=1))
    generators = [AffineWeylElement(translation=s0.translation, finite=s0.finite, length=1, word=(0,))]
    zero = (0,) * rs.rank
    for i in range(rs.rank):
        finite = reflection_element(rs, rs.simple_roots[i])
        generators.append(AffineWeylElement(translation=zero, finite=finite, length=1, word=(i + 1,)))
    return tuple(generators)


@lru_cache(maxsize=None)
def affine_weyl_elements(rs: RootSystem, max_length: int, cap: Optional[int] = None) -> Tuple[AffineWeylElement, ...]:
    """Every affine Weyl element of length <= max_length, breadth-first by length."""
    cap = cap or settings.AFFINE_ELEMENT_CAP
    identity = _identity_affine(rs)
    seen = {identity.key: identity}
    frontier = [identity]
    for depth in range(1, max_length + 1):
        nxt = []
        for w in frontier:
            for s in affine_generators(rs):
                translation, finite = _product(rs, w, s)
                key = (translation, finite.matrix)
                if key in seen:
                    continue
                element = AffineWeylElement(
                    translation=translation, finite=finite, length=depth, word=w.word + s.word
                )
                seen[key] = element
                nxt.append(element)
                if len(seen) > cap:
                    raise CapExceededError(f"affine Weyl enumeration of {rs.name} exceeds cap {cap}")
        frontier = nxt
    return tuple(seen.values())


def shifted_weight_sum(rs: RootSystem, w: AffineWeylElement) -> Weight:
    """Sum of finite parts over the inversion set; equals rho - w rho."""
    total = [F(0)] * rs.rank
    for root in affine_inversion_set(rs, w):
        for i, c in enumerate(root.finite_part):
            total[i] += c
    result = normalize_weight(total)
    expected = normalize_weight(F(a) - F(b) for a, b in zip(rs.rho, affine_weyl_apply(rs, w, rs.rho)))
    if result != expected:
        raise StructuralError(f"shifted weight sum {result} differs from rho - w rho = {expected} in {rs.name}")
    return result
