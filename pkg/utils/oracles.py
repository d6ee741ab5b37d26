#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Oracles - Vérifications par énumération exhaustive (petites instances)

Ces fonctions ne servent qu'à contrôler le moteur : elles énumèrent
tous les éléments ou tous les sous-espaces et sont donc bornées par
BRUTE_FORCE_LIMIT et MAX_SUBSPACE_ENUMERATION.
"""

import itertools
import logging
from typing import Iterator, List, Optional, Tuple

import numpy as np

from config.settings import Config
from engine.algebra import Algebra
from engine.errors import ContractViolation
from engine.exactlin import (Matrix, kernel_basis, left_kernel_basis, matmul, rank,
                             row_space_basis, subspace_intersection)
from engine.module import Module, end_algebra

logger = logging.getLogger(__name__)


def _all_vectors(dim: int, p: int) -> np.ndarray:
    """Les p^dim vecteurs de F_p^dim, dans l'ordre lexicographique"""
    if p ** dim > Config.BRUTE_FORCE_LIMIT:
        raise ContractViolation(f"{p}^{dim} elements exceed the brute-force limit")
    grids = np.indices((p,) * dim).reshape(dim, -1).T
    return grids.astype(np.int64)


def enumerate_idempotents(a: Algebra) -> np.ndarray:
    """Tous les idempotents de a (vectorisé : x^2 calculé pour tous les x)"""
    p, d = a.p, a.dim
    if d == 0:
        return np.zeros((1, 0), dtype=np.int64)
    xs = _all_vectors(d, p)
    outer = (xs[:, :, None] * xs[:, None, :]) % p
    squares = np.einsum('nij,ijk->nk', outer, a.table) % p
    return xs[np.all(squares == xs, axis=1)]


def only_trivial_idempotents(a: Algebra) -> bool:
    """Vrai ssi les seuls idempotents sont 0 et 1"""
    idempotents = enumerate_idempotents(a)
    return a.dim > 0 and len(idempotents) == 2


def brute_force_is_local(a: Algebra) -> bool:
    """Une algèbre de dimension finie est locale ssi ses seuls idempotents sont 0 et 1"""
    return only_trivial_idempotents(a)


def module_is_indecomposable(m: Module) -> Optional[bool]:
    """Oracle sur End(m) ; None si |End(m)| dépasse la limite"""
    end = end_algebra(m)
    if m.p ** end.dim > Config.BRUTE_FORCE_LIMIT:
        logger.debug(f"Oracle des idempotents refusé: {m.p}^{end.dim} éléments")
        return None
    return only_trivial_idempotents(end.algebra)


def subspace_count(n: int, p: int) -> int:
    """Nombre de sous-espaces de F_p^n (somme des coefficients binomiaux de Gauss)"""
    total = 0
    for k in range(n + 1):
        numerator, denominator = 1, 1
        for i in range(k):
            numerator *= p ** (n - i) - 1
            denominator *= p ** (i + 1) - 1
        total += numerator // denominator
    return total


def enumerable(n: int, p: int) -> bool:
    return subspace_count(n, p) <= Config.MAX_SUBSPACE_ENUMERATION


def enumerate_subspaces(n: int, p: int, dims: Optional[List[int]] = None) -> Iterator[Matrix]:
    """
    Sous-espaces de F_p^n sous forme de bases RREF

    Chaque sous-espace apparaît une seule fois : on parcourt les positions
    de pivots puis les entrées libres à droite des pivots.
    """
    produced = 0
    for r in (dims if dims is not None else range(n + 1)):
        for pivots in itertools.combinations(range(n), r):
            free = [(i, j) for i, c in enumerate(pivots)
                    for j in range(c + 1, n) if j not in pivots]
            for values in itertools.product(range(p), repeat=len(free)):
                produced += 1
                if produced > Config.MAX_SUBSPACE_ENUMERATION:
                    raise ContractViolation("subspace enumeration exceeds the configured cap")
                basis = np.zeros((r, n), dtype=np.int64)
                for i, c in enumerate(pivots):
                    basis[i, c] = 1
                for (i, j), v in zip(free, values):
                    basis[i, j] = v
                yield basis


def _contains(big: Matrix, small: Matrix, p: int) -> bool:
    if small.shape[0] == 0:
        return True
    return rank(np.vstack([big, small]), p) == big.shape[0]


def _maximal(subspaces: List[Matrix], p: int) -> List[Matrix]:
    out = []
    for u in subspaces:
        if not any(w.shape[0] > u.shape[0] and _contains(w, u, p) for w in subspaces):
            out.append(u)
    return out


def maximal_submodules(m: Module) -> List[Matrix]:
    """Sous-modules propres maximaux, par énumération de tous les sous-espaces"""
    proper = [u for u in enumerate_subspaces(m.dim, m.p, list(range(m.dim)))
              if m.is_stable(u) is None]
    return _maximal(proper, m.p)


def radical_by_maximal_submodules(m: Module) -> Matrix:
    """rad m comme intersection des sous-modules maximaux"""
    current = np.eye(m.dim, dtype=np.int64)
    for u in maximal_submodules(m):
        current = subspace_intersection(current, u, m.p)
    return row_space_basis(current, m.p)


def maximal_right_ideals(a: Algebra) -> List[Matrix]:
    """Idéaux à droite propres maximaux : I @ R_b inclus dans I pour tout b"""
    right = [a.right_matrix(row) for row in np.eye(a.dim, dtype=np.int64)]
    ideals = []
    for u in enumerate_subspaces(a.dim, a.p, list(range(a.dim))):
        if u.shape[0] and not all(_contains(u, matmul(u, r, a.p), a.p) for r in right):
            continue
        ideals.append(u)
    return _maximal(ideals, a.p)


def _key(basis: Matrix) -> Tuple:
    return basis.shape + tuple(int(v) for v in basis.ravel())


def maxsub_bijection_holds(m: Module) -> Tuple[bool, dict]:
    """
    U -> {phi dans End(m) : Im phi inclus dans U} est-elle une bijection
    entre sous-modules maximaux et idéaux à droite maximaux de End(m) ?
    """
    p = m.p
    end = end_algebra(m)
    submodules = maximal_submodules(m)
    ideals = {_key(i) for i in maximal_right_ideals(end.algebra)}
    images = set()
    for u in submodules:
        normals = kernel_basis(u, p)
        # phi @ N^T = 0 exprimé sur les coordonnées de End(m)
        conditions = np.stack([matmul(f, normals.T, p).ravel() for f in end.hom.basis])
        coordinates = left_kernel_basis(conditions, p) if conditions.shape[1] else \
            np.eye(end.dim, dtype=np.int64)
        images.add(_key(row_space_basis(coordinates, p)))
    ok = len(images) == len(submodules) and images == ideals
    return ok, {'maximal_submodules': len(submodules), 'maximal_right_ideals': len(ideals),
                'images': len(images)}
