#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Module Engine - Modules à droite de dimension finie

Un module est donné par une matrice d'action par vecteur de base de
l'algèbre (v -> v @ action[i]). Les morphismes sont des matrices
dim(source) x dim(but) agissant à droite ; la composée "g après f" est
f @ g. Les identités de somme directe s'écrivent donc
somme_i pi_i @ iota_i = id et iota_i @ pi_i = id.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .algebra import Algebra
from .errors import ContractViolation
from .exactlin import (Matrix, complement_basis, identity, in_row_span, inverse,
                       left_kernel_basis, matmul, rref, row_space_basis,
                       solve_linear, zeros)

logger = logging.getLogger(__name__)


class Module:
    """
    Module à droite sur une algèbre de dimension finie

    Attributes:
        algebra: Algèbre des scalaires
        dim: Dimension sur F_p
        action: Tableau (dim algèbre, dim, dim)
    """

    def __init__(self, algebra: Algebra, action, validate: bool = True):
        self.algebra = algebra
        self.p = algebra.p
        action = np.asarray(action, dtype=np.int64)
        if action.ndim != 3 or action.shape[0] != algebra.dim or action.shape[1] != action.shape[2]:
            raise ContractViolation(
                f"action must have shape ({algebra.dim}, n, n), got {action.shape}"
            )
        self.action = action % self.p
        self.dim = action.shape[1]
        if validate:
            self.check()

    def __repr__(self) -> str:
        return f"Module(dim={self.dim}, algebra_dim={self.algebra.dim}, p={self.p})"

    def is_zero(self) -> bool:
        return self.dim == 0

    def check(self):
        """Unité et compatibilité action(b_i) @ action(b_j) = action(b_i b_j)"""
        a, n, p = self.algebra, self.dim, self.p
        d = a.dim
        if n == 0:
            return
        if not np.array_equal(self.element_action(a.one), identity(n)):
            raise ContractViolation("the unit does not act as the identity")
        stacked = self.action.transpose(1, 0, 2).reshape(n, d * n)
        expected = matmul(a.table.reshape(d * d, d), self.action.reshape(d, n * n), p)
        expected = expected.reshape(d, d, n, n)
        for i in range(d):
            products = matmul(self.action[i], stacked, p).reshape(n, d, n).transpose(1, 0, 2)
            bad = np.nonzero(np.any(products != expected[i], axis=(1, 2)))[0]
            if bad.size:
                raise ContractViolation(
                    f"action is not compatible with the algebra at basis pair ({i}, {int(bad[0])})"
                )

    def element_action(self, x: np.ndarray) -> Matrix:
        """Matrice de v -> v.x pour un élément x de l'algèbre"""
        d, n = self.algebra.dim, self.dim
        return matmul(np.asarray(x).reshape(1, d), self.action.reshape(d, n * n),
                      self.p).reshape(n, n)

    def act(self, vectors: Matrix, i: int) -> Matrix:
        return matmul(vectors, self.action[i], self.p)

    def is_stable(self, subspace: Matrix) -> Optional[Tuple[int, int]]:
        """Premier couple (vecteur, vecteur de base) qui sort du sous-espace, sinon None"""
        for i in range(self.algebra.dim):
            images = self.act(subspace, i)
            for r, row in enumerate(images):
                if not in_row_span(row.reshape(1, -1), subspace, self.p):
                    return r, i
        return None

    def to_dict(self, with_action: bool = False) -> Dict[str, Any]:
        data: Dict[str, Any] = {'dim': self.dim}
        if with_action:
            data['action'] = self.action.tolist()
        return data


def zero_module(a: Algebra) -> Module:
    return Module(a, np.zeros((a.dim, 0, 0), dtype=np.int64), validate=False)


def regular_module(a: Algebra) -> Module:
    """Module régulier A_A : action de b_j = R_{b_j}"""
    return Module(a, a.table.transpose(1, 0, 2).copy(), validate=False)


def is_intertwiner(f: Matrix, m: Module, n: Module) -> bool:
    if f.shape != (m.dim, n.dim):
        return False
    for i in range(m.algebra.dim):
        if not np.array_equal(matmul(m.action[i], f, m.p), matmul(f, n.action[i], m.p)):
            return False
    return True


def compose(f: Matrix, g: Matrix, p: int) -> Matrix:
    """g après f"""
    return matmul(f, g, p)


def _check_same_algebra(m: Module, n: Module):
    if not m.algebra.same_structure(n.algebra):
        raise ContractViolation("modules live over different algebras")


@dataclass
class HomSpace:
    """Base RREF de Hom(source, target) ; basis a la forme (k, dim source, dim target)"""
    source: Module
    target: Module
    basis: np.ndarray
    pivots: List[int]

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def p(self) -> int:
        return self.source.p

    def vectors(self) -> Matrix:
        return self.basis.reshape(self.dim, self.source.dim * self.target.dim)

    def element(self, coordinates: np.ndarray) -> Matrix:
        shape = (self.source.dim, self.target.dim)
        if self.dim == 0:
            return zeros(*shape)
        return matmul(np.asarray(coordinates).reshape(1, -1), self.vectors(), self.p).reshape(shape)

    def coordinates(self, maps: np.ndarray) -> Matrix:
        """Coordonnées de morphismes (lus sur les colonnes pivots de la base RREF)"""
        flat = np.asarray(maps).reshape(-1, self.source.dim * self.target.dim) % self.p
        return flat[:, self.pivots]

    def contains(self, f: Matrix) -> bool:
        return in_row_span(np.asarray(f).reshape(1, -1) % self.p, self.vectors(), self.p)

    def check(self) -> bool:
        return all(is_intertwiner(f, self.source, self.target) for f in self.basis)


def hom_space(m: Module, n: Module) -> HomSpace:
    """
    Hom(m, n) comme noyau du système d'entrelacement

    Pour chaque vecteur de base b : A_b T - T B_b = 0, soit sur vec(T)
    kron(A_b, I) - kron(I, B_b^T). Les contraintes sont intersectées une à une.
    """
    _check_same_algebra(m, n)
    p = m.p
    size = m.dim * n.dim
    if size == 0:
        return HomSpace(m, n, np.zeros((0, m.dim, n.dim), dtype=np.int64), [])
    current = identity(size)
    for i in range(m.algebra.dim):
        constraint = (np.kron(m.action[i], identity(n.dim))
                      - np.kron(identity(m.dim), n.action[i].T)) % p
        # lignes c @ current dont l'image par la contrainte s'annule
        relations = left_kernel_basis(matmul(current, constraint.T, p), p)
        current = matmul(relations, current, p)
        if current.shape[0] == 0:
            break
    basis, pivots, r = rref(current, p)
    logger.debug(f"Hom: dim {r} ({m.dim} -> {n.dim})")
    return HomSpace(m, n, basis[:r].reshape(r, m.dim, n.dim), pivots)


@dataclass
class EndAlgebra:
    """End(m) vu comme algèbre : b_i * b_j <-> b_i o b_j <-> M_j @ M_i"""
    module: Module
    hom: HomSpace
    algebra: Algebra

    @property
    def dim(self) -> int:
        return self.hom.dim

    def matrix(self, x: np.ndarray) -> Matrix:
        return self.hom.element(x)

    def element(self, f: Matrix) -> np.ndarray:
        return self.hom.coordinates(f)[0]


def end_algebra(m: Module) -> EndAlgebra:
    hom = hom_space(m, m)
    p, k, n = m.p, hom.dim, m.dim
    if k == 0:
        return EndAlgebra(m, hom, Algebra.zero(p))
    table = np.zeros((k, k, k), dtype=np.int64)
    stacked = hom.basis.reshape(k * n, n)
    for i in range(k):
        # lignes j : M_j @ M_i
        products = matmul(stacked, hom.basis[i], p).reshape(k, n * n)
        table[i] = hom.coordinates(products)
    one = hom.coordinates(identity(n))[0]
    return EndAlgebra(m, hom, Algebra(table, one, p, validate=False))


def direct_sum(ms: Sequence[Module], algebra: Optional[Algebra] = None
               ) -> Tuple[Module, List[Matrix], List[Matrix]]:
    """
    Somme directe avec injections iota_i = [0 I 0] et projections pi_i = iota_i^T
    """
    if not ms:
        if algebra is None:
            raise ContractViolation("direct_sum of an empty list needs the algebra")
        return zero_module(algebra), [], []
    a = ms[0].algebra
    for other in ms[1:]:
        _check_same_algebra(ms[0], other)
    total = sum(m.dim for m in ms)
    action = np.zeros((a.dim, total, total), dtype=np.int64)
    iotas, pis = [], []
    offset = 0
    for m in ms:
        action[:, offset:offset + m.dim, offset:offset + m.dim] = m.action
        iota = zeros(m.dim, total)
        iota[:, offset:offset + m.dim] = identity(m.dim)
        iotas.append(iota)
        pis.append(iota.T.copy())
        offset += m.dim
    return Module(a, action, validate=False), iotas, pis


def radical_of_module(m: Module) -> Matrix:
    """rad m = m.J, base RREF"""
    radical = m.algebra.radical.basis
    if m.dim == 0 or radical.shape[0] == 0:
        return zeros(0, m.dim)
    images = np.vstack([m.element_action(j) for j in radical])
    return row_space_basis(images, m.p)


def _rows(vectors, n: int) -> Matrix:
    """Vecteurs lignes de longueur n (aussi pour n = 0)"""
    vectors = np.asarray(vectors, dtype=np.int64)
    return vectors.reshape(-1, n) if n else zeros(0, 0)


def _stable_or_raise(m: Module, basis: Matrix):
    bad = m.is_stable(basis)
    if bad is not None:
        vector, element = bad
        raise ContractViolation(
            f"subspace is not a submodule: vector {vector} times basis element {element} leaves it"
        )


def submodule(m: Module, basis: Matrix) -> Tuple[Module, Matrix]:
    """(sous-module, inclusion) pour un sous-espace stable"""
    basis = row_space_basis(_rows(basis, m.dim), m.p)
    _stable_or_raise(m, basis)
    k = basis.shape[0]
    _, pivots, _ = rref(basis, m.p)
    action = np.zeros((m.algebra.dim, k, k), dtype=np.int64)
    for i in range(m.algebra.dim):
        action[i] = m.act(basis, i)[:, pivots]
    return Module(m.algebra, action, validate=False), basis


def generated_submodule(m: Module, vectors: Matrix) -> Matrix:
    """Base RREF de vA (une étape suffit : l'algèbre contient l'unité)"""
    vectors = _rows(vectors, m.dim)
    if vectors.shape[0] == 0 or m.dim == 0:
        return zeros(0, m.dim)
    images = np.vstack([m.act(vectors, i) for i in range(m.algebra.dim)])
    return row_space_basis(images, m.p)


def quotient_module(m: Module, sub: Matrix) -> Tuple[Module, Matrix]:
    """
    Quotient m / sub

    Returns:
        (module quotient, projection dim m x dim quotient)
    """
    p = m.p
    sub = row_space_basis(_rows(sub, m.dim), p)
    _stable_or_raise(m, sub)
    complement = complement_basis(sub, p)
    q = complement.shape[0]
    projection = inverse(np.vstack([complement, sub]), p)[:, :q]
    action = np.zeros((m.algebra.dim, q, q), dtype=np.int64)
    for i in range(m.algebra.dim):
        action[i] = matmul(m.act(complement, i), projection, p)
    return Module(m.algebra, action, validate=False), projection


def top(m: Module) -> Tuple[Module, Matrix]:
    """m / rad m"""
    return quotient_module(m, radical_of_module(m))


def split_idempotent(m: Module, e: Matrix) -> Tuple[Module, Matrix, Matrix]:
    """
    Scinde un idempotent e de End(m)

    Returns:
        (facteur, iota, pi) avec pi @ iota = e et iota @ pi = id
    """
    p = m.p
    e = np.asarray(e, dtype=np.int64) % p
    if not is_intertwiner(e, m, m):
        raise ContractViolation("split_idempotent: e is not an endomorphism")
    if not np.array_equal(matmul(e, e, p), e):
        raise ContractViolation("split_idempotent: e is not idempotent")
    iota = row_space_basis(e, p)
    k = iota.shape[0]
    if k == 0:
        return zero_module(m.algebra), zeros(0, m.dim), zeros(m.dim, 0)
    pi = solve_linear(iota.T, e.T, p).T
    action = np.zeros((m.algebra.dim, k, k), dtype=np.int64)
    for i in range(m.algebra.dim):
        action[i] = matmul(matmul(iota, m.action[i], p), pi, p)
    return Module(m.algebra, action, validate=False), iota, pi


@dataclass
class Projectivization:
    """
    Foncteur F = Hom(x, -) vers les modules à droite sur Gamma = End(x)

    Action : f . gamma = f o gamma, soit T_gamma @ T_f.
    """
    source: Module
    gamma: EndAlgebra

    def apply(self, m: Module) -> Tuple[Module, HomSpace]:
        hom = hom_space(self.source, m)
        g = self.gamma.algebra
        k = hom.dim
        action = np.zeros((g.dim, k, k), dtype=np.int64)
        if k:
            for i, gamma in enumerate(self.gamma.hom.basis):
                # ligne r : coordonnées de T_gamma @ F_r
                images = np.stack([matmul(gamma, f, m.p) for f in hom.basis])
                action[i] = hom.coordinates(images)
        return Module(g, action, validate=False), hom

    def apply_morphism(self, g: Matrix, m: Module, n: Module) -> Matrix:
        """F g : f -> g o f, soit T_f @ T_g"""
        source_hom = hom_space(self.source, m)
        target_hom = hom_space(self.source, n)
        if source_hom.dim == 0:
            return zeros(0, target_hom.dim)
        images = np.stack([matmul(f, g, m.p) for f in source_hom.basis])
        return target_hom.coordinates(images)


def projectivize(x: Module) -> Projectivization:
    return Projectivization(x, end_algebra(x))
