#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Algebra Engine - Algèbres associatives unitaires de dimension finie sur F_p

Une algèbre est donnée par ses constantes de structure c[i][j][k] :
b_i * b_j = somme_k c[i][j][k] b_k. Les éléments sont des vecteurs lignes
de coordonnées. Le radical de Jacobson est calculé par la forme trace,
exacte dès que p > dim.
"""

import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from config.settings import Config
from utils.seeding import make_rng
from .errors import (AlgebraValidationError, EngineError,
                     LasVegasExhaustedError, ModulusTooSmallError)
from .exactlin import (Matrix, check_modulus, complement_basis, identity, in_row_span,
                       inverse, is_invertible, kernel_basis, left_kernel_basis,
                       matmul, minimal_polynomial, random_matrix, row_space_basis,
                       span_coordinates, zeros)
from .polynomials import ext_gcd, factor_poly

logger = logging.getLogger(__name__)


class Algebra:
    """
    Algèbre associative unitaire de dimension finie

    Attributes:
        dim: Dimension sur F_p
        p: Caractéristique
        table: Constantes de structure, tableau (dim, dim, dim)
        one: Coordonnées de l'unité
        labels: Noms optionnels des vecteurs de base
        quiver: Présentation de carquois d'origine, ou None
    """

    def __init__(self, table: np.ndarray, one: np.ndarray, p: int,
                 labels: Optional[List[str]] = None, validate: bool = True,
                 quiver: Any = None):
        self.p = p
        self.table = np.asarray(table, dtype=np.int64) % p
        self.dim = self.table.shape[0]
        self.one = np.asarray(one, dtype=np.int64).reshape(self.dim) % p
        self.labels = list(labels) if labels is not None else [f"b{i}" for i in range(self.dim)]
        self._quiver = quiver
        # Données dérivées coûteuses (projectifs indécomposables par graine)
        self._derived: Dict[str, Any] = {}
        if validate:
            self.check_unit()
            self.check_associativity()

    @classmethod
    def zero(cls, p: int) -> 'Algebra':
        """Algèbre nulle (cas dégénéré de End(0))"""
        return cls(np.zeros((0, 0, 0), dtype=np.int64), np.zeros(0, dtype=np.int64), p,
                   validate=False)

    def __repr__(self) -> str:
        return f"Algebra(dim={self.dim}, p={self.p})"

    @property
    def quiver(self):
        return self._quiver

    def memoized(self, key: str, compute: Callable[[], Any]) -> Any:
        """Valeur dérivée calculée une seule fois par clé"""
        if key not in self._derived:
            self._derived[key] = compute()
        return self._derived[key]

    def same_structure(self, other: 'Algebra') -> bool:
        """Même caractéristique, même unité et mêmes constantes de structure"""
        return (self is other or (
            self.p == other.p and self.dim == other.dim
            and np.array_equal(self.one, other.one)
            and np.array_equal(self.table, other.table)
        ))

    # ------------------------------------------------------------------
    # Validation
    # ------------------------------------------------------------------
    def check_unit(self):
        d = self.dim
        if not np.array_equal(self.left_matrix(self.one), identity(d)):
            raise AlgebraValidationError("one * x != x for some basis element", 'one')
        if not np.array_equal(self.right_matrix(self.one), identity(d)):
            raise AlgebraValidationError("x * one != x for some basis element", 'one')

    def check_associativity(self):
        """(b_i b_j) b_k = b_i (b_j b_k) pour tous les triplets de base"""
        d, p = self.dim, self.p
        if d == 0:
            return
        # left[(i,j),(k,m)] = somme_l c[i,j,l] c[l,k,m]
        left = matmul(self.table.reshape(d * d, d), self.table.reshape(d, d * d), p)
        flat = self.table.reshape(d * d, d)
        right = np.stack([matmul(flat, self.table[i], p).reshape(d, d, d) for i in range(d)])
        mismatch = np.argwhere(left.reshape(d, d, d, d) != right)
        if mismatch.size:
            i, j, k, _ = (int(v) for v in mismatch[0])
            raise AlgebraValidationError(
                f"structure constants are not associative at basis triple ({i}, {j}, {k})",
                'table'
            )

    # ------------------------------------------------------------------
    # Arithmétique
    # ------------------------------------------------------------------
    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def left_matrix(self, x: np.ndarray) -> Matrix:
        """Matrice L_x avec y @ L_x = x * y"""
        d = self.dim
        return matmul(np.asarray(x).reshape(1, d), self.table.reshape(d, d * d), self.p).reshape(d, d)

    def right_matrix(self, y: np.ndarray) -> Matrix:
        """Matrice R_y avec x @ R_y = x * y"""
        d = self.dim
        swapped = self.table.transpose(1, 0, 2).reshape(d, d * d)
        return matmul(np.asarray(y).reshape(1, d), swapped, self.p).reshape(d, d)

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return matmul(np.asarray(y).reshape(1, self.dim), self.left_matrix(x), self.p)[0]

    def power(self, x: np.ndarray, n: int) -> np.ndarray:
        result = self.one.copy()
        base = np.asarray(x, dtype=np.int64) % self.p
        while n:
            if n & 1:
                result = self.multiply(result, base)
            base = self.multiply(base, base)
            n >>= 1
        return result

    def is_unit(self, x: np.ndarray) -> bool:
        """x inversible <=> L_x inversible (dimension finie)"""
        return is_invertible(self.left_matrix(x), self.p)

    def is_idempotent(self, x: np.ndarray) -> bool:
        return np.array_equal(self.multiply(x, x), np.asarray(x) % self.p)

    def products(self, u: Matrix, v: Matrix) -> Matrix:
        """Base RREF de l'espace engendré par les produits u_r * v_s"""
        if u.shape[0] == 0 or v.shape[0] == 0:
            return zeros(0, self.dim)
        blocks = [matmul(u, self.right_matrix(row), self.p) for row in v]
        return row_space_basis(np.vstack(blocks), self.p)

    def noncommuting_pair(self) -> Optional[Tuple[int, int]]:
        commutator = (self.table - self.table.transpose(1, 0, 2)) % self.p
        bad = np.argwhere(np.any(commutator != 0, axis=2))
        if bad.size == 0:
            return None
        return int(bad[0][0]), int(bad[0][1])

    def is_commutative(self) -> bool:
        return self.noncommuting_pair() is None

    def center(self) -> Matrix:
        """Base du centre {z : z b = b z pour tout b}"""
        d = self.dim
        if d == 0:
            return zeros(0, 0)
        # z @ R_{b_j} = z b_j et z @ L_{b_j} = b_j z
        blocks = [(self.table[:, j, :] - self.table[j, :, :]) % self.p for j in range(d)]
        return row_space_basis(left_kernel_basis(np.hstack(blocks), self.p), self.p)

    def restrict(self, basis: Matrix, projection: Matrix) -> np.ndarray:
        """Constantes de structure induites sur une base (coordonnées via projection)"""
        q = basis.shape[0]
        table = np.zeros((q, q, q), dtype=np.int64)
        for i in range(q):
            # lignes : basis[i] * basis[j]
            table[i] = matmul(matmul(basis, self.left_matrix(basis[i]), self.p), projection, self.p)
        return table

    @cached_property
    def radical(self) -> 'RadicalIdeal':
        return jacobson_radical(self)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'dim': self.dim,
            'p': self.p,
            'labels': self.labels,
        }


@dataclass
class RadicalIdeal:
    """Radical de Jacobson : base RREF et indice de nilpotence"""
    basis: Matrix
    nilpotency_index: int
    powers: List[Matrix] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def contains(self, x: np.ndarray, p: int) -> bool:
        return in_row_span(np.asarray(x).reshape(1, -1), self.basis, p)


class SemisimpleQuotient(tuple):
    """(algèbre quotient, projection, section)"""

    def __new__(cls, algebra: Algebra, projection: Matrix, section: Matrix):
        return super().__new__(cls, (algebra, projection, section))

    algebra = property(lambda self: self[0])
    projection = property(lambda self: self[1])
    section = property(lambda self: self[2])


@dataclass
class LocalityCertificate:
    """Certificat de (non-)localité d'une algèbre"""
    is_local: bool
    kind: str
    fixed_space_dim: Optional[int] = None
    idempotent: Optional[np.ndarray] = None
    pair: Optional[Tuple[int, int]] = None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {'is_local': self.is_local, 'kind': self.kind}
        if self.fixed_space_dim is not None:
            data['fixed_space_dim'] = self.fixed_space_dim
        if self.idempotent is not None:
            data['idempotent'] = [int(v) for v in self.idempotent]
        if self.pair is not None:
            data['pair'] = list(self.pair)
        return data


def algebra_from_structure_constants(c, one, p: int,
                                     labels: Optional[List[str]] = None) -> Algebra:
    """
    Construit et valide une algèbre à partir de ses constantes de structure

    Args:
        c: Tableau dim x dim x dim d'entiers
        one: Coordonnées de l'unité
        p: Module premier

    Returns:
        Algèbre validée (associativité et unité)
    """
    p = check_modulus(p)
    try:
        table = np.array(c, dtype=object)
    except ValueError as e:
        raise AlgebraValidationError(f"malformed structure constants: {e}", 'table')
    if table.ndim != 3 or not (table.shape[0] == table.shape[1] == table.shape[2]):
        raise AlgebraValidationError(
            f"structure constants must be a dim x dim x dim array, got shape {table.shape}",
            'table'
        )
    if table.shape[0] == 0:
        raise AlgebraValidationError("algebra dimension must be positive", 'table')
    one_vec = np.array(one, dtype=object)
    if one_vec.shape != (table.shape[0],):
        raise AlgebraValidationError(
            f"unit has length {one_vec.size}, expected {table.shape[0]}", 'one'
        )
    try:
        table = (table % p).astype(np.int64)
        one_vec = (one_vec % p).astype(np.int64)
    except TypeError as e:
        raise AlgebraValidationError(f"non-integer entry: {e}", 'table')
    algebra = Algebra(table, one_vec, p, labels=labels)
    logger.debug(f"Algèbre validée: dim={algebra.dim}, p={p}")
    return algebra


def opposite_algebra(a: Algebra) -> Algebra:
    """Algèbre opposée : c'[i][j][k] = c[j][i][k]"""
    opposite = Algebra(a.table.transpose(1, 0, 2).copy(), a.one, a.p,
                       labels=a.labels, validate=False)
    return opposite


def jacobson_radical(a: Algebra) -> RadicalIdeal:
    """
    Radical de Jacobson par la forme trace

    J = {x : tr(L_{x b}) = 0 pour tout b}, exact lorsque p > dim.
    """
    if a.p <= a.dim:
        raise ModulusTooSmallError(a.p, a.dim)
    d, p = a.dim, a.p
    if d == 0:
        return RadicalIdeal(zeros(0, 0), 1, [])
    # t_k = tr(L_{b_k}), forme T[i][j] = tr(L_{b_i b_j})
    traces = np.trace(a.table, axis1=1, axis2=2) % p
    form = matmul(a.table.reshape(d * d, d), traces.reshape(d, 1), p).reshape(d, d)
    basis = row_space_basis(kernel_basis(form.T, p), p)

    powers = [basis]
    index = 1
    current = basis
    while current.shape[0]:
        current = a.products(current, basis)
        powers.append(current)
        index += 1
        if index > d + 1:
            raise EngineError("radical is not nilpotent; trace form computation failed")
    logger.debug(f"Radical: dim={basis.shape[0]}, indice de nilpotence={index}")
    return RadicalIdeal(basis, index, powers)


def semisimple_quotient(a: Algebra) -> SemisimpleQuotient:
    """
    Quotient A/J sur un supplémentaire standard de J

    Returns:
        (algèbre quotient, projection d x q, section q x d)
    """
    radical = a.radical.basis
    p = a.p
    section = complement_basis(radical, p)
    q = section.shape[0]
    change = np.vstack([section, radical])
    projection = inverse(change, p)[:, :q]
    table = a.restrict(section, projection)
    one = matmul(a.one.reshape(1, -1), projection, p)[0]
    quotient = Algebra(table, one, p, validate=False)
    return SemisimpleQuotient(quotient, projection, section)


def frobenius_matrix(b: Algebra, basis: Optional[Matrix] = None) -> Matrix:
    """
    Matrice de x -> x^p sur une sous-algèbre commutative (lignes : b_s^p)

    Sans base explicite, agit sur toute l'algèbre b.
    """
    rows = basis if basis is not None else identity(b.dim)
    if len(rows) == 0:
        return zeros(0, b.dim if basis is None else 0)
    images = np.array([b.power(row, b.p) for row in rows], dtype=np.int64).reshape(-1, b.dim)
    if basis is None:
        return images
    return span_coordinates(images, basis, b.p)


def _fixed_space(frobenius: Matrix, p: int) -> Matrix:
    n = frobenius.shape[0]
    return kernel_basis(((frobenius - identity(n)) % p).T, p)


def _split_element(b: Algebra, y: np.ndarray, seed: int) -> Optional[np.ndarray]:
    """Idempotent (s g)(y) si le polynôme minimal de y a deux facteurs distincts"""
    ry = b.right_matrix(y)
    f = minimal_polynomial(ry, b.p)
    factorization = factor_poly(f, seed=seed)
    if len(factorization) < 2:
        return None
    first, multiplicity = factorization.factors[0]
    g = first ** multiplicity
    h = f // g
    _, s, _ = ext_gcd(g, h)
    return matmul(b.one.reshape(1, -1), (s * g).evaluate_matrix(ry), b.p)[0]


def lift_idempotent(a: Algebra, x: np.ndarray) -> np.ndarray:
    """Relèvement de Newton e <- 3e^2 - 2e^3 d'un idempotent modulo J"""
    p = a.p
    e = np.asarray(x, dtype=np.int64) % p
    cap = math.ceil(math.log2(max(a.radical.nilpotency_index, 1))) + 1
    for _ in range(cap):
        if a.is_idempotent(e):
            return e
        e2 = a.multiply(e, e)
        e3 = a.multiply(e2, e)
        e = (3 * e2 - 2 * e3) % p
    if not a.is_idempotent(e):
        raise EngineError(f"idempotent lifting did not converge in {cap} steps")
    return e


def _central_idempotent(a: Algebra, quotient: SemisimpleQuotient,
                        seed: int) -> Tuple[int, Optional[np.ndarray]]:
    """Idempotent issu de l'espace fixe de Frobenius du centre de A/J"""
    b = quotient.algebra
    center = b.center()
    fixed = _fixed_space(frobenius_matrix(b, center), b.p)
    if fixed.shape[0] <= 1:
        return fixed.shape[0], None
    one = b.one.reshape(1, -1)
    for coords in fixed:
        y = matmul(coords.reshape(1, -1), center, b.p)[0]
        if in_row_span(y.reshape(1, -1), one, b.p):
            continue
        e = _split_element(b, y, seed)
        if e is not None:
            lifted = matmul(e.reshape(1, -1), quotient.section, a.p)[0]
            return fixed.shape[0], lift_idempotent(a, lifted)
    raise EngineError("Frobenius-fixed central element failed to split")


def is_local(a: Algebra, seed: int = 0) -> LocalityCertificate:
    """
    Test de localité : A/J est-il un corps ?

    A/J non commutative -> non locale (petit théorème de Wedderburn).
    Sinon, locale ssi l'espace fixe de Frobenius sur A/J est de dimension 1.
    """
    if a.dim == 0:
        # l'anneau nul n'a pas d'idéal maximal
        return LocalityCertificate(False, 'zero_algebra', fixed_space_dim=0)
    quotient = semisimple_quotient(a)
    b = quotient.algebra
    pair = b.noncommuting_pair()
    if pair is not None:
        # indices dans la base de A des vecteurs standard de la section
        columns = np.argmax(quotient.section, axis=1)
        pair = (int(columns[pair[0]]), int(columns[pair[1]]))
        return LocalityCertificate(False, 'noncommuting_pair', pair=pair)
    fixed_dim, idempotent = _central_idempotent(a, quotient, seed)
    if fixed_dim == 1:
        return LocalityCertificate(True, 'frobenius_fixed_dim_1', fixed_space_dim=1)
    return LocalityCertificate(False, 'idempotent', fixed_space_dim=fixed_dim,
                               idempotent=idempotent)


def primitive_idempotent_split(a: Algebra, seed: int = 0,
                               retries: Optional[int] = None) -> Optional[np.ndarray]:
    """
    Idempotent non trivial de A, ou None si A est locale

    Ordre de recherche : centre de A/J (Frobenius), puis éléments aléatoires
    de A/J lorsque A/J est un anneau de matrices.
    """
    if a.dim == 0:
        return None
    if retries is None:
        retries = Config.LAS_VEGAS_RETRIES
    quotient = semisimple_quotient(a)
    b = quotient.algebra
    fixed_dim, idempotent = _central_idempotent(a, quotient, seed)
    if idempotent is not None:
        return idempotent
    if b.is_commutative():
        return None

    rng = make_rng(seed)
    for attempt in range(retries):
        y = random_matrix(rng, 1, b.dim, b.p)[0]
        e = _split_element(b, y, seed + attempt)
        if e is not None and not np.array_equal(e, b.one) and np.any(e):
            lifted = matmul(e.reshape(1, -1), quotient.section, a.p)[0]
            return lift_idempotent(a, lifted)
        logger.debug(f"Éclatement aléatoire: essai {attempt + 1} infructueux")
    raise LasVegasExhaustedError(
        f"no splitting element found in A/J after {retries} attempts"
    )
