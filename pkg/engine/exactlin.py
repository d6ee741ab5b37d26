#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Exact Linear Algebra - Arithmétique exacte sur les corps premiers F_p

Les matrices sont des tableaux numpy int64 denses dont les coefficients
sont des résidus dans [0, p). Convention unique du moteur : les vecteurs
sont des lignes et une application linéaire agit à droite (v -> v @ T).
"""

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .errors import ContractViolation

Matrix = np.ndarray

# Les modules premiers restent sous 2^31 : un produit tient sur 62 bits
MAX_MODULUS = 2 ** 31
_INT64_MAX = 2 ** 63 - 1


def is_prime(p: int) -> bool:
    """Test de primalité déterministe par divisions successives"""
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    for d in range(3, math.isqrt(p) + 1, 2):
        if p % d == 0:
            return False
    return True


def check_modulus(p: int) -> int:
    """Valide un module premier et le retourne"""
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise ContractViolation(f"modulus {p} is not prime")
    if p >= MAX_MODULUS:
        raise ContractViolation(f"modulus {p} exceeds 2^31")
    return int(p)


def inv_mod(a: int, p: int) -> int:
    """Inverse multiplicatif par Euclide étendu"""
    a = int(a) % p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse modulo {p}")
    old_r, r = a, p
    old_s, s = 1, 0
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    return old_s % p


@dataclass(frozen=True)
class FieldElement:
    """Élément de F_p"""
    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, 'value', int(self.value) % self.p)

    def _coerce(self, other) -> 'FieldElement':
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise ContractViolation(f"mixed moduli {self.p} and {other.p}")
            return other
        return FieldElement(int(other), self.p)

    def __add__(self, other):
        return FieldElement(self.value + self._coerce(other).value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.value - self._coerce(other).value, self.p)

    def __rsub__(self, other):
        return FieldElement(self._coerce(other).value - self.value, self.p)

    def __mul__(self, other):
        return FieldElement(self.value * self._coerce(other).value, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.p)

    def inverse(self) -> 'FieldElement':
        return FieldElement(inv_mod(self.value, self.p), self.p)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return FieldElement(pow(self.value, exponent, self.p), self.p)

    def __int__(self):
        return self.value

    def is_zero(self) -> bool:
        return self.value == 0


def as_matrix(data, p: int, rows: Optional[int] = None, cols: Optional[int] = None) -> Matrix:
    """Convertit des données entières en matrice réduite modulo p"""
    rows_data = [[int(x) % p for x in row] for row in data]
    if not rows_data or not rows_data[0]:
        r = rows if rows is not None else len(rows_data)
        c = cols if cols is not None else 0
        return zeros(r, c)
    if len({len(row) for row in rows_data}) != 1:
        raise ContractViolation("ragged matrix rows")
    return np.array(rows_data, dtype=np.int64)


def zeros(rows: int, cols: int) -> Matrix:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> Matrix:
    return np.eye(n, dtype=np.int64)


def matmul(a: Matrix, b: Matrix, p: int) -> Matrix:
    """Produit exact modulo p, sans débordement int64"""
    if a.shape[1] != b.shape[0]:
        raise ContractViolation(f"cannot multiply {a.shape} by {b.shape}")
    k = a.shape[1]
    if k == 0 or a.shape[0] == 0 or b.shape[1] == 0:
        return zeros(a.shape[0], b.shape[1])
    if (p - 1) ** 2 * k <= _INT64_MAX:
        return (a @ b) % p
    return ((a.astype(object) @ b.astype(object)) % p).astype(np.int64)


def mat_pow(m: Matrix, exponent: int, p: int) -> Matrix:
    result = identity(m.shape[0])
    base = m.copy()
    while exponent:
        if exponent & 1:
            result = matmul(result, base, p)
        base = matmul(base, base, p)
        exponent >>= 1
    return result


def rref(m: Matrix, p: int) -> Tuple[Matrix, List[int], int]:
    """
    Forme échelonnée réduite (unique) par élimination de Gauss-Jordan

    Returns:
        (matrice réduite, colonnes pivots, rang)
    """
    a = np.array(m, dtype=np.int64) % p
    rows, cols = a.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nonzero = np.nonzero(a[r:, c])[0]
        if nonzero.size == 0:
            continue
        i = r + int(nonzero[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = (a[r] * inv_mod(a[r, c], p)) % p
        column = a[:, c].copy()
        column[r] = 0
        targets = np.nonzero(column)[0]
        if targets.size:
            a[targets] = (a[targets] - np.outer(column[targets], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots, r


def rank(m: Matrix, p: int) -> int:
    return rref(m, p)[2]


def kernel_basis(m: Matrix, p: int) -> Matrix:
    """
    Base canonique du noyau à droite : lignes v avec m @ v^T = 0

    Les variables libres sont parcourues par colonne croissante.
    """
    reduced, pivots, r = rref(m, p)
    cols = m.shape[1]
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = zeros(len(free), cols)
    for row, f in enumerate(free):
        basis[row, f] = 1
        for i, c in enumerate(pivots):
            basis[row, c] = (-reduced[i, f]) % p
    return basis


def left_kernel_basis(m: Matrix, p: int) -> Matrix:
    """Noyau d'une application v -> v @ m (vecteurs lignes)"""
    return kernel_basis(m.T, p)


def row_space_basis(m: Matrix, p: int) -> Matrix:
    """Base RREF de l'espace engendré par les lignes"""
    reduced, _, r = rref(m, p)
    return reduced[:r]


def image_basis(m: Matrix, p: int) -> Matrix:
    """Lignes engendrant l'espace des colonnes de m"""
    return row_space_basis(m.T, p)


def solve_linear(a: Matrix, b: Matrix, p: int) -> Optional[Matrix]:
    """
    Résout a @ x = b ; solution canonique (variables libres nulles) ou None
    """
    if a.shape[0] != b.shape[0]:
        raise ContractViolation(
            f"solve_linear: a has {a.shape[0]} rows but b has {b.shape[0]}"
        )
    n = a.shape[1]
    k = b.shape[1]
    if a.shape[0] == 0:
        return zeros(n, k)
    augmented = np.hstack([a % p, b % p]).astype(np.int64)
    reduced, pivots, _ = rref(augmented, p)
    if any(c >= n for c in pivots):
        return None
    x = zeros(n, k)
    for i, c in enumerate(pivots):
        x[c] = reduced[i, n:]
    return x


def inverse(m: Matrix, p: int) -> Optional[Matrix]:
    n = m.shape[0]
    if m.shape[1] != n:
        return None
    if n == 0:
        return zeros(0, 0)
    reduced, pivots, r = rref(np.hstack([m % p, identity(n)]), p)
    if r < n or pivots[n - 1] >= n:
        return None
    return reduced[:, n:].copy()


def is_invertible(m: Matrix, p: int) -> bool:
    return m.shape[0] == m.shape[1] and rank(m, p) == m.shape[0]


def in_row_span(vectors: Matrix, basis: Matrix, p: int) -> bool:
    """Toutes les lignes de vectors sont-elles dans l'espace des lignes de basis ?"""
    if vectors.shape[0] == 0:
        return True
    if basis.shape[0] == 0:
        return not np.any(vectors % p)
    return rank(np.vstack([basis, vectors]), p) == rank(basis, p)


def span_coordinates(vectors: Matrix, basis: Matrix, p: int) -> Optional[Matrix]:
    """Coordonnées c avec c @ basis = vectors (basis de rang plein en lignes)"""
    x = solve_linear(basis.T, vectors.T, p)
    return None if x is None else x.T


def subspace_sum(u: Matrix, v: Matrix, p: int) -> Matrix:
    return row_space_basis(np.vstack([u, v]), p)


def subspace_intersection(u: Matrix, v: Matrix, p: int) -> Matrix:
    """Intersection de deux sous-espaces donnés par des bases en lignes"""
    if u.shape[0] == 0 or v.shape[0] == 0:
        return zeros(0, u.shape[1])
    # c @ u = d @ v  <=>  (c, -d) dans le noyau gauche de [u; v]
    relations = left_kernel_basis(np.vstack([u, v]), p)
    return row_space_basis(matmul(relations[:, :u.shape[0]], u, p), p)


def complement_basis(u: Matrix, p: int) -> Matrix:
    """Vecteurs de base standard aux colonnes non pivots de RREF(u)"""
    n = u.shape[1]
    _, pivots, _ = rref(u, p)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = zeros(len(free), n)
    for row, c in enumerate(free):
        basis[row, c] = 1
    return basis


def minimal_polynomial(m: Matrix, p: int):
    """
    Polynôme minimal unitaire : première relation linéaire entre I, m, m^2, ...
    """
    from .polynomials import Poly

    n = m.shape[0]
    if m.shape[1] != n:
        raise ContractViolation("minimal_polynomial needs a square matrix")
    if n == 0:
        return Poly([1], p)
    powers = [identity(n).ravel()]
    current = identity(n)
    for k in range(1, n + 2):
        current = matmul(current, m, p)
        target = current.ravel()
        previous = np.array(powers, dtype=np.int64)
        coefficients = solve_linear(previous.T, target.reshape(-1, 1), p)
        if coefficients is not None:
            lower = [(-int(c)) % p for c in coefficients[:, 0]]
            return Poly(lower + [1], p)
        powers.append(target)
    raise AssertionError("Cayley-Hamilton bound exceeded")


def characteristic_polynomial(m: Matrix, p: int):
    """Polynôme caractéristique par réduction de Hessenberg"""
    from .polynomials import Poly

    n = m.shape[0]
    h = [[int(x) for x in row] for row in (m % p)]
    for col in range(1, n - 1):
        pivot = next((i for i in range(col, n) if h[i][col - 1]), None)
        if pivot is None:
            continue
        if pivot != col:
            h[pivot], h[col] = h[col], h[pivot]
            for row in h:
                row[pivot], row[col] = row[col], row[pivot]
        t_inv = inv_mod(h[col][col - 1], p)
        for i in range(col + 1, n):
            u = h[i][col - 1] * t_inv % p
            if not u:
                continue
            for j in range(n):
                h[i][j] = (h[i][j] - u * h[col][j]) % p
            for j in range(n):
                h[j][col] = (h[j][col] + u * h[j][i]) % p

    x = Poly([0, 1], p)
    polys = [Poly([1], p)]
    for k in range(1, n + 1):
        current = (x - Poly([h[k - 1][k - 1]], p)) * polys[k - 1]
        t = 1
        for i in range(1, k):
            t = t * h[k - i][k - i - 1] % p
            coefficient = t * h[k - i - 1][k - 1] % p
            current = current - polys[k - i - 1].scale(coefficient)
        polys.append(current)
    return polys[n]


def is_nilpotent(m: Matrix, p: int) -> bool:
    n = m.shape[0]
    if m.shape[1] != n:
        raise ContractViolation("is_nilpotent needs a square matrix")
    return not np.any(mat_pow(m, n, p))


def random_matrix(rng: np.random.Generator, rows: int, cols: int, p: int) -> Matrix:
    return rng.integers(0, p, size=(rows, cols), dtype=np.int64)


def random_invertible(rng: np.random.Generator, n: int, p: int) -> Matrix:
    while True:
        candidate = random_matrix(rng, n, n, p)
        if is_invertible(candidate, p):
            return candidate
