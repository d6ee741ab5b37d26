#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Polynômes sur F_p et factorisation (Cantor-Zassenhaus)

Les coefficients sont stockés par degré croissant. La factorisation suit
le schéma classique : décomposition sans carré, puis par degrés distincts,
puis par degrés égaux avec un aléa initialisé par graine.
"""

import logging
from dataclasses import dataclass, field
from typing import Iterable, List, Tuple

import numpy as np

from config.settings import Config
from .errors import ContractViolation, LasVegasExhaustedError
from .exactlin import Matrix, identity, inv_mod, matmul

logger = logging.getLogger(__name__)


class Poly:
    """Polynôme à coefficients dans F_p, immuable"""

    __slots__ = ('coeffs', 'p')

    def __init__(self, coeffs: Iterable[int], p: int):
        c = [int(x) % p for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: Tuple[int, ...] = tuple(c)
        self.p = p

    # Constructeurs usuels
    @classmethod
    def zero(cls, p: int) -> 'Poly':
        return cls([], p)

    @classmethod
    def one(cls, p: int) -> 'Poly':
        return cls([1], p)

    @classmethod
    def x(cls, p: int) -> 'Poly':
        return cls([0, 1], p)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.coeffs, self.p))

    def __repr__(self) -> str:
        return f"Poly({self.to_string()}, p={self.p})"

    def to_string(self) -> str:
        if not self.coeffs:
            return '0'
        terms = []
        for degree in range(self.degree, -1, -1):
            c = self.coeffs[degree]
            if not c:
                continue
            if degree == 0:
                terms.append(str(c))
            else:
                power = 'x' if degree == 1 else f'x^{degree}'
                terms.append(power if c == 1 else f'{c}*{power}')
        return ' + '.join(terms)

    def sort_key(self) -> Tuple:
        return (self.degree, tuple(reversed(self.coeffs)))

    # Arithmétique
    def _check(self, other: 'Poly'):
        if self.p != other.p:
            raise ContractViolation(f"mixed moduli {self.p} and {other.p}")

    def __add__(self, other: 'Poly') -> 'Poly':
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Poly([x + y for x, y in zip(a, b)], self.p)

    def __neg__(self) -> 'Poly':
        return Poly([-c for c in self.coeffs], self.p)

    def __sub__(self, other: 'Poly') -> 'Poly':
        return self + (-other)

    def __mul__(self, other: 'Poly') -> 'Poly':
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.p)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = (out[i + j] + a * b) % self.p
        return Poly(out, self.p)

    def scale(self, c: int) -> 'Poly':
        return Poly([c * x for x in self.coeffs], self.p)

    def __pow__(self, exponent: int) -> 'Poly':
        result = Poly.one(self.p)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def divmod(self, divisor: 'Poly') -> Tuple['Poly', 'Poly']:
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        remainder = list(self.coeffs)
        quotient = [0] * max(len(remainder) - divisor.degree, 1)
        lead_inv = inv_mod(divisor.leading, p)
        d = divisor.degree
        for k in range(len(remainder) - 1, d - 1, -1):
            c = remainder[k] * lead_inv % p
            if not c:
                continue
            quotient[k - d] = c
            for j, b in enumerate(divisor.coeffs):
                remainder[k - d + j] = (remainder[k - d + j] - c * b) % p
        return Poly(quotient, p), Poly(remainder, p)

    def __floordiv__(self, divisor: 'Poly') -> 'Poly':
        return self.divmod(divisor)[0]

    def __mod__(self, divisor: 'Poly') -> 'Poly':
        return self.divmod(divisor)[1]

    def monic(self) -> Tuple[int, 'Poly']:
        """Retourne (coefficient dominant, polynôme unitaire associé)"""
        if self.is_zero():
            raise ContractViolation("the zero polynomial has no monic form")
        lead = self.leading
        return lead, self.scale(inv_mod(lead, self.p))

    def derivative(self) -> 'Poly':
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:], self.p)

    def __call__(self, value: int) -> int:
        result = 0
        for c in reversed(self.coeffs):
            result = (result * value + c) % self.p
        return result

    def evaluate_matrix(self, m: Matrix) -> Matrix:
        """Évaluation de Horner en une matrice carrée"""
        n = m.shape[0]
        result = np.zeros((n, n), dtype=np.int64)
        for c in reversed(self.coeffs):
            result = (matmul(result, m, self.p) + c * identity(n)) % self.p
        return result

    def powmod(self, exponent: int, modulus: 'Poly') -> 'Poly':
        result = Poly.one(self.p) % modulus
        base = self % modulus
        while exponent:
            if exponent & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            exponent >>= 1
        return result


def gcd(a: Poly, b: Poly) -> Poly:
    """PGCD unitaire (zéro si a = b = 0)"""
    while not b.is_zero():
        a, b = b, a % b
    return a if a.is_zero() else a.monic()[1]


def ext_gcd(a: Poly, b: Poly) -> Tuple[Poly, Poly, Poly]:
    """Retourne (g, s, t) avec s*a + t*b = g unitaire"""
    p = a.p
    old_r, r = a, b
    old_s, s = Poly.one(p), Poly.zero(p)
    old_t, t = Poly.zero(p), Poly.one(p)
    while not r.is_zero():
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r.is_zero():
        return old_r, old_s, old_t
    lead_inv = inv_mod(old_r.leading, p)
    return old_r.scale(lead_inv), old_s.scale(lead_inv), old_t.scale(lead_inv)


def _prime_divisors(n: int) -> List[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _frobenius_power(f: Poly, k: int) -> Poly:
    """x^(p^k) mod f"""
    h = Poly.x(f.p) % f
    for _ in range(k):
        h = h.powmod(f.p, f)
    return h


def is_irreducible(f: Poly) -> bool:
    """Test de Rabin pour un polynôme non constant"""
    if f.degree < 1:
        return False
    _, f = f.monic()
    n = f.degree
    x = Poly.x(f.p)
    for q in _prime_divisors(n):
        h = _frobenius_power(f, n // q)
        if not gcd(f, h - x).is_one():
            return False
    return (_frobenius_power(f, n) - x) % f == Poly.zero(f.p)


def _pth_root(c: Poly) -> Poly:
    p = c.p
    return Poly(c.coeffs[::p], p)


def square_free_decomposition(f: Poly) -> List[Tuple[Poly, int]]:
    """Décomposition sans carré d'un polynôme unitaire"""
    result: List[Tuple[Poly, int]] = []
    c = gcd(f, f.derivative())
    w = f // c
    i = 1
    while not w.is_one():
        y = gcd(w, c)
        factor = w // y
        if factor.degree > 0:
            result.append((factor, i))
        w = y
        c = c // y
        i += 1
    if not c.is_one():
        for g, m in square_free_decomposition(_pth_root(c)):
            result.append((g, m * f.p))
    return result


def distinct_degree_factorization(f: Poly) -> List[Tuple[Poly, int]]:
    """Regroupe les facteurs irréductibles d'un polynôme sans carré par degré"""
    out: List[Tuple[Poly, int]] = []
    x = Poly.x(f.p)
    g = f
    h = x % g
    i = 1
    while g.degree >= 2 * i:
        h = h.powmod(f.p, g)
        d = gcd(g, h - x)
        if d.degree > 0:
            out.append((d, i))
            g = g // d
            h = h % g
        i += 1
    if g.degree > 0:
        out.append((g, g.degree))
    return out


def equal_degree_factorization(f: Poly, d: int, rng: np.random.Generator,
                               retries: int = None) -> List[Poly]:
    """Scinde un produit d'irréductibles de degré d (Cantor-Zassenhaus)"""
    if retries is None:
        retries = Config.LAS_VEGAS_RETRIES
    n = f.degree
    if n <= d:
        return [f]
    p = f.p
    for attempt in range(retries):
        a = Poly(rng.integers(0, p, size=n), p)
        if a.degree < 1:
            continue
        if p == 2:
            # Application trace : a + a^2 + ... + a^(2^(d-1))
            b, t = a % f, a % f
            for _ in range(d - 1):
                t = (t * t) % f
                b = b + t
        else:
            b = a.powmod((p ** d - 1) // 2, f) - Poly.one(p)
        g = gcd(f, b)
        if 0 < g.degree < n:
            return (equal_degree_factorization(g, d, rng, retries)
                    + equal_degree_factorization(f // g, d, rng, retries))
        logger.debug(f"Cantor-Zassenhaus: essai {attempt + 1} sans scission")
    raise LasVegasExhaustedError(
        f"equal-degree splitting failed after {retries} attempts"
    )


@dataclass
class Factorization:
    """f = unit * produit des facteurs^multiplicités"""
    unit: int
    p: int
    factors: List[Tuple[Poly, int]] = field(default_factory=list)

    def expand(self) -> Poly:
        result = Poly([self.unit], self.p)
        for g, m in self.factors:
            result = result * g ** m
        return result

    def __iter__(self):
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)


def factor_poly(f: Poly, seed: int = 0, retries: int = None) -> Factorization:
    """
    Factorisation complète d'un polynôme non nul sur F_p

    Args:
        f: Polynôme non nul
        seed: Graine de l'aléa Cantor-Zassenhaus

    Returns:
        Factorisation (facteurs unitaires irréductibles triés canoniquement)
    """
    if f.is_zero():
        raise ContractViolation("cannot factor the zero polynomial")
    unit, g = f.monic()
    if g.degree == 0:
        return Factorization(unit, f.p, [])
    rng = np.random.default_rng(seed)
    multiplicities = {}
    for part, m in square_free_decomposition(g):
        for block, d in distinct_degree_factorization(part):
            for irreducible in equal_degree_factorization(block, d, rng, retries):
                multiplicities[irreducible] = multiplicities.get(irreducible, 0) + m
    factors = sorted(multiplicities.items(), key=lambda item: item[0].sort_key())
    return Factorization(unit, f.p, factors)
