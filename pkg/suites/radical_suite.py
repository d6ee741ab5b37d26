#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Radical Suite - Arithmétique exacte, radical de Jacobson, Nakayama, localité
"""

import logging
from typing import Callable, List, Tuple

import numpy as np

from engine.algebra import is_local, jacobson_radical, opposite_algebra, semisimple_quotient
from engine.exactlin import (FieldElement, characteristic_polynomial, kernel_basis,
                             matmul, minimal_polynomial, random_matrix, rank, rref)
from engine.module import end_algebra, radical_of_module, top
from engine.quiver import vertex_idempotents
from utils.oracles import (enumerable, module_is_indecomposable, only_trivial_idempotents,
                           radical_by_maximal_submodules)
from utils.seeding import derive_seed, make_rng
from .base_suite import PropertyResult, PropertySuite, SuiteContext, failed, passed, skipped

logger = logging.getLogger(__name__)


class RadicalSuite(PropertySuite):
    """
    Propriétés du substrat linéaire et du radical de Jacobson
    """

    def __init__(self):
        super().__init__('radical')

    def properties(self) -> List[Tuple[str, Callable[[SuiteContext], PropertyResult]]]:
        return [
            ('field_axioms', self.field_axioms),
            ('rank_nullity', self.rank_nullity),
            ('minpoly_divides_charpoly', self.minpoly_divides_charpoly),
            ('radical_nilpotent_ideal', self.radical_nilpotent_ideal),
            ('quotient_semisimple', self.quotient_semisimple),
            ('opposite_radical', self.opposite_radical),
            ('jrad_units', self.jrad_units),
            ('nakayama', self.nakayama),
            ('locality_oracle', self.locality_oracle),
            ('vertex_idempotents', self.vertex_idempotents),
        ]

    def field_axioms(self, context: SuiteContext) -> PropertyResult:
        name = 'field_axioms'
        p = context.algebra.p
        count = context.samples('jrad')
        rng = make_rng(derive_seed(context.seed, 1))
        triples = rng.integers(0, p, size=(count, 3), dtype=np.int64)
        for a, b, c in triples.tolist():
            x, y, z = FieldElement(a, p), FieldElement(b, p), FieldElement(c, p)
            if (x + y) + z != x + (y + z) or (x * y) * z != x * (y * z):
                return failed(name, "associativity fails", {'triple': [a, b, c]})
            if x * (y + z) != x * y + x * z:
                return failed(name, "distributivity fails", {'triple': [a, b, c]})
            if not x.is_zero() and x * x.inverse() != FieldElement(1, p):
                return failed(name, "inverse law fails", {'value': a})
        return passed(name, f"{count} triples")

    def rank_nullity(self, context: SuiteContext) -> PropertyResult:
        name = 'rank_nullity'
        p = context.algebra.p
        rng = make_rng(derive_seed(context.seed, 2))
        for _ in range(50):
            rows, cols = (int(v) for v in rng.integers(1, 9, size=2))
            m = random_matrix(rng, rows, cols, p)
            if rng.random() < 0.5:
                m[-1] = (m[0] * 2) % p
            reduced, _, r = rref(m, p)
            if r + kernel_basis(m, p).shape[0] != cols:
                return failed(name, "rank + nullity != cols", {'matrix': m.tolist()})
            if not np.array_equal(rref(reduced, p)[0], reduced):
                return failed(name, "rref is not idempotent", {'matrix': m.tolist()})
        return passed(name, "50 random matrices")

    def minpoly_divides_charpoly(self, context: SuiteContext) -> PropertyResult:
        name = 'minpoly_divides_charpoly'
        p = context.algebra.p
        checked = 0
        for label, module in context.corpus():
            if module.dim == 0:
                continue
            for i, matrix in enumerate(module.action):
                f = minimal_polynomial(matrix, p)
                chi = characteristic_polynomial(matrix, p)
                if not (chi % f).is_zero() or np.any(f.evaluate_matrix(matrix)):
                    return failed(name, "minimal polynomial does not divide charpoly",
                                  {'module': label, 'basis_element': i})
                checked += 1
        return passed(name, f"{checked} action matrices")

    def radical_nilpotent_ideal(self, context: SuiteContext) -> PropertyResult:
        name = 'radical_nilpotent_ideal'
        a = context.algebra
        radical = jacobson_radical(a)
        basis = radical.basis
        everything = np.eye(a.dim, dtype=np.int64)
        if basis.shape[0]:
            left = a.products(everything, basis)
            right = a.products(basis, everything)
            if rank(np.vstack([basis, left, right]), a.p) != basis.shape[0]:
                return failed(name, "radical is not a two-sided ideal")
        if radical.nilpotency_index > max(a.dim, 1):
            return failed(name, "nilpotency index exceeds dim",
                          {'index': radical.nilpotency_index})
        if radical.powers and radical.powers[-1].shape[0] != 0:
            return failed(name, "last radical power is not zero")
        return passed(name, f"dim J = {radical.dim}, index {radical.nilpotency_index}")

    def quotient_semisimple(self, context: SuiteContext) -> PropertyResult:
        name = 'quotient_semisimple'
        quotient = semisimple_quotient(context.algebra)
        dim = jacobson_radical(quotient.algebra).dim
        if dim:
            return failed(name, "radical of A/J is nonzero", {'dim': dim})
        return passed(name, f"dim A/J = {quotient.algebra.dim}")

    def opposite_radical(self, context: SuiteContext) -> PropertyResult:
        name = 'opposite_radical'
        a = context.algebra
        j = jacobson_radical(a).basis
        j_op = jacobson_radical(opposite_algebra(a)).basis
        if not np.array_equal(j, j_op):
            return failed(name, "J(A^op) != J(A)", {'J': j.tolist(), 'J_op': j_op.tolist()})
        return passed(name, "same row space")

    def jrad_units(self, context: SuiteContext) -> PropertyResult:
        """1 - y'xy inversible pour x dans J"""
        name = 'jrad_units'
        a = context.algebra
        basis = a.radical.basis
        if basis.shape[0] == 0:
            return passed(name, "J = 0")
        count = context.samples('jrad')
        rng = make_rng(derive_seed(context.seed, 3))
        for _ in range(count):
            x = matmul(random_matrix(rng, 1, basis.shape[0], a.p), basis, a.p)
            y = random_matrix(rng, 1, a.dim, a.p)[0]
            y_prime = random_matrix(rng, 1, a.dim, a.p)[0]
            element = (a.one - a.multiply(a.multiply(y_prime, x[0]), y)) % a.p
            if not a.is_unit(element):
                return failed(name, "1 - y'xy is not invertible",
                              {'x': x[0].tolist(), 'y': y.tolist(), 'y_prime': y_prime.tolist()})
        return passed(name, f"{count} samples")

    def nakayama(self, context: SuiteContext) -> PropertyResult:
        name = 'nakayama'
        for label, module in context.corpus():
            rad = radical_of_module(module)
            if module.dim and rad.shape[0] == module.dim:
                return failed(name, "M.J = M for a nonzero module", {'module': label})
            if enumerable(module.dim, module.p) and \
                    not np.array_equal(rad, radical_by_maximal_submodules(module)):
                return failed(name, "M.J differs from the intersection of maximal submodules",
                              {'module': label})
            head, _ = top(module)
            if head.dim and radical_of_module(head).shape[0]:
                return failed(name, "top of the module is not semisimple", {'module': label})
        return passed(name, f"{len(context.corpus())} modules")

    def locality_oracle(self, context: SuiteContext) -> PropertyResult:
        name = 'locality_oracle'
        a = context.algebra
        limit = context.config.BRUTE_FORCE_LIMIT
        compared = 0
        if a.p ** a.dim <= limit:
            if is_local(a, context.seed).is_local != only_trivial_idempotents(a):
                return failed(name, "is_local disagrees with idempotent enumeration",
                              {'target': 'algebra'})
            compared += 1
        for label, module in context.corpus():
            if module.dim == 0:
                continue
            oracle = module_is_indecomposable(module)
            if oracle is None:
                continue
            gamma = end_algebra(module).algebra
            if gamma.p <= gamma.dim:
                logger.debug(f"locality_oracle: p <= dim End({label})")
                continue
            if is_local(gamma, context.seed).is_local != oracle:
                return failed(name, "End locality disagrees with the oracle", {'module': label})
            compared += 1
        if not compared:
            return skipped(name, "no instance small enough for enumeration")
        return passed(name, f"{compared} comparisons")

    def vertex_idempotents(self, context: SuiteContext) -> PropertyResult:
        name = 'vertex_idempotents'
        a = context.algebra
        if a.quiver is None:
            return skipped(name, "algebra not given by a quiver")
        idempotents = vertex_idempotents(a)
        total = sum(idempotents) % a.p
        if not np.array_equal(total, a.one):
            return failed(name, "sum of vertex idempotents is not 1")
        for i, e in enumerate(idempotents):
            for j, f in enumerate(idempotents):
                product = a.multiply(e, f)
                expected = e if i == j else np.zeros_like(e)
                if not np.array_equal(product, expected):
                    return failed(name, "vertex idempotents are not orthogonal", {'pair': [i, j]})
        return passed(name, f"{len(idempotents)} vertices")
