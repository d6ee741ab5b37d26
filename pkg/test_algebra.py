#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tests des algèbres : validation, radical de Jacobson, localité, carquois
"""

import numpy as np
import pytest

from engine.algebra import (Algebra, algebra_from_structure_constants, is_local,
                            jacobson_radical, opposite_algebra, primitive_idempotent_split,
                            semisimple_quotient)
from engine.errors import AlgebraValidationError, ContractViolation, ModulusTooSmallError
from engine.module import end_algebra
from engine.projcover import projective_indecomposables
from engine.quiver import (QuiverPresentation, algebra_from_quiver, representation_module,
                           vertex_idempotents)
from utils.instance_loader import load_instance
from utils.oracles import only_trivial_idempotents
from utils.random_instances import linear_quiver_algebra


NON_ASSOCIATIVE = [
    [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    [[0, 1, 0], [0, 0, 1], [0, 0, 0]],
    [[0, 0, 1], [0, 1, 0], [0, 0, 0]],
]


class TestValidation:
    """Constantes de structure invalides"""

    def test_non_associative_table_names_a_triple(self):
        with pytest.raises(AlgebraValidationError) as info:
            algebra_from_structure_constants(NON_ASSOCIATIVE, [1, 0, 0], 5)
        assert info.value.path == 'table'
        assert 'triple' in info.value.message

    def test_wrong_unit(self):
        table = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
        with pytest.raises(AlgebraValidationError) as info:
            algebra_from_structure_constants(table, [0, 1], 5)
        assert info.value.path == 'one'

    def test_bad_shape(self):
        with pytest.raises(AlgebraValidationError):
            algebra_from_structure_constants([[[1, 0]], [[0, 1]]], [1, 0], 5)

    def test_table_reduced_mod_p(self):
        table = [[[6, 0], [0, 6]], [[0, 11], [0, 5]]]
        a = algebra_from_structure_constants(table, [1, 0], 5)
        assert np.array_equal(a.table[1, 1], [0, 0])


class TestRadical:
    """Radical de Jacobson par la forme trace"""

    def test_a2_radical_is_the_arrow(self, a2):
        radical = jacobson_radical(a2.algebra)
        assert radical.dim == 1
        assert radical.nilpotency_index == 2
        assert np.array_equal(radical.basis, [[0, 0, 1]])

    def test_kxy_radical(self, kxy):
        radical = jacobson_radical(kxy.algebra)
        assert radical.dim == 3
        assert radical.nilpotency_index == 3

    def test_quotient_is_semisimple(self, a2, kxy, upper_triangular):
        for instance in (a2, kxy, upper_triangular):
            quotient = semisimple_quotient(instance.algebra)
            assert jacobson_radical(quotient.algebra).dim == 0

    def test_opposite_has_same_radical(self, a4, upper_triangular):
        for instance in (a4, upper_triangular):
            a = instance.algebra
            assert np.array_equal(jacobson_radical(a).basis,
                                  jacobson_radical(opposite_algebra(a)).basis)

    def test_modulus_too_small(self, data_path):
        instance = load_instance(data_path('truncated_polynomial_p2.json'))
        with pytest.raises(ModulusTooSmallError) as info:
            jacobson_radical(instance.algebra)
        assert info.value.exit_code == 3


class TestLocality:
    """Certificats de localité"""

    def test_local_commutative(self, kxy):
        certificate = is_local(kxy.algebra)
        assert certificate.is_local
        assert certificate.kind == 'frobenius_fixed_dim_1'

    def test_path_algebra_is_not_local(self, a2):
        certificate = is_local(a2.algebra)
        assert not certificate.is_local
        assert certificate.to_dict()['kind'] in ('idempotent', 'noncommuting_pair')

    def test_agrees_with_idempotent_enumeration(self, a2, kxy, upper_triangular):
        for instance in (a2, kxy, upper_triangular):
            a = instance.algebra
            assert is_local(a).is_local == only_trivial_idempotents(a)

    def test_primitive_split_gives_nontrivial_idempotent(self, upper_triangular):
        a = upper_triangular.algebra
        e = primitive_idempotent_split(a, seed=3)
        assert e is not None
        assert a.is_idempotent(e)
        assert np.any(e) and not np.array_equal(e, a.one)

    def test_local_algebra_has_no_split(self, kxy):
        assert primitive_idempotent_split(kxy.algebra) is None

    def test_zero_algebra(self, a2):
        gamma = end_algebra(a2.module('zero')).algebra
        assert gamma.dim == 0
        certificate = is_local(gamma)
        assert not certificate.is_local
        assert certificate.kind == 'zero_algebra'
        assert primitive_idempotent_split(gamma) is None


class TestQuiver:
    """Algèbres de chemins à relations monomiales"""

    def test_path_counts(self, a4):
        # 4 sommets, 3 flèches, ab et bc ; abc est nul
        assert a4.algebra.dim == 9
        assert linear_quiver_algebra(4).dim == 10

    def test_vertex_idempotents(self, a4):
        a = a4.algebra
        idempotents = vertex_idempotents(a)
        assert np.array_equal(sum(idempotents) % a.p, a.one)
        for i, e in enumerate(idempotents):
            for j, f in enumerate(idempotents):
                assert np.array_equal(a.multiply(e, f), e if i == j else np.zeros_like(e))

    def test_surviving_cycle_is_rejected(self):
        quiver = QuiverPresentation.from_lists(['1'], [('1', '1', 'x')])
        with pytest.raises(AlgebraValidationError):
            algebra_from_quiver(quiver, 5)

    def test_truncated_loop(self):
        quiver = QuiverPresentation.from_lists(['1'], [('1', '1', 'x')], [('x', 'x', 'x')])
        a, labels = algebra_from_quiver(quiver, 5)
        assert labels == ['e_1', 'x', 'x*x']
        assert is_local(a).is_local

    def test_relation_must_compose(self):
        with pytest.raises(AlgebraValidationError):
            QuiverPresentation.from_lists(['1', '2', '3'], [('1', '2', 'a'), ('2', '3', 'b')],
                                          [('b', 'a')])

    def test_center_of_commutative_algebra(self, kxy):
        assert kxy.algebra.is_commutative()
        assert kxy.algebra.center().shape[0] == 4

    def test_quiver_is_fixed_at_construction(self, a2):
        a = a2.algebra
        assert a.quiver is not None
        with pytest.raises(AttributeError):
            a.quiver = None

    def test_permuted_basis_found_by_label(self):
        quiver = QuiverPresentation.from_lists(['1', '2'], [('1', '2', 'a')])
        a, labels = algebra_from_quiver(quiver, 7)
        order = [2, 1, 0]
        permuted = Algebra(a.table[np.ix_(order, order, order)], a.one[order], 7,
                           labels=[labels[i] for i in order], quiver=quiver)
        assert permuted.labels == ['a', 'e_2', 'e_1']
        e1, e2 = vertex_idempotents(permuted)
        assert np.array_equal(e1, [0, 0, 1])
        assert np.array_equal(e2, [0, 1, 0])
        assert np.array_equal((e1 + e2) % 7, permuted.one)
        p1 = representation_module(permuted, {'1': 1, '2': 1}, {'a': [[1]]})
        assert np.array_equal(p1.action[0], [[0, 1], [0, 0]])
        assert np.array_equal(p1.action[2], [[1, 0], [0, 0]])
        assert [q.label for q in projective_indecomposables(permuted)] == ['P1', 'P2']

    def test_missing_vertex_label_rejected(self):
        quiver = QuiverPresentation.from_lists(['1', '2'], [('1', '2', 'a')])
        a, _ = algebra_from_quiver(quiver, 7)
        renamed = Algebra(a.table, a.one, 7, labels=['u', 'v', 'w'], quiver=quiver)
        with pytest.raises(ContractViolation):
            vertex_idempotents(renamed)
