#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tests du moteur de décomposition : Fitting, Krull-Schmidt, isomorphie, échange
"""

import json

import numpy as np
import pytest

from engine.decompose import (exchange_check, fitting_identity_holds, fitting_split,
                              indecomposable_isomorphism, internal_sum_witnesses,
                              is_isomorphic, krull_schmidt, match_decompositions,
                              primary_split, random_endomorphism, random_idempotent)
from engine.errors import ContractViolation, ModulusTooSmallError
from engine.exactlin import identity, is_invertible, matmul
from engine.module import direct_sum, end_algebra, is_intertwiner, regular_module
from utils.instance_loader import load_instance, parse_instance
from utils.oracles import module_is_indecomposable
from utils.random_instances import base_change, linear_quiver_algebra
from utils.report import dump_report
from utils.seeding import make_rng


def block_projection(m, start, stop):
    e = np.zeros((m.dim, m.dim), dtype=np.int64)
    e[start:stop, start:stop] = identity(stop - start)
    return e


def a2_over(data_path, p):
    """Carquois A2 du fichier de test, réinterprété sur F_p"""
    with open(data_path('a2_quiver.json'), encoding='utf-8') as handle:
        data = json.load(handle)
    data['field']['p'] = p
    return parse_instance(data)


class TestFitting:
    """m = Im phi^r (+) Ker phi^r"""

    def test_identity_and_zero(self, a2):
        m = a2.module('M')
        assert fitting_split(m, identity(m.dim)).dims == (m.dim, 0)
        assert fitting_split(m, np.zeros((m.dim, m.dim), dtype=np.int64)).dims == (0, m.dim)

    def test_random_endomorphisms(self, a2, upper_triangular):
        rng = make_rng(1)
        for m in (a2.module('M'), upper_triangular.module('sum')):
            for _ in range(10):
                phi = random_endomorphism(m, rng)
                assert fitting_identity_holds(m, phi)
                split = fitting_split(m, phi)
                (iota1, pi1), (iota2, pi2) = split.image_witness, split.kernel_witness
                total = (matmul(pi1, iota1, m.p) + matmul(pi2, iota2, m.p)) % m.p
                assert np.array_equal(total, identity(m.dim))

    def test_non_endomorphism_rejected(self, a2):
        m = a2.module('P1')
        with pytest.raises(ContractViolation):
            fitting_split(m, np.array([[0, 0], [1, 0]]))

    def test_primary_split(self, a2):
        m = a2.module('M')
        parts = primary_split(m, block_projection(m, 0, 2))
        assert sorted(part.dim for part, _, _ in parts) == [2, 2]
        single = primary_split(m, identity(m.dim))
        assert len(single) == 1 and single[0][0].dim == m.dim


class TestKrullSchmidt:
    """Décompositions certifiées"""

    def test_a2_regular(self, a2):
        decomposition = krull_schmidt(a2.module('regular'))
        assert [c.dim for c in decomposition.classes] == [2, 1]
        assert [c.multiplicity for c in decomposition.classes] == [1, 1]
        assert all(c.certificate.is_local for c in decomposition.classes)
        assert decomposition.check_witnesses()

    def test_multiplicities(self, upper_triangular):
        decomposition = krull_schmidt(upper_triangular.module('sum'), seed=5)
        assert decomposition.dims() == [(1, 1), (2, 2)]
        assert decomposition.total == 3
        assert decomposition.check_witnesses()

    def test_a4_with_relation(self, a4):
        decomposition = krull_schmidt(a4.module('regular'))
        assert [c.dim for c in decomposition.classes] == [3, 3, 2, 1]
        assert decomposition.total == 4

    @pytest.mark.parametrize('n', [2, 3, 4, 5])
    def test_linear_quiver_projectives(self, n):
        a = linear_quiver_algebra(n, p=17)
        decomposition = krull_schmidt(regular_module(a), seed=n)
        assert [c.dim for c in decomposition.classes] == list(range(n, 0, -1))
        assert all(c.multiplicity == 1 for c in decomposition.classes)

    def test_zero_module(self, a2):
        decomposition = krull_schmidt(a2.module('zero'))
        assert decomposition.total == 0
        assert decomposition.to_report()['summands'] == []

    def test_modulus_too_small(self, data_path):
        instance = load_instance(data_path('truncated_polynomial_p2.json'))
        with pytest.raises(ModulusTooSmallError):
            krull_schmidt(instance.module('regular'))

    def test_agrees_with_idempotent_oracle(self, a2, kxy):
        pair, _, _ = direct_sum([a2.module('P1'), a2.module('S1')])
        for m in (a2.module('P1'), pair, kxy.module('Y'), kxy.module('X')):
            oracle = module_is_indecomposable(m)
            assert oracle is not None
            assert oracle == (krull_schmidt(m).total == 1)

    def test_seeds_give_matching_decompositions(self, a2, upper_triangular):
        for m in (a2.module('M'), upper_triangular.module('sum')):
            first, second = krull_schmidt(m, 1), krull_schmidt(m, 2)
            assert match_decompositions(first, second).ok
            assert first.dims() == second.dims()

    def test_report_is_deterministic(self, upper_triangular):
        m = upper_triangular.module('sum')
        first = dump_report(krull_schmidt(m, 9).to_report(witnesses=True))
        second = dump_report(krull_schmidt(m, 9).to_report(witnesses=True))
        assert first == second

    def test_end_dimension_must_stay_below_p(self, data_path):
        # p = 5 > dim A = 3, mais dim End(M) = 5
        instance = a2_over(data_path, 5)
        m = instance.module('M')
        assert end_algebra(m).dim == 5
        with pytest.raises(ModulusTooSmallError) as info:
            krull_schmidt(m)
        assert info.value.what == 'End'
        assert info.value.exit_code == 3

    def test_a2_regular_over_f5(self, data_path):
        decomposition = krull_schmidt(a2_over(data_path, 5).module('regular'))
        assert decomposition.dims() == [(1, 1), (2, 1)]


class TestIsomorphism:
    """Test d'isomorphie avec témoin"""

    def test_base_change(self, a2):
        m = a2.module('M')
        n, _ = base_change(m, make_rng(4))
        isomorphic, theta = is_isomorphic(m, n, seed=1)
        assert isomorphic
        assert is_invertible(theta, m.p)
        assert is_intertwiner(theta, m, n)

    def test_simple_equals_projective(self, a2):
        assert is_isomorphic(a2.module('P2'), a2.module('S2'))[0]
        assert indecomposable_isomorphism(a2.module('P2'), a2.module('S2')) is not None

    def test_not_isomorphic(self, a2):
        other, _, _ = direct_sum([a2.module('S1'), a2.module('S2')])
        assert not is_isomorphic(a2.module('P1'), other)[0]
        assert indecomposable_isomorphism(a2.module('P1'), a2.module('S1')) is None

    def test_radical_of_regular_is_p2(self, a2):
        assert is_isomorphic(a2.module('rad_regular'), a2.module('P2'))[0]

    def test_different_algebras_rejected(self, a2, kxy, data_path):
        with pytest.raises(ContractViolation):
            is_isomorphic(a2.module('P1'), kxy.module('X'))
        # même table, autre caractéristique
        with pytest.raises(ContractViolation):
            is_isomorphic(a2.module('P2'), a2_over(data_path, 5).module('P2'))


class TestExchange:
    """Propriété d'échange"""

    def test_random_idempotents(self, a2, upper_triangular):
        for m in (a2.module('M'), upper_triangular.module('sum')):
            decomposition = krull_schmidt(m)
            for seed in range(5):
                e = random_idempotent(m, seed)
                assert np.array_equal(matmul(e, e, m.p), e)
                result = exchange_check(decomposition, e)
                assert result.ok
                assert result.t == len(result.reindexing)

    def test_complement_uses_original_embeddings(self, a2):
        m = a2.module('M')
        decomposition = krull_schmidt(m, 2)
        instances = decomposition.instances()
        result = exchange_check(decomposition, block_projection(m, 0, 2), seed=2)
        assert result.ok
        assert result.t == 2
        for (_, _, iota, _), (_, summand_iota, _) in zip(
                [instances[i] for i in result.reindexing], result.summands):
            assert np.array_equal(summand_iota, iota)
        total = sum(matmul(pi, iota, m.p) for _, iota, pi in result.summands) % m.p
        assert np.array_equal(total, identity(m.dim))

    def test_wrong_complement_is_rejected(self, a2):
        m, _, _ = direct_sum([a2.module('P1'), a2.module('P1')])
        first, second = identity(4)[:2], identity(4)[2:]
        assert internal_sum_witnesses(m, [first, first]) is None
        assert internal_sum_witnesses(m, [first]) is None
        witnesses = internal_sum_witnesses(m, [second, first])
        assert witnesses is not None
        for iota, pi in witnesses:
            assert np.array_equal(matmul(iota, pi, m.p), identity(2))
        # X' = premier facteur, complément = diagonale : somme directe aussi
        diagonal = np.array([[1, 0, 1, 0], [0, 1, 0, 1]])
        assert internal_sum_witnesses(m, [diagonal, first]) is not None
        overlap = np.array([[1, 0, 0, 0], [0, 0, 0, 1]])
        assert internal_sum_witnesses(m, [overlap, first]) is None
