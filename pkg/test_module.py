#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tests des modules, des espaces Hom et du chargement des instances
"""

import json

import numpy as np
import pytest

from engine.errors import ContractViolation, InstanceError
from engine.exactlin import identity, matmul
from engine.module import (Module, direct_sum, end_algebra, generated_submodule, hom_space,
                           is_intertwiner, projectivize, quotient_module, radical_of_module,
                           regular_module, split_idempotent, submodule, top)
from utils.instance_loader import load_instance, parse_instance
from utils.random_instances import base_change


class TestHom:
    """Espaces d'homomorphismes sur le carquois A2"""

    def test_hom_between_projectives(self, a2):
        assert hom_space(a2.module('P2'), a2.module('P1')).dim == 1
        assert hom_space(a2.module('P1'), a2.module('P2')).dim == 0

    def test_end_of_simple(self, a2):
        assert end_algebra(a2.module('S1')).dim == 1

    def test_end_of_regular_is_the_algebra(self, a2):
        assert end_algebra(a2.module('regular')).dim == a2.algebra.dim

    def test_basis_is_intertwining(self, a2):
        space = hom_space(a2.module('M'), a2.module('M'))
        assert space.check()
        assert space.dim == 5

    def test_additivity(self, a2):
        m, n, t = a2.module('P1'), a2.module('S1'), a2.module('M')
        total, _, _ = direct_sum([m, n])
        assert hom_space(total, t).dim == hom_space(m, t).dim + hom_space(n, t).dim

    def test_zero_module(self, a2):
        zero = a2.module('zero')
        assert zero.dim == 0
        assert hom_space(zero, a2.module('P1')).dim == 0
        assert end_algebra(zero).dim == 0

    def test_mismatched_algebras_rejected(self, a2, kxy):
        with pytest.raises(ContractViolation):
            hom_space(a2.module('P1'), kxy.module('X'))


class TestConstructions:
    """Sous-modules, quotients, sommes directes, idempotents"""

    def test_direct_sum_witnesses(self, a2):
        parts = [a2.module('P1'), a2.module('S1')]
        total, iotas, pis = direct_sum(parts)
        p = a2.p
        assert total.dim == 3
        acc = sum(matmul(pi, iota, p) for iota, pi in zip(iotas, pis)) % p
        assert np.array_equal(acc, identity(3))
        for m, iota, pi in zip(parts, iotas, pis):
            assert is_intertwiner(iota, m, total)
            assert np.array_equal(matmul(iota, pi, p), identity(m.dim))

    def test_submodule_must_be_stable(self, a2):
        with pytest.raises(ContractViolation):
            submodule(a2.module('P1'), np.array([[1, 0]]))

    def test_generated_submodule_and_quotient(self, a2):
        p1 = a2.module('P1')
        span = generated_submodule(p1, np.array([[0, 1]]))
        quotient, projection = quotient_module(p1, span)
        assert span.shape[0] == 1
        assert quotient.dim == 1
        assert is_intertwiner(projection, p1, quotient)

    def test_radical_and_top(self, a2):
        regular = a2.module('regular')
        assert radical_of_module(regular).shape[0] == 1
        head, _ = top(regular)
        assert head.dim == 2
        assert radical_of_module(head).shape[0] == 0

    def test_split_idempotent(self, a2):
        m = a2.module('M')
        p = m.p
        e = np.zeros((m.dim, m.dim), dtype=np.int64)
        e[:2, :2] = identity(2)
        summand, iota, pi = split_idempotent(m, e)
        assert summand.dim == 2
        assert np.array_equal(matmul(pi, iota, p), e)
        assert np.array_equal(matmul(iota, pi, p), identity(2))

    def test_non_idempotent_rejected(self, a2):
        m = a2.module('S1')
        with pytest.raises(ContractViolation):
            split_idempotent(m, np.array([[2]]))

    def test_base_change_is_isomorphism(self, a2):
        m = a2.module('M')
        n, change = base_change(m, np.random.default_rng(0))
        assert is_intertwiner(change, m, n)

    def test_invalid_action_rejected(self, a2):
        action = np.zeros((a2.algebra.dim, 1, 1), dtype=np.int64)
        with pytest.raises(ContractViolation):
            Module(a2.algebra, action)


class TestProjectivization:
    """Foncteur Hom(x, -) vers les modules sur End(x)"""

    def test_hom_dimensions_preserved(self, a2):
        x = a2.module('M')
        functor = projectivize(x)
        pieces = [a2.module('P1'), a2.module('S1'), a2.module('P2')]
        images = [functor.apply(m)[0] for m in pieces]
        for i, m in enumerate(pieces):
            for j, n in enumerate(pieces):
                assert hom_space(m, n).dim == hom_space(images[i], images[j]).dim

    def test_image_of_x_is_regular(self, a2):
        x = a2.module('M')
        functor = projectivize(x)
        image, _ = functor.apply(x)
        assert image.dim == functor.gamma.dim
        assert np.array_equal(image.action, regular_module(functor.gamma.algebra).action)


class TestInstanceLoader:
    """Erreurs ancrées sur un chemin JSON ou une ligne"""

    def test_fixture_modules(self, a2):
        assert set(a2.modules) == {'regular', 'P1', 'P2', 'S1', 'S2', 'M', 'rad_regular', 'zero'}
        assert a2.module('M').dim == 4
        assert a2.module('rad_regular').dim == 1

    def test_unknown_module(self, a2):
        with pytest.raises(InstanceError):
            a2.module('nope')

    def test_corrupted_constants(self, data_path):
        with pytest.raises(InstanceError) as info:
            load_instance(data_path('corrupted_structure_constants.json'))
        assert info.value.path == '$.algebra.one'
        assert info.value.exit_code == 2

    def test_wrong_action_count(self):
        data = {
            'field': {'p': 5},
            'algebra': {'type': 'structure_constants',
                        'table': [[[1]]], 'one': [1]},
            'modules': {'V': {'dim': 1, 'action': [[[1]], [[1]]]}},
        }
        with pytest.raises(InstanceError) as info:
            parse_instance(data)
        assert info.value.path == '$.modules.V.action'

    def test_non_prime_field(self):
        data = {'field': {'p': 6}, 'algebra': {'type': 'structure_constants',
                                               'table': [[[1]]], 'one': [1]}}
        with pytest.raises(InstanceError) as info:
            parse_instance(data)
        assert info.value.path == '$.field.p'

    def test_cyclic_definition(self):
        data = {
            'field': {'p': 5},
            'algebra': {'type': 'structure_constants', 'table': [[[1]]], 'one': [1]},
            'modules': {'A': {'direct_sum': ['B']}, 'B': {'direct_sum': ['A']}},
        }
        with pytest.raises(InstanceError):
            parse_instance(data)

    def test_invalid_json_anchored_on_line(self, tmp_path):
        broken = tmp_path / 'broken.json'
        broken.write_text('{\n  "field": {"p": 5},\n  "algebra": \n}\n', encoding='utf-8')
        with pytest.raises(InstanceError) as info:
            load_instance(str(broken))
        assert info.value.path.startswith('line 4')

    def test_matrices_reduced_mod_p(self):
        data = {
            'field': {'p': 5},
            'algebra': {'type': 'structure_constants', 'table': [[[1]]], 'one': [1]},
            'modules': {'V': {'dim': 2, 'action': [[[6, 0], [5, 11]]]}},
        }
        instance = parse_instance(json.loads(json.dumps(data)))
        assert np.array_equal(instance.module('V').action[0], [[1, 0], [0, 1]])
