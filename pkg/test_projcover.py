#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tests des couvertures projectives et du radical de la catégorie
"""

import numpy as np
import pytest

from engine.errors import ContractViolation
from engine.exactlin import identity, is_invertible
from engine.module import direct_sum, hom_space
from engine.projcover import (cartan_matrix, composition_factors, cover_uniqueness_check,
                              in_rad_via_units, is_essential_epi, is_minimal_presentation,
                              is_projective, minimal_presentation, padded_presentation,
                              projective_cover, projective_indecomposables,
                              projrad_equivalence_check, rad_hom, radical_series,
                              simple_modules, units_test_is_exhaustive)
from utils.oracles import maxsub_bijection_holds


class TestCovers:
    """Épimorphismes essentiels depuis un projectif"""

    def test_cover_of_simple(self, a2):
        cover = projective_cover(a2.module('S1'))
        assert cover.cover.dim == 2
        assert cover.kernel_basis.shape[0] == 1
        assert cover.labels == ['P1']
        assert cover.essential_certificate['kernel_in_radical']

    def test_projective_has_trivial_kernel(self, a2):
        cover = projective_cover(a2.module('P1'))
        assert cover.kernel_basis.shape[0] == 0
        assert is_projective(a2.module('P1'))
        assert is_projective(a2.module('regular'))
        assert not is_projective(a2.module('M'))
        assert not is_projective(a2.module('S1'))

    def test_zero_module(self, a2):
        cover = projective_cover(a2.module('zero'))
        assert cover.cover.dim == 0

    def test_cover_report(self, a2):
        report = projective_cover(a2.module('S1')).to_report(witnesses=True)
        assert report['cover_dim'] == 2
        assert report['kernel_dim'] == 1
        assert len(report['epi']) == 2

    def test_uniqueness_up_to_isomorphism(self, a4):
        m = a4.module('interval_1_2')
        first, second = projective_cover(m, seed=1), projective_cover(m, seed=2)
        alpha = cover_uniqueness_check(first, second)
        assert is_invertible(alpha, m.p)

    def test_essential_epi_needs_surjection(self, a2):
        with pytest.raises(ContractViolation):
            is_essential_epi(np.zeros((2, 1), dtype=np.int64), a2.module('P1'), a2.module('S1'))

    def test_projectives_and_simples(self, a2):
        projectives = projective_indecomposables(a2.algebra)
        assert [q.label for q in projectives] == ['P1', 'P2']
        assert all(q.certificate.is_local for q in projectives)
        assert [s.dim for s in simple_modules(a2.algebra)] == [1, 1]

    def test_cartan_matrix(self, a2):
        assert np.array_equal(cartan_matrix(a2.algebra), [[1, 0], [1, 1]])

    def test_radical_series_and_composition_factors(self, a2):
        assert len(radical_series(a2.module('P1'))) == 2
        assert composition_factors(a2.module('M')) == {'P1': 2, 'P2': 2}

    def test_maximal_submodules_match_right_ideals(self, a2, kxy):
        projectives = [a2.module('P1'), a2.module('P2'), a2.module('regular'),
                       kxy.module('regular')]
        for m in projectives:
            ok, detail = maxsub_bijection_holds(m)
            assert ok, detail

    def test_bijection_fails_off_projectives(self, kxy):
        # Y = rad Λ : six droites dans son top, un seul idéal maximal de End(Y)
        ok, detail = maxsub_bijection_holds(kxy.module('Y'))
        assert not ok
        assert detail == {'maximal_submodules': 6, 'maximal_right_ideals': 1, 'images': 1}


class TestRadHom:
    """Rad(x, y) et ses caractérisations"""

    def test_between_distinct_projectives(self, a2):
        space = rad_hom(a2.module('P2'), a2.module('P1'))
        assert space.dim == space.hom_dim == 1

    def test_endomorphisms_of_indecomposable(self, a2):
        assert rad_hom(a2.module('P1'), a2.module('P1')).dim == 0

    def test_radical_of_end_algebra(self, a2):
        total, _, _ = direct_sum([a2.module('P1'), a2.module('P2')])
        space = rad_hom(total, total)
        assert space.hom_dim == 3
        assert space.dim == 1

    def test_units_characterization(self, a2):
        p1, p2 = a2.module('P1'), a2.module('P2')
        arrow = hom_space(p2, p1).basis[0]
        assert units_test_is_exhaustive(p2, p1)
        assert in_rad_via_units(arrow, p2, p1)
        assert not in_rad_via_units(identity(2), p1, p1)

    def test_projective_target(self, a2):
        spec = a2.morphisms['rad_inclusion']
        check = projrad_equivalence_check(spec.matrix, a2.module('P2'), a2.module('P1'))
        assert tuple(check) == (True, True)

    def test_non_projective_target(self, kxy):
        spec = kxy.morphisms['inclusion']
        check = projrad_equivalence_check(spec.matrix, kxy.module('X'), kxy.module('Y'))
        assert check.im_in_rad is False
        assert check.in_radhom is True

    def test_non_morphism_rejected(self, a2):
        with pytest.raises(ContractViolation):
            projrad_equivalence_check(np.array([[1, 0]]), a2.module('P2'), a2.module('P1'))


class TestPresentations:
    """P1 -> P0 -> m -> 0"""

    def test_minimal_presentation_of_simple(self, a2):
        m = a2.module('S1')
        presentation = minimal_presentation(m)
        assert presentation.p0.dim == 2
        assert presentation.p1.dim == 1
        check = is_minimal_presentation(presentation.p1, presentation.p0, presentation.phi,
                                        presentation.psi, m)
        assert tuple(check) == (True, True)

    def test_padded_presentation_is_not_minimal(self, a2):
        m = a2.module('S1')
        padded = padded_presentation(minimal_presentation(m), a2.module('P2'))
        check = is_minimal_presentation(padded.p1, padded.p0, padded.phi, padded.psi, m)
        assert tuple(check) == (False, False)

    def test_non_exact_rejected(self, a2):
        m = a2.module('S1')
        presentation = minimal_presentation(m)
        with pytest.raises(ContractViolation):
            is_minimal_presentation(presentation.p1, presentation.p0,
                                    np.zeros_like(presentation.phi), presentation.psi, m)
