#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Uniqueness Suite - Unicité de Krull-Schmidt, échange, foncteur de projectivisation
"""

import logging
from typing import Callable, List, Tuple

import numpy as np

from engine.decompose import (exchange_check, indecomposable_isomorphism, krull_schmidt,
                              match_decompositions, random_idempotent)
from engine.exactlin import identity, matmul
from engine.module import direct_sum, hom_space, projectivize, split_idempotent
from utils.oracles import module_is_indecomposable
from utils.report import dump_report
from utils.seeding import derive_seed
from .base_suite import PropertyResult, PropertySuite, SuiteContext, failed, passed, skipped

logger = logging.getLogger(__name__)


class UniquenessSuite(PropertySuite):
    """
    Propriétés des décompositions en facteurs indécomposables
    """

    def __init__(self):
        super().__init__('uniqueness')

    def properties(self) -> List[Tuple[str, Callable[[SuiteContext], PropertyResult]]]:
        return [
            ('seeds_match', self.seeds_match),
            ('witness_identities', self.witness_identities),
            ('oracle_equivalence', self.oracle_equivalence),
            ('exchange', self.exchange),
            ('idempotents_split', self.idempotents_split),
            ('determinism', self.determinism),
            ('projectivize_dimensions', self.projectivize_dimensions),
            ('hom_additivity', self.hom_additivity),
        ]

    def seeds_match(self, context: SuiteContext) -> PropertyResult:
        """Deux graines : même multiset de facteurs à isomorphisme près"""
        name = 'seeds_match'
        for label, module in context.corpus():
            first = krull_schmidt(module, 1)
            second = krull_schmidt(module, 2)
            match = match_decompositions(first, second)
            if not match.ok:
                return failed(name, "decompositions under seeds 1 and 2 do not match",
                              dict(match.report, module=label))
            if first.dims() != second.dims():
                return failed(name, "(dim, multiplicity) multisets differ",
                              {'module': label, 'seed_1': first.dims(), 'seed_2': second.dims()})
        return passed(name, f"{len(context.corpus())} modules")

    def witness_identities(self, context: SuiteContext) -> PropertyResult:
        name = 'witness_identities'
        for label, module in context.corpus():
            decomposition = krull_schmidt(module, context.seed)
            if not decomposition.check_witnesses():
                return failed(name, "direct-sum identities fail", {'module': label})
            classes = decomposition.classes
            for i, c in enumerate(classes):
                if not c.certificate.is_local:
                    return failed(name, "summand without locality certificate",
                                  {'module': label, 'summand': i})
                for j in range(i + 1, len(classes)):
                    if indecomposable_isomorphism(c.representative,
                                                  classes[j].representative) is not None:
                        return failed(name, "two summand classes are isomorphic",
                                      {'module': label, 'pair': [i, j]})
        return passed(name, f"{len(context.corpus())} decompositions")

    def oracle_equivalence(self, context: SuiteContext) -> PropertyResult:
        """Idempotents triviaux seulement <=> un seul facteur certifié"""
        name = 'oracle_equivalence'
        compared = 0
        for label, module in context.corpus():
            if module.dim == 0:
                continue
            oracle = module_is_indecomposable(module)
            if oracle is None:
                logger.debug(f"oracle_equivalence: {label} ignoré")
                continue
            engine = krull_schmidt(module, context.seed).total == 1
            if oracle != engine:
                return failed(name, "engine and idempotent enumeration disagree",
                              {'module': label, 'oracle': oracle, 'engine': engine})
            compared += 1
        if not compared:
            return skipped(name, "no module small enough for enumeration")
        return passed(name, f"{compared} modules")

    def exchange(self, context: SuiteContext) -> PropertyResult:
        name = 'exchange'
        count = context.samples('exchange')
        corpus = [(label, m) for label, m in context.corpus() if m.dim]
        if not corpus:
            return skipped(name, "no nonzero module")
        decompositions = {label: krull_schmidt(m, context.seed) for label, m in corpus}
        for index in range(count):
            label, module = corpus[index % len(corpus)]
            e = random_idempotent(module, derive_seed(context.seed, index))
            result = exchange_check(decompositions[label], e, context.seed)
            if not result.ok:
                return failed(name, "re-indexed prefix does not reconstitute the module",
                              dict(result.report, module=label, idempotent=e.tolist()))
        return passed(name, f"{count} random splits")

    def idempotents_split(self, context: SuiteContext) -> PropertyResult:
        name = 'idempotents_split'
        checked = 0
        for label, module in context.corpus():
            if module.dim == 0:
                continue
            p = module.p
            for index in range(3):
                e = random_idempotent(module, derive_seed(context.seed, 100 + index))
                summand, iota, pi = split_idempotent(module, e)
                if not np.array_equal(matmul(pi, iota, p), e) or \
                        not np.array_equal(matmul(iota, pi, p), identity(summand.dim)):
                    return failed(name, "idempotent does not split", {'module': label})
                checked += 1
        return passed(name, f"{checked} idempotents")

    def determinism(self, context: SuiteContext) -> PropertyResult:
        name = 'determinism'
        for label, module in context.corpus():
            first = dump_report(krull_schmidt(module, context.seed).to_report(witnesses=True))
            second = dump_report(krull_schmidt(module, context.seed).to_report(witnesses=True))
            if first != second:
                return failed(name, "equal seeds give different reports", {'module': label})
        return passed(name, "byte-identical reports")

    def projectivize_dimensions(self, context: SuiteContext) -> PropertyResult:
        """dim Hom(m, n) = dim Hom_Gamma(F m, F n) sur les facteurs de x"""
        name = 'projectivize_dimensions'
        checked = 0
        for label, x in context.corpus():
            if x.dim == 0:
                continue
            functor = projectivize(x)
            pieces = [x] + [c.representative for c in krull_schmidt(x, context.seed).classes]
            images = [functor.apply(m)[0] for m in pieces]
            for i, m in enumerate(pieces):
                for j, n in enumerate(pieces):
                    left = hom_space(m, n).dim
                    right = hom_space(images[i], images[j]).dim
                    if left != right:
                        return failed(name, "projectivization changes hom dimension",
                                      {'module': label, 'pair': [i, j],
                                       'hom': left, 'hom_gamma': right})
                    checked += 1
        return passed(name, f"{checked} pairs")

    def hom_additivity(self, context: SuiteContext) -> PropertyResult:
        name = 'hom_additivity'
        corpus = context.corpus()
        for label_m, m in corpus:
            for label_n, n in corpus:
                total, _, _ = direct_sum([m, n], context.algebra)
                for label_t, t in corpus:
                    if hom_space(total, t).dim != hom_space(m, t).dim + hom_space(n, t).dim:
                        return failed(name, "hom is not additive in the source",
                                      {'modules': [label_m, label_n, label_t]})
        return passed(name, f"{len(corpus) ** 3} triples")
