#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Fitting Suite - Lemme de Fitting, décomposition primaire, endomorphismes d'indécomposables
"""

import logging
from typing import Callable, List, Tuple

import numpy as np

from engine.decompose import (fitting_identity_holds, fitting_split, krull_schmidt,
                              primary_split, random_endomorphism)
from engine.exactlin import identity, is_invertible, is_nilpotent, matmul
from utils.random_instances import random_corpus
from utils.seeding import derive_seed, make_rng
from .base_suite import PropertyResult, PropertySuite, SuiteContext, failed, passed

logger = logging.getLogger(__name__)


class FittingSuite(PropertySuite):
    """
    Im phi^r (+) Ker phi^r sur l'instance et sur un corpus aléatoire
    """

    def __init__(self):
        super().__init__('fitting')

    def properties(self) -> List[Tuple[str, Callable[[SuiteContext], PropertyResult]]]:
        return [
            ('fitting_identity', self.fitting_identity),
            ('fitting_witnesses', self.fitting_witnesses),
            ('primary_split_dimensions', self.primary_split_dimensions),
            ('fitting_local', self.fitting_local),
        ]

    def fitting_identity(self, context: SuiteContext) -> PropertyResult:
        """Corpus aléatoire : algèbres de carquois dim <= 8, modules dim <= 12"""
        name = 'fitting_identity'
        count = context.samples('fitting')
        corpus = random_corpus(count, context.seed)
        rng = make_rng(derive_seed(context.seed, 7))
        for label, module in corpus:
            if module.dim == 0:
                continue
            phi = random_endomorphism(module, rng)
            if not fitting_identity_holds(module, phi):
                return failed(name, "Im phi^r + Ker phi^r is not the whole module",
                              {'module': label, 'phi': phi.tolist()})
        return passed(name, f"{len(corpus)} random instances")

    def fitting_witnesses(self, context: SuiteContext) -> PropertyResult:
        name = 'fitting_witnesses'
        rng = make_rng(derive_seed(context.seed, 8))
        for label, module in context.corpus():
            if module.dim == 0:
                continue
            p, n = module.p, module.dim
            phi = random_endomorphism(module, rng)
            split = fitting_split(module, phi)
            (iota1, pi1), (iota2, pi2) = split.image_witness, split.kernel_witness
            total = (matmul(pi1, iota1, p) + matmul(pi2, iota2, p)) % p
            if not np.array_equal(total, identity(n)):
                return failed(name, "witnesses do not sum to the identity",
                              {'module': label, 'phi': phi.tolist()})
            if sum(split.dims) != n:
                return failed(name, "dimensions do not add up",
                              {'module': label, 'dims': list(split.dims)})
        return passed(name, f"{len(context.corpus())} modules")

    def primary_split_dimensions(self, context: SuiteContext) -> PropertyResult:
        name = 'primary_split_dimensions'
        rng = make_rng(derive_seed(context.seed, 9))
        for label, module in context.corpus():
            phi = random_endomorphism(module, rng)
            parts = primary_split(module, phi, seed=context.seed)
            if sum(part.dim for part, _, _ in parts) != module.dim:
                return failed(name, "primary parts do not add up",
                              {'module': label, 'dims': [part.dim for part, _, _ in parts]})
        return passed(name, f"{len(context.corpus())} modules")

    def fitting_local(self, context: SuiteContext) -> PropertyResult:
        """Sur un indécomposable, tout endomorphisme est inversible ou nilpotent"""
        name = 'fitting_local'
        rng = make_rng(derive_seed(context.seed, 10))
        checked = 0
        for label, module in context.corpus():
            for c in krull_schmidt(module, context.seed).classes:
                x = c.representative
                for _ in range(5):
                    phi = random_endomorphism(x, rng)
                    if not is_invertible(phi, x.p) and not is_nilpotent(phi, x.p):
                        return failed(name, "endomorphism neither invertible nor nilpotent",
                                      {'module': label, 'summand_dim': x.dim,
                                       'phi': phi.tolist()})
                    checked += 1
        logger.debug(f"fitting_local: {checked} endomorphismes tirés")
        return passed(name, f"{checked} endomorphisms")
