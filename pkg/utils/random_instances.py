#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Random Instances - Générateurs reproductibles d'algèbres et de modules

Algèbres : carquois acycliques à relations monomiales de longueur 2.
Modules : sous-modules engendrés ou quotients de A ou A (+) A, présentés
dans une base aléatoire.
"""

import logging
from typing import List, Optional, Tuple

import numpy as np

from engine.algebra import Algebra
from engine.exactlin import inverse, matmul, random_invertible, random_matrix
from engine.module import (Module, direct_sum, generated_submodule, quotient_module,
                           regular_module, submodule)
from engine.quiver import QuiverPresentation, algebra_from_quiver
from utils.seeding import make_rng

logger = logging.getLogger(__name__)


def random_quiver(rng: np.random.Generator, max_vertices: int = 4,
                  max_arrows: int = 4) -> QuiverPresentation:
    """Carquois acyclique (flèches i -> j avec i < j) et relations de longueur 2"""
    n = int(rng.integers(1, max_vertices + 1))
    vertices = [str(v + 1) for v in range(n)]
    arrows = []
    if n > 1:
        for index in range(int(rng.integers(0, max_arrows + 1))):
            s = int(rng.integers(0, n - 1))
            t = int(rng.integers(s + 1, n))
            arrows.append((vertices[s], vertices[t], f"a{index}"))
    composable = [(first[2], second[2]) for first in arrows for second in arrows
                  if first[1] == second[0]]
    relations = [pair for pair in composable if rng.random() < 0.5]
    return QuiverPresentation.from_lists(vertices, arrows, relations)


def random_quiver_algebra(seed: int, p: int = 11, max_dim: int = 8) -> Algebra:
    """Algèbre de carquois de dimension au plus max_dim (tirages répétés)"""
    rng = make_rng(seed)
    while True:
        quiver = random_quiver(rng)
        algebra, _ = algebra_from_quiver(quiver, p)
        if algebra.dim <= max_dim:
            return algebra


def linear_quiver_algebra(n: int, p: int = 11,
                          relations: Optional[List[Tuple[str, str]]] = None) -> Algebra:
    """Carquois linéaire 1 -> 2 -> ... -> n"""
    vertices = [str(v + 1) for v in range(n)]
    arrows = [(vertices[i], vertices[i + 1], f"a{i + 1}") for i in range(n - 1)]
    quiver = QuiverPresentation.from_lists(vertices, arrows, relations or [])
    return algebra_from_quiver(quiver, p)[0]


def base_change(m: Module, rng: np.random.Generator) -> Tuple[Module, np.ndarray]:
    """
    Copie isomorphe de m dans une base aléatoire

    Returns:
        (module n, isomorphisme P : m -> n) avec n.action = P^-1 action P
    """
    p = m.p
    change = random_invertible(rng, m.dim, p)
    change_inv = inverse(change, p)
    action = np.stack([matmul(matmul(change_inv, mat, p), change, p) for mat in m.action]) \
        if m.dim else m.action.copy()
    return Module(m.algebra, action, validate=False), change


def random_module(a: Algebra, seed: int, max_dim: int = 12) -> Module:
    """Sous-module engendré ou quotient de A ou A (+) A, dans une base aléatoire"""
    rng = make_rng(seed)
    regular = regular_module(a)
    ambient = regular if rng.random() < 0.5 or 2 * a.dim > max_dim else \
        direct_sum([regular, regular])[0]
    generators = random_matrix(rng, int(rng.integers(1, 3)), ambient.dim, a.p)
    span = generated_submodule(ambient, generators)
    if rng.random() < 0.5:
        module = submodule(ambient, span)[0]
    else:
        module = quotient_module(ambient, span)[0]
    if module.dim > max_dim:
        module = submodule(ambient, generated_submodule(ambient, generators[:1]))[0]
    return base_change(module, rng)[0]


def random_corpus(count: int, seed: int, primes: Tuple[int, ...] = (11, 13),
                  max_module_dim: int = 12) -> List[Tuple[str, Module]]:
    """count modules nommés, sur des algèbres de carquois aléatoires"""
    rng = make_rng(seed)
    corpus = []
    for index in range(count):
        p = primes[index % len(primes)]
        algebra = random_quiver_algebra(int(rng.integers(0, 2 ** 32)), p)
        module = random_module(algebra, int(rng.integers(0, 2 ** 32)), max_module_dim)
        corpus.append((f"random[{index}]", module))
    logger.debug(f"Corpus aléatoire: {count} modules (graine {seed})")
    return corpus
