#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Seeding - Graines dérivées et générateurs reproductibles
"""

import hashlib

import numpy as np

SEED_MAX = 2 ** 64 - 1


def derive_seed(parent: int, index: int) -> int:
    """Graine d'une branche de récursion, indépendante de l'ordonnancement"""
    digest = hashlib.md5(f"{parent}:{index}".encode()).digest()
    return int.from_bytes(digest[:8], 'big')


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(int(seed) & SEED_MAX)
