#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Fixtures partagées des tests du moteur Krull-Schmidt
"""

import os

# Avant tout import du moteur : échantillons réduits, logs en WARNING
os.environ.setdefault('KS_ENV', 'testing')

import pytest  # noqa: E402

from config.settings import Config, TestingConfig  # noqa: E402
from utils.instance_loader import load_instance  # noqa: E402


def fixture_path(name: str) -> str:
    return os.path.join(Config.TEST_DATA_DIR, name)


@pytest.fixture
def data_path():
    """Chemin d'un fichier de test_data/"""
    return fixture_path


@pytest.fixture(scope='session')
def a2():
    """Carquois 1 -> 2 sur F_7"""
    return load_instance(fixture_path('a2_quiver.json'))


@pytest.fixture(scope='session')
def kxy():
    """F_5[x, y] / (x^2, y^2)"""
    return load_instance(fixture_path('kxy_x2y2.json'))


@pytest.fixture(scope='session')
def upper_triangular():
    return load_instance(fixture_path('upper_triangular.json'))


@pytest.fixture(scope='session')
def a4():
    """Carquois linéaire 1 -> 2 -> 3 -> 4 sur F_11 avec la relation abc = 0"""
    return load_instance(fixture_path('a4_quiver.json'))


@pytest.fixture
def testing_config():
    return TestingConfig
