#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Configuration Settings - Moteur Krull-Schmidt
"""

import os
from typing import Dict, Any

from dotenv import load_dotenv

# Les variables d'un éventuel fichier .env passent avant les valeurs par défaut
load_dotenv()


def _env_int(name: str, default: int) -> int:
    return int(os.getenv(name, str(default)))


class Config:
    """
    Configuration de base du moteur
    """

    # Version du moteur et du schéma des rapports
    ENGINE_VERSION = '1.0.0'
    SCHEMA_VERSION = '1.0'

    # Graine par défaut : tout chemin aléatoire doit respecter --seed
    DEFAULT_SEED = _env_int('KS_DEFAULT_SEED', 0)

    # Algorithmes Las Vegas
    LAS_VEGAS_RETRIES = _env_int('KS_LAS_VEGAS_RETRIES', 64)

    # Limites des oracles par énumération exhaustive
    BRUTE_FORCE_LIMIT = _env_int('KS_BRUTE_FORCE_LIMIT', 2 ** 14)
    MAX_SUBSPACE_ENUMERATION = _env_int('KS_MAX_SUBSPACE_ENUMERATION', 20000)

    # Garde-fou sur l'énumération des chemins d'un carquois
    MAX_ALGEBRA_DIM = _env_int('KS_MAX_ALGEBRA_DIM', 400)

    # Tailles d'échantillons des suites de propriétés
    PROPERTY_SAMPLES = {
        'jrad': _env_int('KS_JRAD_SAMPLES', 1000),
        'procov': _env_int('KS_PROCOV_SAMPLES', 20),
        'fitting': _env_int('KS_FITTING_SAMPLES', 100),
        'projrad': _env_int('KS_PROJRAD_SAMPLES', 200),
        'exchange': _env_int('KS_EXCHANGE_SAMPLES', 50),
    }

    # Vérification stricte : un théorème violé est une erreur dure
    STRICT_VERIFICATION = os.getenv('KS_STRICT', 'True').lower() == 'true'
    WITNESSES_BY_DEFAULT = False

    # Configuration logging
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')
    LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

    # Chemins et fichiers
    BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    TEST_DATA_DIR = os.path.join(BASE_DIR, 'test_data')

    @classmethod
    def samples(cls, name: str) -> int:
        """Retourne la taille d'échantillon d'une propriété"""
        return cls.PROPERTY_SAMPLES[name]

    @classmethod
    def get_feature_flags(cls) -> Dict[str, bool]:
        """Retourne les feature flags activés"""
        return {
            'strict_verification': cls.STRICT_VERIFICATION,
            'witnesses_by_default': cls.WITNESSES_BY_DEFAULT,
            'debug_logging': cls.LOG_LEVEL.upper() == 'DEBUG'
        }

    @classmethod
    def validate_config(cls) -> Dict[str, Any]:
        """Valide la configuration et retourne les erreurs"""
        validation_results = {
            'is_valid': True,
            'errors': [],
            'warnings': []
        }

        if cls.LAS_VEGAS_RETRIES < 1:
            validation_results['errors'].append(
                "LAS_VEGAS_RETRIES doit être au moins 1"
            )
            validation_results['is_valid'] = False

        if cls.BRUTE_FORCE_LIMIT > 2 ** 16:
            validation_results['warnings'].append(
                "BRUTE_FORCE_LIMIT très élevé, oracles exhaustifs possiblement lents"
            )

        for name, count in cls.PROPERTY_SAMPLES.items():
            if count < 0:
                validation_results['errors'].append(
                    f"Taille d'échantillon négative pour '{name}'"
                )
                validation_results['is_valid'] = False

        return validation_results


class DevelopmentConfig(Config):
    """Configuration pour le développement"""
    LOG_LEVEL = 'DEBUG'


class ProductionConfig(Config):
    """Configuration pour les campagnes de vérification"""
    LOG_LEVEL = 'INFO'
    STRICT_VERIFICATION = True

    @classmethod
    def validate_production_config(cls):
        """Validation spécifique production"""
        if not cls.STRICT_VERIFICATION:
            raise ValueError("STRICT_VERIFICATION obligatoire en production")


class TestingConfig(Config):
    """Configuration pour les tests"""
    TESTING = True
    LOG_LEVEL = 'WARNING'
    PROPERTY_SAMPLES = {
        'jrad': 200,
        'procov': 5,
        'fitting': 20,
        'projrad': 40,
        'exchange': 10,
    }


# Configuration par environnement
config_by_env = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
    'testing': TestingConfig,
    'default': Config
}


def get_config(env_name: str = None) -> type:
    """Retourne la configuration selon l'environnement"""
    if env_name is None:
        env_name = os.getenv('KS_ENV', 'default')

    return config_by_env.get(env_name, Config)
