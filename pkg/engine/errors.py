#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Exceptions du moteur et codes de sortie associés
"""

from typing import Optional


class EngineError(Exception):
    """Erreur de base du moteur"""
    exit_code = 1


class ContractViolation(EngineError, ValueError):
    """Précondition violée (dimensions, entrelaceur, idempotent...)"""
    exit_code = 1


class InstanceError(EngineError):
    """Fichier d'instance invalide, ancré sur un chemin JSON ou une ligne"""
    exit_code = 2

    def __init__(self, message: str, path: Optional[str] = None):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}" if path else message)


class AlgebraValidationError(InstanceError):
    """Table de structure non associative ou unité incorrecte"""


class ModulusTooSmallError(EngineError):
    """Le calcul du radical exige p > dim"""
    exit_code = 3

    def __init__(self, p: int, dim: int, what: str = 'algebra'):
        self.p = p
        self.dim = dim
        self.what = what
        super().__init__(
            f"modulus too small for radical computation: p={p} <= dim {what}={dim}"
        )


class LasVegasExhaustedError(EngineError):
    """Tous les essais aléatoires ont échoué (jamais une réponse fausse)"""
    exit_code = 4


class VerificationFailure(EngineError):
    """Une propriété garantie par un théorème n'est pas vérifiée"""
    exit_code = 1

    def __init__(self, message: str, counterexample: Optional[dict] = None):
        self.counterexample = counterexample or {}
        super().__init__(message)
