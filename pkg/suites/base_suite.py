#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Base Property Suite - Classe de base pour toutes les suites de propriétés
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from config.settings import Config
from engine.algebra import Algebra
from engine.errors import EngineError, ModulusTooSmallError, VerificationFailure
from engine.module import Module, regular_module
from utils.instance_loader import Instance, MorphismSpec

logger = logging.getLogger(__name__)


@dataclass
class PropertyResult:
    """Résultat d'une propriété : vérifiée, violée ou non applicable"""
    name: str
    passed: bool
    detail: str = ''
    counterexample: Dict[str, Any] = field(default_factory=dict)
    skipped: bool = False

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            'name': self.name,
            'passed': self.passed,
            'detail': self.detail,
        }
        if self.skipped:
            data['skipped'] = True
        if self.counterexample:
            data['counterexample'] = self.counterexample
        return data


@dataclass
class SuiteContext:
    """
    Données partagées par les suites : algèbre, modules nommés, morphismes

    Attributes:
        algebra: Algèbre de l'instance
        modules: Modules nommés (ordre du fichier)
        morphisms: Morphismes déclarés avec leurs valeurs attendues
        seed: Graine racine
        config: Classe de configuration (tailles d'échantillons)
    """
    algebra: Algebra
    modules: Dict[str, Module]
    morphisms: List[MorphismSpec] = field(default_factory=list)
    seed: int = 0
    config: type = Config

    @classmethod
    def from_instance(cls, instance: Instance, seed: int = 0,
                      config: Optional[type] = None) -> 'SuiteContext':
        return cls(instance.algebra, dict(instance.modules), list(instance.morphisms.values()),
                   seed, config or Config)

    def corpus(self) -> List[Tuple[str, Module]]:
        """Modules de l'instance, complétés par le module régulier"""
        out = list(self.modules.items())
        regular = regular_module(self.algebra)
        if not any(np.array_equal(m.action, regular.action) for _, m in out
                   if m.dim == regular.dim):
            out.append(('regular', regular))
        return out

    def samples(self, name: str) -> int:
        return self.config.samples(name)


class PropertySuite(ABC):
    """
    Classe de base abstraite des suites de propriétés
    """

    def __init__(self, name: str):
        self.name = name
        self.version = "1.0.0"

    @abstractmethod
    def properties(self) -> List[Tuple[str, Callable[[SuiteContext], PropertyResult]]]:
        """
        Propriétés de la suite, dans l'ordre d'exécution

        Returns:
            Liste de (nom, fonction context -> PropertyResult)
        """
        pass

    def check(self, name: str, func: Callable[[SuiteContext], PropertyResult],
              context: SuiteContext) -> PropertyResult:
        """
        Exécute une propriété ; les erreurs du moteur deviennent des échecs

        Un module trop petit pour le radical rend la propriété non applicable.
        """
        try:
            return func(context)
        except ModulusTooSmallError as e:
            return PropertyResult(name, True, f"non applicable: {e}", skipped=True)
        except VerificationFailure as e:
            return PropertyResult(name, False, str(e), e.counterexample)
        except EngineError as e:
            logger.error(f"❌ {self.name}/{name}: {e}")
            return PropertyResult(name, False, f"{type(e).__name__}: {e}")
        except Exception as e:
            logger.exception(f"💥 {self.name}/{name}: erreur inattendue")
            return PropertyResult(name, False, f"unexpected {type(e).__name__}: {e}")

    def run(self, context: SuiteContext) -> List[PropertyResult]:
        results = []
        for name, func in self.properties():
            result = self.check(name, func, context)
            logger.debug(f"{self.name}/{name}: {'ok' if result.passed else 'ÉCHEC'}")
            results.append(result)
        return results

    def get_suite_info(self) -> Dict[str, Any]:
        """
        Retourne les informations sur la suite
        """
        return {
            'name': self.name,
            'version': self.version,
            'properties': [name for name, _ in self.properties()],
        }


def passed(name: str, detail: str) -> PropertyResult:
    return PropertyResult(name, True, detail)


def failed(name: str, detail: str, counterexample: Optional[Dict[str, Any]] = None) -> PropertyResult:
    return PropertyResult(name, False, detail, counterexample or {})


def skipped(name: str, detail: str) -> PropertyResult:
    return PropertyResult(name, True, detail, skipped=True)
