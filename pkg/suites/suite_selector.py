#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Suite Selector - Sélection et exécution des suites de propriétés
"""

import logging
from typing import Any, Dict, List

from engine.errors import ContractViolation
from utils.performance_monitor import PerformanceMonitor
from .base_suite import PropertySuite, SuiteContext
from .covers_suite import CoversSuite
from .fitting_suite import FittingSuite
from .radical_suite import RadicalSuite
from .uniqueness_suite import UniquenessSuite

logger = logging.getLogger(__name__)


class SuiteSelector:
    """
    Registre des suites : 'all' les exécute dans l'ordre du registre
    """

    def __init__(self, monitor: PerformanceMonitor = None):
        self.version = "1.0.0"
        self.monitor = monitor or PerformanceMonitor()
        self.suites: Dict[str, PropertySuite] = {
            'radical': RadicalSuite(),
            'covers': CoversSuite(),
            'uniqueness': UniquenessSuite(),
            'fitting': FittingSuite(),
        }
        self.descriptions = {
            'radical': 'Arithmétique exacte, radical de Jacobson, Nakayama, localité',
            'covers': 'Couvertures projectives, sous-modules essentiels, rad Hom',
            'uniqueness': 'Unicité de Krull-Schmidt, échange, projectivisation',
            'fitting': 'Lemme de Fitting et décomposition primaire',
        }

    def names(self) -> List[str]:
        return list(self.suites)

    def select(self, name: str) -> List[PropertySuite]:
        if name == 'all':
            return list(self.suites.values())
        if name not in self.suites:
            raise ContractViolation(f"unknown suite '{name}'")
        return [self.suites[name]]

    def run(self, name: str, context: SuiteContext) -> Dict[str, Any]:
        """
        Exécute une suite (ou toutes) et agrège les résultats

        Returns:
            Corps de rapport {suite, passed, total, properties}
        """
        results = []
        for suite in self.select(name):
            with self.monitor.track(f"suite:{suite.name}"):
                outcome = suite.run(context)
            for result in outcome:
                entry = result.to_dict()
                entry['suite'] = suite.name
                results.append(entry)
            failures = [r.name for r in outcome if not r.passed]
            if failures:
                logger.warning(f"⚠️ {suite.name}: {len(failures)} propriété(s) en échec: {failures}")
            else:
                logger.info(f"✅ {suite.name}: {len(outcome)} propriétés vérifiées")
        return {
            'suite': name,
            'passed': sum(1 for r in results if r['passed']),
            'total': len(results),
            'properties': results,
        }

    def get_available_suites(self) -> Dict[str, Any]:
        """Retourne les suites disponibles avec leurs infos"""
        return {
            name: dict(suite.get_suite_info(), description=self.descriptions[name])
            for name, suite in self.suites.items()
        }
