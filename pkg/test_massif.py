#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Krull-Schmidt Engine - Campagnes de vérification massive

Dix campagnes sur des algèbres de carquois aléatoires (p = 29 ou 31),
des modules aléatoires et les fixtures de test_data/. Chaque campagne
réutilise les propriétés des suites ; un échec donne un contre-exemple.

Exécution directe : python test_massif.py [graine]
"""

import logging
import sys
import time
from typing import Any, Callable, Dict, List, Tuple

import pytest
from click.testing import CliRunner

from app import cli
from config.settings import Config, get_config
from engine.decompose import krull_schmidt
from engine.module import regular_module
from suites.base_suite import PropertyResult, PropertySuite, SuiteContext
from suites.covers_suite import CoversSuite
from suites.fitting_suite import FittingSuite
from suites.radical_suite import RadicalSuite
from suites.uniqueness_suite import UniquenessSuite
from utils.instance_loader import load_instance
from utils.random_instances import linear_quiver_algebra, random_module, random_quiver_algebra
from utils.seeding import derive_seed

logger = logging.getLogger(__name__)

CAMPAIGN_ALGEBRAS = 10
MODULES_PER_ALGEBRA = 2
# modules engendrés par deux éléments : dim End <= 2 dim m <= 24 < p
PRIMES = (29, 31)


class MassCampaignRunner:
    """
    Construit le corpus aléatoire une fois puis exécute les campagnes

    Attributes:
        seed: Graine racine du corpus
        config: Classe de configuration (tailles d'échantillons)
        contexts: Un SuiteContext par algèbre aléatoire
    """

    def __init__(self, seed: int = 0, config: type = Config):
        self.seed = seed
        self.config = config
        self.contexts = self._build_contexts()
        self.suites: Dict[str, PropertySuite] = {
            'radical': RadicalSuite(),
            'covers': CoversSuite(),
            'uniqueness': UniquenessSuite(),
            'fitting': FittingSuite(),
        }
        self.campaigns: Dict[int, Tuple[str, Callable[[], List[PropertyResult]]]] = {
            1: ("identité de Fitting", self.campaign_fitting),
            2: ("unicité de Krull-Schmidt", self.campaign_uniqueness),
            3: ("oracle des idempotents", self.campaign_oracle),
            4: ("radical de Jacobson", self.campaign_radical),
            5: ("Nakayama", self.campaign_nakayama),
            6: ("couvertures projectives", self.campaign_covers),
            7: ("radical catégorique", self.campaign_projrad),
            8: ("carquois linéaires", self.campaign_linear_quivers),
            9: ("propriété d'échange", self.campaign_exchange),
            10: ("déterminisme", self.campaign_determinism),
        }

    def _build_contexts(self) -> List[SuiteContext]:
        contexts = []
        for index in range(CAMPAIGN_ALGEBRAS):
            algebra = random_quiver_algebra(derive_seed(self.seed, index), PRIMES[index % 2])
            modules = {
                f"random[{index}.{k}]": random_module(algebra, derive_seed(self.seed, 1000 + 10 * index + k))
                for k in range(MODULES_PER_ALGEBRA)
            }
            contexts.append(SuiteContext(algebra, modules, [], derive_seed(self.seed, index),
                                         self.config))
        logger.debug(f"Corpus de campagne: {len(contexts)} algèbres")
        return contexts

    def _run_property(self, suite: str, prop: str,
                      contexts: List[SuiteContext]) -> List[PropertyResult]:
        runner = self.suites[suite]
        func = dict(runner.properties())[prop]
        return [runner.check(prop, func, context) for context in contexts]

    def campaign_fitting(self) -> List[PropertyResult]:
        # fitting_identity tire son propre corpus aléatoire
        return self._run_property('fitting', 'fitting_identity', self.contexts[:1]) + \
            self._run_property('fitting', 'fitting_witnesses', self.contexts)

    def campaign_uniqueness(self) -> List[PropertyResult]:
        return self._run_property('uniqueness', 'seeds_match', self.contexts)

    def campaign_oracle(self) -> List[PropertyResult]:
        return self._run_property('uniqueness', 'oracle_equivalence', self.contexts) + \
            self._run_property('radical', 'locality_oracle', self.contexts)

    def campaign_radical(self) -> List[PropertyResult]:
        results = []
        for prop in ('radical_nilpotent_ideal', 'quotient_semisimple', 'opposite_radical',
                     'jrad_units'):
            results += self._run_property('radical', prop, self.contexts)
        return results

    def campaign_nakayama(self) -> List[PropertyResult]:
        return self._run_property('radical', 'nakayama', self.contexts)

    def campaign_covers(self) -> List[PropertyResult]:
        return self._run_property('covers', 'covers_essential', self.contexts) + \
            self._run_property('covers', 'cover_uniqueness', self.contexts)

    def campaign_projrad(self) -> List[PropertyResult]:
        kxy = load_instance(f"{self.config.TEST_DATA_DIR}/kxy_x2y2.json")
        fixture = SuiteContext.from_instance(kxy, self.seed, self.config)
        return self._run_property('covers', 'projrad_projective_targets', self.contexts) + \
            self._run_property('covers', 'instance_morphisms', [fixture])

    def campaign_linear_quivers(self) -> List[PropertyResult]:
        results = []
        for n in range(2, 6):
            decomposition = krull_schmidt(regular_module(linear_quiver_algebra(n, p=17)), self.seed)
            observed = [c.dim for c in decomposition.classes]
            expected = list(range(n, 0, -1))
            ok = observed == expected and all(c.multiplicity == 1 for c in decomposition.classes)
            results.append(PropertyResult(f"linear_A{n}", ok, f"dims {observed}",
                                          {} if ok else {'expected': expected}))
        return results

    def campaign_exchange(self) -> List[PropertyResult]:
        return self._run_property('uniqueness', 'exchange', self.contexts)

    def campaign_determinism(self) -> List[PropertyResult]:
        results = self._run_property('uniqueness', 'determinism', self.contexts)
        runner = CliRunner()
        args = ['decompose', f"{self.config.TEST_DATA_DIR}/upper_triangular.json", 'sum',
                '--json', '--witnesses', '--seed', str(self.seed)]
        first, second = runner.invoke(cli, args), runner.invoke(cli, args)
        ok = first.exit_code == 0 and first.output == second.output
        results.append(PropertyResult('cli_decompose', ok, "octets identiques" if ok else
                                      f"codes {first.exit_code}/{second.exit_code}"))
        return results

    def run(self, number: int) -> Dict[str, Any]:
        title, campaign = self.campaigns[number]
        start = time.time()
        results = campaign()
        failures = [r.to_dict() for r in results if not r.passed]
        return {
            'campaign': number,
            'title': title,
            'checks': len(results),
            'skipped': sum(1 for r in results if r.skipped),
            'failures': failures,
            'duration': time.time() - start,
        }

    def run_all(self) -> List[Dict[str, Any]]:
        return [self.run(number) for number in sorted(self.campaigns)]


@pytest.fixture(scope='module')
def campaign_runner():
    return MassCampaignRunner(seed=0, config=get_config('testing'))


@pytest.mark.parametrize('number', range(1, 11))
def test_campaign(campaign_runner, number):
    outcome = campaign_runner.run(number)
    assert outcome['checks'] > 0
    assert outcome['failures'] == [], outcome['failures']


def test_corpus_respects_size_bounds(campaign_runner):
    for context in campaign_runner.contexts:
        assert context.algebra.dim <= 8
        assert context.algebra.p > context.algebra.dim
        assert all(m.dim <= 12 for m in context.modules.values())


def test_unexpected_error_becomes_failure(campaign_runner):
    def broken(context):
        raise ValueError("cannot reshape array")

    result = campaign_runner.suites['radical'].check('broken', broken, campaign_runner.contexts[0])
    assert not result.passed
    assert not result.skipped
    assert 'ValueError' in result.detail


def test_locality_oracle_accepts_zero_module(campaign_runner):
    a2 = load_instance(f"{campaign_runner.config.TEST_DATA_DIR}/a2_quiver.json")
    context = SuiteContext.from_instance(a2, 0, campaign_runner.config)
    assert any(m.dim == 0 for m in context.modules.values())
    suite = campaign_runner.suites['radical']
    result = suite.check('locality_oracle', suite.locality_oracle, context)
    assert result.passed and not result.skipped, result.detail


def main():
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr)
    seed = int(sys.argv[1]) if len(sys.argv) > 1 else 0
    print(f"🚀 Campagnes Krull-Schmidt (graine {seed})")
    runner = MassCampaignRunner(seed, get_config())
    total_failures = 0
    for outcome in runner.run_all():
        mark = '✅' if not outcome['failures'] else '❌'
        print(f"{mark} [{outcome['campaign']:>2}] {outcome['title']}: {outcome['checks']} vérifications, "
              f"{outcome['skipped']} non applicables, ⏱️ {outcome['duration']:.2f}s")
        for failure in outcome['failures']:
            print(f"     {failure['name']}: {failure['detail']}")
        total_failures += len(outcome['failures'])
    sys.exit(1 if total_failures else 0)


if __name__ == '__main__':
    main()
