#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Krull-Schmidt Engine - Interface en ligne de commande

Décomposition de modules de dimension finie sur F_p, couvertures
projectives, espaces Hom / End / Rad et suites de propriétés.

Les rapports vont sur stdout, les diagnostics et les durées sur stderr.
Codes de sortie : 0 succès, 1 propriété en échec, 2 instance invalide,
3 module trop petit pour le radical, 4 essais Las Vegas épuisés.
"""

import functools
import logging
import sys
from typing import Any, Callable, Dict, Optional

import click

from config.settings import get_config
from engine.decompose import is_isomorphic, krull_schmidt
from engine.errors import EngineError, InstanceError, ModulusTooSmallError
from engine.module import end_algebra, hom_space
from engine.projcover import projective_cover, rad_hom
from suites.base_suite import SuiteContext
from suites.suite_selector import SuiteSelector
from utils.instance_loader import Instance, load_instance
from utils.performance_monitor import PerformanceMonitor
from utils.report import build_report, dump_report, render_text

config = get_config()

# Configuration du logging : stderr uniquement
logging.basicConfig(
    level=config.LOG_LEVEL,
    format=config.LOG_FORMAT,
    stream=sys.stderr
)
logger = logging.getLogger(__name__)

performance_monitor = PerformanceMonitor()
suite_selector = SuiteSelector(performance_monitor)

SEED = click.IntRange(0, 2 ** 64 - 1)


def _emit(report: Dict[str, Any], as_json: bool):
    click.echo(dump_report(report) if as_json else render_text(report))


def _require_radical(instance: Instance):
    """Le radical de l'algèbre n'est calculable que pour p > dim A"""
    if instance.p <= instance.algebra.dim:
        raise ModulusTooSmallError(instance.p, instance.algebra.dim)


def engine_command(verb: str, radical: bool = False):
    """
    Charge l'instance, exécute la commande et traduit les erreurs en codes de sortie

    La fonction décorée reçoit l'instance chargée et retourne le corps du rapport.
    """
    def decorator(func: Callable[..., Dict[str, Any]]):
        @functools.wraps(func)
        def wrapper(file: str, seed: int, as_json: bool, **kwargs):
            ctx = click.get_current_context()
            try:
                with performance_monitor.track(verb):
                    instance = load_instance(file)
                    if radical:
                        _require_radical(instance)
                    body = func(instance, seed=seed, **kwargs)
            except InstanceError as e:
                logger.error(f"❌ Instance invalide: {e}")
                ctx.exit(e.exit_code)
            except EngineError as e:
                logger.error(f"❌ {type(e).__name__}: {e}")
                ctx.exit(e.exit_code)
            finally:
                performance_monitor.log_summary(logging.DEBUG)

            command = {'verb': verb, 'file': file}
            command.update({k: v for k, v in kwargs.items() if v is not None})
            report = build_report(command, seed, instance.p, instance.algebra.to_dict(), body)
            _emit(report, as_json)
            if body.get('kind') == 'suite' and body['passed'] != body['total']:
                ctx.exit(1)
        return wrapper
    return decorator


def common_options(func):
    func = click.option('--json', 'as_json', is_flag=True,
                        help='Rapport JSON (trié, octet pour octet reproductible)')(func)
    func = click.option('--seed', type=SEED, default=config.DEFAULT_SEED, show_default=True,
                        help='Graine racine de tous les chemins aléatoires')(func)
    return func


@click.group()
@click.version_option(config.ENGINE_VERSION, prog_name='ks-engine')
def cli():
    """Moteur Krull-Schmidt exact sur F_p"""


@cli.command()
@click.argument('file', type=click.Path(dir_okay=False))
@click.argument('module')
@common_options
@click.option('--witnesses', is_flag=True, help='Inclut les matrices iota / pi')
@engine_command('decompose')
def decompose(instance: Instance, seed: int, module: str, witnesses: bool) -> Dict[str, Any]:
    """Décompose MODULE en facteurs indécomposables"""
    decomposition = krull_schmidt(instance.module(module), seed)
    logger.info(f"✅ {module}: {decomposition.total} facteurs, {len(decomposition.classes)} classes")
    return dict(decomposition.to_report(witnesses=witnesses), kind='decomposition')


@cli.command()
@click.argument('file', type=click.Path(dir_okay=False))
@click.argument('module')
@common_options
@click.option('--witnesses', is_flag=True, help="Inclut l'épimorphisme et le noyau")
@engine_command('projcover', radical=True)
def projcover(instance: Instance, seed: int, module: str, witnesses: bool) -> Dict[str, Any]:
    """Couverture projective de MODULE"""
    cover = projective_cover(instance.module(module), seed)
    return dict(cover.to_report(witnesses=witnesses), kind='projective_cover')


@cli.command()
@click.argument('file', type=click.Path(dir_okay=False))
@common_options
@click.option('--suite', type=click.Choice(['all'] + suite_selector.names()),
              default='all', show_default=True)
@engine_command('verify')
def verify(instance: Instance, seed: int, suite: str) -> Dict[str, Any]:
    """Exécute les suites de propriétés sur l'instance"""
    context = SuiteContext.from_instance(instance, seed, config)
    return dict(suite_selector.run(suite, context), kind='suite')


def _hom_body(space, witnesses: bool) -> Dict[str, Any]:
    body: Dict[str, Any] = {
        'source_dim': space.source.dim,
        'target_dim': space.target.dim,
        'dim': space.dim,
    }
    if witnesses:
        body['basis'] = space.basis.tolist()
    return body


@cli.command()
@click.argument('file', type=click.Path(dir_okay=False))
@click.argument('source')
@click.argument('target')
@common_options
@click.option('--witnesses', is_flag=True, help='Inclut une base')
@engine_command('hom')
def hom(instance: Instance, seed: int, source: str, target: str,
        witnesses: bool) -> Dict[str, Any]:
    """Espace Hom(SOURCE, TARGET)"""
    space = hom_space(instance.module(source), instance.module(target))
    return dict(_hom_body(space, witnesses), kind='hom')


@cli.command()
@click.argument('file', type=click.Path(dir_okay=False))
@click.argument('module')
@common_options
@click.option('--witnesses', is_flag=True, help='Inclut une base et les constantes de structure')
@engine_command('end')
def end(instance: Instance, seed: int, module: str, witnesses: bool) -> Dict[str, Any]:
    """Algèbre End(MODULE)"""
    algebra = end_algebra(instance.module(module))
    body = _hom_body(algebra.hom, witnesses)
    if witnesses:
        body['table'] = algebra.algebra.table.tolist()
    return dict(body, kind='end')


@cli.command()
@click.argument('file', type=click.Path(dir_okay=False))
@click.argument('source')
@click.argument('target')
@common_options
@click.option('--witnesses', is_flag=True, help='Inclut une base')
@engine_command('radhom', radical=True)
def radhom(instance: Instance, seed: int, source: str, target: str,
           witnesses: bool) -> Dict[str, Any]:
    """Radical Rad(SOURCE, TARGET) de la catégorie des modules"""
    space = rad_hom(instance.module(source), instance.module(target))
    body = _hom_body(space, witnesses)
    body['hom_dim'] = space.hom_dim
    return dict(body, kind='radhom')


@cli.command('is-iso')
@click.argument('file', type=click.Path(dir_okay=False))
@click.argument('first')
@click.argument('second')
@common_options
@click.option('--witnesses', is_flag=True, help="Inclut l'isomorphisme trouvé")
@engine_command('is-iso')
def is_iso(instance: Instance, seed: int, first: str, second: str,
           witnesses: bool) -> Dict[str, Any]:
    """Teste si FIRST et SECOND sont isomorphes"""
    isomorphic, theta = is_isomorphic(instance.module(first), instance.module(second), seed)
    body: Dict[str, Any] = {'isomorphic': isomorphic}
    if witnesses and theta is not None:
        body['isomorphism'] = theta.tolist()
    return dict(body, kind='is_iso')


def main(argv: Optional[list] = None):
    validation = config.validate_config()
    for warning in validation['warnings']:
        logger.warning(f"⚠️ {warning}")
    if not validation['is_valid']:
        for error in validation['errors']:
            logger.error(f"❌ {error}")
        sys.exit(1)
    cli.main(args=argv, prog_name='ks-engine')


if __name__ == '__main__':
    main()
