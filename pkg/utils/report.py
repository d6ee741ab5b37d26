#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Report - Rapports texte et JSON des commandes

Le JSON est trié et indenté de façon fixe, sans horodatage ni durée :
deux exécutions avec la même graine produisent les mêmes octets.
"""

import json
from typing import Any, Dict, List, Optional

from config.settings import Config


def build_report(command: Dict[str, Any], seed: int, p: int,
                 algebra: Optional[Dict[str, Any]], body: Dict[str, Any]) -> Dict[str, Any]:
    """Enveloppe commune à toutes les commandes"""
    return {
        'schema_version': Config.SCHEMA_VERSION,
        'engine_version': Config.ENGINE_VERSION,
        'command': command,
        'seed': seed,
        'field': {'p': p},
        'algebra': algebra,
        'result': body,
    }


def dump_report(report: Dict[str, Any]) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False)


def _format_matrix(matrix: List[List[int]], indent: str) -> List[str]:
    return [indent + ' '.join(f"{v:>3}" for v in row) for row in matrix]


def _render_decomposition(result: Dict[str, Any]) -> List[str]:
    lines = [f"Module de dimension {result['parent_dim']} : "
             f"{result['summand_count']} facteurs indécomposables"]
    if not result['summands']:
        lines.append("  (module nul : aucune composante)")
    for block in result['summands']:
        certificate = block['certificate']
        lines.append(f"  [{block['index']}] dim {block['dim']} x{block['multiplicity']} "
                     f"(dim End = {block['end_dim']}, certificat : {certificate['kind']})")
        for w, witness in enumerate(block.get('witnesses', [])):
            lines.append(f"      iota[{w}] :")
            lines.extend(_format_matrix(witness['iota'], '        '))
    return lines


def _render_cover(result: Dict[str, Any]) -> List[str]:
    certificate = result['essential_certificate']
    lines = [
        f"Couverture projective : dim {result['cover_dim']} -> dim {result['target_dim']}",
        f"  facteurs : {', '.join(result['summands']) or '(aucun)'}",
        f"  noyau : dim {result['kernel_dim']} "
        f"(contenu dans le radical : {'oui' if certificate['kernel_in_radical'] else 'non'})",
    ]
    if 'epi' in result:
        lines.append("  épi :")
        lines.extend(_format_matrix(result['epi'], '    '))
    return lines


def _render_suite(result: Dict[str, Any]) -> List[str]:
    lines = [f"Suite '{result['suite']}' : {result['passed']}/{result['total']} propriétés vérifiées"]
    for prop in result['properties']:
        mark = '✅' if prop['passed'] else '❌'
        lines.append(f"  {mark} {prop['name']}: {prop['detail']}")
        if not prop['passed'] and prop.get('counterexample'):
            lines.append(f"      contre-exemple : {json.dumps(prop['counterexample'], sort_keys=True)}")
    return lines


def render_text(report: Dict[str, Any]) -> str:
    """Rendu lisible, dérivé uniquement du rapport JSON"""
    command = report['command']
    result = report['result']
    lines = [f"{command['verb']} (p={report['field']['p']}, seed={report['seed']})"]
    kind = result.get('kind')
    if kind == 'decomposition':
        lines.extend(_render_decomposition(result))
    elif kind == 'projective_cover':
        lines.extend(_render_cover(result))
    elif kind == 'suite':
        lines.extend(_render_suite(result))
    else:
        for key in sorted(result):
            if key in ('kind', 'basis'):
                continue
            lines.append(f"  {key}: {json.dumps(result[key], sort_keys=True)}")
        for f, matrix in enumerate(result.get('basis', [])):
            lines.append(f"  base[{f}] :")
            lines.extend(_format_matrix(matrix, '    '))
    return '\n'.join(lines)
