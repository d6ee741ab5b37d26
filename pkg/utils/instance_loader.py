#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Instance Loader - Lecture des fichiers d'instance JSON

Un fichier décrit le corps, l'algèbre (constantes de structure ou carquois),
des modules nommés et des morphismes optionnels. Toute erreur est ancrée
sur un chemin JSON ($.modules.P1.action[0]) ou sur une ligne/colonne.
"""

import json
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from engine.algebra import Algebra, algebra_from_structure_constants
from engine.errors import AlgebraValidationError, ContractViolation, InstanceError
from engine.exactlin import as_matrix, check_modulus
from engine.module import (Module, direct_sum, quotient_module, radical_of_module,
                           regular_module, submodule)
from engine.quiver import QuiverPresentation, algebra_from_quiver, representation_module

logger = logging.getLogger(__name__)


@dataclass
class MorphismSpec:
    name: str
    source: str
    target: str
    matrix: np.ndarray
    expected: Dict[str, bool] = field(default_factory=dict)


@dataclass
class Instance:
    p: int
    algebra: Algebra
    algebra_type: str
    modules: Dict[str, Module]
    morphisms: Dict[str, MorphismSpec] = field(default_factory=dict)
    source: Optional[str] = None

    def module(self, name: str) -> Module:
        if name not in self.modules:
            raise InstanceError(f"unknown module '{name}'", '$.modules')
        return self.modules[name]


def _require(data: Dict, key: str, path: str):
    if not isinstance(data, dict) or key not in data:
        raise InstanceError(f"missing key '{key}'", path)
    return data[key]


def _matrix(data, p: int, path: str, rows: Optional[int] = None,
            cols: Optional[int] = None) -> np.ndarray:
    try:
        m = as_matrix(data, p, rows=rows, cols=cols)
    except (TypeError, ValueError) as e:
        raise InstanceError(f"invalid matrix: {e}", path)
    if rows is not None and cols is not None and m.shape != (rows, cols):
        raise InstanceError(f"expected a {rows}x{cols} matrix, got {m.shape[0]}x{m.shape[1]}", path)
    return m


def _parse_algebra(data: Dict, p: int):
    path = '$.algebra'
    kind = _require(data, 'type', path)
    try:
        if kind == 'structure_constants':
            table = _require(data, 'table', path)
            one = _require(data, 'one', path)
            algebra = algebra_from_structure_constants(table, one, p, labels=data.get('labels'))
            if 'dim' in data and data['dim'] != algebra.dim:
                raise InstanceError(f"declared dim {data['dim']} but table has dim {algebra.dim}",
                                    f'{path}.dim')
            return algebra
        if kind == 'quiver':
            arrows = []
            for i, arrow in enumerate(_require(data, 'arrows', path)):
                if isinstance(arrow, dict):
                    arrows.append((_require(arrow, 'source', f'{path}.arrows[{i}]'),
                                   _require(arrow, 'target', f'{path}.arrows[{i}]'),
                                   _require(arrow, 'label', f'{path}.arrows[{i}]')))
                elif isinstance(arrow, (list, tuple)) and len(arrow) == 3:
                    arrows.append(tuple(arrow))
                else:
                    raise InstanceError("arrow must be [source, target, label]",
                                        f'{path}.arrows[{i}]')
            quiver = QuiverPresentation.from_lists(_require(data, 'vertices', path), arrows,
                                                   data.get('relations', []))
            algebra, _ = algebra_from_quiver(quiver, p)
            return algebra
    except AlgebraValidationError as e:
        raise InstanceError(e.message, f"{path}.{e.path}" if e.path else path)
    except ContractViolation as e:
        raise InstanceError(str(e), path)
    raise InstanceError(f"unknown algebra type '{kind}'", f'{path}.type')


class _ModuleResolver:
    """Résout les modules nommés, y compris ceux définis à partir d'autres"""

    def __init__(self, algebra: Algebra, specs: Dict[str, Any]):
        self.algebra = algebra
        self.specs = specs
        self.resolved: Dict[str, Module] = {}
        self.in_progress: List[str] = []

    def get(self, name: str, path: str) -> Module:
        if name in self.resolved:
            return self.resolved[name]
        if name not in self.specs:
            raise InstanceError(f"unknown module '{name}'", path)
        if name in self.in_progress:
            raise InstanceError(f"circular module definition through '{name}'", path)
        self.in_progress.append(name)
        module = self._build(name, self.specs[name], f'$.modules.{name}')
        self.in_progress.pop()
        self.resolved[name] = module
        return module

    def _build(self, name: str, spec: Dict[str, Any], path: str) -> Module:
        a, p = self.algebra, self.algebra.p
        if not isinstance(spec, dict):
            raise InstanceError("module description must be an object", path)
        try:
            if spec.get('regular'):
                return regular_module(a)
            if 'representation' in spec:
                rep = spec['representation']
                return representation_module(a, _require(rep, 'dims', f'{path}.representation'),
                                             rep.get('maps', {}))
            if 'direct_sum' in spec:
                parts = [self.get(other, f'{path}.direct_sum') for other in spec['direct_sum']]
                return direct_sum(parts, a)[0]
            if 'submodule_of' in spec:
                ambient = self.get(spec['submodule_of'], f'{path}.submodule_of')
                basis = _matrix(_require(spec, 'basis', path), p, f'{path}.basis', cols=ambient.dim)
                return submodule(ambient, basis)[0]
            if 'quotient_of' in spec:
                ambient = self.get(spec['quotient_of'], f'{path}.quotient_of')
                basis = _matrix(_require(spec, 'basis', path), p, f'{path}.basis', cols=ambient.dim)
                return quotient_module(ambient, basis)[0]
            if 'radical_of' in spec:
                ambient = self.get(spec['radical_of'], f'{path}.radical_of')
                return submodule(ambient, radical_of_module(ambient))[0]
            dim = int(_require(spec, 'dim', path))
            action = _require(spec, 'action', path)
            if len(action) != a.dim:
                raise InstanceError(f"expected {a.dim} action matrices, got {len(action)}",
                                    f'{path}.action')
            mats = [_matrix(m, p, f'{path}.action[{i}]', rows=dim, cols=dim)
                    for i, m in enumerate(action)]
            stacked = np.stack(mats) if mats else np.zeros((0, dim, dim), dtype=np.int64)
            return Module(a, stacked)
        except ContractViolation as e:
            raise InstanceError(str(e), path)


def parse_instance(data: Dict[str, Any], source: Optional[str] = None) -> Instance:
    """Construit une instance validée à partir du JSON décodé"""
    if not isinstance(data, dict):
        raise InstanceError("instance must be a JSON object", '$')
    p_value = _require(_require(data, 'field', '$'), 'p', '$.field')
    try:
        p = check_modulus(p_value)
    except ContractViolation as e:
        raise InstanceError(str(e), '$.field.p')
    algebra_data = _require(data, 'algebra', '$')
    algebra = _parse_algebra(algebra_data, p)

    specs = data.get('modules', {})
    if not isinstance(specs, dict):
        raise InstanceError("modules must be an object", '$.modules')
    resolver = _ModuleResolver(algebra, specs)
    modules = {name: resolver.get(name, '$.modules') for name in specs}

    morphisms = {}
    for name, spec in (data.get('morphisms') or {}).items():
        path = f'$.morphisms.{name}'
        source_name = _require(spec, 'source', path)
        target_name = _require(spec, 'target', path)
        for ref in (source_name, target_name):
            if ref not in modules:
                raise InstanceError(f"unknown module '{ref}'", path)
        matrix = _matrix(_require(spec, 'matrix', path), p, f'{path}.matrix',
                         rows=modules[source_name].dim, cols=modules[target_name].dim)
        expected = {k: bool(v) for k, v in (spec.get('expected') or {}).items()}
        morphisms[name] = MorphismSpec(name, source_name, target_name, matrix, expected)

    logger.info(f"Instance chargée: p={p}, dim algèbre={algebra.dim}, {len(modules)} modules")
    return Instance(p, algebra, algebra_data.get('type'), modules, morphisms, source)


def load_instance(path: str) -> Instance:
    """Lit un fichier d'instance UTF-8"""
    try:
        with open(path, 'r', encoding='utf-8') as handle:
            text = handle.read()
    except OSError as e:
        raise InstanceError(f"cannot read instance file: {e.strerror}", path)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceError(f"invalid JSON: {e.msg}", f"line {e.lineno}, column {e.colno}")
    return parse_instance(data, source=path)
