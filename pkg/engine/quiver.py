#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Quiver Algebras - Algèbres de chemins avec relations monomiales

Les chemins sont lus dans l'ordre de parcours : ["alpha", "beta"] signifie
alpha puis beta, et le produit p * q est la concaténation p puis q
(non nul ssi but(p) = source(q) et le chemin obtenu évite les relations).
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Sequence, Tuple

import numpy as np

from config.settings import Config
from .algebra import Algebra
from .errors import AlgebraValidationError, ContractViolation
from .exactlin import as_matrix, check_modulus, identity, matmul

logger = logging.getLogger(__name__)


class Arrow(NamedTuple):
    source: str
    target: str
    label: str


class Path(NamedTuple):
    source: str
    target: str
    arrows: Tuple[str, ...]

    @property
    def length(self) -> int:
        return len(self.arrows)

    def label(self) -> str:
        return f"e_{self.source}" if not self.arrows else '*'.join(self.arrows)


@dataclass(frozen=True)
class QuiverPresentation:
    """Carquois fini et relations monomiales (chemins de longueur >= 2)"""
    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...]
    relations: Tuple[Tuple[str, ...], ...] = ()

    @classmethod
    def from_lists(cls, vertices: Sequence, arrows: Sequence,
                   relations: Sequence = ()) -> 'QuiverPresentation':
        quiver = cls(
            vertices=tuple(str(v) for v in vertices),
            arrows=tuple(Arrow(str(s), str(t), str(label)) for s, t, label in arrows),
            relations=tuple(tuple(str(a) for a in rel) for rel in relations),
        )
        quiver.validate()
        return quiver

    def arrow(self, label: str) -> Arrow:
        for a in self.arrows:
            if a.label == label:
                return a
        raise KeyError(label)

    def validate(self):
        if not self.vertices:
            raise AlgebraValidationError("a quiver needs at least one vertex", 'vertices')
        if len(set(self.vertices)) != len(self.vertices):
            raise AlgebraValidationError("duplicate vertex id", 'vertices')
        labels = [a.label for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise AlgebraValidationError("duplicate arrow label", 'arrows')
        vertex_set = set(self.vertices)
        for i, a in enumerate(self.arrows):
            if a.source not in vertex_set or a.target not in vertex_set:
                raise AlgebraValidationError(f"arrow '{a.label}' has an unknown endpoint",
                                             f'arrows[{i}]')
        by_label = {a.label: a for a in self.arrows}
        for i, rel in enumerate(self.relations):
            path = f'relations[{i}]'
            if len(rel) < 2:
                raise AlgebraValidationError("relations must have length >= 2", path)
            for label in rel:
                if label not in by_label:
                    raise AlgebraValidationError(f"unknown arrow '{label}'", path)
            for first, second in zip(rel, rel[1:]):
                if by_label[first].target != by_label[second].source:
                    raise AlgebraValidationError(
                        f"'{first}' then '{second}' is not composable", path
                    )

    def opposite(self) -> 'QuiverPresentation':
        return QuiverPresentation(
            vertices=self.vertices,
            arrows=tuple(Arrow(a.target, a.source, a.label) for a in self.arrows),
            relations=tuple(tuple(reversed(rel)) for rel in self.relations),
        )


def _surviving_paths(q: QuiverPresentation) -> List[Path]:
    """Chemins évitant les relations, par longueur puis en largeur d'abord"""
    relations = set(q.relations)
    longest = max((len(r) for r in q.relations), default=0)
    window = max(longest - 1, 1)
    # Au-delà de cette longueur, un chemin survivant se pompe : dimension infinie
    bound = len(q.arrows) ** window + window

    paths = [Path(v, v, ()) for v in q.vertices]
    level = [Path(a.source, a.target, (a.label,)) for a in q.arrows]
    length = 1
    while level:
        if length > bound:
            raise AlgebraValidationError(
                "relations leave an infinite-dimensional path algebra (a cycle survives)",
                'relations'
            )
        paths.extend(level)
        if len(paths) > Config.MAX_ALGEBRA_DIM:
            raise AlgebraValidationError(
                f"path algebra exceeds {Config.MAX_ALGEBRA_DIM} dimensions", 'relations'
            )
        following = []
        for path in level:
            for a in q.arrows:
                if a.source != path.target:
                    continue
                arrows = path.arrows + (a.label,)
                if any(arrows[-k:] in relations for k in range(2, min(longest, len(arrows)) + 1)):
                    continue
                following.append(Path(path.source, a.target, arrows))
        level = following
        length += 1
    return paths


def algebra_from_quiver(q: QuiverPresentation, p: int) -> Tuple[Algebra, List[str]]:
    """
    Algèbre de chemins kQ/I pour des relations monomiales

    Returns:
        (algèbre, étiquettes des chemins de base)
    """
    p = check_modulus(p)
    q.validate()
    paths = _surviving_paths(q)
    index = {path.arrows: i for i, path in enumerate(paths) if path.arrows}
    d = len(paths)
    table = np.zeros((d, d, d), dtype=np.int64)
    for i, left in enumerate(paths):
        for j, right in enumerate(paths):
            if left.target != right.source:
                continue
            if not left.arrows:
                table[i, j, j] = 1
            elif not right.arrows:
                table[i, j, i] = 1
            else:
                k = index.get(left.arrows + right.arrows)
                if k is not None:
                    table[i, j, k] = 1
    one = np.zeros(d, dtype=np.int64)
    one[[i for i, path in enumerate(paths) if not path.arrows]] = 1
    labels = [path.label() for path in paths]
    algebra = Algebra(table, one, p, labels=labels, validate=False, quiver=q)
    logger.debug(f"Algèbre de carquois: {len(q.vertices)} sommets, dim={d}")
    return algebra, labels


def _basis_index(a: Algebra) -> Dict[str, int]:
    if a.quiver is None:
        raise ContractViolation("algebra was not built from a quiver")
    return {label: i for i, label in enumerate(a.labels)}


def _position(index: Dict[str, int], label: str) -> int:
    if label not in index:
        raise ContractViolation(f"no basis element labelled '{label}'")
    return index[label]


def vertex_idempotents(a: Algebra) -> List[np.ndarray]:
    """Idempotents e_v dans l'ordre des sommets, repérés par l'étiquette du chemin trivial"""
    index = _basis_index(a)
    basis = identity(a.dim)
    return [basis[_position(index, Path(v, v, ()).label())] for v in a.quiver.vertices]


def representation_module(a: Algebra, dims: Dict[str, int],
                          maps: Dict[str, Sequence], validate: bool = True):
    """
    Module à droite d'une représentation (espaces aux sommets, matrices des flèches)

    La matrice de la flèche s -> t est de taille dim_s x dim_t (v -> v @ M).
    """
    from .module import Module

    index = _basis_index(a)
    q = a.quiver
    p = a.p
    sizes = [int(dims.get(v, 0)) for v in q.vertices]
    offsets = np.concatenate([[0], np.cumsum(sizes)]).astype(int)
    n = int(offsets[-1])
    block = {v: (int(offsets[i]), int(offsets[i + 1])) for i, v in enumerate(q.vertices)}

    arrow_mats: Dict[str, np.ndarray] = {}
    for arrow in q.arrows:
        (s0, s1), (t0, t1) = block[arrow.source], block[arrow.target]
        m = as_matrix(maps.get(arrow.label, []), p, rows=s1 - s0, cols=t1 - t0)
        if m.shape != (s1 - s0, t1 - t0):
            raise ContractViolation(
                f"arrow '{arrow.label}' needs a {s1 - s0}x{t1 - t0} matrix, got {m.shape}"
            )
        full = np.zeros((n, n), dtype=np.int64)
        full[s0:s1, t0:t1] = m
        arrow_mats[arrow.label] = full

    action = np.zeros((a.dim, n, n), dtype=np.int64)
    for path in _surviving_paths(q):
        i = _position(index, path.label())
        if not path.arrows:
            lo, hi = block[path.source]
            action[i, lo:hi, lo:hi] = identity(hi - lo)
            continue
        current = identity(n)
        for arrow_label in path.arrows:
            current = matmul(current, arrow_mats[arrow_label], p)
        action[i] = current
    return Module(a, action, validate=validate)
