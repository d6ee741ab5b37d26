#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Krull-Schmidt Engine - Décomposition en facteurs indécomposables

La récursion scinde un module par un idempotent de son algèbre
d'endomorphismes jusqu'à obtenir des facteurs à anneau d'endomorphismes
local (certificat déterministe). Chaque branche dérive sa propre graine
de celle du parent et de son indice.
"""

import logging
from dataclasses import dataclass, field
from itertools import chain, combinations, islice, product
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from config.settings import Config
from utils.seeding import derive_seed, make_rng
from .algebra import LocalityCertificate, is_local, primitive_idempotent_split
from .errors import (ContractViolation, EngineError, LasVegasExhaustedError,
                     ModulusTooSmallError)
from .exactlin import (Matrix, identity, inverse, is_invertible, left_kernel_basis,
                       mat_pow, matmul, minimal_polynomial, random_matrix, rank,
                       row_space_basis, rref, span_coordinates, subspace_intersection,
                       zeros)
from .module import (Module, end_algebra, hom_space, is_intertwiner,
                     split_idempotent)
from .polynomials import ext_gcd, factor_poly

logger = logging.getLogger(__name__)

Witness = Tuple[Matrix, Matrix]


@dataclass
class FittingSplit:
    """m = Im phi^r (+) Ker phi^r avec les témoins du lemme de Fitting"""
    exponent: int
    idempotent: Matrix
    image: Module
    kernel: Module
    image_witness: Witness
    kernel_witness: Witness

    @property
    def dims(self) -> Tuple[int, int]:
        return self.image.dim, self.kernel.dim


@dataclass
class Summand:
    module: Module
    iota: Matrix
    pi: Matrix
    certificate: LocalityCertificate
    end_dim: int


@dataclass
class SummandClass:
    """Classe d'isomorphie : représentant, multiplicité, témoins par copie"""
    representative: Module
    witnesses: List[Witness]
    certificate: LocalityCertificate
    end_dim: int
    fingerprint: Tuple = ()

    @property
    def multiplicity(self) -> int:
        return len(self.witnesses)

    @property
    def dim(self) -> int:
        return self.representative.dim


@dataclass
class Decomposition:
    parent: Module
    classes: List[SummandClass]
    seed: int = 0

    def instances(self) -> List[Tuple[int, Module, Matrix, Matrix]]:
        """Copies à plat : (indice de classe, module, iota, pi)"""
        out = []
        for c, summand_class in enumerate(self.classes):
            for iota, pi in summand_class.witnesses:
                out.append((c, summand_class.representative, iota, pi))
        return out

    def dims(self) -> List[Tuple[int, int]]:
        return sorted((c.dim, c.multiplicity) for c in self.classes)

    @property
    def total(self) -> int:
        return sum(c.multiplicity for c in self.classes)

    def check_witnesses(self) -> bool:
        """somme pi @ iota = id et iota @ pi = id pour chaque copie"""
        p, n = self.parent.p, self.parent.dim
        total = np.zeros((n, n), dtype=np.int64)
        for _, module, iota, pi in self.instances():
            if not np.array_equal(matmul(iota, pi, p), identity(module.dim)):
                return False
            if not is_intertwiner(iota, module, self.parent):
                return False
            if not is_intertwiner(pi, self.parent, module):
                return False
            total = (total + matmul(pi, iota, p)) % p
        return np.array_equal(total, identity(n))

    def to_report(self, witnesses: bool = False) -> Dict[str, Any]:
        summands = []
        for index, summand_class in enumerate(self.classes):
            block: Dict[str, Any] = {
                'index': index,
                'dim': summand_class.dim,
                'multiplicity': summand_class.multiplicity,
                'end_dim': summand_class.end_dim,
                'certificate': summand_class.certificate.to_dict(),
            }
            if witnesses:
                block['action'] = summand_class.representative.action.tolist()
                block['witnesses'] = [
                    {'iota': iota.tolist(), 'pi': pi.tolist()}
                    for iota, pi in summand_class.witnesses
                ]
            summands.append(block)
        return {
            'parent_dim': self.parent.dim,
            'summand_count': self.total,
            'summands': summands,
        }


@dataclass
class MatchResult:
    ok: bool
    permutation: List[int] = field(default_factory=list)
    isomorphisms: Dict[int, Matrix] = field(default_factory=dict)
    report: Dict[str, Any] = field(default_factory=dict)


@dataclass
class ExchangeResult:
    ok: bool
    t: int
    reindexing: List[int]
    summands: List[Tuple[Module, Matrix, Matrix]]
    report: Dict[str, Any] = field(default_factory=dict)


def _require_endomorphism(m: Module, phi: Matrix) -> Matrix:
    phi = np.asarray(phi, dtype=np.int64) % m.p
    if not is_intertwiner(phi, m, m):
        raise ContractViolation("phi is not an endomorphism of the module")
    return phi


def fitting_split(m: Module, phi: Matrix) -> FittingSplit:
    """
    Lemme de Fitting : m = Im phi^r (+) Ker phi^r

    r est le plus petit exposant avec rang(phi^r) = rang(phi^2r). Sur
    U = Im phi^r, phi^r induit un automorphisme G ; psi = G^-1 et
    l'idempotent psi phi^r projette sur U parallèlement à Ker phi^r.
    """
    phi = _require_endomorphism(m, phi)
    p, n = m.p, m.dim
    r = 1
    power = phi.copy()
    while r <= max(n, 1):
        if rank(power, p) == rank(mat_pow(power, 2, p), p):
            break
        r += 1
        power = matmul(power, phi, p)
    image = row_space_basis(power, p)
    k = image.shape[0]
    if k == 0:
        idempotent = np.zeros((n, n), dtype=np.int64)
    else:
        # phi^r = Q @ U, et G = U phi^r en coordonnées de U
        q = span_coordinates(power, image, p)
        g = matmul(image, q, p)
        idempotent = matmul(matmul(q, inverse(g, p), p), image, p)
    complement = (identity(n) - idempotent) % p
    image_part, iota1, pi1 = split_idempotent(m, idempotent)
    kernel_part, iota2, pi2 = split_idempotent(m, complement)
    logger.debug(f"Fitting: r={r}, dims=({image_part.dim}, {kernel_part.dim})")
    return FittingSplit(r, idempotent, image_part, kernel_part, (iota1, pi1), (iota2, pi2))


def fitting_subspaces(m: Module, phi: Matrix) -> Tuple[Matrix, Matrix, int]:
    """(Im phi^r, Ker phi^r, r) sans construire les facteurs"""
    phi = _require_endomorphism(m, phi)
    p = m.p
    split = fitting_split(m, phi)
    power = mat_pow(phi, split.exponent, p)
    return row_space_basis(power, p), left_kernel_basis(power, p), split.exponent


def primary_split(m: Module, phi: Matrix, seed: int = 0) -> List[Tuple[Module, Matrix, Matrix]]:
    """
    Décomposition primaire : Ker f_i(phi)^e_i pour chaque facteur du polynôme minimal
    """
    phi = _require_endomorphism(m, phi)
    p, n = m.p, m.dim
    if n == 0:
        return [(m, identity(0), identity(0))]
    f = minimal_polynomial(phi, p)
    factorization = factor_poly(f, seed=seed)
    if len(factorization) < 2:
        return [(m, identity(n), identity(n))]
    parts = []
    for g, multiplicity in factorization:
        primary = g ** multiplicity
        rest = f // primary
        _, _, t = ext_gcd(primary, rest)
        # t h vaut 1 modulo g^e et 0 modulo les autres facteurs
        idempotent = (t * rest).evaluate_matrix(phi)
        parts.append(split_idempotent(m, idempotent))
    return parts


def _random_primary_split(node: Module, end, seed: int) -> Optional[List[Tuple[Module, Matrix, Matrix]]]:
    rng = make_rng(seed)
    for attempt in range(Config.LAS_VEGAS_RETRIES):
        coordinates = random_matrix(rng, 1, end.dim, node.p)[0]
        parts = primary_split(node, end.matrix(coordinates), seed=derive_seed(seed, attempt))
        if len(parts) >= 2:
            return parts
    return None


def _decompose(node: Module, seed: int, pieces: List[Summand], depth: int = 0):
    if node.dim == 0:
        return
    end = end_algebra(node)
    gamma = end.algebra
    n = node.dim
    if gamma.p <= gamma.dim:
        raise ModulusTooSmallError(gamma.p, gamma.dim, 'End')
    certificate = is_local(gamma, seed)
    if certificate.is_local:
        pieces.append(Summand(node, identity(n), identity(n), certificate, gamma.dim))
        logger.debug(f"{'  ' * depth}indécomposable: dim={n}, dim End={gamma.dim}")
        return
    idempotent = certificate.idempotent
    parts = None
    if idempotent is None:
        try:
            idempotent = primitive_idempotent_split(gamma, seed)
        except LasVegasExhaustedError:
            # repli : éclatement primaire d'endomorphismes aléatoires
            logger.warning(f"⚠️ Idempotent introuvable dans End (dim={gamma.dim}), repli primaire")
            parts = _random_primary_split(node, end, seed)
            if parts is None:
                raise
    if parts is None:
        e = end.matrix(idempotent)
        parts = [split_idempotent(node, e),
                 split_idempotent(node, (identity(n) - e) % node.p)]

    for index, (child, iota, pi) in enumerate(parts):
        if not 0 < child.dim < n:
            raise EngineError(f"split did not reduce dimension ({child.dim} from {n})")
        found: List[Summand] = []
        _decompose(child, derive_seed(seed, index), found, depth + 1)
        for s in found:
            pieces.append(Summand(s.module, matmul(s.iota, iota, node.p),
                                  matmul(pi, s.pi, node.p), s.certificate, s.end_dim))


def indecomposable_isomorphism(m: Module, n: Module) -> Optional[Matrix]:
    """
    Isomorphisme entre indécomposables, ou None

    m ~ n ssi psi_j o phi_i est inversible pour un couple de vecteurs de base ;
    phi_i est alors un isomorphisme.
    """
    if m.dim != n.dim:
        return None
    if m.dim == 0:
        return identity(0)
    forward = hom_space(m, n)
    if forward.dim == 0:
        return None
    backward = hom_space(n, m)
    p = m.p
    for phi in forward.basis:
        for psi in backward.basis:
            if is_invertible(matmul(phi, psi, p), p):
                return phi
    return None


def _fingerprint(m: Module) -> Tuple:
    if m.dim == 0:
        return ()
    reduced, _, r = rref(m.action.reshape(m.algebra.dim, -1), m.p)
    return tuple(int(v) for v in reduced[:r].ravel())


def krull_schmidt(m: Module, seed: int = 0) -> Decomposition:
    """
    Décomposition de Krull-Schmidt avec certificats de localité

    Args:
        m: Module à décomposer
        seed: Graine racine (les branches dérivent la leur)

    Returns:
        Décomposition groupée par classes d'isomorphie, triée par dimension
        décroissante puis par empreinte RREF des actions
    """
    pieces: List[Summand] = []
    _decompose(m, seed, pieces)

    classes: List[SummandClass] = []
    p = m.p
    for piece in pieces:
        for summand_class in classes:
            if summand_class.dim != piece.module.dim or summand_class.end_dim != piece.end_dim:
                continue
            theta = indecomposable_isomorphism(summand_class.representative, piece.module)
            if theta is None:
                continue
            theta_inv = inverse(theta, p)
            summand_class.witnesses.append((matmul(theta, piece.iota, p),
                                            matmul(piece.pi, theta_inv, p)))
            break
        else:
            classes.append(SummandClass(piece.module, [(piece.iota, piece.pi)],
                                        piece.certificate, piece.end_dim,
                                        _fingerprint(piece.module)))
    classes.sort(key=lambda c: (-c.dim, c.fingerprint))
    logger.debug(f"Krull-Schmidt: dim={m.dim}, {len(pieces)} facteurs, {len(classes)} classes")
    return Decomposition(m, classes, seed)


def is_isomorphic(m: Module, n: Module, seed: int = 0) -> Tuple[bool, Optional[Matrix]]:
    """
    Test d'isomorphie avec témoin vérifié

    Returns:
        (isomorphes ?, isomorphisme m -> n ou None)
    """
    if not m.algebra.same_structure(n.algebra):
        raise ContractViolation("modules live over different algebras")
    if m.dim != n.dim:
        return False, None
    p = m.p
    if m is n or np.array_equal(m.action, n.action):
        return True, identity(m.dim)
    forward = hom_space(m, n)
    if forward.dim != hom_space(m, m).dim or forward.dim != hom_space(n, n).dim:
        return False, None
    for phi in forward.basis:
        if is_invertible(phi, p):
            return True, phi

    dm = krull_schmidt(m, seed)
    dn = krull_schmidt(n, seed)
    match = match_decompositions(dm, dn)
    if not match.ok:
        return False, None
    instances_m = dm.instances()
    instances_n = dn.instances()
    theta = np.zeros((m.dim, n.dim), dtype=np.int64)
    for i, j in enumerate(match.permutation):
        class_m, _, _, pi_m = instances_m[i]
        _, _, iota_n, _ = instances_n[j]
        piece = matmul(matmul(pi_m, match.isomorphisms[class_m], p), iota_n, p)
        theta = (theta + piece) % p
    if not (is_invertible(theta, p) and is_intertwiner(theta, m, n)):
        raise EngineError("assembled isomorphism failed verification")
    return True, theta


def match_decompositions(d1: Decomposition, d2: Decomposition) -> MatchResult:
    """
    Bijection entre copies de facteurs avec is_isomorphic vrai sur chaque paire

    En cas d'échec, le rapport décrit le contre-exemple.
    """
    if d1.parent.dim != d2.parent.dim or \
            hom_space(d1.parent, d1.parent).dim != hom_space(d2.parent, d2.parent).dim:
        return MatchResult(False, report={
            'reason': 'parents_not_isomorphic',
            'dims': [d1.parent.dim, d2.parent.dim],
        })
    if d1.total != d2.total:
        return MatchResult(False, report={
            'reason': 'summand_count_differs',
            'counts': [d1.total, d2.total],
        })

    class_map: Dict[int, int] = {}
    isomorphisms: Dict[int, Matrix] = {}
    for i, c1 in enumerate(d1.classes):
        for j, c2 in enumerate(d2.classes):
            if j in class_map.values() or c1.dim != c2.dim:
                continue
            theta = indecomposable_isomorphism(c1.representative, c2.representative)
            if theta is not None:
                class_map[i] = j
                isomorphisms[i] = theta
                break
        else:
            return MatchResult(False, report={
                'reason': 'no_isomorphic_summand',
                'summand_index': i,
                'dim': c1.dim,
            })
        if c1.multiplicity != d2.classes[class_map[i]].multiplicity:
            return MatchResult(False, report={
                'reason': 'multiplicity_differs',
                'summand_index': i,
                'multiplicities': [c1.multiplicity, d2.classes[class_map[i]].multiplicity],
            })

    offsets2 = np.cumsum([0] + [c.multiplicity for c in d2.classes])
    permutation = []
    for i, c1 in enumerate(d1.classes):
        start = int(offsets2[class_map[i]])
        permutation.extend(range(start, start + c1.multiplicity))
    return MatchResult(True, permutation, isomorphisms)


def internal_sum_witnesses(parent: Module, embeddings: List[Matrix]) -> Optional[List[Witness]]:
    """
    Témoins d'une somme directe interne donnée par ses injections dans parent

    Les lignes empilées des iota doivent former une base de parent ; les pi
    sont alors les blocs de colonnes de l'inverse.

    Returns:
        Liste de (iota, pi) avec iota @ pi = 1 et somme des pi @ iota = 1, ou None
    """
    p, n = parent.p, parent.dim
    embeddings = [np.asarray(iota, dtype=np.int64).reshape(-1, n) % p for iota in embeddings]
    if sum(iota.shape[0] for iota in embeddings) != n:
        return None
    stacked = np.vstack(embeddings) if embeddings else zeros(0, n)
    inv = inverse(stacked, p)
    if inv is None:
        return None
    witnesses, start = [], 0
    for iota in embeddings:
        stop = start + iota.shape[0]
        witnesses.append((iota, inv[:, start:stop].copy()))
        start = stop
    return witnesses


def exchange_check(decomposition: Decomposition, idempotent: Matrix,
                   seed: int = 0) -> ExchangeResult:
    """
    Propriété d'échange : X = X1 (+) ... (+) Xt (+) X' après réindexation

    X' = Im e, X'' = Im (1 - e). On décompose X'', puis on cherche parmi les
    Xi de même type d'isomorphie une sous-famille dont les injections d'origine,
    jointes à celle de X', forment une somme directe interne égale à X.
    """
    parent = decomposition.parent
    p, n = parent.p, parent.dim
    e = np.asarray(idempotent, dtype=np.int64) % p
    x_prime, iota1, _ = split_idempotent(parent, e)
    x_second, _, _ = split_idempotent(parent, (identity(n) - e) % p)
    inner = krull_schmidt(x_second, seed)

    instances = decomposition.instances()
    choices = []
    for inner_class in inner.classes:
        target = None
        for c, summand_class in enumerate(decomposition.classes):
            if summand_class.dim == inner_class.dim and indecomposable_isomorphism(
                    summand_class.representative, inner_class.representative) is not None:
                target = c
                break
        copies = [i for i, instance in enumerate(instances) if instance[0] == target]
        if target is None or len(copies) < inner_class.multiplicity:
            return ExchangeResult(False, 0, [], [], report={
                'reason': 'no_matching_summand',
                'dim': inner_class.dim,
            })
        choices.append(list(combinations(copies, inner_class.multiplicity)))

    tried = 0
    for selection in islice(product(*choices), Config.BRUTE_FORCE_LIMIT):
        tried += 1
        used = sorted(chain.from_iterable(selection))
        embeddings = [instances[i][2] for i in used] + [iota1]
        witnesses = internal_sum_witnesses(parent, embeddings)
        if witnesses is None:
            continue
        modules = [instances[i][1] for i in used] + [x_prime]
        summands = [(module, iota, pi) for module, (iota, pi) in zip(modules, witnesses)]
        logger.debug(f"Échange: complément trouvé après {tried} essais")
        return ExchangeResult(True, len(used), used, summands)
    return ExchangeResult(False, 0, [], [], report={
        'reason': 'no_complement',
        'tried': tried,
    })


def random_endomorphism(m: Module, rng: np.random.Generator) -> Matrix:
    end = hom_space(m, m)
    if end.dim == 0:
        return np.zeros((m.dim, m.dim), dtype=np.int64)
    return end.element(random_matrix(rng, 1, end.dim, m.p)[0])


def random_idempotent(m: Module, seed: int) -> Matrix:
    """Idempotent de End(m) : somme de projecteurs d'une décomposition tirée au hasard"""
    rng = make_rng(seed)
    decomposition = krull_schmidt(m, seed)
    p, n = m.p, m.dim
    e = np.zeros((n, n), dtype=np.int64)
    for _, _, iota, pi in decomposition.instances():
        if rng.integers(0, 2):
            e = (e + matmul(pi, iota, p)) % p
    # conjugaison par un automorphisme aléatoire de m
    for _ in range(Config.LAS_VEGAS_RETRIES):
        u = random_endomorphism(m, rng)
        u_inv = inverse(u, p)
        if u_inv is not None:
            return matmul(matmul(u_inv, e, p), u, p)
    return e


def fitting_identity_holds(m: Module, phi: Matrix) -> bool:
    """dim Im phi^r + dim Ker phi^r = dim m et intersection nulle"""
    image, kernel, _ = fitting_subspaces(m, phi)
    if image.shape[0] + kernel.shape[0] != m.dim:
        return False
    return subspace_intersection(image, kernel, m.p).shape[0] == 0
