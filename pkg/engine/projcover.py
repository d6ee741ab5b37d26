#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Projective Covers - Simples, projectifs indécomposables, couvertures projectives
et radical catégorique Rad(X, Y)

L'essentialité d'un épimorphisme est décidée par le critère
noyau contenu dans le radical de la source.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, NamedTuple, Optional

import numpy as np

from config.settings import Config
from utils.seeding import make_rng
from .algebra import Algebra, LocalityCertificate
from .decompose import indecomposable_isomorphism, krull_schmidt
from .errors import ContractViolation, EngineError, VerificationFailure
from .exactlin import (Matrix, identity, in_row_span, is_invertible, kernel_basis,
                       left_kernel_basis, matmul, random_matrix, rank,
                       row_space_basis, solve_linear, zeros)
from .module import (Module, direct_sum, end_algebra, hom_space,
                     is_intertwiner, radical_of_module, regular_module, submodule,
                     top, zero_module)
from .quiver import vertex_idempotents

logger = logging.getLogger(__name__)


@dataclass
class ProjectiveIndecomposable:
    module: Module
    multiplicity: int
    label: str
    certificate: LocalityCertificate
    simple: Optional[Module] = None
    top_projection: Optional[Matrix] = None


@dataclass
class CoverResult:
    """Couverture projective epi : cover -> target"""
    target: Module
    cover: Module
    epi: Matrix
    kernel_basis: Matrix
    essential_certificate: Dict[str, Any]
    labels: List[str] = field(default_factory=list)

    def to_report(self, witnesses: bool = False) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            'target_dim': self.target.dim,
            'cover_dim': self.cover.dim,
            'kernel_dim': int(self.kernel_basis.shape[0]),
            'summands': self.labels,
            'essential_certificate': self.essential_certificate,
        }
        if witnesses:
            data['epi'] = self.epi.tolist()
            data['kernel_basis'] = self.kernel_basis.tolist()
        return data


@dataclass
class RadHomSpace:
    """Rad(source, target) comme sous-espace de Hom(source, target)"""
    source: Module
    target: Module
    basis: np.ndarray
    hom_dim: int

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def contains(self, f: Matrix) -> bool:
        vectors = self.basis.reshape(self.dim, self.source.dim * self.target.dim)
        return in_row_span(np.asarray(f).reshape(1, -1) % self.source.p, vectors, self.source.p)


class ProjRadCheck(NamedTuple):
    im_in_rad: bool
    in_radhom: bool


class PresentationCheck(NamedTuple):
    cover: bool
    radical_map: bool


@dataclass
class Presentation:
    """P1 --phi--> P0 --psi--> m --> 0"""
    p1: Module
    p0: Module
    phi: Matrix
    psi: Matrix
    target: Module


def lift_through(f: Matrix, g: Matrix, x: Module, y: Module) -> Optional[Matrix]:
    """h dans Hom(x, y) avec h @ g = f (h suivi de g égale f), ou None"""
    hom = hom_space(x, y)
    target = np.asarray(f, dtype=np.int64).reshape(1, -1) % x.p
    if hom.dim == 0:
        return zeros(x.dim, y.dim) if not np.any(target) else None
    images = np.stack([matmul(h, g, x.p).ravel() for h in hom.basis])
    coordinates = solve_linear(images.T, target.T, x.p)
    if coordinates is None:
        return None
    return hom.element(coordinates[:, 0])


def projective_indecomposables(a: Algebra, seed: int = 0) -> List[ProjectiveIndecomposable]:
    """Facteurs indécomposables distincts du module régulier A_A"""
    return a.memoized(f"projectives:{seed}", lambda: _projective_indecomposables(a, seed))


def _projective_indecomposables(a: Algebra, seed: int) -> List[ProjectiveIndecomposable]:
    decomposition = krull_schmidt(regular_module(a), seed)
    vertices = list(zip(a.quiver.vertices, vertex_idempotents(a))) if a.quiver is not None else []
    out = []
    for index, summand_class in enumerate(decomposition.classes):
        module = summand_class.representative
        simple, projection = top(module)
        label = f"P{index}"
        for v, e in vertices:
            if np.any(simple.element_action(e)):
                label = f"P{v}"
                break
        out.append(ProjectiveIndecomposable(module, summand_class.multiplicity, label,
                                            summand_class.certificate, simple, projection))
    logger.debug(f"Projectifs indécomposables: {[(q.label, q.module.dim) for q in out]}")
    return out


def simple_modules(a: Algebra, seed: int = 0) -> List[Module]:
    """Tops des projectifs indécomposables"""
    return [q.simple for q in projective_indecomposables(a, seed)]


def _match_simple(simple: Module, projectives: List[ProjectiveIndecomposable]):
    for q in projectives:
        theta = indecomposable_isomorphism(q.simple, simple)
        if theta is not None:
            return q, theta
    raise EngineError("simple module matches no projective indecomposable top")


def is_essential_epi(phi: Matrix, source: Module, target: Module) -> bool:
    """Noyau de phi contenu dans rad(source)"""
    phi = np.asarray(phi, dtype=np.int64) % source.p
    if phi.shape != (source.dim, target.dim) or rank(phi, source.p) != target.dim:
        raise ContractViolation("is_essential_epi needs a surjective map")
    kernel = left_kernel_basis(phi, source.p)
    return in_row_span(kernel, radical_of_module(source), source.p)


def projective_cover(m: Module, seed: int = 0) -> CoverResult:
    """
    Couverture projective par relèvement de la couverture du top

    Chaque facteur simple du top est atteint par un projectif
    indécomposable P ; la flèche P -> top(m) se relève à travers m.
    """
    a, p = m.algebra, m.p
    if m.dim == 0:
        empty = zeros(0, 0)
        return CoverResult(m, zero_module(a), empty, empty,
                           {'kernel_dim': 0, 'radical_dim': 0, 'kernel_in_radical': True})
    head, quotient = top(m)
    projectives = projective_indecomposables(a, seed)
    parts, lifts, labels = [], [], []
    for _, simple, iota, _ in krull_schmidt(head, seed).instances():
        q, theta = _match_simple(simple, projectives)
        # P -> top P -> S -> top m
        to_head = matmul(matmul(q.top_projection, theta, p), iota, p)
        lift = lift_through(to_head, quotient, q.module, m)
        if lift is None:
            raise EngineError("lift through the top failed; projectivity violated")
        parts.append(q.module)
        lifts.append(lift)
        labels.append(q.label)
    cover, _, pis = direct_sum(parts, a)
    epi = np.zeros((cover.dim, m.dim), dtype=np.int64)
    for pi, lift in zip(pis, lifts):
        epi = (epi + matmul(pi, lift, p)) % p
    if rank(epi, p) != m.dim:
        raise EngineError("cover map is not surjective")
    kernel = row_space_basis(left_kernel_basis(epi, p), p)
    radical = radical_of_module(cover)
    certificate = {
        'kernel_dim': int(kernel.shape[0]),
        'radical_dim': int(radical.shape[0]),
        'kernel_in_radical': bool(in_row_span(kernel, radical, p)),
    }
    if not certificate['kernel_in_radical']:
        raise EngineError("constructed cover is not essential")
    return CoverResult(m, cover, epi, kernel, certificate, labels)


def is_projective(m: Module, seed: int = 0) -> bool:
    return projective_cover(m, seed).kernel_basis.shape[0] == 0


def _same_module(m: Module, n: Module) -> bool:
    return m is n or (m.dim == n.dim and np.array_equal(m.action, n.action))


def cover_uniqueness_check(c1: CoverResult, c2: CoverResult) -> Matrix:
    """
    Isomorphisme alpha : P1 -> P2 avec epi1 = alpha suivi de epi2

    alpha et beta sont obtenus par relèvement ; beta o alpha et alpha o beta
    fixent les épis, donc sont des automorphismes.
    """
    if not _same_module(c1.target, c2.target):
        raise ContractViolation("covers have different target modules")
    p = c1.target.p
    alpha = lift_through(c1.epi, c2.epi, c1.cover, c2.cover)
    beta = lift_through(c2.epi, c1.epi, c2.cover, c1.cover)
    if alpha is None or beta is None:
        raise VerificationFailure("projective lifting between covers failed")
    if not (is_invertible(matmul(alpha, beta, p), p) and is_invertible(matmul(beta, alpha, p), p)):
        raise VerificationFailure("composite fixing an essential epi is not invertible",
                                  {'alpha': alpha.tolist(), 'beta': beta.tolist()})
    if not np.array_equal(matmul(alpha, c2.epi, p), c1.epi % p):
        raise VerificationFailure("alpha does not intertwine the covers")
    return alpha


def rad_hom(x: Module, y: Module) -> RadHomSpace:
    """
    Rad(x, y) = {phi : psi_j suivi de phi dans J(End y) pour tout psi_j de Hom(y, x)}
    """
    p = x.p
    hom = hom_space(x, y)
    backward = hom_space(y, x)
    if hom.dim == 0 or backward.dim == 0:
        return RadHomSpace(x, y, hom.basis.copy(), hom.dim)
    end = end_algebra(y)
    radical = end.algebra.radical.basis
    if radical.shape[0]:
        radical_vectors = matmul(radical, end.hom.vectors(), p)
    else:
        radical_vectors = zeros(0, y.dim * y.dim)
    # annulateur : v est dans J ssi v @ K^T = 0
    annihilator = kernel_basis(radical_vectors, p)
    if annihilator.shape[0] == 0:
        return RadHomSpace(x, y, hom.basis.copy(), hom.dim)
    blocks = []
    for psi in backward.basis:
        composites = np.stack([matmul(psi, h, p).ravel() for h in hom.basis])
        blocks.append(matmul(composites, annihilator.T, p))
    coordinates = left_kernel_basis(np.hstack(blocks), p)
    if coordinates.shape[0] == 0:
        return RadHomSpace(x, y, np.zeros((0, x.dim, y.dim), dtype=np.int64), hom.dim)
    vectors = row_space_basis(matmul(coordinates, hom.vectors(), p), p)
    return RadHomSpace(x, y, vectors.reshape(-1, x.dim, y.dim), hom.dim)


def units_test_is_exhaustive(x: Module, y: Module) -> bool:
    return x.p ** hom_space(y, x).dim <= Config.BRUTE_FORCE_LIMIT


def in_rad_via_units(phi: Matrix, x: Module, y: Module, seed: int = 0,
                     samples: int = 20) -> bool:
    """
    phi dans Rad(x, y) ssi id_y - phi o psi est inversible pour tout psi : y -> x

    Tous les psi sont parcourus lorsque |Hom(y, x)| <= BRUTE_FORCE_LIMIT ;
    au-delà, la base et des combinaisons aléatoires. Une réponse False est
    toujours certaine.
    """
    p = x.p
    backward = hom_space(y, x)
    if backward.dim == 0:
        return True
    if p ** backward.dim <= Config.BRUTE_FORCE_LIMIT:
        coordinates = itertools.product(range(p), repeat=backward.dim)
        candidates = (backward.element(np.array(c, dtype=np.int64)) for c in coordinates)
    else:
        rng = make_rng(seed)
        candidates = list(backward.basis)
        candidates += [backward.element(random_matrix(rng, 1, backward.dim, p)[0])
                       for _ in range(samples)]
    for psi in candidates:
        if not is_invertible((identity(y.dim) - matmul(psi, phi, p)) % p, p):
            return False
    return True


def projrad_equivalence_check(phi: Matrix, x: Module, y: Module, seed: int = 0,
                              strict: Optional[bool] = None) -> ProjRadCheck:
    """
    Compare Im phi dans rad y et phi dans Rad(x, y)

    Les deux coïncident lorsque y est projectif ; sinon le test renvoie les
    deux valeurs calculées indépendamment.
    """
    if strict is None:
        strict = Config.STRICT_VERIFICATION
    p = x.p
    phi = np.asarray(phi, dtype=np.int64) % p
    if not is_intertwiner(phi, x, y):
        raise ContractViolation("phi is not a morphism x -> y")
    image = row_space_basis(phi, p)
    im_in_rad = bool(in_row_span(image, radical_of_module(y), p))
    in_radhom = bool(rad_hom(x, y).contains(phi))
    if strict and im_in_rad != in_radhom and is_projective(y, seed):
        raise VerificationFailure("Im phi in rad Y disagrees with phi in Rad(X, Y) on a projective Y",
                                  {'phi': phi.tolist(), 'im_in_rad': im_in_rad,
                                   'in_radhom': in_radhom})
    return ProjRadCheck(im_in_rad, in_radhom)


def is_minimal_presentation(p1: Module, p0: Module, phi: Matrix, psi: Matrix, m: Module,
                            strict: Optional[bool] = None) -> PresentationCheck:
    """
    psi est une couverture projective ssi phi appartient à Rad(P1, P0)
    """
    if strict is None:
        strict = Config.STRICT_VERIFICATION
    p = m.p
    phi = np.asarray(phi, dtype=np.int64).reshape(p1.dim, p0.dim) % p
    psi = np.asarray(psi, dtype=np.int64).reshape(p0.dim, m.dim) % p
    if not is_intertwiner(phi, p1, p0) or not is_intertwiner(psi, p0, m):
        raise ContractViolation("presentation maps are not module homomorphisms")
    rank_psi = rank(psi, p)
    if rank_psi != m.dim:
        raise ContractViolation(f"psi is not surjective: rank(psi)={rank_psi} != dim m={m.dim}")
    rank_phi = rank(phi, p)
    if np.any(matmul(phi, psi, p)) or rank_phi != p0.dim - rank_psi:
        raise ContractViolation(
            f"not exact at P0: rank(phi)={rank_phi} but dim ker(psi)={p0.dim - rank_psi}"
        )
    cover = is_essential_epi(psi, p0, m)
    radical_map = rad_hom(p1, p0).contains(phi)
    if strict and cover != radical_map:
        raise VerificationFailure("cover and radical-map criteria disagree",
                                  {'cover': cover, 'radical_map': radical_map})
    return PresentationCheck(cover, radical_map)


def minimal_presentation(m: Module, seed: int = 0) -> Presentation:
    """P1 -> P0 -> m avec deux couvertures projectives successives"""
    p = m.p
    first = projective_cover(m, seed)
    kernel, inclusion = submodule(first.cover, first.kernel_basis)
    second = projective_cover(kernel, seed)
    phi = matmul(second.epi, inclusion, p) if second.cover.dim else \
        zeros(0, first.cover.dim)
    return Presentation(second.cover, first.cover, phi, first.epi, m)


def padded_presentation(presentation: Presentation, extra: Module) -> Presentation:
    """Ajoute une composante identité extra -> extra (présentation non minimale)"""
    p = presentation.target.p
    p1, iotas1, _ = direct_sum([presentation.p1, extra])
    p0, iotas0, _ = direct_sum([presentation.p0, extra])
    phi = (matmul(iotas1[0].T, matmul(presentation.phi, iotas0[0], p), p)
           + matmul(iotas1[1].T, iotas0[1], p)) % p
    psi = matmul(iotas0[0].T, presentation.psi, p)
    return Presentation(p1, p0, phi, psi, presentation.target)


def cartan_matrix(a: Algebra, seed: int = 0) -> Matrix:
    """C[i][j] = dim Hom(P_i, P_j)"""
    projectives = projective_indecomposables(a, seed)
    size = len(projectives)
    matrix = np.zeros((size, size), dtype=np.int64)
    for i, qi in enumerate(projectives):
        for j, qj in enumerate(projectives):
            matrix[i, j] = hom_space(qi.module, qj.module).dim
    return matrix


def radical_series(m: Module) -> List[Matrix]:
    """Couches m, rad m, rad^2 m, ... jusqu'à 0 (exclu)"""
    layers = []
    current = identity(m.dim)
    radical = m.algebra.radical.basis
    while current.shape[0]:
        layers.append(current)
        if radical.shape[0] == 0:
            break
        images = np.vstack([matmul(current, m.element_action(j), m.p) for j in radical])
        current = row_space_basis(images, m.p)
    return layers


def composition_factors(m: Module, seed: int = 0) -> Dict[str, int]:
    """[m : S_i] = dim Hom(P_i, m) / dim End(S_i)"""
    out = {}
    for q in projective_indecomposables(m.algebra, seed):
        end_dim = hom_space(q.simple, q.simple).dim
        out[q.label] = hom_space(q.module, m).dim // end_dim
    return out
