"""Bredon homology over the orbit category with representation-ring coefficients.

The coefficient system sends ``G/H`` to the rational class functions on ``H``
(indicator-of-class basis) and a morphism ``gK: G/H -> G/K`` to
"conjugate by ``g``, then induce to ``K``".  Only ``R_0`` is nonzero, so the
total complex is the degree ``q = 0`` part of the double grading.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .fingroup import (ClassFunction, FiniteGroup, Subgroup, conjugate_function,
                       enumerate_subgroups, induce)
from .gcomplex import GComplex, Simplex, fixed_subcomplex
from .homalg import (ChainComplex, QMatrix, Quotient, QuotientPresentation,
                     chain_homology, quotient_complex)


class MorphismError(ValueError):
    pass


def orbit_morphisms(H: Subgroup, K: Subgroup) -> list[int]:
    """Coset representatives ``g`` (minimal in ``gK``) with ``g^-1 H g <= K``."""
    G = H.group
    reps = set()
    for g in G.elements:
        coset_min = min(G.mul(g, k) for k in K.members)
        if coset_min in reps:
            continue
        if H.conjugate(g).issubgroup(K):
            reps.add(coset_min)
    return sorted(reps)


def coefficient_map(H: Subgroup, K: Subgroup, g: int) -> QMatrix:
    """Matrix of ``R(gK): R(H) -> R(K)`` in the class-indicator bases."""
    Hg = H.conjugate(g)
    if not Hg.issubgroup(K):
        raise MorphismError(f"g={g} does not define a morphism G/H -> G/K")
    cols = {}
    for c in range(H.num_classes):
        f = induce(conjugate_function(ClassFunction.indicator(H, c), g), K)
        cols[c] = {i: v for i, v in enumerate(f.values) if v}
    return QMatrix.from_columns(K.num_classes, H.num_classes, cols)


class OrbitCategory:
    """``Or(G)`` restricted to all subgroups of a finite group."""

    def __init__(self, G: FiniteGroup, max_order: int = 24):
        self.group = G
        self.objects = enumerate_subgroups(G, max_order)
        self.index = {H: i for i, H in enumerate(self.objects)}

    def morphisms(self, H: Subgroup, K: Subgroup) -> list[int]:
        return orbit_morphisms(H, K)

    def coset_rep(self, g: int, K: Subgroup) -> int:
        G = self.group
        return min(G.mul(g, k) for k in K.members)

    def compose(self, g: int, h: int, L: Subgroup) -> int:
        """``G/H -gK-> G/K -hL-> G/L`` composes to ``(gh)L``."""
        return self.coset_rep(self.group.mul(g, h), L)

    def check_composition(self) -> bool:
        for H in self.objects:
            for K in self.objects:
                for g in self.morphisms(H, K):
                    for L in self.objects:
                        for h in self.morphisms(K, L):
                            if self.compose(g, h, L) not in self.morphisms(H, L):
                                return False
        return all(self.group.identity in self.morphisms(H, H) for H in self.objects)


@dataclass
class CoefficientSystem:
    """The covariant functor ``G/H -> R_q(H)`` on the orbit category."""

    category: OrbitCategory

    def at(self, H: Subgroup, q: int = 0) -> int:
        # K_1 of a finite group algebra vanishes
        return H.num_classes if q == 0 else 0

    def along(self, H: Subgroup, K: Subgroup, g: int) -> QMatrix:
        return coefficient_map(H, K, g)

    def check_functorial(self) -> bool:
        cat = self.category
        for H in cat.objects:
            if self.along(H, H, cat.group.identity) != QMatrix.identity(H.num_classes):
                return False
            for K in cat.objects:
                for g in cat.morphisms(H, K):
                    for L in cat.objects:
                        for h in cat.morphisms(K, L):
                            gh = cat.compose(g, h, L)
                            if self.along(K, L, h) @ self.along(H, K, g) != self.along(H, L, gh):
                                return False
        return True


@dataclass
class BredonChainComplex:
    """Quotient of ``sum_H C_p(X^H) (x) R(H)`` by the tensor relations.

    ``basis[p]`` lists the ambient generators ``(H index, simplex, class)``;
    ``quotients[p]`` is the concrete quotient map onto the chosen complement.
    """

    X: GComplex
    category: OrbitCategory
    fixed: dict[int, object]
    basis: dict[int, list[tuple[int, Simplex, int]]]
    ambient: ChainComplex
    complex: ChainComplex
    quotients: dict[int, Quotient]
    relation_count: dict[int, int] = field(default_factory=dict)

    @cached_property
    def index(self) -> dict[int, dict]:
        return {p: {b: i for i, b in enumerate(bs)} for p, bs in self.basis.items()}

    def project(self, p: int, H: Subgroup, simplex: Simplex, cls: int, coeff=1) -> dict:
        """Class of ``[simplex](H) (x) coeff*delta_cls`` in quotient coordinates."""
        i = self.index[p][(self.category.index[H], simplex, cls)]
        return self.quotients[p].project({i: coeff})


def bredon_chain_complex(X: GComplex, max_order: int = 24) -> BredonChainComplex:
    X.require_type_preserving("bredon_homology")
    G = X.group
    cat = OrbitCategory(G, max_order)
    subs = cat.objects
    fixed = {i: fixed_subcomplex(X, H) for i, H in enumerate(subs)}
    top = X.complex.dim
    basis: dict[int, list] = {}
    for p in range(top + 1):
        basis[p] = [(i, s, c) for i, H in enumerate(subs) for s in fixed[i].simplices(p)
                    for c in range(H.num_classes)]
    index = {p: {b: j for j, b in enumerate(bs)} for p, bs in basis.items()}

    d = {}
    for p in range(1, top + 1):
        cols = {}
        for j, (i, s, c) in enumerate(basis[p]):
            col = {}
            for k in range(len(s)):
                col[index[p - 1][(i, s[:k] + s[k + 1:], c)]] = (-1) ** k
            cols[j] = col
        d[p] = QMatrix.from_columns(len(basis[p - 1]), len(basis[p]), cols)
    ambient = ChainComplex({p: len(basis[p]) for p in basis}, d)

    # tensor relations (g.sigma) (x) f - sigma (x) R(gK) f, one per
    # (morphism, chain, class) triple, deduplicated
    rels: dict[int, set] = {p: set() for p in basis}
    for hi, H in enumerate(subs):
        for ki, K in enumerate(subs):
            for g in cat.morphisms(H, K):
                R = coefficient_map(H, K, g)
                for p in basis:
                    for s in fixed[ki].simplices(p):
                        img, sign = X.act_oriented(g, s)
                        for c in range(H.num_classes):
                            vec = {index[p][(hi, img, c)]: sign}
                            for c2, a in R.column(c).items():
                                k2 = index[p][(ki, s, c2)]
                                vec[k2] = vec.get(k2, 0) - a
                            vec = tuple(sorted((k, v) for k, v in vec.items() if v))
                            if vec:
                                rels[p].add(vec)
    pres = {p: QuotientPresentation(len(basis[p]), [dict(r) for r in sorted(rels[p])])
            for p in basis}
    C, quots = quotient_complex(ambient, pres)
    return BredonChainComplex(X, cat, fixed, basis, ambient, C, quots,
                              {p: len(r) for p, r in rels.items()})


def bredon_homology(X: GComplex, max_order: int = 24) -> tuple[dict[int, int], BredonChainComplex]:
    """Bredon homology dimensions per degree, with the underlying complex."""
    B = bredon_chain_complex(X, max_order)
    return chain_homology(B.complex), B
