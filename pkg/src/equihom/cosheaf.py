"""The induction cosheaf and its equivariant (coinvariant) chain complex.

A simplex ``sigma`` carries ``R(G_sigma)``; a face ``eta <= sigma`` receives
it by induction ``G_sigma <= G_eta``.  The chain complex is built on oriented
simplices with ``f[-sigma] = -f[sigma]``, then passed to ``G``-coinvariants.
The comparison maps to the Bredon complex are assembled explicitly and checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .bredon import BredonChainComplex, bredon_chain_complex
from .fingroup import ClassFunction, Subgroup, conjugate_function, induce
from .gcomplex import GComplex, Simplex, orbit_data
from .homalg import (ChainComplex, QMatrix, Quotient, QuotientPresentation,
                     chain_homology, generating_set, quotient_complex)


class InductionCosheaf:
    """``sigma -> R(G_sigma)`` with corestrictions given by induction."""

    def __init__(self, X: GComplex):
        X.require_type_preserving("the induction cosheaf")
        self.X = X
        self._stab: dict[Simplex, Subgroup] = {}

    def at(self, s: Simplex) -> Subgroup:
        if s not in self._stab:
            self._stab[s] = self.X.stabilizer(s)
        return self._stab[s]

    def corestriction(self, s: Simplex, face: Simplex) -> QMatrix:
        """Induction ``R(G_s) -> R(G_face)`` in class-indicator bases."""
        if not set(face) <= set(s):
            raise ValueError(f"{face} is not a face of {s}")
        H, K = self.at(s), self.at(face)
        cols = {}
        for c in range(H.num_classes):
            f = induce(ClassFunction.indicator(H, c), K)
            cols[c] = {i: v for i, v in enumerate(f.values) if v}
        return QMatrix.from_columns(K.num_classes, H.num_classes, cols)

    def check_functorial(self) -> bool:
        cx = self.X.complex
        for s in cx.all_simplices():
            for f in cx.all_simplices():
                if not set(f) < set(s) or len(f) + 1 >= len(s):
                    continue
                for m in cx.all_simplices():
                    if set(f) < set(m) < set(s):
                        direct = self.corestriction(s, f)
                        if self.corestriction(m, f) @ self.corestriction(s, m) != direct:
                            return False
        return True


@dataclass
class CosheafComplex:
    """Pre-coinvariant complex, coinvariant quotient and orbit bookkeeping."""

    X: GComplex
    cosheaf: InductionCosheaf
    basis: dict[int, list[tuple[Simplex, int]]]
    ambient: ChainComplex
    complex: ChainComplex
    quotients: dict[int, Quotient]
    orbits: dict = field(repr=False, default_factory=dict)

    @cached_property
    def index(self) -> dict[int, dict]:
        return {p: {b: i for i, b in enumerate(bs)} for p, bs in self.basis.items()}

    def coinvariant_basis(self, p: int) -> list[tuple[Simplex, int]]:
        return [self.basis[p][i] for i in self.quotients[p].complement]

    def project(self, p: int, vec: dict) -> dict:
        """Coinvariant coordinates of a pre-coinvariant vector keyed by ``(simplex, class)``."""
        return self.quotients[p].project({self.index[p][k]: a for k, a in vec.items()})


def _group_action_vector(X: GComplex, cosheaf: InductionCosheaf, g: int,
                         s: Simplex, c: int) -> tuple[Simplex, int, int]:
    """``g.(delta_c[s]) = sign * delta_c'[g s]``."""
    img, sign = X.act_oriented(g, s)
    H = cosheaf.at(s)
    # transport to g H g^-1 = G_{g s}
    f = conjugate_function(ClassFunction.indicator(H, c), X.group.inv(g))
    target = cosheaf.at(img)
    if f.group != target:
        raise AssertionError("stabilizer of g.s is not g G_s g^-1")
    (c2,) = [i for i, v in enumerate(f.values) if v]
    return img, c2, sign


def cosheaf_chain_complex(X: GComplex) -> CosheafComplex:
    cos = InductionCosheaf(X)
    orbits = orbit_data(X)
    cx = X.complex
    top = cx.dim
    basis = {p: [(s, c) for s in cx.simplices(p) for c in range(cos.at(s).num_classes)]
             for p in range(top + 1)}
    index = {p: {b: i for i, b in enumerate(bs)} for p, bs in basis.items()}

    d = {}
    for p in range(1, top + 1):
        cols = {}
        for j, (s, c) in enumerate(basis[p]):
            col: dict = {}
            for k in range(len(s)):
                face = s[:k] + s[k + 1:]
                for c2, a in cos.corestriction(s, face).column(c).items():
                    i = index[p - 1][(face, c2)]
                    col[i] = col.get(i, 0) + (-1) ** k * a
            cols[j] = col
        d[p] = QMatrix.from_columns(len(basis[p - 1]), len(basis[p]), cols)
    ambient = ChainComplex({p: len(basis[p]) for p in basis}, d)

    gens = generating_set(X.group.whole)
    pres = {}
    for p, bs in basis.items():
        rels = []
        for (s, c) in bs:
            for g in gens:
                img, c2, sign = _group_action_vector(X, cos, g, s, c)
                v = {index[p][(s, c)]: 1}
                k = index[p][(img, c2)]
                v[k] = v.get(k, 0) - sign
                v = {i: a for i, a in v.items() if a}
                if v:
                    rels.append(v)
        # orbit representatives last, so they survive as the complement
        reps = [i for i, (s, _) in enumerate(bs) if orbits[s].representative == s]
        rest = [i for i, (s, _) in enumerate(bs) if orbits[s].representative != s]
        pres[p] = QuotientPresentation(len(bs), rels, rest + reps)
    C, quots = quotient_complex(ambient, pres)
    out = CosheafComplex(X, cos, basis, ambient, C, quots, orbits)
    for p in basis:
        expected = [(s, c) for (s, c) in basis[p] if orbits[s].representative == s]
        if out.coinvariant_basis(p) != expected:
            raise AssertionError("coinvariant complement is not the orbit-representative basis")
    return out


def cosheaf_homology(X: GComplex) -> tuple[dict[int, int], CosheafComplex]:
    S = cosheaf_chain_complex(X)
    return chain_homology(S.complex), S


# ---------------------------------------------------------------------------
# Comparison with Bredon homology


@dataclass
class ComparisonReport:
    bredon_dims: dict[int, int]
    cosheaf_dims: dict[int, int]
    bredon_homology: dict[int, int]
    cosheaf_homology: dict[int, int]
    phi: dict[int, QMatrix]
    psi: dict[int, QMatrix]
    chain_map: bool
    psi_phi_identity: bool
    phi_psi_identity: bool

    @property
    def is_isomorphism(self) -> bool:
        return (self.chain_map and self.psi_phi_identity and self.phi_psi_identity
                and self.bredon_dims == self.cosheaf_dims)

    @property
    def homology_match(self) -> bool:
        return self.bredon_homology == self.cosheaf_homology


def comparison_maps(S: CosheafComplex, B: BredonChainComplex
                    ) -> tuple[dict[int, QMatrix], dict[int, QMatrix]]:
    """``phi: S -> B`` and ``psi: B -> S`` in the chosen quotient coordinates."""
    cat = B.category
    phi, psi = {}, {}
    for p in S.basis:
        src = S.coinvariant_basis(p)
        cols = {}
        for j, (s, c) in enumerate(src):
            H = S.cosheaf.at(s)
            cols[j] = B.project(p, cat.objects[cat.index[H]], s, c)
        phi[p] = QMatrix.from_columns(B.complex.dim(p), len(src), cols)

        cols = {}
        for j, amb in enumerate(B.quotients[p].complement):
            hi, s, c = B.basis[p][amb]
            H, K = cat.objects[hi], S.cosheaf.at(s)
            f = induce(ClassFunction.indicator(H, c), K)
            vec = {(s, i): v for i, v in enumerate(f.values) if v}
            cols[j] = S.project(p, vec)
        psi[p] = QMatrix.from_columns(S.complex.dim(p), B.complex.dim(p), cols)
    return phi, psi


def compare_bredon_cosheaf(X: GComplex, max_order: int = 24) -> ComparisonReport:
    S = cosheaf_chain_complex(X)
    B = bredon_chain_complex(X, max_order)
    phi, psi = comparison_maps(S, B)
    chain_map = all(phi[p - 1] @ S.complex.boundary(p) == B.complex.boundary(p) @ phi[p]
                    for p in S.basis if p - 1 in S.basis)
    psi_phi = all(psi[p] @ phi[p] == QMatrix.identity(S.complex.dim(p)) for p in S.basis)
    phi_psi = all(phi[p] @ psi[p] == QMatrix.identity(B.complex.dim(p)) for p in S.basis)
    return ComparisonReport(
        bredon_dims=dict(B.complex.dims), cosheaf_dims=dict(S.complex.dims),
        bredon_homology=chain_homology(B.complex), cosheaf_homology=chain_homology(S.complex),
        phi=phi, psi=psi, chain_map=chain_map,
        psi_phi_identity=psi_phi, phi_psi_identity=phi_psi)
