"""Covariant modules and the bivariant delocalized cohomology ``H^n_G(X, Y)``.

A covariant module over a finite group is modelled by its localizations: a
vector space ``M_t`` per element ``t`` and maps ``M_t -> M_{sts^-1}`` for every
``s``.  ``Hom_G`` splits over conjugacy classes into ``Z(t)``-equivariant maps
``M_t -> N_t``.  Because the category is semisimple, bounded complexes of such
modules compute their own hyperext, so simplicial cochains of the fixed-point
sets stand in for sheaf resolutions.

Grading is homological throughout: cochains ``C^i`` sit in degree ``-i`` and
a degree ``n`` map sends ``C^i(X^t)`` to ``C^{i-n}(Y^t)``.  Thus
``H^n_G(X, Y)`` is supported in ``[-dim Y, dim X]``.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field
from fractions import Fraction

from .fingroup import FiniteGroup, Subgroup, centralizer, conjugacy_data
from .gcomplex import GComplex, SComplex, fixed_subcomplex
from .homalg import (ChainComplex, HomComplex, QMatrix, Echelon, average_projector,
                     chain_homology, restricted_homology)


class CovarianceError(ValueError):
    pass


@dataclass
class CovariantModule:
    """Pieces ``M_t`` with the action ``action(s, t): M_t -> M_{sts^-1}``."""

    group: FiniteGroup
    dims: dict[int, int]
    action: Callable[[int, int], QMatrix]

    def T(self, t: int) -> QMatrix:
        """``T`` acts on ``M_t`` as ``t^-1``."""
        return self.action(self.group.inv(t), t)

    def check(self) -> None:
        G = self.group
        for t in G.elements:
            if self.action(G.identity, t) != QMatrix.identity(self.dims[t]):
                raise CovarianceError(f"identity does not act trivially on piece {t}")
            for a in G.elements:
                for b in G.elements:
                    lhs = self.action(a, G.conj(b, t)) @ self.action(b, t)
                    if lhs != self.action(G.mul(a, b), t):
                        raise CovarianceError(f"action is not multiplicative at ({a}, {b}, {t})")

    def elliptic_part(self) -> "CovariantModule":
        # every element of a finite group is elliptic, so P_ell = 1
        return self

    def hyperbolic_dims(self) -> dict[int, int]:
        return {t: 0 for t in self.dims}


@dataclass
class CovariantComplex:
    """Bounded complex of covariant modules; ``d[(n, t)]`` maps degree ``n`` to ``n-1``."""

    group: FiniteGroup
    modules: dict[int, CovariantModule]
    d: dict[tuple[int, int], QMatrix] = field(default_factory=dict)

    def piece(self, t: int) -> ChainComplex:
        dims = {n: M.dims[t] for n, M in self.modules.items()}
        d = {n: self.d[(n, s)] for (n, s) in self.d if s == t}
        return ChainComplex(dims, d)

    def check(self) -> None:
        G = self.group
        for M in self.modules.values():
            M.check()
        for t in G.elements:
            self.piece(t)
        for (n, t), m in self.d.items():
            src, tgt = self.modules[n], self.modules.get(n - 1)
            if tgt is None:
                continue
            for s in G.elements:
                u = G.conj(s, t)
                if tgt.action(s, t) @ m != self.d[(n, u)] @ src.action(s, t):
                    raise CovarianceError(f"differential in degree {n} is not covariant")


def _cochain_action(X: GComplex, fixed: dict[int, SComplex], i: int, s: int, t: int) -> QMatrix:
    G = X.group
    A, B = fixed[t], fixed[G.conj(s, t)]
    src, tgt = A.simplices(i), B.simplices(i)
    cols = {}
    for j, sig in enumerate(src):
        img, sign = X.act_oriented(s, sig)
        cols[j] = {B.index(img): sign}
    return QMatrix.from_columns(len(tgt), len(src), cols)


def covariant_cochains(X: GComplex) -> CovariantComplex:
    """Simplicial cochains of every ``X^t``, cochain degree ``i`` in degree ``-i``."""
    X.require_type_preserving("covariant_cochains")
    G = X.group
    fixed = {t: fixed_subcomplex(X, t) for t in G.elements}
    top = X.complex.dim
    modules, d = {}, {}
    cache: dict = {}

    for i in range(top + 1):
        def action(s, t, i=i):
            key = (i, s, t)
            if key not in cache:
                cache[key] = _cochain_action(X, fixed, i, s, t)
            return cache[key]
        modules[-i] = CovariantModule(G, {t: len(fixed[t].simplices(i)) for t in G.elements}, action)
    for i in range(top):
        for t in G.elements:
            # coboundary C^i -> C^{i+1} is the transposed boundary
            d[(-i, t)] = fixed[t].boundary_matrix(i + 1).T
    return CovariantComplex(G, modules, d)


def _same_group(G: FiniteGroup, H: FiniteGroup) -> bool:
    return G is H or G.table == H.table


@dataclass
class CovariantHom:
    """``Hom_G(M, N)`` split over conjugacy classes.

    ``pieces[t]`` is the Hom complex ``M_t -> N_t`` for the class
    representative ``t``; ``bases[t][k]`` spans its ``Z(t)``-equivariant part.
    """

    pieces: dict[int, HomComplex]
    bases: dict[int, dict[int, list[dict]]]

    def dims(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for b in self.bases.values():
            for k, vs in b.items():
                out[k] = out.get(k, 0) + len(vs)
        return out

    def homology(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for t, hom in self.pieces.items():
            for k, h in hom.homology(self.bases[t]).items():
                out[k] = out.get(k, 0) + h
        return dict(sorted(out.items()))


def _invariant_hom_basis(hom: HomComplex, k: int, Z: Subgroup, t: int,
                         Mc: CovariantComplex, Nc: CovariantComplex) -> list[dict]:
    """Averages of matrix units over the centralizer, reduced to a basis."""
    G = Z.group
    ech = Echelon()
    out = []
    for key in hom.keys(k):
        i, w, v = key
        avg: dict = {}
        for z in Z.members:
            # z.phi = N(z) phi M(z^-1)
            Nz = Nc.modules[i + k].action(z, t)
            Mzi = Mc.modules[i].action(G.inv(z), t)
            for x, a in Nz.column(w).items():
                for u, b in Mzi.row(v).items():
                    kk = (i, x, u)
                    avg[kk] = avg.get(kk, 0) + a * b
        avg = {kk: Fraction(a, Z.order) for kk, a in avg.items() if a}
        if avg and ech.add(avg):
            out.append(avg)
    return out


def covariant_hom(Mc: CovariantComplex, Nc: CovariantComplex) -> CovariantHom:
    if not _same_group(Mc.group, Nc.group):
        raise CovarianceError("covariant complexes over different groups")
    G = Mc.group
    pieces, bases = {}, {}
    for t in conjugacy_data(G).representatives:
        Z = centralizer(G, t)
        hom = HomComplex(Mc.piece(t), Nc.piece(t))
        pieces[t] = hom
        bases[t] = {k: _invariant_hom_basis(hom, k, Z, t, Mc, Nc) for k in hom.degrees}
    return CovariantHom(pieces, bases)


def bs_bivariant(X: GComplex, Y: GComplex) -> dict[int, int]:
    """Dimensions of ``H^n_G(X, Y)`` for ``n`` in ``[-dim Y, dim X]``."""
    if not _same_group(X.group, Y.group):
        raise CovarianceError("X and Y carry actions of different groups")
    H = covariant_hom(covariant_cochains(X), covariant_cochains(Y)).homology()
    return {n: H.get(n, 0) for n in range(-Y.complex.dim, X.complex.dim + 1)}


def delocalized_point(X: GComplex) -> dict[int, int]:
    """``sum_[t] dim H^n(X^t)^{Z(t)}`` per degree ``n >= 0``.

    Computed on invariant cochains, independently of the Hom machinery.
    """
    X.require_type_preserving("delocalized_point")
    G = X.group
    data = conjugacy_data(G)
    out = {n: 0 for n in range(X.complex.dim + 1)}
    for t in data.representatives:
        Xt = fixed_subcomplex(X, t)
        Z = centralizer(G, t)
        subs = {}
        for i in range(Xt.dim + 1):
            simp = Xt.simplices(i)

            def act(z, simp=simp):
                cols = {}
                for j, s in enumerate(simp):
                    img, sign = X.act_oriented(z, s)
                    cols[j] = {Xt.index(img): sign}
                return QMatrix.from_columns(len(simp), len(simp), cols)

            P = average_projector(Z, act)
            ech = Echelon(P.columns().values())
            subs[i] = ech.basis()
        cob = {i: Xt.boundary_matrix(i + 1).T for i in range(Xt.dim)}
        h = restricted_homology({}, lambda i, v: cob[i].apply(v) if i in cob else {},
                                subs, lambda i: i + 1)
        for n, k in h.items():
            out[n] += k
    return out


def trivial_group_oracle(X: SComplex, Y: SComplex) -> dict[int, int]:
    """``sum_p dim H^p(X) dim H^{p-n}(Y)``, the Kunneth-free value for trivial ``G``."""
    hx, hy = chain_homology(X.chain_complex()), chain_homology(Y.chain_complex())
    return {n: sum(hx.get(p, 0) * hy.get(p - n, 0) for p in hx)
            for n in range(-Y.dim, X.dim + 1)}


def cochain_restriction(X: GComplex, sub: GComplex) -> dict[tuple[int, int], QMatrix]:
    """Restriction of cochains ``C(X^t) -> C(sub^t)`` for an invariant subcomplex."""
    if not sub.complex.is_subcomplex_of(X.complex):
        raise ValueError("not a subcomplex")
    G = X.group
    out = {}
    for t in G.elements:
        A, B = fixed_subcomplex(X, t), fixed_subcomplex(sub, t)
        for i in range(X.complex.dim + 1):
            src, tgt = A.simplices(i), B.simplices(i)
            cols = {j: {B.index(s): 1} for j, s in enumerate(src) if s in B}
            out[(-i, t)] = QMatrix.from_columns(len(tgt), len(src), cols)
    return out


def is_covariant_map(f: dict[tuple[int, int], QMatrix], Mc: CovariantComplex,
                     Nc: CovariantComplex) -> bool:
    """``f`` commutes with differentials and the group action."""
    G = Mc.group
    for (n, t), m in f.items():
        if n not in Nc.modules:
            # maps into a zero module
            if m.rows:
                return False
            continue
        if (n, t) in Mc.d and n - 1 in Nc.modules:
            dn = Nc.d.get((n, t), QMatrix(Nc.modules[n - 1].dims[t], Nc.modules[n].dims[t]))
            if f[(n - 1, t)] @ Mc.d[(n, t)] != dn @ m:
                return False
        for s in G.elements:
            u = G.conj(s, t)
            if Nc.modules[n].action(s, t) @ m != f[(n, u)] @ Mc.modules[n].action(s, t):
                return False
    return True
