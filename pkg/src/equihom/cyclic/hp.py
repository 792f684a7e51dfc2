"""Bivariant periodic cyclic homology at fixed Hodge levels.

``Hom_G`` of two paracomplexes splits over conjugacy classes ``[t]`` into
``Z(t)``-equivariant maps between the pieces at ``t``; such maps commute
with ``T`` because ``t`` lies in its own centralizer.  Two routes compute
the homology:

* ``reduced`` (default): the ``(1 - E)``-parts are contractible, so only the
  ``T``-invariant parts matter.  These are honest supercomplexes with a
  ``Z(t)``-action and the Hom homology is read off from characters of their
  homology groups.
* ``direct``: materialize the ``Z(t)``-equivariant Hom complex and take its
  homology.  Only feasible for small inputs; used to cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..fingroup import Subgroup, centralizer, conjugacy_data
from ..homalg import (Echelon, HomSupercomplex, QMatrix, Subspace, VerificationError,
                      kernel_with_free, restricted_homology)
from .algebra import GAlgebra, stabilize as stabilize_algebra
from .forms import DEFAULT_BUDGET, omega_forms, projector_E
from .hodge import HodgeLevel


class NonUnitalError(ValueError):
    pass


@dataclass
class InvariantPart:
    """``E``-image of a paracomplex piece, in coordinates of an exact basis."""

    dims: tuple[int, int]
    d: tuple[QMatrix, QMatrix]
    action: dict[int, tuple[QMatrix, QMatrix]]

    def traces(self) -> dict[int, tuple[Fraction, Fraction]]:
        """Character of the homology groups, per centralizer element."""
        kers, free = zip(*(kernel_with_free(self.d[p]) for p in (0, 1)))
        out = {}
        for z, mats in self.action.items():
            trc = [sum((mats[p][i, i] for i in range(self.dims[p])), Fraction(0)) for p in (0, 1)]
            trz = []
            for p in (0, 1):
                acc = Fraction(0)
                for v, f in zip(kers[p], free[p]):
                    acc += mats[p].apply(v).get(f, 0)
                trz.append(acc)
            # H_p = Z_p / B_p and B_p = C_{p+1} / Z_{p+1}
            out[z] = tuple(trz[p] - trc[1 - p] + trz[1 - p] for p in (0, 1))
        return out


def invariant_part(level: HodgeLevel, t: int, Z: Subgroup) -> InvariantPart:
    P = level.piece(t)
    Tm = level.T(t)
    order = level.omega.group.element_order(t)
    subs = []
    for p in (0, 1):
        E = projector_E(Tm[p], order)
        subs.append(Subspace(E.columns().values()))
    d = tuple(subs[p].restrict(P.differential(p).apply, subs[1 - p]) for p in (0, 1))
    for p in (0, 1):
        if not (d[1 - p] @ d[p]).is_zero():
            raise VerificationError("differential does not square to zero on T-invariants")
    action = {}
    for z in Z.members:
        mats = level.action(z, t)
        action[z] = tuple(subs[p].restrict(mats[p].apply, subs[p]) for p in (0, 1))
    return InvariantPart((subs[0].dim, subs[1].dim), d, action)


def _hom_dim(chi_v: dict, chi_w: dict, Z: Subgroup) -> Fraction:
    G = Z.group
    return sum((chi_v[G.inv(z)] * chi_w[z] for z in Z.members), Fraction(0)) / Z.order


def hom_homology_reduced(src: HodgeLevel, tgt: HodgeLevel) -> tuple[int, int]:
    G = src.omega.group
    even = odd = Fraction(0)
    for t in conjugacy_data(G).representatives:
        Z = centralizer(G, t)
        cv = invariant_part(src, t, Z).traces()
        cw = invariant_part(tgt, t, Z).traces()
        for p in (0, 1):
            v = {z: cv[z][p] for z in Z.members}
            even += _hom_dim(v, {z: cw[z][p] for z in Z.members}, Z)
            odd += _hom_dim(v, {z: cw[z][1 - p] for z in Z.members}, Z)
    if even.denominator != 1 or odd.denominator != 1:
        raise VerificationError("character inner products are not integers")
    return int(even), int(odd)


def equivariant_hom_basis(H: HomSupercomplex, parity: int, Z: Subgroup,
                          act_src: dict, act_tgt: dict) -> list[dict]:
    """``Z``-averages of matrix units, reduced to a basis."""
    G = Z.group
    ech = Echelon()
    out = []
    for ps in (0, 1):
        pt = (ps + parity) % 2
        for w in range(H.D.dim(pt)):
            for v in range(H.C.dim(ps)):
                avg: dict = {}
                for z in Z.members:
                    Dz, Czi = act_tgt[z][pt], act_src[G.inv(z)][ps]
                    for x, a in Dz.column(w).items():
                        for u, b in Czi.row(v).items():
                            k = (ps, x, u)
                            avg[k] = avg.get(k, 0) + a * b
                avg = {k: Fraction(a, Z.order) for k, a in avg.items() if a}
                if avg and ech.add(avg):
                    out.append(avg)
    return out


def hom_homology_direct(src: HodgeLevel, tgt: HodgeLevel, max_dim: int = 20_000
                        ) -> tuple[int, int]:
    G = src.omega.group
    even = odd = 0
    for t in conjugacy_data(G).representatives:
        Z = centralizer(G, t)
        H = HomSupercomplex(src.piece(t), tgt.piece(t), max_dim)
        acts = {z: src.action(z, t) for z in Z.members}
        actt = {z: tgt.action(z, t) for z in Z.members}
        bases = {p: equivariant_hom_basis(H, p, Z, acts, actt) for p in (0, 1)}
        for p in (0, 1):
            for v in bases[p]:
                if H.apply((p + 1) % 2, H.apply(p, v)):
                    raise VerificationError("Hom differential does not square to zero")
        h = restricted_homology({}, H.apply, bases, lambda p: (p + 1) % 2)
        even += h[0]
        odd += h[1]
    return even, odd


def hp_at_level(A: GAlgebra, B: GAlgebra, m: int, n: int, stabilize: bool = False,
                budget: int = DEFAULT_BUDGET, method: str = "reduced") -> tuple[int, int]:
    """Homology ``(even, odd)`` of ``Hom_G(theta^m(A), theta^n(B))``."""
    if not stabilize and not (A.is_unital and B.is_unital):
        raise NonUnitalError("the unstabilized route needs unital algebras")
    if stabilize:
        A, B = stabilize_algebra(A), stabilize_algebra(B)
    src = HodgeLevel(omega_forms(A, m + 1, budget), m)
    tgt = HodgeLevel(omega_forms(B, n + 1, budget), n)
    if method == "reduced":
        return hom_homology_reduced(src, tgt)
    if method == "direct":
        return hom_homology_direct(src, tgt)
    raise ValueError(f"unknown method {method!r}")
