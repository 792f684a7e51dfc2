"""The equivariant HKR map for functions on a finite ``G``-set.

For a 0-dimensional space every form of positive degree on the fixed sets
vanishes, so ``alpha`` is restriction of ``a0`` to ``X^t`` in degree zero
and zero elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..gcomplex import GComplex, fixed_subcomplex
from ..homalg import QMatrix, rank
from .algebra import function_algebra_of
from .forms import DEFAULT_BUDGET, OmegaForms, omega_forms


@dataclass
class HKRReport:
    hochschild: dict[int, int]
    fixed_points: int
    alpha_b_zero: bool
    degree_zero_iso: bool
    alpha: dict[int, QMatrix]

    @property
    def ok(self) -> bool:
        return (self.alpha_b_zero and self.degree_zero_iso
                and self.hochschild.get(0) == self.fixed_points
                and all(h == 0 for n, h in self.hochschild.items() if n > 0))


def hkr_alpha(omega: OmegaForms, X: GComplex, t: int) -> QMatrix:
    """``alpha: Omega^0_t -> functions on X^t``."""
    verts = X.complex.vertices
    fixed = fixed_subcomplex(X, t).vertices
    pos = {v: i for i, v in enumerate(fixed)}
    cols = {}
    for j, w in enumerate(omega.basis(0)):
        a0 = w[0]
        if a0 >= 0 and verts[a0] in pos:
            cols[j] = {pos[verts[a0]]: 1}
    return QMatrix.from_columns(len(fixed), omega.piece_dim(0), cols)


def hochschild_homology(omega: OmegaForms, t: int, upto: int) -> dict[int, int]:
    """Homology of ``(Omega_t, b)`` in degrees ``0..upto`` (needs ``upto + 1`` forms)."""
    if upto + 1 > omega.max_degree:
        raise ValueError(f"degree {upto} needs forms up to {upto + 1}")
    ranks = {n: rank(omega.b(n, t)) for n in range(1, upto + 2)}
    return {n: omega.piece_dim(n) - ranks.get(n, 0) - ranks[n + 1] for n in range(upto + 1)}


def hkr_map(X: GComplex, max_degree: int = 3, budget: int = DEFAULT_BUDGET,
            unitize_degree_zero: bool = False) -> HKRReport:
    if X.complex.dim != 0:
        raise ValueError("the HKR check applies to 0-dimensional complexes")
    A = function_algebra_of(X)
    om = omega_forms(A, max_degree, budget, unitize_degree_zero)
    upto = max_degree - 1
    total = {n: 0 for n in range(upto + 1)}
    fixed_points = 0
    alpha_b = iso = True
    alphas = {}
    for t in X.group.elements:
        for n, h in hochschild_homology(om, t, upto).items():
            total[n] += h
        a = hkr_alpha(om, X, t)
        alphas[t] = a
        fixed_points += a.rows
        if not (a @ om.b(1, t)).is_zero():
            alpha_b = False
        # alpha is onto and kills exactly b(Omega^1)
        r = rank(a)
        if r != a.rows or om.piece_dim(0) - r != rank(om.b(1, t)):
            iso = False
    return HKRReport(total, fixed_points, alpha_b, iso, alphas)
