"""Finite-dimensional algebras with an action of a finite group."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from fractions import Fraction
from functools import cached_property

from ..fingroup import FiniteGroup
from ..homalg import QMatrix, Echelon, vec_iadd


class AlgebraError(ValueError):
    pass


class GAlgebra:
    """Structure constants ``mult[(i, j)] = {k: c}`` plus an action by automorphisms.

    ``action[g]`` is the matrix of ``g``; ``unit`` is the unit vector, or
    ``None`` for a non-unital algebra.
    """

    def __init__(self, dim: int, mult: Mapping[tuple[int, int], Mapping[int, object]],
                 group: FiniteGroup, action: Sequence[QMatrix], unit: Mapping | None = None,
                 name: str = "A", check: bool = True):
        self.dim = dim
        self.group = group
        self.name = name
        self._mult = {(i, j): {k: Fraction(c) for k, c in v.items() if c}
                      for (i, j), v in mult.items()}
        self.action = tuple(action)
        self.unit = None if unit is None else {k: Fraction(c) for k, c in unit.items() if c}
        if check:
            self.check()

    def __repr__(self) -> str:
        return f"GAlgebra({self.name}, dim={self.dim}, |G|={self.group.order})"

    @property
    def is_unital(self) -> bool:
        return self.unit is not None

    def product(self, i: int, j: int) -> dict:
        return self._mult.get((i, j), {})

    def multiply(self, u: Mapping, v: Mapping) -> dict:
        out: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                vec_iadd(out, self.product(i, j), a * b)
        return out

    def act(self, g: int, i: int) -> dict:
        return self.action[g].column(i)

    def act_vector(self, g: int, v: Mapping) -> dict:
        return self.action[g].apply(v)

    def check(self) -> None:
        n, G = self.dim, self.group
        basis = [{i: Fraction(1)} for i in range(n)]
        for a in range(n):
            for b in range(n):
                ab = self.product(a, b)
                for c in range(n):
                    if self.multiply(ab, basis[c]) != self.multiply(basis[a], self.product(b, c)):
                        raise AlgebraError(f"{self.name}: multiplication is not associative")
        if len(self.action) != G.order:
            raise AlgebraError(f"{self.name}: need one action matrix per group element")
        for g in G.elements:
            m = self.action[g]
            if m.shape != (n, n):
                raise AlgebraError(f"{self.name}: action matrix has wrong shape")
            for a in range(n):
                for b in range(n):
                    lhs = m.apply(self.product(a, b))
                    if lhs != self.multiply(m.column(a), m.column(b)):
                        raise AlgebraError(f"{self.name}: element {g} is not an automorphism")
        for g in G.elements:
            for h in G.elements:
                if self.action[g] @ self.action[h] != self.action[G.mul(g, h)]:
                    raise AlgebraError(f"{self.name}: action is not a homomorphism")
        if self.unit is not None:
            for a in range(n):
                if self.multiply(self.unit, basis[a]) != basis[a] or \
                        self.multiply(basis[a], self.unit) != basis[a]:
                    raise AlgebraError(f"{self.name}: unit laws fail")

    @cached_property
    def center_dim(self) -> int:
        # x central iff xe_j - e_jx = 0 for all j
        rows = []
        for j in range(self.dim):
            M = {}
            for i in range(self.dim):
                col = dict(self.product(i, j))
                vec_iadd(col, self.product(j, i), -1)
                for k, c in col.items():
                    M.setdefault(k, {})[i] = c
            rows.extend(M.values())
        return self.dim - Echelon(rows).rank


def _action_from_perms(G: FiniteGroup, perms: Sequence[Sequence[int]], n: int) -> list[QMatrix]:
    return [QMatrix.from_columns(n, n, {i: {p[i]: 1} for i in range(n)}) for p in perms]


def base_field(G: FiniteGroup) -> GAlgebra:
    """The ground field with trivial action."""
    ident = [QMatrix.identity(1)] * G.order
    return GAlgebra(1, {(0, 0): {0: 1}}, G, ident, {0: 1}, name="Q")


def function_algebra(G: FiniteGroup, points: int, perms: Sequence[Sequence[int]]) -> GAlgebra:
    """Functions on a finite ``G``-set; ``perms[g][x]`` is ``g.x``.

    ``(g.f)(x) = f(g^-1 x)``, which on indicators reads ``g.e_x = e_{gx}``.
    """
    mult = {(i, i): {i: 1} for i in range(points)}
    return GAlgebra(points, mult, G, _action_from_perms(G, perms, points),
                    {i: 1 for i in range(points)}, name=f"C({points} pts)")


def function_algebra_of(X) -> GAlgebra:
    """Functions on the vertex set of a 0-dimensional ``GComplex``."""
    if X.complex.dim > 0:
        raise AlgebraError("function algebras are only built for 0-dimensional complexes")
    verts = X.complex.vertices
    pos = {v: i for i, v in enumerate(verts)}
    perms = [[pos[X.vertex_action[g][v]] for v in verts] for g in X.group.elements]
    return function_algebra(X.group, len(verts), perms)


def compact_operators(G: FiniteGroup) -> GAlgebra:
    """``K_G``: matrix units ``e_{a,b}`` (index ``a|G| + b``), ``r.e_{a,b} = e_{ra,rb}``."""
    n = G.order
    mult = {}
    for a in range(n):
        for b in range(n):
            for d in range(n):
                mult[(a * n + b, b * n + d)] = {a * n + d: 1}
    perms = [[G.mul(r, a) * n + G.mul(r, b) for a in range(n) for b in range(n)]
             for r in G.elements]
    return GAlgebra(n * n, mult, G, _action_from_perms(G, perms, n * n),
                    {a * n + a: 1 for a in range(n)}, name="K_G")


def tensor(A: GAlgebra, B: GAlgebra) -> GAlgebra:
    """``A (x) B`` with basis ``(i, j) -> i dim B + j`` and the diagonal action."""
    if A.group is not B.group and A.group.table != B.group.table:
        raise AlgebraError("tensor factors carry different groups")
    m = B.dim
    mult = {}
    for (i, k), u in A._mult.items():
        for (j, l), v in B._mult.items():
            mult[(i * m + j, k * m + l)] = {p * m + q: a * b for p, a in u.items() for q, b in v.items()}
    action = []
    for g in A.group.elements:
        ca, cb = A.action[g].columns(), B.action[g].columns()
        cols = {}
        for i in range(A.dim):
            for j in range(m):
                cols[i * m + j] = {p * m + q: a * b for p, a in ca.get(i, {}).items()
                                   for q, b in cb.get(j, {}).items()}
        action.append(QMatrix.from_columns(A.dim * m, A.dim * m, cols))
    unit = None
    if A.unit is not None and B.unit is not None:
        unit = {p * m + q: a * b for p, a in A.unit.items() for q, b in B.unit.items()}
    return GAlgebra(A.dim * m, mult, A.group, action, unit, name=f"{A.name}(x){B.name}")


def stabilize(A: GAlgebra) -> GAlgebra:
    return tensor(A, compact_operators(A.group))
