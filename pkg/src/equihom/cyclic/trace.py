"""The trace ``Omega_G(A (x) K_G) -> Omega_G(A)``.

A word ``(x0 (x) e_{a0 b0}) d(x1 (x) e_{a1 b1}) ... `` at ``t`` maps to
``x0 dx1 ... dxn`` when the matrix units chain up, ``b_i = a_{i+1}``, and
close up twisted by ``t``, ``b_n = t a_0``; otherwise to zero.  A leading
adjoined unit acts as the identity matrix, so the closing condition becomes
``b_n = t a_1``.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..homalg import QMatrix, rank
from .algebra import GAlgebra, stabilize
from .forms import DEFAULT_BUDGET, UNIT, OmegaForms, omega_forms


@dataclass
class TraceReport:
    degrees: int
    b: bool
    B: bool
    T: bool
    equivariant: bool
    surjective_degree_zero: bool
    maps: dict[tuple[int, int], QMatrix]

    @property
    def ok(self) -> bool:
        return self.b and self.B and self.T and self.equivariant and self.surjective_degree_zero


class TraceMap:
    def __init__(self, stab: OmegaForms, plain: OmegaForms):
        G = plain.group
        if stab.A.dim != plain.A.dim * G.order ** 2:
            raise ValueError("first argument must be forms on A (x) K_G")
        if stab.unitize_degree_zero or plain.unitize_degree_zero:
            raise ValueError("the trace is defined for the non-unitized degree-zero convention")
        self.stab, self.plain, self.group = stab, plain, G
        self._cache: dict = {}

    def _split(self, c: int) -> tuple[int, int, int]:
        n = self.group.order
        x, r = divmod(c, n * n)
        a, b = divmod(r, n)
        return x, a, b

    def word(self, t: int, w: tuple) -> dict:
        G = self.group
        if w[0] == UNIT:
            parts = [self._split(c) for c in w[1:]]
            if not parts:
                return {}
            start = parts[0][1]
            head = (UNIT,)
        else:
            parts = [self._split(c) for c in w]
            start = parts[0][1]
            head = ()
        for (_, _, b), (_, a, _) in zip(parts, parts[1:]):
            if b != a:
                return {}
        if parts[-1][2] != G.mul(t, start):
            return {}
        return {head + tuple(x for x, _, _ in parts): 1}

    def matrix(self, n: int, t: int) -> QMatrix:
        key = (n, t)
        if key not in self._cache:
            idx = self.plain.index(n)
            cols = {j: {idx[k]: a for k, a in self.word(t, w).items()}
                    for j, w in enumerate(self.stab.basis(n))}
            self._cache[key] = QMatrix.from_columns(len(idx), self.stab.piece_dim(n), cols)
        return self._cache[key]

    def check(self, degrees: int) -> TraceReport:
        S, P, G = self.stab, self.plain, self.group
        ok = {"b": True, "B": True, "T": True, "eq": True}
        surj = True
        for t in G.elements:
            for n in range(degrees + 1):
                Tr = self.matrix(n, t)
                if n >= 1 and self.matrix(n - 1, t) @ S.b(n, t) != P.b(n, t) @ Tr:
                    ok["b"] = False
                if n + 1 <= degrees and self.matrix(n + 1, t) @ S.B(n, t) != P.B(n, t) @ Tr:
                    ok["B"] = False
                if Tr @ S.T(n, t) != P.T(n, t) @ Tr:
                    ok["T"] = False
                for g in G.elements:
                    u = G.conj(g, t)
                    if self.matrix(n, u) @ S.action(n, g) != P.action(n, g) @ Tr:
                        ok["eq"] = False
            if P.A.is_unital:
                Tr0 = self.matrix(0, t)
                surj = surj and rank(Tr0) == Tr0.rows
        maps = {k: m for k, m in self._cache.items()}
        return TraceReport(degrees, ok["b"], ok["B"], ok["T"], ok["eq"], surj, maps)


def trace_map(A: GAlgebra, degrees: int = 2, budget: int = DEFAULT_BUDGET) -> TraceReport:
    """Build both form complexes up to ``degrees`` and verify the trace."""
    stab = omega_forms(stabilize(A), degrees, budget)
    plain = omega_forms(A, degrees, budget)
    return TraceMap(stab, plain).check(degrees)
