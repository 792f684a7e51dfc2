"""Hodge-tower levels ``theta^n = Omega^0 + ... + Omega^{n-1} + Omega^n / b Omega^{n+1}``."""

from __future__ import annotations

from functools import cached_property

from ..homalg import (QMatrix, Quotient, QuotientPresentation, Supercomplex, block_matrix)
from .forms import OmegaForms


class HodgeLevel:
    """Level ``n`` of the Hodge tower, one paracomplex per group element.

    Coordinates of a piece are the concatenation of ``Omega^0_t``, ...,
    ``Omega^{n-1}_t`` and the complement coordinates of the quotient
    ``Omega^n_t / b Omega^{n+1}_t``, sorted into even and odd blocks.
    The differential is ``b + B``; ``B`` out of the top degree is dropped.
    """

    def __init__(self, omega: OmegaForms, n: int):
        if not 0 <= n < omega.max_degree:
            raise ValueError(f"level {n} needs forms up to degree {n + 1}, "
                             f"have {omega.max_degree}")
        self.omega = omega
        self.level = n
        self._pieces: dict = {}
        self._quot: dict = {}

    def quotient(self, t: int) -> Quotient:
        if t not in self._quot:
            om, n = self.omega, self.level
            rel = list(om.b(n + 1, t).columns().values())
            self._quot[t] = Quotient(QuotientPresentation(om.piece_dim(n), rel))
        return self._quot[t]

    def block_sizes(self, t: int) -> list[int]:
        om = self.omega
        return [om.piece_dim(j) for j in range(self.level)] + [self.quotient(t).dim]

    @cached_property
    def _layout(self):
        # degree j -> (parity, position among that parity's blocks)
        return {j: (j % 2, j // 2) for j in range(self.level + 1)}

    def _parity_sizes(self, t: int) -> dict[int, list[int]]:
        sizes = self.block_sizes(t)
        return {p: [sizes[j] for j in range(self.level + 1) if j % 2 == p] for p in (0, 1)}

    def _degree_map(self, t: int, j: int, k: int, m: QMatrix) -> QMatrix:
        """Transport ``m: Omega^j -> Omega^k`` into level coordinates."""
        n = self.level
        if k == n and j != n:
            q = self.quotient(t)
            cols = {c: q.project(v) for c, v in m.columns().items()}
            m = QMatrix.from_columns(q.dim, m.cols, cols)
        if j == n:
            q = self.quotient(t)
            cols = {}
            for c, i in enumerate(q.complement):
                v = m.column(i)
                cols[c] = q.project(v) if k == n else v
            rows = q.dim if k == n else m.rows
            m = QMatrix.from_columns(rows, q.dim, cols)
        return m

    def piece(self, t: int) -> Supercomplex:
        """The paracomplex at ``t`` with defect ``id - T``."""
        if t in self._pieces:
            return self._pieces[t]
        om, n = self.omega, self.level
        sizes = self._parity_sizes(t)
        d_blocks: dict[int, dict] = {0: {}, 1: {}}
        t_blocks: dict[int, dict] = {0: {}, 1: {}}
        for j in range(n + 1):
            pj, bj = self._layout[j]
            if j >= 1:
                pk, bk = self._layout[j - 1]
                d_blocks[pj][(bk, bj)] = self._degree_map(t, j, j - 1, om.b(j, t))
            if j < n:
                pk, bk = self._layout[j + 1]
                d_blocks[pj][(bk, bj)] = self._degree_map(t, j, j + 1, om.B(j, t))
            t_blocks[pj][(bj, bj)] = self._degree_map(t, j, j, om.T(j, t))
        d0 = block_matrix(sizes[1], sizes[0], d_blocks[0])
        d1 = block_matrix(sizes[0], sizes[1], d_blocks[1])
        T0 = block_matrix(sizes[0], sizes[0], t_blocks[0])
        T1 = block_matrix(sizes[1], sizes[1], t_blocks[1])
        defect = (QMatrix.identity(T0.rows) - T0, QMatrix.identity(T1.rows) - T1)
        self._pieces[t] = Supercomplex(sum(sizes[0]), sum(sizes[1]), d0, d1, defect)
        return self._pieces[t]

    def T(self, t: int) -> tuple[QMatrix, QMatrix]:
        P = self.piece(t)
        return tuple(QMatrix.identity(P.dim(p)) - P.para_defect[p] for p in (0, 1))

    def action(self, g: int, t: int) -> tuple[QMatrix, QMatrix]:
        """``g``: piece ``t`` -> piece ``g t g^-1``, per parity."""
        om, n = self.omega, self.level
        u = om.group.conj(g, t)
        src, tgt = self._parity_sizes(t), self._parity_sizes(u)
        blocks: dict[int, dict] = {0: {}, 1: {}}
        for j in range(n + 1):
            p, b = self._layout[j]
            m = om.action(j, g)
            if j == n:
                qs, qt = self.quotient(t), self.quotient(u)
                cols = {c: qt.project(m.column(i)) for c, i in enumerate(qs.complement)}
                m = QMatrix.from_columns(qt.dim, qs.dim, cols)
            blocks[p][(b, b)] = m
        return tuple(block_matrix(tgt[p], src[p], blocks[p]) for p in (0, 1))


def hodge_level(omega: OmegaForms, n: int) -> HodgeLevel:
    return HodgeLevel(omega, n)
