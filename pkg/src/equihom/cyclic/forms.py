"""Equivariant noncommutative differential forms and the paramixed operators.

``Omega^n`` splits into pieces indexed by ``t in G``; a piece is spanned by
words ``(a0, a1, ..., an)`` standing for ``a0 da1 ... dan``, where ``a0``
may be :data:`UNIT` (the adjoined unit ``1+``) when ``n >= 1``.  Degree zero
is ``A`` itself unless ``unitize_degree_zero`` is set, in which case the
adjoined unit is allowed there too.
"""

from __future__ import annotations

from collections.abc import Mapping
from fractions import Fraction
from itertools import product

from ..homalg import QMatrix, rank, vec_iadd
from .algebra import GAlgebra

UNIT = -1

DEFAULT_BUDGET = 20_000


class BudgetExceeded(OverflowError):
    def __init__(self, what: str, size: int, budget: int):
        super().__init__(f"{what} needs {size} dimensions, budget is {budget}")
        self.size, self.budget = size, budget


def _expand(coeff, factors: list[Mapping], out: dict) -> None:
    """Add ``coeff * (f_0 (x) f_1 (x) ...)`` to ``out`` keyed by word tuples."""
    for combo in product(*(f.items() for f in factors)):
        c = coeff
        for _, a in combo:
            c *= a
        if c:
            key = tuple(k for k, _ in combo)
            v = out.get(key, 0) + c
            if v:
                out[key] = v
            else:
                del out[key]


class OmegaForms:
    """``Omega^n_G(A)`` for ``0 <= n <= max_degree`` with ``b``, ``B``, ``T`` and the action."""

    def __init__(self, A: GAlgebra, max_degree: int, budget: int = DEFAULT_BUDGET,
                 unitize_degree_zero: bool = False):
        self.A = A
        self.group = A.group
        self.max_degree = max_degree
        self.unitize_degree_zero = unitize_degree_zero
        total = sum(self.dim(n) for n in range(max_degree + 1))
        if total > budget:
            raise BudgetExceeded(f"forms on {A.name} up to degree {max_degree}", total, budget)
        self._basis: dict[int, list[tuple]] = {}
        self._index: dict[int, dict] = {}
        self._mats: dict = {}
        self._tinv_cache: dict = {}

    # bases -------------------------------------------------------------

    def piece_dim(self, n: int) -> int:
        d = self.A.dim
        if n == 0:
            return d + 1 if self.unitize_degree_zero else d
        return (d + 1) * d ** n

    def dim(self, n: int) -> int:
        return self.group.order * self.piece_dim(n)

    def basis(self, n: int) -> list[tuple]:
        if n not in self._basis:
            if not 0 <= n <= self.max_degree:
                raise IndexError(f"degree {n} outside 0..{self.max_degree}")
            d = range(self.A.dim)
            lead = [UNIT, *d] if (n > 0 or self.unitize_degree_zero) else list(d)
            words = [(a0, *rest) for a0 in lead for rest in product(d, repeat=n)]
            self._basis[n] = words
            self._index[n] = {w: i for i, w in enumerate(words)}
        return self._basis[n]

    def index(self, n: int) -> dict:
        self.basis(n)
        return self._index[n]

    # word-level operators (piece t, vectors keyed by words) ------------

    def _lead_times(self, x: Mapping, a0: int) -> dict:
        """``x * a0`` with ``a0`` possibly the adjoined unit."""
        if a0 == UNIT:
            return dict(x)
        return self.A.multiply(x, {a0: 1})

    def _act(self, g: int, i: int) -> dict:
        key = (g, i)
        if key not in self._tinv_cache:
            self._tinv_cache[key] = self.A.act(g, i)
        return self._tinv_cache[key]

    def b_word(self, t: int, w: tuple) -> dict:
        n = len(w) - 1
        out: dict = {}
        if n == 0:
            return out
        A = self.A
        a0 = w[0]
        one = [{a: 1} for a in w]
        first = {w[1]: Fraction(1)} if a0 == UNIT else A.product(a0, w[1])
        _expand(1, [first, *one[2:]], out)
        for j in range(1, n):
            _expand((-1) ** j, [*one[:j], A.product(w[j], w[j + 1]), *one[j + 2:]], out)
        last = self._lead_times(self._act(self.group.inv(t), w[n]), a0)
        _expand((-1) ** n, [last, *one[1:n]], out)
        return out

    def B_word(self, t: int, w: tuple) -> dict:
        n = len(w) - 1
        out: dict = {}
        if w[0] == UNIT:
            return out
        ti = self.group.inv(t)
        one = [{a: 1} for a in w]
        moved = [self._act(ti, a) for a in w]
        for i in range(n + 1):
            sign = (-1) ** (n * i)
            _expand(sign, [{UNIT: 1}, *moved[n + 1 - i:], *one[:n + 1 - i]], out)
        return out

    def act_word(self, g: int, w: tuple) -> dict:
        """Action of ``g`` from piece ``t`` to piece ``g t g^-1`` (same word space)."""
        out: dict = {}
        factors = [{UNIT: 1} if a == UNIT else self._act(g, a) for a in w]
        _expand(1, factors, out)
        return out

    def T_word(self, t: int, w: tuple) -> dict:
        return self.act_word(self.group.inv(t), w)

    def apply_words(self, op, t: int, vec: Mapping) -> dict:
        out: dict = {}
        for w, a in vec.items():
            vec_iadd(out, op(t, w), a)
        return out

    # matrices ----------------------------------------------------------

    def _matrix(self, key, n_src: int, n_tgt: int, fn) -> QMatrix:
        if key not in self._mats:
            src, idx = self.basis(n_src), self.index(n_tgt)
            cols = {j: {idx[k]: a for k, a in fn(w).items()} for j, w in enumerate(src)}
            self._mats[key] = QMatrix.from_columns(len(idx), len(src), cols)
        return self._mats[key]

    def b(self, n: int, t: int) -> QMatrix:
        """``b: Omega^n_t -> Omega^{n-1}_t`` (zero map out of degree 0)."""
        if n == 0:
            return QMatrix(0, self.piece_dim(0))
        return self._matrix(("b", n, t), n, n - 1, lambda w: self.b_word(t, w))

    def B(self, n: int, t: int) -> QMatrix:
        """``B: Omega^n_t -> Omega^{n+1}_t``."""
        return self._matrix(("B", n, t), n, n + 1, lambda w: self.B_word(t, w))

    def T(self, n: int, t: int) -> QMatrix:
        return self._matrix(("T", n, t), n, n, lambda w: self.T_word(t, w))

    def action(self, n: int, g: int) -> QMatrix:
        """``g: Omega^n_t -> Omega^n_{gtg^-1}``; the matrix does not depend on ``t``."""
        return self._matrix(("act", n, g), n, n, lambda w: self.act_word(g, w))

    def E(self, n: int, t: int) -> QMatrix:
        return projector_E(self.T(n, t), self.group.element_order(t))

    # verification ------------------------------------------------------

    def check_paramixed(self, upto: int | None = None) -> dict[str, bool]:
        """``b^2 = 0``, ``B^2 = 0``, ``bB + Bb = id - T``, ``[T, b] = [T, B] = 0``.

        Checked on every piece and every degree where both sides are defined.
        """
        top = self.max_degree if upto is None else min(upto, self.max_degree)
        res = {"b2": True, "B2": True, "bB+Bb=1-T": True, "Tb=bT": True, "TB=BT": True,
               "equivariant": True}
        G = self.group
        for t in G.elements:
            for n in range(top + 1):
                Tn = self.T(n, t)
                if n >= 2 and not (self.b(n - 1, t) @ self.b(n, t)).is_zero():
                    res["b2"] = False
                if n >= 1 and self.b(n, t) @ Tn != self.T(n - 1, t) @ self.b(n, t):
                    res["Tb=bT"] = False
                if n + 1 <= top:
                    if self.B(n, t) @ Tn != self.T(n + 1, t) @ self.B(n, t):
                        res["TB=BT"] = False
                    lhs = self.b(n + 1, t) @ self.B(n, t)
                    if n >= 1:
                        lhs = lhs + self.B(n - 1, t) @ self.b(n, t)
                    if lhs != QMatrix.identity(self.piece_dim(n)) - Tn:
                        res["bB+Bb=1-T"] = False
                if n + 2 <= top and not (self.B(n + 1, t) @ self.B(n, t)).is_zero():
                    res["B2"] = False
                for g in G.elements:
                    u = G.conj(g, t)
                    act = self.action(n, g)
                    if n >= 1 and self.action(n - 1, g) @ self.b(n, t) != self.b(n, u) @ act:
                        res["equivariant"] = False
                    if n + 1 <= top and self.action(n + 1, g) @ self.B(n, t) != self.B(n, u) @ act:
                        res["equivariant"] = False
        return res

    def check_projector(self, upto: int | None = None) -> dict[str, bool]:
        """``E^2 = E``, ``ET = TE = E``, ``[E, b] = [E, B] = 0`` and ``1 - T``
        invertible on the image of ``1 - E``."""
        top = self.max_degree if upto is None else min(upto, self.max_degree)
        res = {"E2=E": True, "ET=TE=E": True, "Eb=bE": True, "EB=BE": True,
               "1-T invertible on (1-E)": True}
        for t in self.group.elements:
            for n in range(top + 1):
                E, T = self.E(n, t), self.T(n, t)
                d = self.piece_dim(n)
                if E @ E != E:
                    res["E2=E"] = False
                if E @ T != E or T @ E != E:
                    res["ET=TE=E"] = False
                if n >= 1 and self.E(n - 1, t) @ self.b(n, t) != self.b(n, t) @ E:
                    res["Eb=bE"] = False
                if n + 1 <= top and self.E(n + 1, t) @ self.B(n, t) != self.B(n, t) @ E:
                    res["EB=BE"] = False
                comp = QMatrix.identity(d) - E
                if rank((QMatrix.identity(d) - T) @ comp) != rank(comp):
                    res["1-T invertible on (1-E)"] = False
        return res


def projector_E(T: QMatrix, order: int) -> QMatrix:
    """``E = (1/order) sum_j T^j``; ``order`` must be a multiple of the order of ``T``."""
    n = T.rows
    acc = QMatrix(n, n)
    power = QMatrix.identity(n)
    for _ in range(order):
        acc = acc + power
        power = power @ T
    if power != QMatrix.identity(n):
        raise ValueError("T^order is not the identity")
    return acc.scale(Fraction(1, order))


def omega_forms(A: GAlgebra, max_degree: int, budget: int = DEFAULT_BUDGET,
                unitize_degree_zero: bool = False) -> OmegaForms:
    return OmegaForms(A, max_degree, budget, unitize_degree_zero)
