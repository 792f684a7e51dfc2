"""Exact rational linear and homological algebra.

Everything here works over ``Fraction`` with sparse vectors stored as plain
dicts ``{key: Fraction}``.  Keys are usually ints, but any totally ordered
hashable key works (tuples are used for Hom-spaces), which keeps the
bookkeeping of block spaces out of the elimination code.

The workhorse is :class:`Echelon`, an incrementally built row-echelon basis of
a span.  Small dense matrices go through fraction-free (Bareiss) elimination
instead; both routes are cross-checked in the test-suite.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping, Sequence

DENSE_THRESHOLD = 64

Vector = dict


class VerificationError(ArithmeticError):
    """An algebraic identity that must hold exactly was found to fail."""


def as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def vec_add(u: Mapping, v: Mapping, scale=1) -> dict:
    """Return ``u + scale * v`` as a new sparse vector."""
    out = dict(u)
    if not scale:
        return out
    for k, a in v.items():
        c = out.get(k, 0) + scale * a
        if c:
            out[k] = c
        else:
            out.pop(k, None)
    return out


def vec_iadd(u: dict, v: Mapping, scale=1) -> dict:
    """In-place ``u += scale * v``."""
    if not scale:
        return u
    for k, a in v.items():
        c = u.get(k, 0) + scale * a
        if c:
            u[k] = c
        else:
            u.pop(k, None)
    return u


def vec_scale(v: Mapping, c) -> dict:
    if not c:
        return {}
    return {k: c * a for k, a in v.items()}


def clean(v: Mapping) -> dict:
    return {k: as_fraction(a) for k, a in v.items() if a}


# ---------------------------------------------------------------------------
# Matrices


class QMatrix:
    """Sparse rational matrix, stored column-major.

    ``QMatrix(rows, cols, {(i, j): value})``.  Zero entries are never stored.
    """

    __slots__ = ("rows", "cols", "_cols", "_rows_cache")

    def __init__(self, rows: int, cols: int, entries: Mapping | None = None):
        self.rows = int(rows)
        self.cols = int(cols)
        self._cols: dict[int, dict[int, Fraction]] = {}
        self._rows_cache = None
        if entries:
            for (i, j), a in entries.items():
                if not (0 <= i < self.rows and 0 <= j < self.cols):
                    raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
                if a:
                    self._cols.setdefault(j, {})[i] = as_fraction(a)

    # construction helpers -------------------------------------------------

    @classmethod
    def from_columns(cls, rows: int, cols: int, columns: Mapping[int, Mapping]) -> "QMatrix":
        m = cls(rows, cols)
        for j, col in columns.items():
            if not 0 <= j < cols:
                raise IndexError(f"column {j} outside 0..{cols - 1}")
            c = {}
            for i, a in col.items():
                if not 0 <= i < rows:
                    raise IndexError(f"row {i} outside 0..{rows - 1}")
                if a:
                    c[i] = as_fraction(a)
            if c:
                m._cols[j] = c
        return m

    @classmethod
    def from_dense(cls, data: Sequence[Sequence]) -> "QMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        entries = {(i, j): a for i, row in enumerate(data) for j, a in enumerate(row) if a}
        return cls(rows, cols, entries)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls(rows, cols)

    # access ---------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def column(self, j: int) -> dict:
        return self._cols.get(j, {})

    def columns(self) -> dict[int, dict]:
        return self._cols

    def row(self, i: int) -> dict:
        if self._rows_cache is None:
            rc: dict[int, dict] = {}
            for j, col in self._cols.items():
                for r, a in col.items():
                    rc.setdefault(r, {})[j] = a
            self._rows_cache = rc
        return self._rows_cache.get(i, {})

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self._cols.get(j, {}).get(i, Fraction(0))

    def entries(self):
        for j, col in self._cols.items():
            for i, a in col.items():
                yield (i, j), a

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self._cols.values())

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), a in self.entries():
            out[i][j] = a
        return out

    def is_zero(self) -> bool:
        return not self._cols

    # arithmetic -----------------------------------------------------------

    def apply(self, v: Mapping[int, Fraction]) -> dict:
        out: dict = {}
        for j, a in v.items():
            col = self._cols.get(j)
            if col:
                vec_iadd(out, col, a)
        return out

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = QMatrix(self.rows, other.cols)
        for j, col in other._cols.items():
            c = self.apply(col)
            if c:
                out._cols[j] = c
        return out

    def _combine(self, other: "QMatrix", scale) -> "QMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        out = QMatrix(self.rows, self.cols)
        keys = set(self._cols) | set(other._cols)
        for j in keys:
            c = vec_add(self._cols.get(j, {}), other._cols.get(j, {}), scale)
            if c:
                out._cols[j] = c
        return out

    def __add__(self, other: "QMatrix") -> "QMatrix":
        return self._combine(other, 1)

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        return self._combine(other, -1)

    def __neg__(self) -> "QMatrix":
        return self.scale(-1)

    def scale(self, c) -> "QMatrix":
        c = as_fraction(c)
        out = QMatrix(self.rows, self.cols)
        if c:
            out._cols = {j: vec_scale(col, c) for j, col in self._cols.items()}
        return out

    def transpose(self) -> "QMatrix":
        out = QMatrix(self.cols, self.rows)
        for (i, j), a in self.entries():
            out._cols.setdefault(i, {})[j] = a
        return out

    @property
    def T(self) -> "QMatrix":
        return self.transpose()

    def __eq__(self, other) -> bool:
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.shape == other.shape and self._cols == other._cols

    def __repr__(self) -> str:
        return f"QMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


def block_matrix(row_sizes: Sequence[int], col_sizes: Sequence[int],
                 blocks: Mapping[tuple[int, int], QMatrix]) -> QMatrix:
    """Assemble a block matrix from ``{(block_row, block_col): QMatrix}``."""
    roff = [0]
    for s in row_sizes:
        roff.append(roff[-1] + s)
    coff = [0]
    for s in col_sizes:
        coff.append(coff[-1] + s)
    out = QMatrix(roff[-1], coff[-1])
    for (bi, bj), m in blocks.items():
        if m.shape != (row_sizes[bi], col_sizes[bj]):
            raise ValueError(f"block {(bi, bj)} has shape {m.shape}, "
                             f"expected {(row_sizes[bi], col_sizes[bj])}")
        for j, col in m.columns().items():
            tgt = out._cols.setdefault(coff[bj] + j, {})
            for i, a in col.items():
                tgt[roff[bi] + i] = tgt.get(roff[bi] + i, 0) + a
    for j in list(out._cols):
        out._cols[j] = {i: a for i, a in out._cols[j].items() if a}
        if not out._cols[j]:
            del out._cols[j]
    return out


# ---------------------------------------------------------------------------
# Elimination


class Echelon:
    """Row-echelon basis of a growing span of sparse vectors.

    Every stored row has its pivot as its smallest key with coefficient 1.
    ``rref()`` back-substitutes so that pivot columns are cleared in all
    other rows, after which ``coords`` reads coordinates off pivots and
    ``reduce`` returns normal forms supported on non-pivot keys.
    """

    def __init__(self, vectors: Iterable[Mapping] = ()):
        self.rows: dict = {}
        self._reduced = True
        for v in vectors:
            self.add(v)

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> list:
        return sorted(self.rows)

    def reduce(self, v: Mapping) -> dict:
        rows = self.rows
        out = dict(v)
        heap = [k for k in out if k in rows]
        heapq.heapify(heap)
        while heap:
            p = heapq.heappop(heap)
            c = out.get(p)
            if not c:
                continue
            for k, a in rows[p].items():
                new = out.get(k, 0) - c * a
                if new:
                    if k not in out and k in rows:
                        heapq.heappush(heap, k)
                    out[k] = new
                else:
                    out.pop(k, None)
        return out

    def add(self, v: Mapping) -> bool:
        """Add ``v`` to the span; return True if the rank grew."""
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        inv = 1 / as_fraction(r[p])
        self.rows[p] = {k: a * inv for k, a in r.items()}
        self._reduced = False
        return True

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)

    def rref(self) -> "Echelon":
        if self._reduced:
            return self
        rows = self.rows
        for p in sorted(rows, reverse=True):
            row = rows[p]
            hits = [k for k in row if k != p and k in rows]
            for k in hits:
                c = row.get(k)
                if c:
                    vec_iadd(row, rows[k], -c)
        self._reduced = True
        return self

    def basis(self) -> list[dict]:
        self.rref()
        return [self.rows[p] for p in sorted(self.rows)]

    def coords(self, v: Mapping, check: bool = True) -> list[Fraction]:
        """Coordinates of ``v`` in :meth:`basis` (``v`` must lie in the span)."""
        self.rref()
        piv = sorted(self.rows)
        c = [as_fraction(v.get(p, 0)) for p in piv]
        if check:
            w = dict(v)
            for p, a in zip(piv, c):
                vec_iadd(w, self.rows[p], -a)
            if w:
                raise ValueError("vector is not in the span")
        return c


def _bareiss_rank(dense: list[list]) -> int:
    """Rank by fraction-free elimination on an integer-scaled copy."""
    from math import lcm

    mat = []
    for row in dense:
        fr = [as_fraction(a) for a in row]
        den = 1
        for a in fr:
            den = lcm(den, a.denominator)
        mat.append([int(a * den) for a in fr])
    if not mat or not mat[0]:
        return 0
    m, n = len(mat), len(mat[0])
    rank = 0
    prev = 1
    col = 0
    for col in range(n):
        if rank == m:
            break
        piv = next((i for i in range(rank, m) if mat[i][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        pr = mat[rank]
        for i in range(rank + 1, m):
            ri = mat[i]
            f = ri[col]
            for j in range(col + 1, n):
                q, r = divmod(ri[j] * pr[col] - f * pr[j], prev)
                assert r == 0, "Bareiss division must be exact"
                ri[j] = q
            ri[col] = 0
        # rows above the pivot are left untouched: Bareiss only needs the
        # trailing block to stay exactly divisible by the previous pivot
        prev = pr[col]
        rank += 1
    return rank


def rank(M: QMatrix, method: str = "auto") -> int:
    """Exact rank over the rationals."""
    if M.rows == 0 or M.cols == 0 or M.is_zero():
        return 0
    if method == "dense" or (method == "auto" and M.rows <= DENSE_THRESHOLD
                             and M.cols <= DENSE_THRESHOLD):
        return _bareiss_rank(M.to_dense())
    if M.cols <= M.rows:
        vecs = M.columns().values()
    else:
        vecs = (M.row(i) for i in range(M.rows))
    return Echelon(vecs).rank


def rank_of_vectors(vectors: Iterable[Mapping]) -> int:
    return Echelon(vectors).rank


def kernel_with_free(M: QMatrix) -> tuple[list[dict], list[int]]:
    """Kernel basis together with the free column of each vector.

    Coordinates of a kernel element in this basis are its values at the
    free columns.
    """
    ech = Echelon(M.row(i) for i in range(M.rows)).rref()
    by_free: dict[int, list] = {}
    for p, row in ech.rows.items():
        for k, a in row.items():
            if k != p:
                by_free.setdefault(k, []).append((p, a))
    out, free = [], []
    for f in range(M.cols):
        if f in ech.rows:
            continue
        v = {f: Fraction(1)}
        for p, a in by_free.get(f, ()):
            v[p] = -a
        out.append(v)
        free.append(f)
    return out, free


def kernel_basis(M: QMatrix) -> list[dict]:
    """Basis of ``{x : Mx = 0}``; vector ``k`` has ``k[f] = 1`` at its free column."""
    return kernel_with_free(M)[0]


def image_basis(M: QMatrix) -> list[dict]:
    return Echelon(M.columns().values()).basis()


class Subspace:
    """A subspace given by spanning vectors, with exact coordinates."""

    def __init__(self, vectors: Iterable[Mapping]):
        self._ech = Echelon(vectors).rref()
        self.basis = self._ech.basis()

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, v: Mapping, check: bool = True) -> list[Fraction]:
        return self._ech.coords(v, check)

    def contains(self, v: Mapping) -> bool:
        return self._ech.contains(v)

    def restrict(self, op: Callable[[dict], dict], target: "Subspace") -> QMatrix:
        """Matrix of ``op`` restricted to self with values in ``target``."""
        cols = {}
        for j, b in enumerate(self.basis):
            c = target.coords(op(b))
            cols[j] = {i: a for i, a in enumerate(c) if a}
        return QMatrix.from_columns(target.dim, self.dim, cols)


# ---------------------------------------------------------------------------
# Complexes


@dataclass
class ChainComplex:
    """Bounded chain complex; ``d[n]`` maps degree ``n`` to ``n - 1``."""

    dims: dict[int, int]
    d: dict[int, QMatrix] = field(default_factory=dict)
    validate: bool = True

    def __post_init__(self):
        self.dims = {n: int(k) for n, k in self.dims.items()}
        for n, m in self.d.items():
            if m.shape != (self.dim(n - 1), self.dim(n)):
                raise ValueError(f"d[{n}] has shape {m.shape}, expected "
                                 f"{(self.dim(n - 1), self.dim(n))}")
        if self.validate:
            self.check()

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    @property
    def degrees(self) -> list[int]:
        return sorted(n for n, k in self.dims.items() if k)

    def boundary(self, n: int) -> QMatrix:
        m = self.d.get(n)
        return m if m is not None else QMatrix(self.dim(n - 1), self.dim(n))

    def check(self) -> None:
        for n in self.d:
            if n - 1 in self.d and not (self.d[n - 1] @ self.d[n]).is_zero():
                raise VerificationError(f"d[{n - 1}] o d[{n}] != 0")

    def euler_characteristic(self) -> int:
        return sum((-1) ** (n % 2) * k for n, k in self.dims.items())


def chain_homology(C: ChainComplex) -> dict[int, int]:
    """Homology dimensions ``dim ker d_n - rank d_{n+1}`` per degree."""
    C.check()
    ranks = {n: rank(m) for n, m in C.d.items()}
    return {n: C.dim(n) - ranks.get(n, 0) - ranks.get(n + 1, 0) for n in sorted(C.dims)}


@dataclass
class Supercomplex:
    """Z/2-graded complex; ``d_even`` maps even to odd, ``d_odd`` odd to even.

    With ``para_defect = (D0, D1)`` the object is a paracomplex: the squares
    of the differential must equal ``D0`` on the even and ``D1`` on the odd
    part (``id - T`` in practice).
    """

    even_dim: int
    odd_dim: int
    d_even: QMatrix
    d_odd: QMatrix
    para_defect: tuple[QMatrix, QMatrix] | None = None
    validate: bool = True

    def __post_init__(self):
        if self.d_even.shape != (self.odd_dim, self.even_dim):
            raise ValueError(f"d_even has shape {self.d_even.shape}")
        if self.d_odd.shape != (self.even_dim, self.odd_dim):
            raise ValueError(f"d_odd has shape {self.d_odd.shape}")
        if self.validate:
            self.check()

    def squares(self) -> tuple[QMatrix, QMatrix]:
        return self.d_odd @ self.d_even, self.d_even @ self.d_odd

    def check(self) -> None:
        sq0, sq1 = self.squares()
        if self.para_defect is None:
            if not (sq0.is_zero() and sq1.is_zero()):
                raise VerificationError("supercomplex differential does not square to zero")
        else:
            d0, d1 = self.para_defect
            if sq0 != d0 or sq1 != d1:
                raise VerificationError("paracomplex differential squared differs from id - T")

    def dim(self, parity: int) -> int:
        return self.odd_dim if parity % 2 else self.even_dim

    def differential(self, parity: int) -> QMatrix:
        return self.d_odd if parity % 2 else self.d_even

    def homology(self) -> tuple[int, int]:
        if self.para_defect is not None and not all(m.is_zero() for m in self.para_defect):
            raise VerificationError("homology of a paracomplex with T != id is undefined")
        r0, r1 = rank(self.d_even), rank(self.d_odd)
        return self.even_dim - r0 - r1, self.odd_dim - r1 - r0


def to_supercomplex(C: ChainComplex) -> Supercomplex:
    """Fold a bounded chain complex into even and odd parts."""
    evens = [n for n in sorted(C.dims) if n % 2 == 0]
    odds = [n for n in sorted(C.dims) if n % 2]
    sizes = {0: [C.dim(n) for n in evens], 1: [C.dim(n) for n in odds]}
    pos = {n: (0, i) for i, n in enumerate(evens)} | {n: (1, i) for i, n in enumerate(odds)}
    blocks: dict[int, dict] = {0: {}, 1: {}}
    for n, m in C.d.items():
        if n not in pos or n - 1 not in pos:
            continue
        (ps, bs), (pt, bt) = pos[n], pos[n - 1]
        blocks[ps][(bt, bs)] = m
    d_even = block_matrix(sizes[1], sizes[0], blocks[0])
    d_odd = block_matrix(sizes[0], sizes[1], blocks[1])
    return Supercomplex(sum(sizes[0]), sum(sizes[1]), d_even, d_odd)


def restricted_homology(dims: Mapping, apply_d: Callable, subspaces: Mapping,
                        step: Callable[[object], object]) -> dict:
    """Homology of the subcomplex spanned by ``subspaces[n]`` (lists of vectors).

    ``apply_d(n, v)`` evaluates the differential on a vector of degree ``n``;
    ``step(n)`` gives the degree it lands in.  The spanning lists must be
    linearly independent and stable under the differential.
    """
    ranks = {}
    for n, basis in subspaces.items():
        ranks[n] = rank_of_vectors(apply_d(n, v) for v in basis)
    out = {}
    for n, basis in subspaces.items():
        incoming = sum(r for m, r in ranks.items() if step(m) == n)
        out[n] = len(basis) - ranks[n] - incoming
    return out


# ---------------------------------------------------------------------------
# Quotients


@dataclass
class QuotientPresentation:
    """``ambient``-dimensional space modulo the span of ``relations``.

    ``order`` optionally lists ambient indices by elimination preference:
    indices earlier in the list are used as pivots first, so the chosen
    complement favours indices that come late.
    """

    ambient: int
    relations: list = field(default_factory=list)
    order: Sequence[int] | None = None


class Quotient:
    """Concrete quotient map onto a complement of the relation span."""

    def __init__(self, pres: QuotientPresentation):
        self.ambient = pres.ambient
        order = list(pres.order) if pres.order is not None else list(range(pres.ambient))
        if sorted(order) != list(range(pres.ambient)):
            raise ValueError("order must be a permutation of the ambient indices")
        self._pos = {i: p for p, i in enumerate(order)}
        self._idx = order
        ech = Echelon()
        for r in pres.relations:
            ech.add({self._pos[i]: a for i, a in r.items()})
        ech.rref()
        self._ech = ech
        pivots = {self._idx[p] for p in ech.rows}
        self.complement = [i for i in range(self.ambient) if i not in pivots]
        self._coord = {i: j for j, i in enumerate(self.complement)}

    @property
    def dim(self) -> int:
        return len(self.complement)

    @property
    def relation_rank(self) -> int:
        return self._ech.rank

    def project(self, v: Mapping) -> dict:
        """Coordinates (``{j: value}``) of the class of ambient vector ``v``."""
        r = self._ech.reduce({self._pos[i]: a for i, a in v.items()})
        return {self._coord[self._idx[p]]: a for p, a in r.items()}

    def lift(self, j: int) -> dict:
        return {self.complement[j]: Fraction(1)}

    def projection_matrix(self) -> QMatrix:
        return QMatrix.from_columns(self.dim, self.ambient,
                                    {i: self.project({i: 1}) for i in range(self.ambient)})


def quotient_complex(C: ChainComplex, pres: Mapping[int, QuotientPresentation]
                     ) -> tuple[ChainComplex, dict[int, Quotient]]:
    """Induced complex on ``C_n / R_n``; relations must be boundary-stable."""
    quots = {}
    for n in C.dims:
        p = pres.get(n) or QuotientPresentation(C.dim(n))
        if p.ambient != C.dim(n):
            raise ValueError(f"presentation in degree {n} has ambient {p.ambient}, "
                             f"complex has {C.dim(n)}")
        quots[n] = Quotient(p)
    for n, p in pres.items():
        if n - 1 not in quots or n not in C.d:
            continue
        d = C.d[n]
        for r in p.relations:
            if quots[n - 1].project(d.apply(r)):
                raise ValueError(f"relations in degree {n} are not boundary-stable")
    dq = {}
    for n, d in C.d.items():
        if n - 1 not in quots:
            continue
        src, tgt = quots[n], quots[n - 1]
        cols = {j: tgt.project(d.column(i)) for j, i in enumerate(src.complement)}
        dq[n] = QMatrix.from_columns(tgt.dim, src.dim, cols)
    return ChainComplex({n: q.dim for n, q in quots.items()}, dq), quots


# ---------------------------------------------------------------------------
# Hom complexes


def _hom_keys(dim_src: int, dim_tgt: int, tag) -> list:
    return [(tag, w, v) for w in range(dim_tgt) for v in range(dim_src)]


class HomSupercomplex:
    """Hom between two supercomplexes (or paracomplexes).

    Elements are sparse dicts keyed by ``(parity_src, w, v)`` meaning the
    matrix entry of the block from source parity ``parity_src`` into the
    target parity ``parity_src + |phi|``.  When both arguments carry a
    ``para_defect``, only maps commuting with the two ``T`` operators are
    kept; this is where the defects cancel.
    """

    def __init__(self, C: Supercomplex, D: Supercomplex, max_dim: int = 250_000):
        self.C, self.D = C, D
        size = (C.even_dim + C.odd_dim) * (D.even_dim + D.odd_dim)
        if size > max_dim:
            raise OverflowError(f"Hom space of dimension {size} exceeds bound {max_dim}")
        self._keys = {}
        for par in (0, 1):
            keys = []
            for ps in (0, 1):
                keys += _hom_keys(C.dim(ps), D.dim((ps + par) % 2), ps)
            self._keys[par] = keys
        self._tc = self._td = None
        if C.para_defect is not None and D.para_defect is not None:
            self._tc = [QMatrix.identity(C.dim(p)) - C.para_defect[p] for p in (0, 1)]
            self._td = [QMatrix.identity(D.dim(p)) - D.para_defect[p] for p in (0, 1)]

    def apply(self, parity: int, phi: Mapping) -> dict:
        """``d(phi) = phi o d_C - (-1)^|phi| d_D o phi``."""
        sign = -1 if parity % 2 == 0 else 1
        out: dict = {}
        for (ps, w, v), a in phi.items():
            pt = (ps + parity) % 2
            # phi o d_C: entries (ps', w, u) with d_C[v <- u] from parity ps' = ps+1
            dC = self.C.differential(ps + 1)
            for u, c in dC.row(v).items():
                key = ((ps + 1) % 2, w, u)
                vec_iadd(out, {key: a * c})
            dD = self.D.differential(pt)
            for x, c in dD.column(w).items():
                key = (ps, x, v)
                vec_iadd(out, {key: sign * a * c})
        return out

    def commutes_with_T(self, parity: int, phi: Mapping) -> bool:
        if self._tc is None:
            return True
        lhs: dict = {}
        for (ps, w, v), a in phi.items():
            pt = (ps + parity) % 2
            for u, c in self._tc[ps].row(v).items():
                vec_iadd(lhs, {(ps, w, u): a * c})
            for x, c in self._td[pt].column(w).items():
                vec_iadd(lhs, {(ps, x, v): -a * c})
        return not lhs

    def basis(self, parity: int) -> list[dict]:
        """Basis of the (T-commuting) Hom space of the given parity."""
        keys = self._keys[parity]
        if self._tc is None:
            return [{k: Fraction(1)} for k in keys]
        index = {k: i for i, k in enumerate(keys)}
        cols = {}
        for i, k in enumerate(keys):
            img = self._t_defect(parity, {k: Fraction(1)})
            cols[i] = {index[kk]: a for kk, a in img.items()}
        M = QMatrix.from_columns(len(keys), len(keys), cols)
        return [{keys[i]: a for i, a in v.items()} for v in kernel_basis(M)]

    def _t_defect(self, parity, phi):
        out: dict = {}
        for (ps, w, v), a in phi.items():
            pt = (ps + parity) % 2
            for u, c in self._tc[ps].row(v).items():
                vec_iadd(out, {(ps, w, u): a * c})
            for x, c in self._td[pt].column(w).items():
                vec_iadd(out, {(ps, x, v): -a * c})
        return out

    def homology(self, bases: Mapping[int, list] | None = None) -> tuple[int, int]:
        bases = bases or {p: self.basis(p) for p in (0, 1)}
        h = restricted_homology({}, self.apply, bases, lambda p: (p + 1) % 2)
        return h[0], h[1]

    def to_supercomplex(self) -> Supercomplex:
        """Materialize as a :class:`Supercomplex` in the chosen bases."""
        bases = {p: self.basis(p) for p in (0, 1)}
        subs = {p: Subspace(bases[p]) for p in (0, 1)}
        d = {p: subs[p].restrict(lambda v, p=p: self.apply(p, v), subs[(p + 1) % 2])
             for p in (0, 1)}
        return Supercomplex(subs[0].dim, subs[1].dim, d[0], d[1])


def hom_supercomplex(C, D, max_dim: int = 250_000) -> Supercomplex:
    """Hom-supercomplex of two supercomplexes, paracomplexes or chain complexes."""
    if isinstance(C, ChainComplex):
        C = to_supercomplex(C)
    if isinstance(D, ChainComplex):
        D = to_supercomplex(D)
    return HomSupercomplex(C, D, max_dim).to_supercomplex()


class HomComplex:
    """Graded Hom of bounded chain complexes.

    Degree ``k`` consists of families of maps ``C_i -> D_{i+k}``; elements are
    dicts keyed by ``(i, w, v)``.  The differential is
    ``d(phi) = phi o d_C - (-1)^k d_D o phi`` of degree ``-1``.
    """

    def __init__(self, C: ChainComplex, D: ChainComplex):
        self.C, self.D = C, D
        cd, dd = [n for n in C.dims if C.dim(n)], [n for n in D.dims if D.dim(n)]
        self.degrees = sorted({j - i for i in cd for j in dd})

    def keys(self, k: int) -> list:
        return [(i, w, v) for i in sorted(self.C.dims) for w in range(self.D.dim(i + k))
                for v in range(self.C.dim(i))]

    def apply(self, k: int, phi: Mapping) -> dict:
        sign = -1 if k % 2 == 0 else 1
        out: dict = {}
        for (i, w, v), a in phi.items():
            # phi o d_C lands in maps C_{i+1} -> D_{i+k}
            dC = self.C.boundary(i + 1)
            for u, c in dC.row(v).items():
                vec_iadd(out, {(i + 1, w, u): a * c})
            dD = self.D.boundary(i + k)
            for x, c in dD.column(w).items():
                vec_iadd(out, {(i, x, v): sign * a * c})
        return out

    def homology(self, bases: Mapping[int, list] | None = None) -> dict[int, int]:
        if bases is None:
            bases = {k: [{key: Fraction(1)} for key in self.keys(k)] for k in self.degrees}
        return restricted_homology({}, self.apply, bases, lambda k: k - 1)


# ---------------------------------------------------------------------------
# Group averaging


def generating_set(H) -> list[int]:
    """Small generating set of a subgroup-like object with ``members`` and ``group``."""
    G = H.group
    gens: list[int] = []
    span = {G.identity}
    for h in H.members:
        if h not in span:
            gens.append(h)
            span = set(G.closure(gens))
    return gens


def average_projector(H, action: Callable[[int], QMatrix], check: bool = True) -> QMatrix:
    """``P = (1/|H|) sum_h action(h)``, the projector onto the invariants.

    ``H`` is a :class:`~equihom.fingroup.Subgroup`; ``action`` maps element
    indices to matrices on a common space.  With ``check`` the representation
    property is verified on a generating set.
    """
    mats = {h: action(h) for h in H.members}
    n = mats[H.members[0]].rows
    if check:
        G = H.group
        for g in generating_set(H):
            for h in H.members:
                if mats[g] @ mats[h] != mats[G.mul(g, h)]:
                    raise ValueError("action is not multiplicative")
    P = QMatrix(n, n)
    for m in mats.values():
        P = P + m
    return P.scale(Fraction(1, len(mats)))
