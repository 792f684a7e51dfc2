"""Finite simplicial complexes with simplicial actions of finite groups."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .fingroup import ConjugacyData, FiniteGroup, Subgroup, conjugacy_data
from .homalg import ChainComplex, QMatrix

Simplex = tuple[int, ...]


class ActionError(ValueError):
    pass


class NotTypePreservingError(ValueError):
    pass


def perm_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (entries distinct)."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


class SComplex:
    """Abstract simplicial complex on integer vertex labels.

    Simplices are sorted vertex tuples.  The constructor closes the given
    simplices under taking faces, so passing maximal simplices is enough.
    """

    def __init__(self, simplices: Iterable[Iterable[int]] = (), vertices: Iterable[int] = ()):
        faces: set[Simplex] = {(v,) for v in vertices}
        for s in simplices:
            t = tuple(sorted(s))
            if len(set(t)) != len(t):
                raise ValueError(f"simplex {t} has repeated vertices")
            if not t:
                continue
            for k in range(1, len(t) + 1):
                faces.update(combinations(t, k))
        by_dim: dict[int, list[Simplex]] = {}
        for f in faces:
            by_dim.setdefault(len(f) - 1, []).append(f)
        self._by_dim = {n: sorted(v) for n, v in sorted(by_dim.items())}
        self._index = {n: {s: i for i, s in enumerate(v)} for n, v in self._by_dim.items()}

    @classmethod
    def point(cls) -> "SComplex":
        return cls([(0,)])

    @classmethod
    def simplex(cls, k: int) -> "SComplex":
        return cls([tuple(range(k + 1))])

    @classmethod
    def sphere(cls, k: int) -> "SComplex":
        """Boundary of the ``(k+1)``-simplex."""
        return cls(combinations(range(k + 2), k + 1))

    @property
    def dim(self) -> int:
        return max(self._by_dim, default=-1)

    @property
    def vertices(self) -> list[int]:
        return [s[0] for s in self._by_dim.get(0, [])]

    def simplices(self, n: int) -> list[Simplex]:
        return self._by_dim.get(n, [])

    def all_simplices(self) -> list[Simplex]:
        return [s for n in sorted(self._by_dim) for s in self._by_dim[n]]

    def index(self, s: Simplex) -> int:
        return self._index[len(s) - 1][s]

    def __contains__(self, s) -> bool:
        s = tuple(s)
        return s in self._index.get(len(s) - 1, {})

    def __len__(self) -> int:
        return sum(len(v) for v in self._by_dim.values())

    def __eq__(self, other) -> bool:
        return isinstance(other, SComplex) and self._by_dim == other._by_dim

    def __repr__(self) -> str:
        return f"SComplex(f={self.f_vector})"

    @property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.simplices(n)) for n in range(self.dim + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * c for n, c in enumerate(self.f_vector))

    def boundary_matrix(self, n: int) -> QMatrix:
        """``C_n -> C_{n-1}`` with incidence ``(-1)^i`` for deleting vertex ``i``."""
        src, tgt = self.simplices(n), self.simplices(n - 1)
        entries = {}
        if n >= 1:
            idx = self._index.get(n - 1, {})
            for j, s in enumerate(src):
                for i in range(len(s)):
                    entries[(idx[s[:i] + s[i + 1:]], j)] = (-1) ** i
        return QMatrix(len(tgt), len(src), entries)

    def chain_complex(self) -> ChainComplex:
        dims = {n: len(self.simplices(n)) for n in range(self.dim + 1)}
        return ChainComplex(dims, {n: self.boundary_matrix(n) for n in range(1, self.dim + 1)})

    def full_subcomplex(self, verts: Iterable[int]) -> "SComplex":
        vs = set(verts)
        return SComplex([s for s in self.all_simplices() if vs.issuperset(s)],
                        vertices=[v for v in self.vertices if v in vs])

    def is_subcomplex_of(self, other: "SComplex") -> bool:
        return all(s in other for s in self.all_simplices())


class GComplex:
    """A finite simplicial complex with a simplicial action of a finite group.

    ``vertex_action[g]`` is a dict sending each vertex to its image under ``g``.
    Use :meth:`from_generators` to specify the action on generators only.
    """

    def __init__(self, complex: SComplex, group: FiniteGroup,
                 vertex_action: Sequence[Mapping[int, int]]):
        self.complex = complex
        self.group = group
        verts = complex.vertices
        vset = set(verts)
        if len(vertex_action) != group.order:
            raise ActionError("vertex_action needs one permutation per group element")
        acts = []
        for g, p in enumerate(vertex_action):
            p = {int(k): int(v) for k, v in dict(p).items()}
            if set(p) != vset or set(p.values()) != vset:
                raise ActionError(f"action of element {g} is not a permutation of the vertices")
            acts.append(p)
        self.vertex_action = tuple(acts)
        for a in group.elements:
            for b in group.elements:
                pa, pb, pab = acts[a], acts[b], acts[group.mul(a, b)]
                if any(pa[pb[v]] != pab[v] for v in verts):
                    raise ActionError(f"action is not a homomorphism at ({a}, {b})")

    @classmethod
    def from_generators(cls, complex: SComplex, group: FiniteGroup,
                        gens: Mapping[int, Mapping[int, int] | Sequence[int]]) -> "GComplex":
        """Extend an action given on generating elements to the whole group."""
        verts = complex.vertices
        gperm = {}
        for g, p in gens.items():
            if not isinstance(p, Mapping):
                p = dict(zip(verts, p))
            gperm[int(g)] = {int(k): int(v) for k, v in p.items()}
        acts: dict[int, dict] = {group.identity: {v: v for v in verts}}
        frontier = [group.identity]
        while frontier:
            new = []
            for x in frontier:
                for g, q in gperm.items():
                    y = group.mul(x, g)
                    px = acts[x]
                    py = {v: px[q[v]] for v in verts}
                    if y in acts:
                        if acts[y] != py:
                            raise ActionError("generator images do not define a homomorphism")
                    else:
                        acts[y] = py
                        new.append(y)
            frontier = new
        if len(acts) != group.order:
            raise ActionError("the listed elements do not generate the group")
        return cls(complex, group, [acts[g] for g in group.elements])

    @classmethod
    def trivial_action(cls, complex: SComplex, group: FiniteGroup) -> "GComplex":
        ident = {v: v for v in complex.vertices}
        return cls(complex, group, [ident] * group.order)

    def __repr__(self) -> str:
        return f"GComplex({self.complex!r}, |G|={self.group.order})"

    # action on simplices ---------------------------------------------------

    def act(self, g: int, s: Simplex) -> Simplex:
        p = self.vertex_action[g]
        return tuple(sorted(p[v] for v in s))

    def act_oriented(self, g: int, s: Simplex) -> tuple[Simplex, int]:
        """Image of the oriented simplex ``s`` as (sorted tuple, sign)."""
        p = self.vertex_action[g]
        img = [p[v] for v in s]
        return tuple(sorted(img)), perm_sign(img)

    def stabilizer(self, s: Simplex) -> Subgroup:
        return Subgroup(self.group, tuple(g for g in self.group.elements if self.act(g, s) == s))

    def pointwise_stabilizer(self, s: Simplex) -> Subgroup:
        return Subgroup(self.group, tuple(
            g for g in self.group.elements if all(self.vertex_action[g][v] == v for v in s)))

    @cached_property
    def report(self) -> dict:
        return validate_g_complex(self)

    @property
    def is_type_preserving(self) -> bool:
        return self.report["type_preserving"]

    def require_type_preserving(self, what: str = "this operation") -> None:
        if not self.is_type_preserving:
            raise NotTypePreservingError(
                f"{what} needs a type-preserving action (offending simplex "
                f"{self.report['offending']}); apply barycentric_subdivision first")


def validate_g_complex(X: GComplex) -> dict:
    """Report whether the action is simplicial and type-preserving."""
    K = X.complex
    simplicial = all(X.act(g, s) in K for g in X.group.elements for s in K.all_simplices())
    offending = None
    for s in K.all_simplices():
        for g in X.group.elements:
            if X.act(g, s) == s and any(X.vertex_action[g][v] != v for v in s):
                offending = s
                break
        if offending is not None:
            break
    return {"simplicial": simplicial, "type_preserving": simplicial and offending is None,
            "offending": offending}


def subdivide_complex(K: SComplex) -> tuple[SComplex, list[Simplex]]:
    """Barycentric subdivision; returns the new complex and its vertex labels."""
    old = K.all_simplices()
    label = {s: i for i, s in enumerate(old)}
    faces_of = {s: [f for f in old if len(f) < len(s) and set(f) <= set(s)] for s in old}
    chains: list[tuple[Simplex, ...]] = [(s,) for s in old]
    frontier = list(chains)
    while frontier:
        new = []
        for ch in frontier:
            for f in faces_of[ch[-1]]:
                new.append(ch + (f,))
        chains.extend(new)
        frontier = new
    return SComplex([tuple(label[s] for s in ch) for ch in chains], vertices=range(len(old))), old


def barycentric_subdivision(X: GComplex | SComplex):
    if isinstance(X, SComplex):
        return subdivide_complex(X)[0]
    K, old = subdivide_complex(X.complex)
    label = {s: i for i, s in enumerate(old)}
    acts = [{label[s]: label[X.act(g, s)] for s in old} for g in X.group.elements]
    return GComplex(K, X.group, acts)


def fixed_subcomplex(X: GComplex, H: Subgroup | int) -> SComplex:
    """``X^H`` (or ``X^t`` for a single element ``t``), vertex labels kept."""
    X.require_type_preserving("fixed_subcomplex")
    elems = [H] if isinstance(H, int) else list(H.members)
    verts = [v for v in X.complex.vertices
             if all(X.vertex_action[g][v] == v for g in elems)]
    return X.complex.full_subcomplex(verts)


@dataclass(frozen=True)
class OrbitInfo:
    stabilizer: Subgroup
    representative: Simplex
    element: int
    sign: int


def orbit_data(X: GComplex) -> dict[Simplex, OrbitInfo]:
    """Stabilizer, orbit representative and translating element for every simplex.

    The representative of an orbit is its smallest simplex; ``element`` is the
    smallest group element carrying the representative onto the simplex and
    ``sign`` the orientation sign of that translation.
    """
    X.require_type_preserving("orbit_data")
    out = {}
    G = X.group
    for s in X.complex.all_simplices():
        if s in out:
            continue
        orbit = {}
        for g in G.elements:
            img = X.act(g, s)
            orbit.setdefault(img, g)
        rep = min(orbit)
        for t in orbit:
            g = next(g for g in G.elements if X.act(g, rep) == t)
            _, sign = X.act_oriented(g, rep)
            out[t] = OrbitInfo(X.stabilizer(t), rep, g, sign)
    return out


class BrylinskiSpace:
    """Fixed-point sets ``X^t`` per conjugacy class, with the transport maps.

    ``components[i]`` is ``X^t`` for the representative ``t`` of class ``i``.
    ``component_action(s, t)`` maps oriented simplices of ``X^t`` onto
    ``X^{s t s^-1}``.
    """

    def __init__(self, X: GComplex):
        X.require_type_preserving("brylinski_space")
        self.X = X
        self.conj: ConjugacyData = conjugacy_data(X.group)
        self._fixed = {t: fixed_subcomplex(X, t) for t in X.group.elements}
        self.components = {i: self._fixed[t] for i, t in enumerate(self.conj.representatives)}

    def fixed(self, t: int) -> SComplex:
        return self._fixed[t]

    def component_action(self, s: int, t: int) -> dict[Simplex, tuple[Simplex, int]]:
        src = self._fixed[t]
        return {sig: self.X.act_oriented(s, sig) for sig in src.all_simplices()}

    def check(self) -> bool:
        """``s`` maps ``X^t`` bijectively onto ``X^{sts^-1}`` for all ``s`` and all ``t``."""
        G = self.X.group
        for t in G.elements:
            for s in G.elements:
                tgt = self._fixed[G.conj(s, t)]
                imgs = {img for img, _ in self.component_action(s, t).values()}
                if len(imgs) != len(self._fixed[t]) or any(i not in tgt for i in imgs) \
                        or len(tgt) != len(imgs):
                    return False
        return True


def brylinski_space(X: GComplex) -> BrylinskiSpace:
    return BrylinskiSpace(X)
