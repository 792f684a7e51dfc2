"""Finite groups given by multiplication tables.

Elements are the indices ``0..n-1``.  Products follow the composition
convention ``mul(a, b) = a * b``: for permutation groups ``(a * b)(x) = a(b(x))``.
Every operation here is pure and every object is immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Mapping, Sequence

DEFAULT_MAX_ORDER = 5040
DEFAULT_SUBGROUP_BOUND = 24


class GroupError(ValueError):
    pass


class FiniteGroup:
    """A validated finite group.

    ``table[a][b]`` is the index of ``a * b``.  ``perms`` optionally keeps the
    permutation realization the group was built from.
    """

    def __init__(self, table: Sequence[Sequence[int]], perms: Sequence[tuple] | None = None,
                 name: str | None = None, check_associativity: bool = True):
        n = len(table)
        if n == 0:
            raise GroupError("a group needs at least one element")
        tbl = tuple(tuple(int(x) for x in row) for row in table)
        for row in tbl:
            if len(row) != n:
                raise GroupError("multiplication table must be square")
            if any(not 0 <= x < n for x in row):
                raise GroupError("table entries must be element indices")
        ident = next((e for e in range(n)
                      if all(tbl[e][a] == a and tbl[a][e] == a for a in range(n))), None)
        if ident is None:
            raise GroupError("table has no identity element")
        inv = []
        for a in range(n):
            b = next((b for b in range(n) if tbl[a][b] == ident and tbl[b][a] == ident), None)
            if b is None:
                raise GroupError(f"element {a} has no inverse")
            inv.append(b)
        for a, b, c in product(range(n), repeat=3) if check_associativity else ():
            if tbl[tbl[a][b]][c] != tbl[a][tbl[b][c]]:
                raise GroupError(f"table is not associative at ({a}, {b}, {c})")
        self.table = tbl
        self.order = n
        self.identity = ident
        self.inverses = tuple(inv)
        self.perms = tuple(tuple(p) for p in perms) if perms is not None else None
        self.name = name

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<FiniteGroup{label} of order {self.order}>"

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def conj(self, s: int, t: int) -> int:
        """``s t s^-1``."""
        return self.table[self.table[s][t]][self.inverses[s]]

    def power(self, a: int, k: int) -> int:
        out = self.identity
        if k < 0:
            a, k = self.inverses[a], -k
        for _ in range(k):
            out = self.table[out][a]
        return out

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def closure(self, gens) -> list[int]:
        """Sorted list of the subgroup generated by ``gens``."""
        seen = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in seen:
                        seen.add(y)
                        new.append(y)
            frontier = new
        return sorted(seen)

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a]
                   for a in range(self.order) for b in range(a))

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.order)))

    @cached_property
    def trivial(self) -> "Subgroup":
        return Subgroup(self, (self.identity,))


def _compose(p: Sequence[int], q: Sequence[int]) -> tuple:
    """``(p o q)(x) = p(q(x))``."""
    return tuple(p[x] for x in q)


def build_group(spec: Mapping | Sequence, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Build a group from ``{"table": [[...]]}`` or ``{"generators": [...], "degree": n}``.

    A bare list is read as a multiplication table.  Permutation generators are
    closed into the full element list, sorted lexicographically (identity first).
    """
    if not isinstance(spec, Mapping):
        spec = {"table": spec}
    if "table" in spec:
        return FiniteGroup(spec["table"], name=spec.get("name"))
    if "generators" not in spec:
        raise GroupError("group spec needs 'table' or 'generators'")
    gens = [tuple(int(x) for x in g) for g in spec["generators"]]
    degree = spec.get("degree")
    if degree is None:
        degree = len(gens[0]) if gens else 1
    for g in gens:
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise GroupError(f"{list(g)} is not a permutation of {degree} points")
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = _compose(x, g)
                if y not in seen:
                    seen.add(y)
                    new.append(y)
                    if len(seen) > max_order:
                        raise GroupError(f"generator closure exceeds {max_order} elements")
        frontier = new
    elems = sorted(seen)
    index = {p: i for i, p in enumerate(elems)}
    table = [[index[_compose(p, q)] for q in elems] for p in elems]
    # composition of permutations is associative; the n^3 scan is skipped
    return FiniteGroup(table, perms=elems, name=spec.get("name"), check_associativity=False)


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)], name=f"C{n}")


def symmetric_group(n: int) -> FiniteGroup:
    gens = [tuple([1, 0] + list(range(2, n)))] if n >= 2 else []
    if n >= 3:
        gens.append(tuple(list(range(1, n)) + [0]))
    if not gens:
        return build_group({"table": [[0]], "name": "S1"})
    return build_group({"generators": gens, "degree": n, "name": f"S{n}"})


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the regular ``n``-gon as permutations of its vertices."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return build_group({"generators": [rot, ref], "degree": n, "name": f"D{n}"})


def quaternion_group() -> FiniteGroup:
    """Q8 as the units +-1, +-i, +-j, +-k."""
    # elements (sign, unit) with units 1, i, j, k
    units = ["1", "i", "j", "k"]
    mult = {("1", u): (1, u) for u in units} | {(u, "1"): (1, u) for u in units}
    mult |= {("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
             ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
             ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")}
    elems = [(s, u) for s in (1, -1) for u in units]
    idx = {e: n for n, e in enumerate(elems)}

    def m(a, b):
        s, u = mult[(a[1], b[1])]
        return (a[0] * b[0] * s, u)

    table = [[idx[m(a, b)] for b in elems] for a in elems]
    return FiniteGroup(table, name="Q8")


# ---------------------------------------------------------------------------
# Subgroups and conjugacy


@dataclass(frozen=True)
class Subgroup:
    group: FiniteGroup
    members: tuple[int, ...]

    def __post_init__(self):
        mem = tuple(sorted(set(self.members)))
        object.__setattr__(self, "members", mem)
        G = self.group
        s = set(mem)
        if G.identity not in s:
            raise GroupError("subgroup must contain the identity")
        for a in mem:
            if G.inv(a) not in s:
                raise GroupError("subgroup is not closed under inverses")
            for b in mem:
                if G.mul(a, b) not in s:
                    raise GroupError("subgroup is not closed under multiplication")

    def __hash__(self) -> int:
        return hash((id(self.group), self.members))

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subgroup) and self.group is other.group
                and self.members == other.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, g: int) -> bool:
        return g in self._set

    def __repr__(self) -> str:
        return f"Subgroup(order={len(self.members)}, members={list(self.members)})"

    @property
    def order(self) -> int:
        return len(self.members)

    @cached_property
    def _set(self) -> frozenset:
        return frozenset(self.members)

    def issubgroup(self, other: "Subgroup") -> bool:
        return self._set <= other._set

    def conjugate(self, g: int) -> "Subgroup":
        """``g^-1 H g``."""
        G = self.group
        gi = G.inv(g)
        return Subgroup(G, tuple(G.mul(G.mul(gi, h), g) for h in self.members))

    @cached_property
    def classes(self) -> tuple[tuple[int, ...], ...]:
        """Conjugacy classes of the subgroup itself, ordered by minimal element."""
        G = self.group
        seen: set[int] = set()
        out = []
        for x in self.members:
            if x in seen:
                continue
            cls = sorted({G.conj(h, x) for h in self.members})
            seen.update(cls)
            out.append(tuple(cls))
        return tuple(out)

    @cached_property
    def class_of(self) -> dict[int, int]:
        return {x: i for i, cls in enumerate(self.classes) for x in cls}

    @property
    def num_classes(self) -> int:
        return len(self.classes)


@dataclass(frozen=True)
class ConjugacyData:
    classes: tuple[tuple[int, ...], ...]
    class_of: dict
    centralizers: tuple[Subgroup, ...]
    representatives: tuple[int, ...]


def centralizer(G: FiniteGroup, t: int) -> Subgroup:
    return Subgroup(G, tuple(s for s in G.elements if G.mul(s, t) == G.mul(t, s)))


def conjugacy_data(G: FiniteGroup) -> ConjugacyData:
    classes = G.whole.classes
    reps = tuple(c[0] for c in classes)
    cents = tuple(centralizer(G, t) for t in reps)
    for cls, z in zip(classes, cents):
        if len(cls) * z.order != G.order:
            raise AssertionError("orbit-stabilizer count failed")
    return ConjugacyData(classes, dict(G.whole.class_of), cents, reps)


def enumerate_subgroups(G: FiniteGroup, max_order: int = DEFAULT_SUBGROUP_BOUND) -> list[Subgroup]:
    """All subgroups, sorted by order then members."""
    if G.order > max_order:
        raise GroupError(f"group of order {G.order} exceeds subgroup-enumeration bound {max_order}")
    found = {tuple(G.closure([g])) for g in G.elements}
    frontier = list(found)
    while frontier:
        new = []
        for H in frontier:
            hs = set(H)
            for g in G.elements:
                if g in hs:
                    continue
                K = tuple(G.closure(list(H) + [g]))
                if K not in found:
                    found.add(K)
                    new.append(K)
        frontier = new
    return [Subgroup(G, H) for H in sorted(found, key=lambda m: (len(m), m))]


# ---------------------------------------------------------------------------
# Class functions


@dataclass(frozen=True)
class ClassFunction:
    """Rational class function on ``group``, one value per conjugacy class of it."""

    group: Subgroup
    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        if len(vals) != self.group.num_classes:
            raise ValueError(f"expected {self.group.num_classes} values, got {len(vals)}")
        object.__setattr__(self, "values", vals)

    def __call__(self, g: int) -> Fraction:
        return self.values[self.group.class_of[g]]

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        if other.group != self.group:
            raise ValueError("class functions live on different subgroups")
        return ClassFunction(self.group, tuple(a + b for a, b in zip(self.values, other.values)))

    def __mul__(self, c) -> "ClassFunction":
        return ClassFunction(self.group, tuple(Fraction(c) * a for a in self.values))

    __rmul__ = __mul__

    @classmethod
    def indicator(cls, H: Subgroup, k: int) -> "ClassFunction":
        return cls(H, tuple(Fraction(int(i == k)) for i in range(H.num_classes)))

    @classmethod
    def from_function(cls, H: Subgroup, f) -> "ClassFunction":
        return cls(H, tuple(Fraction(f(c[0])) for c in H.classes))


def inner(a: ClassFunction, b: ClassFunction) -> Fraction:
    """``(1/|H|) sum_h a(h) b(h)``."""
    H = a.group
    if b.group != H:
        raise ValueError("class functions live on different subgroups")
    return sum((len(c) * x * y for c, x, y in zip(H.classes, a.values, b.values)),
               Fraction(0)) / H.order


def induce(f: ClassFunction, K: Subgroup) -> ClassFunction:
    """``ind_H^K f (k) = 1/|H| sum_{x in K, x^-1 k x in H} f(x^-1 k x)``."""
    H = f.group
    if not H.issubgroup(K):
        raise GroupError("induction needs H <= K")
    G = K.group
    vals = []
    for cls in K.classes:
        k = cls[0]
        acc = Fraction(0)
        for x in K.members:
            y = G.conj(G.inv(x), k)
            if y in H:
                acc += f(y)
        vals.append(acc / H.order)
    return ClassFunction(K, tuple(vals))


def restrict(f: ClassFunction, H: Subgroup) -> ClassFunction:
    K = f.group
    if not H.issubgroup(K):
        raise GroupError("restriction needs H <= K")
    return ClassFunction(H, tuple(f(c[0]) for c in H.classes))


def conjugate_function(f: ClassFunction, g: int) -> ClassFunction:
    """Transport ``f`` on ``H`` to ``g^-1 H g`` via ``y -> f(g y g^-1)``."""
    H = f.group
    G = H.group
    Hg = H.conjugate(g)
    return ClassFunction(Hg, tuple(f(G.conj(g, c[0])) for c in Hg.classes))
