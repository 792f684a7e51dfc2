"""The built-in example corpus and the checks run over it.

Every instance is an input document, so the corpus also exercises the
parser.  ``run_corpus`` evaluates each acceptance property and returns one
record per property.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Callable

from .document import InputDocument, parse_document


def _doc(name: str, group: dict, simplices: list, action: list | None = None,
         vertices: list | None = None, subdivide: bool = False, target: dict | None = None
         ) -> dict[str, Any]:
    d: dict[str, Any] = {"schema_version": 1, "name": name, "group": group,
                         "complex": {"simplices": simplices}}
    if vertices is not None:
        d["complex"]["vertices"] = vertices
    if action:
        d["action"] = [{"generator": i, "map": m} for i, m in enumerate(action)]
    if subdivide:
        d["options"] = {"subdivide": True}
    if target is not None:
        d["target"] = target
    return d


TRIVIAL = {"kind": "trivial"}
C2 = {"kind": "cyclic", "order": 2}
C3 = {"kind": "cyclic", "order": 3}
C4 = {"kind": "cyclic", "order": 4}
KLEIN = {"kind": "klein"}
S3 = {"kind": "symmetric", "degree": 3}
D4 = {"kind": "dihedral", "degree": 4}
Q8 = {"kind": "quaternion"}

_SQUARE = [[0, 1], [1, 2], [2, 3], [0, 3]]
_TRIANGLE = [[0, 1], [1, 2], [0, 2]]
# left multiplication of i and j on the elements 1, i, j, k, -1, -i, -j, -k
_Q8_LEFT_I = [1, 4, 7, 2, 5, 0, 3, 6]
_Q8_LEFT_J = [2, 3, 4, 5, 6, 7, 0, 1]


def complex_corpus() -> list[dict[str, Any]]:
    """Positive- and zero-dimensional instances for the topological checks."""
    return [
        _doc("trivial-point", TRIVIAL, [[0]]),
        _doc("trivial-circle", TRIVIAL, _TRIANGLE),
        _doc("trivial-sphere", TRIVIAL, [list(c) for c in combinations(range(4), 3)]),
        _doc("c2-point", C2, [[0]], [[0]]),
        _doc("c2-swapped-edge", C2, [[0, 1]], [[1, 0]], subdivide=True),
        _doc("c2-free-two-points", C2, [[0], [1]], [[1, 0]]),
        _doc("c2-flipped-square", C2, _SQUARE, [[1, 0, 3, 2]], subdivide=True),
        _doc("c3-rotated-circle", C3, _TRIANGLE, [[1, 2, 0]]),
        _doc("c4-rotated-square", C4, _SQUARE, [[1, 2, 3, 0]]),
        _doc("klein-square", KLEIN, _SQUARE, [[1, 0, 3, 2], [3, 2, 1, 0]], subdivide=True),
        _doc("s3-filled-triangle", S3, [[0, 1, 2]], [[1, 0, 2], [1, 2, 0]], subdivide=True),
        _doc("s3-hollow-triangle", S3, _TRIANGLE, [[1, 0, 2], [1, 2, 0]], subdivide=True),
        _doc("d4-square", D4, _SQUARE, [[1, 2, 3, 0], [0, 3, 2, 1]], subdivide=True),
        _doc("q8-free-eight-points", Q8, [[v] for v in range(8)], [_Q8_LEFT_I, _Q8_LEFT_J]),
        _doc("q8-quotient-edge", Q8, [[0, 1]], [[0, 1], [1, 0]], subdivide=True),
    ]


def point_corpus() -> list[dict[str, Any]]:
    """0-dimensional instances over groups of order at most 4."""
    return [
        _doc("trivial-point", TRIVIAL, [[0]]),
        _doc("c2-point", C2, [[0]], [[0]]),
        _doc("c2-free-two-points", C2, [[0], [1]], [[1, 0]]),
        _doc("c2-fixed-two-points", C2, [[0], [1]], [[0, 1]]),
        _doc("c2-swap-plus-fixed", C2, [[0], [1], [2]], [[1, 0, 2]]),
        _doc("c3-three-points", C3, [[0], [1], [2]], [[1, 2, 0]]),
        _doc("c4-two-points", C4, [[0], [1]], [[1, 0]]),
        _doc("klein-three-points", KLEIN, [[0], [1], [2]], [[1, 0, 2], [0, 1, 2]]),
    ]


def pair_corpus() -> list[dict[str, Any]]:
    """Pairs of 0-dimensional ``G``-sets for the bivariant comparison."""
    pt = {"complex": {"simplices": [[0]]}}

    def pts(n, *maps):
        t: dict[str, Any] = {"complex": {"simplices": [[v] for v in range(n)]}}
        if maps:
            t["action"] = [{"generator": i, "map": m} for i, m in enumerate(maps)]
        return t

    return [
        _doc("trivial:pt->pt", TRIVIAL, [[0]], target=pt),
        _doc("trivial:2pt->pt", TRIVIAL, [[0], [1]], target=pt),
        _doc("c2:pt->pt", C2, [[0]], [[0]], target=pt),
        _doc("c2:swap->pt", C2, [[0], [1]], [[1, 0]], target=pt),
        _doc("c2:pt->swap", C2, [[0]], [[0]], target=pts(2, [1, 0])),
        _doc("c2:swap->swap", C2, [[0], [1]], [[1, 0]], target=pts(2, [1, 0])),
        _doc("c3:3pt->pt", C3, [[0], [1], [2]], [[1, 2, 0]], target=pt),
        _doc("c4:2pt->pt", C4, [[0], [1]], [[1, 0]], target=pt),
        _doc("klein:3pt->pt", KLEIN, [[0], [1], [2]], [[1, 0, 2], [0, 1, 2]], target=pt),
    ]


def load(docs: list[dict[str, Any]]) -> list[tuple[str, InputDocument]]:
    return [(d["name"], parse_document(d)) for d in docs]


# ---------------------------------------------------------------------------
# Checks


@dataclass
class CheckResult:
    criterion: int
    name: str
    passed: bool
    details: dict[str, Any] = field(default_factory=dict)


def _evens_odds(h: dict[int, int]) -> tuple[int, int]:
    return (sum(v for n, v in h.items() if n % 2 == 0), sum(v for n, v in h.items() if n % 2))


def check_bredon_cosheaf(docs=None) -> list[CheckResult]:
    from .cosheaf import compare_bredon_cosheaf
    out = []
    for name, d in load(docs or complex_corpus()):
        r = compare_bredon_cosheaf(d.X)
        out.append(CheckResult(1, name, r.is_isomorphism and r.homology_match,
                               {"homology": r.bredon_homology, "chain_map": r.chain_map,
                                "psi_phi": r.psi_phi_identity, "phi_psi": r.phi_psi_identity}))
    return out


def paramixed_instances():
    """``(label, algebra, max_degree)`` for the paramixed and projector checks."""
    from .cyclic.algebra import (base_field, compact_operators, function_algebra,
                                  function_algebra_of, tensor)
    from .fingroup import cyclic_group
    inst = [("Q/C1", base_field(cyclic_group(1)), 3), ("Q/C2", base_field(cyclic_group(2)), 3)]
    for name, d in load(point_corpus()):
        if len(d.X.complex.vertices) <= 3:
            inst.append((f"C({name})", function_algebra_of(d.X), 3))
    G2 = cyclic_group(2)
    swap = function_algebra(G2, 2, [[0, 1], [1, 0]])
    inst.append(("Q(x)K_G/C2", tensor(base_field(G2), compact_operators(G2)), 3))
    inst.append(("C(2 pts)(x)K_G/C2", tensor(swap, compact_operators(G2)), 3))
    return inst


def check_paramixed() -> list[CheckResult]:
    from .cyclic.forms import omega_forms
    out = []
    for label, A, N in paramixed_instances():
        om = omega_forms(A, N)
        r = om.check_paramixed()
        out.append(CheckResult(2, label, all(r.values()), r))
    return out


def check_projector() -> list[CheckResult]:
    from .cyclic.forms import omega_forms
    out = []
    for label, A, N in paramixed_instances():
        r = omega_forms(A, N).check_projector()
        out.append(CheckResult(3, label, all(r.values()), r))
    return out


def check_hkr() -> list[CheckResult]:
    from .cyclic.hkr import hkr_map
    out = []
    for name, d in load(point_corpus()):
        r = hkr_map(d.X)
        out.append(CheckResult(4, name, r.ok, {"hochschild": r.hochschild,
                                               "fixed_points": r.fixed_points}))
    return out


def check_trace() -> list[CheckResult]:
    from .cyclic.algebra import base_field, function_algebra
    from .cyclic.trace import trace_map
    from .fingroup import cyclic_group
    G = cyclic_group(2)
    algebras = [("Q", base_field(G)), ("C(2 pts, swap)", function_algebra(G, 2, [[0, 1], [1, 0]])),
                ("C(2 pts, fixed)", function_algebra(G, 2, [[0, 1], [0, 1]]))]
    out = []
    for label, A in algebras:
        r = trace_map(A, 2)
        out.append(CheckResult(5, label, r.ok, {"b": r.b, "B": r.B, "T": r.T,
                                                "equivariant": r.equivariant}))
    return out


def check_bivariant_point() -> list[CheckResult]:
    from .delocalized import bs_bivariant, delocalized_point
    from .gcomplex import GComplex, SComplex
    out = []
    for name, d in load(complex_corpus()):
        pt = GComplex.trivial_action(SComplex.point(), d.group)
        bs = bs_bivariant(d.X, pt)
        dl = delocalized_point(d.X)
        out.append(CheckResult(6, name, bs == dl, {"bs": bs, "deloc": dl}))
    return out


def check_comparison() -> list[CheckResult]:
    from .cyclic.algebra import function_algebra_of
    from .cyclic.hp import hp_at_level
    from .delocalized import bs_bivariant
    out = []
    for name, d in load(pair_corpus()):
        A, B = function_algebra_of(d.X), function_algebra_of(d.Y)
        h21 = hp_at_level(A, B, 2, 1)
        h32 = hp_at_level(A, B, 3, 2)
        bs = _evens_odds(bs_bivariant(d.X, d.Y))
        out.append(CheckResult(7, name, h21 == h32 == bs,
                               {"hp(2,1)": h21, "hp(3,2)": h32, "bs": bs}))
    return out


def check_trivial_group() -> list[CheckResult]:
    from .bredon import bredon_homology
    from .cosheaf import cosheaf_homology
    from .delocalized import delocalized_point
    expected = {"trivial-point": {0: 1}, "trivial-circle": {0: 1, 1: 1},
                "trivial-sphere": {0: 1, 1: 0, 2: 1}}
    out = []
    for name, d in load(complex_corpus()):
        if name not in expected:
            continue
        br, _ = bredon_homology(d.X)
        co, _ = cosheaf_homology(d.X)
        dl = delocalized_point(d.X)
        ok = br == co == dl == expected[name]
        out.append(CheckResult(8, name, ok, {"bredon": br, "cosheaf": co, "deloc": dl}))
    return out


CHECKS: dict[int, tuple[str, Callable[[], list[CheckResult]]]] = {
    1: ("Bredon and cosheaf complexes are isomorphic", check_bredon_cosheaf),
    2: ("paramixed identities", check_paramixed),
    3: ("projector E and contractibility of (1 - E)", check_projector),
    4: ("equivariant HKR for finite G-sets", check_hkr),
    5: ("trace map commutes with b, B, T", check_trace),
    6: ("bivariant theory against a point", check_bivariant_point),
    7: ("HP at fixed levels against the bivariant theory", check_comparison),
    8: ("trivial group reduces to simplicial homology", check_trivial_group),
}


def run_corpus(criteria=None) -> list[CheckResult]:
    out: list[CheckResult] = []
    for k, (_, fn) in CHECKS.items():
        if criteria is None or k in criteria:
            out.extend(fn())
    return out
