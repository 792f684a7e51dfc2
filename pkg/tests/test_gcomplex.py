import pytest
from hypothesis import given, settings

from equihom.fingroup import cyclic_group, symmetric_group
from equihom.gcomplex import (ActionError, GComplex, NotTypePreservingError, SComplex,
                              barycentric_subdivision, brylinski_space, fixed_subcomplex,
                              orbit_data, perm_sign, validate_g_complex)
from equihom.homalg import QMatrix

from oracles import fixed_complex, simplicial_homology
from strategies import g_complexes

C2 = cyclic_group(2)


def swapped_edge() -> GComplex:
    return GComplex.from_generators(SComplex([[0, 1]]), C2, {1: [1, 0]})


def free_two_points() -> GComplex:
    return GComplex.from_generators(SComplex([[0], [1]]), C2, {1: [1, 0]})


def test_perm_sign():
    assert perm_sign([0, 1, 2]) == 1
    assert perm_sign([1, 0, 2]) == -1
    assert perm_sign([2, 0, 1]) == 1


def test_complex_closes_under_faces():
    K = SComplex([[0, 1, 2]])
    assert K.f_vector == (3, 3, 1)
    assert (0, 2) in K and K.dim == 2


def test_sphere_and_simplex_constructors():
    assert SComplex.sphere(2).f_vector == (4, 6, 4)
    assert SComplex.simplex(3).euler_characteristic() == 1


def test_trivial_action_is_type_preserving():
    X = GComplex.trivial_action(SComplex([[0, 1, 2]]), symmetric_group(3))
    r = validate_g_complex(X)
    assert (r["simplicial"], r["type_preserving"]) == (True, True)


def test_swapped_edge_is_not_type_preserving():
    r = validate_g_complex(swapped_edge())
    assert (r["simplicial"], r["type_preserving"]) == (True, False)
    assert r["offending"] == (0, 1)
    with pytest.raises(NotTypePreservingError):
        fixed_subcomplex(swapped_edge(), 1)


def test_subdivided_swapped_edge_is_type_preserving():
    r = validate_g_complex(barycentric_subdivision(swapped_edge()))
    assert (r["simplicial"], r["type_preserving"]) == (True, True)


def test_non_homomorphism_is_rejected():
    with pytest.raises(ActionError):
        GComplex(SComplex([[0], [1], [2]]), cyclic_group(2),
                 [{0: 0, 1: 1, 2: 2}, {0: 1, 1: 2, 2: 0}])


@pytest.mark.parametrize("simplices,f", [
    ([[0]], (1,)),
    ([[0, 1]], (3, 2)),
    ([[0, 1, 2]], (7, 12, 6)),
    ([[0, 1, 2, 3]], (15, 50, 60, 24)),
])
def test_subdivision_face_counts(simplices, f):
    assert barycentric_subdivision(SComplex(simplices)).f_vector == f


def test_fixed_set_of_trivial_subgroup_is_everything():
    X = barycentric_subdivision(swapped_edge())
    assert fixed_subcomplex(X, X.group.trivial) == X.complex


def test_fixed_set_of_swap_is_the_midpoint():
    X = barycentric_subdivision(swapped_edge())
    F = fixed_subcomplex(X, 1)
    assert F.f_vector == (1,)
    assert F.vertices == [2]


def test_free_action_has_empty_fixed_set():
    assert len(fixed_subcomplex(free_two_points(), 1)) == 0


def test_orbits_of_trivial_action():
    X = GComplex.trivial_action(SComplex([[0, 1]]), C2)
    for s, info in orbit_data(X).items():
        assert info.representative == s
        assert info.stabilizer == C2.whole


def test_orbits_of_subdivided_swapped_edge():
    X = barycentric_subdivision(swapped_edge())
    data = orbit_data(X)
    edges = X.complex.simplices(1)
    assert len({data[e].representative for e in edges}) == 1
    assert all(data[e].stabilizer == C2.trivial for e in edges)
    assert data[(2,)].stabilizer == C2.whole


def test_regular_action_is_one_free_orbit():
    G = symmetric_group(3)
    X = GComplex(SComplex([[v] for v in range(6)]), G,
                 [{h: G.mul(g, h) for h in G.elements} for g in G.elements])
    data = orbit_data(X)
    assert len({i.representative for i in data.values()}) == 1
    assert all(i.stabilizer.order == 1 for i in data.values())


def test_brylinski_trivial_group():
    X = GComplex.trivial_action(SComplex([[0, 1], [1, 2], [0, 2]]), cyclic_group(1))
    B = brylinski_space(X)
    assert list(B.components) == [0]
    assert B.components[0] == X.complex


def test_brylinski_subdivided_swap():
    X = barycentric_subdivision(swapped_edge())
    B = brylinski_space(X)
    assert B.components[0] == X.complex
    assert B.components[1].f_vector == (1,)
    assert B.check()


def test_brylinski_free_action():
    B = brylinski_space(free_two_points())
    assert B.components[0].f_vector == (2,)
    assert len(B.components[1]) == 0


def _action_matrix(X: GComplex, g: int, n: int) -> QMatrix:
    cells = X.complex.simplices(n)
    pos = {s: i for i, s in enumerate(cells)}
    cols = {}
    for j, s in enumerate(cells):
        img, sign = X.act_oriented(g, s)
        cols[j] = {pos[img]: sign}
    return QMatrix.from_columns(len(cells), len(cells), cols)


@settings(max_examples=40, deadline=None)
@given(g_complexes(max_cells=50))
def test_action_is_a_chain_map(X):
    for g in X.group.elements:
        for n in range(1, X.complex.dim + 1):
            d = X.complex.boundary_matrix(n)
            assert _action_matrix(X, g, n - 1) @ d == d @ _action_matrix(X, g, n)


@settings(max_examples=40, deadline=None)
@given(g_complexes(max_cells=40))
def test_subdivision_preserves_homology_and_type(X):
    Y = barycentric_subdivision(X)
    assert Y.is_type_preserving
    assert len(Y.complex.vertices) == len(X.complex)
    assert simplicial_homology(Y.complex) == simplicial_homology(X.complex)


@settings(max_examples=40, deadline=None)
@given(g_complexes())
def test_fixed_sets_match_vertex_enumeration(X):
    for t in X.group.elements:
        assert fixed_subcomplex(X, t) == fixed_complex(X, t)
    assert brylinski_space(X).check()


@settings(max_examples=40, deadline=None)
@given(g_complexes())
def test_orbit_stabilizer(X):
    data = orbit_data(X)
    orbits: dict = {}
    for s, info in data.items():
        orbits.setdefault(info.representative, []).append(s)
        assert X.act(info.element, info.representative) == s
    for rep, members in orbits.items():
        assert len(members) * data[rep].stabilizer.order == X.group.order
