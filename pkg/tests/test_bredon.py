import pytest
from hypothesis import given, settings

from equihom.bredon import (CoefficientSystem, MorphismError, OrbitCategory, bredon_homology,
                            coefficient_map, orbit_morphisms)
from equihom.corpus import complex_corpus, load
from equihom.fingroup import Subgroup, cyclic_group, dihedral_group, symmetric_group
from equihom.gcomplex import GComplex, SComplex, barycentric_subdivision
from equihom.homalg import QMatrix

from oracles import fixed_point_homology, quotient_homology
from strategies import g_complexes

C2 = cyclic_group(2)

# frozen from the fixed-point oracle (sum over classes of invariant homology of X^t)
CORPUS_BREDON = {
    "trivial-point": {0: 1},
    "trivial-circle": {0: 1, 1: 1},
    "trivial-sphere": {0: 1, 1: 0, 2: 1},
    "c2-point": {0: 2},
    "c2-swapped-edge": {0: 2, 1: 0},
    "c2-free-two-points": {0: 1},
    "c2-flipped-square": {0: 3, 1: 0},
    "c3-rotated-circle": {0: 1, 1: 1},
    "c4-rotated-square": {0: 1, 1: 1},
    "klein-square": {0: 3, 1: 0},
    "s3-filled-triangle": {0: 3, 1: 0, 2: 0},
    "s3-hollow-triangle": {0: 3, 1: 0},
    "d4-square": {0: 3, 1: 0},
    "q8-free-eight-points": {0: 1},
    "q8-quotient-edge": {0: 5, 1: 0},
}


def test_morphisms_into_the_point_orbit():
    assert orbit_morphisms(C2.whole, C2.whole) == [0]
    assert orbit_morphisms(C2.trivial, C2.whole) == [0]


def test_self_maps_of_the_free_orbit():
    assert orbit_morphisms(C2.trivial, C2.trivial) == [0, 1]


def test_no_morphism_from_point_to_free_orbit():
    assert orbit_morphisms(C2.whole, C2.trivial) == []
    with pytest.raises(MorphismError):
        coefficient_map(C2.whole, C2.trivial, 0)


def test_identity_morphism_gives_identity():
    G = symmetric_group(3)
    assert coefficient_map(G.whole, G.whole, 0) == QMatrix.identity(3)


def test_inclusion_of_trivial_subgroup_induces():
    assert coefficient_map(C2.trivial, C2.whole, 0).to_dense() == [[2], [0]]


def test_coefficient_map_depends_only_on_the_coset():
    G = symmetric_group(3)
    cat = OrbitCategory(G)
    for H in cat.objects:
        for K in cat.objects:
            for g in G.elements:
                if not H.conjugate(g).issubgroup(K):
                    continue
                for k in K.members:
                    assert coefficient_map(H, K, g) == coefficient_map(H, K, G.mul(g, k))


@pytest.mark.parametrize("G", [C2, cyclic_group(4), symmetric_group(3), dihedral_group(4)],
                         ids=lambda G: G.name)
def test_orbit_category_and_coefficients_are_functorial(G):
    cat = OrbitCategory(G)
    assert cat.check_composition()
    assert CoefficientSystem(cat).check_functorial()


def test_higher_coefficients_vanish():
    cat = OrbitCategory(symmetric_group(3))
    assert [CoefficientSystem(cat).at(H, 1) for H in cat.objects] == [0] * 6


def test_trivial_group_gives_simplicial_homology():
    X = GComplex.trivial_action(SComplex([[0, 1], [1, 2], [0, 2]]), cyclic_group(1))
    assert bredon_homology(X)[0] == {0: 1, 1: 1}


def test_point_gives_representation_ring():
    X = GComplex.trivial_action(SComplex.point(), C2)
    assert bredon_homology(X)[0] == {0: 2}
    X = GComplex.trivial_action(SComplex.point(), symmetric_group(3))
    assert bredon_homology(X)[0] == {0: 3}


def test_subdivided_swapped_edge():
    X = barycentric_subdivision(GComplex.from_generators(SComplex([[0, 1]]), C2, {1: [1, 0]}))
    assert bredon_homology(X)[0] == {0: 2, 1: 0}


def test_non_type_preserving_input_is_refused():
    X = GComplex.from_generators(SComplex([[0, 1]]), C2, {1: [1, 0]})
    with pytest.raises(ValueError):
        bredon_homology(X)


@pytest.mark.parametrize("name,doc", [(n, d) for n, d in load(complex_corpus())],
                         ids=[d["name"] for d in complex_corpus()])
def test_corpus_values(name, doc):
    h, B = bredon_homology(doc.X)
    assert h == CORPUS_BREDON[name]
    assert B.ambient.dims.keys() == B.complex.dims.keys()


def test_contractible_space_gives_class_count():
    # the S3 action on the filled triangle has a global fixed point
    G = symmetric_group(3)
    X = barycentric_subdivision(GComplex.from_generators(
        SComplex([[0, 1, 2]]), G, {G.perms.index(p): list(p) for p in [(1, 0, 2), (1, 2, 0)]}))
    assert bredon_homology(X)[0] == {0: 3, 1: 0, 2: 0}


@settings(max_examples=40, deadline=None)
@given(g_complexes())
def test_matches_fixed_point_oracle(X):
    assert bredon_homology(X)[0] == fixed_point_homology(X)


@settings(max_examples=30, deadline=None)
@given(g_complexes(groups=("C2", "C3", "C4")))
def test_free_actions_give_quotient_homology(X):
    if any(X.stabilizer(s).order > 1 for s in X.complex.all_simplices()):
        G = X.group
        X = GComplex(SComplex([[v] for v in G.elements]), G,
                     [{h: G.mul(g, h) for h in G.elements} for g in G.elements])
    assert bredon_homology(X)[0] == quotient_homology(X)


def test_subgroup_lattice_of_the_category():
    cat = OrbitCategory(dihedral_group(4))
    assert len(cat.objects) == 10
    G = cat.group
    H = Subgroup(G, (0,))
    assert len(cat.morphisms(H, H)) == 8
