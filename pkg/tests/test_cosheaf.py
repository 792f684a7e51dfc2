import pytest
from hypothesis import given, settings

from equihom.corpus import complex_corpus, load
from equihom.cosheaf import (InductionCosheaf, compare_bredon_cosheaf, cosheaf_chain_complex,
                             cosheaf_homology)
from equihom.fingroup import cyclic_group, symmetric_group
from equihom.gcomplex import GComplex, SComplex, barycentric_subdivision
from equihom.homalg import QMatrix

from oracles import fixed_point_homology
from strategies import g_complexes

C2 = cyclic_group(2)


def swapped_edge() -> GComplex:
    return barycentric_subdivision(GComplex.from_generators(SComplex([[0, 1]]), C2, {1: [1, 0]}))


def test_trivial_point():
    S = cosheaf_chain_complex(GComplex.trivial_action(SComplex.point(), cyclic_group(1)))
    assert S.complex.dims == {0: 1}


def test_order_two_point_carries_representation_ring():
    X = GComplex.trivial_action(SComplex.point(), C2)
    S = cosheaf_chain_complex(X)
    assert S.complex.dims == {0: 2}
    assert cosheaf_homology(X)[0] == {0: 2}


def test_swapped_edge_boundary():
    S = cosheaf_chain_complex(swapped_edge())
    assert S.complex.dims == {0: 3, 1: 1}
    basis = S.coinvariant_basis(0)
    # endpoints are vertices 0, 1; the midpoint is 2
    endpoint = next(b for b in basis if b[0] != (2,))
    order = [endpoint, ((2,), 0), ((2,), 1)]
    assert sorted(order) == sorted(basis)
    d = S.complex.boundary(1)
    col = {basis[i]: a for i, a in d.column(0).items()}
    assert [col.get(b, 0) for b in order] == [-1, 2, 0]


def test_swapped_edge_homology():
    assert cosheaf_homology(swapped_edge())[0] == {0: 2, 1: 0}


def test_trivial_group_on_circle():
    X = GComplex.trivial_action(SComplex([[0, 1], [1, 2], [0, 2]]), cyclic_group(1))
    assert cosheaf_homology(X)[0] == {0: 1, 1: 1}


def test_corestriction_is_induction():
    cos = InductionCosheaf(swapped_edge())
    edge = (0, 2)
    assert cos.corestriction(edge, (2,)).to_dense() == [[2], [0]]
    assert cos.corestriction(edge, (0,)) == QMatrix.identity(1)
    with pytest.raises(ValueError):
        cos.corestriction(edge, (1,))


def test_corestrictions_compose():
    G = symmetric_group(3)
    X = barycentric_subdivision(GComplex.from_generators(
        SComplex([[0, 1, 2]]), G, {G.perms.index(p): list(p) for p in [(1, 0, 2), (1, 2, 0)]}))
    assert InductionCosheaf(X).check_functorial()


def test_comparison_on_trivial_point():
    r = compare_bredon_cosheaf(GComplex.trivial_action(SComplex.point(), cyclic_group(1)))
    assert r.phi[0] == QMatrix.identity(1) and r.psi[0] == QMatrix.identity(1)


def test_comparison_on_order_two_point():
    r = compare_bredon_cosheaf(GComplex.trivial_action(SComplex.point(), C2))
    assert r.phi[0].shape == (2, 2)
    assert r.psi[0] @ r.phi[0] == QMatrix.identity(2)
    assert r.phi[0] @ r.psi[0] == QMatrix.identity(2)


@pytest.mark.parametrize("name,doc", [(n, d) for n, d in load(complex_corpus())],
                         ids=[d["name"] for d in complex_corpus()])
def test_corpus_comparison_is_an_isomorphism(name, doc):
    r = compare_bredon_cosheaf(doc.X)
    assert r.is_isomorphism and r.homology_match
    assert r.cosheaf_homology == fixed_point_homology(doc.X)


@settings(max_examples=40, deadline=None)
@given(g_complexes())
def test_random_comparison_is_an_isomorphism(X):
    r = compare_bredon_cosheaf(X)
    assert r.chain_map and r.psi_phi_identity and r.phi_psi_identity
    assert r.bredon_dims == r.cosheaf_dims
    assert r.cosheaf_homology == fixed_point_homology(X)


@settings(max_examples=30, deadline=None)
@given(g_complexes())
def test_coinvariant_dimensions_count_orbits(X):
    # one orbit representative per orbit, carrying R(G_sigma)
    S = cosheaf_chain_complex(X)
    reps = {}
    for s in X.complex.all_simplices():
        key = min(X.act(g, s) for g in X.group.elements)
        reps[key] = X.stabilizer(key).num_classes
    for p, dim in S.complex.dims.items():
        assert dim == sum(v for s, v in reps.items() if len(s) == p + 1)
