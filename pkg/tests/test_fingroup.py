from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from equihom.fingroup import (ClassFunction, GroupError, Subgroup, build_group, centralizer,
                              conjugacy_data, conjugate_function, cyclic_group, dihedral_group,
                              enumerate_subgroups, induce, inner, quaternion_group, restrict,
                              symmetric_group)

from oracles import brute_centralizer, brute_classes, brute_subgroups
from strategies import gsets, rational

KLEIN = build_group({"generators": [(1, 0, 3, 2), (2, 3, 0, 1)]})
GROUPS = {
    "C1": cyclic_group(1), "C2": cyclic_group(2), "C4": cyclic_group(4), "C6": cyclic_group(6),
    "V4": KLEIN, "S3": symmetric_group(3), "D4": dihedral_group(4), "Q8": quaternion_group(),
}


def test_one_by_one_table_is_trivial():
    G = build_group([[0]])
    assert G.order == 1 and G.identity == 0


def test_transposition_generates_order_two():
    assert build_group({"generators": [(1, 0)]}).order == 2


def test_s3_from_generators():
    G = build_group({"generators": [(1, 0, 2), (1, 2, 0)]})
    assert G.order == 6
    assert len(conjugacy_data(G).classes) == 3


def test_s3_class_sizes_and_transposition_centralizer():
    G = symmetric_group(3)
    data = conjugacy_data(G)
    assert sorted(len(c) for c in data.classes) == [1, 2, 3]
    t = G.perms.index((1, 0, 2))
    assert centralizer(G, t).order == 2


@pytest.mark.parametrize("n", [1, 2, 3, 5, 6])
def test_abelian_groups_have_singleton_classes(n):
    G = cyclic_group(n)
    data = conjugacy_data(G)
    assert len(data.classes) == n
    assert all(z.order == n for z in data.centralizers)


@pytest.mark.parametrize("name,count", [("C1", 1), ("C2", 2), ("C4", 3), ("C6", 4), ("V4", 5),
                                        ("S3", 6), ("D4", 10), ("Q8", 6)])
def test_subgroup_counts(name, count):
    assert len(enumerate_subgroups(GROUPS[name])) == count


def test_c4_subgroup_orders():
    assert [H.order for H in enumerate_subgroups(cyclic_group(4))] == [1, 2, 4]


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_subgroups_match_subset_enumeration(name):
    G = GROUPS[name]
    assert {frozenset(H.members) for H in enumerate_subgroups(G)} == brute_subgroups(G)


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_classes_and_centralizers_match_brute_force(name):
    G = GROUPS[name]
    data = conjugacy_data(G)
    assert {frozenset(c) for c in data.classes} == brute_classes(G)
    for t, Z in zip(data.representatives, data.centralizers):
        assert frozenset(Z.members) == brute_centralizer(G, t)


def test_q8_has_five_classes_and_central_minus_one():
    G = quaternion_group()
    assert len(conjugacy_data(G).classes) == 5
    assert centralizer(G, 4).order == 8
    assert G.mul(1, 1) == 4 and G.mul(1, 2) == 3


def test_induction_from_trivial_to_order_two():
    G = cyclic_group(2)
    f = ClassFunction(G.trivial, (1,))
    assert induce(f, G.whole).values == (2, 0)


def test_restricting_induced_function_gives_constant_two():
    G = cyclic_group(2)
    back = restrict(induce(ClassFunction(G.trivial, (1,)), G.whole), G.trivial)
    assert back.values == (2,)


def test_induce_and_restrict_to_same_group_are_identity():
    G = symmetric_group(3)
    f = ClassFunction(G.whole, (1, Fraction(1, 2), -3))
    assert induce(f, G.whole) == f
    assert restrict(f, G.whole) == f


def test_induction_needs_inclusion():
    G = symmetric_group(3)
    H = Subgroup(G, (0, G.perms.index((1, 0, 2))))
    K = Subgroup(G, (0, G.perms.index((2, 1, 0))))
    with pytest.raises(GroupError):
        induce(ClassFunction.indicator(H, 0), K)


def test_bad_tables_are_rejected():
    with pytest.raises(GroupError):
        build_group([[0, 1], [0, 1]])
    with pytest.raises(GroupError):
        build_group([[0, 1, 2], [1, 0, 2], [2, 2, 0]])
    with pytest.raises(GroupError):
        build_group({"generators": [(0, 0)]})


def test_regular_character_of_s3():
    G = symmetric_group(3)
    reg = induce(ClassFunction(G.trivial, (1,)), G.whole)
    assert reg(G.identity) == 6
    assert all(reg(g) == 0 for g in G.elements if g != G.identity)


@settings(max_examples=60, deadline=None)
@given(gsets(max_blocks=0), st.data())
def test_frobenius_reciprocity(gset, data):
    G, _ = gset
    subs = enumerate_subgroups(G)
    H = data.draw(st.sampled_from(subs))
    K = data.draw(st.sampled_from([K for K in subs if H.issubgroup(K)]))
    f = ClassFunction(H, data.draw(st.lists(rational(), min_size=H.num_classes,
                                            max_size=H.num_classes)))
    g = ClassFunction(K, data.draw(st.lists(rational(), min_size=K.num_classes,
                                            max_size=K.num_classes)))
    assert inner(induce(f, K), g) == inner(f, restrict(g, H))


@settings(max_examples=60, deadline=None)
@given(gsets(max_blocks=0), st.data())
def test_induction_is_transitive_and_conjugation_invariant(gset, data):
    G, _ = gset
    subs = enumerate_subgroups(G)
    H = data.draw(st.sampled_from(subs))
    K = data.draw(st.sampled_from([K for K in subs if H.issubgroup(K)]))
    f = ClassFunction(H, data.draw(st.lists(rational(), min_size=H.num_classes,
                                            max_size=H.num_classes)))
    assert induce(induce(f, K), G.whole) == induce(f, G.whole)
    g = data.draw(st.sampled_from(list(G.elements)))
    assert induce(conjugate_function(f, g), G.whole) == induce(f, G.whole)


@settings(max_examples=40, deadline=None)
@given(gsets(max_blocks=0))
def test_class_equation(gset):
    G, _ = gset
    data = conjugacy_data(G)
    assert sum(len(c) for c in data.classes) == G.order
    for c, Z in zip(data.classes, data.centralizers):
        assert len(c) * Z.order == G.order
