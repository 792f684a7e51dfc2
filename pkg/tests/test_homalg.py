from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from equihom.fingroup import cyclic_group
from equihom.gcomplex import SComplex
from equihom.homalg import (ChainComplex, Echelon, HomComplex, QMatrix, Quotient,
                            QuotientPresentation, Subspace, Supercomplex, VerificationError,
                            average_projector, chain_homology, hom_supercomplex, kernel_basis,
                            quotient_complex, rank, to_supercomplex)

from oracles import sympy_rank
from strategies import rational


def matrices(max_rows=7, max_cols=7):
    return st.integers(1, max_rows).flatmap(lambda r: st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(st.one_of(st.just(Fraction(0)), rational()),
                                    min_size=c, max_size=c), min_size=r, max_size=r)))


def _qmatrix(M: sympy.Matrix) -> QMatrix:
    return QMatrix.from_dense([[Fraction(int(x.p), int(x.q)) for x in M.row(i)]
                               for i in range(M.rows)])


@st.composite
def invertible(draw, n):
    """A random unimodular matrix ``L U`` and its inverse."""
    if n == 0:
        return QMatrix(0, 0), QMatrix(0, 0)
    L, U = sympy.eye(n), sympy.eye(n)
    for i in range(n):
        for j in range(n):
            x = draw(st.integers(-2, 2))
            if i > j:
                L[i, j] = x
            elif i < j:
                U[i, j] = x
    M = L * U
    return _qmatrix(M), _qmatrix(M.inv())


@st.composite
def chain_complexes(draw, top=3):
    """A complex with known homology: free summands plus contractible pairs, in a random basis."""
    free = {n: draw(st.integers(0, 2)) for n in range(top + 1)}
    pairs = {n: draw(st.integers(0, 2)) for n in range(1, top + 1)}  # Q in n -> Q in n-1
    dims = {n: free[n] + pairs.get(n, 0) + pairs.get(n + 1, 0) for n in range(top + 1)}
    # degree n basis: free part, sources of pairs n -> n-1, targets of pairs n+1 -> n
    d = {}
    for n in range(1, top + 1):
        entries = {(free[n - 1] + pairs.get(n - 1, 0) + k, free[n] + k): 1
                   for k in range(pairs[n])}
        d[n] = QMatrix(dims[n - 1], dims[n], entries)
    P = {n: draw(invertible(dims[n])) for n in dims}
    dd = {n: P[n - 1][0] @ m @ P[n][1] for n, m in d.items()}
    return ChainComplex(dims, dd), free


# -- matrices and elimination ---------------------------------------------------


def test_zero_matrix_has_rank_zero_and_full_kernel():
    Z = QMatrix(3, 4)
    assert rank(Z) == 0
    assert len(kernel_basis(Z)) == 4


@pytest.mark.parametrize("n", [1, 5, 70])
def test_identity_rank(n):
    assert rank(QMatrix.identity(n)) == n
    assert rank(QMatrix.identity(n), method="sparse") == n


def test_filled_triangle_edge_boundary_rank():
    assert rank(SComplex([[0, 1, 2]]).boundary_matrix(1)) == 2


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_methods_agree_with_sympy(rows):
    M = QMatrix.from_dense(rows)
    expected = sympy_rank(M)
    assert rank(M, method="dense") == expected
    assert rank(M, method="sparse") == expected
    assert rank(M.T) == expected


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_kernel_basis_spans_the_kernel(rows):
    M = QMatrix.from_dense(rows)
    K = kernel_basis(M)
    assert len(K) == M.cols - sympy_rank(M)
    assert all(not M.apply(v) for v in K)
    assert Echelon(K).rank == len(K)


@settings(max_examples=100, deadline=None)
@given(matrices(max_rows=5), st.lists(rational(), min_size=5, max_size=5))
def test_echelon_coordinates_reconstruct(rows, coeffs):
    vecs = [{j: x for j, x in enumerate(r) if x} for r in rows]
    ech = Echelon(vecs)
    basis = ech.basis()
    v: dict = {}
    for c, b in zip(coeffs, basis):
        for k, x in b.items():
            v[k] = v.get(k, 0) + c * x
    v = {k: x for k, x in v.items() if x}
    assert ech.contains(v)
    coords = ech.coords(v)
    back: dict = {}
    for c, b in zip(coords, basis):
        for k, x in b.items():
            back[k] = back.get(k, 0) + c * x
    assert {k: x for k, x in back.items() if x} == v


def test_matrix_algebra():
    A = QMatrix.from_dense([[1, 2], [3, 4]])
    B = QMatrix.from_dense([[0, 1], [1, 0]])
    assert (A @ B).to_dense() == [[2, 1], [4, 3]]
    assert (A - A).is_zero()
    assert A.T.to_dense() == [[1, 3], [2, 4]]
    assert A.scale(Fraction(1, 2))[1, 1] == 2
    with pytest.raises(ValueError):
        A @ QMatrix(3, 1)


# -- complexes -------------------------------------------------------------------


def test_point_homology():
    assert chain_homology(SComplex.point().chain_complex()) == {0: 1}


def test_circle_homology():
    assert chain_homology(SComplex([[0, 1], [1, 2], [0, 2]]).chain_complex()) == {0: 1, 1: 1}


def test_two_sphere_homology():
    assert chain_homology(SComplex.sphere(2).chain_complex()) == {0: 1, 1: 0, 2: 1}


def test_nonzero_square_is_rejected():
    d1 = QMatrix.from_dense([[1]])
    d2 = QMatrix.from_dense([[1]])
    with pytest.raises(VerificationError):
        ChainComplex({0: 1, 1: 1, 2: 1}, {1: d1, 2: d2})


@settings(max_examples=60, deadline=None)
@given(chain_complexes())
def test_homology_of_randomized_complexes(data):
    C, free = data
    assert chain_homology(C) == free
    S = to_supercomplex(C)
    even = sum(v for n, v in free.items() if n % 2 == 0)
    assert S.homology() == (even, sum(free.values()) - even)


@settings(max_examples=30, deadline=None)
@given(chain_complexes(top=2), chain_complexes(top=2))
def test_hom_complex_kunneth(c, d):
    (C, hc), (D, hd) = c, d
    H = HomComplex(C, D).homology()
    for k in H:
        assert H[k] == sum(hc.get(i, 0) * hd.get(i + k, 0) for i in hc)


def test_hom_of_points():
    P = ChainComplex({0: 1})
    assert hom_supercomplex(P, P).homology() == (1, 0)


def test_hom_of_circle_with_itself():
    C = SComplex([[0, 1], [1, 2], [0, 2]]).chain_complex()
    assert HomComplex(C, C).homology()[0] == 2
    assert hom_supercomplex(C, C).homology() == (2, 2)


def test_paracomplex_homology_needs_t_identity():
    T = QMatrix.from_dense([[0, 1], [1, 0]])
    defect = (QMatrix.identity(2) - T, QMatrix(0, 0))
    with pytest.raises(VerificationError):
        Supercomplex(2, 0, QMatrix(0, 2), QMatrix(2, 0), defect)


# -- quotients -------------------------------------------------------------------


def test_quotient_without_relations_is_identity():
    q = Quotient(QuotientPresentation(3))
    assert q.projection_matrix() == QMatrix.identity(3)


def test_quotient_by_diagonal():
    q = Quotient(QuotientPresentation(2, [{0: 1, 1: -1}]))
    assert q.dim == 1
    assert q.project({0: 1}) == q.project({1: 1})


def test_coinvariants_of_swapped_subdivided_edge():
    # vertices a=0, b=1, midpoint m=2; edges (0,2), (1,2); the swap fixes m
    K = SComplex([[0, 2], [1, 2]])
    C = K.chain_complex()
    rel0 = [{0: 1, 1: -1}]
    e = {s: i for i, s in enumerate(K.simplices(1))}
    rel1 = [{e[(0, 2)]: 1, e[(1, 2)]: -1}]
    Q, _ = quotient_complex(C, {0: QuotientPresentation(3, rel0),
                                1: QuotientPresentation(2, rel1)})
    assert Q.dims == {0: 2, 1: 1}
    assert chain_homology(Q) == {0: 1, 1: 0}


@settings(max_examples=100, deadline=None)
@given(matrices(max_rows=4, max_cols=6), st.data())
def test_quotient_projection_properties(rows, data):
    n = len(rows[0])
    rels = [{j: x for j, x in enumerate(r) if x} for r in rows]
    order = data.draw(st.permutations(range(n)))
    q = Quotient(QuotientPresentation(n, rels, order))
    r = Echelon(rels).rank
    assert q.dim == n - r
    assert all(not q.project(v) for v in rels)
    for j in range(q.dim):
        assert q.project(q.lift(j)) == {j: 1}
    assert rank(q.projection_matrix()) == q.dim


def test_boundary_unstable_relations_are_rejected():
    C = SComplex([[0, 1]]).chain_complex()
    with pytest.raises(ValueError):
        quotient_complex(C, {1: QuotientPresentation(1, [{0: 1}])})


def test_subspace_restriction():
    S = Subspace([{0: 1, 1: 1}])
    T = Subspace([{0: 2, 1: 2}, {2: 1}])
    M = S.restrict(lambda v: {k: 3 * x for k, x in v.items()}, T)
    # coordinates refer to the reduced bases
    assert S.basis == [{0: 1, 1: 1}]
    assert T.basis == [{0: 1, 1: 1}, {2: 1}]
    assert M.to_dense() == [[3], [0]]


# -- averaging -------------------------------------------------------------------


def test_trivial_action_averages_to_identity():
    G = cyclic_group(3)
    assert average_projector(G.whole, lambda g: QMatrix.identity(2)) == QMatrix.identity(2)


def test_regular_representation_of_order_two():
    G = cyclic_group(2)
    swap = QMatrix.from_dense([[0, 1], [1, 0]])
    P = average_projector(G.whole, lambda g: swap if g else QMatrix.identity(2))
    assert rank(P) == 1
    assert P.to_dense() == [[Fraction(1, 2)] * 2] * 2


def test_non_multiplicative_action_is_rejected():
    G = cyclic_group(2)
    with pytest.raises(ValueError):
        average_projector(G.whole, lambda g: QMatrix.from_dense([[2]]) if g else QMatrix.identity(1))
