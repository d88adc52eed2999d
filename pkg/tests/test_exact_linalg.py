from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kantorlab.exact_linalg import (QQ, Field, Subspace, coordinates, exact_einsum, kernel_basis, rank,
                                    rref, solve, subspace_ops)

from oracles import fraction_rref


def as_fracs(m):
    return [[Fraction(int(x.p), int(x.q)) for x in r] for r in m.tolist()]


small_ints = st.integers(-4, 4)
matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c),
                                                            min_size=r, max_size=r)))


def test_rref_identity():
    r, rk, piv = rref(QQ.identity(3))
    assert r == QQ.identity(3) and rk == 3 and piv == [0, 1, 2]


def test_rref_zero():
    r, rk, piv = rref(QQ.zeros(2, 4))
    assert rk == 0 and piv == [] and r == QQ.zeros(2, 4)


def test_rref_hand_example():
    r, rk, piv = rref(QQ.matrix([[2, 4], [1, 2]]))
    assert r == QQ.matrix([[1, 2], [0, 0]]) and rk == 1 and piv == [0]


def test_solve_examples():
    assert solve(QQ.identity(2), [QQ(3), QQ(-1)]) == [3, -1]
    assert solve(QQ.matrix([[1, 1]]), [QQ(0)]) == [0, 0]
    assert solve(QQ.matrix([[1, 0], [0, 0]]), [QQ(0), QQ(1)]) is None
    with pytest.raises(ValueError):
        solve(QQ.identity(2), [QQ(1)])


def test_kernel_examples():
    assert kernel_basis(QQ.identity(3)).dim == 0
    assert kernel_basis(QQ.zeros(2, 3)).dim == 3
    k = kernel_basis(QQ.matrix([[1, 1, 0]]))
    assert k.dim == 2 and k.contains([QQ(1), QQ(-1), QQ(0)])


def test_subspace_examples():
    e = [QQ.unit(3, i) for i in range(3)]
    a = Subspace.from_vectors(QQ, 3, [e[0]])
    assert subspace_ops(a, a, "equal")
    assert subspace_ops(a, Subspace.from_vectors(QQ, 3, [e[1]]), "intersect").dim == 0
    s = subspace_ops(Subspace.from_vectors(QQ, 3, e[:2]), Subspace.from_vectors(QQ, 3, e[1:]), "sum")
    assert s.dim == 3
    with pytest.raises(ValueError):
        subspace_ops(a, Subspace.zero(QQ, 2), "sum")


def test_field_guard():
    for bad in (2, 3, 4, 9):
        with pytest.raises(ValueError):
            Field(bad)
    assert Field.parse("gf:7").p == 7 and Field.parse("q").p == 0


def test_coordinates_outside_span():
    with pytest.raises(ValueError):
        coordinates(QQ, QQ.matrix([[1, 0, 0]]), QQ.matrix([[0, 1, 0]]))


@given(matrices)
@settings(max_examples=60, deadline=None)
def test_rref_matches_fraction_oracle(rows):
    r, rk, piv = rref(QQ.matrix(rows))
    o, ork, opiv = fraction_rref(rows)
    assert rk == ork and piv == opiv and as_fracs(r) == o


@given(matrices, st.sampled_from([0, 5, 7]))
@settings(max_examples=60, deadline=None)
def test_rref_idempotent_and_rank_nullity(rows, p):
    f = Field(p)
    m = f.matrix(rows)
    r, rk, _ = rref(m)
    assert rref(r)[0] == r
    assert rk + kernel_basis(m).dim == m.ncols()


@given(matrices, matrices, st.sampled_from([0, 7]))
@settings(max_examples=40, deadline=None)
def test_subspace_dimension_formula(a_rows, b_rows, p):
    f = Field(p)
    n = min(len(a_rows[0]), len(b_rows[0]))
    a = Subspace.from_vectors(f, n, [r[:n] for r in a_rows])
    b = Subspace.from_vectors(f, n, [r[:n] for r in b_rows])
    i = a.intersect(b)
    assert a.dim + b.dim == a.sum(b).dim + i.dim
    assert a.contains(i) and b.contains(i)


@given(matrices)
@settings(max_examples=40, deadline=None)
def test_solve_consistency(rows):
    a = QQ.matrix(rows)
    b = [QQ(sum(r)) for r in rows]
    x = solve(a, b)
    assert x is not None
    assert [sum((r[j] * x[j] for j in range(len(x))), QQ(0)) for r in a.tolist()] == b


def test_exact_einsum_modular_and_object():
    import numpy as np

    a = np.array([[2 ** 40, 1], [3, 4]], dtype=object)
    out = exact_einsum("ij,jk->ik", a, a)
    assert out[0, 0] == 2 ** 80 + 3
    assert exact_einsum("ij,jk->ik", a, a, p=7)[0, 0] == (2 ** 80 + 3) % 7


def test_rank_of_empty():
    assert rank(QQ.zeros(0, 3)) == 0
