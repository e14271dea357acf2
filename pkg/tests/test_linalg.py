from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superh2.linalg import (
    AmbientMismatchError,
    FieldMismatchError,
    FieldSpec,
    Mat,
    RowReducer,
    Subspace,
    kernel_basis,
    quotient_dim,
    rank,
    rref,
    span_union_dim,
)

F2, F3, Q = FieldSpec(2), FieldSpec(3), FieldSpec(0)


def test_rref_identity_f2():
    r, piv, rk = rref(Mat.identity(F2, 2))
    assert r == Mat.identity(F2, 2)
    assert piv == [0, 1] and rk == 2


def test_rref_proportional_rows_q():
    r, piv, rk = rref(Mat.from_rows(Q, [[2, 4], [1, 2]]))
    assert r.entries == ((1, 2), (0, 0))
    assert piv == [0] and rk == 1


def test_rref_equal_rows_mod_2():
    r, _, rk = rref(Mat.from_rows(F2, [[1, 1], [1, 1]]))
    assert r.entries == ((1, 1), (0, 0))
    assert rk == 1


def test_kernel_examples():
    assert kernel_basis(Mat.zeros(F3, 3, 3)).dim == 3
    assert kernel_basis(Mat.identity(Q, 3)).dim == 0
    k = kernel_basis(Mat.from_rows(F2, [[1, 1]]))
    assert k.dim == 1 and k.vectors() == [(1, 1)]


def test_span_union_examples():
    a = Subspace.span(Q, 3, [[1, 2, 3], [0, 1, 1]])
    assert span_union_dim(a, a) == 2
    assert span_union_dim(Subspace.zero(Q, 3), a) == 2
    l1, l2 = Subspace.span(F3, 2, [[1, 0]]), Subspace.span(F3, 2, [[1, 1]])
    assert span_union_dim(l1, l2) == 2


def test_quotient_dim_examples():
    assert quotient_dim(5, Subspace.zero(F2, 5)) == 5
    assert quotient_dim(5, Subspace.full(F2, 5)) == 0
    assert quotient_dim(4, Subspace.span(F2, 4, [[1, 1, 0, 0]])) == 3


def test_mismatch_errors():
    a = Subspace.span(F2, 2, [[1, 0]])
    with pytest.raises(FieldMismatchError):
        span_union_dim(a, Subspace.span(F3, 2, [[1, 0]]))
    with pytest.raises(AmbientMismatchError):
        span_union_dim(a, Subspace.span(F2, 3, [[1, 0, 0]]))
    with pytest.raises(AmbientMismatchError):
        quotient_dim(3, a)


def test_field_rejects_composite_and_huge():
    with pytest.raises(ValueError):
        FieldSpec(4)
    with pytest.raises(ValueError):
        FieldSpec(2**31 + 11)


def test_rational_elimination_stays_exact():
    n = 6
    hilbert = Mat.from_rows(Q, [[Fraction(1, i + j + 1) for j in range(n)] for i in range(n)])
    r, _, rk = rref(hilbert)
    assert rk == n
    assert r == Mat.identity(Q, n)


def test_quotient_map_kills_subspace():
    s = Subspace.span(F3, 4, [[1, 2, 0, 1], [0, 0, 1, 1]])
    qm = s.quotient_map()
    assert qm.nrows == 2
    for v in s.vectors():
        assert not any(qm.apply(v))
    assert rank(qm) == 2


def test_gf2_reducer_matches_generic_path():
    rows = [{0: 1, 3: 1}, {1: 1, 3: 1}, {0: 1, 1: 1}, {2: 1}]
    red = RowReducer(F2, 4)
    assert red.add_many(rows) == 3
    assert red.contains({0: 1, 1: 1})
    assert not red.contains({3: 1})


def matrices(field, max_dim=5):
    if field.p:
        entry = st.integers(0, field.p - 1)
    else:
        entry = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(st.lists(entry, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


@pytest.mark.parametrize("field", [F2, F3, Q], ids=lambda f: f.name)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_rref_properties(field, data):
    m = Mat.from_rows(field, data.draw(matrices(field)))
    r, piv, rk = rref(m)
    assert rref(r)[0] == r
    assert rank(m.transpose()) == rk
    k = kernel_basis(m)
    assert k.dim + rk == m.ncols
    for v in k.vectors():
        assert not any(m.apply(v))
    assert len(piv) == rk
