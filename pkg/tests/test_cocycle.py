from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superh2.cocycle import (
    CocycleViolationError,
    build_extension,
    build_kernel_module,
    build_quad_tables,
    classify_P5_P6,
    psi,
    psi_vec,
    quad_block,
    verify_presentation,
    verify_Tsharp_identities,
)
from superh2.kalgebra import builtin, builtin_catalog, ideal_Im
from superh2.lie import is_perfect
from superh2.matrices import build_sl

TABLES = build_quad_tables()
CATALOG = builtin_catalog()
SMALL = ["F2", "F3", "Q", "F2[x]/(x^2)", "F3[x]/(x^2)", "Q[x]/(x^2)", "Weyl(F2)"]


def test_quad_tables_partition():
    assert len(TABLES.blocks) == 6
    assert all(len(b) == 4 for b in TABLES.blocks)
    assert sorted(q for b in TABLES.blocks for q in b) == sorted(permutations((1, 2, 3, 4)))
    for m, b in enumerate(TABLES.blocks, start=1):
        assert {TABLES.theta[q] for q in b} == {m}


def test_quad_table_values():
    assert TABLES.theta[1, 3, 2, 4] == 5
    assert TABLES.theta[3, 1, 4, 2] == 6
    assert TABLES.sign[1, 4, 2, 3] == -1
    assert set(quad_block((1, 2, 3, 4))) == {(1, 2, 3, 4), (3, 2, 1, 4), (1, 4, 3, 2), (3, 4, 1, 2)}
    # blocks 1..4 are ordered by their smallest quadruple
    mins = [min(b) for b in TABLES.blocks[:4]]
    assert mins == sorted(mins) and TABLES.theta[1, 2, 3, 4] == 1


def test_sign_table():
    plus = {(1, 3, 2, 4), (2, 4, 1, 3), (3, 1, 4, 2), (4, 2, 3, 1)}
    minus = {(1, 4, 2, 3), (2, 3, 1, 4), (3, 2, 4, 1), (4, 1, 3, 2)}
    for q, s in TABLES.sign.items():
        if q in minus:
            assert s == -1
        else:
            assert s == 1
    assert plus | minus == set(TABLES.blocks[4]) | set(TABLES.blocks[5])


def test_p5_p6_classification():
    assert all(classify_P5_P6(TABLES).values())


@pytest.mark.parametrize("name,A", CATALOG, ids=[n for n, _ in CATALOG])
def test_kernel_module_dims(name, A):
    r2, r0 = ideal_Im(A, 2).quotient_dim, ideal_Im(A, 0).quotient_dim
    w = build_kernel_module((3, 1), A)
    u = build_kernel_module((2, 2), A)
    assert w.total_dim == 6 * r2 and w.kernel_parity == 1
    assert [c.modulus for c in w.components] == [2] * 6
    assert u.total_dim == 4 * r2 + 2 * r0 and u.kernel_parity == 0
    assert [c.modulus for c in u.components] == [2, 2, 2, 2, 0, 0]


def test_kernel_module_examples():
    assert build_kernel_module((3, 1), builtin("F2")).total_dim == 6
    assert build_kernel_module((3, 1), builtin("Q")).total_dim == 0
    assert build_kernel_module("2,2", builtin("Q")).total_dim == 2


def test_psi_examples():
    A = builtin("F2")
    sl = build_sl(3, 1, A)
    mod = build_kernel_module((3, 1), A)
    one = A.one
    (x,), (y,) = sl.E(1, 2, one), sl.E(3, 4, one)
    comp = mod.components[TABLES.theta[1, 2, 3, 4] - 1]
    assert psi((3, 1), TABLES, mod, sl, x, y) == {comp.offset: 1}
    (z,) = sl.E(2, 3, one)
    assert psi((3, 1), TABLES, mod, sl, x, z) == {}
    assert psi((3, 1), TABLES, mod, sl, x, sl.diag_offset) == {}


def test_psi_signs_in_case_22():
    A = builtin("Q[x]/(x^2)")
    sl = build_sl(2, 2, A)
    mod = build_kernel_module((2, 2), A)
    x = A.basis_vector(1)
    (a,), (b,) = sl.E(1, 3, A.one), sl.E(2, 4, x)
    assert psi((2, 2), TABLES, mod, sl, a, b) == mod.epsilon(5, x)
    (c,), (d,) = sl.E(1, 4, A.one), sl.E(2, 3, x)
    assert psi((2, 2), TABLES, mod, sl, c, d) == {k: -v for k, v in mod.epsilon(5, x).items()}


def test_psi_wrong_case():
    A = builtin("F2")
    with pytest.raises(ValueError):
        psi((3, 1), TABLES, build_kernel_module((3, 1), A), build_sl(2, 2, A), 0, 1)
    with pytest.raises(ValueError):
        build_kernel_module((2, 1), A)


@pytest.mark.parametrize("case", [(3, 1), (2, 2)])
@pytest.mark.parametrize("name", ["F2", "Q", "F2[x]/(x^2)", "F3[C3]"])
def test_psi_super_skew_and_parity(case, name):
    A = builtin(name)
    sl = build_sl(*case, A)
    mod = build_kernel_module(case, A)
    par = sl.lie.parity
    F = A.field
    for x in range(sl.dim):
        for y in range(sl.dim):
            v = psi(case, TABLES, mod, sl, x, y)
            s = -1 if par[x] and par[y] else 1
            back = psi(case, TABLES, mod, sl, y, x)
            assert v == {k: F.mul(F.sign(-s), c) for k, c in back.items() if F.mul(F.sign(-s), c)}
            if v:
                assert (par[x] + par[y]) % 2 == mod.kernel_parity
        if not par[x]:
            assert not psi(case, TABLES, mod, sl, x, x)


@pytest.mark.parametrize("case", [(3, 1), (2, 2)])
@pytest.mark.parametrize("name,A", CATALOG, ids=[n for n, _ in CATALOG])
def test_extension_is_a_lie_superalgebra(case, name, A):
    ext = build_extension(case, A)  # raises on any axiom violation
    assert ext.total.dim == ext.base.dim + ext.kernel.total_dim
    assert is_perfect(ext.total)


def test_extension_dims():
    assert build_extension((3, 1), builtin("F2")).total.dim == build_sl(3, 1, builtin("F2")).dim + 6
    assert build_extension((2, 2), builtin("Q")).total.dim == build_sl(2, 2, builtin("Q")).dim + 2


def test_single_sign_flip_breaks_skew_symmetry():
    bad = TABLES.with_sign_flipped([(1, 4, 2, 3)])
    with pytest.raises(CocycleViolationError) as err:
        build_extension((2, 2), builtin("Q"), bad)
    law, where = err.value.report.first()
    assert law == "S1"
    assert "E14(1)" in str(err.value) and "E23(1)" in str(err.value)


def test_consistent_sign_flip_breaks_jacobi():
    # flipping a skew-symmetric pair keeps S1 and must be caught by the Jacobi identity
    bad = TABLES.with_sign_flipped([(1, 4, 2, 3), (2, 3, 1, 4)])
    with pytest.raises(CocycleViolationError) as err:
        build_extension((2, 2), builtin("F3"), bad)
    assert err.value.report.counts["S1"] == 0
    assert err.value.report.counts["S2"] > 0
    assert "E12(1), E23(1), E24(1)" in str(err.value)


def test_sign_flip_is_invisible_in_char_2():
    bad = TABLES.with_sign_flipped([(1, 4, 2, 3)])
    ext = build_extension((2, 2), builtin("F2"), bad)
    assert ext.kernel.total_dim == 6


@pytest.mark.parametrize("case", [(3, 1), (2, 2)])
@pytest.mark.parametrize("name", SMALL)
def test_presentation_and_tsharp(case, name):
    ext = build_extension(case, builtin(name))
    pres = verify_presentation(case, ext)
    assert pres.ok, pres.examples
    assert len(pres.checks) == 7
    tsh = verify_Tsharp_identities(case, ext)
    assert tsh.ok, tsh.examples
    assert tsh.info["t(a,b) with T#_1j(1,ba) independent of j"]


def test_presentation_rejects_other_case():
    ext = build_extension((3, 1), builtin("F2"))
    with pytest.raises(ValueError):
        verify_presentation((2, 2), ext)


def test_kernel_valued_relation_sign():
    A = builtin("Q")
    ext = build_extension((2, 2), A)
    one = A.one
    got = ext.bracket(ext.X(1, 4, one), ext.X(2, 3, one))
    assert got == {k: -c for k, c in ext.kernel.epsilon(5, one).items()}


def test_projection_is_homomorphism_with_central_kernel():
    A = builtin("F2[x]/(x^2)")
    ext = build_extension((3, 1), A)
    w = ext.offset
    for x in range(ext.total.dim):
        for y in range(ext.total.dim):
            br = ext.total.bracket({x: 1}, {y: 1})
            if x < w or y < w:
                assert not br
            else:
                assert ext.project(br) == ext.base.lie.bracket({x - w: 1}, {y - w: 1})


@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_bracket_of_lifts_is_psi_plus_bracket(data):
    case = data.draw(st.sampled_from([(3, 1), (2, 2)]))
    A = builtin(data.draw(st.sampled_from(["Q", "F3[x]/(x^2)", "F2[x]/(x^2)"])))
    ext = _ext(case, A.name)
    F = A.field
    d = ext.base.dim
    coeff = st.integers(-3, 3).map(F)
    vec = st.dictionaries(st.integers(0, d - 1), coeff, max_size=5).map(lambda v: {k: c for k, c in v.items() if c})
    u, v = data.draw(vec), data.draw(vec)
    total = ext.bracket(ext.lift(u), ext.lift(v))
    assert ext.kernel_part(total) == psi_vec(case, ext.tables, ext.kernel, ext.base, u, v)
    assert ext.project(total) == ext.base.bracket(u, v)


_EXT_CACHE = {}


def _ext(case, name):
    key = (case, name)
    if key not in _EXT_CACHE:
        _EXT_CACHE[key] = build_extension(case, builtin(name), check=False)
    return _EXT_CACHE[key]
