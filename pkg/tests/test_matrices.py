import pytest

from superh2.kalgebra import builtin, builtin_catalog
from superh2.lie import LieSuperAlgebra, is_perfect, verify_superaxioms
from superh2.linalg import FieldSpec
from superh2.matrices import (
    UnsupportedRankError,
    build_gl,
    build_sl,
    derived_equals_sl,
    supertrace,
    verify_t_identities,
)

F2, Q = FieldSpec(2), FieldSpec(0)
CATALOG = builtin_catalog()


def test_gl_dimension_and_brackets():
    A = builtin("F2")
    gl = build_gl(2, 1, A)
    assert gl.dim == 9
    one = A.one
    assert gl.bracket(gl.E(1, 2, one), gl.E(2, 3, one)) == gl.E(1, 3, one)
    gl31 = build_gl(3, 1, builtin("Q[x]/(x^2)"))
    R = gl31.algebra
    for a in range(R.dim):
        for b in range(R.dim):
            assert not gl31.bracket(gl31.E(1, 2, R.basis_vector(a)), gl31.E(3, 4, R.basis_vector(b)))


def test_odd_odd_bracket_is_anticommutator():
    A = builtin("Q")
    gl = build_gl(2, 1, A)
    one = A.one
    # E13 and E31 are odd, so [E13, E31] = E11 + E33
    got = gl.to_matrix(gl.bracket(gl.E(1, 3, one), gl.E(3, 1, one)))
    assert got == {(1, 1, 0): 1, (3, 3, 0): 1}


def test_supertrace_examples():
    A = builtin("F2")
    one = A.one
    assert supertrace(2, 1, A, {(1, 1, 0): 1}) == one
    Aq = builtin("Q")
    assert supertrace(2, 1, Aq, {(3, 3, 0): 1}) == (-1,)
    ident = [[one if i == j else A.zero() for j in range(4)] for i in range(4)]
    assert supertrace(2, 2, A, ident) == A.zero()


@pytest.mark.parametrize(
    "m,n,name,dim", [(2, 1, "F2", 8), (2, 2, "Q[x]/(x^2)", 30), (2, 2, "M2(F2)", 63)]
)
def test_sl_dimensions(m, n, name, dim):
    assert build_sl(m, n, builtin(name)).dim == dim


def test_rank_guard():
    with pytest.raises(UnsupportedRankError):
        build_sl(1, 1, builtin("F2"))
    with pytest.raises(UnsupportedRankError):
        build_gl(1, 0, builtin("F2"))


def test_perfectness():
    A = builtin("F2")
    assert is_perfect(build_sl(2, 1, A).lie)
    assert not is_perfect(build_gl(2, 1, A).lie)
    assert not is_perfect(LieSuperAlgebra.abelian(F2, [0]))


@pytest.mark.parametrize("name,A", CATALOG, ids=[n for n, _ in CATALOG])
@pytest.mark.parametrize("mn", [(2, 1), (3, 1), (2, 2)])
def test_axioms_and_perfectness(name, A, mn):
    sl = build_sl(*mn, A)
    rep = verify_superaxioms(sl.lie)
    assert rep.ok, rep.violations
    assert is_perfect(sl.lie)
    assert verify_superaxioms(build_gl(*mn, A).lie).ok


@pytest.mark.parametrize("name", ["F2", "F3", "Q[x]/(x^2)", "F3[C3]", "Weyl(F2)"])
def test_sl_is_derived_subalgebra(name):
    assert derived_equals_sl(2, 1, builtin(name))


def test_planted_sign_flip_is_s1_violation():
    g = build_sl(2, 1, builtin("Q")).lie
    (i, j), terms = next((k, v) for k, v in sorted(g.table.items()) if k[0] != k[1])
    table = dict(g.table)
    table[i, j] = tuple((k, -c) for k, c in terms)
    bad = LieSuperAlgebra(g.field, g.parity, g.labels, table)
    rep = verify_superaxioms(bad)
    assert not rep.ok
    assert rep.first("S1")[1] == (min(i, j), max(i, j))


def test_s3_catches_even_square_in_char_2():
    # [w, w] = w for an even w is antisymmetric mod 2 but violates S3
    g = LieSuperAlgebra(F2, (0,), ("w",), {(0, 0): ((0, 1),)})
    rep = verify_superaxioms(g)
    assert rep.counts["S1"] == 0 and rep.counts["S3"] == 1


def test_parity_violation_reported():
    g = LieSuperAlgebra(Q, (0, 1), ("a", "b"), {(0, 0): ((1, 1),)})
    assert verify_superaxioms(g).counts["parity"] == 1


@pytest.mark.parametrize("name", ["F2", "F3", "Q", "F2[x]/(x^2)", "F3[x]/(x^2)", "Q[x]/(x^2)", "Weyl(F2)"])
@pytest.mark.parametrize("mn", [(2, 1), (3, 1), (2, 2)])
def test_t_identities(name, mn):
    rep = verify_t_identities(build_sl(*mn, builtin(name)))
    assert rep.ok, rep.examples
    assert all(c > 0 for c in rep.checks.values())


def test_t_identities_report_the_ab_variant_for_noncommutative_algebras():
    rep = verify_t_identities(build_sl(2, 2, builtin("Weyl(F2)")))
    assert rep.info["t(ab) variant j-independent"] is False
    rep = verify_t_identities(build_sl(2, 2, builtin("F2[x]/(x^2)")))
    assert rep.info["t(ab) variant j-independent"] is True
