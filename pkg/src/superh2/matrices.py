"""The matrix Lie superalgebras gl(m,n,R) and sl(m,n,R).

Indices 1..m are even and m+1..m+n odd; E_ij(a) has parity w(i)+w(j).
Elements are handled in two coordinate systems: *matrix* coordinates, a
sparse dict ``(i, j, lam) -> scalar`` over the unit matrices E_ij(r_lam), and
*basis* coordinates of the Lie superalgebra.  For sl the diagonal part of the
basis is the RREF basis of the admissible diagonals {d : str(d) in [R,R]}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Sequence

from .kalgebra import AlgElement, KAlgebra, commutator_span, mul
from .lie import LieSuperAlgebra, span_of
from .linalg import Mat, SparseVec, Subspace, kernel_basis, sparse_axpy


class UnsupportedRankError(ValueError):
    pass


def omega(m: int, i: int) -> int:
    return 0 if i <= m else 1


@dataclass(frozen=True)
class SLDescriptor:
    m: int
    n: int
    algebra: KAlgebra
    diag_subspace: Subspace  # inside R^{m+n}, coordinate (i, lam) at (i-1)*dim R + lam


@dataclass(frozen=True, eq=False)
class MatrixSuperalgebra:
    """gl(m,n,R) or sl(m,n,R) together with the matrix model of its basis."""

    kind: str  # "gl" or "sl"
    m: int
    n: int
    algebra: KAlgebra
    lie: LieSuperAlgebra
    offdiag_index: dict  # (i, j, lam) -> basis index, i != j
    diag_index: dict  # gl only: (i, lam) -> basis index
    descriptor: SLDescriptor | None = None
    diag_offset: int = 0
    _basis_matrices: tuple = field(default=(), repr=False)

    @property
    def N(self) -> int:
        return self.m + self.n

    @property
    def dim(self) -> int:
        return self.lie.dim

    @property
    def field(self):
        return self.algebra.field

    def omega(self, i: int) -> int:
        return omega(self.m, i)

    def parity_sign(self, i: int, j: int) -> int:
        """(-1)^{w(i)+w(j)}."""
        return -1 if (self.omega(i) + self.omega(j)) % 2 else 1

    # -- matrix coordinates ------------------------------------------------

    def basis_matrix(self, b: int) -> SparseVec:
        return self._basis_matrices[b]

    def to_matrix(self, v: SparseVec) -> SparseVec:
        F = self.field
        out: SparseVec = {}
        for b, c in v.items():
            sparse_axpy(F, out, c, self._basis_matrices[b])
        return out

    def from_matrix(self, X: SparseVec) -> SparseVec:
        """Basis coordinates of a matrix; ValueError if it lies outside the algebra."""
        F = self.field
        out: SparseVec = {}
        diag: dict = {}
        for (i, j, lam), c in X.items():
            if not c:
                continue
            if i != j:
                out[self.offdiag_index[i, j, lam]] = c
            elif self.kind == "gl":
                out[self.diag_index[i, lam]] = c
            else:
                diag[(i - 1) * self.algebra.dim + lam] = c
        if diag:
            S = self.descriptor.diag_subspace
            vec = [F.zero] * S.ambient_dim
            for pos, c in diag.items():
                vec[pos] = c
            try:
                coords = S.coordinates(vec)
            except ValueError:
                raise ValueError("diagonal part has supertrace outside [R,R]") from None
            for r, c in enumerate(coords):
                if c:
                    out[self.diag_offset + r] = c
        return out

    def E(self, i: int, j: int, a: AlgElement) -> SparseVec:
        """Basis coordinates of E_ij(a)."""
        return self.from_matrix(matrix_unit(i, j, a))

    def bracket(self, u: SparseVec, v: SparseVec) -> SparseVec:
        return self.lie.bracket(u, v)

    def T(self, i: int, j: int, a: AlgElement, b: AlgElement) -> SparseVec:
        """T_ij(a, b) = [E_ij(a), E_ji(b)]."""
        return self.bracket(self.E(i, j, a), self.E(j, i, b))


def matrix_unit(i: int, j: int, a: AlgElement) -> SparseVec:
    return {(i, j, lam): c for lam, c in enumerate(a) if c}


def gl_bracket(m: int, A: KAlgebra, X: SparseVec, Y: SparseVec) -> SparseVec:
    """[X, Y] = XY - (-1)^{|X||Y|} YX on homogeneous matrix-coordinate vectors.

    Computed termwise, so X and Y may mix parities.
    """
    F = A.field
    out: SparseVec = {}

    def acc(key, c):
        w = F.add(out.get(key, F.zero), c)
        if w:
            out[key] = w
        else:
            out.pop(key, None)

    for (i, j, a), x in X.items():
        px = (omega(m, i) + omega(m, j)) % 2
        for (k, l, b), y in Y.items():
            py = (omega(m, k) + omega(m, l)) % 2
            xy = F.mul(x, y)
            if j == k:
                for lam, c in A.basis_product(a, b):
                    acc((i, l, lam), F.mul(xy, c))
            if l == i:
                s = -1 if px and py else 1
                for lam, c in A.basis_product(b, a):
                    acc((k, j, lam), F.mul(F.neg(xy) if s == 1 else xy, c))
    return out


def _assemble(kind, m, n, A, matrices, labels, offdiag_index, diag_index, descriptor, diag_offset):
    F = A.field
    parity = []
    for X in matrices:
        i, j, _ = next(iter(X))
        parity.append((omega(m, i) + omega(m, j)) % 2)
    alg = MatrixSuperalgebra(kind, m, n, A, None, offdiag_index, diag_index, descriptor, diag_offset, tuple(matrices))
    table = {}
    for b1, X in enumerate(matrices):
        for b2, Y in enumerate(matrices):
            Z = gl_bracket(m, A, X, Y)
            if Z:
                coords = alg.from_matrix(Z)
                if coords:
                    table[b1, b2] = tuple(sorted(coords.items()))
    lie = LieSuperAlgebra(F, tuple(parity), tuple(labels), table)
    object.__setattr__(alg, "lie", lie)
    return alg


def _check_rank(m: int, n: int, least: int) -> None:
    if m < 0 or n < 0 or m + n < least:
        raise UnsupportedRankError(f"(m, n) = ({m}, {n}) needs m + n >= {least}")


def build_gl(m: int, n: int, A: KAlgebra) -> MatrixSuperalgebra:
    _check_rank(m, n, 2)
    N = m + n
    matrices, labels, off, dia = [], [], {}, {}
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            for lam in range(A.dim):
                idx = len(matrices)
                matrices.append({(i, j, lam): A.field.one})
                labels.append(f"E{i}{j}({A.basis_labels[lam]})" if N < 10 else f"E{i},{j}({A.basis_labels[lam]})")
                if i == j:
                    dia[i, lam] = idx
                else:
                    off[i, j, lam] = idx
    return _assemble("gl", m, n, A, matrices, labels, off, dia, None, 0)


def supertrace(m: int, n: int, A: KAlgebra, X) -> AlgElement:
    """str(X) = sum_{i<=m} x_ii - sum_{i>m} x_ii.

    ``X`` is either an (m+n)x(m+n) nested sequence of algebra elements or a
    matrix-coordinate dict.
    """
    F = A.field
    out = list(A.zero())
    if isinstance(X, dict):
        for (i, j, lam), c in X.items():
            if i == j:
                out[lam] = F.add(out[lam], c) if i <= m else F.sub(out[lam], c)
        return tuple(out)
    N = m + n
    if len(X) != N:
        raise ValueError(f"expected a {N}x{N} matrix")
    for i in range(N):
        for lam, c in enumerate(X[i][i]):
            c = F(c)
            out[lam] = F.add(out[lam], c) if i < m else F.sub(out[lam], c)
    return tuple(out)


def admissible_diagonals(m: int, n: int, A: KAlgebra) -> Subspace:
    """{d in R^{m+n} : str(diag d) in [R,R]} in RREF."""
    F = A.field
    N, r = m + n, A.dim
    q = commutator_span(A).quotient_map()  # R -> R/[R,R]
    rows = []
    for k in range(q.nrows):
        row = []
        for i in range(1, N + 1):
            s = 1 if i <= m else -1
            row.extend(F.mul(F.sign(s), q[k, lam]) for lam in range(r))
        rows.append(row)
    return kernel_basis(Mat.from_rows(F, rows, N * r))


def build_sl(m: int, n: int, A: KAlgebra) -> MatrixSuperalgebra:
    _check_rank(m, n, 3)
    F = A.field
    N, r = m + n, A.dim
    matrices, labels, off = [], [], {}
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            if i == j:
                continue
            for lam in range(r):
                off[i, j, lam] = len(matrices)
                matrices.append({(i, j, lam): F.one})
                labels.append(f"E{i}{j}({A.basis_labels[lam]})" if N < 10 else f"E{i},{j}({A.basis_labels[lam]})")
    D = admissible_diagonals(m, n, A)
    offset = len(matrices)
    for row in D.basis.entries:
        X = {}
        terms = []
        for pos, c in enumerate(row):
            if c:
                i, lam = divmod(pos, r)
                X[i + 1, i + 1, lam] = c
                coef = "" if c == F.one else f"{c}*"
                terms.append(f"{coef}E{i + 1}{i + 1}({A.basis_labels[lam]})")
        matrices.append(X)
        labels.append("H[" + " + ".join(terms) + "]")
    desc = SLDescriptor(m, n, A, D)
    return _assemble("sl", m, n, A, matrices, labels, off, {}, desc, offset)


def embed_in_gl(sl: MatrixSuperalgebra, gl: MatrixSuperalgebra) -> list[SparseVec]:
    """gl basis coordinates of every sl basis element."""
    return [gl.from_matrix(sl.basis_matrix(b)) for b in range(sl.dim)]


def derived_equals_sl(m: int, n: int, A: KAlgebra) -> bool:
    """Check sl(m,n,R) = [gl(m,n,R), gl(m,n,R)] as subspaces of gl."""
    gl = build_gl(m, n, A)
    sl = build_sl(m, n, A)
    derived = span_of(gl.lie, (dict(t) for t in gl.lie.table.values()))
    slspan = span_of(gl.lie, embed_in_gl(sl, gl))
    if derived.rank != slspan.rank:
        return False
    return all(derived.contains(v) for v in slspan.basis())


# ---------------------------------------------------------------------------
# the bracket identities for T_ij(a, b) and t(a, b)
# ---------------------------------------------------------------------------


@dataclass
class IdentityReport:
    """Per-family check counts and failures; ``info`` holds non-gating facts."""

    checks: dict = field(default_factory=dict)
    failures: dict = field(default_factory=dict)
    examples: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    def check(self, family: str, ok: bool, where) -> None:
        self.checks[family] = self.checks.get(family, 0) + 1
        self.failures.setdefault(family, 0)
        if not ok:
            self.failures[family] += 1
            if len(self.examples) < 20:
                self.examples.append((family, where))

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())

    def summary(self) -> dict:
        return {k: {"checks": self.checks[k], "failures": self.failures[k]} for k in self.checks}


def _combine(F, *terms):
    out: SparseVec = {}
    for c, v in terms:
        sparse_axpy(F, out, F.sign(c) if isinstance(c, int) else c, v)
    return out


def verify_t_identities(sl: MatrixSuperalgebra) -> IdentityReport:
    """Exhaustive check of the T_ij / t bracket identities on sl(m,n,R).

    T_ij(a,b) := [E_ij(a), E_ji(b)] and t(a,b) := T_1j(a,b) - T_1j(1, ba).
    Runs over all basis triples (a, b, c) of R and all admissible indices.
    """
    if sl.kind != "sl":
        raise ValueError("verify_t_identities expects an algebra from build_sl")
    A, F, N = sl.algebra, sl.field, sl.N
    rep = IdentityReport()
    basis = [A.basis_vector(k) for k in range(A.dim)]
    one = A.one
    idx = range(1, N + 1)
    E, T, br = sl.E, sl.T, sl.bracket

    def sgn(i, j):
        return sl.parity_sign(i, j)

    def t(a, b, j):
        return _combine(F, (1, T(1, j, a, b)), (-1, T(1, j, one, mul(A, b, a))))

    def t_sharp_variant(a, b, j):
        return _combine(F, (1, T(1, j, a, b)), (-1, T(1, j, one, mul(A, a, b))))

    for a in basis:
        for b in basis:
            ab, ba = mul(A, a, b), mul(A, b, a)
            for i, j in permutations(idx, 2):
                Tij = T(i, j, a, b)
                rep.check("T_ij super-skew", Tij == _combine(F, (-sgn(i, j), T(j, i, b, a))), (i, j))
                for c in basis:
                    for k in idx:
                        if k in (i, j):
                            continue
                        rep.check("[T_ij, E_ik] = E_ik(ab c)", br(Tij, E(i, k, c)) == E(i, k, mul(A, ab, c)), (i, j, k))
                        rep.check(
                            "[T_ij, E_ki] = -E_ki(c ab)",
                            br(Tij, E(k, i, c)) == _combine(F, (-1, E(k, i, mul(A, c, ab)))),
                            (i, j, k),
                        )
                        rep.check(
                            "[T_ij, E_jk] = -+E_jk(ba c)",
                            br(Tij, E(j, k, c)) == _combine(F, (-sgn(i, j), E(j, k, mul(A, ba, c)))),
                            (i, j, k),
                        )
                        rep.check(
                            "[T_ij, E_kj] = +-E_kj(c ba)",
                            br(Tij, E(k, j, c)) == _combine(F, (sgn(i, j), E(k, j, mul(A, c, ba)))),
                            (i, j, k),
                        )
                        for l in idx:
                            if l in (i, j, k):
                                continue
                            rep.check("[T_ij, E_kl] = 0", not br(Tij, E(k, l, c)), (i, j, k, l))
                    # needs a third index k to exist, which m + n >= 3 guarantees
                    rhs = A.add(mul(A, ab, c), A.scale(F.sign(sgn(i, j)), mul(A, c, ba)))
                    rep.check("[T_ij, E_ij] = E_ij(ab c +- c ba)", br(Tij, E(i, j, c)) == E(i, j, rhs), (i, j))

            comm = A.sub(ab, ba)
            ts = {j: t(a, b, j) for j in range(2, N + 1)}
            rep.check("t j-independence", all(v == ts[2] for v in ts.values()), None)
            tsv = {j: t_sharp_variant(a, b, j) for j in range(2, N + 1)}
            key = "t(ab) variant j-independent"
            rep.info[key] = rep.info.get(key, True) and all(v == tsv[2] for v in tsv.values())
            t2 = ts[2]
            for c in basis:
                for i in range(2, N + 1):
                    rep.check("[t, E_1i] = E_1i([a,b] c)", br(t2, E(1, i, c)) == E(1, i, mul(A, comm, c)), (i,))
                    rep.check(
                        "[t, E_i1] = -E_i1(c [a,b])",
                        br(t2, E(i, 1, c)) == _combine(F, (-1, E(i, 1, mul(A, c, comm)))),
                        (i,),
                    )
                for j, k in permutations(range(2, N + 1), 2):
                    rep.check("[t, E_jk] = 0", not br(t2, E(j, k, c)), (j, k))

    # every diagonal element is a sum of t(a, b) and T_1j(1, c)
    diag_gens = [t(a, b, 2) for a in basis for b in basis]
    diag_gens += [T(1, j, one, c) for j in range(2, N + 1) for c in basis]
    red = span_of(sl.lie, diag_gens)
    ndiag = sl.dim - sl.diag_offset
    rep.check("diagonal spanned by t and T_1j(1,c)", red.rank == ndiag and all(k >= sl.diag_offset for v in red.basis() for k in v), None)
    return rep
