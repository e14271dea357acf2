"""Explicit 2-cocycles on sl(3,1,R) and sl(2,2,R) and their central extensions.

Quadruples (i,j,k,l) of distinct indices in {1,2,3,4} are split into six
blocks by the subgroup H = {(), (13), (24), (13)(24)} of S_4: the block of
the quadruple q (read as the permutation q(1..4)) is {q o h : h in H}, i.e.
q with positions 1<->3 and/or 2<->4 swapped.  The cocycle is

    psi(E_ij(r), E_kl(s)) = sign(i,j,k,l) * eps_theta(i,j,k,l)(rs mod I)

on off-diagonal basis elements with i,j,k,l distinct, and zero otherwise.
For (3,1) all six components are R/I_2 and the sign is +1; for (2,2) the
blocks P1..P4 use R/I_2, the blocks P5, P6 use R/I_0 and carry signs.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import permutations
from typing import Iterable

from .homology import GradedDims, h2_graded
from .kalgebra import AlgElement, IdealData, KAlgebra, ideal_Im, mul
from .lie import AxiomReport, LieSuperAlgebra, is_perfect, verify_superaxioms
from .linalg import Mat, SparseVec, sparse_axpy
from .matrices import IdentityReport, MatrixSuperalgebra, build_sl

CASES = {
    (3, 1): {"moduli": (2, 2, 2, 2, 2, 2), "parity": 1},
    (2, 2): {"moduli": (2, 2, 2, 2, 0, 0), "parity": 0},
}

P5_LIST = ((1, 3, 2, 4), (1, 4, 2, 3), (2, 3, 1, 4), (2, 4, 1, 3))
P6_LIST = ((3, 1, 4, 2), (3, 2, 4, 1), (4, 1, 3, 2), (4, 2, 3, 1))
_PLUS = {(1, 3, 2, 4), (2, 4, 1, 3), (3, 1, 4, 2), (4, 2, 3, 1)}


class CocycleViolationError(ValueError):
    def __init__(self, message: str, report: AxiomReport):
        super().__init__(message)
        self.report = report


def _normalize_case(case) -> tuple:
    if isinstance(case, str):
        case = tuple(int(x) for x in case.replace(" ", "").split(","))
    case = tuple(case)
    if case not in CASES:
        raise ValueError(f"unsupported case {case}; expected (3,1) or (2,2)")
    return case


@dataclass(frozen=True)
class QuadIndexTables:
    blocks: tuple  # blocks[m - 1] = P_m, each a sorted tuple of 4 quadruples
    theta: dict
    sign: dict

    def with_sign_flipped(self, quads: Iterable[tuple]) -> "QuadIndexTables":
        """Copy with the sign of the given quadruples negated (for negative tests)."""
        sign = dict(self.sign)
        for q in quads:
            sign[tuple(q)] = -sign[tuple(q)]
        return replace(self, sign=sign)


_H = ((0, 1, 2, 3), (2, 1, 0, 3), (0, 3, 2, 1), (2, 3, 0, 1))  # position maps of (), (13), (24), (13)(24)


def quad_block(q: tuple) -> tuple:
    """The H-coset block of q, i.e. {q o h : h in H}."""
    return tuple(sorted({tuple(q[h[t]] for t in range(4)) for h in _H}))


def build_quad_tables() -> QuadIndexTables:
    quads = list(permutations((1, 2, 3, 4)))
    blocks = sorted({quad_block(q) for q in quads})
    p5 = quad_block((1, 3, 2, 4))
    p6 = quad_block((3, 1, 4, 2))
    rest = sorted((b for b in blocks if b not in (p5, p6)), key=min)
    ordered = tuple(rest) + (p5, p6)
    theta = {q: m + 1 for m, b in enumerate(ordered) for q in b}
    sign = {q: (1 if theta[q] <= 4 or q in _PLUS else -1) for q in quads}
    return QuadIndexTables(ordered, theta, sign)


def classify_P5_P6(tables: QuadIndexTables) -> dict:
    """Check the blocks against the (2,2) grading w = (0, 0, 1, 1)."""
    w = {1: 0, 2: 0, 3: 1, 4: 1}
    same = {q for q in tables.theta if w[q[0]] == w[q[2]]}
    p56 = set(tables.blocks[4]) | set(tables.blocks[5])
    checks = {
        "P5 matches list": tables.blocks[4] == tuple(sorted(P5_LIST)),
        "P6 matches list": tables.blocks[5] == tuple(sorted(P6_LIST)),
        "P5 u P6 = {w(i) = w(k)}": same == p56,
        "w(i) = w(k) constant on blocks": all(len({w[q[0]] == w[q[2]] for q in b}) == 1 for b in tables.blocks),
        "w(i) + w(j) = 1 on P5 u P6": all((w[q[0]] + w[q[1]]) % 2 == 1 for q in p56),
        "P1..P4 contain w(i) + w(j) = 0": all(
            any((w[q[0]] + w[q[1]]) % 2 == 0 for q in b) for b in tables.blocks[:4]
        ),
        "blocks of size 4": all(len(b) == 4 for b in tables.blocks),
    }
    return checks


# ---------------------------------------------------------------------------
# kernel modules W = R_2^6 and U = R_2^4 + R_0^2
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KernelComponent:
    index: int  # 1..6
    modulus: int
    ideal: IdealData
    quotient: Mat  # R -> R_m, dim R_m x dim R
    dim: int
    offset: int


@dataclass(frozen=True)
class CocycleKernelModule:
    case: tuple
    algebra: KAlgebra
    components: tuple
    total_dim: int
    kernel_parity: int

    def epsilon(self, m: int, a: AlgElement) -> SparseVec:
        """eps_m(a mod I) in kernel coordinates."""
        comp = self.components[m - 1]
        img = comp.quotient.apply(a)
        return {comp.offset + k: c for k, c in enumerate(img) if c}

    def labels(self) -> list[str]:
        out = []
        for comp in self.components:
            free = comp.ideal.span.complement_columns()
            for c in free:
                out.append(f"eps{comp.index}({self.algebra.basis_labels[c]})")
        return out


def build_kernel_module(case, A: KAlgebra) -> CocycleKernelModule:
    case = _normalize_case(case)
    info = CASES[case]
    ideals = {m: ideal_Im(A, m) for m in set(info["moduli"])}
    comps, offset = [], 0
    for idx, m in enumerate(info["moduli"], start=1):
        ideal = ideals[m]
        comps.append(KernelComponent(idx, m, ideal, ideal.quotient_map(), ideal.quotient_dim, offset))
        offset += ideal.quotient_dim
    return CocycleKernelModule(case, A, tuple(comps), offset, info["parity"])


# ---------------------------------------------------------------------------
# the cocycle
# ---------------------------------------------------------------------------


def _check_base(case: tuple, sl: MatrixSuperalgebra) -> None:
    if sl.kind != "sl" or (sl.m, sl.n) != case:
        raise ValueError(f"basis of {sl.kind}({sl.m},{sl.n}) used with case {case}")


def _offdiag(sl: MatrixSuperalgebra, b: int):
    if b >= sl.diag_offset:
        return None
    (key,) = sl.basis_matrix(b)
    return key


def psi(case, tables: QuadIndexTables, module: CocycleKernelModule, sl: MatrixSuperalgebra, x: int, y: int) -> SparseVec:
    """Cocycle value on two basis elements of sl, as a kernel vector."""
    case = _normalize_case(case)
    _check_base(case, sl)
    kx, ky = _offdiag(sl, x), _offdiag(sl, y)
    if kx is None or ky is None:
        return {}
    (i, j, lam), (k, l, mu) = kx, ky
    q = (i, j, k, l)
    if len(set(q)) < 4:
        return {}
    A = module.algebra
    rs = mul(A, A.basis_vector(lam), A.basis_vector(mu))
    val = module.epsilon(tables.theta[q], rs)
    if case == (2, 2) and tables.sign[q] == -1:
        F = A.field
        val = {c: F.neg(v) for c, v in val.items()}
    return val


def psi_vec(case, tables, module, sl, u: SparseVec, v: SparseVec) -> SparseVec:
    """Bilinear extension of :func:`psi`."""
    F = module.algebra.field
    out: SparseVec = {}
    for x, a in u.items():
        for y, b in v.items():
            sparse_axpy(F, out, F.mul(a, b), psi(case, tables, module, sl, x, y))
    return out


@dataclass(frozen=True, eq=False)
class ExtensionAlgebra:
    case: tuple
    base: MatrixSuperalgebra
    kernel: CocycleKernelModule
    total: LieSuperAlgebra  # kernel coordinates first, then sl
    tables: QuadIndexTables

    @property
    def offset(self) -> int:
        return self.kernel.total_dim

    def lift(self, v: SparseVec) -> SparseVec:
        """(0, v) for v in sl."""
        w = self.offset
        return {w + k: c for k, c in v.items()}

    def project(self, v: SparseVec) -> SparseVec:
        w = self.offset
        return {k - w: c for k, c in v.items() if k >= w}

    def kernel_part(self, v: SparseVec) -> SparseVec:
        return {k: c for k, c in v.items() if k < self.offset}

    def X(self, i: int, j: int, a: AlgElement) -> SparseVec:
        return self.lift(self.base.E(i, j, a))

    def bracket(self, u: SparseVec, v: SparseVec) -> SparseVec:
        return self.total.bracket(u, v)


def extension_table(case, sl: MatrixSuperalgebra, module: CocycleKernelModule, tables: QuadIndexTables) -> LieSuperAlgebra:
    w = module.total_dim
    F = sl.field
    parity = [module.kernel_parity] * w + list(sl.lie.parity)
    labels = module.labels() + list(sl.lie.labels)
    table = {}
    for x in range(sl.dim):
        for y in range(sl.dim):
            entry = dict(psi(case, tables, module, sl, x, y))
            for k, c in sl.lie.table.get((x, y), ()):
                entry[w + k] = c
            if entry:
                table[w + x, w + y] = tuple(sorted(entry.items()))
    return LieSuperAlgebra(F, tuple(parity), tuple(labels), table)


def build_extension(case, A: KAlgebra, tables: QuadIndexTables | None = None, check: bool = True) -> ExtensionAlgebra:
    """Central extension kernel (+) sl with bracket (psi(x,y), [x,y]).

    With ``check`` the super-axioms of the result are verified exhaustively
    (this is the cocycle property); a failure raises CocycleViolationError.
    """
    case = _normalize_case(case)
    tables = tables or build_quad_tables()
    sl = build_sl(*case, A)
    module = build_kernel_module(case, A)
    total = extension_table(case, sl, module, tables)
    ext = ExtensionAlgebra(case, sl, module, total, tables)
    if check:
        rep = verify_superaxioms(total)
        if not rep.ok:
            law, where = rep.first()
            names = ", ".join(total.labels[k] for k in where)
            raise CocycleViolationError(f"psi is not a 2-cocycle: {law} fails at ({names})", rep)
    return ext


def extension_is_perfect(ext: ExtensionAlgebra) -> bool:
    return is_perfect(ext.total)


def extension_h2(ext: ExtensionAlgebra) -> GradedDims:
    return h2_graded(ext.total)


# ---------------------------------------------------------------------------
# presentation relations
# ---------------------------------------------------------------------------


def verify_presentation(case, ext: ExtensionAlgebra) -> IdentityReport:
    """Check the defining relations of the extension on X#_ij(a) = (0, E_ij(a)).

    The kernel-valued relation is compared against the reference index and
    sign tables, not the ones the extension was built with.
    """
    case = _normalize_case(case)
    if ext.case != case:
        raise ValueError(f"extension built for {ext.case}, not {case}")
    ref = build_quad_tables()
    A, F = ext.base.algebra, ext.base.field
    rep = IdentityReport()
    basis = [A.basis_vector(k) for k in range(A.dim)]
    idx = range(1, 5)
    X, br = ext.X, ext.bracket
    kernel_units = [{k: F.one} for k in range(ext.offset)]
    two = F(2)
    if not kernel_units:
        rep.check("kernel central", True, "zero kernel")

    for i, j in permutations(idx, 2):
        for a in basis:
            for b in basis:
                lin = X(i, j, A.add(a, b)) == _add(F, X(i, j, a), X(i, j, b))
                lin = lin and X(i, j, A.scale(two, a)) == {k: F.mul(two, c) for k, c in X(i, j, a).items() if F.mul(two, c)}
                rep.check("linearity", lin, (i, j))
        for a in basis:
            xa = X(i, j, a)
            for w in kernel_units:
                rep.check("kernel central", not br(xa, w) and not br(w, xa), (i, j))
            for b in basis:
                ab = mul(A, a, b)
                rep.check("[X_ij, X_ij] = 0", not br(xa, X(i, j, b)), (i, j))
                for k in idx:
                    if k in (i, j):
                        continue
                    rep.check("[X_ij, X_jk] = X_ik", br(xa, X(j, k, b)) == X(i, k, ab), (i, j, k))
                    rep.check("[X_ij, X_ik] = 0", not br(xa, X(i, k, b)), (i, j, k))
                    rep.check("[X_ij, X_kj] = 0", not br(xa, X(k, j, b)), (i, j, k))
                    for l in idx:
                        if l in (i, j, k):
                            continue
                        q = (i, j, k, l)
                        want = ext.kernel.epsilon(ref.theta[q], ab)
                        if case == (2, 2) and ref.sign[q] == -1:
                            want = {c: F.neg(v) for c, v in want.items()}
                        rep.check("[X_ij, X_kl] = sign eps", br(xa, X(k, l, b)) == want, q)
    return rep


def _add(F, u: SparseVec, v: SparseVec) -> SparseVec:
    out = dict(u)
    sparse_axpy(F, out, F.one, v)
    return out


def verify_Tsharp_identities(case, ext: ExtensionAlgebra) -> IdentityReport:
    """T#_ij(a,b) := [X#_ij(a), X#_ji(b)] satisfies

    T#_ij(a,b) = -(-1)^{w(i)+w(j)} T#_ji(b,a)
    T#_ij(ab,c) = T#_ik(a,bc) + (-1)^{w(i)+w(k)} T#_kj(b,ca)
    """
    case = _normalize_case(case)
    A, F = ext.base.algebra, ext.base.field
    sl = ext.base
    rep = IdentityReport()
    basis = [A.basis_vector(k) for k in range(A.dim)]
    one = A.one

    def T(i, j, a, b):
        return ext.bracket(ext.X(i, j, a), ext.X(j, i, b))

    def signed(s, v):
        return v if s == 1 else {k: F.neg(c) for k, c in v.items()}

    for i, j in permutations(range(1, 5), 2):
        for a in basis:
            for b in basis:
                rep.check("T# super-skew", T(i, j, a, b) == signed(-sl.parity_sign(i, j), T(j, i, b, a)), (i, j))
    for i, j, k in permutations(range(1, 5), 3):
        s = sl.parity_sign(i, k)
        for a in basis:
            for b in basis:
                ab = mul(A, a, b)
                for c in basis:
                    lhs = T(i, j, ab, c)
                    rhs = _add(F, T(i, k, a, mul(A, b, c)), signed(s, T(k, j, b, mul(A, c, a))))
                    rep.check("T# three-index identity", lhs == rhs, (i, j, k))

    for label, second in (("t#(a,b) with T#_1j(1,ab)", lambda a, b: mul(A, a, b)), ("t(a,b) with T#_1j(1,ba)", lambda a, b: mul(A, b, a))):
        indep = True
        for a in basis:
            for b in basis:
                vals = [_add(F, T(1, j, a, b), signed(-1, T(1, j, one, second(a, b)))) for j in range(2, 5)]
                indep = indep and all(v == vals[0] for v in vals)
        rep.info[f"{label} independent of j"] = indep
    return rep
