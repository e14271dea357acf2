"""Graded second homology of a finite-dimensional Lie superalgebra.

Chain model.  Lambda^2 g is g (x) g modulo x (x) y + (-1)^{|x||y|} y (x) x and
w (x) w for even w.  It has basis g_i ^ g_j (i < j) plus g_i ^ g_i for odd i.
The boundary d2 sends g_i ^ g_j to [g_i, g_j]; the relation space B2 is
spanned by

    J(x,y,z) = (-1)^{|x||z|} [x,y]^z + (-1)^{|x||y|} [y,z]^x + (-1)^{|y||z|} [z,x]^y

over basis triples.  Linear functionals on Lambda^2 g / B2 are exactly the
super 2-cocycles (super-skew, vanishing on even squares, J = 0), so for a
perfect g the space H2 = ker d2 / B2 is the kernel of the universal central
extension, in every characteristic.  Everything is parity homogeneous and the
computation is done one parity at a time.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from typing import Iterator

from .kalgebra import KAlgebra
from .lie import LieSuperAlgebra, is_perfect
from .linalg import FieldSpec, RowReducer, SparseVec
from .matrices import build_sl

DEFAULT_BUDGET = 70


class ResourceError(RuntimeError):
    def __init__(self, dim: int, budget: int, what: str = "algebra"):
        super().__init__(f"{what} of dimension {dim} exceeds the size budget {budget}")
        self.dim = dim
        self.budget = budget


class InconsistentAlgebraError(AssertionError):
    pass


@dataclass(frozen=True)
class GradedDims:
    even: int
    odd: int

    def __sub__(self, other: "GradedDims") -> "GradedDims":
        return GradedDims(self.even - other.even, self.odd - other.odd)

    def __add__(self, other: "GradedDims") -> "GradedDims":
        return GradedDims(self.even + other.even, self.odd + other.odd)

    def as_tuple(self) -> tuple:
        return (self.even, self.odd)

    def __str__(self) -> str:
        return f"even {self.even}, odd {self.odd}"


@dataclass(frozen=True)
class Lambda2Basis:
    pairs: tuple  # (i, j) with i < j, or (i, i) for odd i, lexicographic
    index: dict
    parity: tuple

    def __len__(self) -> int:
        return len(self.pairs)


def lambda2(g: LieSuperAlgebra) -> Lambda2Basis:
    pairs = []
    for i in range(g.dim):
        if g.parity[i]:
            pairs.append((i, i))
        pairs.extend((i, j) for j in range(i + 1, g.dim))
    index = {pr: k for k, pr in enumerate(pairs)}
    parity = tuple((g.parity[i] + g.parity[j]) % 2 for i, j in pairs)
    return Lambda2Basis(tuple(pairs), index, parity)


class _Wedge:
    """Accumulates scalar multiples of g_a ^ g_b into Lambda^2 coordinates."""

    def __init__(self, g: LieSuperAlgebra, basis: Lambda2Basis):
        self.F = g.field
        self.parity = g.parity
        self.index = basis.index

    def add(self, out: SparseVec, a: int, b: int, c) -> None:
        F = self.F
        if a == b:
            if not self.parity[a]:
                return
            key = self.index[a, a]
        elif a < b:
            key = self.index[a, b]
        else:
            key = self.index[b, a]
            if not (self.parity[a] and self.parity[b]):
                c = F.neg(c)
        w = F.add(out.get(key, F.zero), c)
        if w:
            out[key] = w
        else:
            out.pop(key, None)


def _triples(d: int, all_triples: bool) -> Iterator[tuple]:
    if all_triples:
        return product(range(d), repeat=3)
    return combinations_with_replacement(range(d), 3)


def jacobi_element(g: LieSuperAlgebra, wedge: _Wedge, i: int, j: int, k: int) -> SparseVec:
    F = g.field
    out: SparseVec = {}
    for (x, y, z, s) in ((i, j, k, g.sign(i, k)), (j, k, i, g.sign(i, j)), (k, i, j, g.sign(j, k))):
        terms = g.table.get((x, y))
        if not terms:
            continue
        for a, c in terms:
            wedge.add(out, a, z, c if s == 1 else F.neg(c))
    return out


def boundary(g: LieSuperAlgebra, basis: Lambda2Basis, chain: SparseVec) -> SparseVec:
    """d2 of a Lambda^2 chain."""
    F = g.field
    out: SparseVec = {}
    for key, c in chain.items():
        i, j = basis.pairs[key]
        for k, b in g.table.get((i, j), ()):
            w = F.add(out.get(k, F.zero), F.mul(c, b))
            if w:
                out[k] = w
            else:
                out.pop(k, None)
    return out


def _b2_stream(g: LieSuperAlgebra, basis: Lambda2Basis, all_triples: bool, check: bool):
    wedge = _Wedge(g, basis)
    for i, j, k in _triples(g.dim, all_triples):
        J = jacobi_element(g, wedge, i, j, k)
        if not J:
            continue
        if check and boundary(g, basis, J):
            raise InconsistentAlgebraError(
                f"d2 J({g.labels[i]}, {g.labels[j]}, {g.labels[k]}) != 0: bracket violates super-Jacobi"
            )
        yield (i, j, k), (g.parity[i] + g.parity[j] + g.parity[k]) % 2, J


@dataclass(frozen=True)
class Chain2Data:
    basis: Lambda2Basis
    d2: tuple  # row per Lambda^2 basis element: sparse vector in g
    b2_gens: tuple  # sparse Lambda^2 vectors, one per triple with J != 0
    b2_triples: tuple
    ambient_dim: int  # dim g

    def d2_rank(self, field: FieldSpec) -> int:
        return RowReducer(field, self.ambient_dim).add_many(self.d2)

    def b2_rank(self, field: FieldSpec) -> int:
        return RowReducer(field, len(self.basis)).add_many(self.b2_gens)


def chain2(g: LieSuperAlgebra, all_triples: bool = False) -> Chain2Data:
    """Lambda^2 basis, boundary rows and Jacobi generators; asserts d2 J = 0."""
    basis = lambda2(g)
    d2 = tuple(dict(g.table.get(pr, ())) for pr in basis.pairs)
    triples, gens = [], []
    for t, _, J in _b2_stream(g, basis, all_triples, check=True):
        triples.append(t)
        gens.append(J)
    return Chain2Data(basis, d2, tuple(gens), tuple(triples), g.dim)


def h2_graded(g: LieSuperAlgebra, all_triples: bool = False) -> GradedDims:
    """(dim H2_even, dim H2_odd) with H2 = ker d2 / B2."""
    if not is_perfect(g):
        warnings.warn("algebra is not perfect; H2 = ker d2 / B2 is not a central-extension kernel", stacklevel=2)
    F = g.field
    basis = lambda2(g)
    size = [0, 0]
    d2red = [RowReducer(F, g.dim), RowReducer(F, g.dim)]
    for pr, par in zip(basis.pairs, basis.parity):
        size[par] += 1
        terms = g.table.get(pr)
        if terms:
            d2red[par].add(dict(terms))
    b2red = [RowReducer(F, len(basis)), RowReducer(F, len(basis))]
    for _, par, J in _b2_stream(g, basis, all_triples, check=True):
        b2red[par].add(J)
    dims = [size[p] - d2red[p].rank - b2red[p].rank for p in (0, 1)]
    return GradedDims(dims[0], dims[1])


def h2_of_sl(m: int, n: int, A: KAlgebra, budget: int = DEFAULT_BUDGET) -> GradedDims:
    sl = build_sl(m, n, A)
    if sl.dim > budget:
        raise ResourceError(sl.dim, budget, f"sl({m},{n},{A.name or 'R'})")
    return h2_graded(sl.lie)


def sl_dim(m: int, n: int, A: KAlgebra) -> int:
    """dim sl(m,n,R) without building the bracket table."""
    from .matrices import admissible_diagonals

    N = m + n
    return N * (N - 1) * A.dim + admissible_diagonals(m, n, A).dim
