"""Lie superalgebras by structure constants, and exhaustive axiom checks.

An algebra is a homogeneous basis g_0..g_{d-1} with parities in {0, 1} and a
sparse bracket table ``(i, j) -> ((k, c), ...)`` meaning
[g_i, g_j] = sum c g_k.  The axioms checked are

* (S1) [x, y] = -(-1)^{|x||y|} [y, x]
* (S2) [x, [y, z]] = [[x, y], z] + (-1)^{|x||y|} [y, [x, z]]
* (S3) [w, w] = 0 for even w

which is the form that stays meaningful in characteristic 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from .linalg import FieldSpec, RowReducer, SparseVec, sparse_axpy

_FLOAT_EXACT = 2**53


@dataclass(frozen=True, eq=False)
class LieSuperAlgebra:
    field: FieldSpec
    parity: tuple
    labels: tuple
    table: dict  # (i, j) -> ((k, c), ...), nonzero brackets only

    @property
    def dim(self) -> int:
        return len(self.parity)

    @classmethod
    def from_tensor(cls, F: FieldSpec, parity: Sequence[int], labels: Sequence[str], tensor) -> "LieSuperAlgebra":
        d = len(parity)
        table = {}
        for i in range(d):
            for j in range(d):
                nz = tuple((k, F(c)) for k, c in enumerate(tensor[i][j]) if F(c))
                if nz:
                    table[i, j] = nz
        return cls(F, tuple(parity), tuple(labels), table)

    @classmethod
    def abelian(cls, F: FieldSpec, parity: Sequence[int]) -> "LieSuperAlgebra":
        return cls(F, tuple(parity), tuple(f"g{i}" for i in range(len(parity))), {})

    def basis_bracket(self, i: int, j: int) -> tuple:
        return self.table.get((i, j), ())

    def bracket(self, u: SparseVec, v: SparseVec) -> SparseVec:
        F = self.field
        out: SparseVec = {}
        for i, a in u.items():
            for j, b in v.items():
                ab = F.mul(a, b)
                for k, c in self.table.get((i, j), ()):
                    w = F.add(out.get(k, F.zero), F.mul(ab, c))
                    if w:
                        out[k] = w
                    else:
                        out.pop(k, None)
        return out

    def unit(self, i: int) -> SparseVec:
        return {i: self.field.one}

    def bracket_tensor(self) -> list:
        """Dense b[i][j][k] as nested lists of scalars."""
        F, d = self.field, self.dim
        t = [[[F.zero] * d for _ in range(d)] for _ in range(d)]
        for (i, j), terms in self.table.items():
            for k, c in terms:
                t[i][j][k] = c
        return t

    @cached_property
    def even_indices(self) -> tuple:
        return tuple(i for i, p in enumerate(self.parity) if p == 0)

    @cached_property
    def odd_indices(self) -> tuple:
        return tuple(i for i, p in enumerate(self.parity) if p == 1)

    def sign(self, i: int, j: int) -> int:
        """(-1)^{|g_i||g_j|}."""
        return -1 if self.parity[i] and self.parity[j] else 1

    def integer_tensor(self) -> tuple[np.ndarray, int]:
        """(T, p): an integer array proportional to the bracket tensor.

        Over F_p the entries are the residues; over Q they are the structure
        constants times the lcm of their denominators.  Every axiom is
        homogeneous in the structure constants, so it can be checked on T.
        """
        d = self.dim
        F = self.field
        if F.p:
            T = np.zeros((d, d, d), dtype=np.int64)
            for (i, j), terms in self.table.items():
                for k, c in terms:
                    T[i, j, k] = c
            return T, F.p
        den = 1
        for terms in self.table.values():
            for _, c in terms:
                den = lcm(den, Fraction(c).denominator)
        vals = {(i, j, k): int(Fraction(c) * den) for (i, j), terms in self.table.items() for k, c in terms}
        big = max((abs(v) for v in vals.values()), default=0)
        T = np.zeros((d, d, d), dtype=np.int64 if big < 2**62 else object)
        for idx, v in vals.items():
            T[idx] = v
        return T, 0


def _mod(x: np.ndarray, p: int) -> np.ndarray:
    return x % p if p else x


def _matmul_exact(a: np.ndarray, b: np.ndarray, inner: int, bound: int) -> np.ndarray:
    """Integer matmul, through float64 BLAS when every partial sum is exact."""
    if a.dtype != object and inner * bound * bound < _FLOAT_EXACT:
        return np.rint(np.matmul(a.astype(np.float64), b.astype(np.float64))).astype(np.int64)
    return np.matmul(a.astype(object), b.astype(object))


@dataclass
class AxiomReport:
    """Outcome of :func:`verify_superaxioms`; violations are data, not errors."""

    dim: int
    violations: list = field(default_factory=list)  # (law, indices)
    counts: dict = field(default_factory=dict)  # law -> number of violations

    @property
    def ok(self) -> bool:
        return not any(self.counts.values())

    def record(self, law: str, where: tuple, limit: int) -> None:
        self.counts[law] = self.counts.get(law, 0) + 1
        if self.counts[law] <= limit:
            self.violations.append((law, where))

    def first(self, law: str | None = None):
        for v in self.violations:
            if law is None or v[0] == law:
                return v
        return None

    def summary(self) -> dict:
        return {law: self.counts.get(law, 0) for law in ("S1", "S2", "S3", "parity")}


def verify_superaxioms(g: LieSuperAlgebra, limit: int = 20) -> AxiomReport:
    """Check (S1) on all pairs, (S2) on all triples, (S3) on even basis
    elements and sums of two even basis elements, plus parity homogeneity.

    At most ``limit`` violations per law are listed; ``counts`` has totals.
    """
    d = g.dim
    rep = AxiomReport(d, [], {"S1": 0, "S2": 0, "S3": 0, "parity": 0})
    if d == 0:
        return rep
    T, p = g.integer_tensor()
    par = np.array(g.parity, dtype=np.int64)

    for (i, j), terms in sorted(g.table.items()):
        for k, _ in terms:
            if g.parity[k] != g.parity[i] ^ g.parity[j]:
                rep.record("parity", (i, j, k), limit)

    sgn = np.where(np.outer(par, par) == 1, -1, 1).astype(np.int64)
    s1 = _mod(T + sgn[:, :, None] * T.transpose(1, 0, 2), p)
    bad = np.argwhere(np.any(s1 != 0, axis=2))
    for i, j in bad:
        if i <= j:
            rep.record("S1", (int(i), int(j)), limit)

    even = g.even_indices
    for a, i in enumerate(even):
        if np.any(_mod(T[i, i], p) != 0):
            rep.record("S3", (i,), limit)
        for j in even[a + 1 :]:
            if np.any(_mod(T[i, i] + T[i, j] + T[j, i] + T[j, j], p) != 0):
                rep.record("S3", (i, j), limit)

    bound = int(np.max(np.abs(T))) if T.dtype != object else max(abs(int(v)) for v in T.flat)
    flat_pairs = T.reshape(d * d, d)
    flat_right = T.reshape(d, d * d)
    for x in range(d):
        Tx = T[x]
        # [x, [y, z]]
        lhs = _matmul_exact(flat_pairs, Tx, d, bound).reshape(d, d, d)
        # [[x, y], z]
        r1 = _matmul_exact(Tx, flat_right, d, bound).reshape(d, d, d)
        # [y, [x, z]] for every y: (Tx @ T[y])[z, w]
        r2 = _matmul_exact(Tx[None, :, :], T, d, bound)
        diff = _mod(lhs - r1 - sgn[x][:, None, None] * r2, p)
        nz = np.argwhere(np.any(diff != 0, axis=2))
        for y, z in nz:
            rep.record("S2", (x, int(y), int(z)), limit)
    return rep


def bracket_span(g: LieSuperAlgebra) -> RowReducer:
    red = RowReducer(g.field, g.dim)
    for terms in g.table.values():
        red.add(dict(terms))
    return red


def is_perfect(g: LieSuperAlgebra) -> bool:
    return bracket_span(g).rank == g.dim


def span_of(g: LieSuperAlgebra, vectors: Iterable[SparseVec]) -> RowReducer:
    red = RowReducer(g.field, g.dim)
    red.add_many(vectors)
    return red


def lincomb(F: FieldSpec, terms: Iterable[tuple]) -> SparseVec:
    """Sum of ``coef * vec`` over ``(coef, vec)`` pairs."""
    out: SparseVec = {}
    for a, v in terms:
        sparse_axpy(F, out, F(a), v)
    return out
