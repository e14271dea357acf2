"""Exact linear algebra over prime fields and the rationals.

Scalars are plain Python objects: residues in ``[0, p)`` for F_p and
:class:`fractions.Fraction` for Q.  Vectors that feed the large rank
computations are sparse ``{column: scalar}`` dicts; over F_2 they are packed
into Python ints (bit ``c`` set <=> column ``c`` nonzero).

The workhorse is :class:`RowReducer`, an incremental reduced row echelon
form.  Keeping the basis fully reduced means an incoming row only touches the
basis rows whose pivots it hits, which is what makes the chain complexes in
:mod:`superh2.homology` tractable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]
SparseVec = dict  # column -> nonzero scalar

PRIME_CHECK_BOUND = 2**31


class FieldMismatchError(ValueError):
    pass


class AmbientMismatchError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A prime field F_p (``p > 0``) or the rationals (``p == 0``)."""

    p: int = 0

    def __post_init__(self):
        if self.p < 0:
            raise ValueError(f"negative characteristic {self.p}")
        if self.p:
            if self.p >= PRIME_CHECK_BOUND:
                raise ValueError(f"p={self.p} exceeds the supported bound {PRIME_CHECK_BOUND}")
            if not _is_prime(self.p):
                raise ValueError(f"{self.p} is not prime")

    @classmethod
    def Fp(cls, p: int) -> "FieldSpec":
        return cls(p)

    @classmethod
    def Q(cls) -> "FieldSpec":
        return cls(0)

    @property
    def kind(self) -> str:
        return "Fp" if self.p else "Q"

    @property
    def char(self) -> int:
        return self.p

    @property
    def name(self) -> str:
        return f"F{self.p}" if self.p else "Q"

    @property
    def zero(self) -> Scalar:
        return 0 if self.p else Fraction(0)

    @property
    def one(self) -> Scalar:
        return 1 if self.p else Fraction(1)

    def __call__(self, x) -> Scalar:
        """Coerce an int, Fraction or ``"a/b"`` string into a canonical scalar."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p:
            if isinstance(x, Fraction):
                if x.denominator % self.p == 0:
                    raise ZeroDivisionError(f"{x} has no image in F{self.p}")
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return int(x) % self.p
        return Fraction(x)

    def neg(self, a: Scalar) -> Scalar:
        return (-a) % self.p if self.p else -a

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return (a + b) % self.p if self.p else a + b

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return (a - b) % self.p if self.p else a - b

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return a * b % self.p if self.p else a * b

    def inv(self, a: Scalar) -> Scalar:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p) if self.p else 1 / a

    def sign(self, s: int) -> Scalar:
        """Image of the integer ``s`` (typically +-1)."""
        return s % self.p if self.p else Fraction(s)

    def to_str(self, a: Scalar) -> str:
        return str(a)


def check_same_field(*fields: FieldSpec) -> FieldSpec:
    first = fields[0]
    for f in fields[1:]:
        if f != first:
            raise FieldMismatchError(f"field mismatch: {first.name} vs {f.name}")
    return first


# ---------------------------------------------------------------------------
# sparse vector helpers
# ---------------------------------------------------------------------------


def sparse_axpy(F: FieldSpec, y: SparseVec, a: Scalar, x: SparseVec) -> None:
    """In place ``y += a * x``; drops entries that cancel."""
    if not a:
        return
    p = F.p
    for c, v in x.items():
        if p:
            w = (y.get(c, 0) + a * v) % p
        else:
            w = y.get(c, 0) + a * v
        if w:
            y[c] = w
        else:
            y.pop(c, None)


def sparse_scale(F: FieldSpec, a: Scalar, x: SparseVec) -> SparseVec:
    if not a:
        return {}
    if F.p:
        return {c: a * v % F.p for c, v in x.items()}
    return {c: a * v for c, v in x.items()}


def dense_to_sparse(row: Sequence[Scalar]) -> SparseVec:
    return {c: v for c, v in enumerate(row) if v}


def sparse_to_dense(F: FieldSpec, x: SparseVec, n: int) -> list:
    out = [F.zero] * n
    for c, v in x.items():
        out[c] = v
    return out


def _pack(x: SparseVec) -> int:
    bits = 0
    for c, v in x.items():
        if v & 1:
            bits |= 1 << c
    return bits


def _unpack(bits: int) -> SparseVec:
    out = {}
    while bits:
        low = bits & -bits
        out[low.bit_length() - 1] = 1
        bits ^= low
    return out


# ---------------------------------------------------------------------------
# incremental RREF
# ---------------------------------------------------------------------------


class RowReducer:
    """Incrementally maintained reduced row echelon form of a row space.

    Pivots are chosen as the first nonzero column of each residual, so the
    final basis is the unique RREF of whatever was added, independent of the
    order rows arrive in.
    """

    def __init__(self, field: FieldSpec, ncols: int):
        self.field = field
        self.ncols = ncols
        self._gf2 = field.p == 2
        self._rows: dict[int, object] = {}  # pivot column -> row (int or dict)
        self._mask = 0  # GF(2): bitmask of pivot columns

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def _reduce_bits(self, bits: int) -> int:
        hit = bits & self._mask
        rows = self._rows
        while hit:
            low = hit & -hit
            bits ^= rows[low.bit_length() - 1]
            hit ^= low
        return bits

    def _reduce_sparse(self, row: SparseVec) -> SparseVec:
        row = dict(row)
        rows = self._rows
        F = self.field
        for c in [c for c in row if c in rows]:
            a = row.get(c)
            if a:
                sparse_axpy(F, row, F.neg(a), rows[c])
        return row

    def reduce(self, row: SparseVec) -> SparseVec:
        """Residual of ``row`` modulo the current row space."""
        if self._gf2:
            return _unpack(self._reduce_bits(_pack(row)))
        return self._reduce_sparse(row)

    def contains(self, row: SparseVec) -> bool:
        return not self.reduce(row)

    def add(self, row: SparseVec) -> bool:
        """Add a row; returns True when the rank grew."""
        if self._gf2:
            bits = self._reduce_bits(_pack(row))
            if not bits:
                return False
            pc = (bits & -bits).bit_length() - 1
            flag = 1 << pc
            rows = self._rows
            for c, r in rows.items():
                if r & flag:
                    rows[c] = r ^ bits
            rows[pc] = bits
            self._mask |= flag
            return True
        res = self._reduce_sparse(row)
        if not res:
            return False
        F = self.field
        pc = min(res)
        res = sparse_scale(F, F.inv(res[pc]), res)
        for r in self._rows.values():
            a = r.get(pc)
            if a:
                sparse_axpy(F, r, F.neg(a), res)
        self._rows[pc] = res
        return True

    def add_many(self, rows: Iterable[SparseVec]) -> int:
        for r in rows:
            self.add(r)
        return self.rank

    def basis(self) -> list[SparseVec]:
        """Basis rows sorted by pivot column."""
        if self._gf2:
            return [_unpack(self._rows[c]) for c in self.pivots]
        return [dict(self._rows[c]) for c in self.pivots]


def sparse_rank(field: FieldSpec, ncols: int, rows: Iterable[SparseVec]) -> int:
    return RowReducer(field, ncols).add_many(rows)


# ---------------------------------------------------------------------------
# dense matrices and subspaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Mat:
    field: FieldSpec
    nrows: int
    ncols: int
    entries: tuple  # tuple of row tuples

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Iterable[Iterable], ncols: int | None = None) -> "Mat":
        rows = tuple(tuple(field(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        return cls(field, len(rows), ncols, rows)

    @classmethod
    def zeros(cls, field: FieldSpec, nrows: int, ncols: int) -> "Mat":
        return cls(field, nrows, ncols, tuple((field.zero,) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Mat":
        return cls.from_rows(field, ([int(i == j) for j in range(n)] for i in range(n)), n)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def transpose(self) -> "Mat":
        cols = tuple(tuple(self.entries[i][j] for i in range(self.nrows)) for j in range(self.ncols))
        return Mat(self.field, self.ncols, self.nrows, cols)

    def apply(self, v: Sequence[Scalar]) -> tuple:
        """Matrix times column vector."""
        F = self.field
        if len(v) != self.ncols:
            raise ValueError(f"vector of length {len(v)} for {self.ncols} columns")
        out = []
        for r in self.entries:
            s = F.zero
            for a, b in zip(r, v):
                if a and b:
                    s = F.add(s, F.mul(a, b))
            out.append(s)
        return tuple(out)

    def matmul(self, other: "Mat") -> "Mat":
        F = check_same_field(self.field, other.field)
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        t = other.transpose()
        rows = [t.apply(r) for r in self.entries]
        return Mat.from_rows(F, rows, other.ncols)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)


def rref(m: Mat) -> tuple[Mat, list[int], int]:
    """Reduced row echelon form, pivot columns and rank.

    The result keeps the shape of ``m``; zero rows go to the bottom.
    """
    red = RowReducer(m.field, m.ncols)
    red.add_many(dense_to_sparse(r) for r in m.entries)
    basis = [sparse_to_dense(m.field, r, m.ncols) for r in red.basis()]
    pad = [[m.field.zero] * m.ncols for _ in range(m.nrows - len(basis))]
    return Mat.from_rows(m.field, basis + pad, m.ncols), red.pivots, red.rank


def rank(m: Mat) -> int:
    return rref(m)[2]


@dataclass(frozen=True)
class Subspace:
    """A subspace of K^n held as the RREF of a spanning set."""

    field: FieldSpec
    ambient_dim: int
    basis: Mat  # rows in RREF, all nonzero
    pivots: tuple  # pivot column of each basis row

    @classmethod
    def span(cls, F: FieldSpec, ambient_dim: int, vectors: Iterable) -> "Subspace":
        """Span of dense sequences or sparse dicts."""
        red = RowReducer(F, ambient_dim)
        for v in vectors:
            if isinstance(v, dict):
                red.add({c: F(x) for c, x in v.items() if F(x)})
            else:
                if len(v) != ambient_dim:
                    raise AmbientMismatchError(f"vector of length {len(v)} in K^{ambient_dim}")
                red.add(dense_to_sparse([F(x) for x in v]))
        return cls._from_reducer(red)

    @classmethod
    def _from_reducer(cls, red: RowReducer) -> "Subspace":
        F, n = red.field, red.ncols
        rows = [sparse_to_dense(F, r, n) for r in red.basis()]
        return cls(F, n, Mat.from_rows(F, rows, n), tuple(red.pivots))

    @classmethod
    def zero(cls, F: FieldSpec, n: int) -> "Subspace":
        return cls(F, n, Mat.zeros(F, 0, n), ())

    @classmethod
    def full(cls, F: FieldSpec, n: int) -> "Subspace":
        return cls(F, n, Mat.identity(F, n), tuple(range(n)))

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def vectors(self) -> list[tuple]:
        return list(self.basis.entries)

    def _reducer(self) -> RowReducer:
        red = RowReducer(self.field, self.ambient_dim)
        red.add_many(dense_to_sparse(r) for r in self.basis.entries)
        return red

    def reduce(self, v: Sequence[Scalar]) -> tuple:
        """Canonical representative of ``v`` modulo the subspace (zero at pivots)."""
        F = self.field
        out = [F(x) for x in v]
        if len(out) != self.ambient_dim:
            raise AmbientMismatchError(f"vector of length {len(out)} in K^{self.ambient_dim}")
        for r, pc in zip(self.basis.entries, self.pivots):
            a = out[pc]
            if a:
                for c, b in enumerate(r):
                    if b:
                        out[c] = F.sub(out[c], F.mul(a, b))
        return tuple(out)

    def contains(self, v: Sequence[Scalar]) -> bool:
        return not any(self.reduce(v))

    def coordinates(self, v: Sequence[Scalar]) -> tuple:
        """Coordinates of ``v`` in the RREF basis; ValueError if ``v`` is outside."""
        if not self.contains(v):
            raise ValueError("vector not in subspace")
        F = self.field
        return tuple(F(v[pc]) for pc in self.pivots)

    def contains_subspace(self, other: "Subspace") -> bool:
        check_same_field(self.field, other.field)
        return all(self.contains(r) for r in other.basis.entries)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.basis.entries == other.basis.entries
        )

    def __hash__(self):
        return hash((self.field, self.ambient_dim, self.basis.entries))

    def complement_columns(self) -> list[int]:
        piv = set(self.pivots)
        return [c for c in range(self.ambient_dim) if c not in piv]

    def quotient_map(self) -> Mat:
        """Matrix of K^n -> K^n / self in the basis of non-pivot unit vectors."""
        F = self.field
        free = self.complement_columns()
        pos = {c: k for k, c in enumerate(free)}
        cols = []  # column c of the map
        piv_row = {pc: r for pc, r in zip(self.pivots, self.basis.entries)}
        for c in range(self.ambient_dim):
            col = [F.zero] * len(free)
            if c in pos:
                col[pos[c]] = F.one
            else:
                r = piv_row[c]
                for f in free:
                    if r[f]:
                        col[pos[f]] = F.neg(r[f])
            cols.append(col)
        rows = [[cols[c][k] for c in range(self.ambient_dim)] for k in range(len(free))]
        return Mat.from_rows(F, rows, self.ambient_dim)


def kernel_basis(m: Mat) -> Subspace:
    """Null space {v : m v = 0} as a subspace of K^cols."""
    F = m.field
    r, pivots, rk = rref(m)
    piv = set(pivots)
    vecs = []
    for f in range(m.ncols):
        if f in piv:
            continue
        v = [F.zero] * m.ncols
        v[f] = F.one
        for i, pc in enumerate(pivots):
            if r[i, f]:
                v[pc] = F.neg(r[i, f])
        vecs.append(v)
    return Subspace.span(F, m.ncols, vecs)


def span_union_dim(a: Subspace, b: Subspace) -> int:
    check_same_field(a.field, b.field)
    if a.ambient_dim != b.ambient_dim:
        raise AmbientMismatchError(f"ambient dims {a.ambient_dim} and {b.ambient_dim}")
    red = a._reducer()
    red.add_many(dense_to_sparse(r) for r in b.basis.entries)
    return red.rank


def span_sum(a: Subspace, b: Subspace) -> Subspace:
    check_same_field(a.field, b.field)
    if a.ambient_dim != b.ambient_dim:
        raise AmbientMismatchError(f"ambient dims {a.ambient_dim} and {b.ambient_dim}")
    return Subspace.span(a.field, a.ambient_dim, list(a.basis.entries) + list(b.basis.entries))


def quotient_dim(ambient: int, s: Subspace) -> int:
    if s.ambient_dim != ambient:
        raise AmbientMismatchError(f"subspace lives in K^{s.ambient_dim}, not K^{ambient}")
    return ambient - s.dim
