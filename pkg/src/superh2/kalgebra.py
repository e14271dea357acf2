"""Finite-dimensional unital associative algebras given by structure constants."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Sequence

from .linalg import FieldSpec, Mat, Scalar, Subspace, span_sum

AlgElement = tuple  # coordinate tuple of length A.dim


class InvalidAlgebraError(ValueError):
    pass


class AlgebraSpecError(ValueError):
    """Malformed algebra spec document."""


class IdealIdentityError(AssertionError):
    pass


@dataclass(frozen=True, eq=False)
class KAlgebra:
    """R with basis r_0..r_{n-1}; ``mult[i][j]`` holds the coordinates of r_i r_j."""

    field: FieldSpec
    dim: int
    basis_labels: tuple
    unit_index: int
    mult: tuple
    name: str = ""

    def basis_vector(self, i: int) -> AlgElement:
        F = self.field
        return tuple(F.one if k == i else F.zero for k in range(self.dim))

    @property
    def one(self) -> AlgElement:
        return self.basis_vector(self.unit_index)

    def zero(self) -> AlgElement:
        return (self.field.zero,) * self.dim

    @cached_property
    def _sparse_mult(self) -> dict:
        out = {}
        for i in range(self.dim):
            for j in range(self.dim):
                nz = tuple((k, c) for k, c in enumerate(self.mult[i][j]) if c)
                if nz:
                    out[i, j] = nz
        return out

    def basis_product(self, i: int, j: int) -> tuple:
        """Sparse ``((k, c), ...)`` expansion of r_i r_j."""
        return self._sparse_mult.get((i, j), ())

    def element(self, coords: Sequence) -> AlgElement:
        if len(coords) != self.dim:
            raise ValueError(f"element of length {len(coords)} in algebra of dim {self.dim}")
        return tuple(self.field(c) for c in coords)

    def add(self, a: AlgElement, b: AlgElement) -> AlgElement:
        F = self.field
        return tuple(F.add(x, y) for x, y in zip(a, b))

    def sub(self, a: AlgElement, b: AlgElement) -> AlgElement:
        F = self.field
        return tuple(F.sub(x, y) for x, y in zip(a, b))

    def scale(self, c: Scalar, a: AlgElement) -> AlgElement:
        F = self.field
        return tuple(F.mul(c, x) for x in a)

    def mul(self, a: AlgElement, b: AlgElement) -> AlgElement:
        return mul(self, a, b)

    def commutator(self, a: AlgElement, b: AlgElement) -> AlgElement:
        return self.sub(mul(self, a, b), mul(self, b, a))

    def is_commutative(self) -> bool:
        return all(self.mult[i][j] == self.mult[j][i] for i in range(self.dim) for j in range(i))

    def describe(self) -> str:
        return f"{self.name or '<algebra>'} over {self.field.name}, dim {self.dim}"


def mul(A: KAlgebra, a: Sequence, b: Sequence) -> AlgElement:
    if len(a) != A.dim or len(b) != A.dim:
        raise ValueError(f"operands of length {len(a)}, {len(b)} in algebra of dim {A.dim}")
    F = A.field
    out = [F.zero] * A.dim
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if not y:
                continue
            xy = F.mul(x, y)
            for k, c in A.basis_product(i, j):
                out[k] = F.add(out[k], F.mul(xy, c))
    return tuple(out)


def make_algebra(
    field: FieldSpec,
    basis_labels: Sequence[str],
    mult: Sequence,
    unit: int | Sequence,
    name: str = "",
) -> KAlgebra:
    """Validate structure constants and build the algebra.

    ``unit`` is either the index of the unit in the basis or its coordinate
    vector, which must then be a standard basis vector.
    """
    n = len(basis_labels)
    if n == 0:
        raise InvalidAlgebraError("algebra must have positive dimension")
    if len(mult) != n or any(len(row) != n for row in mult):
        raise InvalidAlgebraError(f"multiplication table must be {n}x{n}")
    table = []
    for i, row in enumerate(mult):
        trow = []
        for j, entry in enumerate(row):
            if len(entry) != n:
                raise InvalidAlgebraError(f"product r_{i}*r_{j} has {len(entry)} coordinates, expected {n}")
            trow.append(tuple(field(c) for c in entry))
        table.append(tuple(trow))
    if isinstance(unit, int):
        u = unit
        if not 0 <= u < n:
            raise InvalidAlgebraError(f"unit index {u} out of range")
    else:
        coords = [field(c) for c in unit]
        nz = [k for k, c in enumerate(coords) if c]
        if len(coords) != n or len(nz) != 1 or coords[nz[0]] != field.one:
            raise InvalidAlgebraError("the unit must be one of the basis elements")
        u = nz[0]
    A = KAlgebra(field, n, tuple(basis_labels), u, tuple(table), name)

    one = A.one
    for i in range(n):
        e = A.basis_vector(i)
        if mul(A, one, e) != e or mul(A, e, one) != e:
            raise InvalidAlgebraError(f"unit law fails at basis element {basis_labels[i]!r}")
    for i in range(n):
        ei = A.basis_vector(i)
        for j in range(n):
            ij = table[i][j]
            for k in range(n):
                ek = A.basis_vector(k)
                left = mul(A, ij, ek)
                right = mul(A, ei, table[j][k])
                if left != right:
                    lab = basis_labels
                    raise InvalidAlgebraError(
                        f"associativity fails at ({lab[i]}, {lab[j]}, {lab[k]})"
                    )
    return A


# ---------------------------------------------------------------------------
# commutators and the ideals I_m = mR + R[R,R]
# ---------------------------------------------------------------------------


def commutator_span(A: KAlgebra) -> Subspace:
    vecs = []
    for i in range(A.dim):
        for j in range(i + 1, A.dim):
            vecs.append(A.commutator(A.basis_vector(i), A.basis_vector(j)))
    return Subspace.span(A.field, A.dim, vecs)


@dataclass(frozen=True)
class IdealData:
    m: int
    span: Subspace
    quotient_dim: int

    def quotient_map(self) -> Mat:
        return self.span.quotient_map()


def _two_sided_closure(A: KAlgebra, gens: list) -> Subspace:
    S = Subspace.span(A.field, A.dim, gens)
    while True:
        prods = list(S.vectors())
        for v in S.vectors():
            for k in range(A.dim):
                e = A.basis_vector(k)
                prods.append(mul(A, e, v))
                prods.append(mul(A, v, e))
        T = Subspace.span(A.field, A.dim, prods)
        if T.dim == S.dim:
            return S
        S = T


def ideal_Im(A: KAlgebra, m: int) -> IdealData:
    """The two-sided ideal generated by m*R and [R,R], and dim R/I_m.

    Also checks that one-sided closure already suffices, i.e. that the ideal
    equals mR + R[R,R].
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    F = A.field
    mm = F(m)
    basis = [A.basis_vector(i) for i in range(A.dim)]
    multiples = [A.scale(mm, e) for e in basis]
    comms = [A.commutator(a, b) for a in basis for b in basis]
    ideal = _two_sided_closure(A, multiples + comms)

    comm = Subspace.span(F, A.dim, comms)
    left = [mul(A, e, c) for e in basis for c in comm.vectors()]
    one_sided = span_sum(Subspace.span(F, A.dim, multiples), Subspace.span(F, A.dim, left))
    if one_sided != ideal:
        raise IdealIdentityError(
            f"{A.describe()}: ideal generated by {m}R and [R,R] differs from {m}R + R[R,R]"
        )
    return IdealData(m, ideal, A.dim - ideal.dim)


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------


def _from_products(F: FieldSpec, labels, products: dict, unit: int, name: str) -> KAlgebra:
    """``products[(i, j)]`` maps label indices to the coordinates of r_i r_j."""
    n = len(labels)
    mult = [[[0] * n for _ in range(n)] for _ in range(n)]
    for (i, j), coords in products.items():
        for k, c in coords.items():
            mult[i][j][k] = c
    return make_algebra(F, labels, mult, unit, name)


def base_field_algebra(F: FieldSpec) -> KAlgebra:
    return make_algebra(F, ["1"], [[[1]]], 0, F.name)


def dual_numbers(F: FieldSpec) -> KAlgebra:
    # basis 1, x with x^2 = 0
    prods = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}
    return _from_products(F, ["1", "x"], prods, 0, f"{F.name}[x]/(x^2)")


def cyclic_group_algebra(F: FieldSpec, n: int) -> KAlgebra:
    labels = ["1"] + [f"g^{k}" if k > 1 else "g" for k in range(1, n)]
    prods = {(i, j): {(i + j) % n: 1} for i in range(n) for j in range(n)}
    return _from_products(F, labels, prods, 0, f"{F.name}[C{n}]")


def weyl_truncation() -> KAlgebra:
    """Weyl algebra in one variable pair over F_2 modulo x^2, y^2.

    Basis 1, x, y, xy with x^2 = y^2 = 0 and yx = xy + 1; x^2 and y^2 are
    central in characteristic 2 so the quotient is well defined.
    """
    F = FieldSpec(2)
    one, x, y, xy = range(4)
    prods = {
        (x, y): {xy: 1},
        (y, x): {xy: 1, one: 1},
        (y, xy): {y: 1},
        (xy, x): {x: 1},
        (xy, xy): {xy: 1},
    }
    for k in range(4):
        prods[one, k] = {k: 1}
        prods[k, one] = {k: 1}
    return _from_products(F, ["1", "x", "y", "xy"], prods, one, "Weyl(F2)")


def matrix_algebra_2(F: FieldSpec) -> KAlgebra:
    """M_2(F) on the basis 1, e11, e12, e21 (so e22 = 1 - e11)."""
    # each basis element as a 2x2 matrix (a, b, c, d) = [[a, b], [c, d]]
    mats = [(1, 0, 0, 1), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)]

    def mm(P, Q):
        a, b, c, d = P
        e, f, g, h = Q
        return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def coords(M):
        a, b, c, d = M
        # M = d*1 + (a-d)*e11 + b*e12 + c*e21
        return {0: d, 1: a - d, 2: b, 3: c}

    prods = {(i, j): coords(mm(mats[i], mats[j])) for i in range(4) for j in range(4)}
    return _from_products(F, ["1", "e11", "e12", "e21"], prods, 0, f"M2({F.name})")


CATALOG_NAMES = (
    "F2",
    "F3",
    "Q",
    "F2[x]/(x^2)",
    "F3[x]/(x^2)",
    "Q[x]/(x^2)",
    "F3[C3]",
    "Weyl(F2)",
    "M2(F2)",
)

_ALIASES = {
    "f2dual": "F2[x]/(x^2)",
    "f3dual": "F3[x]/(x^2)",
    "qdual": "Q[x]/(x^2)",
    "f3c3": "F3[C3]",
    "weyl": "Weyl(F2)",
    "weylf2": "Weyl(F2)",
    "m2f2": "M2(F2)",
}


def _build(name: str) -> KAlgebra:
    F2, F3, Q = FieldSpec(2), FieldSpec(3), FieldSpec(0)
    return {
        "F2": lambda: base_field_algebra(F2),
        "F3": lambda: base_field_algebra(F3),
        "Q": lambda: base_field_algebra(Q),
        "F2[x]/(x^2)": lambda: dual_numbers(F2),
        "F3[x]/(x^2)": lambda: dual_numbers(F3),
        "Q[x]/(x^2)": lambda: dual_numbers(Q),
        "F3[C3]": lambda: cyclic_group_algebra(F3, 3),
        "Weyl(F2)": weyl_truncation,
        "M2(F2)": lambda: matrix_algebra_2(F2),
    }[name]()


def builtin_catalog() -> list[tuple[str, KAlgebra]]:
    return [(name, _build(name)) for name in CATALOG_NAMES]


def builtin(name: str) -> KAlgebra:
    """Look up a catalog algebra by canonical name or alias."""
    if name in CATALOG_NAMES:
        return _build(name)
    key = "".join(ch for ch in name.lower() if ch.isalnum())
    if key in _ALIASES:
        return _build(_ALIASES[key])
    for canon in CATALOG_NAMES:
        if "".join(ch for ch in canon.lower() if ch.isalnum()) == key:
            return _build(canon)
    raise KeyError(f"unknown builtin algebra {name!r}; known: {', '.join(CATALOG_NAMES)}")


# ---------------------------------------------------------------------------
# spec files
# ---------------------------------------------------------------------------


def _parse_scalar(F: FieldSpec, s, where: str):
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise AlgebraSpecError(f"{where}: scalar must be a decimal string, got {s!r}")
    text = str(s).strip()
    if "/" in text and F.p:
        raise AlgebraSpecError(f"{where}: fraction {text!r} not accepted over F{F.p}")
    try:
        return F(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise AlgebraSpecError(f"{where}: bad scalar {text!r} ({exc})") from None


def algebra_from_document(doc: dict, name: str = "") -> KAlgebra:
    try:
        fdesc = doc["field"]
        if fdesc.get("kind") == "Fp":
            F = FieldSpec(int(fdesc["p"]))
        elif fdesc.get("kind") == "Q":
            F = FieldSpec(0)
        else:
            raise AlgebraSpecError(f"field: unknown kind {fdesc.get('kind')!r}")
        n = int(doc["dim"])
        labels = [str(b) for b in doc["basis"]]
        unit = doc["unit"]
        mult = doc["mult"]
    except KeyError as exc:
        raise AlgebraSpecError(f"missing field {exc.args[0]!r}") from None
    except (TypeError, AttributeError, ValueError) as exc:
        if isinstance(exc, AlgebraSpecError):
            raise
        raise AlgebraSpecError(f"malformed header: {exc}") from None
    if len(labels) != n:
        raise AlgebraSpecError(f"basis: {len(labels)} labels for dim {n}")
    if not isinstance(unit, list) or len(unit) != n:
        raise AlgebraSpecError(f"unit: expected a list of {n} scalars")
    unit_c = [_parse_scalar(F, s, f"unit[{k}]") for k, s in enumerate(unit)]
    if not isinstance(mult, list) or len(mult) != n:
        raise AlgebraSpecError(f"mult: expected {n} rows")
    table = []
    for i, row in enumerate(mult):
        if not isinstance(row, list) or len(row) != n:
            raise AlgebraSpecError(f"mult[{i}]: expected {n} entries")
        trow = []
        for j, entry in enumerate(row):
            if not isinstance(entry, list) or len(entry) != n:
                raise AlgebraSpecError(f"mult[{i}][{j}]: expected {n} coordinates")
            trow.append([_parse_scalar(F, s, f"mult[{i}][{j}][{k}]") for k, s in enumerate(entry)])
        table.append(trow)
    return make_algebra(F, labels, table, unit_c, name or str(doc.get("name", "")))


def load_algebra_spec(path: str | Path) -> KAlgebra:
    """Read an algebra spec JSON file; JSON syntax errors carry line numbers."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AlgebraSpecError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise AlgebraSpecError(f"{path}: top level must be an object")
    return algebra_from_document(doc, name=doc.get("name") or path.stem)


def algebra_to_document(A: KAlgebra) -> dict:
    F = A.field
    fdesc = {"kind": "Fp", "p": F.p} if F.p else {"kind": "Q"}
    return {
        "name": A.name,
        "field": fdesc,
        "dim": A.dim,
        "basis": list(A.basis_labels),
        "unit": [str(c) for c in A.one],
        "mult": [[[str(c) for c in A.mult[i][j]] for j in range(A.dim)] for i in range(A.dim)],
    }
