"""Exact rational matrices, Gauss-Jordan elimination and structural equivalence.

Scalars are :class:`fractions.Fraction` values, which are always kept in
lowest terms with a positive denominator. :class:`Mat` is an immutable dense
matrix of such scalars. An :class:`EquivWitness` ``(B, P, Delta)`` maps a
matrix ``M`` to ``B^-1 M P Delta``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, ParseError, SingularBasis

Rat = Fraction
Vec = tuple  # tuple of Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

_TOKEN = re.compile(r"-?[0-9]+(?:/[0-9]+)?\Z")


def to_rat(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are rejected so that nothing inexact can leak into a certificate.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        token = value.strip()
        if not _TOKEN.match(token):
            raise ParseError(f"not a rational token: {value!r}")
        if "/" in token and int(token.split("/")[1]) == 0:
            raise ParseError(f"zero denominator: {value!r}")
        return Fraction(token)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def vec(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(to_rat(v) for v in values)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a and b), ZERO)


def rat_str(q: Fraction) -> str:
    return str(q)


class Mat:
    """Immutable dense matrix with exact rational entries.

    Empty shapes (``n x 0`` or ``0 x m``) are allowed so that absent blocks of
    a decomposition can be represented uniformly.
    """

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(to_rat(v) for v in row) for row in rows)
        if ncols is None:
            if not data:
                raise DimensionMismatch("column count required for a matrix without rows")
            ncols = len(data[0])
        for row in data:
            if len(row) != ncols:
                raise DimensionMismatch("ragged rows")
        self._rows = data
        self.nrows = len(data)
        self.ncols = ncols

    # construction helpers

    @classmethod
    def _trusted(cls, rows: tuple, ncols: int) -> "Mat":
        obj = cls.__new__(cls)
        obj._rows = rows
        obj.nrows = len(rows)
        obj.ncols = ncols
        return obj

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int | None = None) -> "Mat":
        if not columns:
            if nrows is None:
                raise DimensionMismatch("row count required for a matrix without columns")
            return cls([()] * nrows, 0)
        cols = [vec(c) for c in columns]
        n = len(cols[0])
        if any(len(c) != n for c in cols):
            raise DimensionMismatch("columns of different lengths")
        return cls._trusted(tuple(tuple(c[i] for c in cols) for i in range(n)), len(cols))

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls._trusted(
            tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def zeros(cls, n: int, m: int) -> "Mat":
        return cls._trusted(tuple((ZERO,) * m for _ in range(n)), m)

    @classmethod
    def diag(cls, values: Sequence) -> "Mat":
        d = vec(values)
        n = len(d)
        return cls._trusted(tuple(tuple(d[i] if i == j else ZERO for j in range(n)) for i in range(n)), n)

    # access

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._rows[i]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self._rows)

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.col(j) for j in range(self.ncols)]

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self._rows[i][j]

    # algebra

    @property
    def T(self) -> "Mat":
        return Mat._trusted(
            tuple(tuple(r[j] for r in self._rows) for j in range(self.ncols)), self.nrows
        )

    def __matmul__(self, other):
        if isinstance(other, Mat):
            if self.ncols != other.nrows:
                raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
            cols = [other.col(j) for j in range(other.ncols)]
            return Mat._trusted(tuple(tuple(dot(r, c) for c in cols) for r in self._rows), other.ncols)
        v = tuple(other)
        if len(v) != self.ncols:
            raise DimensionMismatch(f"cannot multiply {self.shape} by a vector of length {len(v)}")
        return tuple(dot(r, v) for r in self._rows)

    def __rmatmul__(self, other):
        # row vector times matrix
        v = tuple(other)
        if len(v) != self.nrows:
            raise DimensionMismatch(f"cannot multiply a vector of length {len(v)} by {self.shape}")
        return tuple(dot(v, self.col(j)) for j in range(self.ncols))

    def __add__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise DimensionMismatch("shape mismatch")
        return Mat._trusted(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)), self.ncols)

    def __sub__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise DimensionMismatch("shape mismatch")
        return Mat._trusted(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)), self.ncols)

    def __neg__(self) -> "Mat":
        return Mat._trusted(tuple(tuple(-a for a in r) for r in self._rows), self.ncols)

    def scale_columns(self, factors: Sequence) -> "Mat":
        f = vec(factors)
        if len(f) != self.ncols:
            raise DimensionMismatch("one factor per column required")
        return Mat._trusted(tuple(tuple(a * b for a, b in zip(r, f)) for r in self._rows), self.ncols)

    def select_columns(self, idx: Sequence[int]) -> "Mat":
        idx = list(idx)
        return Mat._trusted(tuple(tuple(r[j] for j in idx) for r in self._rows), len(idx))

    def select_rows(self, idx: Sequence[int]) -> "Mat":
        return Mat._trusted(tuple(self._rows[i] for i in idx), self.ncols)

    def drop_column(self, j: int) -> "Mat":
        return self.select_columns([k for k in range(self.ncols) if k != j])

    def with_column(self, j: int, column: Sequence) -> "Mat":
        c = vec(column)
        if len(c) != self.nrows:
            raise DimensionMismatch("column length mismatch")
        return Mat._trusted(tuple(r[:j] + (c[i],) + r[j + 1:] for i, r in enumerate(self._rows)), self.ncols)

    def block(self, rows: range | Sequence[int], cols: range | Sequence[int]) -> "Mat":
        return self.select_rows(list(rows)).select_columns(list(cols))

    def is_zero(self) -> bool:
        return all(not a for r in self._rows for a in r)

    def column_is_zero(self, j: int) -> bool:
        return all(not r[j] for r in self._rows)

    def to_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self._rows]

    # dunder

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.shape, self._rows))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(a) for a in r) for r in self._rows)
        return f"Mat({self.nrows}x{self.ncols}: [{body}])"


def hstack(*blocks: Mat) -> Mat:
    blocks = [b for b in blocks if b is not None]
    n = blocks[0].nrows
    if any(b.nrows != n for b in blocks):
        raise DimensionMismatch("hstack needs equal row counts")
    rows = tuple(sum((b.row(i) for b in blocks), ()) for i in range(n))
    return Mat._trusted(rows, sum(b.ncols for b in blocks))


def vstack(*blocks: Mat) -> Mat:
    blocks = [b for b in blocks if b is not None]
    m = blocks[0].ncols
    if any(b.ncols != m for b in blocks):
        raise DimensionMismatch("vstack needs equal column counts")
    return Mat._trusted(sum((b.rows for b in blocks), ()), m)


# elimination


def rref(M: Mat) -> tuple[Mat, list[int], Mat]:
    """Reduced row-echelon form by exact Gauss-Jordan elimination.

    Returns ``(R, pivots, C)`` with ``M = C @ R``, i.e. ``R = C^-1 M``. Pivot
    search is lowest-row-first within each column.
    """
    n, m = M.shape
    A = [list(r) for r in M.rows]
    C = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    pivots: list[int] = []
    r = 0
    for j in range(m):
        if r == n:
            break
        p = next((i for i in range(r, n) if A[i][j]), None)
        if p is None:
            continue
        if p != r:
            A[p], A[r] = A[r], A[p]
            for row in C:
                row[p], row[r] = row[r], row[p]
        piv = A[r][j]
        if piv != 1:
            A[r] = [a / piv for a in A[r]]
            for row in C:
                row[r] *= piv
        pivot_row = A[r]
        for i in range(n):
            f = A[i][j]
            if i != r and f:
                A[i] = [a - f * b if b else a for a, b in zip(A[i], pivot_row)]
                # row_i -= f row_r  ==>  col_r of C gains f * col_i
                for row in C:
                    if row[i]:
                        row[r] += f * row[i]
        pivots.append(j)
        r += 1
    return Mat(A, m), pivots, Mat(C, n)


def rank(M: Mat) -> int:
    return len(rref(M)[1])


def inverse(B: Mat) -> Mat:
    """Exact inverse; raises :class:`SingularBasis` when ``B`` is singular."""
    n, m = B.shape
    if n != m:
        raise DimensionMismatch(f"cannot invert a {n}x{m} matrix")
    A = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(B.rows)]
    for j in range(n):
        p = next((i for i in range(j, n) if A[i][j]), None)
        if p is None:
            raise SingularBasis("basis matrix is singular")
        A[p], A[j] = A[j], A[p]
        piv = A[j][j]
        if piv != 1:
            A[j] = [a / piv for a in A[j]]
        pivot_row = A[j]
        for i in range(n):
            f = A[i][j]
            if i != j and f:
                A[i] = [a - f * b if b else a for a, b in zip(A[i], pivot_row)]
    return Mat([r[n:] for r in A], n)


def nullspace(M: Mat) -> list[tuple[Fraction, ...]]:
    """Basis of the right null space, one vector per free column."""
    R, pivots, _ = rref(M)
    m = M.ncols
    pivot_set = set(pivots)
    basis = []
    for f in range(m):
        if f in pivot_set:
            continue
        v = [ZERO] * m
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -R[r, f]
        basis.append(tuple(v))
    return basis


def left_nullspace(M: Mat) -> list[tuple[Fraction, ...]]:
    return nullspace(M.T)


def complete_basis(columns: Sequence[Sequence[Fraction]], n: int) -> list[tuple[Fraction, ...]]:
    """Extend independent columns to a basis of ``Q^n`` with unit vectors.

    Unit vectors are tried in increasing index order.
    """
    basis = [vec(c) for c in columns]
    if basis and rank(Mat.from_columns(basis)) != len(basis):
        raise SingularBasis("columns to complete are linearly dependent")
    for i in range(n):
        if len(basis) == n:
            break
        e = tuple(ONE if k == i else ZERO for k in range(n))
        trial = basis + [e]
        if rank(Mat.from_columns(trial)) == len(trial):
            basis = trial
    return basis


# structural equivalence


@dataclass(frozen=True)
class EquivWitness:
    """Triple ``(B, P, Delta)`` mapping ``M`` to ``B^-1 M P Delta``.

    ``perm[j]`` is the original column placed at position ``j`` and
    ``scale[j]`` is the positive factor applied to that position.
    """

    basis: Mat
    perm: tuple[int, ...]
    scale: tuple[Fraction, ...]
    basis_inverse: Mat = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "perm", tuple(int(p) for p in self.perm))
        object.__setattr__(self, "scale", vec(self.scale))
        if self.basis.nrows != self.basis.ncols:
            raise DimensionMismatch("basis must be square")
        if sorted(self.perm) != list(range(len(self.perm))):
            raise DimensionMismatch("perm is not a permutation")
        if len(self.scale) != len(self.perm):
            raise DimensionMismatch("perm and scale lengths differ")
        if any(s <= 0 for s in self.scale):
            raise ValueError("scale entries must be strictly positive")
        object.__setattr__(self, "basis_inverse", inverse(self.basis))

    @classmethod
    def identity(cls, n: int, m: int) -> "EquivWitness":
        return cls(Mat.identity(n), tuple(range(m)), (ONE,) * m)

    @classmethod
    def from_inverse(cls, basis_inverse: Mat, perm: Sequence[int], scale: Sequence) -> "EquivWitness":
        return cls(inverse(basis_inverse), tuple(perm), tuple(scale))

    @property
    def n(self) -> int:
        return self.basis.nrows

    @property
    def m(self) -> int:
        return len(self.perm)

    def then(self, other: "EquivWitness") -> "EquivWitness":
        """Witness equal to applying ``self`` first and ``other`` second."""
        if other.n != self.n or other.m != self.m:
            raise DimensionMismatch("witness dimensions differ")
        perm = tuple(self.perm[p] for p in other.perm)
        scale = tuple(self.scale[p] * s for p, s in zip(other.perm, other.scale))
        return EquivWitness(self.basis @ other.basis, perm, scale)


def apply_equiv(M: Mat, w: EquivWitness) -> Mat:
    if w.n != M.nrows or w.m != M.ncols:
        raise DimensionMismatch(
            f"witness for {w.n}x{w.m} applied to a {M.nrows}x{M.ncols} matrix"
        )
    return w.basis_inverse @ M.select_columns(w.perm).scale_columns(w.scale)


def verify_equiv(M: Mat, canonical: Mat, w: EquivWitness) -> bool:
    if canonical.shape != M.shape:
        raise DimensionMismatch("matrices of different shapes cannot be equivalent")
    return apply_equiv(M, w) == canonical


# text format


def parse_matrix(text: str) -> Mat:
    """Parse the ``n m`` header plus ``n`` rows of rational tokens."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ParseError("empty matrix file")
    header = lines[0].split()
    if len(header) != 2 or not all(t.isdigit() for t in header):
        raise ParseError(f"bad header line: {lines[0]!r}")
    n, m = int(header[0]), int(header[1])
    if n < 1 or m < 1:
        raise ParseError("matrix dimensions must be at least 1")
    if len(lines) != n + 1:
        raise ParseError(f"expected {n} rows, found {len(lines) - 1}")
    rows = []
    for k, line in enumerate(lines[1:], start=2):
        tokens = line.split()
        if len(tokens) != m:
            raise ParseError(f"line {k}: expected {m} entries, found {len(tokens)}")
        rows.append([to_rat(t) for t in tokens])
    return Mat(rows, m)


def format_matrix(M: Mat) -> str:
    out = [f"{M.nrows} {M.ncols}"]
    out.extend(" ".join(rat_str(a) for a in r) for r in M.rows)
    return "\n".join(out) + "\n"


def read_matrix(path) -> Mat:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_matrix(fh.read())
    except UnicodeDecodeError as exc:
        raise ParseError(str(exc)) from exc
