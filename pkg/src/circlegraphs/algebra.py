"""Exact linear algebra over GF(2) and the integers.

GF(2) vectors are Python ints used as bitsets: bit ``j`` of a row is the entry
in column ``j``.  Rank and kernel computations are word-parallel XOR
elimination on those ints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DimensionError, ParseError

__all__ = [
    "Gf2Matrix",
    "IntMatrix",
    "XorBasis",
    "gf2_rank",
    "gf2_kernel",
    "int_det",
    "parse_matrix",
    "format_matrix",
]


class XorBasis:
    """Incremental GF(2) basis with distinct leading bits.

    ``reduce`` returns the canonical remainder of a vector modulo the span,
    which is zero exactly when the vector lies in the span.
    """

    __slots__ = ("vectors",)

    def __init__(self, vectors: Iterable[int] = ()):
        self.vectors: list[int] = []  # sorted by leading bit, descending
        for v in vectors:
            self.add(v)

    def __len__(self) -> int:
        return len(self.vectors)

    def copy(self) -> "XorBasis":
        out = XorBasis()
        out.vectors = list(self.vectors)
        return out

    def reduce(self, v: int) -> int:
        for b in self.vectors:
            v = min(v, v ^ b)
        return v

    def add(self, v: int) -> bool:
        v = self.reduce(v)
        if not v:
            return False
        lead = v.bit_length()
        vs = self.vectors
        i = 0
        while i < len(vs) and vs[i].bit_length() > lead:
            i += 1
        vs.insert(i, v)
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0


def gf2_rank(vectors: Iterable[int]) -> int:
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return len(basis)


@dataclass(frozen=True)
class Gf2Matrix:
    """Dense GF(2) matrix stored as bit-packed rows."""

    rows: tuple[int, ...]
    ncols: int
    row_labels: tuple | None = field(default=None, compare=False)
    col_labels: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        mask = (1 << self.ncols) - 1
        for r in self.rows:
            if r < 0 or r & ~mask:
                raise DimensionError("row has bits outside the column range")
        for labels, size in ((self.row_labels, len(self.rows)), (self.col_labels, self.ncols)):
            if labels is not None:
                if len(labels) != size:
                    raise DimensionError("label list length does not match dimension")
                if len(set(labels)) != size:
                    raise DimensionError("duplicate labels")

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]], ncols: int | None = None, **labels) -> "Gf2Matrix":
        if ncols is None:
            ncols = len(entries[0]) if entries else 0
        rows = []
        for row in entries:
            if len(row) != ncols:
                raise DimensionError("ragged matrix")
            bits = 0
            for j, x in enumerate(row):
                if x % 2:
                    bits |= 1 << j
            rows.append(bits)
        return cls(tuple(rows), ncols, **labels)

    @classmethod
    def from_columns(cls, columns: Sequence[int], nrows: int, **labels) -> "Gf2Matrix":
        rows = [0] * nrows
        for j, c in enumerate(columns):
            if c >> nrows:
                raise DimensionError("column has bits outside the row range")
            for i in range(nrows):
                if c >> i & 1:
                    rows[i] |= 1 << j
        return cls(tuple(rows), len(columns), **labels)

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        return cls(tuple(1 << i for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def entry(self, i: int, j: int) -> int:
        return self.rows[i] >> j & 1

    def to_lists(self) -> list[list[int]]:
        return [[r >> j & 1 for j in range(self.ncols)] for r in self.rows]

    def column(self, j: int) -> int:
        """Column ``j`` as a bitset over row indices."""
        c = 0
        for i, r in enumerate(self.rows):
            if r >> j & 1:
                c |= 1 << i
        return c

    def columns(self) -> list[int]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "Gf2Matrix":
        return Gf2Matrix(tuple(self.columns()), len(self.rows),
                         row_labels=self.col_labels, col_labels=self.row_labels)

    def rank(self) -> int:
        return gf2_rank(self.rows)

    def is_symmetric(self) -> bool:
        return self.nrows == self.ncols and tuple(self.columns()) == self.rows

    def mul_vector(self, v: int) -> int:
        """Matrix times a column vector (both bitsets)."""
        out = 0
        for i, r in enumerate(self.rows):
            if (r & v).bit_count() & 1:
                out |= 1 << i
        return out

    def select_columns(self, cols: Sequence[int]) -> "Gf2Matrix":
        colvals = self.columns()
        labels = None if self.col_labels is None else tuple(self.col_labels[j] for j in cols)
        return Gf2Matrix.from_columns([colvals[j] for j in cols], self.nrows,
                                      row_labels=self.row_labels, col_labels=labels)

    def principal_submatrix(self, idx: Sequence[int]) -> "Gf2Matrix":
        rows = []
        for i in idx:
            r = self.rows[i]
            bits = 0
            for k, j in enumerate(idx):
                if r >> j & 1:
                    bits |= 1 << k
            rows.append(bits)
        return Gf2Matrix(tuple(rows), len(idx))

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.to_lists())


def _rref(rows: Sequence[int], ncols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form; pivots chosen left to right."""
    work = [r for r in rows]
    pivots: list[int] = []
    pr = 0
    for col in range(ncols):
        bit = 1 << col
        hit = None
        for r in range(pr, len(work)):
            if work[r] & bit:
                hit = r
                break
        if hit is None:
            continue
        work[pr], work[hit] = work[hit], work[pr]
        for r in range(len(work)):
            if r != pr and work[r] & bit:
                work[r] ^= work[pr]
        pivots.append(col)
        pr += 1
        if pr == len(work):
            break
    return work[:pr], pivots


def gf2_kernel(m: Gf2Matrix) -> tuple[int, list[tuple[int, ...]]]:
    """Rank and a kernel basis of ``m``.

    One basis vector per non-pivot column ``f`` of the reduced row echelon
    form: it has a 1 at ``f``, zeros at the other free columns, and whatever
    the pivot rows force.  Vectors are returned as 0/1 tuples, ordered by
    their free column.
    """
    reduced, pivots = _rref(m.rows, m.ncols)
    pivset = set(pivots)
    basis = []
    for f in range(m.ncols):
        if f in pivset:
            continue
        v = [0] * m.ncols
        v[f] = 1
        for row, p in zip(reduced, pivots):
            if row >> f & 1:
                v[p] = 1
        basis.append(tuple(v))
    return len(pivots), basis


@dataclass(frozen=True)
class IntMatrix:
    """Matrix of exact integers."""

    entries: tuple[tuple[int, ...], ...]
    ncols: int

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]], ncols: int | None = None) -> "IntMatrix":
        if ncols is None:
            ncols = len(entries[0]) if entries else 0
        rows = []
        for row in entries:
            if len(row) != ncols:
                raise DimensionError("ragged matrix")
            rows.append(tuple(int(x) for x in row))
        return cls(tuple(rows), ncols)

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.entries), self.ncols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntMatrix":
        return IntMatrix(tuple(tuple(self.entries[i][j] for j in cols) for i in rows), len(cols))

    def principal_submatrix(self, idx: Sequence[int]) -> "IntMatrix":
        return self.submatrix(idx, idx)

    def mod2(self) -> Gf2Matrix:
        return Gf2Matrix.from_lists([[x % 2 for x in r] for r in self.entries], self.ncols)

    def det(self) -> int:
        return int_det(self)


def int_det(m: IntMatrix | Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free (Bareiss) elimination.

    Every intermediate value is itself a minor of the input, so the exact
    division below never leaves the integers.
    """
    rows = [list(r) for r in (m.entries if isinstance(m, IntMatrix) else m)]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if rows[i][k] != 0), None)
            if swap is None:
                return 0
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        pivot = rows[k][k]
        rk = rows[k]
        for i in range(k + 1, n):
            ri = rows[i]
            rik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pivot - rik * rk[j]) // prev
            ri[k] = 0
        prev = pivot
    return sign * rows[n - 1][n - 1]


def parse_matrix(text: str) -> Gf2Matrix | IntMatrix:
    """Parse the ``matrix <rows> <cols> <gf2|int>`` text format.

    An optional ``elements`` line before the header supplies column labels
    for GF(2) matrices.
    """
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    labels = None
    if lines and lines[0].startswith("elements"):
        labels = tuple(lines[0].split()[1:])
        lines = lines[1:]
    if not lines:
        raise ParseError("empty matrix payload")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "matrix" or head[3] not in ("gf2", "int"):
        raise ParseError(f"bad matrix header: {lines[0]!r}")
    try:
        nr, nc = int(head[1]), int(head[2])
        body = [[int(x) for x in ln.split()] for ln in lines[1:]]
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    if len(body) != nr or any(len(r) != nc for r in body):
        raise ParseError("matrix body does not match the header dimensions")
    if head[3] == "int":
        return IntMatrix.from_lists(body, nc)
    if any(x not in (0, 1) for r in body for x in r):
        raise ParseError("gf2 entries must be 0 or 1")
    if labels is not None and len(labels) != nc:
        raise ParseError("elements line length does not match column count")
    return Gf2Matrix.from_lists(body, nc, col_labels=labels)


def format_matrix(m: Gf2Matrix | IntMatrix, labels: Sequence[str] | None = None) -> str:
    out = []
    if labels is None and isinstance(m, Gf2Matrix) and m.col_labels is not None:
        labels = [str(x) for x in m.col_labels]
    if labels is not None:
        out.append("elements " + " ".join(str(x) for x in labels))
    ring = "gf2" if isinstance(m, Gf2Matrix) else "int"
    out.append(f"matrix {m.nrows} {m.ncols} {ring}")
    for row in m.to_lists():
        out.append(" ".join(str(x) for x in row))
    return "\n".join(out) + "\n"
