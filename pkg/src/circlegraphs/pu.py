"""Principal unimodularity and transversal regularity.

A real skew-symmetric matrix has ``det A[X] = Pf(A[X])**2``, and the parity
of the Pfaffian is fixed by the GF(2) support.  A signing of a zero-diagonal
support is therefore principally unimodular exactly when every even
principal Pfaffian lies in ``{0, 1, -1}``; :func:`pu_sign` searches signings
with that test applied as soon as each principal submatrix is fully signed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import Gf2Matrix, IntMatrix, int_det
from .errors import DimensionError, PreconditionError, ResourceGuardError
from .graphs import LoopedGraph, canonical_form
from .isotropic import (IsotropicPresentation, Section, all_transversals,
                        multimatroid_section)

__all__ = [
    "SignedSkewMatrix",
    "check_signed_skew",
    "is_pu",
    "transversal_determinants_ok",
    "pu_sign",
    "pu_sign_unrestricted",
    "is_t_regular_section",
    "is_t_regular_isotropic",
    "TRegularity",
    "standard_form_pu_b",
    "rational_contract",
    "two_by_two_minors",
    "PU_LIMIT",
    "SIGN_LIMIT",
    "TREG_LIMIT",
]

PU_LIMIT = 14
SIGN_LIMIT = 10
TREG_LIMIT = 9

SignedSkewMatrix = IntMatrix


def check_signed_skew(a: IntMatrix) -> None:
    n = a.nrows
    if a.ncols != n:
        raise DimensionError("signed skew matrix must be square")
    for i in range(n):
        if a[i, i] != 0:
            raise PreconditionError("signed skew matrix must have zero diagonal")
        for j in range(n):
            if a[i, j] not in (-1, 0, 1) or a[i, j] != -a[j, i]:
                raise PreconditionError("entries must be in {-1,0,1} and skew-symmetric")


def is_pu(a: IntMatrix) -> tuple[bool, tuple[int, ...] | None]:
    """Check every principal minor; on failure report the first bad subset
    in order of increasing bitmask."""
    n = a.nrows
    if a.ncols != n:
        raise DimensionError("principal minors need a square matrix")
    if n > PU_LIMIT:
        raise ResourceGuardError(f"principal-minor check limited to n <= {PU_LIMIT}")
    for mask in range(1, 1 << n):
        idx = [i for i in range(n) if mask >> i & 1]
        if int_det(a.principal_submatrix(idx)) not in (-1, 0, 1):
            return False, tuple(idx)
    return True, None


def transversal_determinants_ok(a: IntMatrix) -> bool:
    """Every square matrix formed by choosing, for each ``i``, column ``i``
    of ``I`` or column ``i`` of ``A`` in ``(I | A)`` has determinant in
    ``{0, 1, -1}``."""
    n = a.nrows
    if a.ncols != n:
        raise DimensionError("expected a square matrix")
    if n > PU_LIMIT:
        raise ResourceGuardError(f"transversal check limited to n <= {PU_LIMIT}")
    for choice in range(1 << n):
        cols = []
        for j in range(n):
            if choice >> j & 1:
                cols.append([a[i, j] for i in range(n)])
            else:
                cols.append([int(i == j) for i in range(n)])
        mat = [[cols[j][i] for j in range(n)] for i in range(n)]
        if int_det(mat) not in (-1, 0, 1):
            return False
    return True


def _support_edges(support: Gf2Matrix) -> list[tuple[int, int]]:
    n = support.nrows
    return [(i, j) for j in range(n) for i in range(j) if support.entry(i, j)]


def _check_support(support: Gf2Matrix) -> None:
    if not support.is_symmetric():
        raise PreconditionError("support must be symmetric")
    if any(support.entry(i, i) for i in range(support.nrows)):
        raise PreconditionError("support must have zero diagonal")
    if support.nrows > SIGN_LIMIT:
        raise ResourceGuardError(f"signing search limited to n <= {SIGN_LIMIT}")


class _PfaffianChecker:
    """Even principal Pfaffians, filled in level by level.

    Level ``k`` holds the even vertex sets whose largest element is ``k``;
    their Pfaffians only involve entries whose larger index is at most
    ``k``.  Sets are expanded along their smallest element, so smaller sets
    of the same level are always ready first.
    """

    def __init__(self, n: int):
        self.n = n
        self.a = [[0] * n for _ in range(n)]
        self.pf = [0] * (1 << n)
        self.pf[0] = 1
        self.levels = []
        for k in range(n):
            masks = []
            for size in range(2, k + 2, 2):
                for rest in itertools.combinations(range(k), size - 1):
                    masks.append(sum(1 << i for i in rest) | 1 << k)
            self.levels.append(masks)
        self.members = {}
        for masks in self.levels:
            for m in masks:
                self.members[m] = [i for i in range(n) if m >> i & 1]

    def set(self, i: int, j: int, s: int) -> None:
        self.a[i][j] = s
        self.a[j][i] = -s

    def check_level(self, k: int) -> bool:
        a, pf = self.a, self.pf
        for mask in self.levels[k]:
            xs = self.members[mask]
            x1 = xs[0]
            row = a[x1]
            total = 0
            for pos in range(1, len(xs)):
                xl = xs[pos]
                if row[xl]:
                    term = row[xl] * pf[mask ^ (1 << x1) ^ (1 << xl)]
                    total += term if pos % 2 else -term
            if total not in (-1, 0, 1):
                return False
            pf[mask] = total
        return True

    def matrix(self) -> IntMatrix:
        return IntMatrix.from_lists(self.a, self.n)


def _spanning_forest(n: int, edges: Sequence[tuple[int, int]]) -> set[tuple[int, int]]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    forest = set()
    for i, j in edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            forest.add((i, j))
    return forest


def _search(n: int, fixed: Sequence[tuple[int, int]],
            free: Sequence[tuple[int, int]]) -> IntMatrix | None:
    checker = _PfaffianChecker(n)
    for i, j in fixed:
        checker.set(i, j, 1)
    # levels that become fully signed once the first ``idx`` free edges are set
    completing: list[list[int]] = [[] for _ in range(len(free) + 1)]
    for k in range(n):
        count = sum(1 for (_, j) in free if j <= k)
        completing[count].append(k)

    def dfs(idx: int) -> bool:
        for k in completing[idx]:
            if not checker.check_level(k):
                return False
        if idx == len(free):
            return True
        i, j = free[idx]
        for s in (1, -1):
            checker.set(i, j, s)
            if dfs(idx + 1):
                return True
        checker.set(i, j, 0)
        return False

    return checker.matrix() if dfs(0) else None


def pu_sign(support: Gf2Matrix) -> IntMatrix | None:
    """A principally unimodular skew-symmetric signing of ``support``, or None.

    Conjugating by a diagonal ``+-1`` matrix preserves every principal
    minor, so a spanning forest of the support can be signed ``+1`` without
    loss.  The remaining entries are searched exhaustively, ordered by their
    larger index, with Pfaffian pruning.
    """
    _check_support(support)
    edges = _support_edges(support)
    forest = _spanning_forest(support.nrows, edges)
    free = [e for e in edges if e not in forest]
    return _search(support.nrows, sorted(forest), free)


def pu_sign_unrestricted(support: Gf2Matrix) -> IntMatrix | None:
    """The same search without fixing a spanning forest (a reference)."""
    _check_support(support)
    return _search(support.nrows, [], _support_edges(support))


# --------------------------------------------------------------------------
# transversal regularity

def is_t_regular_section(section: Section) -> bool:
    """t-regularity of a tight 2-section.

    With ``T1`` a basis transversal of the section and ``T2`` the other
    surviving elements, the section is represented by ``(I | A)`` on
    ``(T1, T2)``.  Transversal determinants of a real signing of that form
    are the principal minors of the signed ``A``, so the section is
    t-regular exactly when ``A`` has a principally unimodular signing.
    """
    _, _, a = section.standard_matrix()
    if any(a.entry(i, i) for i in range(a.nrows)):
        raise PreconditionError("t-regularity is decided only for tight sections")
    return _signable(a)


def _signable(a: Gf2Matrix) -> bool:
    key = canonical_form(LoopedGraph(a.nrows, a.rows)).key
    hit = _SIGN_CACHE.get(key)
    if hit is None:
        hit = pu_sign(a) is not None
        _SIGN_CACHE[key] = hit
    return hit


_SIGN_CACHE: dict = {}


@dataclass(frozen=True)
class TRegularity:
    """Outcome of the isotropic t-regularity check."""

    t_regular: bool
    witness: str | None
    tight_sections: int

    def __bool__(self) -> bool:
        return self.t_regular


def _assert_loop_relabelling(p: IsotropicPresentation) -> None:
    """Toggling the loop at ``v`` swaps the ``c`` and ``s`` columns at ``v``."""
    n = p.n
    for v in range(n):
        rows = list(p.g.rows)
        rows[v] ^= 1 << v
        q = IsotropicPresentation(LoopedGraph(n, tuple(rows)))
        assert q.column(v, "c") == p.column(v, "s")
        assert q.column(v, "s") == p.column(v, "c")
        assert q.column(v, "p") == p.column(v, "p")


def is_t_regular_isotropic(p: IsotropicPresentation | LoopedGraph) -> TRegularity:
    """Check every tight section ``M[IAS(G)] - T``.

    Transversals are visited in ``pcs`` product order; the first tight,
    non-t-regular section found is reported as the witness.
    """
    if isinstance(p, LoopedGraph):
        p = IsotropicPresentation(p)
    if p.n > TREG_LIMIT:
        raise ResourceGuardError(f"t-regularity check limited to n <= {TREG_LIMIT}")
    _assert_loop_relabelling(p)
    tight = 0
    for t in all_transversals(p.n):
        section = multimatroid_section(p, t)
        _, _, a = section.standard_matrix()
        if any(a.entry(i, i) for i in range(a.nrows)):
            continue
        tight += 1
        if not _signable(a):
            return TRegularity(False, t, tight)
    return TRegularity(True, None, tight)


# --------------------------------------------------------------------------
# a reference 2-sheltering example

def standard_form_pu_b() -> IntMatrix:
    """``(I | A)`` with ``A`` the 4x4 skew matrix with +1 above the diagonal."""
    a = [[0 if i == j else (1 if i < j else -1) for j in range(4)] for i in range(4)]
    return IntMatrix.from_lists([[int(i == j) for j in range(4)] + a[i] for i in range(4)])


def rational_contract(b: IntMatrix, contract: Sequence[int], delete: Sequence[int]
                      ) -> tuple[list[list[Fraction]], list[int]]:
    """Matrix of ``M/contract - delete`` over the rationals.

    Pivots on each contracted column, drops the pivot rows, and returns the
    remaining rows restricted to the surviving columns (with their indices).
    """
    rows = [[Fraction(x) for x in r] for r in b.entries]
    alive_rows = list(range(len(rows)))
    for c in contract:
        piv = next((r for r in alive_rows if rows[r][c] != 0), None)
        if piv is None:
            raise PreconditionError(f"column {c} is a loop after earlier contractions")
        pr = rows[piv]
        for r in alive_rows:
            if r != piv and rows[r][c] != 0:
                f = rows[r][c] / pr[c]
                rows[r] = [x - f * y for x, y in zip(rows[r], pr)]
        alive_rows.remove(piv)
    keep = [j for j in range(b.ncols) if j not in set(contract) | set(delete)]
    return [[rows[r][j] for j in keep] for r in alive_rows], keep


def two_by_two_minors(m: Sequence[Sequence[Fraction]]) -> dict[tuple[int, int], Fraction]:
    if len(m) != 2:
        raise DimensionError("expected a matrix with two rows")
    out = {}
    for i, j in itertools.combinations(range(len(m[0])), 2):
        out[(i, j)] = m[0][i] * m[1][j] - m[0][j] * m[1][i]
    return out
