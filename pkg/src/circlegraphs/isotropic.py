"""Isotropic matroids, transversals, transverse circuits and 2-sections.

For a graph on ``n`` vertices the isotropic matrix is ``(I | A | I + A)``.
Element ``letter * n + v`` is the ``v`` column of block ``letter``, with
letters ``p`` (phi, the identity block), ``c`` (chi, the adjacency block)
and ``s`` (psi, the sum block).  Transversals are written as strings over
``pcs`` in vertex order; a ``-`` leaves a vertex uncovered.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from .algebra import Gf2Matrix, XorBasis, gf2_rank
from .errors import PreconditionError
from .graphs import LoopedGraph
from .matroid import BinaryMatroid

__all__ = [
    "IsotropicPresentation",
    "Section",
    "ias_matroid",
    "transverse_matroid",
    "transverse_circuits",
    "isotropic_minor",
    "multimatroid_section",
    "is_tight",
    "is_tight_by_extension",
    "all_transversals",
    "parse_transversal",
    "LETTERS",
]

LETTERS = "pcs"


def parse_transversal(text: str, n: int, partial: bool = False) -> str:
    allowed = LETTERS + ("-" if partial else "")
    if len(text) != n or any(ch not in allowed for ch in text):
        kind = "subtransversal" if partial else "transversal"
        raise PreconditionError(f"{text!r} is not a {kind} string of length {n}")
    return text


def all_transversals(n: int) -> Iterator[str]:
    for t in itertools.product(LETTERS, repeat=n):
        yield "".join(t)


@dataclass(frozen=True)
class IsotropicPresentation:
    """A graph together with its isotropic matrix and vertex triples."""

    g: LoopedGraph

    @property
    def n(self) -> int:
        return self.g.n

    @cached_property
    def columns(self) -> tuple[int, ...]:
        n = self.n
        phi = [1 << v for v in range(n)]
        chi = list(self.g.rows)  # symmetric, so rows are columns
        psi = [a ^ b for a, b in zip(phi, chi)]
        return tuple(phi + chi + psi)

    @cached_property
    def ias(self) -> Gf2Matrix:
        labels = tuple(self.element_name(e) for e in range(3 * self.n))
        return Gf2Matrix.from_columns(self.columns, self.n, col_labels=labels)

    @cached_property
    def matroid(self) -> BinaryMatroid:
        labels = tuple((e % self.n, LETTERS[e // self.n]) for e in range(3 * self.n))
        return BinaryMatroid(self.columns, labels)

    def element(self, v: int, letter: str) -> int:
        return LETTERS.index(letter) * self.n + v

    def element_name(self, e: int) -> str:
        return f"{LETTERS[e // self.n]}{self.g.label(e % self.n)}"

    def triple(self, v: int) -> tuple[int, int, int]:
        return (v, self.n + v, 2 * self.n + v)

    def triples(self) -> list[tuple[int, int, int]]:
        return [self.triple(v) for v in range(self.n)]

    def elements_of(self, t: str) -> list[int]:
        """Elements selected by a (sub)transversal string."""
        return [self.element(v, x) for v, x in enumerate(t) if x != "-"]

    def mask_of(self, t: str) -> int:
        out = 0
        for e in self.elements_of(t):
            out |= 1 << e
        return out

    def string_of(self, elements) -> str:
        """Subtransversal string for a set of elements, one per triple at most."""
        out = ["-"] * self.n
        for e in elements:
            v = e % self.n
            if out[v] != "-":
                raise PreconditionError("elements are not a subtransversal")
            out[v] = LETTERS[e // self.n]
        return "".join(out)

    def column(self, v: int, letter: str) -> int:
        return self.columns[self.element(v, letter)]

    def rank_of(self, t: str) -> int:
        return gf2_rank(self.columns[e] for e in self.elements_of(t))


def ias_matroid(g: LoopedGraph) -> IsotropicPresentation:
    return IsotropicPresentation(g)


def transverse_matroid(p: IsotropicPresentation, t: str) -> BinaryMatroid:
    """Restriction of the isotropic matroid to a transversal."""
    parse_transversal(t, p.n)
    elems = p.elements_of(t)
    return BinaryMatroid(tuple(p.columns[e] for e in elems), tuple((v, t[v]) for v in range(p.n)))


def transverse_circuits(p: IsotropicPresentation, max_size: int,
                        avoid: str | None = None) -> list[str]:
    """Circuits of the isotropic matroid that are subtransversals, up to ``max_size``.

    Subtransversals are grown vertex by vertex and only while independent; a
    circuit is recorded when the next element's column equals the sum of the
    chosen ones.  ``avoid`` (a transversal string) excludes its elements.
    """
    n = p.n
    if max_size > n:
        raise PreconditionError("max_size exceeds the number of vertices")
    out: list[str] = []
    chosen = ["-"] * n

    def grow(start, basis: XorBasis, size, total):
        for v in range(start, n):
            for x in LETTERS:
                if avoid is not None and avoid[v] == x:
                    continue
                col = p.column(v, x)
                if col == total:
                    chosen[v] = x
                    out.append("".join(chosen))
                    chosen[v] = "-"
                if size + 1 < max_size:
                    nb = basis.copy()
                    if nb.add(col):
                        chosen[v] = x
                        grow(v + 1, nb, size + 1, total ^ col)
                        chosen[v] = "-"

    if max_size >= 1:
        grow(0, XorBasis(), 0, 0)
    out.sort(key=lambda s: (n - s.count("-"), s))
    return out


def isotropic_minor(p: IsotropicPresentation, s: str) -> BinaryMatroid:
    """Contract the subtransversal ``s`` and delete the rest of its triples."""
    parse_transversal(s, p.n, partial=True)
    contract = p.elements_of(s)
    basis = XorBasis(p.columns[e] for e in contract)
    keep = [e for e in range(3 * p.n) if s[e % p.n] == "-"]
    m = BinaryMatroid(tuple(basis.reduce(p.columns[e]) for e in keep),
                      tuple(p.matroid.labels[e] for e in keep))
    return m.compressed()


@dataclass(frozen=True)
class Section:
    """The isotropic matroid with one transversal deleted.

    ``pairs[v]`` lists the two surviving letters at ``v`` in ``pcs`` order.
    """

    presentation: IsotropicPresentation
    deleted: str

    @property
    def n(self) -> int:
        return self.presentation.n

    @cached_property
    def pairs(self) -> tuple[str, ...]:
        return tuple("".join(x for x in LETTERS if x != d) for d in self.deleted)

    @cached_property
    def matroid(self) -> BinaryMatroid:
        p = self.presentation
        keep = [e for e in range(3 * p.n) if LETTERS[e // p.n] != self.deleted[e % p.n]]
        return BinaryMatroid(tuple(p.columns[e] for e in keep),
                             tuple(p.matroid.labels[e] for e in keep))

    def subtransversals(self, size: int) -> Iterator[str]:
        """Subtransversals of the section with ``size`` covered vertices."""
        n = self.n
        for covered in itertools.combinations(range(n), size):
            for picks in itertools.product(range(2), repeat=size):
                s = ["-"] * n
                for v, k in zip(covered, picks):
                    s[v] = self.pairs[v][k]
                yield "".join(s)

    def basis_transversal(self) -> str:
        """A transversal of the section that is a basis of the matroid.

        Built greedily; the sheltering property guarantees that one element
        of each surviving pair keeps the chosen set independent.
        """
        p = self.presentation
        basis = XorBasis()
        out = []
        for v in range(self.n):
            for x in self.pairs[v]:
                if basis.add(p.column(v, x)):
                    out.append(x)
                    break
            else:
                raise AssertionError("sheltering property failed")
        return "".join(out)

    def complement(self, t: str) -> str:
        """The other surviving letter at each vertex."""
        return "".join(pr[1] if pr[0] == x else pr[0] for pr, x in zip(self.pairs, t))

    def standard_matrix(self) -> tuple[str, str, Gf2Matrix]:
        """``(T1, T2, A)`` with ``(I | A)`` a standard representation on ``(T1, T2)``."""
        p = self.presentation
        t1 = self.basis_transversal()
        t2 = self.complement(t1)
        b_cols = [p.column(v, x) for v, x in enumerate(t1)]
        inv = _gf2_inverse_columns(b_cols, self.n)
        a_cols = []
        for v, x in enumerate(t2):
            a_cols.append(_apply_columns(inv, p.column(v, x)))
        return t1, t2, Gf2Matrix.from_columns(a_cols, self.n)


def _gf2_inverse_columns(cols: Sequence[int], n: int) -> list[int]:
    """Columns of the inverse of the square matrix with the given columns."""
    rows = Gf2Matrix.from_columns(cols, n).rows
    aug = [rows[i] | (1 << (n + i)) for i in range(n)]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r] >> c & 1)
        aug[c], aug[piv] = aug[piv], aug[c]
        for r in range(n):
            if r != c and aug[r] >> c & 1:
                aug[r] ^= aug[c]
    inv_rows = [r >> n for r in aug]
    return Gf2Matrix(tuple(inv_rows), n).columns()


def _apply_columns(cols: Sequence[int], v: int) -> int:
    out = 0
    for i, c in enumerate(cols):
        if v >> i & 1:
            out ^= c
    return out


def multimatroid_section(p: IsotropicPresentation, t: str) -> Section:
    parse_transversal(t, p.n)
    return Section(p, t)


def is_tight(section: Section) -> bool:
    """Every independent subtransversal of size n-1 of the section extends
    to a dependent subtransversal by an element of its uncovered pair."""
    p = section.presentation
    n = section.n
    if n == 0:
        return True
    for s in section.subtransversals(n - 1):
        cols = [p.column(v, x) for v, x in enumerate(s) if x != "-"]
        if gf2_rank(cols) < len(cols):
            continue
        u = s.index("-")
        basis = XorBasis(cols)
        if not any(basis.contains(p.column(u, x)) for x in section.pairs[u]):
            return False
    return True


def is_tight_by_extension(p: IsotropicPresentation, t: str) -> bool:
    """Tightness read off the whole isotropic matroid.

    Every independent subtransversal ``S`` disjoint from ``t`` with
    ``|S| = n - 1`` must have some element ``x`` outside ``t`` such that
    ``S + x`` is a dependent subtransversal.
    """
    parse_transversal(t, p.n)
    n = p.n
    m = p.matroid
    for covered in itertools.combinations(range(n), n - 1):
        for letters in itertools.product(LETTERS, repeat=n - 1):
            if any(t[v] == x for v, x in zip(covered, letters)):
                continue
            elems = [p.element(v, x) for v, x in zip(covered, letters)]
            mask = sum(1 << e for e in elems)
            if not m.is_independent(mask):
                continue
            u = next(v for v in range(n) if v not in covered)
            ok = False
            for x in LETTERS:
                if x == t[u]:
                    continue
                if not m.is_independent(mask | 1 << p.element(u, x)):
                    ok = True
                    break
            if not ok:
                return False
    return True
