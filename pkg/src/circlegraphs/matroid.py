"""Binary matroids as column matroids of GF(2) matrices.

Elements are column indices ``0..n-1`` with optional labels; element sets
are passed around as bitmasks over those indices.  Because a binary matroid
has essentially one GF(2) representation, isomorphism and minor questions
reduce to finding linear maps between column sets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .algebra import Gf2Matrix, XorBasis, _rref, gf2_rank
from .errors import PreconditionError, ResourceGuardError

__all__ = [
    "BinaryMatroid",
    "circuits_up_to",
    "dual",
    "minor",
    "find_isomorphism",
    "is_isomorphic",
    "automorphism_count",
    "automorphisms",
    "has_minor",
    "class_test",
    "graph_matroid",
    "fano",
    "fano_dual",
    "cycle_matroid_k5",
    "cycle_matroid_k33",
    "ELEMENT_LIMIT",
]

ELEMENT_LIMIT = 24


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class BinaryMatroid:
    """Column matroid of a GF(2) matrix; ``cols[i]`` is a bitmask over rows."""

    cols: tuple[int, ...]
    labels: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.labels is not None and (len(self.labels) != len(self.cols)
                                        or len(set(self.labels)) != len(self.cols)):
            raise PreconditionError("labels must be distinct, one per element")

    @classmethod
    def from_matrix(cls, m: Gf2Matrix, labels: Sequence | None = None) -> "BinaryMatroid":
        if labels is None and m.col_labels is not None:
            labels = m.col_labels
        return cls(tuple(m.columns()), tuple(labels) if labels is not None else None)

    @property
    def size(self) -> int:
        return len(self.cols)

    @property
    def ground(self) -> int:
        return (1 << len(self.cols)) - 1

    @cached_property
    def rank(self) -> int:
        return gf2_rank(self.cols)

    def label(self, i: int):
        return self.labels[i] if self.labels is not None else i

    def index(self, label) -> int:
        if self.labels is None:
            return int(label)
        return self.labels.index(label)

    def mask(self, labels: Iterable) -> int:
        out = 0
        for x in labels:
            out |= 1 << self.index(x)
        return out

    def labels_of(self, mask: int) -> list:
        return [self.label(i) for i in _bits(mask)]

    def rank_of(self, mask: int) -> int:
        return gf2_rank(self.cols[i] for i in _bits(mask))

    def is_independent(self, mask: int) -> bool:
        return self.rank_of(mask) == mask.bit_count()

    def is_circuit(self, mask: int) -> bool:
        acc = 0
        for i in _bits(mask):
            acc ^= self.cols[i]
        return mask != 0 and acc == 0 and self.rank_of(mask) == mask.bit_count() - 1

    def restrict(self, elements: Sequence[int]) -> "BinaryMatroid":
        labels = None if self.labels is None else tuple(self.labels[i] for i in elements)
        return BinaryMatroid(tuple(self.cols[i] for i in elements), labels)

    def compressed(self) -> "BinaryMatroid":
        """Same matroid with a full-row-rank representation."""
        nrows = max((c.bit_length() for c in self.cols), default=0)
        rows = Gf2Matrix.from_columns(self.cols, nrows).rows
        reduced, _ = _rref(rows, len(self.cols))
        return BinaryMatroid(tuple(Gf2Matrix(tuple(reduced), len(self.cols)).columns()), self.labels)

    def matrix(self) -> Gf2Matrix:
        c = self.compressed()
        return Gf2Matrix.from_columns(c.cols, c.rank, col_labels=self.labels)

    def bases(self) -> list[int]:
        r = self.rank
        return [sum(1 << i for i in s) for s in itertools.combinations(range(self.size), r)
                if gf2_rank(self.cols[i] for i in s) == r]


def circuits_up_to(m: BinaryMatroid, k: int, within: int | None = None) -> list[int]:
    """All circuits with at most ``k`` elements, as bitmasks in increasing order.

    A circuit with largest element ``x`` is an independent set ``I`` of
    smaller elements whose columns sum to column ``x``.
    """
    if k > m.size:
        raise PreconditionError("k exceeds the number of elements")
    if k > 8 and m.size > ELEMENT_LIMIT:
        raise ResourceGuardError("circuit enumeration guard exceeded")
    pool = [i for i in range(m.size) if within is None or within >> i & 1]
    cols = m.cols
    out: list[int] = []

    def grow(start_pos, basis: XorBasis, mask, total):
        size = mask.bit_count()
        for pos in range(start_pos, len(pool)):
            x = pool[pos]
            if cols[x] == total:
                out.append(mask | 1 << x)
            if size + 1 < k:
                nb = basis.copy()
                if nb.add(cols[x]):
                    grow(pos + 1, nb, mask | 1 << x, total ^ cols[x])

    grow(0, XorBasis(), 0, 0)
    out.sort(key=lambda c: (c.bit_count(), c))
    return out


def dual(m: BinaryMatroid) -> BinaryMatroid:
    """Dual via the standard form: (I | E) on (B, N) becomes (E^T | I)."""
    n = m.size
    nrows = max((c.bit_length() for c in m.cols), default=0)
    rows = Gf2Matrix.from_columns(m.cols, nrows).rows
    reduced, pivots = _rref(rows, n)
    nonbasis = [x for x in range(n) if x not in set(pivots)]
    pos = {x: j for j, x in enumerate(nonbasis)}
    cols = [0] * n
    for i, b in enumerate(pivots):
        v = 0
        for x in nonbasis:
            if reduced[i] >> x & 1:
                v |= 1 << pos[x]
        cols[b] = v
    for x in nonbasis:
        cols[x] = 1 << pos[x]
    return BinaryMatroid(tuple(cols), m.labels)


def minor(m: BinaryMatroid, contract: int, delete: int) -> BinaryMatroid:
    """``(m / contract) - delete``, with sets given as element bitmasks."""
    if contract & delete:
        raise PreconditionError("contract and delete sets overlap")
    basis = XorBasis(m.cols[i] for i in _bits(contract))
    keep = [i for i in range(m.size) if not (contract | delete) >> i & 1]
    labels = None if m.labels is None else tuple(m.labels[i] for i in keep)
    return BinaryMatroid(tuple(basis.reduce(m.cols[i]) for i in keep), labels).compressed()


# --------------------------------------------------------------------------
# isomorphism via linear maps

def _element_invariants(m: BinaryMatroid, depth: int = 4) -> list[tuple]:
    k = min(depth, m.size)
    counts = [[0] * (k + 1) for _ in range(m.size)]
    for c in circuits_up_to(m, k):
        s = c.bit_count()
        for i in _bits(c):
            counts[i][s] += 1
    return [tuple(c) for c in counts]


class _LinearMatcher:
    """Backtracking search for injective maps ``sigma`` from the elements of
    ``src`` into ``dst`` induced by a linear map ``L`` with
    ``L(src.cols[x]) == dst.cols[sigma(x)]`` and ``L`` injective on the span.
    """

    def __init__(self, src: BinaryMatroid, dst: BinaryMatroid,
                 src_inv: list | None = None, dst_inv: list | None = None):
        self.src = src
        self.dst = dst
        self.src_inv = src_inv
        self.dst_inv = dst_inv
        self.order = self._order()

    def _order(self) -> list[tuple[int, bool]]:
        """Elements in search order, flagged True when they add to the rank.

        Each new independent element is chosen to bring as many further
        elements into the span as possible; those follow immediately.
        """
        cols = self.src.cols
        remaining = set(range(self.src.size))
        basis = XorBasis()
        order: list[tuple[int, bool]] = []
        while remaining:
            forced = sorted(x for x in remaining if basis.contains(cols[x]))
            for x in forced:
                order.append((x, False))
                remaining.discard(x)
            if not remaining:
                break
            best = None
            for x in sorted(remaining):
                trial = basis.copy()
                trial.add(cols[x])
                gain = sum(1 for y in remaining if y != x and trial.contains(cols[y]))
                if best is None or gain > best[0]:
                    best = (gain, x)
            x = best[1]
            basis.add(cols[x])
            order.append((x, True))
            remaining.discard(x)
        return order

    def search(self, count_all: bool, collect: bool = False):
        """First map found, or (``count_all``) the number of maps; with
        ``collect`` as well, the list of every map."""
        src, dst = self.src, self.dst
        scol, dcol = src.cols, dst.cols
        order = self.order
        sigma: dict[int, int] = {}
        used = [False] * dst.size
        by_vec: dict[int, list[int]] = {}
        for y, c in enumerate(dcol):
            by_vec.setdefault(c, []).append(y)
        # the linear map is tracked on a basis: image of each src basis column
        found = []
        total = 0

        def image(vec_coords):
            out = 0
            for i in _bits(vec_coords):
                out ^= images[i]
            return out

        images: list[int] = []
        basis_src: list[int] = []  # src basis columns in order, for coordinates

        def coords(v):
            # express v in terms of basis_src (which is independent) by elimination
            rows = list(basis_src)
            tags = [1 << i for i in range(len(rows))]
            piv: list[tuple[int, int, int]] = []
            for r, t in zip(rows, tags):
                for (lead, pr, pt) in piv:
                    if r >> lead & 1:
                        r ^= pr
                        t ^= pt
                lead = r.bit_length() - 1
                piv.append((lead, r, t))
            acc = 0
            for (lead, pr, pt) in sorted(piv, key=lambda z: -z[0]):
                if v >> lead & 1:
                    v ^= pr
                    acc ^= pt
            return acc if v == 0 else None

        dst_basis: list[XorBasis] = [XorBasis()]

        def rec(k):
            nonlocal total
            if k == len(order):
                total += 1
                if collect:
                    found.append(dict(sigma))
                if not count_all:
                    found.append(dict(sigma))
                    return True
                return False
            x, fresh = order[k]
            if fresh:
                candidates = [y for y in range(dst.size) if not used[y]]
            else:
                target = image(coords(scol[x]))
                candidates = [y for y in by_vec.get(target, ()) if not used[y]]
            for y in candidates:
                if self.src_inv is not None and self.src_inv[x] != self.dst_inv[y]:
                    continue
                if fresh:
                    nb = dst_basis[-1].copy()
                    if not nb.add(dcol[y]):
                        continue
                    basis_src.append(scol[x])
                    images.append(dcol[y])
                    dst_basis.append(nb)
                sigma[x] = y
                used[y] = True
                stop = rec(k + 1)
                used[y] = False
                del sigma[x]
                if fresh:
                    basis_src.pop()
                    images.pop()
                    dst_basis.pop()
                if stop:
                    return True
            return False

        rec(0)
        if count_all:
            return found if collect else total
        return found[0] if found else None


def find_isomorphism(m1: BinaryMatroid, m2: BinaryMatroid) -> dict[int, int] | None:
    """An element bijection carrying the circuits of ``m1`` onto those of ``m2``."""
    if max(m1.size, m2.size) > ELEMENT_LIMIT:
        raise ResourceGuardError(f"isomorphism search is limited to {ELEMENT_LIMIT} elements")
    if m1.size != m2.size or m1.rank != m2.rank:
        return None
    i1, i2 = _element_invariants(m1), _element_invariants(m2)
    if sorted(i1) != sorted(i2):
        return None
    return _LinearMatcher(m1.compressed(), m2.compressed(), i1, i2).search(False)


def is_isomorphic(m1: BinaryMatroid, m2: BinaryMatroid) -> bool:
    return find_isomorphism(m1, m2) is not None


def automorphism_count(m: BinaryMatroid) -> int:
    """Number of element permutations preserving the family of circuits."""
    if m.size > ELEMENT_LIMIT:
        raise ResourceGuardError(f"automorphism search is limited to {ELEMENT_LIMIT} elements")
    inv = _element_invariants(m)
    c = m.compressed()
    return _LinearMatcher(c, c, inv, inv).search(True)


def automorphisms(m: BinaryMatroid) -> list[tuple[int, ...]]:
    """Every circuit-preserving element permutation, as tuples ``perm`` with
    element ``x`` sent to ``perm[x]``."""
    if m.size > ELEMENT_LIMIT:
        raise ResourceGuardError(f"automorphism search is limited to {ELEMENT_LIMIT} elements")
    inv = _element_invariants(m)
    c = m.compressed()
    maps = _LinearMatcher(c, c, inv, inv).search(True, collect=True)
    return [tuple(s[x] for x in range(m.size)) for s in maps]


def has_minor(m: BinaryMatroid, target: BinaryMatroid) -> bool:
    """Whether ``target`` is isomorphic to a minor of ``m``.

    Every minor can be written as ``m / C - D`` with ``C`` independent of
    size ``r(m) - r(target)``, so the search contracts each such ``C`` and
    looks for a restriction of the quotient matching ``target``.
    """
    if m.size > ELEMENT_LIMIT:
        raise ResourceGuardError(f"minor search is limited to {ELEMENT_LIMIT} elements")
    k = m.rank - target.rank
    if target.size > m.size or k < 0 or target.size - target.rank > m.size - m.rank:
        return False
    tgt = target.compressed()
    loopless = all(tgt.cols)
    simple = loopless and len(set(tgt.cols)) == tgt.size
    memo: dict = {}
    seen_spans: set = set()
    for cset in itertools.combinations(range(m.size), k):
        basis = XorBasis()
        if not all(basis.add(m.cols[i]) for i in cset):
            continue
        if loopless:
            width = max(m.cols, default=0).bit_length()
            span_key = tuple(basis.reduce(1 << b) for b in range(width))
            if span_key in seen_spans:
                continue
            seen_spans.add(span_key)
        rest = [i for i in range(m.size) if i not in cset]
        quotient = [basis.reduce(m.cols[i]) for i in rest]
        if loopless:
            quotient = [q for q in quotient if q]
        if simple:
            quotient = sorted(set(quotient))
        if len(quotient) < tgt.size:
            continue
        key = tuple(sorted(quotient))
        if key in memo:
            hit = memo[key]
        else:
            host = BinaryMatroid(tuple(quotient))
            hit = _embeds(tgt, host)
            memo[key] = hit
        if hit:
            return True
    return False


def _embeds(tgt: BinaryMatroid, host: BinaryMatroid) -> bool:
    if host.rank < tgt.rank:
        return False
    return _LinearMatcher(tgt, host).search(False) is not None


# --------------------------------------------------------------------------
# standard matroids and class tests

def fano() -> BinaryMatroid:
    cols = (0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111)
    return BinaryMatroid(cols)


def fano_dual() -> BinaryMatroid:
    return dual(fano()).compressed()


def graph_matroid(n: int, edges: Sequence[tuple[int, int]], kind: str = "cycle",
                  labels: Sequence | None = None) -> BinaryMatroid:
    """Cycle matroid (incidence columns, loops are zero) or bond matroid."""
    cols = []
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise PreconditionError(f"edge ({u},{v}) out of range")
        cols.append(0 if u == v else (1 << u) | (1 << v))
    m = BinaryMatroid(tuple(cols), tuple(labels) if labels is not None else None)
    if kind == "cycle":
        return m.compressed()
    if kind == "bond":
        return dual(m).compressed()
    raise PreconditionError(f"unknown graph matroid kind {kind!r}")


def cycle_matroid_k5() -> BinaryMatroid:
    return graph_matroid(5, list(itertools.combinations(range(5), 2)))


def cycle_matroid_k33() -> BinaryMatroid:
    return graph_matroid(6, [(a, b) for a in range(3) for b in range(3, 6)])


_EXCLUDED: dict[str, BinaryMatroid] = {}


def _excluded(name: str) -> BinaryMatroid:
    if name not in _EXCLUDED:
        build = {
            "F7": fano,
            "F7*": fano_dual,
            "M(K5)": cycle_matroid_k5,
            "M(K33)": cycle_matroid_k33,
            "M*(K5)": lambda: dual(cycle_matroid_k5()).compressed(),
            "M*(K33)": lambda: dual(cycle_matroid_k33()).compressed(),
        }[name]
        _EXCLUDED[name] = build()
    return _EXCLUDED[name]


def class_test(m: BinaryMatroid, cls: str) -> bool:
    """Decide regular / graphic / cographic / planar by excluded minors."""
    if cls == "regular":
        return not has_minor(m, _excluded("F7")) and not has_minor(m, _excluded("F7*"))
    if cls == "graphic":
        return (class_test(m, "regular") and not has_minor(m, _excluded("M*(K5)"))
                and not has_minor(m, _excluded("M*(K33)")))
    if cls == "cographic":
        return (class_test(m, "regular") and not has_minor(m, _excluded("M(K5)"))
                and not has_minor(m, _excluded("M(K33)")))
    if cls == "planar":
        return class_test(m, "graphic") and class_test(m, "cographic")
    raise PreconditionError(f"unknown matroid class {cls!r}")
