"""Set systems and delta-matroids over small ground sets.

Feasible sets are bitmasks over ``range(n)``.  Binary delta-matroids are
handled through their symmetric GF(2) matrices: a binary delta-matroid
containing the empty set is ``D_A`` for exactly one symmetric ``A``.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebra import Gf2Matrix, gf2_rank
from .errors import ParseError, PreconditionError, ResourceGuardError
from .graphs import LoopedGraph
from .matroid import BinaryMatroid

__all__ = [
    "SetSystem",
    "is_delta_matroid",
    "twist",
    "loop_complement",
    "dm_from_matrix",
    "reconstruct_matrix",
    "is_binary",
    "is_eulerian",
    "is_regular",
    "plus_star_closure",
    "normal_form_members",
    "matroid_bases_system",
    "parse_set_system",
    "format_set_system",
    "GROUND_LIMIT",
]

GROUND_LIMIT = 16
EULERIAN_LIMIT = 10
REGULAR_LIMIT = 10


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class SetSystem:
    """A ground set ``range(n)`` with a family of feasible sets."""

    n: int
    feasible: frozenset
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.n < 0:
            raise PreconditionError("negative ground-set size")
        full = (1 << self.n) - 1
        if any(f < 0 or f & ~full for f in self.feasible):
            raise PreconditionError("feasible set outside the ground set")
        if self.names is not None and len(self.names) != self.n:
            raise PreconditionError("names length does not match the ground set")

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]],
                  names: Sequence[str] | None = None) -> "SetSystem":
        fam = set()
        for s in sets:
            mask = 0
            for e in s:
                if not 0 <= e < n:
                    raise PreconditionError(f"element {e} outside the ground set")
                mask |= 1 << e
            fam.add(mask)
        return cls(n, frozenset(fam), None if names is None else tuple(names))

    def __contains__(self, mask: int) -> bool:
        return mask in self.feasible

    def __len__(self) -> int:
        return len(self.feasible)

    def sets(self) -> list[tuple[int, ...]]:
        """Feasible sets as sorted tuples, ordered by size then lexicographically."""
        out = [tuple(_bits(f)) for f in self.feasible]
        out.sort(key=lambda s: (len(s), s))
        return out

    def is_even(self) -> bool:
        parities = {f.bit_count() & 1 for f in self.feasible}
        return len(parities) <= 1


def _subset_mask(d: SetSystem, x) -> int:
    if isinstance(x, int):
        mask = x
    else:
        mask = 0
        for e in x:
            mask |= 1 << e
    if mask < 0 or mask >> d.n:
        raise PreconditionError("twist/loop set is not a subset of the ground set")
    return mask


def is_delta_matroid(d: SetSystem) -> bool:
    """Check the symmetric exchange axiom exhaustively."""
    if d.n > GROUND_LIMIT:
        raise ResourceGuardError(f"ground set larger than {GROUND_LIMIT}")
    if not d.feasible:
        return False
    fam = d.feasible
    for x in fam:
        for y in fam:
            diff = x ^ y
            for a in _bits(diff):
                if not any(x ^ ((1 << a) | (1 << b)) in fam for b in _bits(diff)):
                    return False
    return True


def twist(d: SetSystem, x) -> SetSystem:
    mask = _subset_mask(d, x)
    return SetSystem(d.n, frozenset(f ^ mask for f in d.feasible), d.names)


def loop_complement(d: SetSystem, x) -> SetSystem:
    """``Y`` is feasible when an odd number of feasible ``Z`` satisfy
    ``Y - X <= Z <= Y``.

    Each feasible ``Z`` contributes to exactly the sets ``Z | W`` with
    ``W`` a subset of ``X - Z``, so the parity is accumulated from that side.
    """
    mask = _subset_mask(d, x)
    odd: set[int] = set()
    for z in d.feasible:
        free = mask & ~z
        sub = free
        while True:
            odd ^= {z | sub}
            if sub == 0:
                break
            sub = (sub - 1) & free
    return SetSystem(d.n, frozenset(odd), d.names)


def _principal_nonsingular(rows: Sequence[int], mask: int) -> bool:
    sub = [rows[i] & mask for i in _bits(mask)]
    return gf2_rank(sub) == len(sub)


def dm_from_matrix(a: Gf2Matrix, names: Sequence[str] | None = None) -> SetSystem:
    """``D_A``: subsets whose principal submatrix is nonsingular over GF(2)."""
    if not a.is_symmetric():
        raise PreconditionError("D_A needs a symmetric matrix")
    n = a.nrows
    if n > GROUND_LIMIT:
        raise ResourceGuardError(f"ground set larger than {GROUND_LIMIT}")
    fam = frozenset(m for m in range(1 << n) if _principal_nonsingular(a.rows, m))
    return SetSystem(n, fam, None if names is None else tuple(names))


def reconstruct_matrix(d: SetSystem) -> Gf2Matrix:
    """The unique symmetric ``A`` with ``D_A = d``.

    Diagonal entries come from singletons; an off-diagonal entry ``A_vw``
    is 1 exactly when ``{v, w}`` is feasible while some singleton of the
    pair is not, or ``{v, w}`` is infeasible while both singletons are.
    The result is checked by recomputing ``D_A``.
    """
    if 0 not in d.feasible:
        raise PreconditionError("reconstruction needs the empty set to be feasible")
    n = d.n
    single = [(1 << v) in d.feasible for v in range(n)]
    rows = [0] * n
    for v in range(n):
        if single[v]:
            rows[v] |= 1 << v
    for v, w in itertools.combinations(range(n), 2):
        pair = ((1 << v) | (1 << w)) in d.feasible
        if (pair and not (single[v] and single[w])) or (not pair and single[v] and single[w]):
            rows[v] |= 1 << w
            rows[w] |= 1 << v
    a = Gf2Matrix(tuple(rows), n)
    if dm_from_matrix(a).feasible != d.feasible:
        raise PreconditionError("set system is not a binary delta-matroid containing the empty set")
    return a


def _normalizing_twist(d: SetSystem) -> int:
    if not d.feasible:
        raise PreconditionError("empty feasible family")
    return min(d.feasible)


def is_binary(d: SetSystem) -> bool:
    """Binary iff some (equivalently any) twist to the empty set reconstructs."""
    if not d.feasible:
        return False
    try:
        reconstruct_matrix(twist(d, _normalizing_twist(d)))
    except PreconditionError:
        return False
    return True


def _normalized_graph(d: SetSystem) -> LoopedGraph:
    a = reconstruct_matrix(twist(d, _normalizing_twist(d)))
    return LoopedGraph.from_matrix(a, d.names)


def is_eulerian(d: SetSystem) -> bool:
    """Whether ``d`` is a twist of ``D_A(G)`` for a circle graph ``G``."""
    if d.n > EULERIAN_LIMIT:
        raise ResourceGuardError(f"Eulerian test limited to {EULERIAN_LIMIT} elements")
    if not is_binary(d):
        raise PreconditionError("the Eulerian test needs a binary delta-matroid")
    if not d.is_even():
        return False
    from .recognize import is_circle  # recognize depends on this module's neighbours

    g = _normalized_graph(d)
    method = "oracle" if g.n <= 9 else "obstruction"
    return is_circle(g, method=method).is_circle


def is_regular(d: SetSystem):
    """Regularity of an even binary delta-matroid.

    Returns ``(True, signing)`` with a principally unimodular real matrix
    representing ``d`` after the normalizing twist, or ``(False, None)``.
    """
    if d.n > REGULAR_LIMIT:
        raise ResourceGuardError(f"regularity test limited to {REGULAR_LIMIT} elements")
    if not is_binary(d):
        raise PreconditionError("the regularity test needs a binary delta-matroid")
    if not d.is_even():
        raise PreconditionError("regularity is decided only for even delta-matroids")
    from .pu import pu_sign

    a = reconstruct_matrix(twist(d, _normalizing_twist(d)))
    signing = pu_sign(a)
    return signing is not None, signing


def plus_star_closure(d: SetSystem, limit: int = 1_000_000) -> list[SetSystem]:
    """Everything reachable from ``d`` by single-element twists and loop
    complementations, breadth first."""
    if d.n > GROUND_LIMIT:
        raise ResourceGuardError(f"ground set larger than {GROUND_LIMIT}")
    seen = {d.feasible}
    out = [d]
    q = deque([d])
    while q:
        cur = q.popleft()
        for v in range(d.n):
            for nxt in (twist(cur, 1 << v), loop_complement(cur, 1 << v)):
                if nxt.feasible not in seen:
                    seen.add(nxt.feasible)
                    if len(seen) > limit:
                        raise ResourceGuardError("closure exceeds the limit")
                    out.append(nxt)
                    q.append(nxt)
    return out


def normal_form_members(d: SetSystem) -> set[frozenset]:
    """All families of the form ``D * X + Y * Z`` with ``X <= Y``."""
    n = d.n
    full = (1 << n) - 1
    out: set[frozenset] = set()
    for y in range(1 << n):
        sub = y
        while True:
            base = loop_complement(twist(d, sub), y)
            for z in range(full + 1):
                out.add(frozenset(f ^ z for f in base.feasible))
            if sub == 0:
                break
            sub = (sub - 1) & y
    return out


def matroid_bases_system(m: BinaryMatroid) -> SetSystem:
    """A matroid viewed as the delta-matroid of its bases."""
    if m.size > GROUND_LIMIT:
        raise ResourceGuardError(f"ground set larger than {GROUND_LIMIT}")
    names = None
    if m.labels is not None:
        names = tuple(str(x) for x in m.labels)
    return SetSystem(m.size, frozenset(m.bases()), names)


def parse_set_system(text: str) -> SetSystem:
    """Parse ``dm <n>`` followed by one feasible set per line (``-`` is empty)."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty set-system payload")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "dm":
        raise ParseError(f"bad set-system header: {lines[0]!r}")
    try:
        n = int(head[1])
    except ValueError:
        raise ParseError("ground-set size must be an integer") from None
    sets = []
    for ln in lines[1:]:
        if ln == "-":
            sets.append(())
            continue
        try:
            sets.append(tuple(int(x) for x in ln.split()))
        except ValueError:
            raise ParseError(f"bad feasible-set line: {ln!r}") from None
    try:
        return SetSystem.from_sets(n, sets)
    except PreconditionError as exc:
        raise ParseError(str(exc)) from None


def format_set_system(d: SetSystem) -> str:
    out = [f"dm {d.n}"]
    for s in d.sets():
        out.append(" ".join(str(e) for e in s) if s else "-")
    return "\n".join(out) + "\n"
