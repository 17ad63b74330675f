"""Circle-graph recognition, the characterization checks, and planar
realizability with crossing-number lower bounds."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .algebra import Gf2Matrix, gf2_kernel, gf2_rank
from .errors import PreconditionError, ResourceGuardError
from .fourregular import interlacement_of_words
from .graphs import (LoopedGraph, VertexMinorWitness, _graph_canon, canonical_graph, find_vertex_minor,
                     local_equivalence_orbit, replay_ops, simple_lc)
from .isotropic import (LETTERS, IsotropicPresentation, all_transversals,
                        transverse_circuits, transverse_matroid)
from .matroid import BinaryMatroid, circuits_up_to, class_test

__all__ = [
    "RecognitionResult",
    "ObstructionWitness",
    "is_circle",
    "realize",
    "vertex_minor_classes",
    "LEClass",
    "characterization_report",
    "CharacterizationReport",
    "planar_realizability",
    "crossing_lower_bound",
    "transversal_ranks",
    "ORACLE_LIMIT",
    "REPORT_LIMIT",
    "PAIR_LIMIT",
]

ORACLE_LIMIT = 9
REPORT_LIMIT = 8
PAIR_LIMIT = 8


# --------------------------------------------------------------------------
# recognition

@dataclass(frozen=True)
class ObstructionWitness:
    """An obstruction found inside one component of the input.

    ``minor`` replays on ``g.induced(component)`` (component-local indices).
    """

    name: str
    component: tuple[int, ...]
    minor: VertexMinorWitness

    def replay(self, g: LoopedGraph) -> LoopedGraph:
        sub = g.strip_loops().induced(list(self.component))
        final, _ = replay_ops(sub, self.minor.ops)
        return final


@dataclass(frozen=True)
class RecognitionResult:
    is_circle: bool
    method: str
    dow: tuple[tuple[str, ...], ...] | None = None
    obstruction: ObstructionWitness | None = None

    @property
    def verdict(self) -> str:
        return "CIRCLE" if self.is_circle else "NOT_CIRCLE"


def _component_word(rows: tuple[int, ...], comp: list[int]) -> list[int] | None:
    """A double occurrence word over ``comp`` whose interlacement is exactly
    the induced adjacency, or None.

    Words are built left to right from the smallest vertex.  For each open
    letter ``w`` we keep the parity set of letters seen since ``w`` opened;
    a letter placed twice inside that stretch, or once before and once
    inside, has a final bit that must agree with adjacency to ``w``, and
    when ``w`` closes the whole set must equal its neighbourhood.
    """
    if len(comp) == 1:
        return [comp[0], comp[0]]
    cmask = sum(1 << v for v in comp)
    nbr = {v: rows[v] & cmask & ~(1 << v) for v in comp}
    total = 2 * len(comp)
    word: list[int] = []
    open_par: dict[int, int] = {}
    closed = 0
    placed = 0

    def rec() -> bool:
        nonlocal closed, placed
        if len(word) == total:
            return True
        remaining = total - len(word)
        if len(open_par) > remaining:
            return False
        # close an open letter
        for w in list(open_par):
            par = open_par[w]
            if par != nbr[w]:
                continue
            del open_par[w]
            ok = True
            for u in open_par:
                open_par[u] ^= 1 << w
                if (open_par[u] ^ nbr[u]) >> w & 1:
                    ok = False
            if ok:
                closed |= 1 << w
                word.append(w)
                if rec():
                    return True
                word.pop()
                closed &= ~(1 << w)
            for u in open_par:
                open_par[u] ^= 1 << w
            open_par[w] = par
        # open a new letter
        if not word:
            candidates = [comp[0]]
        else:
            candidates = [v for v in comp if not placed >> v & 1]
        for v in candidates:
            if nbr[v] & closed:
                continue
            for u in open_par:
                open_par[u] ^= 1 << v
            open_par[v] = 0
            placed |= 1 << v
            word.append(v)
            if rec():
                return True
            word.pop()
            placed &= ~(1 << v)
            del open_par[v]
            for u in open_par:
                open_par[u] ^= 1 << v
        return False

    return list(word) if rec() else None


@lru_cache(maxsize=65536)
def _words_for(n: int, rows: tuple[int, ...]) -> tuple[tuple[int, ...], ...] | None:
    g = LoopedGraph(n, rows)
    out = []
    for comp in g.components():
        w = _component_word(rows, comp)
        if w is None:
            return None
        out.append(tuple(w))
    return tuple(out)


def realize(g: LoopedGraph) -> list[list[str]] | None:
    """Double occurrence words (one per component) whose interlacement graph
    is ``g`` with its vertex names, or None if ``g`` is not a circle graph."""
    g = g.strip_loops()
    for comp in g.components():
        if len(comp) > ORACLE_LIMIT:
            raise ResourceGuardError(f"oracle limited to components of size {ORACLE_LIMIT}")
    words = _words_for(g.n, g.rows)
    if words is None:
        return None
    return [[g.label(v) for v in w] for w in words]


def _obstructions():
    from .fixtures import bw3, w5, w7

    return (("W5", w5()), ("BW3", bw3()), ("W7", w7()))


def _find_obstruction(g: LoopedGraph) -> ObstructionWitness | None:
    for comp in g.components():
        if len(comp) < 6:
            continue
        sub = g.induced(comp)
        for name, h in _obstructions():
            hit = find_vertex_minor(sub, LoopedGraph(h.n, h.rows))
            if hit is not None:
                return ObstructionWitness(name, tuple(comp), hit)
    return None


def is_circle(g: LoopedGraph, method: str = "oracle") -> RecognitionResult:
    """Decide whether ``g`` (loops ignored) is a circle graph.

    ``oracle`` searches for a realizing word; ``obstruction`` looks for W5,
    BW3 or W7 as a vertex-minor; ``both`` runs the two and requires them to
    agree.
    """
    if method not in ("oracle", "obstruction", "both"):
        raise PreconditionError(f"unknown recognition method {method!r}")
    g = g.strip_loops()
    dow = obstruction = None
    verdicts = []
    if method in ("oracle", "both"):
        words = realize(g)
        if words is not None:
            dow = tuple(tuple(w) for w in words)
            check = interlacement_of_words(words, [g.label(v) for v in range(g.n)])
            assert check.rows == g.rows, "realizing word does not replay"
        verdicts.append(words is not None)
    if method in ("obstruction", "both"):
        obstruction = _find_obstruction(g)
        verdicts.append(obstruction is None)
    if len(set(verdicts)) != 1:
        raise AssertionError("oracle and obstruction methods disagree")
    return RecognitionResult(verdicts[0], method, dow, obstruction)


# --------------------------------------------------------------------------
# vertex-minor classes

@dataclass(frozen=True)
class LEClass:
    """One local-equivalence class of vertex-minors, with one graph per
    isomorphism class in it."""

    n: int
    keys: frozenset
    members: tuple[LoopedGraph, ...]

    @property
    def rep(self) -> LoopedGraph:
        return self.members[0]


@lru_cache(maxsize=8192)
def _le_class(n: int, rows: tuple[int, ...]) -> LEClass:
    reps = local_equivalence_orbit(LoopedGraph(n, rows), "up-to-iso")
    keys = frozenset(_graph_canon(n, r.rows).key for r in reps)
    return LEClass(n, keys, tuple(reps))


def _drop(rows: tuple[int, ...], v: int) -> tuple[int, ...]:
    n = len(rows)
    g = LoopedGraph(n, rows)
    keep = [u for u in range(n) if u != v]
    return g.induced(keep).rows


def vertex_minor_classes(g: LoopedGraph, min_size: int = 1) -> list[LEClass]:
    """Every vertex-minor of ``g`` with at least ``min_size`` vertices, one
    entry per local-equivalence class, largest first.

    Each vertex-minor on one vertex fewer is locally equivalent to
    ``H - v``, ``H * v - v`` or ``H ^ vw - v`` for any one graph ``H`` of
    the class above, so one representative per class is expanded.
    """
    g = g.strip_loops()
    top = _le_class(g.n, g.rows)
    out = [top]
    level = [top]
    seen = {top.keys}
    for _ in range(g.n - min_size):
        nxt = []
        for cls in level:
            rows = cls.rep.rows
            k = cls.n
            for v in range(k):
                cands = [rows]
                nb = rows[v] & ~(1 << v)
                if nb:
                    cands.append(simple_lc(rows, v))
                    w = (nb & -nb).bit_length() - 1
                    cands.append(simple_lc(simple_lc(simple_lc(rows, v), w), v))
                for r in cands:
                    sub = _drop(r, v)
                    c = _le_class(k - 1, canonical_graph(LoopedGraph(k - 1, sub)).rows)
                    if c.keys not in seen:
                        seen.add(c.keys)
                        nxt.append(c)
        out.extend(nxt)
        level = nxt
    return out


# --------------------------------------------------------------------------
# characterization report

def _degree_conditions(cls: LEClass) -> tuple[bool, bool, bool]:
    low = adjacent_two = False
    every_five = True
    for m in cls.members:
        deg = m.degrees()
        if any(d <= 1 for d in deg):
            low = True
        if any(deg[u] == 2 and deg[v] == 2 for u, v in m.edges() if u != v):
            adjacent_two = True
        if 5 not in deg:
            every_five = False
    return low, adjacent_two, every_five


def _small_circuits(p: IsotropicPresentation) -> list[int]:
    return circuits_up_to(p.matroid, 3)


def _loop_or_meeting_triangles(p: IsotropicPresentation) -> bool:
    circs = _small_circuits(p)
    if any(c.bit_count() == 1 for c in circs):
        return True
    threes = [c for c in circs if c.bit_count() == 3]
    return any(a & b for a, b in itertools.combinations(threes, 2))


def _transverse_small(p: IsotropicPresentation, k: int) -> list[str]:
    return transverse_circuits(p, min(k, p.n)) if p.n else []


def _not_cotransversal_pair(circs3: list[str]) -> bool:
    """Two transverse 3-circuits that no single transversal contains."""
    for a, b in itertools.combinations(circs3, 2):
        if any(x != "-" and y != "-" and x != y for x, y in zip(a, b)):
            return True
    return False


_COGRAPHIC_CACHE: dict = {}


def _all_transverse_cographic(p: IsotropicPresentation) -> tuple[bool, str | None]:
    for t in all_transversals(p.n):
        m = transverse_matroid(p, t).compressed()
        key = tuple(sorted(m.cols))
        hit = _COGRAPHIC_CACHE.get(key)
        if hit is None:
            hit = class_test(m, "cographic")
            _COGRAPHIC_CACHE[key] = hit
        if not hit:
            return False, t
    return True, None


def _only_two_disjoint_circuits(p: IsotropicPresentation, t: str) -> bool:
    cols = [p.column(v, x) for v, x in enumerate(t)]
    if len(cols) - gf2_rank(cols) != 2:
        return False
    _, basis = gf2_kernel(Gf2Matrix.from_columns(cols, p.n))
    vecs = [sum(b << i for i, b in enumerate(vec)) for vec in basis]
    x, y = vecs
    return not (x & y) or not (x & (x ^ y)) or not (y & (x ^ y))


@lru_cache(maxsize=1)
def _k44_key():
    from .fixtures import k44_interlacement

    g = k44_interlacement()
    return _graph_canon(g.n, g.rows).key


@dataclass
class CharacterizationReport:
    """Per-characterization condition values and implied verdicts.

    ``verdicts`` maps each characterization to the circle verdict its
    conditions imply (None when the characterization does not apply).
    """

    n: int
    circle: bool
    conditions: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        return all(v is None or v == self.circle for v in self.verdicts.values())

    def as_dict(self) -> dict:
        return {"n": self.n, "circle": self.circle, "consistent": self.consistent,
                "conditions": self.conditions, "verdicts": self.verdicts}


def characterization_report(g: LoopedGraph) -> CharacterizationReport:
    """Evaluate each characterization of circle graphs independently."""
    g = g.strip_loops()
    if g.n > REPORT_LIMIT:
        raise ResourceGuardError(f"characterization report limited to n <= {REPORT_LIMIT}")
    n = g.n
    circle = is_circle(g).is_circle
    rep = CharacterizationReport(n, circle)
    p = IsotropicPresentation(g)
    classes = vertex_minor_classes(g)
    k44 = _k44_key()
    top = classes[0]

    # at most six vertices
    if n <= 6:
        c2 = bool(_transverse_small(p, 3))
        c3 = any(min(m.degrees(), default=0) <= 2 for m in top.members)
        rep.conditions["small_graph_short_circuit"] = {"circle": circle, "transverse_circuit_le3": c2,
                                       "le_member_degree_le2": c3}
        rep.verdicts["small_graph_short_circuit"] = c2
        rep.verdicts["small_graph_low_degree"] = c3
    else:
        rep.verdicts["small_graph_short_circuit"] = rep.verdicts["small_graph_low_degree"] = None

    cographic, bad_t = _all_transverse_cographic(p)

    # transverse matroids plus small isotropic minors
    below = [c for c in classes if c.n < 8]
    cond2 = all(_loop_or_meeting_triangles(IsotropicPresentation(c.rep)) for c in below)
    cond3 = True
    for c in classes:
        if c.n != 8:
            continue
        q = IsotropicPresentation(c.rep)
        if _loop_or_meeting_triangles(q):
            continue
        if any(_only_two_disjoint_circuits(q, t) for t in all_transversals(8)):
            cond3 = False
    rep.conditions["cographic_and_small_minors"] = {"all_transverse_cographic": cographic,
                                 "non_cographic_transversal": bad_t,
                                 "small_minors_have_loop_or_meeting_triangles": cond2,
                                 "size24_two_disjoint_circuits_have_others": cond3}
    rep.verdicts["cographic_and_small_minors"] = cographic and cond2 and cond3

    # transverse matroids plus the K44 exception
    exc = all(_loop_or_meeting_triangles(IsotropicPresentation(c.rep)) or k44 in c.keys
              for c in classes)
    rep.conditions["cographic_with_k44_exception"] = {"all_transverse_cographic": cographic,
                                 "small_minors_exceptional_only_for_k44": exc}
    rep.verdicts["cographic_with_k44_exception"] = cographic and exc

    # bipartite members of the orbit
    bip = any(m.is_bipartite() for m in top.members)
    if bip:
        from .fixtures import bw3, bw4

        free = not any(find_vertex_minor(g, LoopedGraph(h.n, h.rows)) is not None
                       for h in (bw3(), bw4()))
        rep.conditions["bipartite"] = {"circle": circle, "all_transverse_cographic": cographic,
                                       "no_bw3_bw4_vertex_minor": free}
        rep.verdicts["bipartite"] = cographic
        rep.verdicts["bipartite_vertex_minor"] = free
    else:
        rep.verdicts["bipartite"] = rep.verdicts["bipartite_vertex_minor"] = None

    # degree conditions on small vertex-minors
    per_class = [(c, _degree_conditions(c)) for c in classes]
    j6 = all(any(d) for _, d in per_class)
    j8 = all(k44 in c.keys or d[0] or d[1] for c, d in per_class)
    rep.conditions["degree_conditions"] = {"every_vertex_minor_meets_a_degree_condition": j6}
    rep.conditions["degree_conditions_except_k44"] = {"every_non_k44_vertex_minor_has_low_degree_member": j8}
    rep.verdicts["degree_conditions"] = j6
    rep.verdicts["degree_conditions_except_k44"] = j8

    # transverse circuits of small isotropic minors
    j7 = True
    for c in classes:
        q = IsotropicPresentation(c.rep)
        small = _transverse_small(q, 3)
        if any(s.count("-") >= q.n - 2 for s in small):
            continue
        if _not_cotransversal_pair([s for s in small if q.n - s.count("-") == 3]):
            continue
        if k44 in c.keys:
            continue
        j7 = False
        break
    rep.conditions["short_circuits_except_k44"] = {"every_small_minor_meets_a_circuit_condition": j7}
    rep.verdicts["short_circuits_except_k44"] = j7
    return rep


# --------------------------------------------------------------------------
# planar realizability and crossing bounds

def transversal_ranks(p: IsotropicPresentation) -> np.ndarray:
    """Ranks of all transversals, indexed in ``pcs`` product order."""
    return np.array([p.rank_of(t) for t in all_transversals(p.n)], dtype=np.int64)


def _transversal_string(idx: int, n: int) -> str:
    out = []
    for _ in range(n):
        idx, d = divmod(idx, 3)
        out.append(LETTERS[d])
    return "".join(reversed(out))


def _disjoint_pairs_with_sum(p: IsotropicPresentation, ranks: np.ndarray, target: int):
    """Unordered disjoint transversal pairs ``(T1, T2)`` with ``T1 < T2`` in
    product order and ``r(T1) + r(T2) == target``, in increasing order."""
    n = p.n
    size = 3 ** n
    idx = np.arange(size)
    digits = np.stack([(idx // 3 ** (n - 1 - v)) % 3 for v in range(n)], axis=1)
    weights = np.array([3 ** (n - 1 - v) for v in range(n)])
    found = []
    for shift in itertools.product((1, 2), repeat=n):
        other = ((digits + np.array(shift)) % 3) @ weights
        hit = np.nonzero((ranks + ranks[other] == target) & (idx < other))[0]
        found.extend(zip(hit.tolist(), other[hit].tolist()))
    found.sort()
    for a, b in found:
        yield _transversal_string(a, n), _transversal_string(b, n)


def _min_pair_sum(p: IsotropicPresentation, ranks: np.ndarray) -> int:
    n = p.n
    size = 3 ** n
    idx = np.arange(size)
    digits = np.stack([(idx // 3 ** (n - 1 - v)) % 3 for v in range(n)], axis=1)
    weights = np.array([3 ** (n - 1 - v) for v in range(n)])
    best = None
    for shift in itertools.product((1, 2), repeat=n):
        other = ((digits + np.array(shift)) % 3) @ weights
        m = int((ranks + ranks[other]).min())
        best = m if best is None else min(best, m)
    return best


def _union_matroid(p: IsotropicPresentation, t1: str, t2: str) -> BinaryMatroid:
    elems = p.elements_of(t1) + p.elements_of(t2)
    return p.matroid.restrict(elems)


def _check_pair_guard(g: LoopedGraph) -> IsotropicPresentation:
    if not g.is_simple():
        raise PreconditionError("expected a simple graph")
    if g.n > PAIR_LIMIT:
        raise ResourceGuardError(f"transversal-pair search limited to n <= {PAIR_LIMIT}")
    return IsotropicPresentation(g)


def planar_realizability(g: LoopedGraph) -> tuple[bool, tuple[str, str] | None]:
    """Disjoint transversals with ranks summing to ``n`` and a planar union.

    When the ranks sum to ``n`` the union has rank ``n`` as well, so it is
    the direct sum of the two transverse matroids; it is planar exactly
    when both of them are.
    """
    p = _check_pair_guard(g)
    if p.n == 0:
        return True, ("", "")
    ranks = transversal_ranks(p)
    planar: dict[str, bool] = {}

    def is_planar(t):
        if t not in planar:
            planar[t] = class_test(transverse_matroid(p, t), "planar")
        return planar[t]

    for t1, t2 in _disjoint_pairs_with_sum(p, ranks, p.n):
        if is_planar(t1) and is_planar(t2):
            return True, (t1, t2)
    return False, None


def crossing_lower_bound(g: LoopedGraph, refine: bool = False) -> int:
    """Lower bound on the crossing number of any 4-regular graph with an
    Euler system whose interlacement graph is ``g``.

    The plain bound is the least ``r(T1) + r(T2) - n`` over disjoint
    transversals.  With ``refine``, a bound of 0 is raised to 1 when no
    planar realization exists, and a bound of 1 is raised to 2 when no
    pair with rank sum ``n + 1`` has a planar union.
    """
    p = _check_pair_guard(g)
    if p.n == 0:
        return 0
    ranks = transversal_ranks(p)
    bound = _min_pair_sum(p, ranks) - p.n
    if not refine:
        return bound
    if bound == 0 and not planar_realizability(g)[0]:
        bound = 1
    if bound == 1:
        if not any(class_test(_union_matroid(p, t1, t2), "planar")
                   for t1, t2 in _disjoint_pairs_with_sum(p, ranks, p.n + 1)):
            bound = 2
    return bound
