"""Looped simple graphs, local complementation, canonical forms and vertex-minors.

A :class:`LoopedGraph` stores its adjacency as one bitmask per vertex, with
bit ``v`` of row ``v`` recording a loop.  Canonical labelling is a small
partition-refinement search with automorphism pruning; it also accepts
integer weight matrices so multigraphs can share it.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .algebra import Gf2Matrix
from .errors import ParseError, PreconditionError, ResourceGuardError

__all__ = [
    "LoopedGraph",
    "CanonicalForm",
    "canonical_labeling",
    "canonical_form",
    "apply_local_op",
    "local_equivalence_orbit",
    "find_vertex_minor",
    "is_vertex_minor",
    "VertexMinorWitness",
    "replay_ops",
    "parse_graph",
    "format_graph",
    "DEFAULT_ORBIT_CAP",
]

DEFAULT_ORBIT_CAP = 5_000_000


@dataclass(frozen=True)
class LoopedGraph:
    """Symmetric GF(2) adjacency with loops on the diagonal."""

    n: int
    rows: tuple[int, ...]
    names: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise PreconditionError("row count does not match n")
        full = (1 << self.n) - 1
        for i, r in enumerate(self.rows):
            if r & ~full:
                raise PreconditionError("adjacency bit outside vertex range")
            for j in _bits(r):
                if not self.rows[j] >> i & 1:
                    raise PreconditionError("adjacency is not symmetric")
        if self.names is not None:
            if len(self.names) != self.n or len(set(self.names)) != self.n:
                raise PreconditionError("vertex names must be distinct, one per vertex")

    # construction -------------------------------------------------------
    @classmethod
    def empty(cls, n: int, names: Sequence[str] | None = None) -> "LoopedGraph":
        return cls(n, (0,) * n, tuple(names) if names is not None else None)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   names: Sequence[str] | None = None) -> "LoopedGraph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"edge ({u},{v}) out of range")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows), tuple(names) if names is not None else None)

    @classmethod
    def from_matrix(cls, m: Gf2Matrix, names: Sequence[str] | None = None) -> "LoopedGraph":
        if not m.is_symmetric():
            raise PreconditionError("adjacency matrix must be symmetric")
        return cls(m.nrows, tuple(m.rows), tuple(names) if names is not None else None)

    # queries -------------------------------------------------------------
    def label(self, v: int) -> str:
        return self.names[v] if self.names is not None else str(v)

    def index(self, name: str) -> int:
        if self.names is None:
            return int(name)
        return self.names.index(name)

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def has_loop(self, v: int) -> bool:
        return bool(self.rows[v] >> v & 1)

    def is_simple(self) -> bool:
        return all(not (r >> i & 1) for i, r in enumerate(self.rows))

    def neighborhood(self, v: int) -> int:
        """Open neighbourhood of ``v`` as a bitmask (the loop is excluded)."""
        return self.rows[v] & ~(1 << v)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.neighborhood(v)))

    def degree(self, v: int) -> int:
        return self.neighborhood(v).bit_count()

    def degrees(self) -> list[int]:
        return [self.degree(v) for v in range(self.n)]

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u <= v``; loops appear as ``(v, v)``."""
        return [(u, v) for u in range(self.n) for v in _bits(self.rows[u] >> u << u)]

    def adjacency(self) -> Gf2Matrix:
        return Gf2Matrix(self.rows, self.n)

    def strip_loops(self) -> "LoopedGraph":
        return LoopedGraph(self.n, tuple(r & ~(1 << i) for i, r in enumerate(self.rows)), self.names)

    def components(self) -> list[list[int]]:
        seen = 0
        out = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = 1 << s
            frontier = comp
            while frontier:
                nxt = 0
                for v in _bits(frontier):
                    nxt |= self.rows[v]
                frontier = nxt & ~comp
                comp |= nxt
            seen |= comp
            out.append(list(_bits(comp)))
        return out

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def distances_from(self, s: int) -> list[int | None]:
        dist: list[int | None] = [None] * self.n
        dist[s] = 0
        q = deque([s])
        while q:
            v = q.popleft()
            for w in _bits(self.neighborhood(v)):
                if dist[w] is None:
                    dist[w] = dist[v] + 1
                    q.append(w)
        return dist

    def diameter(self) -> int | None:
        """Largest distance; ``None`` for a disconnected graph."""
        best = 0
        for s in range(self.n):
            d = self.distances_from(s)
            if any(x is None for x in d):
                return None
            best = max(best, max(d))
        return best

    def is_bipartite(self) -> bool:
        colour: dict[int, int] = {}
        for s in range(self.n):
            if s in colour:
                continue
            colour[s] = 0
            q = deque([s])
            while q:
                v = q.popleft()
                if self.has_loop(v):
                    return False
                for w in _bits(self.neighborhood(v)):
                    if w not in colour:
                        colour[w] = 1 - colour[v]
                        q.append(w)
                    elif colour[w] == colour[v]:
                        return False
        return True

    # derived graphs ------------------------------------------------------
    def induced(self, vertices: Sequence[int]) -> "LoopedGraph":
        """Induced subgraph, renumbered in the order given."""
        rows = []
        for u in vertices:
            r = self.rows[u]
            bits = 0
            for k, v in enumerate(vertices):
                if r >> v & 1:
                    bits |= 1 << k
            rows.append(bits)
        names = None if self.names is None else tuple(self.names[v] for v in vertices)
        return LoopedGraph(len(vertices), tuple(rows), names)

    def delete(self, removed: Iterable[int]) -> "LoopedGraph":
        gone = set(removed)
        return self.induced([v for v in range(self.n) if v not in gone])

    def relabel(self, perm: Sequence[int]) -> "LoopedGraph":
        """Graph whose vertex ``perm[v]`` plays the role of old vertex ``v``."""
        rows = [0] * self.n
        for v in range(self.n):
            r = 0
            for w in _bits(self.rows[v]):
                r |= 1 << perm[w]
            rows[perm[v]] = r
        names = None
        if self.names is not None:
            nm = [""] * self.n
            for v in range(self.n):
                nm[perm[v]] = self.names[v]
            names = tuple(nm)
        return LoopedGraph(self.n, tuple(rows), names)

    def with_rows(self, rows: Sequence[int]) -> "LoopedGraph":
        return LoopedGraph(self.n, tuple(rows), self.names)


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


# --------------------------------------------------------------------------
# local operations

def _lc_rows(rows: Sequence[int], v: int, keep_loops: bool) -> tuple[int, ...]:
    out = list(rows)
    nb = rows[v] & ~(1 << v)
    for u in _bits(nb):
        out[u] ^= (nb & ~(1 << u)) if keep_loops else nb
    return tuple(out)


def simple_lc(rows: Sequence[int], v: int) -> tuple[int, ...]:
    return _lc_rows(rows, v, True)


def apply_local_op(g: LoopedGraph, kind: str, site) -> LoopedGraph:
    """Apply one local operation.

    ``kind`` is ``simple-lc`` or ``nonsimple-lc`` (site: a vertex),
    ``loop-complement`` (site: a vertex or a collection of vertices) or
    ``pivot`` (site: a pair of adjacent vertices).
    """
    if kind == "loop-complement":
        verts = [site] if isinstance(site, int) else list(site)
        rows = list(g.rows)
        for v in verts:
            _check_vertex(g, v)
            rows[v] ^= 1 << v
        return g.with_rows(rows)
    if kind in ("simple-lc", "nonsimple-lc"):
        _check_vertex(g, site)
        if kind == "simple-lc" and not g.is_simple():
            raise PreconditionError("simple local complementation needs a simple graph")
        return g.with_rows(_lc_rows(g.rows, site, kind == "simple-lc"))
    if kind == "pivot":
        v, w = site
        _check_vertex(g, v)
        _check_vertex(g, w)
        if v == w or not g.adjacent(v, w):
            raise PreconditionError(f"pivot needs an edge, got ({v},{w})")
        if not g.is_simple():
            raise PreconditionError("pivot is defined here for simple graphs")
        rows = simple_lc(simple_lc(simple_lc(g.rows, v), w), v)
        return g.with_rows(rows)
    raise PreconditionError(f"unknown local operation {kind!r}")


def _check_vertex(g: LoopedGraph, v: int) -> None:
    if not isinstance(v, int) or not 0 <= v < g.n:
        raise PreconditionError(f"vertex {v!r} not in graph")


# --------------------------------------------------------------------------
# canonical labelling

@dataclass(frozen=True)
class CanonicalForm:
    """Isomorphism-invariant key plus the labelling that produced it.

    ``order[i]`` is the original vertex placed at position ``i``.
    """

    key: tuple
    order: tuple[int, ...]


def _refine(weights, colours: list[int]) -> list[int]:
    """Equitable refinement; colour numbers are assigned in sorted signature order."""
    n = len(colours)
    ncol = len(set(colours))
    while True:
        sigs = []
        for v in range(n):
            row = weights[v]
            nb = sorted((colours[u], row[u]) for u in range(n) if row[u] and u != v)
            sigs.append((colours[v], row[v], tuple(nb)))
        ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranking[s] for s in sigs]
        if len(ranking) == ncol:
            return new
        colours, ncol = new, len(ranking)


def _individualize(colours: list[int], w: int) -> list[int]:
    c = colours[w]
    raw = [2 * x + (1 if x == c and v != w else 0) for v, x in enumerate(colours)]
    ranking = {x: i for i, x in enumerate(sorted(set(raw)))}
    return [ranking[x] for x in raw]


def _orbit_reps(gens: list[tuple[int, ...]], fixed: Sequence[int], n: int) -> list[int]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        if all(g[f] == f for f in fixed):
            for x in range(n):
                a, b = find(x), find(g[x])
                if a != b:
                    parent[max(a, b)] = min(a, b)
    return [find(x) for x in range(n)]


def canonical_labeling(weights: Sequence[Sequence[int]],
                       colours: Sequence[int] | None = None) -> CanonicalForm:
    """Canonical form of a symmetric integer weight matrix.

    Two matrices receive equal keys exactly when some vertex permutation
    (respecting the optional initial colours) carries one onto the other.
    """
    n = len(weights)
    w = [tuple(r) for r in weights]
    start = _refine(w, list(colours) if colours is not None else [0] * n)
    best_key = None
    best_order = None
    gens: list[tuple[int, ...]] = []
    init_colours = tuple(sorted(start))

    def leaf(cols):
        nonlocal best_key, best_order
        order = sorted(range(n), key=cols.__getitem__)
        key = tuple(tuple(w[a][b] for b in order) for a in order)
        if best_key is None or key > best_key:
            best_key, best_order = key, order
        elif key == best_key:
            perm = [0] * n
            for a, b in zip(best_order, order):
                perm[a] = b
            gens.append(tuple(perm))

    def search(cols, prefix):
        counts: dict[int, int] = {}
        for c in cols:
            counts[c] = counts.get(c, 0) + 1
        target = next((c for c in sorted(counts) if counts[c] > 1), None)
        if target is None:
            leaf(cols)
            return
        cell = [v for v in range(n) if cols[v] == target]
        done: set[int] = set()
        for v in cell:
            orb = _orbit_reps(gens, prefix, n) if gens else list(range(n))
            if orb[v] in done:
                continue
            done.add(orb[v])
            search(_refine(w, _individualize(cols, v)), prefix + [v])

    search(start, [])
    return CanonicalForm((init_colours, best_key), tuple(best_order))


@lru_cache(maxsize=200_000)
def _graph_canon(n: int, rows: tuple[int, ...]) -> CanonicalForm:
    weights = [[r >> j & 1 for j in range(n)] for r in rows]
    cf = canonical_labeling(weights)
    order = cf.order
    packed = []
    for a in order:
        r = rows[a]
        packed.append(sum(1 << k for k, b in enumerate(order) if r >> b & 1))
    return CanonicalForm((n, tuple(packed)), order)


def canonical_form(g: LoopedGraph) -> CanonicalForm:
    """Canonical form of ``g``; loops take part in the key."""
    return _graph_canon(g.n, g.rows)


def canonical_graph(g: LoopedGraph) -> LoopedGraph:
    n, packed = canonical_form(g).key
    return LoopedGraph(n, packed)


def find_isomorphism(g: LoopedGraph, h: LoopedGraph) -> list[int] | None:
    """A map ``phi`` with ``h == g.relabel(phi)`` (names ignored), or ``None``."""
    if g.n != h.n:
        return None
    cg, ch = canonical_form(g), canonical_form(h)
    if cg.key != ch.key:
        return None
    phi = [0] * g.n
    for a, b in zip(cg.order, ch.order):
        phi[a] = b
    return phi


# --------------------------------------------------------------------------
# local equivalence

def local_equivalence_orbit(g: LoopedGraph, mode: str = "labeled", looped: bool = False,
                            cap: int = DEFAULT_ORBIT_CAP) -> list[LoopedGraph]:
    """Closure of ``g`` under local complementation, in discovery order.

    The default closes a simple graph under simple local complementation.
    With ``looped=True`` the generators are non-simple local
    complementation and single-vertex loop complementation.  In
    ``up-to-iso`` mode one representative per isomorphism class is kept.
    """
    if mode not in ("labeled", "up-to-iso"):
        raise PreconditionError(f"unknown orbit mode {mode!r}")
    if not looped and not g.is_simple():
        raise PreconditionError("the simple orbit needs a simple graph")
    n = g.n

    def moves(rows):
        for v in range(n):
            yield _lc_rows(rows, v, not looped)
        if looped:
            for v in range(n):
                r = list(rows)
                r[v] ^= 1 << v
                yield tuple(r)

    if mode == "labeled":
        seen = {g.rows}
        keyfn = None
    else:
        seen = {_graph_canon(n, g.rows).key}
        keyfn = lambda rows: _graph_canon(n, rows).key  # noqa: E731
    out = [g.rows]
    q = deque([g.rows])
    while q:
        rows = q.popleft()
        for nxt in moves(rows):
            k = nxt if keyfn is None else keyfn(nxt)
            if k in seen:
                continue
            seen.add(k)
            if len(seen) > cap:
                raise ResourceGuardError(f"local-equivalence orbit exceeds cap {cap}")
            out.append(nxt)
            q.append(nxt)
    return [g.with_rows(r) for r in out]


def orbit_keys(g: LoopedGraph, cap: int = DEFAULT_ORBIT_CAP) -> frozenset:
    """Canonical keys of every isomorphism class locally equivalent to ``g``."""
    return _orbit_keys(g.n, g.rows, cap)


@lru_cache(maxsize=4096)
def _orbit_keys(n: int, rows: tuple[int, ...], cap: int) -> frozenset:
    reps = local_equivalence_orbit(LoopedGraph(n, rows), "up-to-iso", cap=cap)
    return frozenset(_graph_canon(n, r.rows).key for r in reps)


def lc_path(start: LoopedGraph, goal_key, cap: int = DEFAULT_ORBIT_CAP) -> list[int] | None:
    """Shortest list of vertices whose simple local complementations turn
    ``start`` into a graph with canonical key ``goal_key``."""
    n = start.n
    parent = {start.rows: None}
    q = deque([start.rows])
    while q:
        rows = q.popleft()
        if _graph_canon(n, rows).key == goal_key:
            path = []
            while parent[rows] is not None:
                rows, v = parent[rows]
                path.append(v)
            return path[::-1]
        for v in range(n):
            nxt = simple_lc(rows, v)
            if nxt not in parent:
                parent[nxt] = (rows, v)
                if len(parent) > cap:
                    raise ResourceGuardError(f"local-equivalence orbit exceeds cap {cap}")
                q.append(nxt)
    return None


# --------------------------------------------------------------------------
# vertex-minors

@dataclass(frozen=True)
class VertexMinorWitness:
    """Operations on the host taking it to a copy of the target.

    ``ops`` uses host vertex indices throughout: ``("lc", v)`` and
    ``("delete", v)``.  After replay, the surviving host vertices (in
    increasing order) form a graph that ``mapping`` carries onto the target:
    surviving vertex ``kept[i]`` becomes target vertex ``mapping[i]``.
    """

    ops: tuple[tuple, ...]
    kept: tuple[int, ...]
    mapping: tuple[int, ...]


def replay_ops(g: LoopedGraph, ops: Iterable[tuple]) -> tuple[LoopedGraph, list[int]]:
    """Replay ``("lc", v)`` / ``("pivot", v, w)`` / ``("delete", v)`` steps.

    Vertices keep their host indices; returns the induced graph on the
    survivors together with the survivor list.
    """
    rows = list(g.rows)
    alive = set(range(g.n))
    for op in ops:
        if op[0] == "lc":
            if op[1] not in alive:
                raise PreconditionError(f"vertex {op[1]} already deleted")
            rows = list(simple_lc(rows, op[1]))
        elif op[0] == "pivot":
            v, w = op[1], op[2]
            if not rows[v] >> w & 1:
                raise PreconditionError("pivot on a non-edge")
            rows = list(simple_lc(simple_lc(simple_lc(rows, v), w), v))
        elif op[0] == "delete":
            v = op[1]
            alive.discard(v)
            for u in range(g.n):
                rows[u] &= ~(1 << v)
            rows[v] = 0
        else:
            raise PreconditionError(f"unknown op {op!r}")
    kept = sorted(alive)
    return LoopedGraph(g.n, tuple(rows), g.names).induced(kept), kept


def find_vertex_minor(g: LoopedGraph, h: LoopedGraph,
                      cap: int = DEFAULT_ORBIT_CAP) -> VertexMinorWitness | None:
    """Search for ``h`` as a vertex-minor of ``g``.

    Each surplus vertex ``v`` is removed in one of three ways: plain
    deletion, deletion after local complementation at ``v``, or deletion
    after pivoting on an edge ``vw``.  Every vertex-minor arises this way up
    to local equivalence of the result, so it suffices to compare the
    survivors against the local-equivalence class of ``h``.
    """
    if not (g.is_simple() and h.is_simple()):
        raise PreconditionError("vertex-minor containment is tested on simple graphs")
    k, n = h.n, g.n
    if k > n:
        return None
    targets = orbit_keys(h, cap)
    goal = _graph_canon(k, h.rows).key
    seen: set = set()

    def finish(rows, alive, ops):
        kept = sorted(alive)
        sub = LoopedGraph(n, tuple(rows)).induced(kept)
        if _graph_canon(k, sub.rows).key not in targets:
            return None
        path = lc_path(sub, goal, cap)
        ops = list(ops) + [("lc", kept[i]) for i in path]
        final, _ = replay_ops(g, ops)
        phi = find_isomorphism(final, h)
        return VertexMinorWitness(tuple(ops), tuple(kept), tuple(phi))

    def remove(rows, v):
        out = list(rows)
        for u in _bits(out[v]):
            out[u] &= ~(1 << v)
        out[v] = 0
        return out

    for removed in itertools.combinations(range(n), n - k):
        alive = frozenset(set(range(n)) - set(removed))
        stack = [(tuple(g.rows), 0, ())]
        while stack:
            rows, i, ops = stack.pop()
            if i == len(removed):
                hit = finish(rows, alive, ops)
                if hit is not None:
                    return hit
                continue
            state = (rows, removed[i:])
            if state in seen:
                continue
            seen.add(state)
            v = removed[i]
            nb = rows[v] & ~(1 << v)
            choices = [((), rows)]
            if nb:
                choices.append(((("lc", v),), simple_lc(rows, v)))
                w = (nb & -nb).bit_length() - 1
                piv = simple_lc(simple_lc(simple_lc(rows, v), w), v)
                choices.append(((("pivot", v, w),), piv))
            for pre, r in reversed(choices):
                stack.append((tuple(remove(r, v)), i + 1, ops + pre + (("delete", v),)))
    return None


def is_vertex_minor(g: LoopedGraph, h: LoopedGraph, cap: int = DEFAULT_ORBIT_CAP) -> bool:
    return find_vertex_minor(g, h, cap) is not None


def is_vertex_minor_by_orbit(g: LoopedGraph, h: LoopedGraph,
                             cap: int = DEFAULT_ORBIT_CAP) -> bool:
    """Reference test: scan induced subgraphs of the whole labelled orbit."""
    if h.n > g.n:
        return False
    goal = _graph_canon(h.n, h.rows).key
    for member in local_equivalence_orbit(g, "labeled", cap=cap):
        for sub in itertools.combinations(range(g.n), h.n):
            if canonical_form(member.induced(sub)).key == goal:
                return True
    return False


# --------------------------------------------------------------------------
# text format

def parse_graph(text: str) -> LoopedGraph:
    """Parse ``graph <name> <n>`` followed by ``e <u> <v>`` lines."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty graph payload")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "graph":
        raise ParseError(f"bad graph header: {lines[0]!r}")
    try:
        n = int(head[2])
    except ValueError:
        raise ParseError("vertex count must be an integer") from None
    edges = []
    names = None
    for ln in lines[1:]:
        parts = ln.split()
        if parts[0] == "names" and len(parts) == n + 1:
            names = parts[1:]
            continue
        if parts[0] != "e" or len(parts) != 3:
            raise ParseError(f"bad edge line: {ln!r}")
        try:
            u, v = int(parts[1]), int(parts[2])
        except ValueError:
            raise ParseError(f"bad edge line: {ln!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"edge ({u},{v}) out of range")
        edges.append((u, v))
    return LoopedGraph.from_edges(n, edges, names)


def format_graph(g: LoopedGraph, name: str = "G") -> str:
    out = [f"graph {name} {g.n}"]
    if g.names is not None:
        out.append("names " + " ".join(g.names))
    out.extend(f"e {u} {v}" for u, v in g.edges())
    return "\n".join(out) + "\n"
