"""4-regular multigraphs at half-edge resolution.

Edge ``e = (u, v)`` owns half-edge ``2e`` at ``u`` and ``2e + 1`` at ``v``;
the mate of half-edge ``h`` is ``h ^ 1``.  A transition at a vertex pairs
its four half-edges; with the incident half-edges sorted as ``a < b < c < d``
the transitions are numbered ``0: {ab, cd}``, ``1: {ac, bd}``, ``2: {ad, bc}``.
A circuit partition (and so an Euler system) is one transition index per
vertex.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .algebra import Gf2Matrix, XorBasis
from .errors import ParseError, PreconditionError, ResourceGuardError
from .graphs import LoopedGraph, canonical_labeling

__all__ = [
    "FourRegularGraph",
    "EulerSystem",
    "Circuit",
    "TouchGraph",
    "RotationSystem",
    "transition_pairs",
    "trace_circuits",
    "euler_systems",
    "euler_system_from_dow",
    "kappa_transform",
    "kappa_transform_word",
    "kappa_orbit",
    "interlacement",
    "interlacement_of_words",
    "transition_labels",
    "transition_matrix",
    "touch_graph",
    "cocycle_space",
    "circuit_transitions",
    "detach",
    "detach_with_map",
    "enumerate_four_regular",
    "boundary_trace",
    "random_planar_rotation",
    "parse_dow",
    "format_dow",
    "canonical_word",
    "natural_key",
]

LETTERS = "pcs"


def natural_key(token: str):
    """Sort numerals numerically and before other tokens."""
    return (0, int(token), "") if token.isdigit() else (1, 0, token)


@dataclass(frozen=True)
class FourRegularGraph:
    """A multigraph in which every vertex has degree four (loops count twice)."""

    n: int
    edges: tuple[tuple[int, int], ...]
    names: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        deg = [0] * self.n
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise PreconditionError(f"edge ({u},{v}) out of range")
            deg[u] += 1
            deg[v] += 1
        bad = [v for v in range(self.n) if deg[v] != 4]
        if bad:
            raise PreconditionError(f"vertices {bad} do not have degree 4")
        if self.names is not None and (len(self.names) != self.n or len(set(self.names)) != self.n):
            raise PreconditionError("vertex names must be distinct, one per vertex")

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        inc = [[] for _ in range(self.n)]
        for e, (u, v) in enumerate(self.edges):
            inc[u].append(2 * e)
            inc[v].append(2 * e + 1)
        return tuple(tuple(sorted(x)) for x in inc)

    def vertex_of(self, h: int) -> int:
        return self.edges[h >> 1][h & 1]

    def label(self, v: int) -> str:
        return self.names[v] if self.names is not None else str(v)

    def index(self, name: str) -> int:
        if self.names is None:
            return int(name)
        return self.names.index(name)

    def multiplicities(self) -> list[list[int]]:
        """Symmetric edge-count matrix; the diagonal counts loops."""
        m = [[0] * self.n for _ in range(self.n)]
        for u, v in self.edges:
            m[u][v] += 1
            if u != v:
                m[v][u] += 1
        return m

    def is_simple(self) -> bool:
        seen = set()
        for u, v in self.edges:
            key = (min(u, v), max(u, v))
            if u == v or key in seen:
                return False
            seen.add(key)
        return True

    def components(self) -> list[list[int]]:
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            parent[find(u)] = find(v)
        groups: dict[int, list[int]] = {}
        for v in range(self.n):
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values())

    def canonical_key(self) -> tuple:
        return canonical_labeling(self.multiplicities()).key

    def has_triangle(self) -> bool:
        """True when three distinct vertices are pairwise adjacent."""
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            if u != v:
                adj[u].add(v)
                adj[v].add(u)
        return any(adj[u] & adj[v] for u in range(self.n) for v in adj[u] if u < v)

    def has_circuit_of_length(self, k: int) -> bool:
        """Whether some circuit (closed trail, no repeated half-edges) has length ``k``."""
        inc = self.incidence

        def walk(start, v, used, length):
            for h in inc[v]:
                e = h >> 1
                if used >> e & 1:
                    continue
                w = self.vertex_of(h ^ 1)
                if length + 1 == k:
                    if w == start:
                        return True
                    continue
                if walk(start, w, used | 1 << e, length + 1):
                    return True
            return False

        return any(walk(s, s, 0, 0) for s in range(self.n))


def transition_pairs(f: FourRegularGraph, v: int, t: int) -> tuple[tuple[int, int], tuple[int, int]]:
    a, b, c, d = f.incidence[v]
    return ((a, b), (c, d)) if t == 0 else ((a, c), (b, d)) if t == 1 else ((a, d), (b, c))


def transition_index(f: FourRegularGraph, v: int, h1: int, h2: int) -> int:
    """Index of the transition at ``v`` containing the single transition ``{h1, h2}``."""
    pair = {h1, h2}
    for t in range(3):
        if any(set(p) == pair for p in transition_pairs(f, v, t)):
            return t
    raise PreconditionError(f"half-edges {h1},{h2} are not a single transition at {v}")


# A circuit is a tuple of (vertex, in-half-edge, out-half-edge) steps.
Circuit = tuple


def _partner_table(f: FourRegularGraph, choice: Sequence[int]) -> dict[int, int]:
    partner = {}
    for v in range(f.n):
        for a, b in transition_pairs(f, v, choice[v]):
            partner[a] = b
            partner[b] = a
    return partner


def trace_circuits(f: FourRegularGraph, choice: Sequence[int]) -> list[Circuit]:
    """Circuits of the circuit partition that uses transition ``choice[v]`` at each ``v``.

    Each circuit starts from the lowest unused half-edge, leaving its vertex.
    """
    if len(choice) != f.n:
        raise PreconditionError("one transition per vertex is required")
    partner = _partner_table(f, choice)
    used = [False] * (2 * len(f.edges))
    out = []
    for h0 in range(2 * len(f.edges)):
        if used[h0]:
            continue
        start_v = f.vertex_of(h0)
        steps = [(start_v, partner[h0], h0)]
        used[h0] = used[partner[h0]] = True
        cur = h0
        while True:
            arrive = cur ^ 1
            nxt = partner[arrive]
            if nxt == h0:
                break
            steps.append((f.vertex_of(arrive), arrive, nxt))
            used[arrive] = used[nxt] = True
            cur = nxt
        out.append(tuple(steps))
    return out


def circuit_transitions(f: FourRegularGraph, circuit: Circuit) -> set[tuple[int, int]]:
    """The transitions ``(vertex, index)`` involved in a circuit."""
    return {(v, transition_index(f, v, a, b)) for v, a, b in circuit}


def canonical_word(word: Sequence[str]) -> tuple[str, ...]:
    """Least rotation or reflection of a cyclic word."""
    w = list(word)
    cands = []
    for seq in (w, w[::-1]):
        for i in range(len(seq)):
            cands.append(tuple(seq[i:] + seq[:i]))
    return min(cands, key=lambda t: [natural_key(x) for x in t]) if cands else ()


@dataclass(frozen=True)
class EulerSystem:
    """One Euler circuit per component, identified by its transitions."""

    graph: FourRegularGraph
    choice: tuple[int, ...]
    circuits: tuple[Circuit, ...] = field(compare=False)

    @classmethod
    def from_choice(cls, f: FourRegularGraph, choice: Sequence[int]) -> "EulerSystem":
        circuits = trace_circuits(f, choice)
        if len(circuits) != len(f.components()):
            raise PreconditionError("transitions do not give one circuit per component")
        return cls(f, tuple(choice), tuple(circuits))

    def words(self) -> list[list[str]]:
        return [[self.graph.label(v) for v, _, _ in c] for c in self.circuits]

    def canonical_words(self) -> list[tuple[str, ...]]:
        return sorted(canonical_word(w) for w in self.words())

    def dow(self) -> str:
        return "\n".join(" ".join(w) for w in self.words())

    def occurrences(self) -> dict[int, list[tuple[int, int, int, int]]]:
        """Per vertex: (circuit, position, in, out) for its two passages."""
        occ: dict[int, list] = {v: [] for v in range(self.graph.n)}
        for ci, c in enumerate(self.circuits):
            for pos, (v, a, b) in enumerate(c):
                occ[v].append((ci, pos, a, b))
        return occ


def euler_systems(f: FourRegularGraph, mode: str = "all") -> list[EulerSystem]:
    """Euler systems of ``f``.

    ``mode="one"`` returns a single system found by splicing circuits
    together; ``mode="all"`` keeps every transition choice that yields one
    circuit per component.
    """
    ncomp = len(f.components())
    if mode == "one":
        return [_one_euler_system(f)]
    if mode != "all":
        raise PreconditionError(f"unknown mode {mode!r}")
    out = []
    for choice in itertools.product(range(3), repeat=f.n):
        circuits = trace_circuits(f, choice)
        if len(circuits) == ncomp:
            out.append(EulerSystem(f, tuple(choice), tuple(circuits)))
    return out


def _one_euler_system(f: FourRegularGraph) -> EulerSystem:
    # Start anywhere; while a vertex is touched by two circuits, switching
    # its transition to one of the other two merges them.
    choice = [0] * f.n
    while True:
        circuits = trace_circuits(f, choice)
        where = {}
        merged = False
        for ci, c in enumerate(circuits):
            for v, _, _ in c:
                where.setdefault(v, set()).add(ci)
        for v in range(f.n):
            if len(where[v]) == 2:
                for t in range(3):
                    if t != choice[v]:
                        trial = choice.copy()
                        trial[v] = t
                        if len(trace_circuits(f, trial)) < len(circuits):
                            choice = trial
                            merged = True
                            break
                break
        if not merged:
            return EulerSystem.from_choice(f, choice)


def euler_system_from_dow(words: Sequence[Sequence[str]],
                          order: Sequence[str] | None = None) -> EulerSystem:
    """Build ``(F, C)`` from double occurrence words, one per component.

    Edge ``i`` of a word runs from its ``i``-th letter to the next one.
    Vertices are numbered by ``order`` (default: natural sort of the tokens).
    """
    tokens = [t for w in words for t in w]
    counts: dict[str, int] = {}
    for t in tokens:
        counts[t] = counts.get(t, 0) + 1
    if any(c != 2 for c in counts.values()):
        raise ParseError("every letter must occur exactly twice")
    for i, w in enumerate(words):
        for j, w2 in enumerate(words):
            if i < j and set(w) & set(w2):
                raise ParseError("component words must use disjoint letters")
    names = list(order) if order is not None else sorted(counts, key=natural_key)
    if sorted(names) != sorted(counts):
        raise ParseError("vertex order does not match the letters of the words")
    idx = {name: i for i, name in enumerate(names)}
    edges = []
    firsts = []
    for w in words:
        firsts.append(len(edges))
        m = len(w)
        for i in range(m):
            edges.append((idx[w[i]], idx[w[(i + 1) % m]]))
    f = FourRegularGraph(len(names), tuple(edges), tuple(names))
    choice = [0] * f.n
    for w, base in zip(words, firsts):
        m = len(w)
        for i in range(m):
            v = idx[w[i]]
            h_in = 2 * (base + (i - 1) % m) + 1
            h_out = 2 * (base + i)
            choice[v] = transition_index(f, v, h_in, h_out)
    return EulerSystem.from_choice(f, choice)


# --------------------------------------------------------------------------
# transitions relative to an Euler system

def transition_labels(c: EulerSystem) -> list[dict[str, int]]:
    """For each vertex, the transition index labelled ``p``, ``c`` and ``s``.

    ``p`` is used by the system; ``c`` pairs each in-half-edge with the other
    passage's out-half-edge (consistent with the orientation); ``s`` pairs
    the two in-half-edges (inconsistent).
    """
    f = c.graph
    out = []
    occ = c.occurrences()
    for v in range(f.n):
        (_, _, i1, o1), (_, _, i2, o2) = occ[v]
        out.append({
            "p": transition_index(f, v, i1, o1),
            "c": transition_index(f, v, i1, o2),
            "s": transition_index(f, v, i1, i2),
        })
    return out


def partition_letters(c: EulerSystem, p: Sequence[int]) -> str:
    """The ``pcs`` string naming circuit partition ``p`` relative to ``c``."""
    labels = transition_labels(c)
    inv = [{t: k for k, t in lab.items()} for lab in labels]
    return "".join(inv[v][p[v]] for v in range(len(p)))


def partition_from_letters(c: EulerSystem, letters: str) -> tuple[int, ...]:
    labels = transition_labels(c)
    if len(letters) != len(labels) or any(x not in LETTERS for x in letters):
        raise PreconditionError(f"bad partition string {letters!r}")
    return tuple(labels[v][x] for v, x in enumerate(letters))


def interlacement(c: EulerSystem) -> LoopedGraph:
    """Interlacement graph: two vertices are adjacent when they alternate."""
    f = c.graph
    rows = [0] * f.n
    for circ in c.circuits:
        pos: dict[int, list[int]] = {}
        for i, (v, _, _) in enumerate(circ):
            pos.setdefault(v, []).append(i)
        verts = list(pos)
        for x in range(len(verts)):
            v = verts[x]
            a, b = pos[v]
            for w in verts[x + 1:]:
                inside = sum(a < q < b for q in pos[w])
                if inside == 1:
                    rows[v] |= 1 << w
                    rows[w] |= 1 << v
    return LoopedGraph(f.n, tuple(rows), f.names)


def interlacement_of_words(words: Sequence[Sequence[str]],
                           order: Sequence[str] | None = None) -> LoopedGraph:
    return interlacement(euler_system_from_dow(words, order))


def kappa_transform(c: EulerSystem, v: int) -> EulerSystem:
    """The system that follows ``psi_C(v)`` at ``v`` and agrees with ``c`` elsewhere."""
    if not 0 <= v < c.graph.n:
        raise PreconditionError(f"unknown vertex {v!r}")
    choice = list(c.choice)
    choice[v] = transition_labels(c)[v]["s"]
    return EulerSystem.from_choice(c.graph, choice)


def kappa_transform_word(word: Sequence[str], v: str) -> list[str]:
    """Reverse the segment strictly between the two occurrences of ``v``."""
    idx = [i for i, x in enumerate(word) if x == v]
    if len(idx) != 2:
        raise PreconditionError(f"{v!r} does not occur twice")
    a, b = idx
    w = list(word)
    w[a + 1:b] = w[a + 1:b][::-1]
    return w


def kappa_orbit(c: EulerSystem) -> set[tuple[int, ...]]:
    """Transition choices of all systems reachable by kappa-transformations."""
    seen = {c.choice}
    stack = [c]
    while stack:
        cur = stack.pop()
        for v in range(cur.graph.n):
            nxt = kappa_transform(cur, v)
            if nxt.choice not in seen:
                seen.add(nxt.choice)
                stack.append(nxt)
    return seen


def transition_matrix(c: EulerSystem, p: Sequence[int]) -> Gf2Matrix:
    """Columns of IAS(I(C)) for the transitions of circuit partition ``p``."""
    if len(p) != c.graph.n:
        raise PreconditionError("partition does not match the graph")
    g = interlacement(c)
    cols = []
    for v, x in enumerate(partition_letters(c, p)):
        a = g.rows[v]
        cols.append(1 << v if x == "p" else a if x == "c" else a ^ (1 << v))
    return Gf2Matrix.from_columns(cols, g.n)


@dataclass(frozen=True)
class TouchGraph:
    """Touch-graph of a circuit partition: circuits as vertices, an edge per vertex of F."""

    circuits: tuple[Circuit, ...]
    edges: tuple[tuple[int, int], ...]  # edges[v] joins the circuits through v

    @property
    def order(self) -> int:
        return len(self.circuits)

    def cocycles(self) -> list[int]:
        """Vertex cocycles as bitmasks over V(F); loops are left out."""
        out = [0] * len(self.circuits)
        for v, (a, b) in enumerate(self.edges):
            if a != b:
                out[a] |= 1 << v
                out[b] |= 1 << v
        return out


def touch_graph(f: FourRegularGraph, p: Sequence[int]) -> TouchGraph:
    circuits = trace_circuits(f, p)
    where: dict[int, list[int]] = {v: [] for v in range(f.n)}
    for ci, circ in enumerate(circuits):
        for v, _, _ in circ:
            where[v].append(ci)
    return TouchGraph(tuple(circuits), tuple(tuple(where[v]) for v in range(f.n)))


def cocycle_space(tg: TouchGraph) -> XorBasis:
    return XorBasis(tg.cocycles())


# --------------------------------------------------------------------------
# detachment

def detach_with_map(f: FourRegularGraph, v: int, t: int) -> tuple[FourRegularGraph, dict[int, int]]:
    """Detach ``v`` along transition ``t``.

    Returns the new graph and a map from surviving old half-edges (those not
    at ``v``) to half-edges of the new graph.
    """
    if not 0 <= v < f.n or t not in (0, 1, 2):
        raise PreconditionError("bad vertex or transition")
    pairs = transition_pairs(f, v, t)
    partner = {}
    for a, b in pairs:
        partner[a] = b
        partner[b] = a
    at_v = set(f.incidence[v])
    newidx = [u - (u > v) for u in range(f.n)]
    new_edges: list[tuple[int, int]] = []
    hmap: dict[int, int] = {}
    for e, (a, b) in enumerate(f.edges):
        if a != v and b != v:
            hmap[2 * e] = 2 * len(new_edges)
            hmap[2 * e + 1] = 2 * len(new_edges) + 1
            new_edges.append((newidx[a], newidx[b]))
    done: set[int] = set()
    for e, (a, b) in enumerate(f.edges):
        for side in (0, 1):
            h = 2 * e + side
            if h in at_v or (h ^ 1) not in at_v or h in done:
                continue
            # h is an outside end of an edge entering v; follow the chain through v
            cur = h ^ 1
            while True:
                far = partner[cur] ^ 1
                if far not in at_v:
                    break
                cur = far  # a loop at v: keep following the chain
            done.add(h)
            done.add(far)
            hmap[h] = 2 * len(new_edges)
            hmap[far] = 2 * len(new_edges) + 1
            new_edges.append((newidx[f.vertex_of(h)], newidx[f.vertex_of(far)]))
    names = None if f.names is None else tuple(x for i, x in enumerate(f.names) if i != v)
    return FourRegularGraph(f.n - 1, tuple(new_edges), names), hmap


def detach(f: FourRegularGraph, v: int, t: int) -> FourRegularGraph:
    return detach_with_map(f, v, t)[0]


# --------------------------------------------------------------------------
# enumeration

ENUMERATION_LIMIT = 10


def enumerate_four_regular(n: int, simple_only: bool = True) -> list[FourRegularGraph]:
    """All 4-regular graphs on ``n`` vertices up to isomorphism.

    Vertices are filled in order; at each step candidate neighbours with
    identical current adjacency are interchangeable, so multiplicities
    within such a class are chosen non-increasing.  Survivors are
    deduplicated by canonical form and sorted by key.
    """
    if n > ENUMERATION_LIMIT:
        raise ResourceGuardError(f"enumeration is limited to n <= {ENUMERATION_LIMIT}")
    if n < 0:
        raise PreconditionError("n must be non-negative")
    found: dict[tuple, FourRegularGraph] = {}
    mult = [[0] * n for _ in range(n)]
    deg = [0] * n
    maxm = 1 if simple_only else 4

    def emit():
        edges = []
        for i in range(n):
            edges.extend([(i, i)] * mult[i][i])
            for j in range(i + 1, n):
                edges.extend([(i, j)] * mult[i][j])
        f = FourRegularGraph(n, tuple(edges))
        key = f.canonical_key()
        found.setdefault(key, f)

    def fill(i):
        if i == n:
            emit()
            return
        loops = [0] if simple_only else range((4 - deg[i]) // 2, -1, -1)
        for L in loops:
            need = 4 - deg[i] - 2 * L
            mult[i][i] = L
            later = list(range(i + 1, n))
            classes: dict[tuple, list[int]] = {}
            for j in later:
                classes.setdefault(tuple(mult[j][:i]), []).append(j)
            groups = list(classes.values())
            for assign in _distribute(need, groups, deg, maxm):
                for j, m in assign:
                    mult[i][j] = mult[j][i] = m
                    deg[j] += m
                deg[i] = 4
                fill(i + 1)
                for j, m in assign:
                    mult[i][j] = mult[j][i] = 0
                    deg[j] -= m
                deg[i] = 4 - need - 2 * L
            mult[i][i] = 0

    fill(0)
    return [found[k] for k in sorted(found)]


def _distribute(need, groups, deg, maxm):
    """Ways to spread ``need`` edge-ends over later vertices, non-increasing per class."""
    flat = [(j, gi) for gi, g in enumerate(groups) for j in g]

    def rec(k, left, prev_in_group, acc):
        if left == 0:
            yield list(acc)
            return
        if k == len(flat):
            return
        j, gi = flat[k]
        cap = min(maxm, 4 - deg[j], left)
        if k > 0 and flat[k - 1][1] == gi:
            cap = min(cap, prev_in_group)
        for m in range(cap, -1, -1):
            if m:
                acc.append((j, m))
            yield from rec(k + 1, left - m, m, acc)
            if m:
                acc.pop()

    yield from rec(0, need, 4, [])


# --------------------------------------------------------------------------
# rotation systems and the boundary trace

@dataclass(frozen=True)
class RotationSystem:
    """A multigraph with a cyclic order of half-edges around each vertex."""

    n: int
    edges: tuple[tuple[int, int], ...]
    rotation: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        inc = [[] for _ in range(self.n)]
        for e, (u, v) in enumerate(self.edges):
            inc[u].append(2 * e)
            inc[v].append(2 * e + 1)
        if len(self.rotation) != self.n or any(
                sorted(r) != sorted(i) for r, i in zip(self.rotation, inc)):
            raise PreconditionError("rotation does not list each vertex's half-edges once")

    def vertex_of(self, h: int) -> int:
        return self.edges[h >> 1][h & 1]

    def faces(self) -> list[list[int]]:
        """Face boundaries as lists of darts (a dart is a half-edge leaving its vertex)."""
        pos = {}
        for v, r in enumerate(self.rotation):
            for i, h in enumerate(r):
                pos[h] = (v, i)
        seen = set()
        out = []
        for d0 in range(2 * len(self.edges)):
            if d0 in seen:
                continue
            face = []
            d = d0
            while d not in seen:
                seen.add(d)
                face.append(d)
                w, i = pos[d ^ 1]
                r = self.rotation[w]
                d = r[(i + 1) % len(r)]
            out.append(face)
        return out

    def is_connected(self) -> bool:
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            parent[find(u)] = find(v)
        return len({find(v) for v in range(self.n)}) <= 1

    def is_planar(self) -> bool:
        """Euler characteristic test; assumes a connected graph."""
        nf = len(self.faces()) if self.edges else 1
        return self.n - len(self.edges) + nf == 2


def boundary_trace(h: RotationSystem, tree: Iterable[int]) -> list[int]:
    """Double occurrence word over E(h) read around a thin neighbourhood of ``tree``.

    Walking the boundary of the tree neighbourhood, a tree edge is crossed
    to its far end and a non-tree edge is only touched; each emits its edge
    index.  The result is checked against three properties: every edge
    appears twice, the interlacement graph is bipartite between tree and
    non-tree edges, and the closed neighbourhood of each non-tree edge is its
    fundamental circuit.
    """
    tree = set(tree)
    if not h.is_connected() or not h.is_planar():
        raise PreconditionError("boundary trace needs a connected plane rotation system")
    if len(tree) != h.n - 1 or not _is_spanning_tree(h, tree):
        raise PreconditionError("tree is not a spanning tree")
    if not h.edges:
        return []
    pos = {}
    for v, r in enumerate(h.rotation):
        for i, x in enumerate(r):
            pos[x] = (v, i)
    start_v = h.vertex_of(0)
    state = (start_v, (pos[0][1] - 1) % len(h.rotation[start_v]))
    word = []
    cur = state
    while True:
        v, i = cur
        r = h.rotation[v]
        j = (i + 1) % len(r)
        x = r[j]
        word.append(x >> 1)
        cur = pos[x ^ 1] if (x >> 1) in tree else (v, j)
        if cur == state:
            break
    _check_boundary_word(h, tree, word)
    return word


def _is_spanning_tree(h: RotationSystem, tree: set[int]) -> bool:
    parent = list(range(h.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in tree:
        if not 0 <= e < len(h.edges):
            return False
        a, b = find(h.edges[e][0]), find(h.edges[e][1])
        if a == b:
            return False
        parent[a] = b
    return True


def fundamental_circuit(h: RotationSystem, tree: set[int], e: int) -> set[int]:
    """Edge ``e`` together with the tree path joining its ends."""
    u, v = h.edges[e]
    adj: dict[int, list[tuple[int, int]]] = {x: [] for x in range(h.n)}
    for t in tree:
        a, b = h.edges[t]
        adj[a].append((b, t))
        adj[b].append((a, t))
    prev = {u: None}
    stack = [u]
    while stack:
        x = stack.pop()
        for y, t in adj[x]:
            if y not in prev:
                prev[y] = (x, t)
                stack.append(y)
    path = {e}
    x = v
    while prev[x] is not None:
        x, t = prev[x]
        path.add(t)
    return path


def _check_boundary_word(h: RotationSystem, tree: set[int], word: list[int]) -> None:
    counts = [0] * len(h.edges)
    for x in word:
        counts[x] += 1
    if any(c != 2 for c in counts):
        raise AssertionError("boundary word is not a double occurrence word")
    g = interlacement_of_words([[str(x) for x in word]], [str(e) for e in range(len(h.edges))])
    for a in range(g.n):
        for b in g.neighbors(a):
            if (a in tree) == (b in tree):
                raise AssertionError("boundary interlacement is not bipartite by tree edges")
    for e in range(len(h.edges)):
        if e in tree:
            continue
        closed = set(g.neighbors(e)) | {e}
        if closed != fundamental_circuit(h, tree, e):
            raise AssertionError("chord neighbourhood differs from its fundamental circuit")


def random_planar_rotation(rng: random.Random, n: int, extra: int) -> tuple[RotationSystem, set[int]]:
    """Random plane multigraph with a spanning tree.

    Starts from a random tree with a random rotation, then adds ``extra``
    edges, each drawn inside a face so planarity is kept.
    """
    if n < 2:
        raise PreconditionError("need at least two vertices")
    edges = [(rng.randrange(v), v) for v in range(1, n)]
    rot: list[list[int]] = [[] for _ in range(n)]
    for e, (u, v) in enumerate(edges):
        for h, x in ((2 * e, u), (2 * e + 1, v)):
            rot[x].insert(rng.randrange(len(rot[x]) + 1), h)
    tree = set(range(n - 1))
    for _ in range(extra):
        rs = RotationSystem(n, tuple(edges), tuple(tuple(r) for r in rot))
        faces = rs.faces()
        face = rng.choice(faces)
        # the corner after incoming half-edge d ^ 1 at the head of dart d
        c1, c2 = (rng.randrange(len(face)) for _ in range(2))
        a1, a2 = face[c1] ^ 1, face[c2] ^ 1
        w1, w2 = rs.vertex_of(a1), rs.vertex_of(a2)
        e = len(edges)
        edges.append((w1, w2))
        if a1 == a2:
            i = rot[w1].index(a1)
            rot[w1][i + 1:i + 1] = [2 * e, 2 * e + 1]
        else:
            i = rot[w1].index(a1)
            rot[w1].insert(i + 1, 2 * e)
            i = rot[w2].index(a2)
            rot[w2].insert(i + 1, 2 * e + 1)
    return RotationSystem(n, tuple(edges), tuple(tuple(r) for r in rot)), tree


# --------------------------------------------------------------------------
# text formats

def parse_dow(text: str) -> list[list[str]]:
    words = []
    for ln in text.splitlines():
        ln = ln.split("#", 1)[0].strip()
        if ln:
            words.append(ln.split())
    if not words:
        raise ParseError("empty DOW payload")
    counts: dict[str, int] = {}
    for t in (x for w in words for x in w):
        counts[t] = counts.get(t, 0) + 1
    bad = sorted(t for t, c in counts.items() if c != 2)
    if bad:
        raise ParseError(f"letters not occurring exactly twice: {bad}")
    return words


def format_dow(words: Sequence[Sequence[str]]) -> str:
    return "\n".join(" ".join(w) for w in words) + "\n"
