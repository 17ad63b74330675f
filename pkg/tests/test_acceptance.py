"""Acceptance criteria 1-18, one test each.

Every test prints a single ``CRITERION k: PASS/FAIL`` line through the
``criterion`` fixture; the lines are repeated in the terminal summary.
All checks are exact.
"""

import itertools
import json
import random

import networkx as nx
import numpy as np

from circlegraphs.algebra import IntMatrix, XorBasis, gf2_kernel, int_det
from circlegraphs.cli import main
from circlegraphs.fixtures import (W7_SPECIAL_TRANSVERSAL, bond_matroid, bw3, bw4,
                                   k44_interlacement, k44_words, k5_mcp, k5_mdp, pu_b,
                                   touch_doubled_c4, touch_k4_plus2, w5, w7)
from circlegraphs.fourregular import (boundary_trace, circuit_transitions, detach,
                                      enumerate_four_regular, euler_system_from_dow,
                                      euler_systems, fundamental_circuit, interlacement,
                                      kappa_orbit, kappa_transform, random_planar_rotation,
                                      touch_graph, trace_circuits, transition_labels,
                                      transition_matrix)
from circlegraphs.graphs import LoopedGraph, canonical_form, local_equivalence_orbit, simple_lc
from circlegraphs.isotropic import IsotropicPresentation, transverse_circuits, transverse_matroid
from circlegraphs.matroid import (automorphism_count, automorphisms, circuits_up_to, class_test,
                                  fano, fano_dual, is_isomorphic)
from circlegraphs.pu import (is_pu, is_t_regular_isotropic, rational_contract,
                             transversal_determinants_ok, two_by_two_minors)
from circlegraphs.recognize import (_union_matroid, crossing_lower_bound, is_circle,
                                    planar_realizability)

from census import graphs_on, graphs_up_to
from oracles import interlacement_of_word

# rows of the interlacement part of the reference IAS matrix, order 1 2 3 4 a b c d
K44_EXPECTED_ROWS = {
    "1": "01001001", "2": "10001100", "3": "00011100", "4": "00101001",
    "a": "11110010", "b": "01100010", "c": "00001101", "d": "10010010",
}
K44_EXPECTED_CIRCUITS = ["pc--pp--", "--cp--cp", "----ppcp", "pccp----"]


def _is_transverse(p, mask):
    verts = [e % p.n for e in range(3 * p.n) if mask >> e & 1]
    return len(verts) == len(set(verts))


def _le_members(g):
    return local_equivalence_orbit(g, "up-to-iso")


def test_criterion_01_k44_interlacement(criterion, capsys):
    code = main(["--json", "interlace", "@K44_DOW"])
    data = json.loads(capsys.readouterr().out)
    names = data["names"]
    adj = {x: set() for x in names}
    for a, b in data["edges"]:
        adj[a].add(b)
        adj[b].add(a)
    order = list(K44_EXPECTED_ROWS)
    got = {x: "".join("1" if y in adj[x] else "0" for y in order) for x in order}
    ok = code == 0 and sorted(names) == sorted(order) and got == K44_EXPECTED_ROWS
    ok = ok and adj["1"] == {"2", "a", "d"}
    criterion(1, ok, f"neighbours of 1: {sorted(adj['1'])}")


def test_criterion_02_k44_transverse_census(criterion):
    p = IsotropicPresentation(k44_interlacement())
    circs = transverse_circuits(p, 8)
    sizes = {k: 0 for k in range(1, 9)}
    for c in circs:
        sizes[8 - c.count("-")] += 1
    small = circuits_up_to(p.matroid, 4)
    four = [m for m in small if bin(m).count("1") == 4]
    three = [m for m in small if bin(m).count("1") == 3]
    triples = sorted(sum(1 << e for e in p.triple(v)) for v in range(8))
    ok = (sizes[4] == 42 and sizes[6] == 168
          and all(sizes[k] == 0 for k in (1, 2, 3, 5, 7))
          and all(_is_transverse(p, m) for m in four)
          and len(four) == 42
          and not any(bin(m).count("1") <= 2 for m in small)
          and sorted(three) == triples
          and all(c in circs for c in K44_EXPECTED_CIRCUITS))
    criterion(2, ok, f"sizes {sizes}, 4-circuits {len(four)}")


def test_criterion_03_w5(criterion):
    g = w5()
    p = IsotropicPresentation(g)
    small = circuits_up_to(p.matroid, 3)
    triples = sorted(sum(1 << e for e in p.triple(v)) for v in range(g.n))
    members = _le_members(g)
    low = [m for m in members if min(m.degrees()) <= 2]
    ok = sorted(small) == triples and not low
    criterion(3, ok, f"{len(small)} circuits of size <= 3, {len(members)} orbit classes")


def test_criterion_04_bw3(criterion):
    g = bw3()
    p = IsotropicPresentation(g)
    three = [c for c in transverse_circuits(p, 3) if 7 - c.count("-") == 3]
    union = ["-"] * 7
    disjoint_union = True
    for c in three:
        for v, x in enumerate(c):
            if x == "-":
                continue
            if union[v] not in ("-", x):
                disjoint_union = False
            union[v] = x
    union = "".join(union)
    is_transversal = disjoint_union and "-" not in union
    mats = {}
    for t in map("".join, itertools.product("pcs", repeat=7)):
        mats.setdefault(tuple(sorted(transverse_matroid(p, t).cols)), t)
    f7 = [t for t in mats.values() if is_isomorphic(transverse_matroid(p, t), fano())]
    f7d = [t for t in mats.values() if is_isomorphic(transverse_matroid(p, t), fano_dual())]
    ok = len(three) == 4 and is_transversal and bool(f7) and bool(f7d)
    criterion(4, ok, f"{len(three)} transverse 3-circuits {three}; union {union} "
                     f"is a transversal: {is_transversal}; F7 at {f7[:1]}, F7* at {f7d[:1]}")


def test_criterion_05_recognition(criterion):
    named = {"W5": w5(), "BW3": bw3(), "W7": w7(), "BW4": bw4()}
    named_ok = all(is_circle(g, "both").verdict == "NOT_CIRCLE" for g in named.values())
    five = graphs_on(5)
    five_ok = len(five) == 34 and all(is_circle(g).is_circle for g in five)
    seven = graphs_on(7)
    # "both" raises if the two methods disagree
    agree = all(isinstance(is_circle(g, "both").is_circle, bool) for g in graphs_up_to(7))
    ok = named_ok and five_ok and len(seven) == 1044 and agree
    criterion(5, ok, f"{len(five)} graphs on 5 vertices, {len(seven)} on 7, methods agree")


def test_criterion_06_small_characterization(criterion):
    bad = []
    total = 0
    for n in range(1, 7):
        for g in graphs_on(n):
            total += 1
            circle = is_circle(g).is_circle
            short = bool(transverse_circuits(IsotropicPresentation(g), min(3, n)))
            low = any(min(m.degrees()) <= 2 for m in _le_members(g))
            if not circle == short == low:
                bad.append(g.edges())
    criterion(6, not bad, f"{total} graphs, {len(bad)} inconsistent")


def test_criterion_07_k5_kernels(criterion):
    want = XorBasis([0b10111, 0b01011])  # bit i is coordinate i

    def span_of(m):
        _, basis = gf2_kernel(m)
        return XorBasis(sum(b << i for i, b in enumerate(v)) for v in basis)

    def same(a, b):
        return len(a) == len(b) and all(b.contains(x) for x in a.vectors)

    spans = [span_of(k5_mcp()), span_of(k5_mdp())]
    elements = {x for x in range(1, 32) if want.contains(x)}
    expected = {0b10111, 0b01011, 0b11100}
    ok = all(same(s, want) for s in spans) and elements == expected
    criterion(7, ok, "both kernels are the expected 2-dimensional span")


def _random_system(rng):
    k = rng.randint(1, 7)
    letters = [str(i) for i in range(k)]
    cut = rng.randint(1, k)
    words = []
    for part in (letters[:cut], letters[cut:]):
        if part:
            w = part * 2
            rng.shuffle(w)
            words.append(w)
    f = euler_system_from_dow(words).graph
    c = rng.choice(euler_systems(f))
    return f, c


def test_criterion_08_cocycles_and_dependent_circuits(criterion):
    rng = random.Random(8)
    kernel_bad = circuit_bad = checked = 0
    for _ in range(200):
        f, c = _random_system(rng)
        p = tuple(rng.randrange(3) for _ in range(f.n))
        _, kernel = gf2_kernel(transition_matrix(c, p))
        kb = XorBasis(sum(b << i for i, b in enumerate(v)) for v in kernel)
        cb = XorBasis(touch_graph(f, p).cocycles())
        if not (len(kb) == len(cb) and all(cb.contains(x) for x in kb.vectors)):
            kernel_bad += 1
        pres = IsotropicPresentation(interlacement(c))
        letter = [{t: x for x, t in lab.items()} for lab in transition_labels(c)]
        comps = [set(cc) for cc in f.components()]
        for circ in trace_circuits(f, p):
            verts = {v for v, _, _ in circ}
            if len(circ) == 2 * len(verts) and verts in comps:
                continue
            checked += 1
            cols = [pres.column(v, letter[v][t]) for v, t in circuit_transitions(f, circ)]
            if len(XorBasis(cols)) == len(cols):
                circuit_bad += 1
    ok = kernel_bad == 0 and circuit_bad == 0 and checked > 0
    criterion(8, ok, f"kernel mismatches {kernel_bad}; {checked} non-Euler circuits, "
                     f"{circuit_bad} independent")


def test_criterion_09_w7_special_transversal(criterion):
    p = IsotropicPresentation(w7())
    t = W7_SPECIAL_TRANSVERSAL
    m = transverse_matroid(p, t)
    circs = []
    for mask in circuits_up_to(m, 8):
        circs.append("".join(t[v] if mask >> v & 1 else "-" for v in range(8)))
    ok = sorted(circs) == sorted(["ppcp----", "----pssp"])
    criterion(9, ok, f"circuits {sorted(circs)}")


def test_criterion_10_automorphism_counts(criterion):
    a = automorphism_count(IsotropicPresentation(w7()).matroid)
    b = automorphism_count(IsotropicPresentation(k44_interlacement()).matroid)
    criterion(10, (a, b) == (336, 1152), f"W7 {a}, K44 {b}")


def _nullity_three(p):
    out = []
    for t in map("".join, itertools.product("pcs", repeat=p.n)):
        if p.n - p.rank_of(t) == 3:
            out.append(t)
    return out


def test_criterion_11_nullity_three(criterion):
    pw = IsotropicPresentation(w7())
    pk = IsotropicPresentation(k44_interlacement())
    tw, tk = _nullity_three(pw), _nullity_three(pk)
    target = bond_matroid(touch_k4_plus2())
    all_k4 = all(is_isomorphic(transverse_matroid(pw, t), target) for t in tw)
    doubled = bond_matroid(touch_doubled_c4())
    kinds = [(is_isomorphic(transverse_matroid(pk, t), target),
              is_isomorphic(transverse_matroid(pk, t), doubled)) for t in tk]
    ok = len(tw) == 42 and len(tk) == 45 and all_k4 and all(any(k) for k in kinds)
    criterion(11, ok, f"W7 {len(tw)}, K44 {len(tk)} "
                      f"({sum(k[0] for k in kinds)} K4+2, {sum(k[1] for k in kinds)} doubled C4)")


def test_criterion_12_pu_fixture(criterion):
    b = pu_b()
    a = IntMatrix.from_lists([row[4:] for row in b.to_lists()], 4)
    pu_ok = is_pu(a)[0] and transversal_determinants_ok(a)
    residual, keep = rational_contract(b, [0, 2], [5, 7])
    ints = [[int(x) for x in row] for row in residual]
    integral = all(x.denominator == 1 for row in residual for x in row)
    minors = {}
    for i, j in itertools.combinations(range(4), 2):
        minors[(i, j)] = int_det([[ints[0][i], ints[0][j]], [ints[1][i], ints[1][j]]])
    agree = all(two_by_two_minors(residual)[k] == v for k, v in minors.items())
    uniform = all(v != 0 for v in minors.values())
    non_unimodular = any(abs(v) > 1 for v in minors.values())
    ok = pu_ok and integral and agree and uniform and non_unimodular and keep == [1, 3, 4, 6]
    criterion(12, ok, f"residual {ints}, minors {sorted(minors.values())}")


def test_criterion_13_t_regularity(criterion):
    graphs = list(graphs_up_to(5))
    graphs += [w5(), w7(), bw3(), bw4()]
    graphs += random.Random(2024).sample(graphs_on(6), 20)
    bad = [g.edges() for g in graphs
           if bool(is_t_regular_isotropic(g)) != is_circle(g).is_circle]
    criterion(13, not bad, f"{len(graphs)} graphs, {len(bad)} disagreements")


def test_criterion_14_kappa_orbits(criterion):
    orbit_bad = lc_bad = systems = 0
    for n in range(1, 7):
        for f in enumerate_four_regular(n, simple_only=False):
            es = euler_systems(f)
            systems += len(es)
            if kappa_orbit(es[0]) != {e.choice for e in es}:
                orbit_bad += 1
            for e in es:
                rows = interlacement(e).rows
                for v in range(f.n):
                    if interlacement(kappa_transform(e, v)).rows != simple_lc(rows, v):
                        lc_bad += 1
    ok = orbit_bad == 0 and lc_bad == 0
    criterion(14, ok, f"{systems} Euler systems, orbit mismatches {orbit_bad}, "
                      f"local complement mismatches {lc_bad}")


def _nx_multigraph(f):
    g = nx.Graph()
    g.add_nodes_from(range(f.n))
    g.add_edges_from((u, v) for u, v in f.edges if u != v)
    return g


def test_criterion_15_enumeration(criterion):
    graphs = [f for n in range(1, 9) for f in enumerate_four_regular(n)]
    k44 = nx.complete_bipartite_graph(4, 4)
    is_k44 = [nx.is_isomorphic(_nx_multigraph(f), k44) for f in graphs]
    others = [f for f, k in zip(graphs, is_k44) if not k]
    short = all(
        transverse_circuits(IsotropicPresentation(interlacement(euler_systems(f, "one")[0])), 3)
        for f in others)
    ok = (len(graphs) == 10 and sum(is_k44) == 1
          and all(f.has_triangle() for f in others) and short)
    criterion(15, ok, f"{len(graphs)} graphs, {sum(is_k44)} isomorphic to K44")


_COGRAPHIC: dict = {}


def _all_transverse_cographic(g):
    p = IsotropicPresentation(g)
    for t in map("".join, itertools.product("pcs", repeat=g.n)):
        m = transverse_matroid(p, t).compressed()
        key = tuple(sorted(m.cols))
        if key not in _COGRAPHIC:
            _COGRAPHIC[key] = class_test(m, "cographic")
        if not _COGRAPHIC[key]:
            return False
    return True


def test_criterion_16_planar_instances(criterion):
    trace_bad = agree_bad = 0
    seen = {}
    for seed in range(100):
        rng = random.Random(seed)
        n = rng.randint(2, 5)
        h, tree = random_planar_rotation(rng, n, rng.randint(0, 8 - (n - 1)))
        word = boundary_trace(h, tree)
        adj = interlacement_of_word(word)
        ok = sorted(word) == sorted(list(range(len(h.edges))) * 2)
        for e in range(len(h.edges)):
            if e not in tree:
                ok = ok and adj[e] | {e} == fundamental_circuit(h, tree, e)
                ok = ok and all(x in tree for x in adj[e])
        trace_bad += not ok
        g = interlacement(euler_system_from_dow([[str(x) for x in word]]))
        key = canonical_form(g).key
        if key not in seen:
            bip = any(m.is_bipartite() for m in _le_members(g))
            cond = bip and _all_transverse_cographic(g)
            seen[key] = planar_realizability(g)[0] == cond and cond
        agree_bad += not seen[key]
    criterion(16, trace_bad == 0 and agree_bad == 0,
              f"100 instances ({len(seen)} distinct), trace failures {trace_bad}, "
              f"disagreements {agree_bad}")


def test_criterion_17_crossing_bound(criterion):
    g = k44_interlacement()
    plain, refined = crossing_lower_bound(g), crossing_lower_bound(g, refine=True)
    # detaching one vertex of a plane 4-regular graph draws the result
    # with at most one crossing
    seen = {}
    nonplanar = 0
    for n in range(2, 7):
        for fp in enumerate_four_regular(n, simple_only=False):
            if not nx.check_planarity(_nx_multigraph(fp))[0]:
                continue
            for v in range(n):
                for t in range(3):
                    f = detach(fp, v, t)
                    h = interlacement(euler_systems(f, "one")[0])
                    key = canonical_form(h).key
                    if key not in seen:
                        b0, b1 = crossing_lower_bound(h), crossing_lower_bound(h, refine=True)
                        realizable = planar_realizability(h)[0]
                        seen[key] = b0 <= b1 <= 1 and (b1 == 0) == realizable
                        nonplanar += not realizable
    ok = plain == 2 and refined == 2 and all(seen.values()) and nonplanar > 0
    criterion(17, ok, f"K44 bound {plain}/{refined}; {len(seen)} one-crossing instances, "
                      f"{nonplanar} without a planar realization")


def _transversal_permutations(p, auts):
    n = p.n
    weights = 3 ** np.arange(n - 1, -1, -1)
    digits = (np.arange(3 ** n)[:, None] // weights) % 3
    perms = np.empty((len(auts), 3 ** n), dtype=np.int64)
    for k, a in enumerate(auts):
        new = np.empty_like(digits)
        for v in range(n):
            target = a[v] % n
            assert all(a[x * n + v] % n == target for x in range(3))
            lut = np.array([a[x * n + v] // n for x in range(3)])
            new[:, target] = lut[digits[:, v]]
        perms[k] = new @ weights
    return digits, weights, perms


def test_criterion_18_k44_unions_and_degrees(criterion):
    g = k44_interlacement()
    p = IsotropicPresentation(g)
    n = p.n
    digits, weights, perms = _transversal_permutations(p, automorphisms(p.matroid))
    bits = 2 ** np.arange(n - 1, -1, -1)
    shifts = np.array(list(itertools.product((1, 2), repeat=n)))

    def keys(x, y):
        return ((digits[y] - digits[x]) % 3 - 1) @ bits

    # one representative per automorphism orbit of unordered disjoint pairs
    seen = np.zeros((3 ** n, 2 ** n), dtype=bool)
    reps = []
    for a in range(3 ** n):
        for k in np.nonzero(~seen[a])[0]:
            if seen[a, k]:
                continue
            b = int(((digits[a] + shifts[k]) % 3) @ weights)
            reps.append((a, b))
            x, y = perms[:, a], perms[:, b]
            seen[x, keys(x, y)] = True
            seen[y, keys(y, x)] = True
    names = ["".join("pcs"[d] for d in digits[i]) for i in range(3 ** n)]
    regular = [(names[a], names[b]) for a, b in reps
               if class_test(_union_matroid(p, names[a], names[b]), "regular")]

    f = euler_system_from_dow(k44_words()).graph
    graphs = {interlacement(e).rows for e in euler_systems(f)}
    orbit = {m.rows for m in local_equivalence_orbit(g, "labeled")}
    shape_bad = 0
    for rows in graphs:
        h = LoopedGraph(n, rows)
        deg = h.degrees()
        if not (min(deg) >= 3 and max(deg) > 3 and 5 in deg and h.diameter() <= 2):
            shape_bad += 1
    ok = not regular and seen.all() and shape_bad == 0 and graphs == orbit
    criterion(18, ok, f"{len(reps)} pair orbits, {len(regular)} regular unions; "
                      f"{len(graphs)} interlacement graphs, {shape_bad} not strictly "
                      f"supercubic with a degree-5 vertex and diameter <= 2")
