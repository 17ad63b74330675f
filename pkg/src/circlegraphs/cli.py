"""Command-line entry point.

Graph, word, matrix and set-system arguments are file paths, ``-`` for
standard input, or ``@NAME`` for a named fixture.  Exit status is 0 when an
answer was computed (negative answers included), 2 for unreadable input or
a violated precondition, and 3 when a resource guard stops the computation.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import Gf2Matrix, format_matrix, parse_matrix
from .deltamatroid import (dm_from_matrix, format_set_system, is_binary, is_delta_matroid,
                           is_eulerian, is_regular, loop_complement, parse_set_system,
                           reconstruct_matrix, twist)
from .errors import ParseError, PreconditionError, ResourceGuardError
from .fixtures import FIXTURES, fixture_text
from .fourregular import (detach, enumerate_four_regular, euler_system_from_dow,
                          euler_systems, format_dow, interlacement, parse_dow,
                          partition_from_letters, touch_graph, transition_labels)
from .graphs import format_graph, parse_graph
from .isotropic import IsotropicPresentation, parse_transversal, transverse_circuits
from .matroid import automorphism_count
from .pu import is_t_regular_isotropic, pu_sign
from .recognize import (characterization_report, crossing_lower_bound, is_circle,
                        planar_realizability, realize)


def _read(arg: str) -> str:
    if arg.startswith("@"):
        return fixture_text(arg[1:])
    if arg == "-":
        return sys.stdin.read()
    try:
        with open(arg, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {arg!r}: {exc.strerror}") from None


def _graph(arg: str):
    return parse_graph(_read(arg))


def _words(arg: str):
    return parse_dow(_read(arg))


def _subset(text: str | None, n: int) -> int:
    if not text:
        return 0
    mask = 0
    for tok in text.split(","):
        try:
            e = int(tok)
        except ValueError:
            raise ParseError(f"bad element {tok!r}") from None
        if not 0 <= e < n:
            raise PreconditionError(f"element {e} outside the ground set")
        mask |= 1 << e
    return mask


def _emit(args, text: str, data: dict) -> None:
    if args.json:
        sys.stdout.write(json.dumps(data, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


# --------------------------------------------------------------------------
# commands

def cmd_recognize(args) -> None:
    g = _graph(args.graph)
    r = is_circle(g, args.method)
    data = {"verdict": r.verdict, "method": r.method}
    lines = [r.verdict]
    if r.dow is not None:
        data["dow"] = [list(w) for w in r.dow]
        lines.append(format_dow(r.dow).rstrip("\n"))
    if r.obstruction is not None:
        ob = r.obstruction
        data["obstruction"] = ob.name
        data["component"] = list(ob.component)
        data["ops"] = [list(op) for op in ob.minor.ops]
        lines.append(f"obstruction {ob.name}")
        lines.append("ops " + " ".join(":".join(str(x) for x in op) for op in ob.minor.ops))
    _emit(args, "\n".join(lines), data)


def cmd_realize(args) -> None:
    g = _graph(args.graph)
    if args.planar:
        ok, pair = planar_realizability(g)
        text = f"PLANAR {pair[0]} {pair[1]}" if ok else "NOT_PLANAR"
        _emit(args, text, {"planar": ok, "pair": list(pair) if pair else None})
        return
    words = realize(g)
    if words is None:
        _emit(args, "NOT_CIRCLE", {"verdict": "NOT_CIRCLE"})
    else:
        _emit(args, format_dow(words), {"verdict": "CIRCLE", "dow": words})


def cmd_interlace(args) -> None:
    g = interlacement(euler_system_from_dow(_words(args.dow)))
    edges = [[g.label(u), g.label(v)] for u, v in g.edges()]
    _emit(args, format_graph(g, "I"), {"n": g.n, "names": list(g.names or []), "edges": edges})


def cmd_ias(args) -> None:
    p = IsotropicPresentation(_graph(args.graph))
    m = p.ias
    _emit(args, format_matrix(m), {"labels": list(m.col_labels), "rows": m.to_lists()})


def cmd_tcircuits(args) -> None:
    p = IsotropicPresentation(_graph(args.graph))
    circs = transverse_circuits(p, args.max)
    _emit(args, "\n".join(circs) + ("\n" if circs else ""), {"circuits": circs})


def cmd_touch(args) -> None:
    c = euler_system_from_dow(_words(args.dow))
    letters = parse_transversal(args.partition, c.graph.n)
    p = partition_from_letters(c, letters)
    tg = touch_graph(c.graph, p)
    edges = [[a, b] for a, b in tg.edges]
    lines = [f"multigraph touch {tg.order}"] + [f"e {a} {b}" for a, b in tg.edges]
    _emit(args, "\n".join(lines), {"order": tg.order, "edges": edges})


def cmd_detach(args) -> None:
    c = euler_system_from_dow(_words(args.dow))
    f = c.graph
    try:
        v = f.index(args.vertex)
    except ValueError:
        raise PreconditionError(f"unknown vertex {args.vertex!r}") from None
    t = transition_labels(c)[v][args.kind]
    d = detach(f, v, t)
    system = euler_systems(d, "one")
    words = system[0].words() if system else []
    edges = [[d.label(a), d.label(b)] for a, b in d.edges]
    lines = [f"fourregular {d.n}"] + [f"e {a} {b}" for a, b in edges]
    if words:
        lines.append("dow " + " | ".join(" ".join(w) for w in words))
    _emit(args, "\n".join(lines), {"n": d.n, "edges": edges, "dow": words})


def cmd_dm(args) -> None:
    if args.subop == "from-matrix":
        m = parse_matrix(_read(args.input))
        if not isinstance(m, Gf2Matrix):
            raise PreconditionError("D_A needs a gf2 matrix")
        d = dm_from_matrix(m)
        _emit(args, format_set_system(d), {"n": d.n, "feasible": d.sets()})
        return
    d = parse_set_system(_read(args.input))
    if args.subop in ("twist", "loop"):
        x = _subset(args.set, d.n)
        out = twist(d, x) if args.subop == "twist" else loop_complement(d, x)
        _emit(args, format_set_system(out), {"n": out.n, "feasible": out.sets()})
    elif args.subop == "check":
        info = {"delta_matroid": is_delta_matroid(d), "even": d.is_even(),
                "binary": is_binary(d)}
        _emit(args, "\n".join(f"{k} {str(v).lower()}" for k, v in info.items()), info)
    elif args.subop == "reconstruct":
        a = reconstruct_matrix(d)
        _emit(args, format_matrix(a), {"rows": a.to_lists()})
    elif args.subop == "eulerian":
        ok = is_eulerian(d)
        _emit(args, "EULERIAN" if ok else "NOT_EULERIAN", {"eulerian": ok})
    elif args.subop == "regular":
        ok, signing = is_regular(d)
        text = "REGULAR" if ok else "NOT_REGULAR"
        data = {"regular": ok}
        if ok:
            text += "\n" + format_matrix(signing)
            data["signing"] = signing.to_lists()
        _emit(args, text, data)


def cmd_pu_sign(args) -> None:
    m = parse_matrix(_read(args.matrix))
    if not isinstance(m, Gf2Matrix):
        raise PreconditionError("the support must be a gf2 matrix")
    s = pu_sign(m)
    if s is None:
        _emit(args, "NONE", {"signing": None})
    else:
        _emit(args, format_matrix(s), {"signing": s.to_lists()})


def cmd_t_regular(args) -> None:
    r = is_t_regular_isotropic(_graph(args.graph))
    text = "T_REGULAR" if r.t_regular else f"NOT_T_REGULAR {r.witness}"
    _emit(args, text, {"t_regular": r.t_regular, "witness": r.witness,
                       "tight_sections": r.tight_sections})


def cmd_cross_bound(args) -> None:
    k = crossing_lower_bound(_graph(args.graph), args.refine)
    _emit(args, str(k), {"bound": k, "refine": args.refine})


def cmd_enumerate(args) -> None:
    gs = enumerate_four_regular(args.n, simple_only=args.simple)
    lines = [str(len(gs))]
    for f in gs:
        lines.append(" ".join(f"{u}-{v}" for u, v in f.edges))
    _emit(args, "\n".join(lines), {"count": len(gs), "graphs": [list(map(list, f.edges)) for f in gs]})


def cmd_aut(args) -> None:
    p = IsotropicPresentation(_graph(args.graph))
    k = automorphism_count(p.matroid)
    _emit(args, str(k), {"automorphisms": k})


def cmd_report(args) -> None:
    r = characterization_report(_graph(args.graph))
    data = r.as_dict()
    lines = [f"circle {str(r.circle).lower()}", f"consistent {str(r.consistent).lower()}"]
    for name, verdict in r.verdicts.items():
        lines.append(f"{name} {'n/a' if verdict is None else str(verdict).lower()}")
    _emit(args, "\n".join(lines), data)


def cmd_fixture(args) -> None:
    text = fixture_text(args.name)
    _emit(args, text, {"name": args.name, "payload": text})


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="circlegraphs", description=__doc__.splitlines()[0])
    ap.add_argument("--json", action="store_true", help="emit a JSON report")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("recognize", help="circle-graph recognition")
    s.add_argument("graph")
    s.add_argument("--method", choices=("oracle", "obstruction", "both"), default="oracle")
    s.set_defaults(func=cmd_recognize)

    s = sub.add_parser("realize", help="realizing word, or planar realizability")
    s.add_argument("graph")
    s.add_argument("--planar", action="store_true")
    s.set_defaults(func=cmd_realize)

    s = sub.add_parser("interlace", help="interlacement graph of a word")
    s.add_argument("dow")
    s.set_defaults(func=cmd_interlace)

    s = sub.add_parser("ias", help="isotropic matrix of a graph")
    s.add_argument("graph")
    s.set_defaults(func=cmd_ias)

    s = sub.add_parser("tcircuits", help="transverse circuits up to a size")
    s.add_argument("graph")
    s.add_argument("--max", type=int, required=True)
    s.set_defaults(func=cmd_tcircuits)

    s = sub.add_parser("touch", help="touch-graph of a circuit partition")
    s.add_argument("dow")
    s.add_argument("--partition", required=True)
    s.set_defaults(func=cmd_touch)

    s = sub.add_parser("detach", help="detach a vertex along a transition")
    s.add_argument("dow")
    s.add_argument("--vertex", required=True)
    s.add_argument("--kind", choices=("p", "c", "s"), required=True)
    s.set_defaults(func=cmd_detach)

    s = sub.add_parser("dm", help="delta-matroid operations")
    s.add_argument("subop", choices=("from-matrix", "twist", "loop", "check",
                                     "reconstruct", "eulerian", "regular"))
    s.add_argument("input")
    s.add_argument("--set", default="", help="comma-separated element indices")
    s.set_defaults(func=cmd_dm)

    s = sub.add_parser("pu-sign", help="principally unimodular signing of a support")
    s.add_argument("matrix")
    s.set_defaults(func=cmd_pu_sign)

    s = sub.add_parser("t-regular", help="t-regularity of the isotropic matroid")
    s.add_argument("graph")
    s.set_defaults(func=cmd_t_regular)

    s = sub.add_parser("cross-bound", help="crossing-number lower bound")
    s.add_argument("graph")
    s.add_argument("--refine", action="store_true")
    s.set_defaults(func=cmd_cross_bound)

    s = sub.add_parser("enumerate-4regular", help="4-regular graphs up to isomorphism")
    s.add_argument("n", type=int)
    s.add_argument("--simple", action="store_true")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("aut", help="automorphisms of the isotropic matroid")
    s.add_argument("graph")
    s.set_defaults(func=cmd_aut)

    s = sub.add_parser("report", help="characterization report")
    s.add_argument("graph")
    s.set_defaults(func=cmd_report)

    s = sub.add_parser("fixture", help="print a named fixture",
                       description="available: " + ", ".join(sorted(FIXTURES)))
    s.add_argument("name")
    s.set_defaults(func=cmd_fixture)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        args.func(args)
    except (PreconditionError, ParseError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except ResourceGuardError as exc:
        sys.stderr.write(f"resource guard: {exc}\n")
        return 3
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
