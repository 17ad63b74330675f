"""Named graphs, words, matrices and multigraphs used throughout the tests and CLI."""

from __future__ import annotations

from .algebra import Gf2Matrix, IntMatrix, format_matrix
from .errors import PreconditionError
from .fourregular import format_dow, interlacement_of_words, parse_dow
from .graphs import LoopedGraph, format_graph
from .matroid import BinaryMatroid, graph_matroid
from .pu import standard_form_pu_b

__all__ = [
    "wheel",
    "w5",
    "w7",
    "bw3",
    "bw4",
    "k44_words",
    "k44_interlacement",
    "k5_mcp",
    "k5_mdp",
    "pu_b",
    "touch_doubled_c4",
    "touch_k4_plus2",
    "bond_matroid",
    "FIXTURES",
    "fixture_text",
    "K44_DOW",
    "W7_SPECIAL_TRANSVERSAL",
]

K44_DOW = "a 1 b 2 c 3 b 4 a 3 d 4 c 1 d 2"

# phi1 phi2 chi3 phi4 phi5 psi6 psi7 phi8, hub first
W7_SPECIAL_TRANSVERSAL = "ppcppssp"


def wheel(k: int) -> LoopedGraph:
    """Hub 0 joined to the rim cycle 1..k; vertices are named 1..k+1."""
    edges = [(0, i) for i in range(1, k + 1)]
    edges += [(i, i % k + 1) for i in range(1, k + 1)]
    return LoopedGraph.from_edges(k + 1, edges, [str(i + 1) for i in range(k + 1)])


def w5() -> LoopedGraph:
    return wheel(5)


def w7() -> LoopedGraph:
    return wheel(7)


def bw3() -> LoopedGraph:
    """Fundamental graph of the Fano matroid.

    Basis vertices 1-3; vertex 3 + c for the non-basis column with bits
    ``c`` in ``011, 101, 110, 111`` order, so vertices 4-6 have degree two.
    """
    cols = [0b011, 0b101, 0b110, 0b111]
    edges = [(i, 3 + j) for j, c in enumerate(cols) for i in range(3) if c >> i & 1]
    return LoopedGraph.from_edges(7, edges, [str(i + 1) for i in range(7)])


def bw4() -> LoopedGraph:
    """Fundamental graph of M(K3,3): the 8-cycle 1..8 with vertex 9 joined to 1, 3, 5, 7."""
    edges = [(i, (i + 1) % 8) for i in range(8)] + [(8, i) for i in (0, 2, 4, 6)]
    return LoopedGraph.from_edges(9, edges, [str(i + 1) for i in range(9)])


def k44_words() -> list[list[str]]:
    return parse_dow(K44_DOW)


def k44_interlacement() -> LoopedGraph:
    """Vertices in the order 1 2 3 4 a b c d."""
    return interlacement_of_words(k44_words())


_K5_MCP = ["10110", "01110", "00000", "00000", "00101"]
_K5_MDP = ["11101", "11101", "11000", "10011", "11000"]


def _bit_rows(rows: list[str]) -> Gf2Matrix:
    return Gf2Matrix.from_lists([[int(ch) for ch in r] for r in rows])


def k5_mcp() -> Gf2Matrix:
    return _bit_rows(_K5_MCP)


def k5_mdp() -> Gf2Matrix:
    return _bit_rows(_K5_MDP)


def pu_b() -> IntMatrix:
    return standard_form_pu_b()


_DOUBLED_C4 = ((0, 1), (0, 1), (1, 2), (1, 2), (2, 3), (2, 3), (3, 0), (3, 0))
_K4_PLUS2 = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 1), (2, 3))


def touch_doubled_c4() -> tuple[int, tuple[tuple[int, int], ...]]:
    """A 4-cycle with every edge doubled, as ``(order, edge list)``."""
    return 4, _DOUBLED_C4


def touch_k4_plus2() -> tuple[int, tuple[tuple[int, int], ...]]:
    """K4 with two non-incident edges doubled, as ``(order, edge list)``."""
    return 4, _K4_PLUS2


def bond_matroid(tg: tuple[int, tuple[tuple[int, int], ...]]) -> BinaryMatroid:
    n, edges = tg
    return graph_matroid(n, edges, "bond")


def _multigraph_text(name: str, tg) -> str:
    n, edges = tg
    return "\n".join([f"multigraph {name} {n}"] + [f"e {u} {v}" for u, v in edges]) + "\n"


def _int_matrix_text(m: IntMatrix, labels) -> str:
    return format_matrix(m, labels)


FIXTURES = {
    "W5": lambda: format_graph(w5(), "W5"),
    "W7": lambda: format_graph(w7(), "W7"),
    "BW3": lambda: format_graph(bw3(), "BW3"),
    "BW4": lambda: format_graph(bw4(), "BW4"),
    "K44_DOW": lambda: format_dow(k44_words()),
    "K5_MCP": lambda: format_matrix(k5_mcp()),
    "K5_MDP": lambda: format_matrix(k5_mdp()),
    "PU_B": lambda: _int_matrix_text(
        pu_b(), [f"t{i}{j}" for i in (1, 2) for j in range(1, 5)]),
    "TG_DOUBLED_C4": lambda: _multigraph_text("TG_DOUBLED_C4", touch_doubled_c4()),
    "TG_K4_PLUS2": lambda: _multigraph_text("TG_K4_PLUS2", touch_k4_plus2()),
    "W7_SPECIAL_TRANSVERSAL": lambda: W7_SPECIAL_TRANSVERSAL + "\n",
}


def fixture_text(name: str) -> str:
    if name not in FIXTURES:
        raise PreconditionError(
            f"unknown fixture {name!r}; available: {', '.join(sorted(FIXTURES))}")
    return FIXTURES[name]()
