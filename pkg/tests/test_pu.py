import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from circlegraphs.algebra import Gf2Matrix, IntMatrix
from circlegraphs.errors import PreconditionError, ResourceGuardError
from circlegraphs.fixtures import w5
from circlegraphs.graphs import LoopedGraph
from circlegraphs.isotropic import IsotropicPresentation, multimatroid_section
from circlegraphs.pu import (check_signed_skew, is_pu, is_t_regular_isotropic,
                             is_t_regular_section, pu_sign, pu_sign_unrestricted,
                             rational_contract, standard_form_pu_b, transversal_determinants_ok,
                             two_by_two_minors)

from oracles import det_fraction
from strategies import simple_graphs, skew_signed


def principal_minors_ok(a):
    n = len(a)
    return all(det_fraction([[a[i][j] for j in s] for i in s]) in (-1, 0, 1)
               for k in range(1, n + 1) for s in itertools.combinations(range(n), k))


@given(skew_signed(max_n=6))
def test_is_pu_matches_minor_oracle(a):
    ok, bad = is_pu(IntMatrix.from_lists(a))
    assert ok == principal_minors_ok(a)
    assert (bad is None) == ok


@given(skew_signed(max_n=6))
def test_pu_equals_transversal_determinants(a):
    m = IntMatrix.from_lists(a)
    assert is_pu(m)[0] == transversal_determinants_ok(m)


@given(skew_signed(max_n=6), st.data())
def test_diagonal_sign_change_preserves_pu(a, data):
    n = len(a)
    signs = data.draw(st.lists(st.sampled_from((-1, 1)), min_size=n, max_size=n))
    b = [[signs[i] * a[i][j] * signs[j] for j in range(n)] for i in range(n)]
    assert is_pu(IntMatrix.from_lists(a))[0] == is_pu(IntMatrix.from_lists(b))[0]


@settings(max_examples=80)
@given(simple_graphs(max_n=6))
def test_pu_sign_sound_and_complete(g):
    support = g.adjacency()
    s = pu_sign(support)
    ref = pu_sign_unrestricted(support)
    assert (s is None) == (ref is None)
    if s is not None:
        check_signed_skew(s)
        assert s.mod2() == support
        assert is_pu(s)[0]


def test_first_bad_subset_is_reported():
    assert is_pu(IntMatrix.from_lists([[0, 2], [-2, 0]])) == (False, (0, 1))


def test_w5_has_no_pu_signing():
    assert pu_sign(w5().adjacency()) is None


def test_signing_preconditions():
    with pytest.raises(PreconditionError):
        pu_sign(Gf2Matrix.from_lists([[1, 0], [0, 0]]))
    with pytest.raises(PreconditionError):
        pu_sign(Gf2Matrix.from_lists([[0, 1], [0, 0]]))
    with pytest.raises(ResourceGuardError):
        pu_sign(Gf2Matrix((0,) * 11, 11))
    with pytest.raises(PreconditionError):
        check_signed_skew(IntMatrix.from_lists([[0, 1], [1, 0]]))


def test_section_regularity_needs_tightness():
    p = IsotropicPresentation(LoopedGraph.from_edges(2, [(0, 1)]))
    for t in ("pp", "cc", "ss", "pc", "cs"):
        sec = multimatroid_section(p, t)
        _, _, a = sec.standard_matrix()
        if any(a.entry(i, i) for i in range(2)):
            with pytest.raises(PreconditionError):
                is_t_regular_section(sec)
        else:
            assert is_t_regular_section(sec)


def test_t_regular_witness_for_w5():
    res = is_t_regular_isotropic(w5())
    assert not res and res.witness is not None
    sec = multimatroid_section(IsotropicPresentation(w5()), res.witness)
    assert not is_t_regular_section(sec)


def test_rational_contraction_of_reference_matrix():
    b = standard_form_pu_b()
    rows, keep = rational_contract(b, [0, 2], [5, 7])
    assert keep == [1, 3, 4, 6]
    assert rows == [[1, 0, -1, 1], [0, 1, -1, -1]]
    minors = two_by_two_minors(rows)
    assert sorted(minors.values()) == sorted(Fraction(x) for x in (1, -1, -1, 1, -1, 2))
