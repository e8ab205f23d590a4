"""Min-plus scalar and matrix arithmetic, Kleene stars, negative cycles."""
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import shortest_paths
from polytropes.semiring import (
    INF,
    NegativeCycleError,
    TropMatrix,
    coerce,
    format_scalar,
    is_finite,
    is_kleene,
    kleene_star,
    mat_add,
    mat_mul,
    trop_apply,
)
from strategies import nonneg_matrices, star_matrices, weighted_dags

F = Fraction


def test_inf_is_a_singleton_absorbing_under_plus():
    assert INF + F(5) is INF
    assert F(-3) + INF is INF
    assert INF + INF is INF
    assert not is_finite(INF)
    assert is_finite(F(0))


def test_inf_ordering():
    assert F(10) < INF
    assert not INF < F(10)
    assert INF <= INF
    assert min(INF, F(2)) == F(2)
    assert INF == INF
    assert INF != F(1)


def test_coerce_accepts_ints_strings_fractions():
    assert coerce(3) == F(3)
    assert coerce("-7/2") == F(-7, 2)
    assert coerce("inf") is INF
    assert coerce(F(1, 3)) == F(1, 3)
    with pytest.raises(TypeError):
        coerce(1.5)
    with pytest.raises(ValueError):
        coerce("3/0x")


def test_format_scalar_roundtrips():
    for s in ("0", "-3", "7/2", "inf"):
        assert format_scalar(coerce(s)) == s


def test_matrix_validation():
    with pytest.raises(ValueError):
        TropMatrix.from_rows([])
    with pytest.raises(ValueError):
        TropMatrix.from_rows([[1, 2], [3]])
    m = TropMatrix.from_rows([[1, 2, 3]])
    assert (m.n_rows, m.n_cols) == (1, 3)
    assert not m.is_square()


def test_matrix_accessors():
    m = TropMatrix.from_rows([[0, "inf"], [1, 0]])
    assert m[0, 1] is INF
    assert m.row(1) == (F(1), F(0))
    assert m.col(0) == (F(0), F(1))


def test_mat_add_is_entrywise_min():
    a = TropMatrix.from_rows([[1, "inf"], [5, 2]])
    b = TropMatrix.from_rows([[3, 0], ["inf", 2]])
    assert mat_add(a, b) == TropMatrix.from_rows([[1, 0], [5, 2]])
    with pytest.raises(ValueError):
        mat_add(a, TropMatrix.from_rows([[1, 2, 3]]))


def test_mat_mul_golden():
    a = TropMatrix.from_rows([[0, 1], ["inf", 0]])
    b = TropMatrix.from_rows([[2, "inf"], [0, 3]])
    # (0+2, 1+0) min -> 1; row 2: (inf, 0+0) etc.
    assert mat_mul(a, b) == TropMatrix.from_rows([[1, 4], [0, 3]])
    with pytest.raises(ValueError):
        mat_mul(a, TropMatrix.from_rows([[1, 2, 3]]))


def test_trop_apply_matches_mat_mul():
    a = TropMatrix.from_rows([[0, 1, "inf"], [2, 0, 1]])
    x = (F(3), F(0), F(-1))
    col = TropMatrix.from_rows([[v] for v in x])
    assert trop_apply(a, x) == mat_mul(a, col).col(0)


def test_kleene_star_golden():
    """Frozen worked example: one negative entry, two infinite entries."""
    c = TropMatrix.from_rows([[1, 4, 0], [-1, 0, -3], [5, "inf", "inf"]])
    expected = TropMatrix.from_rows([[0, 4, 0], [-1, 0, -3], [5, 9, 0]])
    assert kleene_star(c) == expected


def test_kleene_star_1x1():
    assert kleene_star(TropMatrix.from_rows([[7]])) == TropMatrix.from_rows([[0]])
    assert kleene_star(TropMatrix.from_rows([["inf"]])) == TropMatrix.from_rows([[0]])
    with pytest.raises(NegativeCycleError):
        kleene_star(TropMatrix.from_rows([[-1]]))


def test_kleene_star_requires_square():
    with pytest.raises(ValueError):
        kleene_star(TropMatrix.from_rows([[1, 2]]))


def test_negative_cycle_detected():
    c = TropMatrix.from_rows([[0, -3], [1, 0]])
    with pytest.raises(NegativeCycleError):
        kleene_star(c)
    # a longer cycle: 1 -> 2 -> 3 -> 1 with total -1
    c = TropMatrix.from_rows(
        [["inf", "inf", 2], [-1, "inf", "inf"], ["inf", -2, "inf"]]
    )
    with pytest.raises(NegativeCycleError):
        kleene_star(c)


def test_negative_entries_without_negative_cycle():
    c = TropMatrix.from_rows([[0, "inf"], [-5, 0]])
    star = kleene_star(c)
    assert star[1, 0] == F(-5) and star[0, 1] is INF


@given(nonneg_matrices())
@settings(max_examples=150, deadline=None)
def test_kleene_star_matches_path_enumeration(m):
    """Star entries are shortest-path weights of the associated digraph."""
    n = m.n_rows
    weights = {}
    for i in range(n):
        for j in range(n):
            if i != j and is_finite(m[i, j]):
                weights[(j + 1, i + 1)] = m[i, j]
    ref = shortest_paths(n, weights)
    star = kleene_star(m)
    for i in range(n):
        for j in range(n):
            want = ref[(j + 1, i + 1)]
            got = star[i, j]
            if i == j:
                # diagonal may be pulled below 0 only by a negative cycle,
                # impossible here; self-distance stays 0
                assert got == 0
            elif want is None:
                assert got is INF
            else:
                assert got == want


@given(weighted_dags(max_n=5))
@settings(max_examples=100, deadline=None)
def test_kleene_star_on_dags_matches_path_enumeration(g):
    from polytropes.dag import to_matrix

    star = kleene_star(to_matrix(g))
    ref = shortest_paths(g.n, dict(g.weight))
    for i in range(g.n):
        for j in range(g.n):
            want = ref[(j + 1, i + 1)]
            assert star[i, j] == (INF if want is None and i != j else want)


@given(nonneg_matrices())
@settings(max_examples=100, deadline=None)
def test_kleene_star_is_idempotent(m):
    star = kleene_star(m)
    assert kleene_star(star) == star
    assert is_kleene(star)


@given(star_matrices())
@settings(max_examples=75, deadline=None)
def test_is_kleene_accepts_stars(s):
    assert is_kleene(s)
    assert mat_mul(s, s) == s


def test_is_kleene_rejects():
    assert not is_kleene(TropMatrix.from_rows([[1]]))  # nonzero diagonal
    assert not is_kleene(TropMatrix.from_rows([[0, 1, 2]]))  # not square
    # triangle inequality violated: c_31 > c_32 + c_21
    c = TropMatrix.from_rows([[0, "inf", "inf"], [1, 0, "inf"], [3, 1, 0]])
    assert not is_kleene(c)
