from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from elliptica import linalg
from elliptica.errors import NotASubspace
from elliptica.linalg import QMatrix, Span


def naive_rank(rows):
    """Plain Gaussian elimination over Fraction, as an independent oracle."""
    rows = [[Fraction(v) for v in r] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][c]
        rows[rank] = [v * inv for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


small_matrix = st.integers(1, 6).flatmap(
    lambda nc: st.lists(
        st.lists(st.fractions(min_value=-8, max_value=8, max_denominator=6),
                 min_size=nc, max_size=nc),
        min_size=1, max_size=6))


def test_rank_known_cases():
    assert linalg.rank(QMatrix.identity(4)) == 4
    assert linalg.rank(QMatrix.zero(3, 5)) == 0
    m = QMatrix.from_rows([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert linalg.rank(m) == 2


@settings(max_examples=150, deadline=None)
@given(small_matrix)
def test_rank_matches_naive_elimination(rows):
    m = QMatrix.from_rows(rows)
    assert linalg.rank(m) == naive_rank(rows)


@settings(max_examples=100, deadline=None)
@given(small_matrix)
def test_kernel_basis_is_a_kernel_basis(rows):
    m = QMatrix.from_rows(rows)
    basis = linalg.kernel_basis(m)
    assert len(basis) == m.cols - linalg.rank(m)
    for v in basis:
        assert not any(m.apply(v))
    # independence
    assert linalg.rank(QMatrix.from_columns(basis, m.cols)) == len(basis)


@settings(max_examples=100, deadline=None)
@given(small_matrix, st.data())
def test_solve_recovers_consistent_systems(rows, data):
    m = QMatrix.from_rows(rows)
    x = data.draw(st.lists(st.integers(-5, 5), min_size=m.cols,
                           max_size=m.cols))
    rhs = m.apply([Fraction(v) for v in x])
    sol = linalg.solve(m, rhs)
    assert sol is not None
    assert m.apply(sol) == rhs


def test_solve_detects_inconsistency():
    m = QMatrix.from_rows([[1, 0], [1, 0]])
    assert linalg.solve(m, [Fraction(1), Fraction(2)]) is None


def test_span_express_reconstructs():
    span = Span(3)
    v1 = (Fraction(1), Fraction(2), Fraction(0))
    v2 = (Fraction(0), Fraction(1), Fraction(1))
    assert span.add(v1) and span.add(v2)
    assert not span.add((Fraction(1), Fraction(3), Fraction(1)))
    target = tuple(2 * a - 3 * b for a, b in zip(v1, v2))
    coeffs = span.express(target)
    assert coeffs == (Fraction(2), Fraction(-3))
    assert span.express((Fraction(0), Fraction(0), Fraction(1))) is None


@settings(max_examples=80, deadline=None)
@given(small_matrix)
def test_span_rank_agrees_with_rank(rows):
    span = Span(len(rows[0]))
    for r in rows:
        span.add([Fraction(v) for v in r])
    assert span.rank == linalg.rank(QMatrix.from_rows(rows))


def test_independent_subset_keeps_input_order():
    cols = [(1, 0), (2, 0), (0, 1)]
    out = linalg.independent_subset(cols, 2)
    assert out == [(1, 0), (0, 1)]


def test_quotient_representatives_counts():
    cycles = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    boundaries = [(1, 1, 0)]
    reps = linalg.quotient_representatives(cycles, boundaries)
    assert len(reps) == 2


def test_quotient_representatives_rejects_non_subspace():
    with pytest.raises(NotASubspace):
        linalg.quotient_representatives([(1, 0)], [(0, 1)])


def test_homology_dim_simple_complex():
    # 0 -> Q^2 --d_in--> Q^2 --d_out--> Q, with d_out.d_in = 0
    d_out = QMatrix.from_rows([[1, 1]])
    d_in = QMatrix.from_rows([[1], [-1]])
    assert linalg.homology_dim(d_out, d_in) == 0
