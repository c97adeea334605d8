import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rieszrep import gershgorin_report, row_col_sums, sigma_min_lower_bound, singular_intervals
from rieszrep.errors import NotSquare
from rieszrep.linalg import singular_values
from oracles import charpoly_eigenvalues, naive_row_col_sums


def test_identity():
    R, C, s = row_col_sums(np.eye(3))
    assert list(R) == list(C) == list(s) == [0, 0, 0]
    assert singular_intervals(np.eye(3)) == [(1.0, 1.0)] * 3
    assert sigma_min_lower_bound(np.eye(3)) == 1.0


def test_upper_triangular_two_by_two():
    A = [[2, 1], [0, 2]]
    R, C, s = row_col_sums(A)
    assert list(R) == [1, 0] and list(C) == [0, 1] and list(s) == [1, 1]
    assert singular_intervals(A) == [(1.0, 3.0), (1.0, 3.0)]
    sv = np.sqrt(charpoly_eigenvalues(np.array(A).T @ np.array(A)))
    np.testing.assert_allclose(sorted(sv), [np.sqrt((9 - np.sqrt(17)) / 2), np.sqrt((9 + np.sqrt(17)) / 2)])
    assert sigma_min_lower_bound(A) == pytest.approx(1.5)
    assert sigma_min_lower_bound(A) <= sv.min()


def test_diagonal_matrix():
    rep = gershgorin_report(np.diag([3.0, 0.5]))
    assert rep.intervals == ((3.0, 3.0), (0.5, 0.5))
    assert rep.sigma_min_lower == 0.5


def test_no_certificate_reported_raw():
    rep = gershgorin_report([[1, 2], [0, 1]])
    assert rep.sigma_min_lower == 0.0
    assert not rep.certifies_nonsingular
    assert sigma_min_lower_bound([[1, 5], [5, 1]]) == -4.0


def test_not_square():
    with pytest.raises(NotSquare):
        row_col_sums(np.ones((2, 3)))


@pytest.mark.parametrize("seed", range(10))
def test_sums_match_double_loop(seed):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    R, C, s = row_col_sums(A)
    nR, nC = naive_row_col_sums(A.tolist())
    np.testing.assert_allclose(R, nR, rtol=1e-13)
    np.testing.assert_allclose(C, nC, rtol=1e-13)
    np.testing.assert_allclose(s, np.maximum(nR, nC), rtol=1e-13)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2**32 - 1), st.floats(0.0, 3.0))
def test_containment_property(n, seed, diag_boost):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    A += diag_boost * n * np.eye(n)
    rep = gershgorin_report(A)
    sv = singular_values(A)
    assert all(rep.contains(x, tol=1e-10) for x in sv)
    assert rep.sigma_min_lower <= sv.min() + 1e-10
