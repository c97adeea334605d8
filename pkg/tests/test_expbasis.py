import cmath
import math

import numpy as np
import pytest

from rieszrep import (
    coefficient_matrix,
    fourier_coeff,
    lattice_points,
    make_domain,
    remark_feasibility,
    suff_basis_check,
    tiling_check,
    unit_box,
)
from rieszrep.errors import ConditionViolated, MeasureNotOne, OverlappingIntervals, ValidationError
from rieszrep.expbasis import feasibility_bound, suggest_parameters
from oracles import quad_fourier

UNIT = make_domain([[0, 1]])


def test_tiling_examples():
    assert tiling_check([(0, 1)])
    assert tiling_check([(0, 0.5), (1.5, 2)])
    assert not tiling_check([(0, 0.5), (0.25, 0.75)])
    assert not tiling_check([(0, 0.5), (1.0, 1.5)])  # both reduce to [0, 0.5)
    assert tiling_check(unit_box(3))


def test_make_domain_errors():
    with pytest.raises(OverlappingIntervals):
        make_domain([[0, 0.5], [0.25, 0.75]])
    with pytest.raises(MeasureNotOne):
        make_domain([[0, 0.7]])
    with pytest.raises(ValidationError):
        make_domain([[0, 0.5], [1.0, 1.5]])
    with pytest.raises(ValidationError):
        make_domain([[1, 0]])


def test_fourier_examples():
    assert fourier_coeff(UNIT, 3, 3) == pytest.approx(1.0, abs=1e-15)
    z = fourier_coeff(UNIT, 2.5, 2)
    assert z == pytest.approx(2j / math.pi, abs=1e-15)
    assert abs(z) == pytest.approx(0.63662, abs=1e-5)
    z = fourier_coeff(UNIT, 0.25, 0)
    assert z == pytest.approx((1j - 1) / (math.pi * 1j / 2), abs=1e-15)
    assert abs(z) == pytest.approx(2 * math.sqrt(2) / math.pi, abs=1e-15)


def test_split_unit_interval_matches_whole():
    split = make_domain([[0, 0.5], [0.5, 1]])
    rng = np.random.default_rng(0)
    for lam, m in zip(rng.uniform(-5, 5, 20), rng.integers(-5, 6, 20)):
        assert fourier_coeff(split, lam, m) == pytest.approx(fourier_coeff(UNIT, lam, m), abs=1e-15)


@pytest.mark.parametrize("theta", [1e-12, -3e-11, 1e-10, 5e-10, 2e-9, 1e-6, 0.3, 4.7])
def test_near_resonance_against_quadrature(theta):
    dom = make_domain([[0.2, 0.7], [1.7, 2.2]])
    z = fourier_coeff(dom, 1 + theta, 1)
    assert abs(z - quad_fourier(dom.intervals, theta)) < 1e-12


def test_near_resonance_against_difference_quotient():
    # away from the resonance the textbook quotient is accurate
    a, b, theta = 0.3, 1.3, 0.37
    q = (cmath.exp(2j * math.pi * theta * b) - cmath.exp(2j * math.pi * theta * a)) / (2j * math.pi * theta)
    assert fourier_coeff(make_domain([[a, b]]), theta, 0) == pytest.approx(q, abs=1e-15)


def test_unit_box_factorises():
    box = unit_box(2)
    z = fourier_coeff(box, [0.25, 0.5], [0, 0])
    assert z == pytest.approx(fourier_coeff(UNIT, 0.25, 0) * fourier_coeff(UNIT, 0.5, 0), abs=1e-15)
    with pytest.raises(ValidationError):
        fourier_coeff(box, [0.1, 0.2, 0.3], [0, 0])


def test_lattice_order():
    assert lattice_points(1, 5).ravel().tolist() == [0, 1, -1, 2, -2]
    pts = lattice_points(2, 10).tolist()
    assert pts[0] == [0, 0]
    assert pts[1:9] == [[-1, -1], [-1, 0], [-1, 1], [0, -1], [0, 1], [1, -1], [1, 0], [1, 1]]
    assert max(abs(x) for x in pts[9]) == 2
    assert len({tuple(p) for p in lattice_points(3, 125).tolist()}) == 125


@pytest.mark.parametrize("d, N", [(1, 9), (2, 9), (3, 27)])
def test_integer_frequencies_give_identity(d, N):
    dom = UNIT if d == 1 else unit_box(d)
    freqs = lattice_points(d, N)
    np.testing.assert_allclose(coefficient_matrix(dom, freqs, N), np.eye(N), atol=1e-12)


def test_shifted_matrix_matches_quadrature():
    freqs = lattice_points(1, 6).ravel() + 0.05
    Mx = coefficient_matrix(UNIT, freqs, 6)
    ms = lattice_points(1, 6).ravel()
    for j in range(6):
        for k in range(6):
            assert abs(Mx[j, k] - quad_fourier([(0, 1)], freqs[j] - ms[k])) < 1e-12
    # Toeplitz-like: entries depend on m_k - m_j only
    assert Mx[1, 3] == pytest.approx(Mx[0, 1], abs=1e-15)


def test_certificate_identity():
    cert = suff_basis_check(UNIT, lattice_points(1, 7), 7, 1.0, 1.0, 0.999)
    assert cert.condition_holds
    assert cert.A_lower == pytest.approx(0.999)
    assert cert.B_upper == pytest.approx(1.001)
    assert cert.worst_sum == pytest.approx(0.0, abs=1e-12)
    assert cert.frame_lower == pytest.approx(0.999**2)


def test_certificate_shifted_is_sound():
    freqs = lattice_points(1, 8).ravel() + 0.05
    a, a_prime, delta = suggest_parameters(UNIT, freqs, 8)
    cert = suff_basis_check(UNIT, freqs, 8, a, a_prime, delta)
    assert cert.condition_holds
    Mx = coefficient_matrix(UNIT, freqs, 8)
    assert cert.A_lower <= np.linalg.eigvalsh(Mx @ Mx.conj().T).min()
    assert cert.sigma_min_lower > 0


def test_certificate_violation_carries_diagnostics():
    with pytest.raises(ConditionViolated) as info:
        suff_basis_check(UNIT, [0.5], 1, 0.9, 1.0, 0.5)
    exc = info.value
    assert exc.worst_row == 0
    assert not exc.certificate.condition_holds
    cert = suff_basis_check(UNIT, [0.5], 1, 0.9, 1.0, 0.5, raise_on_violation=False)
    assert not cert.condition_holds


def test_certificate_preconditions():
    with pytest.raises(ValidationError):
        suff_basis_check(UNIT, [0.0], 1, 1.0, 0.5, 0.5)
    with pytest.raises(ValidationError):
        suff_basis_check(UNIT, [0.0], 1, 1.0, 1.0, 1.0)


@pytest.mark.parametrize("seed", range(30))
def test_certificate_never_exceeds_tilde_lower(seed):
    rng = np.random.default_rng(seed)
    N = int(rng.integers(1, 10))
    freqs = lattice_points(1, N).ravel() + rng.uniform(-0.12, 0.12, N)
    params = suggest_parameters(UNIT, freqs, N)
    if params is None:
        return
    cert = suff_basis_check(UNIT, freqs, N, *params, raise_on_violation=False)
    if cert.condition_holds:
        Mx = coefficient_matrix(UNIT, freqs, N)
        ev = np.linalg.eigvalsh(Mx @ Mx.conj().T)
        assert cert.A_lower <= np.sqrt(ev.min()) + 1e-12
        assert cert.frame_lower <= ev.min() + 1e-12
        assert cert.frame_upper >= ev.max() - 1e-12


def test_unsquared_bounds_are_singular_value_bounds_only():
    # a single near-resonant frequency: a delta exceeds |m_11|^2 but not |m_11|
    freqs = [0.05]
    a, a_prime, delta = suggest_parameters(UNIT, freqs, 1)
    cert = suff_basis_check(UNIT, freqs, 1, a, a_prime, delta)
    m11 = abs(fourier_coeff(UNIT, 0.05, 0))
    assert cert.A_lower <= m11 + 1e-15
    assert cert.A_lower > m11**2
    assert cert.frame_lower <= m11**2 + 1e-15


def test_classical_upper_value_can_undershoot():
    # [[1, x], [0, 1]] meets the off-diagonal budget with a = a' = 1 but its
    # largest singular value exceeds a' + a(1 - delta)
    delta = 0.1
    x = 2 * (1 - delta)
    sigma_max = (x + math.sqrt(x * x + 4)) / 2
    assert sigma_max > 1 + (1 - delta)
    assert sigma_max**2 <= (1 + 2 * (1 - delta)) ** 2


def test_remark_feasibility():
    assert remark_feasibility(0.99, 0.999)
    assert feasibility_bound(0.01) == pytest.approx(math.sqrt(1 + 0.99**2) - 0.99, abs=1e-15)
    assert feasibility_bound(0.01) == pytest.approx(0.41716, abs=1e-5)
    assert not remark_feasibility(0.5, 0.01)
    assert remark_feasibility(0.3, 0.5)
    assert feasibility_bound(0.5) == pytest.approx(0.61803, abs=1e-5)
    with pytest.raises(ValidationError):
        remark_feasibility(0.5, 0.0)


@pytest.mark.parametrize("lam", [0.05, 0.37, -1.5, 2.9])
def test_plancherel_partial_sums(lam):
    dom = make_domain([[0, 0.5], [1.5, 2]])
    sums = []
    for J in (11, 101, 1001, 10001):
        ms = lattice_points(1, J).ravel()
        vals = [abs(fourier_coeff(dom, lam, m)) ** 2 for m in ms]
        sums.append(math.fsum(vals))
    assert all(s <= 1 + 1e-8 for s in sums)
    assert all(b >= a - 1e-15 for a, b in zip(sums, sums[1:]))
    assert abs(1 - sums[-1]) < 1e-3
