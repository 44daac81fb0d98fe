"""State construction: norm series, coefficients, embedding, wavefunction."""

import math

import numpy as np
import pytest
from numpy.polynomial.hermite import hermgauss, hermval
from numpy.testing import assert_allclose

from ngfiber.errors import (
    DegenerateState,
    DivergentState,
    NonHermitianInput,
    ParameterError,
    TruncationTooSmall,
)
from ngfiber.fock import FockSpace
from ngfiber.states import (
    ManifoldDensityMatrix,
    NonGaussianState,
    build_state,
    embed,
    embed_density_matrix,
    normalization,
    wavefunction,
)


def closed_form_norm(p: int, abs_zeta: float) -> float:
    # sum_n |z|^(2(n+p)) (n+p)!/n! = p! |z|^(2p) / (1 - |z|^2)^(p+1)
    return math.factorial(p) * abs_zeta ** (2 * p) / (1.0 - abs_zeta**2) ** (p + 1)


def test_normalization_closed_form():
    for p in (0, 1, 2, 3):
        for zeta in (0.1, 0.3, 0.5, 0.7):
            p2, n_max = normalization(p, zeta, tail_tol=1e-15)
            assert_allclose(p2, closed_form_norm(p, zeta), rtol=1e-13)
            assert n_max >= 0


def test_normalization_single_subtraction_oracle():
    # p = 1, zeta = 0.5: P^2 = 0.25 / 0.75^2 = 4/9
    p2, _ = normalization(1, 0.5, tail_tol=1e-15)
    assert_allclose(p2, 4.0 / 9.0, rtol=1e-13)


def test_tail_tolerance_controls_truncation():
    _, loose = normalization(1, 0.6, tail_tol=1e-6)
    _, tight = normalization(1, 0.6, tail_tol=1e-14)
    assert tight > loose


def test_build_state_unit_norm_and_ratios():
    for p in (0, 1, 3):
        state = build_state(p, 0.55)
        norms = np.abs(state.coeffs) ** 2
        assert_allclose(norms.sum(), 1.0, rtol=0, atol=1e-14)
        # coefficient recurrence c_{n+1}/c_n = zeta sqrt((n+p+1)/(n+1))
        for n in range(state.n_max):
            ratio = state.coeffs[n + 1] / state.coeffs[n]
            assert_allclose(
                ratio, 0.55 * math.sqrt((n + p + 1) / (n + 1)), rtol=1e-12
            )


def test_build_state_complex_squeezing_phases():
    r, theta = 0.5, 1.3
    state = build_state(1, r * np.exp(1j * theta))
    ref = build_state(1, r)
    assert_allclose(np.abs(state.coeffs), np.abs(ref.coeffs), rtol=0, atol=1e-15)
    ns = np.arange(state.n_max + 1)
    assert_allclose(
        np.angle(state.coeffs), ((ns + 1) * theta + np.pi) % (2 * np.pi) - np.pi,
        rtol=0, atol=1e-12,
    )


def test_build_state_explicit_truncation():
    state = build_state(1, 0.5, n_max=5)
    assert state.n_max == 5
    assert state.coeffs.shape == (6,)
    assert_allclose((np.abs(state.coeffs) ** 2).sum(), 1.0, rtol=0, atol=1e-15)
    # two-term truncation has a hand-checkable split: 2/3 and 1/3
    tiny = build_state(1, 0.5, n_max=1)
    assert_allclose(np.abs(tiny.coeffs) ** 2, [2.0 / 3.0, 1.0 / 3.0], rtol=1e-15)


def test_tail_bound_is_recorded_and_small():
    state = build_state(1, 0.5)
    assert 0.0 <= state.tail_bound < 1e-12


def test_vacuum_state():
    state = build_state(0, 0.0)
    assert state.n_max == 0
    assert_allclose(state.coeffs, [1.0], rtol=0, atol=0)


def test_invalid_parameters():
    with pytest.raises(DivergentState):
        build_state(1, 1.0)
    with pytest.raises(DivergentState):
        normalization(0, 1.2)
    with pytest.raises(DegenerateState):
        build_state(2, 0.0)
    with pytest.raises(ParameterError):
        build_state(-1, 0.5)
    with pytest.raises(ParameterError):
        build_state(1.5, 0.5)
    with pytest.raises(ParameterError):
        normalization(1, 0.5, tail_tol=0.0)
    with pytest.raises(ParameterError):
        build_state(1, 0.5, n_max=-2)


def test_coefficient_vector_length_is_checked():
    with pytest.raises(ParameterError):
        NonGaussianState(1, 0.5, 2, np.array([1.0]), 1.0, 0.0)


def test_embed_round_trip():
    state = build_state(1, 0.5, n_max=3)
    space = FockSpace(2 * 3 + 1)
    vec = embed(state, space)
    assert_allclose(np.linalg.norm(vec), 1.0, rtol=0, atol=1e-14)
    for n in range(4):
        assert vec[space.index(n, n + 1)] == state.coeffs[n]
    # every populated index sits on the manifold
    populated = np.flatnonzero(np.abs(vec))
    assert all(space.n_b[i] - space.n_a[i] == 1 for i in populated)


def test_embed_requires_room():
    state = build_state(1, 0.5, n_max=3)
    with pytest.raises(TruncationTooSmall):
        embed(state, FockSpace(6))
    with pytest.raises(TruncationTooSmall):
        embed_density_matrix(state.density_matrix(), FockSpace(6))


def test_density_matrix_is_valid():
    state = build_state(2, 0.6)
    rho = state.density_matrix()
    rho.validate()
    assert_allclose(np.trace(rho.rho).real, 1.0, rtol=0, atol=1e-13)
    assert rho.p == 2 and rho.n_max == state.n_max


def test_density_matrix_validation_catches_defects():
    bad = ManifoldDensityMatrix(1, 1, np.array([[0.5, 0.1], [0.3, 0.5]], dtype=complex))
    with pytest.raises(NonHermitianInput):
        bad.validate()
    off_trace = ManifoldDensityMatrix(1, 0, np.array([[0.7]], dtype=complex))
    with pytest.raises(ParameterError):
        off_trace.validate()
    not_psd = ManifoldDensityMatrix(
        1, 1, np.array([[1.5, 0.0], [0.0, -0.5]], dtype=complex)
    )
    with pytest.raises(ParameterError):
        not_psd.validate()


def test_wavefunction_matches_hermite_sum():
    # direct evaluation with physicists' Hermite polynomials, independent of
    # the oscillator recurrence used internally
    for p in (0, 1, 2):
        state = build_state(p, 0.5)
        zeta = 0.5
        for x, y in ((0.3, -0.7), (1.1, 0.4), (-0.2, 1.6)):
            total = 0.0
            for n in range(state.n_max + 1):
                hx = hermval(x, [0.0] * n + [1.0])
                hy = hermval(y, [0.0] * (n + p) + [1.0])
                total += (zeta / 2.0) ** n / math.factorial(n) * hx * hy
            expected = (
                zeta**p
                / math.sqrt(2.0**p * math.pi)
                * total
                * math.exp(-(x * x + y * y) / 2.0)
            )
            assert_allclose(wavefunction(state, x, y), expected, rtol=1e-11)


def test_wavefunction_squared_norm_is_p2():
    # Gauss-Hermite quadrature integrates |psi|^2 exactly: after factoring the
    # Gaussian weight the integrand is polynomial in x and y
    state = build_state(1, 0.5)
    nodes, weights = hermgauss(state.n_max + state.p + 8)
    vals = np.array(
        [[wavefunction(state, x, y) for y in nodes] for x in nodes]
    )
    # |psi|^2 = g(x,y) exp(-x^2) exp(-y^2): undo the kernel the weights supply
    g = np.abs(vals) ** 2 * np.exp(nodes[:, None] ** 2) * np.exp(nodes[None, :] ** 2)
    integral = weights @ g @ weights
    assert_allclose(integral, state.norm_p2, rtol=1e-10)
    assert_allclose(integral, 4.0 / 9.0, rtol=1e-9)
