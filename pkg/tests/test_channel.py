"""Dephasing and dissipation channels on the fixed-offset manifold."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from ngfiber.bath import BathSpec
from ngfiber.channel import (
    ChannelParams,
    evolve_dephasing,
    evolve_with_dissipation,
    fidelity,
    negativity_after_dephasing,
    negativity_dissipative,
    recovery_times,
    visibility_unity_time,
)
from ngfiber.errors import ParameterError, ZeroFrequency
from ngfiber.fock import FockOperator, FockSpace
from ngfiber.negativity import negativity_analytic, negativity_fock
from ngfiber.states import build_state, embed_density_matrix

OMEGA = 1.216e15
WC = 2.62e10


def cold_bath() -> BathSpec:
    return BathSpec(omega_phonon=WC, temperature=0.0, omega_c=WC)


def warm_bath(temp: float = 0.2) -> BathSpec:
    return BathSpec(omega_phonon=WC, temperature=temp, omega_c=WC)


def params(tau_l: float, gamma_plus: float = 0.0, epsilon: float = 0.0) -> ChannelParams:
    return ChannelParams(
        omega_a=OMEGA,
        omega_b=OMEGA,
        gamma_plus=gamma_plus,
        gamma_minus=0.0,
        tau_l=tau_l,
        epsilon=epsilon,
    )


def test_params_validation():
    with pytest.raises(ParameterError):
        ChannelParams(-1.0, 0.0, 0.0, 0.0, 0.0)
    with pytest.raises(ParameterError):
        ChannelParams(0.0, 0.0, -1.0, 0.0, 0.0)
    with pytest.raises(ParameterError):
        ChannelParams(0.0, 0.0, 0.0, 0.0, -1e-9)
    with pytest.raises(ParameterError):
        ChannelParams(0.0, 0.0, 0.0, 0.0, 1.0, epsilon=-1.0)
    assert params(1e-6).omega_total == 2.0 * OMEGA


def test_dephasing_preserves_diagonal():
    state = build_state(1, 0.5)
    rho = evolve_dephasing(state, params(3.7e-7, gamma_plus=2.0e5), warm_bath())
    assert_allclose(
        np.diag(rho.rho).real, np.abs(state.coeffs) ** 2, rtol=0, atol=1e-14
    )
    rho.validate()


def test_zero_time_is_identity_channel():
    state = build_state(1, 0.5)
    rho = evolve_dephasing(state, params(0.0), warm_bath())
    assert_allclose(rho.rho, state.density_matrix().rho, rtol=0, atol=1e-15)


def test_difference_coupling_is_a_no_op():
    state = build_state(2, 0.6)
    bath = warm_bath()
    with_g = ChannelParams(OMEGA, OMEGA, 3.0e5, 0.0, 2.1e-7)
    with_both = ChannelParams(OMEGA, OMEGA, 3.0e5, 8.0e9, 2.1e-7)
    rho_a = evolve_dephasing(state, with_g, bath)
    rho_b = evolve_dephasing(state, with_both, bath)
    assert np.array_equal(rho_a.rho, rho_b.rho)
    assert fidelity(state, with_g, bath) == fidelity(state, with_both, bath)


def test_fidelity_full_and_half_turns():
    # tau = l pi / omega_total: full recovery at even l, a fixed dip at odd l
    state = build_state(1, 0.5)
    bath = cold_bath()
    pars = params(0.0)
    times = recovery_times(pars, s=0, l_max=4)
    assert_allclose(times, np.arange(1, 5) * math.pi / (2.0 * OMEGA), rtol=1e-15)
    dip = ((1.0 - 0.25) / (1.0 + 0.25)) ** 4  # zeta -> -zeta overlap, 0.1296
    for l, t in enumerate(times, start=1):
        f = fidelity(state, params(float(t)), bath)
        if l % 2 == 0:
            assert abs(f - 1.0) < 1e-10
        else:
            assert abs(f - dip) < 1e-10


def test_fidelity_dip_value_is_exact_for_truncated_state():
    # the zeta -> -zeta overlap for the two-term state: (2/3 - 1/3)^2 = 1/9
    state = build_state(1, 0.5, n_max=1)
    pars = params(0.0)
    t = float(recovery_times(pars, s=0, l_max=1)[0])
    assert_allclose(fidelity(state, params(t), cold_bath()), 1.0 / 9.0, rtol=1e-10)


def test_recovery_time_validation():
    pars = params(1.0)
    with pytest.raises(ParameterError):
        recovery_times(pars, s=-1, l_max=3)
    with pytest.raises(ParameterError):
        recovery_times(pars, s=0, l_max=0)
    zero = ChannelParams(0.0, 0.0, 0.0, 0.0, 1.0)
    with pytest.raises(ZeroFrequency):
        recovery_times(zero, s=0, l_max=1)


def test_visibility_unity_time_restores_negativity():
    # at tau gamma_plus = pi every thermal visibility rephases to 1
    state = build_state(1, 0.5)
    bath = warm_bath()
    gamma = 2.0e5
    t_star = visibility_unity_time(ChannelParams(OMEGA, OMEGA, gamma, 0.0, 0.0))
    assert_allclose(t_star, math.pi / gamma, rtol=1e-15)
    revived = negativity_after_dephasing(
        state, params(t_star, gamma_plus=gamma), bath
    )
    assert_allclose(revived, negativity_analytic(state), rtol=1e-12)
    # between revivals the thermal spread bites
    half = negativity_after_dephasing(
        state, params(0.5 * t_star, gamma_plus=gamma), bath
    )
    assert half < revived
    with pytest.raises(ZeroFrequency):
        visibility_unity_time(params(1.0))


def test_dephased_negativity_series_matches_dense():
    state = build_state(1, 0.5, n_max=8)
    bath = warm_bath()
    pars = params(2.3e-7, gamma_plus=4.0e5)
    series = negativity_after_dephasing(state, pars, bath)
    rho = evolve_dephasing(state, pars, bath)
    space = FockSpace(2 * state.n_max + state.p)
    dense = negativity_fock(FockOperator(space, embed_density_matrix(rho, space)))
    assert_allclose(dense, series, rtol=0, atol=1e-12)


def test_dissipative_negativity_matches_dense():
    state = build_state(1, 0.5, n_max=8)
    bath = cold_bath()
    pars = params(10.0 / WC, epsilon=4.325e-12)
    series = negativity_dissipative(state, pars, bath)
    rho = evolve_with_dissipation(state, pars, bath)
    space = FockSpace(2 * state.n_max + state.p)
    dense = negativity_fock(FockOperator(space, embed_density_matrix(rho, space)))
    assert_allclose(dense, series, rtol=0, atol=1e-12)


def test_dissipative_series_requires_cold_bath_unless_combined():
    state = build_state(1, 0.5, n_max=8)
    pars = params(1.0 / WC, epsilon=1e-12)
    with pytest.raises(ParameterError):
        negativity_dissipative(state, pars, warm_bath())
    # combined mode folds the visibilities in and matches the dense route
    combined = negativity_dissipative(state, pars, warm_bath(), combined=True)
    rho = evolve_with_dissipation(state, pars, warm_bath())
    space = FockSpace(2 * state.n_max + state.p)
    dense = negativity_fock(FockOperator(space, embed_density_matrix(rho, space)))
    assert_allclose(dense, combined, rtol=0, atol=1e-12)


def test_no_fluctuations_means_no_decay():
    state = build_state(1, 0.5)
    pars = params(5.0 / WC, epsilon=0.0)
    assert_allclose(
        negativity_dissipative(state, pars, cold_bath()),
        negativity_analytic(state),
        rtol=0,
        atol=1e-14,
    )


def test_dissipation_decays_with_epsilon():
    state = build_state(1, 0.5)
    bath = cold_bath()
    values = [
        negativity_dissipative(state, params(10.0 / WC, epsilon=e), bath)
        for e in (0.0, 2e-12, 4e-12, 8e-12)
    ]
    assert all(b < a for a, b in zip(values, values[1:]))


def test_huge_fluctuations_kill_all_coherence():
    state = build_state(1, 0.5)
    pars = params(10.0 / WC, epsilon=1e-3)
    rho = evolve_with_dissipation(state, pars, cold_bath())
    off_diag = rho.rho - np.diag(np.diag(rho.rho))
    assert np.max(np.abs(off_diag)) == 0.0
    assert negativity_dissipative(state, pars, cold_bath()) == 0.0


def test_dissipation_preserves_diagonal():
    state = build_state(1, 0.6)
    rho = evolve_with_dissipation(
        state, params(3.0 / WC, epsilon=4e-12), cold_bath()
    )
    assert_allclose(
        np.diag(rho.rho).real, np.abs(state.coeffs) ** 2, rtol=0, atol=1e-14
    )
    rho.validate()
