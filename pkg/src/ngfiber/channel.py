"""Decoherence channels for manifold states riding a fiber segment.

The collective coupling splits into a sum and a difference of the two mode
numbers.  On the |n, n+p> manifold the difference is the constant -p, so its
coupling contributes only a global phase (this is the protected-subspace
property; gamma_minus is therefore accepted but never changes the state).
The sum 2n + p drives thermal dephasing between manifold indices, and
segment-length fluctuations add a Gaussian decay in (n - m).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bath import (
    BathSpec,
    dissipation_rate_closed,
    dissipation_rate_quadrature,
    gibbs_weights,
)
from .errors import ParameterError, ZeroFrequency
from .states import ManifoldDensityMatrix, NonGaussianState

EXP_CLAMP = 700.0  # beyond this the decay factor underflows; clamp to 0


@dataclass
class ChannelParams:
    """Frequencies and coupling rates seen during one transit."""

    omega_a: float  # rad/s
    omega_b: float  # rad/s
    gamma_plus: float  # rad/s, couples to n_a + n_b
    gamma_minus: float  # rad/s, couples to n_a - n_b: a manifold no-op
    tau_l: float  # s, transit (or segment-accumulation) time
    epsilon: float = 0.0  # s, rms segment-timing fluctuation

    def __post_init__(self):
        if self.omega_a < 0 or self.omega_b < 0:
            raise ParameterError("mode frequencies must be >= 0")
        if self.gamma_plus < 0 or self.gamma_minus < 0:
            raise ParameterError("coupling rates must be >= 0")
        if self.tau_l < 0:
            raise ParameterError("tau_l must be >= 0")
        if self.epsilon < 0:
            raise ParameterError("epsilon must be >= 0")

    @property
    def omega_total(self) -> float:
        return self.omega_a + self.omega_b


def _thermal_phase_means(n_max: int, params: ChannelParams, bath: BathSpec) -> np.ndarray:
    """d[k] = sum_s p_s exp(-2 i tau_l gamma_plus s k) for k = 0..n_max."""
    w, s_max = gibbs_weights(bath)
    s = np.arange(s_max + 1)
    k = np.arange(n_max + 1)
    phases = np.exp(-2j * params.tau_l * params.gamma_plus * np.outer(k, s))
    return phases @ w


def evolve_dephasing(
    state: NonGaussianState, params: ChannelParams, bath: BathSpec, validate: bool = True
) -> ManifoldDensityMatrix:
    """Thermally averaged dephasing of the pure manifold state.

    rho_nm = c_n c_m^* sum_s p_s exp(-i tau_l [omega_total + 2 gamma_plus s]
    (n - m)).  The diagonal is untouched; coherences acquire the thermal
    visibility.  gamma_minus does not appear: the difference coupling is
    constant on the manifold and cancels between bra and ket.
    """
    c = state.coeffs
    n = np.arange(state.n_max + 1)
    dn = n[:, None] - n[None, :]
    d = _thermal_phase_means(state.n_max, params, bath)
    dmat = np.where(dn >= 0, d[np.abs(dn)], np.conj(d[np.abs(dn)]))
    phase = np.exp(-1j * params.tau_l * params.omega_total * dn)
    rho = np.outer(c, c.conj()) * phase * dmat
    out = ManifoldDensityMatrix(state.p, state.n_max, rho)
    if validate:
        out.validate()
    return out


def fidelity(state: NonGaussianState, params: ChannelParams, bath: BathSpec) -> float:
    """Overlap <psi| rho(tau_l) |psi> after thermal dephasing.

    Equals sum_s p_s |sum_n |c_n|^2 exp(-i tau_l n (omega_total +
    2 gamma_plus s))|^2; bounded by 1, reaching it whenever every relative
    phase winds by a multiple of 2 pi.
    """
    w, s_max = gibbs_weights(bath)
    s = np.arange(s_max + 1)
    n = np.arange(state.n_max + 1)
    weights = np.abs(state.coeffs) ** 2
    chi = params.omega_total + 2.0 * params.gamma_plus * s  # per thermal level
    inner = np.exp(-1j * params.tau_l * np.outer(chi, n)) @ weights
    f = float(np.sum(w * np.abs(inner) ** 2))
    return min(max(f, 0.0), 1.0)


def recovery_times(params: ChannelParams, s: int, l_max: int) -> np.ndarray:
    """Times l pi / (omega_total + 2 gamma_plus s) for l = 1..l_max.

    At even l every coherence phase is a multiple of 2 pi and the fidelity
    returns to 1 exactly.  At odd l the phases alternate sign with n, which
    maps the state to its zeta -> -zeta partner: still pure, same
    entanglement, but the overlap with the original dips to
    ((1-|zeta|^2)/(1+|zeta|^2))^(2(p+1)).
    """
    if s < 0 or l_max < 1:
        raise ParameterError("s must be >= 0 and l_max >= 1")
    chi = params.omega_total + 2.0 * params.gamma_plus * s
    if chi <= 0:
        raise ZeroFrequency("omega_total + 2 gamma_plus s must be > 0")
    return np.arange(1, l_max + 1) * math.pi / chi


def visibility_unity_time(params: ChannelParams) -> float:
    """Segment time tau = pi / gamma_plus at which every thermal visibility is 1."""
    if params.gamma_plus <= 0:
        raise ZeroFrequency("gamma_plus must be > 0")
    return math.pi / params.gamma_plus


def negativity_after_dephasing(
    state: NonGaussianState, params: ChannelParams, bath: BathSpec
) -> float:
    """Negativity of the dephased state from its coherence magnitudes.

    N = 2 sum_{n<m} |c_n||c_m| v_{m-n}, where v_k is the thermal visibility
    at x = tau_l gamma_plus.  Uses the same truncated Gibbs weights as
    evolve_dephasing, so it matches the dense eigensolver route exactly.
    """
    a = np.abs(state.coeffs)
    d = _thermal_phase_means(state.n_max, params, bath)
    v = np.abs(d)
    total = 0.0
    for k in range(1, state.n_max + 1):
        total += 2.0 * v[k] * float(np.sum(a[:-k] * a[k:]))
    return total


def _decay_factors(n_max: int, gamma: float, epsilon: float) -> np.ndarray:
    """exp(-4 epsilon^2 gamma k^2) for k = 0..n_max, with underflow clamped to 0."""
    k = np.arange(n_max + 1, dtype=float)
    exponent = 4.0 * epsilon * epsilon * gamma * k * k
    out = np.where(exponent > EXP_CLAMP, 0.0, np.exp(-np.minimum(exponent, EXP_CLAMP)))
    return out


def _dissipation_gamma(params: ChannelParams, bath: BathSpec) -> float:
    if bath.temperature == 0.0:
        return dissipation_rate_closed(bath.omega_c, params.tau_l)
    return dissipation_rate_quadrature(bath, params.tau_l)


def evolve_with_dissipation(
    state: NonGaussianState, params: ChannelParams, bath: BathSpec, validate: bool = True
) -> ManifoldDensityMatrix:
    """Dephasing plus Gaussian coherence decay from timing fluctuations.

    Multiplies the dephased matrix elementwise by
    exp(-4 epsilon^2 Gamma(tau_l) (n-m)^2), with Gamma from the closed
    zero-temperature rate when T = 0 and from quadrature otherwise.  The
    diagonal is preserved.
    """
    base = evolve_dephasing(state, params, bath, validate=False)
    gamma = _dissipation_gamma(params, bath)
    decay = _decay_factors(state.n_max, gamma, params.epsilon)
    n = np.arange(state.n_max + 1)
    dn = np.abs(n[:, None] - n[None, :])
    rho = base.rho * decay[dn]
    out = ManifoldDensityMatrix(state.p, state.n_max, rho)
    if validate:
        out.validate()
    return out


def negativity_dissipative(
    state: NonGaussianState,
    params: ChannelParams,
    bath: BathSpec,
    combined: bool = False,
) -> float:
    """Negativity after timing-fluctuation decay.

    The default is the zero-temperature branch
    N = sum_{n != m} |c_n||c_m| exp(-4 epsilon^2 Gamma (n-m)^2) and requires
    bath.temperature == 0.  With combined=True the thermal visibility factors
    are multiplied in as well (and Gamma switches to the quadrature rate),
    matching evolve_with_dissipation at T > 0.
    """
    if bath.temperature > 0.0 and not combined:
        raise ParameterError(
            "the plain dissipative series is a T = 0 result; pass combined=True "
            "to fold in thermal visibilities"
        )
    a = np.abs(state.coeffs)
    gamma = _dissipation_gamma(params, bath)
    decay = _decay_factors(state.n_max, gamma, params.epsilon)
    if combined and bath.temperature > 0.0:
        v = np.abs(_thermal_phase_means(state.n_max, params, bath))
        decay = decay * v
    total = 0.0
    for k in range(1, state.n_max + 1):
        total += 2.0 * decay[k] * float(np.sum(a[:-k] * a[k:]))
    return total
