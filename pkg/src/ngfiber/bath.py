"""Thermal phonon statistics and Ohmic-bath dissipation integrals.

Two bath effects enter the fiber channel: a thermally weighted phase spread
(captured by visibility factors over the Gibbs distribution of a
representative phonon mode) and a dissipative decay rate obtained by
integrating an Ohmic memory kernel with exponential cutoff against the
accumulated phase filter 2 sin^2(omega tau / 2) / omega^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from .constants import HBAR, K_B
from .errors import (
    ParameterError,
    QuadratureNonConvergence,
    ZeroModeDifference,
    ZeroTemperature,
)

DEFAULT_GIBBS_TAIL_TOL = 1e-12


@dataclass
class BathSpec:
    """Representative phonon mode plus Ohmic continuum parameters."""

    omega_phonon: float  # rad/s, level spacing of the representative mode
    temperature: float  # K
    omega_c: float  # rad/s, Ohmic cutoff
    gibbs_tail_tol: float = DEFAULT_GIBBS_TAIL_TOL

    def __post_init__(self):
        if self.omega_phonon <= 0:
            raise ParameterError("omega_phonon must be > 0")
        if self.temperature < 0:
            raise ParameterError("temperature must be >= 0")
        if self.omega_c <= 0:
            raise ParameterError("omega_c must be > 0")
        if not (0 < self.gibbs_tail_tol < 1):
            raise ParameterError("gibbs_tail_tol must be in (0, 1)")

    def boltzmann_ratio(self) -> float:
        """exp(-hbar Omega / kB T), the Gibbs weight ratio between levels."""
        if self.temperature == 0.0:
            return 0.0
        return math.exp(-HBAR * self.omega_phonon / (K_B * self.temperature))


def gibbs_weights(bath: BathSpec):
    """Thermal occupation probabilities p_s, truncated and renormalized.

    Returns (weights, s_max).  The zero-point energy cancels in the ratio, so
    p_s is geometric: p_s = (1-q) q^s with q = exp(-hbar Omega / kB T).  The
    cut keeps the neglected mass below gibbs_tail_tol; weights are rescaled
    to sum to one exactly.
    """
    q = bath.boltzmann_ratio()
    if q == 0.0:
        return np.array([1.0]), 0
    s_max = max(0, math.ceil(math.log(bath.gibbs_tail_tol) / math.log(q)) - 1)
    s = np.arange(s_max + 1)
    w = (1.0 - q) * q ** s
    w /= w.sum()
    return w, s_max


def visibility_direct(bath: BathSpec, x: float, k: int) -> float:
    """|sum_s p_s exp(-2 i x s k)| by direct summation over Gibbs weights."""
    if k == 0:
        raise ZeroModeDifference("visibility requires k != 0")
    w, s_max = gibbs_weights(bath)
    s = np.arange(s_max + 1)
    return float(abs(np.sum(w * np.exp(-2j * x * k * s))))


def visibility_closed(bath: BathSpec, x: float, k: int) -> float:
    """Closed form of the thermal visibility.

    v = (1/2Z) / |sinh(hbar Omega / 2 kB T + i x k)| with the partition
    function Z = 1 / (2 sinh(hbar Omega / 2 kB T)); using
    |sinh(a+ib)|^2 = sinh^2 a + sin^2 b this is evaluated in the
    overflow-safe form 1 / sqrt(1 + (sin(xk)/sinh(a))^2).  Periodic in x
    with period pi/|k|.
    """
    if k == 0:
        raise ZeroModeDifference("visibility requires k != 0")
    if bath.temperature == 0.0:
        raise ZeroTemperature("closed-form visibility is written for T > 0")
    a = HBAR * bath.omega_phonon / (2.0 * K_B * bath.temperature)
    if a > 300.0:  # sinh overflows; the ratio is 1 to better than 1e-260
        return 1.0
    ratio = math.sin(x * k) / math.sinh(a)
    return 1.0 / math.sqrt(1.0 + ratio * ratio)


def ohmic_memory(omega, omega_c: float):
    """Ohmic memory kernel with exponential cutoff, omega^2 exp(-omega/omega_c).

    Mass-normalized so the spectral shape is exactly this expression; its
    maximum sits at omega = 2 omega_c.
    """
    omega = np.asarray(omega, dtype=float)
    return omega * omega * np.exp(-omega / omega_c)


def dissipation_rate_closed(omega_c: float, tau_l: float) -> float:
    """Zero-temperature dissipation rate, x^2 (3 + x^2) / (1 + x^2)^2 * omega_c^2.

    x = omega_c tau_l.  Grows as 3 x^2 omega_c^2 for x << 1 and saturates at
    omega_c^2 for x >> 1.  Units rad^2/s^2.
    """
    if omega_c <= 0:
        raise ParameterError("omega_c must be > 0")
    if tau_l < 0:
        raise ParameterError("tau_l must be >= 0")
    x = omega_c * tau_l
    x2 = x * x
    return omega_c * omega_c * x2 * (3.0 + x2) / (1.0 + x2) ** 2


def _coth_factor(omega: np.ndarray, temperature: float) -> np.ndarray:
    """2 omega coth(hbar omega / 2 kB T), with the omega -> 0 limit analytic.

    The coth divergence cancels against the omega prefactor: the small-y
    expansion coth(y) = 1/y + y/3 + O(y^3) gives
    2 omega coth -> 4 kB T / hbar + hbar omega^2 / (3 kB T).
    """
    if temperature == 0.0:
        return 2.0 * omega
    y = HBAR * omega / (2.0 * K_B * temperature)
    out = np.empty_like(omega)
    small = y < 1e-6
    ys = y[small]
    out[small] = 4.0 * K_B * temperature / HBAR + HBAR * omega[small] ** 2 / (
        3.0 * K_B * temperature
    )
    # second-order small-y correction is y^2/3 relative, < 1e-12 here
    big = ~small
    out[big] = 2.0 * omega[big] / np.tanh(y[big])
    return out


def _panel_integral(f, upper: float, width: float, order: int) -> float:
    """Composite Gauss-Legendre integral of f over [0, upper] in fixed panels."""
    nodes, weights = leggauss(order)
    n_panels = max(1, int(math.ceil(upper / width)))
    edges = np.linspace(0.0, upper, n_panels + 1)
    lo, hi = edges[:-1], edges[1:]
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    pts = mid[:, None] + half[:, None] * nodes[None, :]
    vals = f(pts.ravel()).reshape(pts.shape)
    return float(np.sum(half[:, None] * weights[None, :] * vals))


def dissipation_rate_quadrature(bath: BathSpec, tau_l: float) -> float:
    """Dissipation rate by adaptive panel quadrature of the spectral integral.

    Integrates omega^3 exp(-omega/omega_c) coth(hbar omega / 2 kB T)
    * 2 sin^2(omega tau_l / 2) / omega^2 over omega in [0, inf).  Panels are
    kept narrower than both the cutoff scale and a quarter oscillation
    pi / (4 tau_l); the upper limit is extended until the exponential tail is
    negligible, and two quadrature orders must agree or the routine raises.
    """
    if tau_l < 0:
        raise ParameterError("tau_l must be >= 0")
    if tau_l == 0.0:
        return 0.0
    wc = bath.omega_c
    temp = bath.temperature

    def integrand(omega):
        return (
            _coth_factor(omega, temp)
            * np.exp(-omega / wc)
            * np.sin(0.5 * omega * tau_l) ** 2
        )

    # extend the window until the analytic tail bound is negligible:
    # integrand <= 2 omega coth(...) exp(-omega/wc), whose tail integral
    # beyond W*wc is < coth-at-W * 2 wc^2 e^-W (1 + W)
    upper = 35.0 * wc
    while True:
        tail_factor = 1.0
        if temp > 0:
            y = HBAR * upper / (2.0 * K_B * temp)
            tail_factor = 1.0 / math.tanh(min(y, 50.0)) if y > 1e-12 else 2.0 / y
        w_over = upper / wc
        tail_bound = tail_factor * 2.0 * wc * wc * math.exp(-w_over) * (1.0 + w_over)
        if tail_bound < 1e-13 * wc * wc or upper > 1e4 * wc:
            break
        upper *= 1.5

    width = min(0.5 * wc, math.pi / (4.0 * tau_l))
    for _ in range(4):
        coarse = _panel_integral(integrand, upper, width, order=16)
        fine = _panel_integral(integrand, upper, width, order=32)
        scale = max(abs(fine), 1e-300)
        if abs(fine - coarse) <= 1e-9 * scale:
            return fine
        width *= 0.5
    raise QuadratureNonConvergence(
        f"panel quadrature failed to stabilize for tau_l = {tau_l:g}"
    )
