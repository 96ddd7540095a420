"""Control-field synthesis for the dark-state transfer scheme.

All rates are expressed in units of 1/T and all times in units of T, where T
is the common Gaussian width of the pump and Stokes pulses (fixed to 1
internally; converting to a physical pulse length is a presentation-layer
concern).  The module provides

* the counter-intuitively ordered pump/Stokes Gaussian pair,
* the closed-form correction amplitude that makes the transfer exactly
  follow the instantaneous dark state,
* the physically realizable auxiliary pulse pair that synthesizes the same
  correction through a far-detuned level, and
* a numerical correction term for arbitrary Hermitian schedules, used as an
  independent oracle for the closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import DegenerateSpectrumError, ParameterDomainError

# Both Gaussians below this fraction of their peak count as switched off;
# the correction amplitude is clamped to zero there instead of evaluating a
# 0/0 ratio.
TAIL_CLAMP = 1e-30
_LOG_TAIL_CLAMP = math.log(TAIL_CLAMP)

# Minimum eigenvalue gap, relative to the spectral norm, below which
# generic_counterdiabatic refuses to divide by level spacings.
DEGENERACY_RTOL = 1e-9


@dataclass(frozen=True)
class PulseParameters:
    """Amplitudes, centers, and detunings of all drives.

    omega0   peak Rabi amplitude of the pump/Stokes pair (1/T)
    tau_p    pump-pulse center offset, pump peaks at +tau_p (T)
    tau_s    Stokes-pulse center offset, Stokes peaks at -tau_s (T)
    delta    one-photon detuning of the intermediate excited level (1/T)
    delta_m  detuning of the auxiliary excited level (1/T)
    T        characteristic pulse width; the unit of time
    """

    omega0: float
    tau_p: float = 0.5
    tau_s: float = 0.5
    delta: float = 1.0
    delta_m: float = 18.0
    T: float = 1.0

    def __post_init__(self):
        if self.T <= 0:
            raise ParameterDomainError(f"T must be positive, got {self.T}")
        if self.omega0 < 0:
            raise ParameterDomainError(
                f"omega0 must be non-negative, got {self.omega0}"
            )


def gaussian_pulse(omega0: float, center: float, width: float, t):
    """Gaussian envelope omega0 * exp(-((t - center) / width)**2)."""
    if width <= 0:
        raise ParameterDomainError(f"pulse width must be positive, got {width}")
    u = (np.asarray(t, dtype=float) - center) / width
    value = omega0 * np.exp(-u * u)
    if np.ndim(t) == 0:
        return float(value)
    return value


def stirap_pair(params: PulseParameters, t):
    """Pump and cavity-coupling envelopes (omega_r, g) at time t.

    The cavity (Stokes) pulse peaks at -tau_s and therefore precedes the
    pump, which peaks at +tau_p: the counter-intuitive ordering required for
    dark-state transfer.
    """
    omega_r = gaussian_pulse(params.omega0, params.tau_p, params.T, t)
    g = gaussian_pulse(params.omega0, -params.tau_s, params.T, t)
    return omega_r, g


def counterdiabatic_amplitude(params: PulseParameters, t):
    """Closed-form correction amplitude for the Gaussian pump/Stokes pair.

    Equals d/dt arctan(omega_r / g).  The textbook ratio
    (g*domega_r - dg*omega_r) / (omega_r**2 + g**2) underflows to 0/0 in the
    far tails, so the equivalent form

        2 (tau_p + tau_s) / T**2 * 1 / (r + 1/r),    r = omega_r / g

    is evaluated with the Gaussian ratio r taken in log space.  The result is
    exact in real arithmetic, non-negative, and decays to zero in the tails;
    it is clamped to exactly zero once both pulses are below
    TAIL_CLAMP * omega0.
    """
    tt = np.asarray(t, dtype=float)
    t_sq = params.T * params.T
    exponent_p = -((tt - params.tau_p) ** 2) / t_sq
    exponent_s = -((tt + params.tau_s) ** 2) / t_sq
    log_ratio = exponent_p - exponent_s  # log(omega_r / g); omega0 cancels
    prefactor = 2.0 * (params.tau_p + params.tau_s) / t_sq
    # 1 / (r + 1/r) rewritten so neither exponential can overflow.
    damp = np.exp(-np.abs(log_ratio))
    value = prefactor * damp / (1.0 + damp * damp)
    switched_off = (exponent_p < _LOG_TAIL_CLAMP) & (exponent_s < _LOG_TAIL_CLAMP)
    value = np.where(switched_off, 0.0, value)
    if np.ndim(t) == 0:
        return float(value)
    return value


def physical_pulse_pair(params: PulseParameters, t):
    """Equal auxiliary pulse pair (g_m, omega_m) at time t.

    Both pulses share the shape alpha * exp(-(t**2 + tau_s**2)/T**2) / beta
    with beta**2 = exp(-2(t+tau_s)**2/T**2) + exp(-2(t-tau_p)**2/T**2) and
    alpha**2 = 2*delta_m/T, so that the far-detuned Raman product
    omega_m * g_m / delta_m reproduces the correction amplitude for the
    standard pulse arrangement tau_p = tau_s = T/2.
    """
    if params.delta_m <= 0:
        raise ParameterDomainError(
            f"delta_m must be positive for physical pulses, got {params.delta_m}"
        )
    tt = np.asarray(t, dtype=float)
    t_sq = params.T * params.T
    alpha = math.sqrt(2.0 * params.delta_m / params.T)
    u = -2.0 * (tt + params.tau_s) ** 2 / t_sq
    v = -2.0 * (tt - params.tau_p) ** 2 / t_sq
    peak = np.maximum(u, v)
    # beta factored as exp(peak/2) * sqrt(...) so the ratio stays finite even
    # when both exponentials underflow.
    beta_scaled = np.sqrt(np.exp(u - peak) + np.exp(v - peak))
    log_num = -(tt * tt + params.tau_s * params.tau_s) / t_sq
    value = alpha * np.exp(log_num - 0.5 * peak) / beta_scaled
    if np.ndim(t) == 0:
        value = float(value)
    return value, value


def generic_counterdiabatic(
    hamiltonian: Callable[[float], np.ndarray], t: float, dt: float
) -> np.ndarray:
    """Numerical correction term i * sum_n |d/dt lambda_n><lambda_n|.

    The schedule is differentiated by a central difference of the Hamiltonian
    itself over [t - dt/2, t + dt/2]; the eigenvector derivatives then follow
    from first-order perturbation theory in the instantaneous eigenbasis,

        <lambda_m | d/dt lambda_n> = <lambda_m| dH/dt |lambda_n> / (E_n - E_m),

    which fixes the gauge without any explicit eigenvector phase alignment
    and keeps the eigensolver's rounding noise from being amplified by 1/dt.
    The diagonal (pure re-phasing) part never enters, and the result is
    symmetrized so it is Hermitian by construction.

    Raises DegenerateSpectrumError when the smallest eigenvalue gap at t is
    below DEGENERACY_RTOL times the spectral norm.
    """
    if dt <= 0:
        raise ParameterDomainError(f"dt must be positive, got {dt}")
    h_mid = np.asarray(hamiltonian(t), dtype=complex)
    evals, vecs = np.linalg.eigh(h_mid)
    if evals.size > 1:
        gap = float(np.min(np.diff(evals)))
        scale = float(np.max(np.abs(evals)))
        if gap <= 0.0 or gap < DEGENERACY_RTOL * scale:
            raise DegenerateSpectrumError(
                f"eigenvalue gap {gap:.3e} below "
                f"{DEGENERACY_RTOL:g} * ||H|| = {DEGENERACY_RTOL * scale:.3e} "
                f"at t = {t}"
            )
    h_plus = np.asarray(hamiltonian(t + 0.5 * dt), dtype=complex)
    h_minus = np.asarray(hamiltonian(t - 0.5 * dt), dtype=complex)
    h_dot = (h_plus - h_minus) / dt
    h_dot = 0.5 * (h_dot + h_dot.conj().T)
    coupling = vecs.conj().T @ h_dot @ vecs
    denom = evals[np.newaxis, :] - evals[:, np.newaxis]  # E_n - E_m at (m, n)
    np.fill_diagonal(denom, 1.0)  # diagonal is zeroed below, value irrelevant
    in_eigenbasis = 1j * coupling / denom
    np.fill_diagonal(in_eigenbasis, 0.0)
    h1 = vecs @ in_eigenbasis @ vecs.conj().T
    return 0.5 * (h1 + h1.conj().T)


class ControlValues(NamedTuple):
    """All control channels at one instant, in units of 1/T."""

    omega_r: float
    g: float
    omega1: float
    g_m: float
    omega_m: float


@dataclass(frozen=True)
class ControlSchedule:
    """Evaluable record of every control channel for one model/drive choice.

    The correction channel omega1 is active only on the effective model with
    drive="tqd"; the auxiliary pair (g_m, omega_m) only on the full model
    with drive="tqd".  Inactive channels evaluate to exactly zero.
    """

    params: PulseParameters
    model: str = "effective"
    drive: str = "stirap"

    def __post_init__(self):
        if self.model not in ("effective", "full"):
            raise ParameterDomainError(f"unknown model {self.model!r}")
        if self.drive not in ("stirap", "tqd"):
            raise ParameterDomainError(f"unknown drive {self.drive!r}")
        if self.auxiliary_active and self.params.delta_m <= 0:
            raise ParameterDomainError("auxiliary pulses require delta_m > 0")

    @property
    def correction_active(self) -> bool:
        return self.model == "effective" and self.drive == "tqd"

    @property
    def auxiliary_active(self) -> bool:
        return self.model == "full" and self.drive == "tqd"

    def values(self, t: float) -> ControlValues:
        omega_r, g = stirap_pair(self.params, t)
        if self.correction_active:
            omega1 = counterdiabatic_amplitude(self.params, t)
        else:
            omega1 = 0.0
        if self.auxiliary_active:
            g_m, omega_m = physical_pulse_pair(self.params, t)
        else:
            g_m = omega_m = 0.0
        return ControlValues(omega_r, g, omega1, g_m, omega_m)
