"""Time-dependent Hamiltonians of the four-level and effective three-level
atom-cavity models, assembled on a truncated product basis.

The cavity free-evolution term is absorbed into the detunings (the models
are written in the rotating frame), so both Hamiltonians contain only
detuning projectors and the drive couplings.  All matrices are dense; the
default dimensions are 6 (effective) and 8 (full).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import ModelMismatchError, ParameterDomainError
from .hilbert import (
    FULL_LEVELS,
    ProductBasis,
    atomic_raising,
    ladder_operators,
    level_projector,
    number_operator,
    transition_operator,
)
from .pulses import ControlSchedule, PulseParameters


@dataclass(frozen=True)
class Dissipation:
    """Decay rates in units of 1/T: gamma for the intermediate excited
    level, kappa for the cavity field."""

    gamma: float = 0.0
    kappa: float = 0.0

    def __post_init__(self):
        if self.gamma < 0 or self.kappa < 0:
            raise ParameterDomainError(
                f"decay rates must be non-negative, got gamma={self.gamma}, "
                f"kappa={self.kappa}"
            )


@dataclass(frozen=True)
class ModelConfig:
    """Which model and drive to simulate, with its pulse parameters."""

    model: str
    drive: str
    pulses: PulseParameters
    dissipation: Dissipation | None = None

    def __post_init__(self):
        if self.model not in ("effective", "full"):
            raise ParameterDomainError(f"unknown model {self.model!r}")
        if self.drive not in ("stirap", "tqd"):
            raise ParameterDomainError(f"unknown drive {self.drive!r}")

    def schedule(self) -> ControlSchedule:
        return ControlSchedule(self.pulses, self.model, self.drive)


@lru_cache(maxsize=None)
def _coupling_terms(basis: ProductBasis) -> dict[str, np.ndarray]:
    """Static Hermitian coupling matrices, one per control channel."""
    a, _ = ladder_operators(basis)
    terms = {
        "p_e": level_projector(basis, "e"),
        "number": number_operator(basis),
    }
    s1_dag = atomic_raising(basis, "S1")
    s2_dag_a = atomic_raising(basis, "S2") @ a
    terms["x_omega_r"] = s1_dag + s1_dag.conj().T
    terms["x_g"] = s2_dag_a + s2_dag_a.conj().T
    if "em" in basis.levels:
        f1_dag = atomic_raising(basis, "F1")
        f2_dag_a = atomic_raising(basis, "F2") @ a
        terms["p_em"] = level_projector(basis, "em")
        # The auxiliary pump is driven in quadrature with the main pump;
        # this relative phase is what turns the far-detuned Raman exchange
        # into the correction coupling i*omega1 after elimination of |em>.
        terms["x_omega_m"] = 1j * (f1_dag - f1_dag.conj().T)
        terms["x_g_m"] = f2_dag_a + f2_dag_a.conj().T
    else:
        g1_g2_a = transition_operator(basis, "g1", "g2") @ a
        terms["x_omega1"] = 1j * (g1_g2_a - g1_g2_a.conj().T)
    for matrix in terms.values():
        matrix.setflags(write=False)
    return terms


def _check_basis(config: ModelConfig, basis: ProductBasis) -> None:
    expected = 4 if config.model == "full" else 3
    if len(basis.levels) != expected or (
        config.model == "full" and basis.levels != FULL_LEVELS
    ):
        raise ModelMismatchError(
            f"model {config.model!r} does not act on basis levels {basis.levels}"
        )


def bound_hamiltonian(
    config: ModelConfig, basis: ProductBasis, include_decay: bool = False
) -> Callable[[float], np.ndarray]:
    """Bind (config, basis) into a fast t -> H(t) closure.

    With include_decay the anti-Hermitian decay terms -i*gamma/2 |e><e| and
    -i*kappa/2 a^dag a are added (effective model only).
    """
    _check_basis(config, basis)
    terms = _coupling_terms(basis)
    schedule = config.schedule()
    pulses = config.pulses

    if include_decay:
        if config.dissipation is None:
            raise ModelMismatchError("dissipation is not configured")
        if config.model != "effective":
            raise ModelMismatchError(
                "dissipative dynamics is only defined for the effective model"
            )
        decay = (
            -0.5j * config.dissipation.gamma * terms["p_e"]
            - 0.5j * config.dissipation.kappa * terms["number"]
        )
    else:
        decay = None

    if config.model == "full":
        static = pulses.delta * terms["p_e"] + pulses.delta_m * terms["p_em"]
    else:
        static = pulses.delta * terms["p_e"]
    if decay is not None:
        static = static + decay

    x_omega_r = terms["x_omega_r"]
    x_g = terms["x_g"]

    if config.model == "full":
        x_omega_m = terms["x_omega_m"]
        x_g_m = terms["x_g_m"]

        def build(t: float) -> np.ndarray:
            v = schedule.values(t)
            h = static + v.omega_r * x_omega_r + v.g * x_g
            if v.omega_m:
                h += v.omega_m * x_omega_m + v.g_m * x_g_m
            return h

    else:
        x_omega1 = terms["x_omega1"]

        def build(t: float) -> np.ndarray:
            v = schedule.values(t)
            h = static + v.omega_r * x_omega_r + v.g * x_g
            if v.omega1:
                h += v.omega1 * x_omega1
            return h

    return build


def full_hamiltonian(config: ModelConfig, basis: ProductBasis, t: float) -> np.ndarray:
    """Four-level model Hamiltonian at time t.

    H = delta |e><e| + delta_m |em><em|
        + omega_r S1^dag + g S2^dag a + i omega_m F1^dag + g_m F2^dag a + h.c.
    """
    if config.model != "full":
        raise ModelMismatchError(f"full_hamiltonian needs model='full', got {config.model!r}")
    return bound_hamiltonian(config, basis)(t)


def effective_hamiltonian(
    config: ModelConfig, basis: ProductBasis, t: float
) -> np.ndarray:
    """Effective three-level Hamiltonian H0 + H1' at time t.

    H0 = delta |e><e| + omega_r S1^dag + g S2^dag a + h.c. carries the plain
    adiabatic transfer; H1' = i omega1 |g1><g2| a + h.c. is the correction
    channel and vanishes identically when drive="stirap".
    """
    if config.model != "effective":
        raise ModelMismatchError(
            f"effective_hamiltonian needs model='effective', got {config.model!r}"
        )
    return bound_hamiltonian(config, basis)(t)


def dissipative_hamiltonian(
    config: ModelConfig, basis: ProductBasis, t: float
) -> np.ndarray:
    """Non-Hermitian effective Hamiltonian with the decay terms included:
    H - i*gamma/2 |e><e| - i*kappa/2 a^dag a."""
    if config.dissipation is None:
        raise ModelMismatchError("dissipation is not configured")
    return bound_hamiltonian(config, basis, include_decay=True)(t)


def effective_raman_coupling(omega_m: float, g_m: float, delta_m: float) -> float:
    """Far-detuned Raman coupling omega_m * g_m / delta_m."""
    if delta_m == 0:
        raise ParameterDomainError("delta_m must be non-zero")
    return omega_m * g_m / delta_m
