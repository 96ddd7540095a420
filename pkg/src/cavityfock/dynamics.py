"""Fixed-step time integration for pure states and density matrices.

A classical 4th-order Runge-Kutta scheme with a fixed step is used for both
the Schroedinger equation and the master equation.  The step is fixed rather
than adaptive on purpose: the schedules are smooth Gaussians, the matrices
are tiny, and a fixed step makes every trajectory bitwise reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import IntegrationError, ModelMismatchError, ParameterDomainError
from .hamiltonians import ModelConfig, bound_hamiltonian
from .hilbert import ProductBasis, analytic_eigensystem, atomic_raising, ladder_operators
from .observables import (
    ObservablesRecord,
    dark_state_overlap,
    mandel_q,
    mean_photon_number,
    norm_or_trace,
    populations,
)
from .pulses import ControlSchedule, ControlValues

# Hard failure thresholds for conservation checks at recorded samples.
NORM_DRIFT_LIMIT = 1e-6
NEGATIVITY_LIMIT = -1e-6


@dataclass(frozen=True)
class TimeGrid:
    """Uniform integration grid over [t_start, t_end] with output stride."""

    t_start: float
    t_end: float
    dt: float
    stride: int = 1

    def __post_init__(self):
        if self.t_end <= self.t_start:
            raise ParameterDomainError(
                f"t_end must exceed t_start, got [{self.t_start}, {self.t_end}]"
            )
        if self.dt <= 0:
            raise ParameterDomainError(f"dt must be positive, got {self.dt}")
        if self.stride < 1:
            raise ParameterDomainError(f"stride must be at least 1, got {self.stride}")
        steps = (self.t_end - self.t_start) / self.dt
        if abs(steps - round(steps)) > 1e-9 * max(1.0, abs(steps)):
            raise ParameterDomainError(
                f"window [{self.t_start}, {self.t_end}] is not an integer "
                f"number of steps of dt={self.dt}"
            )

    @property
    def n_steps(self) -> int:
        return int(round((self.t_end - self.t_start) / self.dt))

    def time(self, step: int) -> float:
        return self.t_start + step * self.dt


@dataclass
class Trajectory:
    """Time-ordered record of states, control values, and observables."""

    basis: ProductBasis
    is_density: bool
    model: str | None = None
    times: list[float] = field(default_factory=list)
    states: list[np.ndarray] = field(default_factory=list)
    controls: list[ControlValues | None] = field(default_factory=list)
    records: list[ObservablesRecord] = field(default_factory=list)

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]

    @property
    def final_record(self) -> ObservablesRecord:
        return self.records[-1]

    def max_population(self, level: str, n: int | None = None) -> float:
        """Largest recorded population of |level, n>, or of the whole level
        (summed over n) when n is None."""
        best = 0.0
        for record in self.records:
            if n is None:
                value = sum(
                    p for (lvl, _n), p in record.populations.items() if lvl == level
                )
            else:
                value = record.populations.get((level, n), 0.0)
            best = max(best, value)
        return best

    def population_series(self, level: str, n: int) -> np.ndarray:
        key = (level, n)
        return np.array([record.populations[key] for record in self.records])


class _Recorder:
    """Assembles ObservablesRecords and runs conservation checks."""

    def __init__(self, trajectory: Trajectory, schedule: ControlSchedule | None):
        self.trajectory = trajectory
        self.schedule = schedule
        self.basis = trajectory.basis

    def sample(self, t: float, state: np.ndarray) -> None:
        controls = self.schedule.values(t) if self.schedule is not None else None
        weight = norm_or_trace(state)
        if abs(weight - 1.0) > NORM_DRIFT_LIMIT:
            kind = "trace" if self.trajectory.is_density else "norm"
            raise IntegrationError(
                f"{kind} drifted to {weight:.12f} at t={t:g}; reduce dt"
            )
        if self.trajectory.is_density:
            smallest = float(np.linalg.eigvalsh(state)[0])
            if smallest < NEGATIVITY_LIMIT:
                raise IntegrationError(
                    f"density matrix developed negative eigenvalue "
                    f"{smallest:.3e} at t={t:g}; reduce dt"
                )
        dark = None
        if (
            controls is not None
            and self.schedule.model == "effective"
            and (controls.omega_r != 0.0 or controls.g != 0.0)
        ):
            eig = analytic_eigensystem(
                controls.omega_r, controls.g, self.schedule.params.delta
            )
            dark = dark_state_overlap(state, eig, self.basis)
        record = ObservablesRecord(
            t=t,
            populations=populations(state, self.basis),
            dark_overlap=dark,
            mean_photon_n=mean_photon_number(state, self.basis),
            mandel_q=mandel_q(state, self.basis),
            norm_or_trace=weight,
        )
        self.trajectory.times.append(t)
        self.trajectory.states.append(state.copy())
        self.trajectory.controls.append(controls)
        self.trajectory.records.append(record)


def propagate_schrodinger(
    hamiltonian: Callable[[float], np.ndarray],
    psi0: np.ndarray,
    grid: TimeGrid,
    basis: ProductBasis,
    schedule: ControlSchedule | None = None,
) -> Trajectory:
    """Integrate i d|psi>/dt = H(t)|psi> over the grid.

    The initial state must be normalized; an IntegrationError is raised if
    the norm drifts by more than NORM_DRIFT_LIMIT at any recorded sample.
    """
    psi = np.asarray(psi0, dtype=complex).copy()
    if psi.shape != (basis.dimension,):
        raise ParameterDomainError(
            f"state dimension {psi.shape} does not match basis "
            f"dimension {basis.dimension}"
        )
    if abs(np.linalg.norm(psi) - 1.0) > 1e-6:
        raise ParameterDomainError("initial state must be normalized")

    trajectory = Trajectory(
        basis=basis,
        is_density=False,
        model=schedule.model if schedule is not None else None,
    )
    recorder = _Recorder(trajectory, schedule)
    recorder.sample(grid.time(0), psi)

    dt = grid.dt
    h_now = np.asarray(hamiltonian(grid.time(0)), dtype=complex)
    for step in range(grid.n_steps):
        t = grid.time(step)
        t_next = grid.time(step + 1)
        h_mid = np.asarray(hamiltonian(t + 0.5 * dt), dtype=complex)
        h_next = np.asarray(hamiltonian(t_next), dtype=complex)
        k1 = -1j * (h_now @ psi)
        k2 = -1j * (h_mid @ (psi + (0.5 * dt) * k1))
        k3 = -1j * (h_mid @ (psi + (0.5 * dt) * k2))
        k4 = -1j * (h_next @ (psi + dt * k3))
        psi = psi + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        h_now = h_next
        done = step + 1
        if done % grid.stride == 0 or done == grid.n_steps:
            recorder.sample(t_next, psi)
    return trajectory


def propagate_lindblad(
    config: ModelConfig,
    rho0: np.ndarray,
    grid: TimeGrid,
    basis: ProductBasis,
    schedule: ControlSchedule | None = None,
) -> Trajectory:
    """Integrate the master equation for the effective model.

    d rho/dt = -i (H' rho - rho H'^dag) + kappa a rho a^dag
               + gamma/2 sum_j S_j rho S_j^dag

    with H' the non-Hermitian Hamiltonian carrying the matching decay terms.
    The spontaneous-emission jump carries rate gamma/2 per ground-state
    branch so that the total rate gamma balances the anti-Hermitian part and
    the trace is preserved.  After every step rho is replaced by its
    Hermitian part to suppress floating-point drift.
    """
    if config.dissipation is None:
        raise ModelMismatchError("dissipation is not configured")
    rho = np.asarray(rho0, dtype=complex).copy()
    dim = basis.dimension
    if rho.shape != (dim, dim):
        raise ParameterDomainError(
            f"density matrix shape {rho.shape} does not match basis dimension {dim}"
        )
    if np.max(np.abs(rho - rho.conj().T)) > 1e-8:
        raise ParameterDomainError("initial density matrix must be Hermitian")
    if abs(np.real(np.trace(rho)) - 1.0) > 1e-6:
        raise ParameterDomainError("initial density matrix must have unit trace")

    h_nonherm = bound_hamiltonian(config, basis, include_decay=True)
    a, a_dag = ladder_operators(basis)
    s1 = atomic_raising(basis, "S1").conj().T
    s2 = atomic_raising(basis, "S2").conj().T
    gamma = config.dissipation.gamma
    kappa = config.dissipation.kappa
    jumps = [
        (kappa, a, a_dag),
        (0.5 * gamma, s1, s1.conj().T),
        (0.5 * gamma, s2, s2.conj().T),
    ]
    jumps = [(rate, op, op_dag) for rate, op, op_dag in jumps if rate > 0.0]

    def rhs(h: np.ndarray, state: np.ndarray) -> np.ndarray:
        out = -1j * (h @ state - state @ h.conj().T)
        for rate, op, op_dag in jumps:
            out += rate * (op @ state @ op_dag)
        return out

    trajectory = Trajectory(
        basis=basis,
        is_density=True,
        model=schedule.model if schedule is not None else config.model,
    )
    recorder = _Recorder(trajectory, schedule)
    recorder.sample(grid.time(0), rho)

    dt = grid.dt
    h_now = h_nonherm(grid.time(0))
    for step in range(grid.n_steps):
        t = grid.time(step)
        t_next = grid.time(step + 1)
        h_mid = h_nonherm(t + 0.5 * dt)
        h_next = h_nonherm(t_next)
        k1 = rhs(h_now, rho)
        k2 = rhs(h_mid, rho + (0.5 * dt) * k1)
        k3 = rhs(h_mid, rho + (0.5 * dt) * k2)
        k4 = rhs(h_next, rho + dt * k3)
        rho = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        rho = 0.5 * (rho + rho.conj().T)
        h_now = h_next
        done = step + 1
        if done % grid.stride == 0 or done == grid.n_steps:
            recorder.sample(t_next, rho)
    return trajectory


def elimination_residual(trajectory: Trajectory) -> float:
    """Largest recorded population of the auxiliary excited level.

    Small values certify that eliminating the far-detuned level is a good
    approximation for the run in question.
    """
    if trajectory.model != "full":
        raise ModelMismatchError(
            "elimination residual requires a full-model trajectory"
        )
    return trajectory.max_population("em")
