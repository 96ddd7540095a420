"""Named scenario presets, free-form configuration, CSV emission, sweeps."""

from __future__ import annotations

import time
from dataclasses import dataclass, fields, replace

import numpy as np

from .dynamics import TimeGrid, Trajectory, propagate_lindblad, propagate_schrodinger
from .errors import ConfigError
from .hamiltonians import Dissipation, ModelConfig, bound_hamiltonian
from .hilbert import build_basis
from .pulses import PulseParameters

CSV_COLUMNS = (
    "t_over_T",
    "p_g1_0",
    "p_e_0",
    "p_g2_1",
    "p_g2_0",
    "p_em_0",
    "dark_overlap",
    "n_mean",
    "mandel_q",
    "norm_or_trace",
    "omega_r_T",
    "g_T",
    "omega1_T",
    "gm_T",
    "omegam_T",
)


@dataclass
class SimulationConfig:
    """Flat, unit-annotated run configuration (all rates in 1/T, times in T)."""

    scenario: str = "custom"
    model: str = "effective"
    drive: str = "stirap"
    omega0_T: float = 2.0
    delta_T: float = 1.0
    delta_m_T: float = 18.0
    tau_p_over_T: float = 0.5
    tau_s_over_T: float = 0.5
    gamma_T: float | None = None
    kappa_T: float | None = None
    t_start_over_T: float = -4.0
    t_end_over_T: float = 4.0
    dt_over_T: float = 1e-3
    n_max: int = 1
    output_path: str = "trajectory.csv"
    stride: int = 10


# Fields that a sweep may vary.
NUMERIC_FIELDS = frozenset(
    {
        "omega0_T",
        "delta_T",
        "delta_m_T",
        "tau_p_over_T",
        "tau_s_over_T",
        "gamma_T",
        "kappa_T",
        "t_start_over_T",
        "t_end_over_T",
        "dt_over_T",
        "n_max",
        "stride",
    }
)
_INT_FIELDS = frozenset({"n_max", "stride"})

PRESETS: dict[str, dict] = {
    "fig2_stirap": dict(model="effective", drive="stirap", omega0_T=2.0),
    "fig2_tqd": dict(model="effective", drive="tqd", omega0_T=2.0),
    "fig2e_lossless": dict(model="effective", drive="tqd", omega0_T=5.0),
    "fig2f_dissipative_stirap": dict(
        model="effective", drive="stirap", omega0_T=5.0, gamma_T=5.0, kappa_T=0.05
    ),
    "fig2f_dissipative_tqd": dict(
        model="effective", drive="tqd", omega0_T=5.0, gamma_T=5.0, kappa_T=0.05
    ),
    "fig3_full": dict(model="full", drive="tqd", omega0_T=2.0, delta_m_T=18.0),
}


def resolve_preset(name: str) -> SimulationConfig:
    """Fully populated configuration for a named preset."""
    if name == "custom":
        return SimulationConfig()
    if name not in PRESETS:
        raise ConfigError(
            f"unknown preset {name!r}; available presets: "
            + ", ".join(sorted(PRESETS))
        )
    return SimulationConfig(scenario=name, **PRESETS[name])


def model_config(sim: SimulationConfig) -> ModelConfig:
    pulses = PulseParameters(
        omega0=sim.omega0_T,
        tau_p=sim.tau_p_over_T,
        tau_s=sim.tau_s_over_T,
        delta=sim.delta_T,
        delta_m=sim.delta_m_T,
    )
    dissipation = None
    if sim.gamma_T is not None or sim.kappa_T is not None:
        dissipation = Dissipation(
            gamma=sim.gamma_T if sim.gamma_T is not None else 0.0,
            kappa=sim.kappa_T if sim.kappa_T is not None else 0.0,
        )
    return ModelConfig(sim.model, sim.drive, pulses, dissipation)


def time_grid(sim: SimulationConfig) -> TimeGrid:
    return TimeGrid(sim.t_start_over_T, sim.t_end_over_T, sim.dt_over_T, sim.stride)


@dataclass
class RunSummary:
    """End-of-run figures of merit, consistent with the final trajectory row."""

    scenario: str
    model: str
    drive: str
    final_populations: dict[tuple[str, int], float]
    max_p_e_0: float
    max_p_em_0: float | None
    final_n: float
    final_q: float | None
    norm_or_trace_drift: float
    wall_time_s: float

    def lines(self) -> list[str]:
        def fmt(value):
            return "" if value is None else f"{value:.16e}"

        final = self.final_populations
        out = [
            f"scenario={self.scenario}",
            f"model={self.model}",
            f"drive={self.drive}",
            f"final_p_g1_0={fmt(final.get(('g1', 0)))}",
            f"final_p_e_0={fmt(final.get(('e', 0)))}",
            f"final_p_g2_1={fmt(final.get(('g2', 1)))}",
            f"final_p_g2_0={fmt(final.get(('g2', 0)))}",
            f"final_p_em_0={fmt(final.get(('em', 0)))}",
            f"max_p_e_0={fmt(self.max_p_e_0)}",
            f"max_p_em_0={fmt(self.max_p_em_0)}",
            f"final_n={fmt(self.final_n)}",
            f"final_q={fmt(self.final_q)}",
            f"norm_or_trace_drift={fmt(self.norm_or_trace_drift)}",
            f"wall_time_s={self.wall_time_s:.3f}",
        ]
        return out


def simulate(sim: SimulationConfig) -> tuple[Trajectory, RunSummary]:
    """Run the configured simulation and summarize it (no file output)."""
    config = model_config(sim)
    basis = build_basis(sim.model, sim.n_max)
    grid = time_grid(sim)
    schedule = config.schedule()
    psi0 = basis.state("g1", 0)

    started = time.perf_counter()
    if config.dissipation is not None:
        rho0 = np.outer(psi0, psi0.conj())
        trajectory = propagate_lindblad(config, rho0, grid, basis, schedule=schedule)
    else:
        hamiltonian = bound_hamiltonian(config, basis)
        trajectory = propagate_schrodinger(
            hamiltonian, psi0, grid, basis, schedule=schedule
        )
    wall = time.perf_counter() - started

    final = trajectory.final_record
    drift = max(abs(record.norm_or_trace - 1.0) for record in trajectory.records)
    summary = RunSummary(
        scenario=sim.scenario,
        model=sim.model,
        drive=sim.drive,
        final_populations=final.populations,
        max_p_e_0=trajectory.max_population("e", 0),
        max_p_em_0=trajectory.max_population("em", 0) if sim.model == "full" else None,
        final_n=final.mean_photon_n,
        final_q=final.mandel_q,
        norm_or_trace_drift=drift,
        wall_time_s=wall,
    )
    return trajectory, summary


def run(sim: SimulationConfig) -> tuple[str, RunSummary]:
    """Simulate and write the trajectory CSV to the configured output path."""
    trajectory, summary = simulate(sim)
    write_trajectory_csv(trajectory, sim.output_path)
    return sim.output_path, summary


def _fmt(value: float | None) -> str:
    return "" if value is None else f"{value:.16e}"


def write_trajectory_csv(trajectory: Trajectory, path: str) -> None:
    """Write the trajectory with the fixed column schema.

    Columns that do not apply to the trajectory's model are left empty, as
    are undefined dark_overlap / mandel_q entries.
    """
    full = trajectory.model == "full"
    rows = [",".join(CSV_COLUMNS)]
    for record, controls in zip(trajectory.records, trajectory.controls):
        pops = record.populations
        cells = [
            _fmt(record.t),
            _fmt(pops.get(("g1", 0))),
            _fmt(pops.get(("e", 0))),
            _fmt(pops.get(("g2", 1))),
            _fmt(pops.get(("g2", 0))),
            _fmt(pops.get(("em", 0))) if full else "",
            _fmt(record.dark_overlap) if not full else "",
            _fmt(record.mean_photon_n),
            _fmt(record.mandel_q),
            _fmt(record.norm_or_trace),
            _fmt(controls.omega_r) if controls is not None else "",
            _fmt(controls.g) if controls is not None else "",
            _fmt(controls.omega1) if controls is not None and not full else "",
            _fmt(controls.g_m) if controls is not None and full else "",
            _fmt(controls.omega_m) if controls is not None and full else "",
        ]
        rows.append(",".join(cells))
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("\n".join(rows) + "\n")


SWEEP_COLUMNS = (
    "parameter",
    "value",
    "final_p_g1_0",
    "final_p_e_0",
    "final_p_g2_1",
    "final_p_g2_0",
    "final_p_em_0",
    "max_p_e_0",
    "max_p_em_0",
    "final_n",
    "final_q",
    "norm_or_trace_drift",
)


def sweep(base: SimulationConfig, parameter: str, values, out_path: str) -> str:
    """Re-run the base configuration once per parameter value.

    One summary row is written per value, in input order.  Only numeric
    configuration fields can be swept.
    """
    if parameter not in NUMERIC_FIELDS:
        raise ConfigError(
            f"parameter {parameter!r} is not a numeric configuration field; "
            f"choose from {', '.join(sorted(NUMERIC_FIELDS))}"
        )
    rows = [",".join(SWEEP_COLUMNS)]
    for value in values:
        typed = int(value) if parameter in _INT_FIELDS else float(value)
        config = replace(base, **{parameter: typed})
        _trajectory, summary = simulate(config)
        final = summary.final_populations
        cells = [
            parameter,
            _fmt(float(typed)),
            _fmt(final.get(("g1", 0))),
            _fmt(final.get(("e", 0))),
            _fmt(final.get(("g2", 1))),
            _fmt(final.get(("g2", 0))),
            _fmt(final.get(("em", 0))),
            _fmt(summary.max_p_e_0),
            _fmt(summary.max_p_em_0),
            _fmt(summary.final_n),
            _fmt(summary.final_q),
            _fmt(summary.norm_or_trace_drift),
        ]
        rows.append(",".join(cells))
    with open(out_path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("\n".join(rows) + "\n")
    return out_path


def config_field_names() -> list[str]:
    return [f.name for f in fields(SimulationConfig)]
