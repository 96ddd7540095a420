"""Derived quantities: populations, cavity photon statistics, dark-state
overlap.  Every function accepts either a pure state vector or a density
matrix."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .hilbert import EigenSystem, ProductBasis

# Below this mean photon number the Mandel Q factor is reported as undefined
# rather than as a divergent float.
MANDEL_Q_THRESHOLD = 1e-12


def _is_density(state: np.ndarray) -> bool:
    return state.ndim == 2


def _diagonal_weights(state: np.ndarray) -> np.ndarray:
    if _is_density(state):
        return np.real(np.diagonal(state))
    return np.abs(state) ** 2


@lru_cache(maxsize=None)
def _fock_numbers(basis: ProductBasis) -> np.ndarray:
    values = np.array(
        [float(n) for _level in basis.levels for n in range(basis.n_fock)]
    )
    values.setflags(write=False)
    return values


def populations(state: np.ndarray, basis: ProductBasis) -> dict[tuple[str, int], float]:
    """Population per product-basis label |level, n>."""
    weights = _diagonal_weights(state)
    return {label: float(weights[i]) for i, label in enumerate(basis.labels())}


def norm_or_trace(state: np.ndarray) -> float:
    """Squared norm of a pure state, or the trace of a density matrix."""
    if _is_density(state):
        return float(np.real(np.trace(state)))
    return float(np.real(np.vdot(state, state)))


def mean_photon_number(state: np.ndarray, basis: ProductBasis) -> float:
    """Expectation of the cavity number operator."""
    return float(_diagonal_weights(state) @ _fock_numbers(basis))


def mandel_q(state: np.ndarray, basis: ProductBasis) -> float | None:
    """Mandel Q factor -1 + (<n^2> - <n>^2) / <n>.

    Returns None when the cavity is essentially empty (<n> below
    MANDEL_Q_THRESHOLD), where the ratio is undefined.
    """
    weights = _diagonal_weights(state)
    numbers = _fock_numbers(basis)
    n_mean = float(weights @ numbers)
    if n_mean < MANDEL_Q_THRESHOLD:
        return None
    n_sq = float(weights @ (numbers * numbers))
    return -1.0 + (n_sq - n_mean * n_mean) / n_mean


def dark_state_overlap(
    state: np.ndarray, eigensystem: EigenSystem, basis: ProductBasis
) -> float:
    """Dark-state population |<dark|psi>|^2 (pure) or <dark|rho|dark> (mixed)."""
    dark = eigensystem.embed(basis)
    if _is_density(state):
        return float(np.real(dark.conj() @ state @ dark))
    return float(np.abs(np.vdot(dark, state)) ** 2)


@dataclass
class ObservablesRecord:
    """One trajectory sample's worth of derived quantities.

    dark_overlap and mandel_q are None where undefined (no drive field, or
    an empty cavity, respectively).
    """

    t: float
    populations: dict[tuple[str, int], float]
    dark_overlap: float | None
    mean_photon_n: float
    mandel_q: float | None
    norm_or_trace: float
