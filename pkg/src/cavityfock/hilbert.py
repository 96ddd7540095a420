"""Truncated atom (x) Fock product bases and the operators acting on them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ModelMismatchError, ParameterDomainError

EFFECTIVE_LEVELS = ("g1", "e", "g2")
FULL_LEVELS = ("g1", "e", "g2", "em")


@dataclass(frozen=True)
class ProductBasis:
    """Atomic-major, Fock-minor flat indexing of |level, n> product states."""

    levels: tuple[str, ...]
    n_max: int

    @property
    def n_fock(self) -> int:
        return self.n_max + 1

    @property
    def dimension(self) -> int:
        return len(self.levels) * self.n_fock

    def index(self, level: str, n: int) -> int:
        if level not in self.levels:
            raise ModelMismatchError(f"level {level!r} not in basis {self.levels}")
        if not 0 <= n <= self.n_max:
            raise ParameterDomainError(
                f"Fock occupation {n} outside 0..{self.n_max}"
            )
        return self.levels.index(level) * self.n_fock + n

    def labels(self) -> list[tuple[str, int]]:
        return [(level, n) for level in self.levels for n in range(self.n_fock)]

    def state(self, level: str, n: int) -> np.ndarray:
        """Unit vector for the product state |level, n>."""
        vec = np.zeros(self.dimension, dtype=complex)
        vec[self.index(level, n)] = 1.0
        return vec


def build_basis(model: str, n_max: int) -> ProductBasis:
    if n_max < 1:
        raise ParameterDomainError(f"n_max must be at least 1, got {n_max}")
    if model == "effective":
        return ProductBasis(EFFECTIVE_LEVELS, n_max)
    if model == "full":
        return ProductBasis(FULL_LEVELS, n_max)
    raise ParameterDomainError(f"unknown model {model!r}")


def _read_only(matrix: np.ndarray) -> np.ndarray:
    matrix.setflags(write=False)
    return matrix


@lru_cache(maxsize=None)
def ladder_operators(basis: ProductBasis):
    """Cavity annihilation and creation operators (a, a_dag) on the basis."""
    a_fock = np.diag(np.sqrt(np.arange(1.0, basis.n_fock)), k=1).astype(complex)
    a = np.kron(np.eye(len(basis.levels)), a_fock)
    return _read_only(a), _read_only(a.conj().T.copy())


@lru_cache(maxsize=None)
def number_operator(basis: ProductBasis) -> np.ndarray:
    # built directly so photon counts are exact integers, not sqrt(n)**2
    counts = [float(n) for _level in basis.levels for n in range(basis.n_fock)]
    return _read_only(np.diag(np.asarray(counts, dtype=complex)))


@lru_cache(maxsize=None)
def transition_operator(basis: ProductBasis, upper: str, lower: str) -> np.ndarray:
    """|upper><lower| tensored with the Fock identity."""
    op = np.zeros((basis.dimension, basis.dimension), dtype=complex)
    for n in range(basis.n_fock):
        op[basis.index(upper, n), basis.index(lower, n)] = 1.0
    return _read_only(op)


@lru_cache(maxsize=None)
def level_projector(basis: ProductBasis, level: str) -> np.ndarray:
    return transition_operator(basis, level, level)


_RAISING_PAIRS = {
    "S1": ("e", "g1"),
    "S2": ("e", "g2"),
    "F1": ("em", "g1"),
    "F2": ("em", "g2"),
}


def atomic_raising(basis: ProductBasis, which: str) -> np.ndarray:
    """Atomic raising operator |upper><lower| (x) Fock identity.

    S1/S2 raise g1/g2 to the intermediate excited level, F1/F2 raise them to
    the auxiliary excited level (full model only).
    """
    try:
        upper, lower = _RAISING_PAIRS[which]
    except KeyError:
        raise ParameterDomainError(
            f"unknown raising operator {which!r}; expected one of "
            f"{sorted(_RAISING_PAIRS)}"
        ) from None
    if upper not in basis.levels:
        raise ModelMismatchError(
            f"{which} requires level {upper!r}, absent from basis {basis.levels}"
        )
    return transition_operator(basis, upper, lower)


@dataclass(frozen=True)
class EigenSystem:
    """Instantaneous eigensystem of the transfer Hamiltonian restricted to
    the single-excitation subspace (|g1,0>, |e,0>, |g2,1>).

    The mixing angles satisfy tan(theta) = omega_r/g and
    tan(2*phi) = 2*omega/delta with omega = sqrt(omega_r**2 + g**2).
    Eigenvalues are ordered (dark, bright_upper, bright_lower).
    """

    theta: float
    phi: float
    eigenvalues: tuple[float, float, float]
    dark: np.ndarray
    bright_upper: np.ndarray
    bright_lower: np.ndarray

    def embed(self, basis: ProductBasis, vector: np.ndarray | None = None) -> np.ndarray:
        """Lift a subspace vector (default: the dark state) into the basis."""
        if vector is None:
            vector = self.dark
        out = np.zeros(basis.dimension, dtype=complex)
        out[basis.index("g1", 0)] = vector[0]
        out[basis.index("e", 0)] = vector[1]
        out[basis.index("g2", 1)] = vector[2]
        return out


def single_excitation_matrix(omega_r: float, g: float, delta: float) -> np.ndarray:
    """Transfer Hamiltonian on the subspace (|g1,0>, |e,0>, |g2,1>)."""
    return np.array(
        [
            [0.0, omega_r, 0.0],
            [omega_r, delta, g],
            [0.0, g, 0.0],
        ],
        dtype=complex,
    )


def analytic_eigensystem(omega_r: float, g: float, delta: float) -> EigenSystem:
    """Closed-form eigensystem of the single-excitation transfer Hamiltonian.

    The dark state carries no amplitude on |e,0> and is annihilated exactly:
    cos(theta)|g1,0> - sin(theta)|g2,1>.
    """
    omega = math.hypot(omega_r, g)
    if omega == 0.0:
        raise ParameterDomainError(
            "mixing angle undefined: omega_r and g are both zero"
        )
    theta = math.atan2(omega_r, g)
    phi = 0.5 * math.atan2(2.0 * omega, delta)
    root = math.hypot(delta, 2.0 * omega)
    lam_upper = 0.5 * (delta + root)
    lam_lower = 0.5 * (delta - root)
    sin_t, cos_t = math.sin(theta), math.cos(theta)
    sin_p, cos_p = math.sin(phi), math.cos(phi)
    dark = np.array([cos_t, 0.0, -sin_t], dtype=complex)
    bright_upper = np.array([sin_t * sin_p, cos_p, cos_t * sin_p], dtype=complex)
    bright_lower = np.array([sin_t * cos_p, -sin_p, cos_t * cos_p], dtype=complex)
    return EigenSystem(
        theta=theta,
        phi=phi,
        eigenvalues=(0.0, lam_upper, lam_lower),
        dark=dark,
        bright_upper=bright_upper,
        bright_lower=bright_lower,
    )
