"""Dense complex linear algebra kernel.

Operators, pure states and statistical operators as immutable wrappers
around numpy arrays, plus the handful of primitives everything else is
built from: tensor products, commutators, Hermitian eigensystems and
scalar-identity tests.

hbar is 1 internally.  Eigenvalue claims elsewhere are stated in units
of hbar or hbar^2 and carry their unit exponent as plain metadata.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .errors import DimensionCapError, HermiticityError, ShapeError

TOL_ABS = 1e-10
TOL_REL = 1e-9
#: eigenvalues closer than this (relative to the operator norm) are one level
LEVEL_TOL_REL = 1e-7

DEFAULT_DIM_CAP = 4096


def dimension_cap() -> int:
    """Configured tensor-product dimension cap (env DISCERNLAB_DIM_CAP)."""
    return int(os.environ.get("DISCERNLAB_DIM_CAP", DEFAULT_DIM_CAP))


@dataclass(frozen=True)
class Operator:
    """Square complex matrix with dimension metadata.

    ``hbar_power`` records the unit exponent of the entries (0 for
    dimensionless, 1 for operators linear in hbar, 2 for their squares).
    """

    entries: np.ndarray
    hbar_power: int = 0

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ShapeError(f"operator must be square, got shape {m.shape}")
        if not np.all(np.isfinite(m.view(float))):
            raise ShapeError("operator entries must be finite")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def is_self_adjoint(self, tol: float = TOL_ABS) -> bool:
        return float(np.abs(self.entries - self.entries.conj().T).max()) <= tol

    def dagger(self) -> "Operator":
        return Operator(self.entries.conj().T, self.hbar_power)

    def __matmul__(self, other: "Operator") -> "Operator":
        if self.dim != other.dim:
            raise ShapeError(f"dim mismatch {self.dim} vs {other.dim}")
        return Operator(self.entries @ other.entries,
                        self.hbar_power + other.hbar_power)

    def __add__(self, other: "Operator") -> "Operator":
        if self.dim != other.dim:
            raise ShapeError(f"dim mismatch {self.dim} vs {other.dim}")
        return Operator(self.entries + other.entries, self.hbar_power)

    def __sub__(self, other: "Operator") -> "Operator":
        if self.dim != other.dim:
            raise ShapeError(f"dim mismatch {self.dim} vs {other.dim}")
        return Operator(self.entries - other.entries, self.hbar_power)

    def __mul__(self, c: complex) -> "Operator":
        return Operator(self.entries * c, self.hbar_power)

    __rmul__ = __mul__

    def max_norm(self) -> float:
        return float(np.abs(self.entries).max()) if self.dim else 0.0

    def dump(self) -> str:
        """Debug text format: one row per line, entries as re+imi pairs."""
        rows = []
        for row in self.entries:
            rows.append(" ".join(f"{z.real:+.17g}{z.imag:+.17g}i" for z in row))
        return "\n".join(rows)


def identity(dim: int) -> Operator:
    return Operator(np.eye(dim, dtype=complex))


def zero(dim: int, hbar_power: int = 0) -> Operator:
    return Operator(np.zeros((dim, dim), dtype=complex), hbar_power)


@dataclass(frozen=True)
class PureState:
    """Unit vector in a (tensor-product) Hilbert space."""

    amplitudes: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.amplitudes, dtype=complex).ravel()
        n = float(np.linalg.norm(v))
        if abs(n - 1.0) > 1e-8:
            raise ShapeError(f"state norm {n} is not 1")
        v.setflags(write=False)
        object.__setattr__(self, "amplitudes", v)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def projector(self) -> Operator:
        return Operator(np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True)
class MixedState:
    """Statistical operator: self-adjoint, positive, unit trace."""

    entries: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.entries, dtype=complex)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ShapeError(f"statistical operator must be square, got {w.shape}")
        if float(np.abs(w - w.conj().T).max()) > TOL_ABS:
            raise HermiticityError("statistical operator is not self-adjoint")
        if abs(np.trace(w).real - 1.0) > 1e-8:
            raise ShapeError(f"trace {np.trace(w)} is not 1")
        evals = np.linalg.eigvalsh(w)
        if evals.min() < -TOL_ABS:
            raise ShapeError(f"negative eigenvalue {evals.min()}")
        w.setflags(write=False)
        object.__setattr__(self, "entries", w)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


def kron(a: Operator, b: Operator) -> Operator:
    """Tensor product A (x) B on the direct-product space."""
    if a.dim * b.dim > dimension_cap():
        raise DimensionCapError(
            f"{a.dim}*{b.dim} exceeds dimension cap {dimension_cap()}")
    return Operator(np.kron(a.entries, b.entries),
                    a.hbar_power + b.hbar_power)


def commutator(a: Operator, b: Operator) -> Operator:
    """AB - BA."""
    if a.dim != b.dim:
        raise ShapeError(f"dim mismatch {a.dim} vs {b.dim}")
    return Operator(a.entries @ b.entries - b.entries @ a.entries,
                    a.hbar_power + b.hbar_power)


def hermitian_eigensystem(a: Operator) -> list[tuple[float, PureState]]:
    """Ascending eigenvalues with orthonormal eigenvectors.

    Raises HermiticityError unless the input is self-adjoint within
    TOL_ABS relative to its norm.
    """
    scale = max(a.max_norm(), 1.0)
    if float(np.abs(a.entries - a.entries.conj().T).max()) > TOL_ABS * scale:
        raise HermiticityError("input is not self-adjoint")
    evals, evecs = np.linalg.eigh(a.entries)
    return [(float(evals[k]), PureState(evecs[:, k])) for k in range(a.dim)]


def eigenvalue_levels(a: Operator) -> list[tuple[float, int]]:
    """Distinct eigenvalues of a self-adjoint operator with multiplicities.

    Eigenvalues within LEVEL_TOL_REL * ||A|| of each other are one level.
    """
    pairs = hermitian_eigensystem(a)
    gap = LEVEL_TOL_REL * max(a.max_norm(), 1.0)
    levels: list[list[float]] = []
    for lam, _ in pairs:
        if levels and abs(lam - levels[-1][-1]) <= gap:
            levels[-1].append(lam)
        else:
            levels.append([lam])
    return [(sum(lv) / len(lv), len(lv)) for lv in levels]


def is_scalar_identity(a: Operator, c: complex, tol: float = TOL_ABS) -> bool:
    """True iff A equals c * identity within tol in max-entry norm.

    This decides "A psi = c psi for every psi" exactly: the operator
    equation holds iff the eigenvalue equation holds on all states.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    diff = a.entries - c * np.eye(a.dim)
    return float(np.abs(diff).max()) <= tol


def apply(a: Operator, x):
    """A.x: matrix-vector for pure states, left multiplication A.W for mixed.

    The pure-state result is returned as a raw vector (it is generally
    not normalized); the mixed-state result as an Operator.
    """
    if isinstance(x, PureState):
        if a.dim != x.dim:
            raise ShapeError(f"dim mismatch {a.dim} vs {x.dim}")
        return a.entries @ x.amplitudes
    if isinstance(x, MixedState):
        if a.dim != x.dim:
            raise ShapeError(f"dim mismatch {a.dim} vs {x.dim}")
        return Operator(a.entries @ x.entries, a.hbar_power)
    if a.dim != np.shape(x)[0]:
        raise ShapeError(f"dim mismatch {a.dim} vs {np.shape(x)[0]}")
    return a.entries @ np.asarray(x, dtype=complex)
