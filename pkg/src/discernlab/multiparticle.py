"""N-fold tensor-product spaces.

Slot embeddings, permutation unitaries, symmetrizers / antisymmetrizers
and sector-constrained random state sampling.

Permutation convention: U_pi moves the content of slot k to slot pi(k),
i.e. on product vectors U_pi (phi_1 (x) ... (x) phi_N) =
phi_{pi^-1(1)} (x) ... (x) phi_{pi^-1(N)}.  The composition law
U_pi U_sigma = U_{pi o sigma} is tested exhaustively for S_3.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionCapError,
    EmptySectorError,
    IndexRangeError,
    RankError,
    SamplingError,
)
from .matrix_core import MixedState, Operator, PureState, dimension_cap, identity, kron

SECTORS = ("full", "bose", "fermi")

MAX_PROJECTION_RETRIES = 16


@dataclass(frozen=True)
class ParticleSystem:
    """N similar particles, each with a d-dimensional state space."""

    n_particles: int
    single_dim: int
    sector: str = "full"

    def __post_init__(self):
        if self.n_particles < 1:
            raise ValueError("need at least one particle")
        if self.single_dim < 1:
            raise ValueError("single-particle dimension must be positive")
        if self.sector not in SECTORS:
            raise ValueError(f"unknown sector {self.sector!r}")
        if self.single_dim ** self.n_particles > dimension_cap():
            raise DimensionCapError(
                f"{self.single_dim}^{self.n_particles} exceeds cap {dimension_cap()}")

    @property
    def total_dim(self) -> int:
        return self.single_dim ** self.n_particles


@dataclass(frozen=True)
class Permutation:
    """Bijection on {1, ..., N}, stored as the image tuple (1-based)."""

    mapping: tuple[int, ...]

    def __post_init__(self):
        n = len(self.mapping)
        if sorted(self.mapping) != list(range(1, n + 1)):
            raise ValueError(f"{self.mapping} is not a permutation of 1..{n}")
        object.__setattr__(self, "mapping", tuple(self.mapping))

    @property
    def n(self) -> int:
        return len(self.mapping)

    def __call__(self, k: int) -> int:
        return self.mapping[k - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for k, pk in enumerate(self.mapping, start=1):
            inv[pk - 1] = k
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """self o other: first apply other, then self."""
        return Permutation(tuple(self(other(k)) for k in range(1, self.n + 1)))

    @property
    def sign(self) -> int:
        """Parity from the cycle decomposition."""
        seen = [False] * self.n
        sign = 1
        for start in range(self.n):
            if seen[start]:
                continue
            length = 0
            k = start
            while not seen[k]:
                seen[k] = True
                k = self.mapping[k] - 1
                length += 1
            if length % 2 == 0:
                sign = -sign
        return sign

    @staticmethod
    def all(n: int):
        for perm in itertools.permutations(range(1, n + 1)):
            yield Permutation(perm)


def embed_at_slot(a: Operator, slot: int, system: ParticleSystem) -> Operator:
    """Lift a single-particle operator to 1 (x)...(x) A (x)...(x) 1."""
    if a.dim != system.single_dim:
        raise IndexRangeError(
            f"operator dim {a.dim} != single-particle dim {system.single_dim}")
    if not 1 <= slot <= system.n_particles:
        raise IndexRangeError(f"slot {slot} out of range 1..{system.n_particles}")
    out = identity(1)
    for j in range(1, system.n_particles + 1):
        out = kron(out, a if j == slot else identity(system.single_dim))
    return Operator(out.entries, a.hbar_power)


def permutation_unitary(pi: Permutation, system: ParticleSystem) -> Operator:
    """Unitary representation of pi on the N-fold tensor space."""
    if pi.n != system.n_particles:
        raise IndexRangeError(f"permutation on {pi.n} slots, system has "
                              f"{system.n_particles}")
    d, n = system.single_dim, system.n_particles
    u = np.zeros((system.total_dim, system.total_dim), dtype=complex)
    for col, idx in enumerate(itertools.product(range(d), repeat=n)):
        # content of slot k goes to slot pi(k)
        out_idx = [0] * n
        for k in range(n):
            out_idx[pi(k + 1) - 1] = idx[k]
        row = 0
        for i in out_idx:
            row = row * d + i
        u[row, col] = 1.0
    return Operator(u)


def symmetrizer(system: ParticleSystem, parity: str) -> Operator:
    """Orthogonal projector Pi+/- = (1/N!) sum_pi [sign(pi)] U_pi."""
    if parity not in ("+", "-"):
        raise ValueError("parity must be '+' or '-'")
    n = system.n_particles
    acc = np.zeros((system.total_dim, system.total_dim), dtype=complex)
    for pi in Permutation.all(n):
        u = permutation_unitary(pi, system).entries
        acc += (pi.sign * u) if parity == "-" else u
    return Operator(acc / math.factorial(n))


def sector_projector(system: ParticleSystem) -> Operator:
    if system.sector == "bose":
        return symmetrizer(system, "+")
    if system.sector == "fermi":
        return symmetrizer(system, "-")
    return identity(system.total_dim)


def sector_dimension(system: ParticleSystem, parity: str) -> int:
    """dim of the symmetric (+) or antisymmetric (-) subspace.

    Equals trace(Pi) and the stars-and-bars / subset counts
    C(d+N-1, N) for + and C(d, N) for -.
    """
    tr = np.trace(symmetrizer(system, parity).entries).real
    return round(tr)


def _sector_dim(system: ParticleSystem) -> int:
    if system.sector == "full":
        return system.total_dim
    return sector_dimension(system, "+" if system.sector == "bose" else "-")


def random_pure_state(system: ParticleSystem, seed: int) -> PureState:
    """Haar-uniform ray inside the system's sector, deterministic per seed."""
    if _sector_dim(system) < 1:
        raise EmptySectorError(f"{system.sector} sector of {system} is empty")
    proj = sector_projector(system).entries
    rng = np.random.default_rng(seed)
    for _ in range(MAX_PROJECTION_RETRIES):
        v = rng.standard_normal(system.total_dim) + 1j * rng.standard_normal(
            system.total_dim)
        v = proj @ v
        norm = np.linalg.norm(v)
        if norm > 1e-12:
            return PureState(v / norm)
    raise SamplingError("projection returned zero norm repeatedly")


def random_mixed_state(system: ParticleSystem, rank: int, seed: int) -> MixedState:
    """Convex mixture of rank sector-confined pure projectors."""
    sdim = _sector_dim(system)
    if not 1 <= rank <= sdim:
        raise RankError(f"rank {rank} not in 1..{sdim} for {system.sector} sector")
    rng = np.random.default_rng(seed)
    weights = rng.random(rank) + 1e-6
    weights /= weights.sum()
    w = np.zeros((system.total_dim, system.total_dim), dtype=complex)
    for k in range(rank):
        psi = random_pure_state(system, int(rng.integers(0, 2**63 - 1)))
        w += weights[k] * np.outer(psi.amplitudes, psi.amplitudes.conj())
    # symmetrize away float round-off before the invariant check
    w = (w + w.conj().T) / 2
    return MixedState(w)
