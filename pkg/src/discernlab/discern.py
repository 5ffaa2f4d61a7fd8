"""Executable discernibility predicates and certification.

Relation T: for all states, (S_a + S_b)^2 equals 4 s(s+1) hbar^2.
Relation C: for all wavefunctions, [P_a, Q_b] psi equals -i hbar psi.

Both are reflexive and fail between distinct particles, which is the
weak-discernibility pattern: the complement is irreflexive and
symmetric on distinct pairs.

Each universally quantified relation is decided two ways: exactly, on
the defining operator (scalar-identity / spectral check for T, monomial
basis check for C), and empirically, by seeded state sampling that
produces witness states.  Reports record both routes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import ArityError, DegenerateSpinError, ShapeError
from .matrix_core import (
    MixedState,
    Operator,
    PureState,
    TOL_ABS,
    eigenvalue_levels,
    is_scalar_identity,
)
from .multiparticle import (
    ParticleSystem,
    Permutation,
    permutation_unitary,
    sector_projector,
)
from .schwartz import (
    MINUS_I,
    QComplex,
    SpinorWavefunction,
    commutator_PQ_apply,
    gaussian,
    random_wavefunction,
    symmetric_product_state,
)
from .spin import SpinLabel, pair_total_spin_squared

ALL_STATES = "all"

VERDICT_PASS = "weakly_discerning"
VERDICT_FAIL = "violated"
VERDICT_INCONCLUSIVE = "inconclusive"


def eigenproperty(a: Operator, state, tol: float = TOL_ABS) -> Optional[complex]:
    """The possessed value of magnitude A in the given state, if any.

    A pure state possesses <A, v> iff it is an eigenstate: the candidate
    value is the expectation and possession requires ||A psi - v psi||
    <= tol.  Mixed states analogously with A W = v W.  Returns None when
    the state is no eigenstate (no eigenstate, no property).
    """
    if isinstance(state, PureState):
        if a.dim != state.dim:
            raise ShapeError(f"dim mismatch {a.dim} vs {state.dim}")
        psi = state.amplitudes
        v = complex(psi.conj() @ (a.entries @ psi))
        if np.linalg.norm(a.entries @ psi - v * psi) <= tol:
            return v
        return None
    if isinstance(state, MixedState):
        if a.dim != state.dim:
            raise ShapeError(f"dim mismatch {a.dim} vs {state.dim}")
        w = state.entries
        v = complex(np.trace(a.entries @ w) / np.trace(w))
        if float(np.abs(a.entries @ w - v * w).max()) <= tol:
            return v
        return None
    raise ShapeError(f"unsupported state type {type(state)!r}")


def relation_T_holds(a: int, b: int, state, label: SpinLabel,
                     system: ParticleSystem, tol: float = 1e-8) -> bool:
    """The total-spin relation at the target value 4 s(s+1) hbar^2.

    state may be a PureState, a MixedState, or ALL_STATES for the
    operator-level decision.  A state with no eigenproperty at all
    counts as failing (the converse possession principle), as does a
    present value differing from the target.
    """
    if label.two_s == 0:
        raise DegenerateSpinError("relation T is undefined for spin 0")
    k = pair_total_spin_squared(label, a, b, system)
    target = float(4 * label.casimir_value())
    if state == ALL_STATES:
        return is_scalar_identity(k, target, tol)
    value = eigenproperty(k, state, tol)
    if value is None:
        return False
    return abs(value - target) <= tol * max(1.0, target)


def relation_C_holds(a: int, b: int, psi) -> bool:
    """The commutator relation [P_a, Q_b] psi = -i hbar psi, exactly.

    psi may be a single spinor wavefunction or an iterable of them; the
    relation must hold for every member.  Decided in exact rational
    arithmetic, zero tolerance.
    """
    if isinstance(psi, SpinorWavefunction):
        psi = [psi]
    for wf in psi:
        if commutator_PQ_apply(wf, a, b) != wf.scale(MINUS_I):
            return False
    return True


def ccr_identity_on_monomials(n_particles: int, max_degree: int,
                              a: int, b: int) -> bool:
    """Prove the commutator identity on the degree-capped class.

    [P_a, Q_b] only touches the variables q_a and q_b and acts slotwise,
    so by linearity and factorization over untouched variables it
    suffices to check every monomial in q_a, q_b alone up to max_degree.
    Verifies [P_a, Q_a] m = -i m and [P_a, Q_b] m = 0 for a != b.
    """
    slots = sorted({a, b})
    for exps in np.ndindex(*([max_degree + 1] * len(slots))):
        mono = [0] * n_particles
        for slot, e in zip(slots, exps):
            mono[slot - 1] = e
        base = gaussian(n_particles)
        for slot_idx, e in enumerate(mono, start=1):
            for _ in range(e):
                base = base.times_q(slot_idx)
        wf = SpinorWavefunction(n_particles, 0, (base,))
        got = commutator_PQ_apply(wf, a, b)
        want = wf.scale(MINUS_I) if a == b else wf.scale(QComplex())
        if got != want:
            return False
    return True


def permutation_invariance_check(op_family, pi: Permutation,
                                 system: ParticleSystem,
                                 tol: float = TOL_ABS) -> bool:
    """U_pi K_ab U_pi^dagger = K_{pi(a) pi(b)} for every ordered pair."""
    u = permutation_unitary(pi, system).entries
    n = system.n_particles
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            k_ab = op_family(a, b).entries
            k_img = op_family(pi(a), pi(b)).entries
            if float(np.abs(u @ k_ab @ u.conj().T - k_img).max()) > tol:
                return False
    return True


@dataclass
class DiscernibilityReport:
    """Certification verdict with per-pair evidence."""

    relation: str
    mode: str
    n_particles: int
    two_s: int
    sector: str
    samples: dict
    seed: int
    tolerances: dict
    pairs: list = field(default_factory=list)
    permutation_invariant: bool = False
    spectrum: list = field(default_factory=list)
    symmetric_holds: bool = False
    verdict: str = VERDICT_INCONCLUSIVE

    def compute_verdict(self) -> str:
        reflexive_ok = all(p["reflexive"] for p in self.pairs if p["a"] == p["b"])
        off_diag = [p for p in self.pairs if p["a"] != p["b"]]
        off_ok = bool(off_diag) and all(p["off_diagonal_fails"] for p in off_diag)
        if reflexive_ok and off_ok and self.symmetric_holds \
                and self.permutation_invariant:
            self.verdict = VERDICT_PASS
        else:
            self.verdict = VERDICT_FAIL
        return self.verdict

    def to_dict(self) -> dict:
        return {
            "relation": self.relation,
            "mode": self.mode,
            "n_particles": self.n_particles,
            "two_s": self.two_s,
            "sector": self.sector,
            "samples": self.samples,
            "seed": self.seed,
            "tolerances": self.tolerances,
            "pairs": self.pairs,
            "permutation_invariant": self.permutation_invariant,
            "spectrum": self.spectrum,
            "verdict": self.verdict,
        }


def _sample_pure(proj: np.ndarray, dim: int, rng) -> PureState:
    for _ in range(16):
        v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        v = proj @ v
        norm = np.linalg.norm(v)
        if norm > 1e-12:
            return PureState(v / norm)
    raise ShapeError("sector projection kept returning zero")


def _sample_mixed(proj: np.ndarray, dim: int, rank: int, rng) -> MixedState:
    weights = rng.random(rank) + 1e-6
    weights /= weights.sum()
    w = np.zeros((dim, dim), dtype=complex)
    for wk in weights:
        psi = _sample_pure(proj, dim, rng).amplitudes
        w += wk * np.outer(psi, psi.conj())
    return MixedState((w + w.conj().T) / 2)


def certify_T(n_particles: int, two_s: int, sector: str = "full",
              n_pure_samples: int = 100, n_mixed_samples: int = 20,
              mixed_rank: int = 2, seed: int = 0,
              tol: float = 1e-8) -> DiscernibilityReport:
    """Full weak-discernibility certification of the total-spin relation."""
    if n_particles < 2:
        raise ArityError("need at least two particles to discern")
    if two_s < 1:
        raise DegenerateSpinError("relation T is undefined for spin 0")
    label = SpinLabel(two_s)
    system = ParticleSystem(n_particles, label.dim, sector)
    target = float(4 * label.casimir_value())
    # largest eigenvalue off-diagonal: S(S+1) at S = 2s, exactly 2s(2s+1)
    max_allowed = float(two_s * (two_s + 1))

    proj = sector_projector(system).entries
    rng = np.random.default_rng(np.random.SeedSequence([seed, two_s, n_particles]))
    sdim = round(np.trace(proj).real)
    rank = min(mixed_rank, max(sdim, 1))

    report = DiscernibilityReport(
        relation="T",
        mode="pure_sampling" if n_mixed_samples == 0 else "mixed_sampling",
        n_particles=n_particles,
        two_s=two_s,
        sector=sector,
        samples={"pure": n_pure_samples, "mixed": n_mixed_samples,
                 "mixed_rank": rank},
        seed=seed,
        tolerances={"tol": tol, "tol_abs": TOL_ABS},
    )

    operators = {}
    for a in range(1, n_particles + 1):
        for b in range(1, n_particles + 1):
            operators[(a, b)] = pair_total_spin_squared(label, a, b, system)

    pure_samples = [_sample_pure(proj, system.total_dim, rng)
                    for _ in range(n_pure_samples)]
    mixed_samples = [_sample_mixed(proj, system.total_dim, rank, rng)
                     for _ in range(n_mixed_samples)]

    fails = {}
    for a in range(1, n_particles + 1):
        for b in range(1, n_particles + 1):
            k = operators[(a, b)]
            if a == b:
                ok = is_scalar_identity(k, target, tol)
                for st in pure_samples + mixed_samples:
                    v = eigenproperty(k, st, tol)
                    ok = ok and v is not None and abs(v - target) <= tol * target
                report.pairs.append({
                    "a": a, "b": b, "reflexive": bool(ok),
                    "off_diagonal_fails": None, "witness": None,
                })
                continue
            # operator route: not a scalar, and spectrally bounded away
            not_scalar = not is_scalar_identity(k, target, tol)
            levels = eigenvalue_levels(k)
            spectral = levels[-1][0] <= max_allowed + tol and \
                levels[-1][0] < target - tol
            witness = None
            sampled_fail = True
            for idx, st in enumerate(pure_samples):
                v = eigenproperty(k, st, tol)
                holds = v is not None and abs(v - target) <= tol * target
                if holds:
                    sampled_fail = False
                elif witness is None:
                    branch = "absent" if v is None else f"value={v.real:.6g}"
                    witness = f"pure[{idx}]:{branch}"
            for idx, st in enumerate(mixed_samples):
                v = eigenproperty(k, st, tol)
                holds = v is not None and abs(v - target) <= tol * target
                if holds:
                    sampled_fail = False
                elif witness is None:
                    branch = "absent" if v is None else f"value={v.real:.6g}"
                    witness = f"mixed[{idx}]:{branch}"
            fail = not_scalar and spectral and sampled_fail
            fails[(a, b)] = fail
            report.pairs.append({
                "a": a, "b": b, "reflexive": None,
                "off_diagonal_fails": bool(fail), "witness": witness,
            })

    # symmetry by the logic-theorem route: not-R(a,b) and not-R(b,a)
    report.symmetric_holds = all(
        fails[(a, b)] and fails[(b, a)]
        for a in range(1, n_particles + 1)
        for b in range(a + 1, n_particles + 1))

    report.permutation_invariant = all(
        permutation_invariance_check(
            lambda a, b: operators[(a, b)], pi, system, tol)
        for pi in Permutation.all(n_particles))

    report.spectrum = [[lam, mult]
                       for lam, mult in eigenvalue_levels(operators[(1, 2)])]
    report.compute_verdict()
    return report


def certify_C(n_particles: int, two_s: int = 0, n_samples: int = 200,
              max_degree: int = 8, seed: int = 0) -> DiscernibilityReport:
    """Exact symbolic certification of the commutator relation."""
    if n_particles < 2:
        raise ArityError("need at least two particles to discern")
    report = DiscernibilityReport(
        relation="C",
        mode="symbolic_exact",
        n_particles=n_particles,
        two_s=two_s,
        sector="full",
        samples={"wavefunctions": n_samples, "max_degree": max_degree},
        seed=seed,
        tolerances={"tol": 0.0},
    )
    samples = [random_wavefunction(n_particles, max_degree, two_s, seed + k)
               for k in range(n_samples)]
    if two_s == 0:
        # the bosonic direct-product case phi(q_1)...phi(q_N)
        samples.append(symmetric_product_state(
            {0: QComplex(Fraction(1)), 1: QComplex(Fraction(1, 2))},
            n_particles))

    targets = [wf.scale(MINUS_I) for wf in samples]
    fails = {}
    for a in range(1, n_particles + 1):
        for b in range(1, n_particles + 1):
            identity_ok = ccr_identity_on_monomials(n_particles, max_degree, a, b)
            if a == b:
                ok = identity_ok and all(
                    commutator_PQ_apply(wf, a, a) == tgt
                    for wf, tgt in zip(samples, targets))
                report.pairs.append({
                    "a": a, "b": b, "reflexive": bool(ok),
                    "off_diagonal_fails": None, "witness": None,
                })
                continue
            witness = None
            fail = identity_ok  # identity proves [P_a,Q_b] = 0 != -i
            for idx, (wf, tgt) in enumerate(zip(samples, targets)):
                comm = commutator_PQ_apply(wf, a, b)
                if comm != tgt:
                    if witness is None:
                        witness = f"wavefunction[{idx}]:commutator_zero"
                else:
                    fail = False
            fails[(a, b)] = fail
            report.pairs.append({
                "a": a, "b": b, "reflexive": None,
                "off_diagonal_fails": bool(fail), "witness": witness,
            })

    report.symmetric_holds = all(
        fails[(a, b)] and fails[(b, a)]
        for a in range(1, n_particles + 1)
        for b in range(a + 1, n_particles + 1))

    # permutation invariance, symbolically via slot relabeling
    check_samples = samples[: min(len(samples), 3)]
    invariant = True
    for pi in Permutation.all(n_particles):
        for a in range(1, n_particles + 1):
            for b in range(1, n_particles + 1):
                for wf in check_samples:
                    lhs = commutator_PQ_apply(wf, a, b).permute_slots(pi.mapping)
                    rhs = commutator_PQ_apply(
                        wf.permute_slots(pi.mapping), pi(a), pi(b))
                    if lhs != rhs:
                        invariant = False
    report.permutation_invariant = invariant
    report.compute_verdict()
    return report


def certify_weak_discernibility(relation: str, **config) -> DiscernibilityReport:
    """Dispatch to the T (finite spin) or C (symbolic) pipeline."""
    if relation == "T":
        return certify_T(**config)
    if relation == "C":
        return certify_C(**config)
    raise ValueError(f"unknown relation {relation!r}")
