"""Lindblad evolution of two collectively coupled spin ensembles under
two-axis squeezing with S^z dephasing, restricted to the symmetric (Dicke)
subspace of each ensemble.

Master equation convention (hbar = 1):

    drho/dt = -i [H, rho] - (Gamma/2) L[O, rho],
    L[O, rho] = rho O^dag O + O^dag O rho - 2 O rho O^dag,

which equals the standard dissipator with rate Gamma.  The convention is
kept verbatim to avoid a factor-of-2 ambiguity: a single qubit under
sigma^z dephasing loses off-diagonals as exp(-2 Gamma t).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coherence import CoherenceReport, report
from .errors import (
    DimensionMismatchError,
    IntegrationUnstableError,
    InvalidNError,
    NonHermitianError,
    NotPSDError,
    TraceMismatchError,
)
from .matcore import DensityMatrix
from .opbasis import ObservableBasis, collective_spin_ops, gell_mann_basis

_TRACE_DRIFT_LIMIT = 1e-6


@dataclass(frozen=True, eq=False)
class DickeSystem:
    """Collective spin operators of an n-qubit ensemble, J = n/2.

    Sz has eigenvalues {n, n-2, ..., -n} (qubit sigma^z convention) with the
    fully polarized |S^z = n> first; Sm = Sp^dag and [Sz, Sp] = 2 Sp.
    """

    n: int
    sz: np.ndarray
    sp: np.ndarray
    sm: np.ndarray

    @property
    def dim_local(self) -> int:
        return self.n + 1

    @property
    def joint_dim(self) -> int:
        return (self.n + 1) ** 2


def build_dicke(n: int) -> DickeSystem:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidNError(f"ensemble size must be a positive integer, got {n!r}")
    sz, sp, sm = collective_spin_ops(int(n))
    return DickeSystem(n=int(n), sz=sz, sp=sp, sm=sm)


def lindblad_rhs(rho: np.ndarray, h: np.ndarray, jump_ops, gamma: float) -> np.ndarray:
    """Right-hand side of the master equation in the sign convention above."""
    rho = np.asarray(rho, dtype=complex)
    d = rho.shape[0]
    if rho.shape != (d, d) or h.shape != (d, d):
        raise DimensionMismatchError("state and Hamiltonian dimensions differ")
    out = -1j * (h @ rho - rho @ h)
    for o in jump_ops:
        if o.shape != (d, d):
            raise DimensionMismatchError("jump operator dimension differs from state")
        odo = o.conj().T @ o
        out -= (gamma / 2.0) * (rho @ odo + odo @ rho - 2.0 * (o @ rho @ o.conj().T))
    return out


def _rk4_step(rho, h, jump_ops, gamma, dt):
    k1 = lindblad_rhs(rho, h, jump_ops, gamma)
    k2 = lindblad_rhs(rho + 0.5 * dt * k1, h, jump_ops, gamma)
    k3 = lindblad_rhs(rho + 0.5 * dt * k2, h, jump_ops, gamma)
    k4 = lindblad_rhs(rho + dt * k3, h, jump_ops, gamma)
    return rho + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Sampled states and coherence reports along one evolution."""

    times: np.ndarray
    states: list[DensityMatrix]
    reports: list[CoherenceReport]

    def coherences(self) -> np.ndarray:
        return np.array([r.C for r in self.reports])


def squeezing_hamiltonian(system: DickeSystem) -> np.ndarray:
    """Two-axis interaction S+_A S+_B + S-_A S-_B on the joint space."""
    return np.kron(system.sp, system.sp) + np.kron(system.sm, system.sm)


def dephasing_jumps(system: DickeSystem, mode: str = "both") -> list[np.ndarray]:
    """S^z jump operators: per ensemble ("both") or the joint sum ("joint")."""
    d = system.dim_local
    eye = np.eye(d, dtype=complex)
    za = np.kron(system.sz, eye)
    zb = np.kron(eye, system.sz)
    if mode == "both":
        return [za, zb]
    if mode == "joint":
        return [za + zb]
    raise ValueError(f"dephase mode must be 'both' or 'joint', got {mode!r}")


def evolve_squeezing(n: int, gamma: float, t_max: float = 2.0, dt: float = 1e-3,
                     sample_every: int = 10,
                     basis_a: ObservableBasis | None = None,
                     basis_b: ObservableBasis | None = None,
                     dephase_mode: str = "both",
                     norm: str | None = None,
                     approximate: bool = False) -> Trajectory:
    """Evolve |S^z = n>|S^z = n> under two-axis squeezing with dephasing and
    report coherence at every sample_every-th step.

    The default observable basis is the complete generalized Gell-Mann set
    on each (n+1)-dimensional ensemble; pass the truncated collective-spin
    set to reproduce estimator curves.
    """
    system = build_dicke(n)
    d = system.dim_local
    if basis_a is None:
        basis_a = gell_mann_basis(d)
    if basis_b is None:
        basis_b = gell_mann_basis(d)
    if basis_a.dim != d or basis_b.dim != d:
        raise DimensionMismatchError(
            f"factor bases must act on dimension {d} for n = {n}"
        )
    h = squeezing_hamiltonian(system)
    jumps = dephasing_jumps(system, dephase_mode)

    rho = np.zeros((d * d, d * d), dtype=complex)
    rho[0, 0] = 1.0

    steps = int(round(t_max / dt))
    if sample_every < 1:
        raise ValueError("sample_every must be a positive step count")

    times, states, reports = [], [], []

    def sample(step: int):
        t = step * dt
        drift = abs(np.trace(rho).real - 1.0)
        if not np.isfinite(drift) or drift > _TRACE_DRIFT_LIMIT:
            raise IntegrationUnstableError(
                f"trace drift {drift:.3e} at t = {t:.4f} exceeds {_TRACE_DRIFT_LIMIT}"
            )
        try:
            state = DensityMatrix(rho, split=(d, d))
        except (NotPSDError, NonHermitianError, TraceMismatchError, ValueError) as exc:
            # the state was valid at t = 0, so a failed invariant here means
            # the integrator diverged (e.g. dt too large for this H, Gamma)
            raise IntegrationUnstableError(
                f"state invariants lost at t = {t:.4f}: {exc}"
            ) from exc
        times.append(t)
        states.append(state)
        reports.append(report(state, basis_a, basis_b, norm=norm, approximate=approximate))

    sample(0)
    for step in range(1, steps + 1):
        rho = _rk4_step(rho, h, jumps, gamma, dt)
        if step % sample_every == 0 or step == steps:
            sample(step)
    return Trajectory(times=np.array(times), states=states, reports=reports)


def first_peak_time(traj: Trajectory) -> float:
    """Time of the first local maximum of the total coherence; falls back to
    the global maximum when the curve is monotone over the window."""
    c = traj.coherences()
    for i in range(1, len(c) - 1):
        if c[i] >= c[i - 1] and c[i] > c[i + 1] and c[i] > 1e-9:
            return float(traj.times[i])
    return float(traj.times[int(np.argmax(c))])
