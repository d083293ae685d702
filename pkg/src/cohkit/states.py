"""Constructors for the states used in the worked examples and tests."""

from __future__ import annotations

import numpy as np

from .matcore import DensityMatrix


def pure_dm(vec, split: tuple[int, int] | None = None) -> DensityMatrix:
    """Density matrix |psi><psi| of a (not necessarily normalized) ket."""
    v = np.asarray(vec, dtype=complex).reshape(-1)
    v = v / np.linalg.norm(v)
    return DensityMatrix(np.outer(v, v.conj()), split=split)


def uniform_ket(dim: int) -> np.ndarray:
    """Equal superposition (|0> + ... + |dim-1>)/sqrt(dim)."""
    return np.ones(dim, dtype=complex) / np.sqrt(dim)


def max_entangled_ket(dim: int) -> np.ndarray:
    """sum_m |m>|m>/sqrt(dim) on the dim x dim bipartite space."""
    v = np.zeros(dim * dim, dtype=complex)
    v[:: dim + 1] = 1 / np.sqrt(dim)
    return v


def mixture(states: list[DensityMatrix], probs) -> DensityMatrix:
    """Convex combination sum_n p_n rho_n."""
    p = np.asarray(probs, dtype=float)
    if len(states) != len(p):
        raise ValueError("state and probability counts differ")
    m = sum(pi * s.matrix for pi, s in zip(p, states))
    return DensityMatrix(m, split=states[0].split)


def separable_entangled_family(dim: int, mu: float) -> DensityMatrix:
    """(1-mu) |Psi_S><Psi_S| + mu |Psi_E><Psi_E| on two dim-level systems.

    Psi_S is the uniform product ket, Psi_E the maximally entangled ket;
    mu sweeps the state from separable to entangled.
    """
    psi_s = np.kron(uniform_ket(dim), uniform_ket(dim))
    psi_e = max_entangled_ket(dim)
    split = (dim, dim)
    return mixture([pure_dm(psi_s, split), pure_dm(psi_e, split)], [1 - mu, mu])


def polarized_pair(n: int) -> DensityMatrix:
    """|S^z = n>|S^z = n> for two n-qubit ensembles in the Dicke subspace."""
    d = n + 1
    v = np.zeros(d * d, dtype=complex)
    v[0] = 1.0
    return pure_dm(v, split=(d, d))
