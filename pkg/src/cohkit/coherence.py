"""Coherence from expectation values of measurement observables.

The central quantity is the norm of sum_l S_l (<S_l>_rho - <S_l>_rho_d),
where rho_d is rho with all off-diagonal entries zeroed in the storage
basis.  For a complete basis with the Schatten-1 norm this equals
||rho - rho_d||_1 and satisfies the coherence axioms; for truncated bases
the Frobenius norm gives a guaranteed lower bound of the complete-basis
value.

Bipartite decomposition: the local coherence is the coherence of
pi_rho = rho_A (x) rho_B, and the global correlation delta is the norm of
the difference between the covariance matrices of rho and rho_d.  They
bound the total coherence through C <= C_L + delta.

Everything here is also computable without a density matrix, from measured
expectation values plus diagonal-projector statistics (`*_from_values`).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    CohkitError,
    CompleteBasisGivenError,
    DimensionMismatchError,
    IncompatibleNormForBoundError,
    IncompleteBasisError,
    MissingSplitError,
)
from .matcore import (
    DensityMatrix,
    dephase,
    frobenius,
    partial_trace,
    product_of_reductions,
    schatten1,
)
from .opbasis import ObservableBasis, product_basis, standard_basis

NORMS = ("schatten1", "frobenius")

# Measures below this are floating-point residue, reported as exactly 0.
CLAMP = 1e-12

DECOMP_SLACK = 1e-9


@dataclass(frozen=True)
class ExpectationVector:
    """Expectation values <S_l> of one basis against one state."""

    basis: ObservableBasis
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (self.basis.n_ops,):
            raise DimensionMismatchError(
                f"expected {self.basis.n_ops} values, got shape {v.shape}"
            )
        v = v.copy()
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @classmethod
    def of(cls, rho: DensityMatrix, basis: ObservableBasis) -> "ExpectationVector":
        return cls(basis, basis.expectations(rho.matrix))


@dataclass(frozen=True)
class CoherenceReport:
    """Total coherence, its local part, the global correlation, and the
    decomposition-inequality slack C_L + delta - C."""

    C: float
    C_L: float
    delta: float
    norm: str
    truncated: bool
    slack: float


def _resolve_norm(basis: ObservableBasis, norm: str | None) -> str:
    if norm is None:
        return "schatten1" if basis.complete else "frobenius"
    if norm not in NORMS:
        raise ValueError(f"norm must be one of {NORMS}, got {norm!r}")
    return norm


def _check_truncation(basis: ObservableBasis, norm: str, approximate: bool):
    if not basis.complete and norm == "schatten1" and not approximate:
        raise IncompatibleNormForBoundError(
            "Schatten-1 on a truncated basis is not a guaranteed lower bound; "
            "pass approximate=True to accept the estimate or use the Frobenius norm"
        )


def _clamped(x: float) -> float:
    return 0.0 if x < CLAMP else float(x)


def _norm_of(m: np.ndarray, norm: str) -> float:
    return schatten1(m) if norm == "schatten1" else frobenius(m)


def omega_matrix(basis: ObservableBasis, ev: ExpectationVector) -> np.ndarray:
    """Observable matrix sum_l <S_l> S_l; reproduces rho for a complete basis."""
    if not basis.complete:
        raise IncompleteBasisError("the observable matrix needs a complete basis")
    if ev.basis is not basis and ev.basis.n_ops != basis.n_ops:
        raise DimensionMismatchError("expectation vector belongs to a different basis")
    return basis.resum(ev.values)


def coherence_total(rho: DensityMatrix, basis: ObservableBasis, norm: str | None = None,
                    approximate: bool = False) -> float:
    """Coherence ||sum_l S_l (<S_l>_rho - <S_l>_rho_d)|| of rho."""
    if basis.dim != rho.dim:
        raise DimensionMismatchError(
            f"basis dimension {basis.dim} does not match state dimension {rho.dim}"
        )
    norm = _resolve_norm(basis, norm)
    _check_truncation(basis, norm, approximate)
    diff = basis.expectations(rho.matrix) - basis.expectations(dephase(rho).matrix)
    return _clamped(_norm_of(basis.resum(diff), norm))


def coherence_schatten1(rho: DensityMatrix) -> float:
    """Complete-basis Schatten-1 coherence ||rho - rho_d||_1.

    Identical to coherence_total with any complete basis, using the fact
    that a complete orthonormal resummation reconstructs rho exactly.
    """
    return _clamped(schatten1(rho.matrix - dephase(rho).matrix))


def coherence_local(rho: DensityMatrix, basis: ObservableBasis, norm: str | None = None,
                    approximate: bool = False) -> float:
    """Coherence of the correlation-free product pi_rho = rho_A (x) rho_B."""
    if rho.split is None:
        raise MissingSplitError("local coherence requires a (D_A, D_B) split")
    if basis.product_structure is None:
        raise ValueError("local coherence requires a product basis")
    return coherence_total(product_of_reductions(rho), basis, norm, approximate)


def covariance(rho: DensityMatrix, basis: ObservableBasis) -> np.ndarray:
    """Covariance matrix gamma_ll' = <A_l (x) B_l'> - <A_l><B_l'>."""
    if rho.split is None:
        raise MissingSplitError("covariance requires a (D_A, D_B) split")
    if basis.product_structure is None:
        raise ValueError("covariance requires a product basis")
    ba, bb = basis.product_structure
    joint = basis.pair_expectations(rho.matrix)
    a = ba.expectations(partial_trace(rho, "A").matrix)
    b = bb.expectations(partial_trace(rho, "B").matrix)
    return joint - np.outer(a, b)


def global_correlation(rho: DensityMatrix, basis: ObservableBasis, norm: str | None = None,
                       approximate: bool = False) -> float:
    """Global correlation: norm of gamma(rho) - gamma(rho_d) resummed over
    the product basis.  Zero for every product state."""
    norm = _resolve_norm(basis, norm)
    _check_truncation(basis, norm, approximate)
    diff = covariance(rho, basis) - covariance(dephase(rho), basis)
    return _clamped(_norm_of(basis.resum(diff), norm))


def truncated_coherence(rho: DensityMatrix, basis: ObservableBasis) -> float:
    """Frobenius estimator over a truncated operator set.

    Guaranteed never to exceed the complete-basis Schatten-1 coherence.
    """
    if basis.complete:
        raise CompleteBasisGivenError(
            "basis is complete; use coherence_total instead of the estimator"
        )
    return coherence_total(rho, basis, norm="frobenius")


def report(rho: DensityMatrix, basis_a: ObservableBasis, basis_b: ObservableBasis,
           norm: str | None = None, approximate: bool = False) -> CoherenceReport:
    """All three measures over the product basis A (x) B, plus the slack of
    the decomposition inequality C <= C_L + delta."""
    if rho.split is None:
        raise MissingSplitError("the coherence report requires a (D_A, D_B) split")
    basis = product_basis(basis_a, basis_b)
    norm = _resolve_norm(basis, norm)
    c = coherence_total(rho, basis, norm, approximate)
    c_l = coherence_local(rho, basis, norm, approximate)
    delta = global_correlation(rho, basis, norm, approximate)
    slack = c_l + delta - c
    if basis.complete and norm == "schatten1" and slack < -DECOMP_SLACK:
        raise CohkitError(
            f"decomposition inequality violated beyond tolerance: slack {slack:.3e}"
        )
    return CoherenceReport(C=c, C_L=c_l, delta=delta, norm=norm,
                           truncated=not basis.complete, slack=slack)


# ---------------------------------------------------------------------------
# Measurement-data path: no density matrix required.
# ---------------------------------------------------------------------------

def dephased_values_from_probabilities(basis: ObservableBasis, probs) -> np.ndarray:
    """<S_l>_rho_d from the diagonal-projector statistics p_k = rho_kk.

    The dephased state is diagonal, so <S_l>_rho_d = sum_k p_k S_l[k, k].
    """
    p = np.asarray(probs, dtype=float)
    if p.shape != (basis.dim,):
        raise DimensionMismatchError(
            f"expected {basis.dim} diagonal probabilities, got shape {p.shape}"
        )
    return basis.diagonals() @ p


def coherence_from_values(basis: ObservableBasis, values, dephased_values,
                          norm: str | None = None, approximate: bool = False) -> float:
    """Coherence directly from measured <S_l>_rho and <S_l>_rho_d."""
    v = np.asarray(values, dtype=float)
    vd = np.asarray(dephased_values, dtype=float)
    if v.shape != (basis.n_ops,) or vd.shape != (basis.n_ops,):
        raise DimensionMismatchError("value vectors do not match the basis size")
    norm = _resolve_norm(basis, norm)
    _check_truncation(basis, norm, approximate)
    return _clamped(_norm_of(basis.resum(v - vd), norm))


def global_correlation_from_values(basis: ObservableBasis, values, dephased_values,
                                   norm: str | None = None,
                                   approximate: bool = False) -> float:
    """Global correlation from measured joint expectations.

    Single-subsystem expectations are read off the joint values through the
    identity members of the factor bases, so no extra measurements beyond
    the joint set and the diagonal projectors are needed.
    """
    if basis.product_structure is None:
        raise ValueError("global correlation requires a product basis")
    ba, bb = basis.product_structure
    ia = ba.identity_index()
    ib = bb.identity_index()
    if ia is None or ib is None:
        raise CohkitError(
            "factor bases carry no identity operator; single-subsystem "
            "expectations cannot be derived from the joint values"
        )
    norm = _resolve_norm(basis, norm)
    _check_truncation(basis, norm, approximate)

    def gamma(flat):
        joint = np.asarray(flat, dtype=float).reshape(ba.n_ops, bb.n_ops)
        # <A_l (x) cI> = c <A_l>, so the identity column/row yields the singles.
        a = joint[:, ib[0]] / ib[1]
        b = joint[ia[0], :] / ia[1]
        return joint - np.outer(a, b)

    diff = gamma(values) - gamma(dephased_values)
    return _clamped(_norm_of(basis.resum(diff), norm))


def coherence_total_reference(rho: DensityMatrix) -> float:
    """Slow reference route through the standard matrix-unit basis; used by
    tests to cross-check the fast paths."""
    basis = standard_basis(rho.dim)
    ev = ExpectationVector.of(rho, basis)
    evd = ExpectationVector.of(dephase(rho), basis)
    return _clamped(schatten1(omega_matrix(basis, ev) - omega_matrix(basis, evd)))
