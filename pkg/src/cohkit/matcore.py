"""Dense complex matrix algebra: Hermitian spectra, Schatten norms, tensor
products, partial traces, and basis-referenced dephasing.

All operations are pure functions; inputs are never mutated.  The incoherent
basis is always the storage basis of a density matrix: callers wanting another
basis conjugate the state before constructing the `DensityMatrix`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ConvergenceFailureError,
    DimensionMismatchError,
    MissingSplitError,
    NonHermitianError,
    NotPSDError,
    TraceMismatchError,
)

# Tolerances for double precision at D <= 81 (a few hundred at most).
TOL_HERM = 1e-10
PSD_SLACK = 1e-9
EIG_ZERO = 1e-12


def as_matrix(m) -> np.ndarray:
    """Coerce to a 2-D complex array and reject non-finite entries."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise DimensionMismatchError(f"expected a 2-D matrix, got ndim={a.ndim}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError("matrix contains NaN or Inf entries")
    return a


def herm_residue(m: np.ndarray) -> float:
    """Max-entry distance from the conjugate transpose."""
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def is_hermitian(m: np.ndarray, tol: float = TOL_HERM) -> bool:
    return m.shape[0] == m.shape[1] and herm_residue(m) <= tol


def herm_eigvals(m, tol: float = TOL_HERM) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, sorted descending.

    Raises NonHermitianError if the input exceeds the Hermiticity tolerance
    and ConvergenceFailureError if the solver fails.
    """
    a = as_matrix(m)
    if a.shape[0] != a.shape[1] or not is_hermitian(a, tol):
        raise NonHermitianError(
            f"matrix is not Hermitian within {tol} (residue {herm_residue(a):.3e})"
        )
    try:
        w = np.linalg.eigvalsh(a)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailureError(f"eigenvalue solver failed: {exc}") from exc
    return w[::-1]


def _zero_clamped(values: np.ndarray) -> np.ndarray:
    # Magnitudes below EIG_ZERO are sign noise from rank-deficient inputs.
    out = values.copy()
    out[np.abs(out) < EIG_ZERO] = 0.0
    return out


def schatten1(m) -> float:
    """Schatten 1-norm (trace norm): sum of singular values.

    Hermitian inputs take the cheaper eigenvalue route (sum of |eigenvalue|).
    """
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatchError("schatten1 expects a square matrix")
    try:
        if is_hermitian(a):
            vals = np.abs(np.linalg.eigvalsh(a))
        else:
            vals = np.linalg.svd(a, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailureError(f"singular value computation failed: {exc}") from exc
    return float(np.sum(_zero_clamped(vals)))


def frobenius(m) -> float:
    """Frobenius norm: sqrt of the sum of squared entry magnitudes."""
    return float(np.linalg.norm(as_matrix(m)))


def tensor(a, b) -> np.ndarray:
    """Kronecker product with A-index major, B-index minor ordering."""
    return np.kron(as_matrix(a), as_matrix(b))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, PSD, trace-1 matrix with an optional bipartite split.

    The storage basis defines the incoherent (diagonal) basis for every
    coherence quantity computed downstream.
    """

    matrix: np.ndarray
    split: tuple[int, int] | None = None
    _eigvals: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        m = as_matrix(self.matrix)
        if m.shape[0] != m.shape[1]:
            raise DimensionMismatchError(f"density matrix must be square, got {m.shape}")
        if not is_hermitian(m):
            raise NonHermitianError(
                f"density matrix Hermiticity residue {herm_residue(m):.3e} exceeds {TOL_HERM}"
            )
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > TOL_HERM:
            raise TraceMismatchError(f"trace {tr} differs from 1 by more than {TOL_HERM}")
        try:
            w = np.linalg.eigvalsh(m)
        except np.linalg.LinAlgError as exc:
            raise ConvergenceFailureError(f"eigenvalue solver failed: {exc}") from exc
        if w[0] < -PSD_SLACK:
            raise NotPSDError(f"minimum eigenvalue {w[0]:.3e} below -{PSD_SLACK}")
        if self.split is not None:
            da, db = self.split
            if da * db != m.shape[0]:
                raise DimensionMismatchError(
                    f"split {self.split} inconsistent with dimension {m.shape[0]}"
                )
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "_eigvals", w[::-1])

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigvals(self) -> np.ndarray:
        """Eigenvalues sorted descending (cached at construction)."""
        return self._eigvals.copy()


def partial_trace(rho: DensityMatrix, keep: str) -> DensityMatrix:
    """Reduced density matrix over subsystem ``keep`` ("A" or "B")."""
    if rho.split is None:
        raise MissingSplitError("partial_trace requires a (D_A, D_B) split")
    da, db = rho.split
    t = rho.matrix.reshape(da, db, da, db)
    if keep == "A":
        red = np.einsum("ijkj->ik", t)
    elif keep == "B":
        red = np.einsum("ijil->jl", t)
    else:
        raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")
    return DensityMatrix(red)


def dephase(rho: DensityMatrix) -> DensityMatrix:
    """Zero all off-diagonal entries in the storage basis (idempotent)."""
    return DensityMatrix(np.diag(np.diag(rho.matrix).real).astype(complex), split=rho.split)


def product_of_reductions(rho: DensityMatrix) -> DensityMatrix:
    """Tensor product of the reduced density matrices, rho_A (x) rho_B."""
    if rho.split is None:
        raise MissingSplitError("product_of_reductions requires a (D_A, D_B) split")
    ra = partial_trace(rho, "A")
    rb = partial_trace(rho, "B")
    return DensityMatrix(tensor(ra.matrix, rb.matrix), split=rho.split)
