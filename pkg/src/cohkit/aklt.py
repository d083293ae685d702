"""Two-site reduced density matrix of the generalized spin-1 AKLT-family
ground state and its coherence in closed form.

The chain carries a coupling g with a critical point at g = 0; the two-site
reduced state rho(1, r) for sites separated by r has a fixed 9x9 sparsity
pattern whose entries are rational in g and in the transfer weights

    L1 = 1 + 2|g|   (dominant),   L2 = 1 - 2|g|   (subdominant).

For g >= 0 these are the familiar 1 + 2g and 1 - 2g; writing them through
|g| extends the parameterization to g < 0, where it is fixed by requiring
unit trace, positivity, and agreement with the closed-form coherence
2(2 + sqrt(2)) |g| / L1^r, which is even in g.

The coherence carries a kink at g = 0 for every separation r: the signature
of the quantum phase transition.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from .coherence import CoherenceReport, report
from .errors import InvalidParamsError, TraceMismatchError
from .matcore import DensityMatrix
from .opbasis import gell_mann_basis, spin_truncated_basis

_FULL_PREFACTOR = 2.0 * (2.0 + sqrt(2.0))
_SINGULAR_TOL = 1e-6


@dataclass(frozen=True)
class AkltParams:
    """Coupling g and site separation r >= 2."""

    g: float
    r: int

    def __post_init__(self):
        if self.r < 2:
            raise InvalidParamsError(f"separation r must be >= 2, got {self.r}")
        if abs(1.0 + 2.0 * self.g) < _SINGULAR_TOL:
            raise InvalidParamsError(
                "g too close to -1/2: the transfer weight 1 + 2g vanishes"
            )
        if not np.isfinite(self.g):
            raise InvalidParamsError("g must be finite")


def _entries(p: AkltParams) -> dict[str, float]:
    g, r = p.g, p.r
    l1 = 1.0 + 2.0 * abs(g)
    l2 = 1.0 - 2.0 * abs(g)
    alpha = g * g * (l1 ** (r - 2) - l2 ** (r - 2)) / l1**r
    beta = g * g * (l1 ** (r - 2) + l2 ** (r - 2)) / l1**r
    gamma = 1.0 / l1**2
    delta = -g / l1**r
    mu = -abs(g) / l1**r
    return {"alpha": alpha, "beta": beta, "gamma": gamma, "delta": delta, "mu": mu}


def aklt_rdm(p: AkltParams) -> DensityMatrix:
    """The 9x9 two-site reduced density matrix rho(1, r), split (3, 3).

    Basis order |ab> with a, b in {0, 1, 2} (index 3a + b).  Off-diagonal
    support sits on the mu pairs (01|10), (12|21) and the delta chain
    (02|11|20); everything else is diagonal.
    """
    e = _entries(p)
    g_abs_gamma = abs(p.g) * e["gamma"]
    m = np.zeros((9, 9), dtype=complex)
    diag = [e["alpha"], g_abs_gamma, e["beta"], g_abs_gamma, e["gamma"],
            g_abs_gamma, e["beta"], g_abs_gamma, e["alpha"]]
    m[np.arange(9), np.arange(9)] = diag
    for i, j in ((1, 3), (5, 7)):
        m[i, j] = m[j, i] = e["mu"]
    for i, j in ((2, 4), (4, 6)):
        m[i, j] = m[j, i] = e["delta"]
    tr = float(np.trace(m).real)
    if abs(tr - 1.0) > 1e-9:
        raise TraceMismatchError(
            f"rho(1, r) trace {tr} deviates from 1: parameters outside the "
            "validity region"
        )
    return DensityMatrix(m, split=(3, 3))


def aklt_coherence_analytic(p: AkltParams, which: str = "full") -> float:
    """Closed-form coherence of rho(1, r).

    which="full": 2(2 + sqrt(2)) |g / L1^r| with the complete Gell-Mann
    product basis (Schatten-1).  which="truncated": sqrt(2) |(g + |g|) / L1^r|
    with the collective-spin estimator, which vanishes for g <= 0 where the
    XY-like correlators are zero.
    """
    l1 = 1.0 + 2.0 * abs(p.g)
    if which == "full":
        return _FULL_PREFACTOR * abs(p.g) / l1**p.r
    if which == "truncated":
        return sqrt(2.0) * (p.g + abs(p.g)) / l1**p.r
    raise ValueError(f"which must be 'full' or 'truncated', got {which!r}")


_BASIS_TAGS = ("prod(gellmann:3,gellmann:3)", "prod(spin:2,spin:2)")


def aklt_coherence_numeric(p: AkltParams, basis_tag: str = _BASIS_TAGS[0],
                           norm: str | None = None,
                           approximate: bool = False) -> CoherenceReport:
    """Full coherence report of rho(1, r) with the Gell-Mann or collective-
    spin product basis."""
    if basis_tag not in _BASIS_TAGS:
        raise ValueError(f"basis_tag must be one of {_BASIS_TAGS}, got {basis_tag!r}")
    rho = aklt_rdm(p)
    if basis_tag == _BASIS_TAGS[0]:
        factor = gell_mann_basis(3)
    else:
        factor = spin_truncated_basis(2)
    return report(rho, factor, factor, norm=norm, approximate=approximate)
