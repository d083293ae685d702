"""cohkit: quantum coherence from measurement expectation values.

Quantifies coherence directly from expectation values of an orthonormal
observable set, decomposes it into local and globally correlated parts,
bounds it under operator truncation, and ships the randomized harnesses
that verify the coherence axioms.
"""

from .aklt import AkltParams, aklt_coherence_analytic, aklt_coherence_numeric, aklt_rdm
from .channels import (
    CampaignRow,
    IncoherentKraus,
    KrausChannel,
    ScanResult,
    apply_channel,
    c2b_campaign,
    delta_convexity_counterexample,
    frobenius_bound_scan,
    random_density,
    random_incoherent_channel,
    truncation_violation_scan,
    verify_c2b,
)
from .coherence import (
    CoherenceReport,
    ExpectationVector,
    coherence_from_values,
    coherence_local,
    coherence_schatten1,
    coherence_total,
    covariance,
    dephased_values_from_probabilities,
    global_correlation,
    global_correlation_from_values,
    omega_matrix,
    report,
    truncated_coherence,
)
from .dynamics import DickeSystem, Trajectory, build_dicke, evolve_squeezing, first_peak_time, lindblad_rhs
from .matcore import (
    DensityMatrix,
    dephase,
    frobenius,
    herm_eigvals,
    partial_trace,
    product_of_reductions,
    schatten1,
    tensor,
)
from .opbasis import (
    ObservableBasis,
    collective_spin_ops,
    expansion_coeffs,
    gell_mann_basis,
    parse_basis,
    pauli_basis,
    product_basis,
    spin_truncated_basis,
    standard_basis,
)

__version__ = "0.1.0"
