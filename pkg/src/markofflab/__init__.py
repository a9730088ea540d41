"""Exact-arithmetic laboratory for Markoff extremal numbers.

Builds the symmetric matrix sequence exactly, verifies its identity catalog,
audits every asymptotic estimate with explicit normalized-error constants,
and reproduces the associated numerical experiments at desk scale.
"""

from .errors import MarkoffLabError
from .matseq import (
    IntPoly,
    MarkoffSequence,
    SeedPair,
    SymMat2,
    canonical_seed,
    canonical_sequence,
    derived_scalars,
    extend_sequence,
    gcd_content_check,
    q_polynomial,
    q_three_term,
    read_cache,
    seed_search,
    verify_exact_identity,
    write_cache,
)
from .realfield import (
    Enclosure,
    FracResult,
    PrecisionPolicy,
    continued_fraction,
    eval_int_poly,
    frac_nearest,
    golden_ratio,
    refine_root,
    xi_enclosure,
)
from .auditors import AuditReport, ESTIMATE_IDS, audit_all, audit_estimate
from .experiments import (
    ConvergentTable,
    Deg6Record,
    DeltaSet,
    MjResult,
    ScanReport,
    brute_scan,
    deg6_pipeline,
    delta_convergent_table,
    delta_points,
    lagrange_scan,
    mj_search,
)

__version__ = "0.1.0"
