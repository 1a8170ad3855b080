"""Numerical toolkit for radial p-q-Laplacian Dirichlet systems on a ball.

Classifies parameter tuples against every known existence/nonexistence
condition, computes regular radial solutions by shooting, verifies the
energy identities and the fixed-point property of the associated integral
operator along computed solutions, and emits region-figure data.
"""

from .params import (
    DerivedExponents,
    ProblemParams,
    compute_alpha_beta,
    compute_d,
    compute_k1,
    compute_k2,
    derive,
    normalize_orientation,
    verify_exponent_identities,
)
from .classifier import (
    Classification,
    Condition,
    ConditionResult,
    Verdict,
    check_H1,
    check_cmm,
    check_new_existence_subquadratic,
    check_new_existence_superquadratic,
    check_nonexistence,
    check_scalar_optimal,
    check_trivial_dimension,
    classify,
    m_window,
    region_boundaries,
)
from .shooting import (
    DirichletSolution,
    GroundStateProbe,
    Outcome,
    OutcomeKind,
    State,
    Trajectory,
    ZeroEvent,
    find_brackets,
    ground_state_probe,
    integral_form_residual,
    integrate_to_first_zero,
    phi,
    phi_inv,
    rescale_solution,
    rescale_trajectory,
    series_start,
    shoot_scan,
    solve_dirichlet,
    truncate_positive,
)
from .integral_operator import (
    GridFunctionPair,
    PicardResult,
    apply_T,
    pair_from_trajectory,
    picard_iterate,
    residual,
)
from .energy import (
    EnergyReport,
    QuotientReport,
    e1_evaluate,
    e1_prime_analytic,
    e2_evaluate,
    e2_prime_analytic,
    g_evaluate,
    quotient_monotonicity_check,
)

__version__ = "0.1.0"
