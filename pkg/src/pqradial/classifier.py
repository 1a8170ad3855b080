"""Existence/nonexistence classification of parameter tuples.

Every known condition is evaluated with an explicit margin (positive means
the condition's inequality holds strictly), and a single verdict is derived
by precedence: conclusive statements (the scalar iff-case and the
nonexistence branches) outrank sufficient-only existence conditions, and the
most specific existence result wins.  All condition results are attached to
the verdict regardless of which one fires.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .params import ProblemParams, compute_alpha_beta, compute_d


class Condition(str, Enum):
    SUPERHOMOGENEOUS = "superhomogeneous"
    TRIVIAL_DIMENSION = "trivial_dimension"
    SCALAR_OPTIMAL = "scalar_optimal"
    CMM = "cmm"
    NEW_EXISTENCE_SUBQUADRATIC = "new_existence_subquadratic"
    NEW_EXISTENCE_SUPERQUADRATIC = "new_existence_superquadratic"
    NONEXISTENCE_SUPERQUADRATIC = "nonexistence_superquadratic"
    NONEXISTENCE_SUBQUADRATIC = "nonexistence_subquadratic"


class Verdict(str, Enum):
    NOT_SUPERHOMOGENEOUS = "NotSuperhomogeneous"
    EXISTENCE_TRIVIAL_DIMENSION = "ExistenceTrivialDimension"
    EXISTENCE_SCALAR_OPTIMAL = "ExistenceScalarOptimal"
    EXISTENCE_CMM = "ExistenceCMM"
    EXISTENCE_NEW_SUBQUADRATIC = "ExistenceNewSubquadratic"
    EXISTENCE_NEW_SUPERQUADRATIC = "ExistenceNewSuperquadratic"
    NONEXISTENCE_SUPERQUADRATIC = "NonexistenceSuperquadratic"
    NONEXISTENCE_SUBQUADRATIC = "NonexistenceSubquadratic"
    UNKNOWN = "Unknown"


EXISTENCE_VERDICTS = frozenset(
    {
        Verdict.EXISTENCE_TRIVIAL_DIMENSION,
        Verdict.EXISTENCE_SCALAR_OPTIMAL,
        Verdict.EXISTENCE_CMM,
        Verdict.EXISTENCE_NEW_SUBQUADRATIC,
        Verdict.EXISTENCE_NEW_SUPERQUADRATIC,
    }
)
NONEXISTENCE_VERDICTS = frozenset(
    {Verdict.NONEXISTENCE_SUPERQUADRATIC, Verdict.NONEXISTENCE_SUBQUADRATIC}
)


@dataclass
class ConditionResult:
    """Outcome of one condition check.

    inequality_margin is oriented so that positive means strictly satisfied;
    it is None when the quantity is not computable (e.g. decay exponents at
    d <= 0).  `satisfied` implies `hypotheses_hold`.
    """

    condition_id: Condition
    hypotheses_hold: bool
    inequality_margin: float | None
    satisfied: bool


@dataclass
class Classification:
    verdict: Verdict
    details: list[ConditionResult]

    def result(self, condition_id: Condition) -> ConditionResult:
        for res in self.details:
            if res.condition_id == condition_id:
                return res
        raise KeyError(condition_id)


def _sum_reciprocals(params: ProblemParams) -> float:
    return 1.0 / (params.delta + 1.0) + 1.0 / (params.mu + 1.0)


def _rhs_low(N: float, m: float) -> float:
    """(N - m) / (N (m - 1)): right side of the min-branch existence and the
    max-branch nonexistence inequalities."""
    return (N - m) / (N * (m - 1.0))


def _rhs_high(N: float, m: float) -> float:
    """(N (m - 1) - m) / (N (m - 1)): right side of the max-branch existence
    and the min-branch nonexistence inequalities."""
    return (N * (m - 1.0) - m) / (N * (m - 1.0))


def check_H1(params: ProblemParams) -> ConditionResult:
    """Superhomogeneity d > 0 (strict); margin = d."""
    d = compute_d(params)
    return ConditionResult(Condition.SUPERHOMOGENEOUS, True, d, d > 0.0)


def check_trivial_dimension(params: ProblemParams) -> ConditionResult:
    """Existence whenever max(p, q) >= N (non-strict); margin = max(p,q) - N."""
    d = compute_d(params)
    margin = max(params.p, params.q) - params.N
    hyp = d > 0.0
    return ConditionResult(Condition.TRIVIAL_DIMENSION, hyp, margin, hyp and margin >= 0.0)


def check_cmm(params: ProblemParams) -> ConditionResult:
    """A-priori-estimate existence condition:

        max(alpha - (N-p)/(p-1), beta - (N-q)/(q-1)) >= 0  (non-strict).

    Hypotheses: d > 0 and max(p, q) < N.
    """
    d = compute_d(params)
    hyp = d > 0.0 and max(params.p, params.q) < params.N
    if d <= 0.0:
        return ConditionResult(Condition.CMM, False, None, False)
    alpha, beta = compute_alpha_beta(params)
    margin = max(
        alpha - (params.N - params.p) / (params.p - 1.0),
        beta - (params.N - params.q) / (params.q - 1.0),
    )
    return ConditionResult(Condition.CMM, hyp, margin, hyp and margin >= 0.0)


def check_scalar_optimal(params: ProblemParams) -> ConditionResult:
    """Sharp scalar criterion for p = q = m, delta = mu, m < N:

        existence  iff  1/(delta+1) > (N-m)/(N m)   (strict).

    Exact floating-point equality gates the scalar path.  Uniquely among the
    checks, hypotheses_hold with satisfied=False is conclusive nonexistence.
    """
    d = compute_d(params)
    m = params.p
    scalar_shape = params.p == params.q and params.delta == params.mu and m < params.N
    hyp = d > 0.0 and scalar_shape
    margin = None
    if scalar_shape:
        margin = 1.0 / (params.delta + 1.0) - (params.N - m) / (params.N * m)
    return ConditionResult(
        Condition.SCALAR_OPTIMAL, hyp, margin, hyp and margin is not None and margin > 0.0
    )


def check_new_existence_subquadratic(params: ProblemParams) -> ConditionResult:
    """Existence for 2N/(N+1) < p, q <= 2 when

        1/(delta+1) + 1/(mu+1) > (N - m_under) / (N (m_under - 1))  (strict).
    """
    N, p, q = params.N, params.p, params.q
    lo = 2.0 * N / (N + 1.0)
    hyp = compute_d(params) > 0.0 and lo < p <= 2.0 and lo < q <= 2.0
    margin = _sum_reciprocals(params) - _rhs_low(N, min(p, q))
    return ConditionResult(
        Condition.NEW_EXISTENCE_SUBQUADRATIC, hyp, margin, hyp and margin > 0.0
    )


def check_new_existence_superquadratic(params: ProblemParams) -> ConditionResult:
    """Existence for 2 <= p, q < N when

        1/(delta+1) + 1/(mu+1) > (N (m_over - 1) - m_over) / (N (m_over - 1)).
    """
    N, p, q = params.N, params.p, params.q
    hyp = compute_d(params) > 0.0 and 2.0 <= p < N and 2.0 <= q < N
    margin = _sum_reciprocals(params) - _rhs_high(N, max(p, q))
    return ConditionResult(
        Condition.NEW_EXISTENCE_SUPERQUADRATIC, hyp, margin, hyp and margin > 0.0
    )


def check_nonexistence(params: ProblemParams) -> tuple[ConditionResult, ConditionResult]:
    """Both nonexistence branches (no solutions, regular or not), for N > 2.

    Superquadratic: 2 <= p, q < N and sum <= (N - m_over)/(N (m_over - 1)).
    Subquadratic:  N/(N-1) < p, q <= 2 and
                   sum <= (N (m_under - 1) - m_under)/(N (m_under - 1)).

    Both inequalities are non-strict; margins are oriented positive-when-
    satisfied (right side minus left side).
    """
    N, p, q = params.N, params.p, params.q
    d_pos = compute_d(params) > 0.0
    s = _sum_reciprocals(params)

    hyp_super = d_pos and N > 2 and 2.0 <= p < N and 2.0 <= q < N
    margin_super = _rhs_low(N, max(p, q)) - s
    res_super = ConditionResult(
        Condition.NONEXISTENCE_SUPERQUADRATIC,
        hyp_super,
        margin_super,
        hyp_super and margin_super >= 0.0,
    )

    lo = N / (N - 1.0)
    hyp_sub = d_pos and N > 2 and lo < p <= 2.0 and lo < q <= 2.0
    margin_sub = _rhs_high(N, min(p, q)) - s
    res_sub = ConditionResult(
        Condition.NONEXISTENCE_SUBQUADRATIC,
        hyp_sub,
        margin_sub,
        hyp_sub and margin_sub >= 0.0,
    )
    return res_super, res_sub


def classify(params: ProblemParams) -> Classification:
    """Evaluate every condition and derive the verdict by precedence.

    Raises RuntimeError if an existence condition and a nonexistence
    condition are simultaneously satisfied; that would be a defect, not a
    property of any valid parameter tuple.
    """
    h1 = check_H1(params)
    trivial = check_trivial_dimension(params)
    scalar = check_scalar_optimal(params)
    cmm = check_cmm(params)
    new_sub = check_new_existence_subquadratic(params)
    new_super = check_new_existence_superquadratic(params)
    ne_super, ne_sub = check_nonexistence(params)
    details = [h1, trivial, scalar, cmm, new_sub, new_super, ne_super, ne_sub]

    # Conclusive negative of the scalar iff-condition counts as nonexistence.
    scalar_nonexistence = scalar.hypotheses_hold and not scalar.satisfied
    existence_fired = any(
        r.satisfied for r in (trivial, scalar, cmm, new_sub, new_super)
    )
    nonexistence_fired = ne_super.satisfied or ne_sub.satisfied or scalar_nonexistence
    if existence_fired and nonexistence_fired:
        raise RuntimeError(
            f"inconsistent classification for {params}: existence and "
            "nonexistence conditions simultaneously satisfied"
        )

    if not h1.satisfied:
        verdict = Verdict.NOT_SUPERHOMOGENEOUS
    elif trivial.satisfied:
        verdict = Verdict.EXISTENCE_TRIVIAL_DIMENSION
    elif scalar.satisfied:
        verdict = Verdict.EXISTENCE_SCALAR_OPTIMAL
    elif scalar_nonexistence:
        # m exactly 2 is reported on the superquadratic side.
        if params.p >= 2.0:
            verdict = Verdict.NONEXISTENCE_SUPERQUADRATIC
        else:
            verdict = Verdict.NONEXISTENCE_SUBQUADRATIC
    elif ne_super.satisfied:
        verdict = Verdict.NONEXISTENCE_SUPERQUADRATIC
    elif ne_sub.satisfied:
        verdict = Verdict.NONEXISTENCE_SUBQUADRATIC
    elif cmm.satisfied:
        verdict = Verdict.EXISTENCE_CMM
    elif new_sub.satisfied:
        verdict = Verdict.EXISTENCE_NEW_SUBQUADRATIC
    elif new_super.satisfied:
        verdict = Verdict.EXISTENCE_NEW_SUPERQUADRATIC
    else:
        verdict = Verdict.UNKNOWN
    return Classification(verdict, details)


def m_window(N: int) -> tuple[float, float]:
    """Range of m = p = q around 2 where the new existence regions are nonempty.

    Returns (2N/(N+1), (3N + 1 + sqrt((N-1)(N+7))) * N / (2 N^2 + 2)); the
    lower bound gates the subquadratic branch, the upper the superquadratic.
    """
    if N < 2 or N != int(N):
        raise ValueError(f"N must be an integer >= 2, got {N}")
    lower = 2.0 * N / (N + 1.0)
    upper = (3.0 * N + 1.0 + math.sqrt((N - 1.0) * (N + 7.0))) * N / (2.0 * N * N + 2.0)
    return lower, upper


@dataclass
class RegionRow:
    """Boundary deltas at one mu: equality in the new-existence condition, in
    the nonexistence condition, and in the a-priori-estimate condition.
    None marks 'no positive solution in range' for that column."""

    mu: float
    delta_existence_new: float | None
    delta_nonexistence: float | None
    delta_cmm: float | None


def _delta_from_sum(target: float, mu: float) -> float | None:
    """Solve 1/(delta+1) + 1/(mu+1) = target for delta > 0, if possible."""
    y = target - 1.0 / (mu + 1.0)
    if y <= 0.0 or y >= 1.0:
        return None
    return 1.0 / y - 1.0


def _cmm_margin_at(N: int, m: float, delta: float, mu: float) -> float:
    """CMM margin as a function of delta; +inf below the superhomogeneity
    boundary so the bisection sees a sign change iff a root exists."""
    d = delta * mu - (m - 1.0) ** 2
    if d <= 0.0:
        return math.inf
    alpha = (m * (m - 1.0) + delta * m) / d
    beta = (m * (m - 1.0) + mu * m) / d
    c = (N - m) / (m - 1.0)
    return max(alpha - c, beta - c)


def _solve_cmm_delta(N: int, m: float, mu: float) -> float | None:
    """Equality in the a-priori-estimate condition, solved for delta by
    bisection over (1e-6, 1e3) with 80 iterations; margin is strictly
    decreasing in delta."""
    lo, hi = 1e-6, 1e3
    f_lo = _cmm_margin_at(N, m, lo, mu)
    f_hi = _cmm_margin_at(N, m, hi, mu)
    if not (f_lo > 0.0 >= f_hi):
        return None
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if _cmm_margin_at(N, m, mid, mu) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def region_boundaries(N: int, m: float, mu_grid) -> list[RegionRow]:
    """Boundary curves of the (delta, mu) regions at p = q = m.

    For each mu in the grid, the deltas solving equality in the applicable
    new-existence inequality (min-branch for m <= 2, max-branch otherwise),
    in the applicable nonexistence inequality, and in the a-priori-estimate
    condition.  Points with no positive delta solution (or d <= 0 at the
    solution) are marked None; no grid value is a global failure.
    """
    if m <= 1.0:
        raise ValueError(f"m must be > 1, got {m}")
    if any(mu <= 0.0 for mu in mu_grid):
        raise ValueError("mu grid values must be positive")

    if m <= 2.0:
        exist_rhs = _rhs_low(N, m)
        exist_ok = 2.0 * N / (N + 1.0) < m
        nonex_rhs = _rhs_high(N, m)
        nonex_ok = N > 2 and N / (N - 1.0) < m
    else:
        exist_rhs = _rhs_high(N, m)
        exist_ok = m < N
        nonex_rhs = _rhs_low(N, m)
        nonex_ok = N > 2 and m < N

    rows = []
    for mu in mu_grid:
        d_exist = _delta_from_sum(exist_rhs, mu) if exist_ok else None
        d_nonex = _delta_from_sum(nonex_rhs, mu) if nonex_ok else None
        d_cmm = _solve_cmm_delta(N, m, mu) if m < N else None
        # Boundary points only make sense inside the superhomogeneous cone.
        gap = (m - 1.0) ** 2
        if d_exist is not None and d_exist * mu <= gap:
            d_exist = None
        if d_nonex is not None and d_nonex * mu <= gap:
            d_nonex = None
        rows.append(RegionRow(mu, d_exist, d_nonex, d_cmm))
    return rows
