"""Parameter tuples and closed-form exponent algebra for the radial p-q-Laplacian system.

The Dirichlet system on a ball of radius R,

    -div(|grad u|^(p-2) grad u) = v^delta,
    -div(|grad v|^(q-2) grad v) = u^mu,      u = v = 0 on the boundary,

is superhomogeneous when d = delta*mu - (p-1)(q-1) > 0.  In that regime the
decay exponents alpha, beta and the energy weights k1, k2 are closed-form
functions of (N, p, q, delta, mu); everything downstream (classification,
shooting rescale, energy functionals) consumes them through this module.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class ProblemParams:
    """The tuple (N, p, q, delta, mu) plus optional ball radius R.

    Stored exactly as given; orientation normalization (p <= q) is an explicit
    operation, never implicit.
    """

    N: int
    p: float
    q: float
    delta: float
    mu: float
    R: float | None = None

    def __post_init__(self) -> None:
        if self.N != int(self.N):
            raise ValueError(f"dimension N must be an integer, got {self.N}")
        object.__setattr__(self, "N", int(self.N))
        if self.N < 2:
            raise ValueError(f"dimension N must be >= 2, got {self.N}")
        if not self.p > 1:
            raise ValueError(f"exponent p must be > 1, got {self.p}")
        if not self.q > 1:
            raise ValueError(f"exponent q must be > 1, got {self.q}")
        if not self.delta > 0:
            raise ValueError(f"exponent delta must be > 0, got {self.delta}")
        if not self.mu > 0:
            raise ValueError(f"exponent mu must be > 0, got {self.mu}")
        if self.R is not None and not self.R > 0:
            raise ValueError(f"ball radius R must be > 0, got {self.R}")

    def with_radius(self, R: float) -> "ProblemParams":
        return replace(self, R=R)


@dataclass(frozen=True)
class DerivedExponents:
    """Closed-form exponents derived from a superhomogeneous parameter tuple.

    k1 / k2 are None when (p, q) falls outside the admissible windows of the
    corresponding energy weight (see compute_k1 / compute_k2).
    """

    d: float
    alpha: float
    beta: float
    k1: float | None
    k2: float | None
    m_under: float
    m_over: float


def compute_d(params: ProblemParams) -> float:
    """Superhomogeneity gap d = delta*mu - (p-1)(q-1); sign unconstrained."""
    return params.delta * params.mu - (params.p - 1.0) * (params.q - 1.0)


def compute_alpha_beta(params: ProblemParams) -> tuple[float, float]:
    """Decay exponents (alpha, beta) = ([p(q-1)+delta*q]/d, [q(p-1)+mu*p]/d).

    Requires d > 0; raises otherwise.
    """
    d = compute_d(params)
    if d <= 0:
        raise ValueError(
            f"not superhomogeneous: d = {d} <= 0 for "
            f"(p={params.p}, q={params.q}, delta={params.delta}, mu={params.mu})"
        )
    alpha = (params.p * (params.q - 1.0) + params.delta * params.q) / d
    beta = (params.q * (params.p - 1.0) + params.mu * params.p) / d
    return alpha, beta


def verify_exponent_identities(params: ProblemParams, tol: float = 1e-12) -> bool:
    """Check 1 - delta*beta = -(alpha+1)(p-1) and 1 - mu*alpha = -(beta+1)(q-1).

    Both identities must hold within `tol` relative to max(1, |lhs|, |rhs|).
    They are what makes the sigma-rescaling of solutions exact.
    """
    alpha, beta = compute_alpha_beta(params)
    lhs1 = 1.0 - params.delta * beta
    rhs1 = -(alpha + 1.0) * (params.p - 1.0)
    lhs2 = 1.0 - params.mu * alpha
    rhs2 = -(beta + 1.0) * (params.q - 1.0)
    ok1 = abs(lhs1 - rhs1) <= tol * max(1.0, abs(lhs1), abs(rhs1))
    ok2 = abs(lhs2 - rhs2) <= tol * max(1.0, abs(lhs2), abs(rhs2))
    return ok1 and ok2


def _require_normalized(params: ProblemParams) -> None:
    if params.p > params.q:
        raise ValueError(
            f"orientation not normalized: p={params.p} > q={params.q}; "
            "call normalize_orientation first"
        )


def in_k1_range(params: ProblemParams) -> bool:
    """Admissible window for k1: 2N/(N+1) <= p <= q <= 2 or 2 <= p <= q < N."""
    N, p, q = params.N, params.p, params.q
    if p > q:
        return False
    subquadratic = 2.0 * N / (N + 1.0) <= p and q <= 2.0
    superquadratic = 2.0 <= p and q < N
    return subquadratic or superquadratic


def in_k2_range(params: ProblemParams) -> bool:
    """Admissible window for k2: N/(N-1) < p <= q <= 2 or 2 <= p <= q < N."""
    N, p, q = params.N, params.p, params.q
    if p > q:
        return False
    subquadratic = N / (N - 1.0) < p and q <= 2.0
    superquadratic = 2.0 <= p and q < N
    return subquadratic or superquadratic


def compute_k1(params: ProblemParams) -> float:
    """Weight exponent of the half-line energy functional.

    k1 = p + (N-p)(p-2)/(p-1)  when 2N/(N+1) <= p <= q <= 2,
    k1 = q/(q-1)               when 2 <= p <= q < N.

    Requires p <= q.  Comparisons are exact; boundary ties follow the written
    inequalities (both branches agree at p = q = 2).
    """
    _require_normalized(params)
    N, p, q = params.N, params.p, params.q
    if 2.0 * N / (N + 1.0) <= p and q <= 2.0:
        return p + (N - p) * (p - 2.0) / (p - 1.0)
    if 2.0 <= p and q < N:
        return q / (q - 1.0)
    raise ValueError(
        f"(p={p}, q={q}, N={N}) outside both admissible windows for k1"
    )


def compute_k2(params: ProblemParams) -> float:
    """Weight exponent of the finite-ball energy functional.

    k2 = q + (N-q)(q-2)/(q-1)  when 2 <= p <= q < N,
    k2 = p/(p-1)               when N/(N-1) < p <= q <= 2.

    Requires p <= q.
    """
    _require_normalized(params)
    N, p, q = params.N, params.p, params.q
    if 2.0 <= p and q < N:
        return q + (N - q) * (q - 2.0) / (q - 1.0)
    if N / (N - 1.0) < p and q <= 2.0:
        return p / (p - 1.0)
    raise ValueError(
        f"(p={p}, q={q}, N={N}) outside both admissible windows for k2"
    )


def normalize_orientation(params: ProblemParams) -> tuple[ProblemParams, bool]:
    """Return an equivalent tuple with p <= q, plus a flag when (u, v) swapped.

    The system is symmetric under the simultaneous exchange
    (u, p, delta) <-> (v, q, mu); callers use the flag to relabel components
    in their outputs.  Applying the operation twice returns the original.
    """
    if params.p <= params.q:
        return params, False
    swapped = replace(
        params, p=params.q, q=params.p, delta=params.mu, mu=params.delta
    )
    return swapped, True


def derive(params: ProblemParams) -> DerivedExponents:
    """Bundle all derived exponents; requires superhomogeneity (d > 0)."""
    d = compute_d(params)
    alpha, beta = compute_alpha_beta(params)
    normalized, _ = normalize_orientation(params)
    k1 = compute_k1(normalized) if in_k1_range(normalized) else None
    k2 = compute_k2(normalized) if in_k2_range(normalized) else None
    return DerivedExponents(
        d=d,
        alpha=alpha,
        beta=beta,
        k1=k1,
        k2=k2,
        m_under=min(params.p, params.q),
        m_over=max(params.p, params.q),
    )
