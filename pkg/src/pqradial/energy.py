"""Pohozaev-type energy functionals along computed trajectories.

Two weighted energies drive the existence/nonexistence arguments: one with
integrals over [r, infinity) (weight k1, evaluated on zero-free trajectories
with the truncated tails estimated from the power-law decay), and one with
integrals over [r, R] (weight k2, evaluated on Dirichlet solutions).  Writing
P = |u'|^(p-1) and Q = |v'|^(q-1), both have the shape

    E(r) = r^(N+k-2) P Q
         - (N/(delta+1)) r^(N-1) P * int_r^X s^(k-2) Q ds
         - (N/(mu+1))    r^(N-1) Q * int_r^X s^(k-2) P ds
         + r^N int_r^X s^(k-2) Q v^delta ds
         + r^N int_r^X s^(k-2) P u^mu ds,

with the analytic derivative

    E'(r) = (k - N + N/(delta+1) + N/(mu+1)) r^(N+k-3) P Q
          - (N/(delta+1)) r^(N-1) v^delta int_r^X s^(k-2) Q ds
          + N r^(N-1) int_r^X s^(k-2) Q v^delta ds
          - (N/(mu+1)) r^(N-1) u^mu int_r^X s^(k-2) P ds
          + N r^(N-1) int_r^X s^(k-2) P u^mu ds.

The module's core check is that this analytic derivative matches central
finite differences of the quadrature-evaluated energy.  The auxiliary
functions

    G(m, e, w)(r) = N int_r^X s^(k-2) |w'|^(m-1) w^e ds
                  - (N/(e+1)) w(r)^e int_r^X s^(k-2) |w'|^(m-1) ds

carry the sign arguments; their signs along trajectories are reported, never
forced.  All formulas assume p <= q; inputs are normalized through the
parameter swap and reports are relabeled back.

Fluxes make the integrands exact node data: |u'|^(p-1) = -flux_u / r^(N-1),
so no powers of interpolated derivatives are ever taken.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline

from ._quadtools import CumulativeIntegral
from .params import (
    compute_alpha_beta,
    compute_k1,
    compute_k2,
    normalize_orientation,
)
from .shooting import DirichletSolution, OutcomeKind, Trajectory

# Central-difference step relative to the domain length; the step is halved
# once and Richardson-extrapolated when the two estimates disagree by > 10%.
_FD_REL_STEP = 1e-5
# Sign checks absorb quadrature noise at this fraction of the local scale.
SIGN_TOL = 1e-8
# Tail certification threshold relative to the largest sampled |E|.
TAIL_CERTIFY_FRACTION = 1e-6


@dataclass
class EnergySample:
    r: float
    E: float
    E_prime_analytic: float
    E_prime_fd: float | None


@dataclass
class GSample:
    r: float
    G_u: float
    G_v: float


@dataclass
class SignSummary:
    """Counts of derivative samples beyond +/- SIGN_TOL * local scale."""

    positive: int
    negative: int
    within_tol: int


@dataclass
class EnergyReport:
    kind: str  # "E1" or "E2"
    k_value: float
    samples: list[EnergySample]
    g_samples: list[GSample]
    endpoint_values: tuple[float, float]
    tail_error_estimate: float | None
    sign_summary: SignSummary
    max_derivative_mismatch: float
    certified: bool | None


class _EnergyEvaluator:
    """Quadrature engine for one trajectory and one energy kind.

    Works in the normalized orientation (p <= q); component 1 is the one
    governed by the p-exponent there.  `swapped` records whether component 1
    is the original v.
    """

    def __init__(self, traj: Trajectory, kind: str):
        if kind not in ("E1", "E2"):
            raise ValueError(kind)
        self.kind = kind
        normalized, swapped = normalize_orientation(traj.params)
        self.swapped = swapped
        self.params = normalized
        N = normalized.N
        self.N = N
        self.k = compute_k1(normalized) if kind == "E1" else compute_k2(normalized)
        self.delta = normalized.delta
        self.mu = normalized.mu
        self.p = normalized.p
        self.q = normalized.q

        r = traj.r
        w1 = traj.u if not swapped else traj.v
        w2 = traj.v if not swapped else traj.u
        f1 = traj.flux_u if not swapped else traj.flux_v
        f2 = traj.flux_v if not swapped else traj.flux_u
        self.r_lo = float(r[0])
        self.X = float(r[-1])
        self._w1 = CubicSpline(r, w1)
        self._w2 = CubicSpline(r, w2)
        self._f1 = CubicSpline(r, f1)
        self._f2 = CubicSpline(r, f2)

        k = self.k

        def a1_integrand(s):
            s = np.asarray(s)
            return np.clip(-self._f1(s), 0.0, None) * s ** (k - 1 - N)

        def a2_integrand(s):
            s = np.asarray(s)
            return np.clip(-self._f2(s), 0.0, None) * s ** (k - 1 - N)

        def b1_integrand(s):
            s = np.asarray(s)
            return a1_integrand(s) * np.clip(self._w1(s), 0.0, None) ** self.mu

        def b2_integrand(s):
            s = np.asarray(s)
            return a2_integrand(s) * np.clip(self._w2(s), 0.0, None) ** self.delta

        self._A1 = CumulativeIntegral(a1_integrand, r, direction="from-right")
        self._A2 = CumulativeIntegral(a2_integrand, r, direction="from-right")
        self._B1 = CumulativeIntegral(b1_integrand, r, direction="from-right")
        self._B2 = CumulativeIntegral(b2_integrand, r, direction="from-right")

        self.tails = (0.0, 0.0, 0.0, 0.0)
        if kind == "E1":
            self.tails = self._fit_tails(r, w1, w2, f1, f2)

    # -- tails (E1 only) ---------------------------------------------------

    def _fit_tails(self, r, w1, w2, f1, f2):
        """Constant tail estimates of the four [X, infinity) integrals.

        Decay constants are fitted on the final decade of the trajectory
        against the predicted power laws |w1'| <= C r^(-alpha-1),
        w1 <= C r^(-alpha) (and the beta analogues), then the tails are the
        closed-form integrals of those power laws.
        """
        alpha, beta = compute_alpha_beta(self.params)
        self.alpha, self.beta = alpha, beta
        sel = r >= self.X / 10.0
        rs = r[sel]
        with np.errstate(invalid="ignore"):
            d1 = np.clip(-f1[sel], 0.0, None) ** (1.0 / (self.p - 1.0)) * rs ** (
                -(self.N - 1.0) / (self.p - 1.0)
            )
            d2 = np.clip(-f2[sel], 0.0, None) ** (1.0 / (self.q - 1.0)) * rs ** (
                -(self.N - 1.0) / (self.q - 1.0)
            )
        c_d1 = float(np.max(d1 * rs ** (alpha + 1.0)))
        c_d2 = float(np.max(d2 * rs ** (beta + 1.0)))
        c_w1 = float(np.max(np.clip(w1[sel], 0.0, None) * rs**alpha))
        c_w2 = float(np.max(np.clip(w2[sel], 0.0, None) * rs**beta))

        e_a1 = (alpha + 1.0) * (self.p - 1.0) + 1.0 - self.k
        e_a2 = (beta + 1.0) * (self.q - 1.0) + 1.0 - self.k
        e_b1 = e_a1 + alpha * self.mu
        e_b2 = e_a2 + beta * self.delta

        def tail(c, e):
            if e <= 0.0:
                return math.inf
            return c * self.X ** (-e) / e

        return (
            tail(c_d1 ** (self.p - 1.0), e_a1),
            tail(c_d2 ** (self.q - 1.0), e_a2),
            tail(c_d1 ** (self.p - 1.0) * c_w1**self.mu, e_b1),
            tail(c_d2 ** (self.q - 1.0) * c_w2**self.delta, e_b2),
        )

    # -- pointwise pieces ----------------------------------------------------

    def _pq(self, r: float) -> tuple[float, float]:
        rn = r ** (self.N - 1)
        P = max(-float(self._f1(r)), 0.0) / rn
        Q = max(-float(self._f2(r)), 0.0) / rn
        return P, Q

    def A1(self, r: float) -> float:
        return self._A1.at_scalar(r) + self.tails[0]

    def A2(self, r: float) -> float:
        return self._A2.at_scalar(r) + self.tails[1]

    def B1(self, r: float) -> float:
        return self._B1.at_scalar(r) + self.tails[2]

    def B2(self, r: float) -> float:
        return self._B2.at_scalar(r) + self.tails[3]

    def energy(self, r: float) -> float:
        N, k = self.N, self.k
        P, Q = self._pq(r)
        return (
            r ** (N + k - 2) * P * Q
            - N / (self.delta + 1.0) * r ** (N - 1) * P * self.A2(r)
            - N / (self.mu + 1.0) * r ** (N - 1) * Q * self.A1(r)
            + r**N * self.B2(r)
            + r**N * self.B1(r)
        )

    def energy_prime_terms(self, r: float) -> tuple[float, ...]:
        N, k = self.N, self.k
        P, Q = self._pq(r)
        w1 = max(float(self._w1(r)), 0.0)
        w2 = max(float(self._w2(r)), 0.0)
        lead = k - N + N / (self.delta + 1.0) + N / (self.mu + 1.0)
        return (
            lead * r ** (N + k - 3) * P * Q,
            -N / (self.delta + 1.0) * r ** (N - 1) * w2**self.delta * self.A2(r),
            N * r ** (N - 1) * self.B2(r),
            -N / (self.mu + 1.0) * r ** (N - 1) * w1**self.mu * self.A1(r),
            N * r ** (N - 1) * self.B1(r),
        )

    def energy_prime(self, r: float) -> float:
        return sum(self.energy_prime_terms(r))

    def energy_prime_with_scale(self, r: float) -> tuple[float, float]:
        terms = self.energy_prime_terms(r)
        return sum(terms), sum(abs(t) for t in terms)

    def g_pair(self, r: float) -> tuple[float, float]:
        """(G for component 1, G for component 2), truncated domain, no tails."""
        N = self.N
        w1 = max(float(self._w1(r)), 0.0)
        w2 = max(float(self._w2(r)), 0.0)
        g1 = N * self._B1.at_scalar(r) - N / (self.mu + 1.0) * w1**self.mu * self._A1.at_scalar(r)
        g2 = N * self._B2.at_scalar(r) - N / (self.delta + 1.0) * w2**self.delta * self._A2.at_scalar(r)
        return g1, g2

    def g_for_component(self, r: float, which: str) -> float:
        g1, g2 = self.g_pair(r)
        if which not in ("u", "v"):
            raise ValueError(which)
        first = (which == "u") != self.swapped
        return g1 if first else g2

    def g_component_terms(self, r: float, which: str) -> tuple[float, float]:
        """The two constituent terms of G for one component (their absolute
        sum is the natural local scale for sign checks)."""
        if which not in ("u", "v"):
            raise ValueError(which)
        N = self.N
        first = (which == "u") != self.swapped
        if first:
            w = max(float(self._w1(r)), 0.0)
            return (
                N * self._B1.at_scalar(r),
                -N / (self.mu + 1.0) * w**self.mu * self._A1.at_scalar(r),
            )
        w = max(float(self._w2(r)), 0.0)
        return (
            N * self._B2.at_scalar(r),
            -N / (self.delta + 1.0) * w**self.delta * self._A2.at_scalar(r),
        )

    def fd_derivative(self, r: float) -> float | None:
        h = _FD_REL_STEP * (self.X - self.r_lo)
        if r - h <= self.r_lo or r + h >= self.X:
            return None
        d1 = (self.energy(r + h) - self.energy(r - h)) / (2.0 * h)
        d2 = (self.energy(r + h / 2.0) - self.energy(r - h / 2.0)) / h
        if abs(d1 - d2) > 0.1 * max(abs(d1), abs(d2), 1e-300):
            return (4.0 * d2 - d1) / 3.0
        return d2

    def tail_error_at(self, r: float) -> float:
        N = self.N
        P, Q = self._pq(r)
        t_a1, t_a2, t_b1, t_b2 = self.tails
        return (
            N / (self.delta + 1.0) * r ** (N - 1) * P * t_a2
            + N / (self.mu + 1.0) * r ** (N - 1) * Q * t_a1
            + r**N * (t_b1 + t_b2)
        )

    def report(self, radii, with_fd: bool = True) -> EnergyReport:
        radii = sorted(float(r) for r in radii)
        for r in radii:
            if not (0.0 < r <= self.X):
                raise ValueError(f"sample radius {r} outside (0, {self.X}]")
        samples = []
        g_samples = []
        mismatch = 0.0
        pos = neg = within = 0
        tail_err = 0.0
        for r in radii:
            e = self.energy(r)
            ea, scale = self.energy_prime_with_scale(r)
            fd = self.fd_derivative(r) if with_fd else None
            if fd is not None:
                mismatch = max(mismatch, abs(ea - fd) / (1.0 + abs(ea)))
            tol = SIGN_TOL * max(1.0, scale)
            if ea > tol:
                pos += 1
            elif ea < -tol:
                neg += 1
            else:
                within += 1
            g1, g2 = self.g_pair(r)
            gu, gv = (g1, g2) if not self.swapped else (g2, g1)
            samples.append(EnergySample(r, e, ea, fd))
            g_samples.append(GSample(r, gu, gv))
            if self.kind == "E1":
                tail_err = max(tail_err, self.tail_error_at(r))
        e_scale = max((abs(s.E) for s in samples), default=0.0)
        certified = None
        tail_estimate = None
        if self.kind == "E1":
            tail_estimate = tail_err
            certified = tail_err <= TAIL_CERTIFY_FRACTION * e_scale
        return EnergyReport(
            kind=self.kind,
            k_value=self.k,
            samples=samples,
            g_samples=g_samples,
            endpoint_values=(samples[0].E, samples[-1].E),
            tail_error_estimate=tail_estimate,
            sign_summary=SignSummary(pos, neg, within),
            max_derivative_mismatch=mismatch,
            certified=certified,
        )


def _as_trajectory(obj) -> Trajectory:
    if isinstance(obj, DirichletSolution):
        return obj.trajectory
    if isinstance(obj, Trajectory):
        return obj
    raise TypeError(f"expected Trajectory or DirichletSolution, got {type(obj)!r}")


def ball_energy_evaluator(sol) -> _EnergyEvaluator:
    """Finite-domain evaluator (weight k2) for a solution on [0, R]."""
    return _EnergyEvaluator(_as_trajectory(sol), "E2")


def halfline_energy_evaluator(traj) -> _EnergyEvaluator:
    """Truncated-infinity evaluator (weight k1) for a zero-free trajectory."""
    traj = _as_trajectory(traj)
    if traj.outcome.kind != OutcomeKind.NO_ZERO:
        raise ValueError(
            f"trajectory crossed zero ({traj.outcome.kind.value}); the "
            "half-line energy needs a positive trajectory"
        )
    return _EnergyEvaluator(traj, "E1")


def e2_evaluate(sol, radii, with_fd: bool = True) -> EnergyReport:
    """Finite-ball energy report at the requested radii in (0, R]."""
    return ball_energy_evaluator(sol).report(radii, with_fd)


def e2_prime_analytic(sol, r: float) -> float:
    """Analytic derivative of the finite-ball energy at one radius."""
    return ball_energy_evaluator(sol).energy_prime(float(r))


def e1_evaluate(traj, radii, with_fd: bool = True, tail_tol: float | None = None) -> EnergyReport:
    """Half-line energy report with truncated tails.

    When tail_tol is given the report must certify (tail_error_estimate at
    most tail_tol), otherwise a RuntimeError flags that r_max is too small
    for the requested accuracy.
    """
    report = halfline_energy_evaluator(traj).report(radii, with_fd)
    if tail_tol is not None and report.tail_error_estimate > tail_tol:
        raise RuntimeError(
            f"tail estimate {report.tail_error_estimate:.3e} exceeds the "
            f"requested tolerance {tail_tol:.3e}; extend the trajectory"
        )
    return report


def e1_prime_analytic(traj, r: float) -> float:
    """Analytic derivative of the half-line energy at one radius."""
    return halfline_energy_evaluator(traj).energy_prime(float(r))


def g_evaluate(obj, which: str, domain: str, radii) -> list[tuple[float, float]]:
    """Auxiliary sign function for one component over [r, X].

    domain "finite" uses the ball weight k2 with X = R; "truncated" uses the
    half-line weight k1 with X = r_max.  The right-endpoint value is 0 by
    construction for every input.
    """
    if domain == "finite":
        ev = _EnergyEvaluator(_as_trajectory(obj), "E2")
    elif domain == "truncated":
        ev = halfline_energy_evaluator(obj)
    else:
        raise ValueError(f"domain must be 'finite' or 'truncated', got {domain!r}")
    return [(float(r), ev.g_for_component(float(r), which)) for r in radii]


@dataclass
class QuotientReport:
    """Monotonicity findings for |u'|^(p-1)/r and |v'|^(q-1)/r on the nodes.

    Violations are reported, never raised: max_increase_* is the largest
    node-to-node increase (0 when monotone nonincreasing within tolerance).
    """

    max_increase_u: float
    max_increase_v: float
    tolerance: float
    ok_u: bool
    ok_v: bool


def quotient_monotonicity_check(obj) -> QuotientReport:
    """Verify that |u'|^(p-1)/r = -flux_u/r^N (and the v analogue) are
    nonincreasing along the trajectory while both components are positive."""
    traj = _as_trajectory(obj)
    pos = (traj.u > 0.0) & (traj.v > 0.0)
    n = int(np.searchsorted(~pos, True)) if (~pos).any() else len(traj.r)
    n = max(n, 2)
    qu = -traj.flux_u[:n] / traj.r[:n] ** traj.params.N
    qv = -traj.flux_v[:n] / traj.r[:n] ** traj.params.N
    tol = SIGN_TOL * max(1.0, float(np.max(qu)), float(np.max(qv)))
    inc_u = float(np.max(np.diff(qu), initial=0.0))
    inc_v = float(np.max(np.diff(qv), initial=0.0))
    return QuotientReport(
        max_increase_u=max(inc_u, 0.0),
        max_increase_v=max(inc_v, 0.0),
        tolerance=tol,
        ok_u=inc_u <= tol,
        ok_v=inc_v <= tol,
    )
