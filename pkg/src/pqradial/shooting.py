"""Shooting solver for the radial Dirichlet problem.

The radial system is integrated as a first-order system in the flux
variables

    flux_u = r^(N-1) |u'|^(p-2) u',      flux_u' = -r^(N-1) v^delta,
    flux_v = r^(N-1) |v'|^(q-2) v',      flux_v' = -r^(N-1) u^mu,

which are regular at the origin, unlike u'' and v''.  Integration starts at
a small r0 > 0 from a leading-order series (the flux limits
flux/r^N -> -amplitude^exponent / N pin the startup), runs until the first
component crosses zero, and the Dirichlet problem is solved by bisection on
the initial amplitude ratio b = v(0) with a0 = u(0) fixed: trajectories
where u crosses first and where v crosses first bracket a simultaneous
crossing, which is the boundary zero.  A power-law rescaling then maps the
solution to any target radius.

Powers of marginally negative values are clamped to zero so the integrator
stays defined just past a zero during event localization; trajectories are
truncated at the localized zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import PchipInterpolator

from ._quadtools import CumulativeIntegral
from .params import ProblemParams, compute_alpha_beta, verify_exponent_identities

DEFAULT_RTOL = 1e-10
DEFAULT_ATOL = 1e-14
DEFAULT_EVENT_TOL = 1e-9
DEFAULT_R_MAX = 1e3
DEFAULT_DENSE_NODES = 1500

# Startup radius: series correction at most this fraction of min(a0, b0),
# floored to keep r0 out of denormal range.
_STARTUP_FRACTION = 1e-8
_STARTUP_FLOOR = 1e-10

# Slack for the monotonicity guards on accepted nodes (relative to scale).
_MONOTONE_SLACK = 1e-9


def phi(m: float, x: float) -> float:
    """|x|^(m-2) x, the nonlinearity of the m-Laplacian; 0 at x = 0."""
    if x == 0.0:
        return 0.0
    return abs(x) ** (m - 2.0) * x


def phi_inv(m: float, s: float) -> float:
    """Inverse of phi: |s|^(1/(m-1)) sign(s)."""
    if s == 0.0:
        return 0.0
    return math.copysign(abs(s) ** (1.0 / (m - 1.0)), s)


class OutcomeKind(str, Enum):
    U_ZERO_FIRST = "UZeroFirst"
    V_ZERO_FIRST = "VZeroFirst"
    SIMULTANEOUS = "Simultaneous"
    NO_ZERO = "NoZeroUpTo"


@dataclass(frozen=True)
class Outcome:
    """Terminal event of an integration: which component vanished first (and
    where), a simultaneous crossing at radius R*, or no zero up to r_max."""

    kind: OutcomeKind
    radius: float


@dataclass(frozen=True)
class State:
    """Solution state at one radius, in flux variables."""

    r: float
    u: float
    v: float
    flux_u: float
    flux_v: float


@dataclass(frozen=True)
class ZeroEvent:
    component: str  # "u" or "v"
    radius: float
    residual: float  # interpolated component value at the localized radius


@dataclass
class Trajectory:
    """A computed radial trajectory on strictly increasing nodes.

    Column arrays all share one length; fluxes are nonpositive and
    nonincreasing while both components stay positive.
    """

    params: ProblemParams
    a0: float
    b0: float
    r: np.ndarray
    u: np.ndarray
    v: np.ndarray
    flux_u: np.ndarray
    flux_v: np.ndarray
    events: list[ZeroEvent]
    outcome: Outcome

    def state(self, i: int) -> State:
        return State(
            float(self.r[i]),
            float(self.u[i]),
            float(self.v[i]),
            float(self.flux_u[i]),
            float(self.flux_v[i]),
        )

    @property
    def first_state(self) -> State:
        return self.state(0)

    @property
    def last_state(self) -> State:
        return self.state(len(self.r) - 1)


@dataclass
class DirichletSolution:
    """Converged boundary-value solution on [0, R].

    b_star is the converged shooting parameter of the normalized problem
    (before rescaling); the trajectory is rescaled so its last node sits at
    the target radius R.
    """

    params: ProblemParams
    a0: float
    b_star: float
    trajectory: Trajectory
    bisection_history: list[tuple[float, OutcomeKind]]
    natural_radius: float  # simultaneous-crossing radius before rescaling

    @property
    def boundary_residual(self) -> float:
        last = self.trajectory.last_state
        return max(abs(last.u), abs(last.v))


def default_start_radius(params: ProblemParams, a0: float, b0: float) -> float:
    """Startup radius such that the series correction stays below
    _STARTUP_FRACTION * min(a0, b0), floored at _STARTUP_FLOOR."""
    if a0 <= 0.0 or b0 <= 0.0:
        raise ValueError(f"initial amplitudes must be positive, got a0={a0}, b0={b0}")
    target = _STARTUP_FRACTION * min(a0, b0)
    cu = (b0**params.delta / params.N) ** (1.0 / (params.p - 1.0)) * (
        params.p - 1.0
    ) / params.p
    cv = (a0**params.mu / params.N) ** (1.0 / (params.q - 1.0)) * (
        params.q - 1.0
    ) / params.q
    r_u = (target / cu) ** ((params.p - 1.0) / params.p)
    r_v = (target / cv) ** ((params.q - 1.0) / params.q)
    return max(min(r_u, r_v), _STARTUP_FLOOR)


def series_start(params: ProblemParams, a0: float, b0: float, r0: float) -> State:
    """Leading-order state at r0 for a regular trajectory with u(0) = a0,
    v(0) = b0, u'(0) = v'(0) = 0.

    Near the origin the fluxes integrate exactly against constant right-hand
    sides, giving flux_u = -r0^N b0^delta / N and
    u = a0 - (b0^delta/N)^(1/(p-1)) ((p-1)/p) r0^(p/(p-1)) (and symmetrically
    for v).  Rejects r0 <= 0 and startups consuming more than 1% of either
    amplitude.
    """
    if a0 <= 0.0 or b0 <= 0.0:
        raise ValueError(f"initial amplitudes must be positive, got a0={a0}, b0={b0}")
    if r0 <= 0.0:
        raise ValueError(f"startup radius must be positive, got {r0}")
    N, p, q, delta, mu = params.N, params.p, params.q, params.delta, params.mu
    corr_u = (b0**delta / N) ** (1.0 / (p - 1.0)) * (p - 1.0) / p * r0 ** (p / (p - 1.0))
    corr_v = (a0**mu / N) ** (1.0 / (q - 1.0)) * (q - 1.0) / q * r0 ** (q / (q - 1.0))
    if corr_u > 0.01 * a0 or corr_v > 0.01 * b0:
        raise ValueError(
            f"startup radius r0={r0} too large: series correction "
            f"({corr_u:.3e}, {corr_v:.3e}) exceeds 1% of the amplitudes"
        )
    return State(
        r=r0,
        u=a0 - corr_u,
        v=b0 - corr_v,
        flux_u=-(r0**N) * b0**delta / N,
        flux_v=-(r0**N) * a0**mu / N,
    )


def _make_rhs(params: ProblemParams):
    N, p, q, delta, mu = params.N, params.p, params.q, params.delta, params.mu
    ep = 1.0 / (p - 1.0)
    eq = 1.0 / (q - 1.0)

    def rhs(r, y):
        u, v, fu, fv = y
        rn = r ** (N - 1)
        su = fu / rn
        sv = fv / rn
        du = -((-su) ** ep) if su < 0.0 else (su**ep if su > 0.0 else 0.0)
        dv = -((-sv) ** eq) if sv < 0.0 else (sv**eq if sv > 0.0 else 0.0)
        dfu = -rn * (v**delta if v > 0.0 else 0.0)
        dfv = -rn * (u**mu if u > 0.0 else 0.0)
        return (du, dv, dfu, dfv)

    return rhs


def _event_u(r, y):
    return y[0]


def _event_v(r, y):
    return y[1]


for _ev in (_event_u, _event_v):
    _ev.terminal = True
    _ev.direction = -1.0


def _check_success(sol, context: str):
    if sol.status < 0:
        raise RuntimeError(f"integration failed during {context}: {sol.message}")
    if not np.all(np.isfinite(sol.y)):
        raise RuntimeError(f"non-finite state during {context}")


def _locate_other_zero(rhs, sol, idx: int, rtol, atol, tol, r_max) -> float | None:
    """Crossing radius of the not-yet-reported component after a terminal stop.

    Two cases: the component already crossed inside the final step (the
    solver reports only one of two coincident terminal events), in which case
    the zero is bracketed on the dense interpolant; or it is still positive,
    in which case a short clamped continuation looks for a crossing within
    the simultaneity window.  Returns None when no nearby crossing exists.
    """
    t_stop = sol.t[-1]
    val_stop = sol.y[idx, -1]
    if val_stop <= 0.0:
        # already crossed within the final step: bracket on the interpolant
        positive = np.flatnonzero(sol.y[idx, :] > 0.0)
        if len(positive) == 0:
            return None
        t_lo = sol.t[positive[-1]]
        from scipy.optimize import brentq

        return float(brentq(lambda t: float(sol.sol(t)[idx]), t_lo, t_stop))
    window = t_stop + 10.0 * tol * max(1.0, t_stop)
    if window <= t_stop or window > r_max * 1.001:
        return None
    other_event = _event_v if idx == 1 else _event_u
    cont = solve_ivp(
        rhs,
        (t_stop, window),
        sol.y[:, -1],
        method="RK45",
        rtol=rtol,
        atol=atol,
        events=(other_event,),
    )
    _check_success(cont, "post-zero continuation")
    if len(cont.t_events[0]):
        return float(cont.t_events[0][0])
    return None


def _validate_nodes(traj: Trajectory) -> None:
    """Monotonicity guards on accepted nodes: while both components are
    positive, u and v are nonincreasing, fluxes are nonpositive and
    nonincreasing.  Violations beyond the slack signal an integrator defect.
    """
    pos = (traj.u > 0.0) & (traj.v > 0.0)
    n = int(np.searchsorted(~pos, True)) if (~pos).any() else len(traj.r)
    if n < 2:
        return
    scale_uv = max(1.0, traj.u[0], traj.v[0])
    slack = _MONOTONE_SLACK * scale_uv
    if np.any(np.diff(traj.u[:n]) > slack) or np.any(np.diff(traj.v[:n]) > slack):
        raise RuntimeError("component increase detected on a positive trajectory")
    scale_f = max(1.0, float(np.max(np.abs(traj.flux_u[:n]))), float(np.max(np.abs(traj.flux_v[:n]))))
    fslack = _MONOTONE_SLACK * scale_f
    if np.any(traj.flux_u[:n] > fslack) or np.any(traj.flux_v[:n] > fslack):
        raise RuntimeError("positive flux detected on a positive trajectory")
    if np.any(np.diff(traj.flux_u[:n]) > fslack) or np.any(np.diff(traj.flux_v[:n]) > fslack):
        raise RuntimeError("flux increase detected on a positive trajectory")


def integrate_to_first_zero(
    params: ProblemParams,
    a0: float,
    b0: float,
    r_max: float = DEFAULT_R_MAX,
    tol: float = DEFAULT_EVENT_TOL,
    rtol: float = DEFAULT_RTOL,
    atol: float = DEFAULT_ATOL,
    densify: bool = True,
    n_dense: int = DEFAULT_DENSE_NODES,
) -> Trajectory:
    """Integrate from the series start until the first component crosses zero.

    Crossings are localized on the solver's continuous interpolant by
    bracketed root-finding.  When only one component has crossed, a short
    clamped continuation looks for the other within 10*tol*max(1, R); the
    outcome is Simultaneous when |R_u - R_v| <= tol * max(1, R_u), with
    R* = (R_u + R_v)/2.  With densify=True the returned nodes come from a
    re-integration whose steps are capped so downstream quadrature sees a
    dense, solver-accurate grid.
    """
    if r_max <= 0.0 or tol <= 0.0:
        raise ValueError("r_max and tol must be positive")
    r0 = default_start_radius(params, a0, b0)
    if r0 >= r_max:
        raise ValueError(f"r_max={r_max} does not exceed the startup radius {r0}")
    start = series_start(params, a0, b0, r0)
    y0 = [start.u, start.v, start.flux_u, start.flux_v]
    rhs = _make_rhs(params)

    sol = solve_ivp(
        rhs,
        (r0, r_max),
        y0,
        method="RK45",
        rtol=rtol,
        atol=atol,
        events=(_event_u, _event_v),
        first_step=min(r0, 1e-3),
        dense_output=True,
    )
    _check_success(sol, "first-zero search")

    r_u = float(sol.t_events[0][0]) if len(sol.t_events[0]) else None
    r_v = float(sol.t_events[1][0]) if len(sol.t_events[1]) else None
    events: list[ZeroEvent] = []

    if r_u is None and r_v is None:
        outcome = Outcome(OutcomeKind.NO_ZERO, r_max)
        r_end = r_max
    else:
        if r_u is None or r_v is None:
            other_idx = 1 if r_v is None else 0
            r_other = _locate_other_zero(
                rhs, sol, other_idx, rtol=rtol, atol=atol, tol=tol, r_max=r_max
            )
            if other_idx == 1:
                r_v = r_other
            else:
                r_u = r_other
        if r_u is not None:
            events.append(ZeroEvent("u", r_u, abs(float(sol.sol(min(r_u, sol.t[-1]))[0]))))
        if r_v is not None:
            events.append(ZeroEvent("v", r_v, abs(float(sol.sol(min(r_v, sol.t[-1]))[1]))))
        if r_u is not None and r_v is not None and abs(r_u - r_v) <= tol * max(1.0, r_u):
            r_star = 0.5 * (r_u + r_v)
            outcome = Outcome(OutcomeKind.SIMULTANEOUS, float(r_star))
            r_end = float(r_star)
        elif r_u is not None and (r_v is None or r_u <= r_v):
            outcome = Outcome(OutcomeKind.U_ZERO_FIRST, float(r_u))
            r_end = float(r_u)
        else:
            outcome = Outcome(OutcomeKind.V_ZERO_FIRST, float(r_v))
            r_end = float(r_v)

    if densify:
        dense = solve_ivp(
            rhs,
            (r0, r_end),
            y0,
            method="RK45",
            rtol=rtol,
            atol=atol,
            max_step=(r_end - r0) / n_dense,
            first_step=min(r0, (r_end - r0) / n_dense),
        )
        _check_success(dense, "dense re-integration")
        r_nodes = dense.t
        y_nodes = dense.y
    else:
        keep = sol.t <= r_end
        r_nodes = sol.t[keep]
        y_nodes = sol.y[:, keep]
        if r_nodes[-1] < r_end:
            # append the localized endpoint state
            y_end = sol.sol(r_end) if sol.sol is not None else sol.y[:, -1]
            r_nodes = np.append(r_nodes, r_end)
            y_nodes = np.column_stack([y_nodes, y_end])

    traj = Trajectory(
        params=params,
        a0=a0,
        b0=b0,
        r=np.asarray(r_nodes, dtype=float),
        u=np.asarray(y_nodes[0], dtype=float),
        v=np.asarray(y_nodes[1], dtype=float),
        flux_u=np.asarray(y_nodes[2], dtype=float),
        flux_v=np.asarray(y_nodes[3], dtype=float),
        events=events,
        outcome=outcome,
    )
    _validate_nodes(traj)
    return traj


def shoot_scan(
    params: ProblemParams,
    a0: float,
    b_lo: float,
    b_hi: float,
    count: int,
    r_max: float = DEFAULT_R_MAX,
    tol: float = DEFAULT_EVENT_TOL,
    rtol: float = DEFAULT_RTOL,
) -> list[tuple[float, Outcome]]:
    """Outcomes on a geometric grid of shooting parameters b = v(0).

    NoZeroUpTo entries are reported, not errors; see find_brackets for the
    polarity-change pairs.
    """
    if not (0.0 < b_lo < b_hi):
        raise ValueError(f"need 0 < b_lo < b_hi, got ({b_lo}, {b_hi})")
    if count < 2:
        raise ValueError(f"need at least 2 scan points, got {count}")
    grid = np.geomspace(b_lo, b_hi, count)
    results = []
    for b in grid:
        traj = integrate_to_first_zero(
            params, a0, float(b), r_max=r_max, tol=tol, rtol=rtol, densify=False
        )
        results.append((float(b), traj.outcome))
    return results


def find_brackets(scan: list[tuple[float, Outcome]]) -> list[tuple[float, float]]:
    """Adjacent scan pairs with opposite first-zero polarity.

    All polarity changes are returned; no monotonicity in b is assumed.
    A run of NoZeroUpTo entries between opposite polarities also yields the
    flanking pair (bisection re-resolves the interior with a larger r_max).
    """
    polar = [
        (b, out.kind)
        for (b, out) in scan
        if out.kind in (OutcomeKind.U_ZERO_FIRST, OutcomeKind.V_ZERO_FIRST)
    ]
    brackets = []
    for (b1, k1), (b2, k2) in zip(polar, polar[1:]):
        if k1 != k2:
            brackets.append((b1, b2))
    return brackets


def _outcome_for_bisection(
    params: ProblemParams,
    a0: float,
    b: float,
    r_max: float,
    tol: float,
    rtol: float,
) -> Outcome:
    """Outcome at one shooting parameter, escalating r_max when the
    trajectory has not crossed yet (crossings move out near the critical b)."""
    local_r_max = r_max
    for _ in range(7):
        traj = integrate_to_first_zero(
            params, a0, b, r_max=local_r_max, tol=tol, rtol=rtol, densify=False
        )
        if traj.outcome.kind != OutcomeKind.NO_ZERO:
            return traj.outcome
        local_r_max *= 4.0
    raise RuntimeError(
        f"no zero up to r = {local_r_max / 4.0} at b = {b}; cannot classify polarity"
    )


def solve_dirichlet(
    params: ProblemParams,
    bracket: tuple[float, float],
    a0: float = 1.0,
    tol: float = 1e-8,
    r_max: float = DEFAULT_R_MAX,
    rtol: float = DEFAULT_RTOL,
    max_iter: int = 200,
    n_dense: int = DEFAULT_DENSE_NODES,
) -> DirichletSolution:
    """Bisect the shooting parameter until both components vanish together,
    then rescale the trajectory to the target radius params.R.

    The bracket endpoints must have opposite first-zero polarity.  Bisection
    is geometric (b stays positive across decades) and runs on outcome
    polarity, not zero-location distance; it stops at a Simultaneous outcome
    within tol.
    """
    if params.R is None:
        raise ValueError("params.R must be set for the Dirichlet problem")
    b1, b2 = bracket
    if not (0.0 < b1 < b2):
        raise ValueError(f"invalid bracket {bracket}: need 0 < b1 < b2")

    history: list[tuple[float, OutcomeKind]] = []
    out1 = _outcome_for_bisection(params, a0, b1, r_max, tol, rtol)
    history.append((b1, out1.kind))
    if out1.kind == OutcomeKind.SIMULTANEOUS:
        b_star, r_star = b1, out1.radius
    else:
        out2 = _outcome_for_bisection(params, a0, b2, r_max, tol, rtol)
        history.append((b2, out2.kind))
        if out2.kind == OutcomeKind.SIMULTANEOUS:
            b_star, r_star = b2, out2.radius
        else:
            if out1.kind == out2.kind:
                raise ValueError(
                    f"bracket {bracket} has equal polarity ({out1.kind.value}); "
                    "not a valid bracket"
                )
            b_star = None
            r_star = None
            for _ in range(max_iter):
                mid = math.sqrt(b1 * b2)
                out_mid = _outcome_for_bisection(params, a0, mid, r_max, tol, rtol)
                history.append((mid, out_mid.kind))
                if out_mid.kind == OutcomeKind.SIMULTANEOUS:
                    b_star, r_star = mid, out_mid.radius
                    break
                if out_mid.kind == out1.kind:
                    b1 = mid
                else:
                    b2 = mid
            if b_star is None:
                raise RuntimeError(
                    f"bisection did not reach a simultaneous crossing within "
                    f"{max_iter} iterations (bracket narrowed to [{b1}, {b2}])"
                )

    natural = integrate_to_first_zero(
        params, a0, b_star, r_max=r_max, tol=tol, rtol=rtol,
        densify=True, n_dense=n_dense,
    )
    rescaled = rescale_trajectory(natural, params.R)
    return DirichletSolution(
        params=params,
        a0=a0,
        b_star=b_star,
        trajectory=rescaled,
        bisection_history=history,
        natural_radius=r_star,
    )


def rescale_trajectory(traj: Trajectory, new_R: float) -> Trajectory:
    """Map a trajectory ending at radius R0 to one ending at new_R via

        u_sigma(r) = sigma^alpha u(sigma r),  v_sigma(r) = sigma^beta v(sigma r)

    with sigma = R0 / new_R.  Validity rests on the exponent identities;
    rescaling is rejected when they fail.
    """
    if new_R <= 0.0:
        raise ValueError(f"target radius must be positive, got {new_R}")
    if not verify_exponent_identities(traj.params, 1e-9):
        raise ValueError("exponent identities fail; rescaling would not map solutions")
    alpha, beta = compute_alpha_beta(traj.params)
    p, q, N = traj.params.p, traj.params.q, traj.params.N
    R0 = float(traj.r[-1])
    sigma = R0 / new_R
    cu = sigma**alpha
    cv = sigma**beta
    cfu = sigma ** ((alpha + 1.0) * (p - 1.0) + 1.0 - N)
    cfv = sigma ** ((beta + 1.0) * (q - 1.0) + 1.0 - N)
    events = [
        ZeroEvent(ev.component, ev.radius / sigma, ev.residual * (cu if ev.component == "u" else cv))
        for ev in traj.events
    ]
    outcome = Outcome(traj.outcome.kind, traj.outcome.radius / sigma)
    return Trajectory(
        params=replace(traj.params, R=new_R),
        a0=traj.a0 * cu,
        b0=traj.b0 * cv,
        r=traj.r / sigma,
        u=traj.u * cu,
        v=traj.v * cv,
        flux_u=traj.flux_u * cfu,
        flux_v=traj.flux_v * cfv,
        events=events,
        outcome=outcome,
    )


def truncate_positive(traj: Trajectory, r_cut: float) -> Trajectory:
    """Restrict a trajectory to [r0, r_cut], relabeling it as zero-free.

    r_cut must precede any zero crossing; the result carries outcome
    NoZeroUpTo(r_cut) and is a valid input for half-line diagnostics.
    """
    if traj.events and r_cut >= min(ev.radius for ev in traj.events):
        raise ValueError(f"r_cut={r_cut} does not precede the first zero")
    keep = traj.r <= r_cut
    if keep.sum() < 2:
        raise ValueError(f"r_cut={r_cut} leaves fewer than two nodes")
    return Trajectory(
        params=traj.params,
        a0=traj.a0,
        b0=traj.b0,
        r=traj.r[keep].copy(),
        u=traj.u[keep].copy(),
        v=traj.v[keep].copy(),
        flux_u=traj.flux_u[keep].copy(),
        flux_v=traj.flux_v[keep].copy(),
        events=[],
        outcome=Outcome(OutcomeKind.NO_ZERO, float(traj.r[keep][-1])),
    )


def rescale_solution(sol: DirichletSolution, new_R: float) -> DirichletSolution:
    """Carry a Dirichlet solution to a different ball radius."""
    return DirichletSolution(
        params=replace(sol.params, R=new_R),
        a0=sol.a0,
        b_star=sol.b_star,
        trajectory=rescale_trajectory(sol.trajectory, new_R),
        bisection_history=sol.bisection_history,
        natural_radius=sol.natural_radius,
    )


def integral_form_residual(traj: Trajectory) -> float:
    """Sup-norm residual of the integral form of the radial system.

    Reconstructs u from v (and v from u) by the double quadrature

        u(r) = a0 - int_0^r phi_inv(p, s^(1-N) int_0^s t^(N-1) v^delta dt) ds

    on the trajectory's own nodes and returns the larger sup-norm mismatch.
    This is an oracle independent of the ODE stepper: only the node values
    enter, through their monotone interpolants.  Inner integrals are cached
    cumulatively at the nodes and completed by a local panel rule, never by
    interpolating the primitive (which would amplify error near the origin).
    """
    p_ = traj.params
    r = traj.r
    v_interp = PchipInterpolator(r, traj.v)
    u_interp = PchipInterpolator(r, traj.u)

    def inner_v(s):
        s = np.asarray(s)
        vv = np.clip(v_interp(np.clip(s, r[0], r[-1])), 0.0, None)
        # below the first node the components are flat at the amplitudes
        vv = np.where(s < r[0], traj.b0, vv)
        return s ** (p_.N - 1) * vv**p_.delta

    def inner_u(s):
        s = np.asarray(s)
        uu = np.clip(u_interp(np.clip(s, r[0], r[-1])), 0.0, None)
        uu = np.where(s < r[0], traj.a0, uu)
        return s ** (p_.N - 1) * uu**p_.mu

    nodes = np.concatenate([[0.0], r])
    iv = CumulativeIntegral(inner_v, nodes)
    iu = CumulativeIntegral(inner_u, nodes)

    def slope_u(s):
        s = np.asarray(s)
        return (np.clip(iv.at(s), 0.0, None) * s ** (1 - p_.N)) ** (1.0 / (p_.p - 1.0))

    def slope_v(s):
        s = np.asarray(s)
        return (np.clip(iu.at(s), 0.0, None) * s ** (1 - p_.N)) ** (1.0 / (p_.q - 1.0))

    drop_u = CumulativeIntegral(slope_u, nodes).node_values[1:]
    drop_v = CumulativeIntegral(slope_v, nodes).node_values[1:]
    res_u = float(np.max(np.abs(traj.u - (traj.a0 - drop_u))))
    res_v = float(np.max(np.abs(traj.v - (traj.b0 - drop_v))))
    return max(res_u, res_v)


@dataclass
class GroundStateProbe:
    """Decay diagnostics of a trajectory that stayed positive to r_max.

    A candidate ground state, not a certificate: the log-log slopes over the
    final decade are compared with the predicted decay exponents.  When the
    trajectory crossed zero instead, the crossing outcome is recorded and the
    slope fields are None.
    """

    trajectory: Trajectory
    outcome: Outcome
    alpha: float
    beta: float
    slope_u: float | None
    slope_v: float | None
    deviation_u: float | None
    deviation_v: float | None


def fit_loglog_slope(r: np.ndarray, w: np.ndarray) -> float:
    """Least-squares slope of log w against log r."""
    return float(np.polyfit(np.log(r), np.log(w), 1)[0])


def ground_state_probe(
    params: ProblemParams,
    a0: float,
    b0: float,
    r_max: float,
    tol: float = DEFAULT_EVENT_TOL,
    rtol: float = DEFAULT_RTOL,
    n_dense: int = DEFAULT_DENSE_NODES,
) -> GroundStateProbe:
    """Integrate to r_max and fit the tail decay of a zero-free trajectory."""
    alpha, beta = compute_alpha_beta(params)
    traj = integrate_to_first_zero(
        params, a0, b0, r_max=r_max, tol=tol, rtol=rtol, densify=True, n_dense=n_dense
    )
    if traj.outcome.kind != OutcomeKind.NO_ZERO:
        return GroundStateProbe(traj, traj.outcome, alpha, beta, None, None, None, None)
    tail = traj.r >= r_max / 10.0
    slope_u = fit_loglog_slope(traj.r[tail], traj.u[tail])
    slope_v = fit_loglog_slope(traj.r[tail], traj.v[tail])
    return GroundStateProbe(
        trajectory=traj,
        outcome=traj.outcome,
        alpha=alpha,
        beta=beta,
        slope_u=slope_u,
        slope_v=slope_v,
        deviation_u=abs(slope_u + alpha),
        deviation_v=abs(slope_v + beta),
    )
