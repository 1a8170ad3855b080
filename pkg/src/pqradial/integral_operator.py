"""Hammerstein-type integral operator associated with the Dirichlet system.

For continuous pairs (u, v) on [0, R],

    T(u, v)(r) = ( int_r^R (s^(1-N) int_0^s t^(N-1) |v|^delta dt)^(1/(p-1)) ds,
                   int_r^R (s^(1-N) int_0^s t^(N-1) |u|^mu   dt)^(1/(q-1)) ds ).

Fixed points of T are exactly the solutions of the system, which makes the
sup-norm of T(u, v) - (u, v) an independent residual oracle for computed
solutions.  T is positioned as a verification oracle here, not a solver:
plain iteration carries no convergence guarantee in the superhomogeneous
regime, so the Picard iterator reports whatever happens.

Inner integrals are cached cumulatively at the grid nodes and completed by
a local panel rule per outer sample (never by interpolating the primitive,
whose error would be amplified by s^(1-N) near the origin); all quadrature
is adaptive with absolute and relative tolerance 1e-10.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.interpolate import PchipInterpolator

from ._quadtools import CumulativeIntegral
from .params import ProblemParams

QUAD_ABS_TOL = 1e-10
QUAD_REL_TOL = 1e-10

# Tolerated undershoot (relative to the amplitude) when clamping trajectory
# values at the boundary zero.
_CLAMP_TOL = 1e-6


@dataclass
class GridFunctionPair:
    """Nonnegative function pair sampled on a shared grid from 0 to R.

    Evaluation between nodes uses monotone piecewise-cubic interpolation.
    """

    radii: np.ndarray
    u_values: np.ndarray
    v_values: np.ndarray

    def __post_init__(self) -> None:
        self.radii = np.asarray(self.radii, dtype=float)
        self.u_values = np.asarray(self.u_values, dtype=float)
        self.v_values = np.asarray(self.v_values, dtype=float)
        if self.radii.ndim != 1 or len(self.radii) < 2:
            raise ValueError("need at least two radii")
        if self.radii[0] != 0.0:
            raise ValueError("radii must start at 0")
        if np.any(np.diff(self.radii) <= 0.0):
            raise ValueError("radii must be strictly increasing")
        if len(self.u_values) != len(self.radii) or len(self.v_values) != len(self.radii):
            raise ValueError("value arrays must match the radii in length")
        if np.any(self.u_values < 0.0) or np.any(self.v_values < 0.0):
            raise ValueError("grid function values must be nonnegative")

    @property
    def R(self) -> float:
        return float(self.radii[-1])

    def interpolants(self):
        return (
            PchipInterpolator(self.radii, self.u_values),
            PchipInterpolator(self.radii, self.v_values),
        )

    def sup_norm(self) -> tuple[float, float]:
        return float(np.max(np.abs(self.u_values))), float(np.max(np.abs(self.v_values)))


def pair_from_trajectory(traj) -> GridFunctionPair:
    """Grid pair over [0, R] from a trajectory, prepending the r = 0 state.

    Values marginally below zero (boundary overshoot of the solver) are
    clamped; anything below -_CLAMP_TOL * amplitude is rejected.
    """
    scale = max(traj.a0, traj.b0)
    u = np.concatenate([[traj.a0], traj.u])
    v = np.concatenate([[traj.b0], traj.v])
    if np.min(u) < -_CLAMP_TOL * scale or np.min(v) < -_CLAMP_TOL * scale:
        raise ValueError("trajectory values too far below zero to clamp")
    radii = np.concatenate([[0.0], traj.r])
    return GridFunctionPair(radii, np.clip(u, 0.0, None), np.clip(v, 0.0, None))


def _half_apply(radii, w_interp, exponent, power_inv, N):
    """One component of T: outer integral of
    (s^(1-N) int_0^s t^(N-1) w(t)^exponent dt)^power_inv, from r to R."""

    def inner_integrand(t):
        t = np.asarray(t)
        w = np.clip(w_interp(t), 0.0, None)
        return t ** (N - 1) * w**exponent

    inner = CumulativeIntegral(
        inner_integrand, radii, abs_tol=QUAD_ABS_TOL, rel_tol=QUAD_REL_TOL
    )

    def outer_integrand(s):
        s = np.asarray(s)
        core = np.clip(inner.at(s), 0.0, None)
        return (core * s ** (1 - N)) ** power_inv

    outer = CumulativeIntegral(
        outer_integrand,
        radii,
        direction="from-right",
        abs_tol=QUAD_ABS_TOL,
        rel_tol=QUAD_REL_TOL,
    )
    return outer.node_values, inner.quad_error + outer.quad_error


def apply_T(pair: GridFunctionPair, params: ProblemParams, R: float | None = None) -> GridFunctionPair:
    """Evaluate T on the pair's own grid.

    Both output components vanish at r = R and are nonincreasing in r.
    """
    if R is not None and abs(R - pair.R) > 1e-12 * max(1.0, pair.R):
        raise ValueError(f"pair is defined on [0, {pair.R}], not [0, {R}]")
    u_interp, v_interp = pair.interpolants()
    tu, _ = _half_apply(
        pair.radii, v_interp, params.delta, 1.0 / (params.p - 1.0), params.N
    )
    tv, _ = _half_apply(
        pair.radii, u_interp, params.mu, 1.0 / (params.q - 1.0), params.N
    )
    if not (np.all(np.isfinite(tu)) and np.all(np.isfinite(tv))):
        raise RuntimeError("non-finite values in operator output")
    return GridFunctionPair(pair.radii, np.clip(tu, 0.0, None), np.clip(tv, 0.0, None))


def residual(pair: GridFunctionPair, params: ProblemParams, R: float | None = None) -> float:
    """Sup-norm over the nodes of T(pair) - pair."""
    image = apply_T(pair, params, R)
    res_u = float(np.max(np.abs(image.u_values - pair.u_values)))
    res_v = float(np.max(np.abs(image.v_values - pair.v_values)))
    return max(res_u, res_v)


@dataclass
class PicardResult:
    pair: GridFunctionPair
    converged: bool
    residuals: list[float]


def picard_iterate(
    initial: GridFunctionPair,
    params: ProblemParams,
    R: float | None = None,
    max_iter: int = 20,
    tol: float = 1e-8,
) -> PicardResult:
    """Iterate pair <- T(pair) until the residual drops below tol.

    Divergence or oscillation is a valid, reported outcome; only non-finite
    values abort.
    """
    pair = initial
    residuals: list[float] = []
    for _ in range(max_iter):
        image = apply_T(pair, params, R)
        res = max(
            float(np.max(np.abs(image.u_values - pair.u_values))),
            float(np.max(np.abs(image.v_values - pair.v_values))),
        )
        residuals.append(res)
        pair = image
        if res <= tol:
            return PicardResult(pair, True, residuals)
    return PicardResult(pair, False, residuals)
