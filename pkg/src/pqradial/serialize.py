"""Stable JSON/CSV serialization for trajectories, solutions, and reports.

Trajectory schema (top level): params, a0, b0, outcome, nodes, events, where
nodes is an array of [r, u, v, flux_u, flux_v] rows.  Floats are written in
Python's shortest round-trip decimal form (at most 17 significant digits),
so a written file reads back bit-exactly.  Solution files extend the schema
with b_star, bisection_history, natural_radius and residual; readers ignore
the extras, so any solution file is also a valid trajectory file.

CSV output is locale-independent: header row, comma separator, '.' decimal.
"""

from __future__ import annotations

import csv
import json
from typing import Any

import numpy as np

from .classifier import Classification, RegionRow
from .energy import EnergyReport
from .params import ProblemParams
from .shooting import (
    DirichletSolution,
    Outcome,
    OutcomeKind,
    Trajectory,
    ZeroEvent,
)


def params_to_dict(params: ProblemParams) -> dict:
    return {
        "N": params.N,
        "p": params.p,
        "q": params.q,
        "delta": params.delta,
        "mu": params.mu,
        "R": params.R,
    }


def params_from_dict(d: dict) -> ProblemParams:
    return ProblemParams(
        N=d["N"], p=d["p"], q=d["q"], delta=d["delta"], mu=d["mu"], R=d.get("R")
    )


def trajectory_to_dict(traj: Trajectory) -> dict:
    nodes = np.column_stack([traj.r, traj.u, traj.v, traj.flux_u, traj.flux_v])
    return {
        "params": params_to_dict(traj.params),
        "a0": traj.a0,
        "b0": traj.b0,
        "outcome": {"kind": traj.outcome.kind.value, "radius": traj.outcome.radius},
        "nodes": nodes.tolist(),
        "events": [
            {"component": ev.component, "radius": ev.radius, "residual": ev.residual}
            for ev in traj.events
        ],
    }


def trajectory_from_dict(d: dict) -> Trajectory:
    nodes = np.asarray(d["nodes"], dtype=float)
    if nodes.ndim != 2 or nodes.shape[1] != 5:
        raise ValueError("nodes must be an array of [r, u, v, flux_u, flux_v] rows")
    return Trajectory(
        params=params_from_dict(d["params"]),
        a0=float(d["a0"]),
        b0=float(d["b0"]),
        r=nodes[:, 0],
        u=nodes[:, 1],
        v=nodes[:, 2],
        flux_u=nodes[:, 3],
        flux_v=nodes[:, 4],
        events=[
            ZeroEvent(ev["component"], float(ev["radius"]), float(ev["residual"]))
            for ev in d.get("events", [])
        ],
        outcome=Outcome(OutcomeKind(d["outcome"]["kind"]), float(d["outcome"]["radius"])),
    )


def solution_to_dict(sol: DirichletSolution, residual: float | None = None) -> dict:
    d = trajectory_to_dict(sol.trajectory)
    d["b_star"] = sol.b_star
    d["natural_radius"] = sol.natural_radius
    d["bisection_history"] = [[b, kind.value] for b, kind in sol.bisection_history]
    if residual is not None:
        d["residual"] = residual
    return d


def solution_from_dict(d: dict) -> DirichletSolution:
    traj = trajectory_from_dict(d)
    return DirichletSolution(
        params=traj.params,
        a0=traj.a0,
        b_star=float(d["b_star"]),
        trajectory=traj,
        bisection_history=[
            (float(b), OutcomeKind(kind)) for b, kind in d.get("bisection_history", [])
        ],
        natural_radius=float(d["natural_radius"]),
    )


def classification_to_dict(cls: Classification) -> dict:
    return {
        "verdict": cls.verdict.value,
        "conditions": [
            {
                "condition": res.condition_id.value,
                "hypotheses_hold": res.hypotheses_hold,
                "margin": res.inequality_margin,
                "satisfied": res.satisfied,
            }
            for res in cls.details
        ],
    }


def energy_report_to_dict(report: EnergyReport) -> dict:
    return {
        "kind": report.kind,
        "k_value": report.k_value,
        "samples": [
            {"r": s.r, "E": s.E, "E_prime_analytic": s.E_prime_analytic, "E_prime_fd": s.E_prime_fd}
            for s in report.samples
        ],
        "g_samples": [{"r": g.r, "G_u": g.G_u, "G_v": g.G_v} for g in report.g_samples],
        "endpoint_values": list(report.endpoint_values),
        "tail_error_estimate": report.tail_error_estimate,
        "sign_summary": {
            "positive": report.sign_summary.positive,
            "negative": report.sign_summary.negative,
            "within_tol": report.sign_summary.within_tol,
        },
        "max_derivative_mismatch": report.max_derivative_mismatch,
        "certified": report.certified,
    }


def dump_json(obj: dict, path) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=1)
        fh.write("\n")


def load_json(path) -> Any:
    with open(path) as fh:
        return json.load(fh)


def save_trajectory(traj: Trajectory, path) -> None:
    dump_json(trajectory_to_dict(traj), path)


def load_trajectory(path) -> Trajectory:
    return trajectory_from_dict(load_json(path))


def save_solution(sol: DirichletSolution, path, residual: float | None = None) -> None:
    dump_json(solution_to_dict(sol, residual), path)


def load_solution(path) -> DirichletSolution:
    return solution_from_dict(load_json(path))


def write_csv(path, header: list[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow(["" if x is None else repr(float(x)) for x in row])


def region_rows_to_csv(path, rows: list[RegionRow]) -> None:
    write_csv(
        path,
        ["mu", "delta_existence_new", "delta_nonexistence", "delta_cmm"],
        [
            (row.mu, row.delta_existence_new, row.delta_nonexistence, row.delta_cmm)
            for row in rows
        ],
    )
