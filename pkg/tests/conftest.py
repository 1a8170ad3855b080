import numpy as np
import pytest

from pqradial.params import ProblemParams
from pqradial.shooting import find_brackets, shoot_scan, solve_dirichlet

# Existence-side parameter tuples spanning the sub- and superquadratic
# branches; values chosen so every tuple admits a Dirichlet solution at R = 1.
BRANCH_CASES = {
    "sub_sym": ProblemParams(N=4, p=1.9, q=1.9, delta=2.0, mu=2.0, R=1.0),
    "super_sym": ProblemParams(N=4, p=2.1, q=2.1, delta=2.0, mu=2.0, R=1.0),
    "classic": ProblemParams(N=3, p=2.0, q=2.0, delta=2.0, mu=2.0, R=1.0),
    "sub_asym": ProblemParams(N=4, p=1.9, q=2.0, delta=2.0, mu=2.5, R=1.0),
    "super_asym": ProblemParams(N=4, p=2.0, q=2.1, delta=2.0, mu=2.0, R=1.0),
}


def solve_case(params: ProblemParams):
    scan = shoot_scan(params, 1.0, 0.2, 5.0, 9, r_max=200.0)
    brackets = find_brackets(scan)
    assert brackets, f"no shooting bracket found for {params}"
    return solve_dirichlet(params, brackets[0], r_max=200.0)


@pytest.fixture(scope="session")
def le_solution():
    """Classical symmetric case: N=3, p=q=2, delta=mu=2 on the unit ball."""
    return solve_case(BRANCH_CASES["classic"])


@pytest.fixture(scope="session")
def branch_solutions():
    return {name: solve_case(params) for name, params in BRANCH_CASES.items()}
