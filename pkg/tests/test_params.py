import math

import numpy as np
import pytest

from pqradial.params import (
    ProblemParams,
    compute_alpha_beta,
    compute_d,
    compute_k1,
    compute_k2,
    derive,
    normalize_orientation,
    verify_exponent_identities,
)


def P(N=3, p=2.0, q=2.0, delta=2.0, mu=2.0, R=None):
    return ProblemParams(N=N, p=p, q=q, delta=delta, mu=mu, R=R)


class TestValidation:
    def test_rejects_bad_fields(self):
        with pytest.raises(ValueError):
            P(N=1)
        with pytest.raises(ValueError):
            P(p=1.0)
        with pytest.raises(ValueError):
            P(q=0.5)
        with pytest.raises(ValueError):
            P(delta=0.0)
        with pytest.raises(ValueError):
            P(mu=-1.0)
        with pytest.raises(ValueError):
            P(R=0.0)

    def test_integral_float_dimension_coerced(self):
        assert P(N=4.0).N == 4
        with pytest.raises(ValueError):
            P(N=3.5)


class TestComputeD:
    def test_homogeneity_boundary(self):
        assert compute_d(P(p=2, q=2, delta=1, mu=1)) == 0.0

    def test_direct_arithmetic(self):
        assert compute_d(P(p=2, q=3, delta=2, mu=5)) == pytest.approx(8.0, abs=1e-14)
        assert compute_d(P(p=2, q=2, delta=3, mu=3)) == pytest.approx(8.0, abs=1e-14)

    def test_sign_unconstrained(self):
        assert compute_d(P(p=3, q=3, delta=1, mu=1)) == pytest.approx(-3.0)


class TestAlphaBeta:
    def test_symmetric_unit_case(self):
        assert compute_alpha_beta(P(p=2, q=2, delta=3, mu=3)) == pytest.approx((1.0, 1.0))

    def test_asymmetric_case(self):
        alpha, beta = compute_alpha_beta(P(p=2, q=3, delta=2, mu=5))
        assert alpha == pytest.approx(1.25, rel=1e-14)
        assert beta == pytest.approx(1.625, rel=1e-14)

    def test_swap_symmetry(self):
        a, b = compute_alpha_beta(P(p=2, q=3, delta=2, mu=5))
        a2, b2 = compute_alpha_beta(P(p=3, q=2, delta=5, mu=2))
        assert (a2, b2) == (b, a)

    def test_rejects_non_superhomogeneous(self):
        with pytest.raises(ValueError, match="not superhomogeneous"):
            compute_alpha_beta(P(p=2, q=2, delta=1, mu=1))


class TestExponentIdentities:
    def test_unit_case(self):
        assert verify_exponent_identities(P(p=2, q=2, delta=3, mu=3), 1e-12)

    def test_asymmetric_case(self):
        # alpha = 1.25, beta = 1.625: 1 - 2*1.625 = -2.25 = -(1.25+1)*1
        assert verify_exponent_identities(P(p=2, q=3, delta=2, mu=5), 1e-12)

    def test_sensitivity_to_alpha_perturbation(self):
        # the identity is affine in alpha: a 1e-3 shift moves the residual
        # by (p-1)*1e-3, far beyond a 1e-6 tolerance
        params = P(p=2, q=3, delta=2, mu=5)
        alpha, beta = compute_alpha_beta(params)
        residual = abs((1 - params.mu * (alpha + 1e-3)) - (-(beta + 1) * (params.q - 1)))
        assert residual > 1e-6

    def test_random_tuples(self):
        rng = np.random.default_rng(7)
        checked = 0
        while checked < 300:
            p, q = rng.uniform(1.1, 5.0, 2)
            delta, mu = rng.uniform(0.1, 6.0, 2)
            params = P(N=int(rng.integers(2, 10)), p=p, q=q, delta=delta, mu=mu)
            if compute_d(params) <= 0:
                continue
            assert verify_exponent_identities(params, 1e-12)
            checked += 1


class TestK1:
    def test_both_branches_agree_at_two(self):
        for N in (2, 3, 5, 11):
            assert compute_k1(P(N=N, p=2, q=2)) == pytest.approx(2.0, rel=1e-14)

    def test_subquadratic_branch(self):
        assert compute_k1(P(N=4, p=1.9, q=1.9)) == pytest.approx(5.0 / 3.0, rel=1e-12)

    def test_superquadratic_branch(self):
        assert compute_k1(P(N=5, p=2, q=3)) == pytest.approx(1.5, rel=1e-14)

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError, match="normalize"):
            compute_k1(P(N=5, p=3, q=2))

    def test_rejects_outside_ranges(self):
        with pytest.raises(ValueError):
            compute_k1(P(N=4, p=1.5, q=1.5))  # below 2N/(N+1) = 1.6
        with pytest.raises(ValueError):
            compute_k1(P(N=4, p=1.9, q=2.1))  # straddles 2
        with pytest.raises(ValueError):
            compute_k1(P(N=3, p=2.5, q=3.0))  # q = N

    def test_boundary_comparisons_exact(self):
        # closed at p = 2N/(N+1), closed at q = 2
        assert compute_k1(P(N=4, p=1.6, q=2.0)) == pytest.approx(
            1.6 + (4 - 1.6) * (1.6 - 2.0) / 0.6, rel=1e-12
        )

    def test_k1_below_q_in_subquadratic_branch(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            N = int(rng.integers(2, 9))
            lo = 2.0 * N / (N + 1.0)
            p = rng.uniform(lo + 1e-9, 2.0 - 1e-9)
            q = rng.uniform(p, 2.0)
            assert compute_k1(P(N=N, p=p, q=q)) < q


class TestK2:
    def test_value_at_two(self):
        for N in (3, 5, 11):
            assert compute_k2(P(N=N, p=2, q=2)) == pytest.approx(2.0, rel=1e-14)

    def test_superquadratic_branch(self):
        assert compute_k2(P(N=4, p=2.1, q=2.1)) == pytest.approx(25.0 / 11.0, rel=1e-12)

    def test_subquadratic_branch(self):
        assert compute_k2(P(N=4, p=1.9, q=2.0)) == pytest.approx(19.0 / 9.0, rel=1e-12)

    def test_lower_boundary_strict(self):
        # N/(N-1) is excluded: exact equality must be rejected
        with pytest.raises(ValueError):
            compute_k2(P(N=2, p=2.0, q=2.0))

    def test_rejects_outside_ranges(self):
        with pytest.raises(ValueError):
            compute_k2(P(N=4, p=4.0 / 3.0, q=1.5))


class TestNormalizeOrientation:
    def test_already_normalized(self):
        params = P(p=2, q=3, delta=2, mu=5)
        out, swapped = normalize_orientation(params)
        assert out == params and not swapped

    def test_swap(self):
        out, swapped = normalize_orientation(P(p=3, q=2, delta=5, mu=2))
        assert swapped
        assert (out.p, out.q, out.delta, out.mu) == (2, 3, 2, 5)

    def test_involution(self):
        params = P(p=3, q=2, delta=5, mu=2)
        once, _ = normalize_orientation(params)
        twice, swapped = normalize_orientation(once)
        assert twice == once and not swapped

    def test_d_and_exponents_invariant_up_to_swap(self):
        params = P(N=5, p=3, q=2, delta=5, mu=2)
        swapped, _ = normalize_orientation(params)
        assert compute_d(params) == compute_d(swapped)
        a, b = compute_alpha_beta(params)
        a2, b2 = compute_alpha_beta(swapped)
        assert (a, b) == (b2, a2)


class TestDerive:
    def test_bundles_everything(self):
        d = derive(P(N=4, p=1.9, q=1.9, delta=2, mu=2))
        assert d.d == pytest.approx(3.19)
        assert d.alpha == pytest.approx(19.0 / 11.0, rel=1e-12)
        assert d.k1 == pytest.approx(5.0 / 3.0, rel=1e-12)
        assert d.k2 == pytest.approx(1.9 / 0.9, rel=1e-12)
        assert (d.m_under, d.m_over) == (1.9, 1.9)

    def test_k_fields_none_outside_windows(self):
        d = derive(P(N=4, p=1.9, q=2.1, delta=3, mu=3))
        assert d.k1 is None and d.k2 is None

    def test_requires_superhomogeneity(self):
        with pytest.raises(ValueError, match="not superhomogeneous"):
            derive(P(p=2, q=2, delta=1, mu=1))
