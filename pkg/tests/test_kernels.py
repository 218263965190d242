"""Continuous kernels: shape branches, the confluent closed form, and the
kernel-integral operator with its dual-route oracle."""

import math

import numpy as np
import pytest

from fracfilt.errors import DomainError, GrowthError, ValidationError
from fracfilt.kernels import (
    JacobiKernelParams,
    apply_kernel,
    confluent_inverse_ft,
    gegenbauer_legendre_params,
    jacobi_kernel,
    jacobi_normalization,
    laguerre_kernel,
    oracle_double_integral,
    orthogonal_derivative,
)
from fracfilt.specfun import SQRT_TWO_PI, gamma

LEGENDRE_HALF = JacobiKernelParams(alpha=0.0, beta=0.0, n=1, nu=0.5, delta=1.0)


class TestParams:
    def test_gegenbauer_mapping(self):
        p = gegenbauer_legendre_params(0.5, 2, 1.2, 0.1)
        assert p.alpha == 0.0 and p.beta == 0.0
        assert p.n == 2 and p.nu == 1.2 and p.delta == 0.1
        p = gegenbauer_legendre_params(1.0, 1, 0.5, 1.0)
        assert p.alpha == 0.5 and p.beta == 0.5

    def test_validation(self):
        with pytest.raises(ValidationError):
            JacobiKernelParams(alpha=-1.0, beta=0.0, n=1, nu=0.5, delta=1.0)
        with pytest.raises(ValidationError):
            JacobiKernelParams(alpha=0.0, beta=0.0, n=0, nu=0.5, delta=1.0)
        with pytest.raises(ValidationError):
            JacobiKernelParams(alpha=0.0, beta=0.0, n=1, nu=1.5, delta=1.0)
        with pytest.raises(ValidationError):
            JacobiKernelParams(alpha=0.0, beta=0.0, n=1, nu=0.5, delta=0.0)
        with pytest.raises(ValidationError):
            gegenbauer_legendre_params(-0.5, 1, 0.5, 1.0)

    def test_normalization(self):
        # h_n/k_n for Legendre n=1: 2^2 * 1 * 1 / G(4) = 2/3
        assert jacobi_normalization(0.0, 0.0, 1).hn_over_kn == pytest.approx(
            2.0 / 3.0, rel=1e-14
        )


class TestJacobiKernel:
    def test_zero_left_of_support(self):
        assert jacobi_kernel(LEGENDRE_HALF, -1.5) == 0.0
        assert jacobi_kernel(LEGENDRE_HALF, -1.0) == 0.0

    def test_branch_junction_refused(self):
        with pytest.raises(DomainError):
            jacobi_kernel(LEGENDRE_HALF, 1.0)

    def test_branches_meet_at_one(self):
        """Interior and tail formulas are individually singular at y = 1
        but share a finite nonzero one-sided limit."""
        p = JacobiKernelParams(alpha=0.0, beta=0.0, n=2, nu=0.5, delta=1.0)
        below = jacobi_kernel(p, 1.0 - 1e-6)
        above = jacobi_kernel(p, 1.0 + 1e-6)
        assert below != 0.0
        assert above == pytest.approx(below, rel=1e-4)

    def test_tail_decay_exponent(self):
        # k(y) ~ C y^(-nu-1) for large y
        ratio = jacobi_kernel(LEGENDRE_HALF, 2000.0) / jacobi_kernel(LEGENDRE_HALF, 1000.0)
        assert ratio == pytest.approx(2.0 ** -1.5, rel=1e-2)

    def test_integer_order_has_no_tail(self):
        p = JacobiKernelParams(alpha=0.0, beta=0.0, n=1, nu=1.0, delta=0.3)
        assert jacobi_kernel(p, 2.0) == 0.0
        assert jacobi_kernel(p, 1.0001) == 0.0

    def test_integer_order_interior_is_the_polynomial_weight(self):
        # at nu = n = 1 the interior reduces to -(3/2) y: the weighted
        # first-degree polynomial with the upper-limit sign (-1)^n
        p = JacobiKernelParams(alpha=0.0, beta=0.0, n=1, nu=1.0, delta=0.3)
        y = 0.37
        expected = -gamma(4.0) / (2.0 ** 2.0 * gamma(2.0) * gamma(1.0)) * y
        assert jacobi_kernel(p, y) == pytest.approx(expected, rel=1e-13)

    def test_matches_confluent_closed_form(self):
        # same function through the a, b, c parametrization and y -> (1-y)/2
        scale = SQRT_TWO_PI * 2.0 ** 1.5
        for y in (-0.4, 0.3, 1.7):
            lhs = jacobi_kernel(LEGENDRE_HALF, y)
            rhs = confluent_inverse_ft(2.0, 1.5, 4.0, (1.0 - y) / 2.0) / scale
            assert lhs == pytest.approx(rhs, rel=1e-13)

    def test_left_endpoint_singular_orders_refused(self):
        p = JacobiKernelParams(alpha=0.0, beta=-0.5, n=1, nu=0.5, delta=1.0)
        with pytest.raises(DomainError):
            jacobi_kernel(p, -1.0)


class TestConfluentInverseFt:
    def test_zero_beyond_support(self):
        assert confluent_inverse_ft(2.5, 1.5, 6.0, 1.0) == 0.0
        assert confluent_inverse_ft(2.5, 1.5, 6.0, 3.7) == 0.0

    def test_junction_refused(self):
        with pytest.raises(DomainError):
            confluent_inverse_ft(2.5, 1.5, 6.0, 0.0)

    def test_branches_meet_at_zero(self):
        # a - b = 1.2 here: an integer a - b puts the limit from below
        # into the unimplemented logarithmic 2F1 case (see the sliver
        # note in the frequency-domain acceptance test)
        below = confluent_inverse_ft(2.7, 1.5, 6.0, -1e-5)
        above = confluent_inverse_ft(2.7, 1.5, 6.0, 1e-5)
        assert above == pytest.approx(below, rel=5e-3)

    def test_support_edge_decay_exponent(self):
        # (1 - y)^(c-a-b) vanishing toward y = 1, exponent 1.8
        f1 = confluent_inverse_ft(2.7, 1.5, 6.0, 1.0 - 1e-3)
        f2 = confluent_inverse_ft(2.7, 1.5, 6.0, 1.0 - 2e-3)
        assert f1 / f2 == pytest.approx(0.5 ** 1.8, rel=2e-2)

    def test_parameter_window_validated(self):
        with pytest.raises(ValidationError):
            confluent_inverse_ft(2.5, 3.0, 6.0, 0.5)   # b >= a
        with pytest.raises(ValidationError):
            confluent_inverse_ft(2.5, -0.5, 6.0, 0.5)  # b <= 0
        with pytest.raises(ValidationError):
            confluent_inverse_ft(5.0, 1.5, 6.0, 0.5)   # b >= c - a


class TestLaguerreKernel:
    def test_integer_order_closed_form(self):
        # nu = n = 1, alpha = 0: e^(-y) (1 - y)
        assert laguerre_kernel(0.0, 1, 1.0, 0.5) == pytest.approx(
            math.exp(-0.5) * 0.5, rel=1e-14
        )
        assert laguerre_kernel(0.0, 1, 1.0, 3.0) == pytest.approx(
            -2.0 * math.exp(-3.0), rel=1e-13
        )

    def test_origin_values(self):
        assert laguerre_kernel(0.0, 1, 0.5, 0.0) == 0.0
        # exponent n - nu + alpha exactly zero: finite limit 1/Gamma(1)
        assert laguerre_kernel(-0.5, 1, 0.5, 0.0) == pytest.approx(1.0, rel=1e-14)

    def test_validation(self):
        with pytest.raises(ValidationError):
            laguerre_kernel(-1.0, 1, 0.5, 1.0)
        with pytest.raises(ValidationError):
            laguerre_kernel(0.0, 1, 1.5, 1.0)
        with pytest.raises(ValidationError):
            laguerre_kernel(0.0, 1, 0.5, -1.0)
        with pytest.raises(DomainError):
            laguerre_kernel(-0.9, 1, 0.5, 0.0)


class TestOrthogonalDerivative:
    def test_exact_on_degree_n(self):
        """The weighted average reproduces the n-th derivative of degree-n
        polynomials exactly, independent of the step."""
        f = lambda x: 3.0 * x * x - x + 2.0
        value = orthogonal_derivative(f, 2, 0.5, -0.3, 1.7, 0.4)
        assert value == pytest.approx(6.0, abs=1e-10)
        g = lambda x: -2.0 * x + 9.0
        assert orthogonal_derivative(g, 1, 0.0, 0.0, 3.7, -1.2) == pytest.approx(
            -2.0, abs=1e-10
        )

    def test_second_order_on_smooth_functions(self):
        d1 = orthogonal_derivative(math.sin, 1, 0.0, 0.0, 0.2, 0.7) - math.cos(0.7)
        d2 = orthogonal_derivative(math.sin, 1, 0.0, 0.0, 0.1, 0.7) - math.cos(0.7)
        assert abs(d1) < 0.01
        assert d1 / d2 == pytest.approx(4.0, rel=0.1)

    def test_validation(self):
        with pytest.raises(ValidationError):
            orthogonal_derivative(math.sin, 0, 0.0, 0.0, 0.1, 0.0)
        with pytest.raises(ValidationError):
            orthogonal_derivative(math.sin, 1, -1.5, 0.0, 0.1, 0.0)
        with pytest.raises(ValidationError):
            orthogonal_derivative(math.sin, 1, 0.0, 0.0, -0.1, 0.0)


class TestApplyKernel:
    def test_exponential_eigenfunction(self):
        """e^(-x) is an eigenfunction with eigenvalue 1 in the upper-limit
        convention, up to the O(delta^2) scheme error."""
        f = lambda t: math.exp(-t)
        p = JacobiKernelParams(alpha=0.0, beta=0.0, n=1, nu=0.5, delta=0.2)
        out = apply_kernel(f, p, 0.3)
        assert out.value == pytest.approx(math.exp(-0.3), rel=1e-2)
        assert out.tail_bound < 1e-10

    def test_scheme_error_is_second_order(self):
        f = lambda t: math.exp(-t)
        errs = []
        for delta in (0.4, 0.2):
            p = JacobiKernelParams(alpha=0.0, beta=0.0, n=1, nu=0.5, delta=delta)
            errs.append(apply_kernel(f, p, 0.3).value - math.exp(-0.3))
        assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.1)

    def test_agrees_with_double_integral_oracle(self):
        """Dual route: pointwise upper-limit integral pushed through the
        integer-order derivative, no interchange of integrals."""
        f = lambda t: math.exp(-t)
        p = JacobiKernelParams(alpha=0.0, beta=0.0, n=1, nu=0.5, delta=0.4)
        assert apply_kernel(f, p, 0.3).value == pytest.approx(
            oracle_double_integral(f, p, 0.3), rel=1e-10
        )

    def test_integer_order_collapses_to_weighted_derivative(self):
        f = lambda t: math.exp(-t)
        p = JacobiKernelParams(alpha=0.0, beta=0.0, n=1, nu=1.0, delta=0.3)
        out = apply_kernel(f, p, 0.3)
        assert out.tail_bound == 0.0
        # (-d/dx)^n route: opposite sign from the plain derivative
        assert out.value == pytest.approx(
            -orthogonal_derivative(f, 1, 0.0, 0.0, 0.3, 0.3), rel=1e-12
        )

    def test_growth_guard(self):
        p = JacobiKernelParams(alpha=0.0, beta=0.0, n=1, nu=0.5, delta=1.0)
        with pytest.raises(GrowthError):
            apply_kernel(math.exp, p, 0.0)

    def test_tail_cutoff_reports_remainder(self):
        f = lambda t: 1.0 / (1.0 + t * t)
        p = JacobiKernelParams(alpha=0.0, beta=0.0, n=1, nu=0.5, delta=1.0)
        cut = apply_kernel(f, p, 0.0, tail_cutoff=4.0)
        full = apply_kernel(f, p, 0.0)
        assert cut.tail_bound > full.tail_bound
        assert cut.value == pytest.approx(full.value, abs=5.0 * cut.tail_bound)

    def test_nonpositive_order_rejected(self):
        p = JacobiKernelParams(alpha=0.0, beta=0.0, n=1, nu=-0.5, delta=1.0)
        with pytest.raises(ValidationError):
            apply_kernel(math.exp, p, 0.0)
        with pytest.raises(ValidationError):
            apply_kernel(math.cos, LEGENDRE_HALF, 0.0, tail_cutoff=0.5)
