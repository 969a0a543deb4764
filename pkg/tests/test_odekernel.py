import numpy as np
import pytest

from bergtoep import kernel, odekernel
from bergtoep.odekernel import (OdeKernelBasis, adaptive_gk, residual_check,
                                taylor_coefficients)


def subspace_angle(A, B):
    qa, _ = np.linalg.qr(A.conj().T)
    qb, _ = np.linalg.qr(B.conj().T)
    sv = np.clip(np.linalg.svd(qa.conj().T @ qb, compute_uv=False), 0, 1)
    return float(np.arccos(sv.min()))


class TestQuadrature:
    def test_polynomial_exact(self):
        val = adaptive_gk(lambda s: 3 * s**2 + 1j * s, 0, 1)
        assert val == pytest.approx(1 + 0.5j, abs=1e-13)

    def test_oscillatory(self):
        val = adaptive_gk(lambda s: np.exp(40j * s), 0, 1)
        want = (np.exp(40j) - 1) / 40j
        assert abs(val - want) < 1e-11

    def test_panel_budget_exhaustion(self):
        with pytest.raises(odekernel.QuadratureError):
            adaptive_gk(lambda s: np.exp(400j * s), 0, 1, tol=1e-14, max_panels=2)


class TestBasisConstruction:
    def test_quarter_case_fields(self):
        b = OdeKernelBasis(1, 0.25, 0.0)
        assert sorted([abs(b.z0m), abs(b.z1m)]) == pytest.approx([2.0, 2.0])
        e1, e2 = b.exponents
        assert e2 - e1 == pytest.approx(1.0)
        assert {complex(e1), complex(e2)} == {(-0.5 + 0j), (0.5 + 0j)}

    def test_root_inside_rejected(self):
        with pytest.raises(ValueError):
            OdeKernelBasis(1, 2.0, 0.0)  # roots at modulus 1/sqrt(2)

    def test_repeated_root_rejected(self):
        with pytest.raises(ValueError):
            OdeKernelBasis(1, 0.25, 1.0)  # beta^2 = 4 alpha

    def test_alpha_zero_rejected(self):
        with pytest.raises(ValueError):
            OdeKernelBasis(1, 0.0, 0.5)

    def test_seed_delta(self):
        b = OdeKernelBasis(3, 0.1, 0.1)
        assert b.seed_delta([2.0, 3.0, 4.0]) == [4.0, 3.0]


class TestG0:
    def test_value_at_origin(self):
        for m, a, be in ((1, 0.25, 0.0), (2, 0.1, 0.1), (3, 0.2, 0.1j)):
            b = OdeKernelBasis(m, a, be)
            assert b.g0_eval(0.0) == 0

    def test_closed_form_value(self):
        b = OdeKernelBasis(1, 0.25, 0.0)
        assert b.g0_eval(0.5) == pytest.approx(0.5 / np.sqrt(4.25))
        zs = np.array([0.3 + 0.2j, -0.5j, 0.7])
        want = zs / np.sqrt(zs**2 + 4)
        assert np.allclose(b.g0_eval(zs), want, rtol=1e-12)

    def test_log_derivative_identity(self):
        gen = np.random.default_rng(8)
        h = 1e-6
        for m, a, be in ((1, 0.25, 0.0), (2, 0.1, 0.1), (3, 0.15, 0.05j)):
            b = OdeKernelBasis(m, a, be)
            pts = 0.8 * np.sqrt(gen.uniform(0.01, 1, 100)) * \
                np.exp(2j * np.pi * gen.uniform(size=100))
            num = (b.g0_eval(pts + h) - b.g0_eval(pts - h)) / (2 * h)
            lhs = num / b.g0_eval(pts)
            poly = a * pts ** (2 * m) + be * pts**m + 1.0
            rhs = m / (pts * poly)
            assert np.max(np.abs(lhs - rhs) / np.abs(rhs)) < 1e-8

    def test_domain_enforced(self):
        b = OdeKernelBasis(1, 0.25, 0.0)
        with pytest.raises(ValueError):
            b.g0_eval(1.2)


class TestBasisFunctions:
    def test_g1_quarter_closed_form(self):
        b = OdeKernelBasis(1, 0.25, 0.0)
        assert b.eval_basis(1, 0.0) == pytest.approx(0.5)
        zs = np.array([0.1, 0.4 - 0.3j, 0.8j])
        want = 4 * (zs**2 + 4) ** -1.5
        assert np.allclose(b.eval_basis(1, zs), want, rtol=1e-12)

    def test_j_out_of_range(self):
        b = OdeKernelBasis(1, 0.25, 0.0)
        with pytest.raises(ValueError):
            b.eval_basis(2, 0.1)

    def test_g1_coefficients_proportional_to_recursion(self):
        b = OdeKernelBasis(1, 0.25, 0.0)
        coeffs = taylor_coefficients(b, 1, 12)
        stream = kernel.closed_form_kernel_czn(1, 1, 0.25, 0, 11).coefficients()
        # (1 + z^2/4)^(-3/2) versus 4 (z^2+4)^(-3/2): ratio 1/2 throughout
        assert coeffs[0] == pytest.approx(0.5)
        assert np.allclose(coeffs, 0.5 * stream, rtol=0, atol=1e-9)

    def test_bounded_near_boundary(self):
        b = OdeKernelBasis(2, 0.1, 0.1)
        zs = 0.99 * np.exp(2j * np.pi * np.arange(32) / 32)
        for j in (1, 2):
            vals = b.eval_basis(j, zs)
            assert np.all(np.isfinite(vals))
            assert np.max(np.abs(vals)) < 1e3


class TestResiduals:
    def test_m1_quarter(self):
        b = OdeKernelBasis(1, 0.25, 0.0)
        assert residual_check(b, 1) <= 1e-6

    def test_m2_both_basis_functions(self):
        b = OdeKernelBasis(2, 0.1, 0.1)
        for j in (1, 2):
            assert residual_check(b, j) <= 1e-6

    def test_m3(self):
        b = OdeKernelBasis(3, 0.2, 0.1j)
        for j in (1, 2, 3):
            assert residual_check(b, j) <= 1e-6

    def test_extraction_guard(self):
        b = OdeKernelBasis(1, 0.25, 0.0)
        with pytest.raises(odekernel.ExtractionError):
            taylor_coefficients(b, 1, 400, radius=0.5)


class TestSpanAgreement:
    @pytest.mark.parametrize("m,alpha,beta", [
        (1, 0.25, 0.0),
        (2, 0.1, 0.1),
        (2, 0.3j, 0.2),
        (3, 0.2, 0.1j),
    ])
    def test_matches_recursion_span(self, m, alpha, beta):
        b = OdeKernelBasis(m, alpha, beta)
        K = 40
        ode = np.vstack([taylor_coefficients(b, j, K) for j in range(1, m + 1)])
        rec = np.vstack([
            kernel.recursion_special_family(m, alpha, beta, j, K - 1).coefficients()
            for j in range(m)
        ])
        assert subspace_angle(ode, rec) < 1e-6
