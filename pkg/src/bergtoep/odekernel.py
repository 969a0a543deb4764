"""Closed-form kernel basis for conj(z)^m + alpha z^m + beta.

When the quadratic alpha t^2 + beta t + 1 has two distinct roots t_0, t_1
with |t_i| > 1, the kernel of the operator is m-dimensional and is carried
by the integrating factor

    G_0(z) = z^m (z^m - t_0)^{e_1} / (z^m - t_1)^{e_2},
    e_1 = t_1/(t_0 - t_1),   e_2 = t_0/(t_0 - t_1)   (e_2 - e_1 = 1),

whose logarithmic derivative is m / (z (alpha z^{2m} + beta z^m + 1)).
The basis functions are

    g_1(z) = G_0(z) / (alpha z (z^m - t_0)(z^m - t_1)),
    g_j(z) = -g_1(z) * int_0^z t^{j-2} / G_0(t) dt,   2 <= j <= m,

with the integral's additive constant fixed to zero (the constant
direction is g_1 itself).  Powers are taken with the branch continuous on
the unit disk: since |t_i| > 1, the factor 1 - z^m/t_i stays in the right
half plane and the principal logarithm applies, anchored at Log(-t_i)
for z = 0.

The integrand t^{j-2}/G_0(t) = t^{j-2-m} H(t) has H analytic in t^m, so
its only singular monomial is H(0) t^{j-2-m}; that part is integrated in
closed form and the remainder t^{j-2-m}(H(t) - H(0)) goes through
adaptive Gauss-Kronrod quadrature along the radial segment, with the
difference H - H(0) evaluated by a complex expm1 to avoid cancellation
near the origin.
"""

from __future__ import annotations

import cmath
import math
from typing import Optional, Sequence

import numpy as np

from . import cpoly, finsect
from .symbols import SpecialFamilySymbol


class QuadratureError(Exception):
    """Adaptive quadrature failed to meet its tolerance."""


class ExtractionError(Exception):
    """Coefficient extraction would amplify noise beyond usefulness."""


# 15-point Kronrod nodes/weights on [-1, 1] with the embedded 7-point Gauss rule
_XK = np.array([
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,
    0.207784955007898, 0.405845151377397, 0.586087235467691,
    0.741531185599394, 0.864864423359769, 0.949107912342759,
    0.991455371120813,
])
_WK = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979,
    0.022935322010529,
])
_WG = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469,
    0.381830050505119, 0.279705391489277, 0.129484966168870,
])
_GAUSS_IDX = np.arange(1, 15, 2)


def _gk_panel(f, a: float, b: float):
    h = 0.5 * (b - a)
    x = a + h * (_XK + 1.0)
    fx = f(x)
    k15 = h * np.sum(_WK * fx)
    g7 = h * np.sum(_WG * fx[_GAUSS_IDX])
    return k15, abs(k15 - g7)


def adaptive_gk(f, a: float = 0.0, b: float = 1.0, tol: float = 1e-12,
                max_panels: int = 512) -> complex:
    """Adaptive Gauss-Kronrod integral of a complex-valued f on [a, b]."""
    val, err = _gk_panel(f, a, b)
    panels = [(a, b, val, err)]
    for _ in range(max_panels):
        total_err = sum(p[3] for p in panels)
        if total_err <= tol:
            return sum(p[2] for p in panels)
        worst = max(range(len(panels)), key=lambda i: panels[i][3])
        a0, b0, _, _ = panels.pop(worst)
        mid = 0.5 * (a0 + b0)
        panels.append((a0, mid, *_gk_panel(f, a0, mid)))
        panels.append((mid, b0, *_gk_panel(f, mid, b0)))
    raise QuadratureError(f"did not reach tol {tol:.1e} within {max_panels} panels")


def _cexpm1(w: np.ndarray) -> np.ndarray:
    """exp(w) - 1 without cancellation for small complex w."""
    w = np.asarray(w, dtype=complex)
    out = np.empty_like(w)
    small = np.abs(w) < 0.5
    out[~small] = np.exp(w[~small]) - 1.0
    ws = w[small]
    acc = np.zeros_like(ws)
    # nested Horner for sum_{k>=1} w^k/k!, 18 terms covers |w| < 0.5 to eps
    for k in range(18, 0, -1):
        acc = ws / k * (1.0 + acc)
    out[small] = acc
    return out


def _clog1p(w: np.ndarray) -> np.ndarray:
    """log(1 + w) without cancellation for small complex w."""
    w = np.asarray(w, dtype=complex)
    out = np.empty_like(w)
    small = np.abs(w) < 0.25
    out[~small] = np.log(1.0 + w[~small])
    ws = w[small]
    acc = np.zeros_like(ws)
    # sum_{k>=1} (-1)^{k+1} w^k / k by nested Horner, 40 terms for |w| < 1/4
    for k in range(40, 0, -1):
        acc = ws * (1.0 / k - acc)
    out[small] = acc
    return out


class OdeKernelBasis:
    """The data (roots, exponents, branch anchors) behind g_1..g_m.

    Construction checks the factorization alpha (t - t_0)(t - t_1) of
    alpha t^2 + beta t + 1, that the roots are distinct and of modulus
    greater than one, and records the chosen principal m-th roots z_0,
    z_1 (only t_i = z_i^m enters any formula).
    """

    def __init__(self, m: int, alpha: complex, beta: complex):
        if m < 1:
            raise ValueError("m must be positive")
        alpha = complex(alpha)
        beta = complex(beta)
        if alpha == 0:
            raise ValueError("alpha must be nonzero for the closed-form basis")
        t0, t1 = cpoly.roots(cpoly.CPoly.make([1.0, beta, alpha]))
        if abs(t0 - t1) <= 1e-12 * max(abs(t0), abs(t1)):
            raise ValueError("repeated root t_0 = t_1 is not supported")
        if min(abs(t0), abs(t1)) <= 1.0:
            raise ValueError(
                f"roots must lie outside the closed unit disk, got moduli "
                f"{abs(t0):.6f}, {abs(t1):.6f}")
        self.m = m
        self.alpha = alpha
        self.beta = beta
        self.z0m = t0
        self.z1m = t1
        self.z0 = t0 ** (1.0 / m)
        self.z1 = t1 ** (1.0 / m)
        self.e1 = t1 / (t0 - t1)
        self.e2 = t0 / (t0 - t1)
        # factorization sanity: alpha (t-t0)(t-t1) == alpha t^2 + beta t + 1
        scale = max(1.0, abs(alpha), abs(beta))
        if abs(alpha * t0 * t1 - 1.0) > 1e-10 * scale or \
           abs(alpha * (t0 + t1) + beta) > 1e-10 * scale:
            raise cpoly.NumericIntegrityError("quadratic factorization check failed")
        if abs(self.e2 - self.e1 - 1.0) > 1e-9:
            raise cpoly.NumericIntegrityError("exponent pair does not differ by 1")
        # H(0) = (-t0)^{-e1} (-t1)^{e2} with principal anchors
        self._h0 = cmath.exp(-self.e1 * cmath.log(-t0) + self.e2 * cmath.log(-t1))

    @property
    def exponents(self) -> tuple[complex, complex]:
        return (self.e1, self.e2)

    def seed_delta(self, seed: Sequence[complex]) -> list[complex]:
        """Forcing polynomial of a seed block: coefficient (m-1-l) d_l of z^l."""
        if len(seed) != self.m:
            raise ValueError("seed must have length m")
        return [(self.m - 1 - l) * complex(d) for l, d in enumerate(seed[: self.m - 1])]

    # -- branch-consistent building blocks -------------------------------

    def _v(self, zm: np.ndarray) -> np.ndarray:
        """V(z) = exp(e1 log(1 - z^m/t0) - e2 log(1 - z^m/t1)), V(0) = 1."""
        return np.exp(self.e1 * np.log(1.0 - zm / self.z0m)
                      - self.e2 * np.log(1.0 - zm / self.z1m))

    def _dh(self, t: np.ndarray) -> np.ndarray:
        """H(t) - H(0) where 1/G_0 = t^{-m} H(t), cancellation-free."""
        tm = np.asarray(t, dtype=complex) ** self.m
        psi = (-self.e1 * _clog1p(-tm / self.z0m)
               + self.e2 * _clog1p(-tm / self.z1m))
        return self._h0 * _cexpm1(psi)

    def g0_eval(self, z):
        """The integrating factor G_0 at z in the open unit disk."""
        z = np.asarray(z, dtype=complex)
        if np.any(np.abs(z) >= 1.0):
            raise ValueError("G_0 is defined on |z| < 1")
        zm = z**self.m
        c = 1.0 / self._h0
        out = zm * c * self._v(zm)
        return out if out.shape else complex(out)

    def _g1(self, z: np.ndarray) -> np.ndarray:
        zm = z**self.m
        c = 1.0 / self._h0
        return (z ** (self.m - 1) * c * self._v(zm)
                / (self.alpha * (zm - self.z0m) * (zm - self.z1m)))

    def eval_basis(self, j: int, z, quad_tol: float = 1e-12):
        """g_j at points z inside the unit disk, 1 <= j <= m."""
        if not 1 <= j <= self.m:
            raise ValueError(f"j must lie in 1..{self.m}")
        z = np.asarray(z, dtype=complex)
        scalar = z.shape == ()
        z = np.atleast_1d(z)
        if np.any(np.abs(z) >= 1.0):
            raise ValueError("basis functions are evaluated on |z| < 1")
        if j == 1:
            out = self._g1(z)
            return complex(out[0]) if scalar else out

        p = j - 2 - self.m            # singular monomial exponent, always <= -2
        out = np.empty(len(z), dtype=complex)
        g1v = self._g1(z)
        zm = z**self.m
        v = self._v(zm)
        for idx, zv in enumerate(z):
            if zv == 0:
                q = 0j
            else:
                def integrand(s, zv=zv):
                    t = zv * s
                    return (t ** p) * self._dh(t) * zv
                q = adaptive_gk(integrand, 0.0, 1.0, tol=quad_tol)
            # g1 * H(0) * z^{j-1-m} collapses: the branch constants cancel
            head = (zv ** (j - 2) * v[idx]
                    / ((j - 1 - self.m) * self.alpha
                       * (zm[idx] - self.z0m) * (zm[idx] - self.z1m)))
            out[idx] = -(head + g1v[idx] * q)
        return complex(out[0]) if scalar else out

    def symbol(self) -> SpecialFamilySymbol:
        return SpecialFamilySymbol(self.m, self.alpha, self.beta, 1.0 + 0j)


def taylor_coefficients(basis: OdeKernelBasis, j: int, K: int,
                        samples: Optional[int] = None, radius: float = 0.9,
                        quad_tol: float = 1e-12) -> np.ndarray:
    """First K Taylor coefficients of g_j by FFT on a sampling circle.

    The k-th coefficient is amplified by radius^-k, so eval noise of size
    eps reaches eps * radius^-(K-1) at the top; the call refuses
    configurations where that exceeds 1e-4.
    """
    if samples is None:
        samples = 4 * K
    if samples < 2 * K:
        raise ValueError("need at least 2K sample points")
    amp = radius ** (-(K - 1))
    if quad_tol * amp > 1e-4:
        raise ExtractionError(
            f"amplification {amp:.3e} at k={K - 1} with eval tol {quad_tol:.1e}")
    zs = radius * np.exp(2j * np.pi * np.arange(samples) / samples)
    vals = basis.eval_basis(j, zs, quad_tol=quad_tol)
    hat = np.fft.fft(vals) / samples
    k = np.arange(K)
    return hat[:K] / radius**k


def residual_check(basis: OdeKernelBasis, j: int, K: int = 50,
                   samples: Optional[int] = None, radius: float = 0.9) -> float:
    """Relative Bergman-norm residual of T_phi g_j on the first K-2m coefficients.

    g_j is sampled on a circle, its Taylor coefficients extracted, and the
    exact coefficient operator applied; only indices unaffected by the
    truncation are scored.
    """
    coeffs = taylor_coefficients(basis, j, K, samples, radius)
    out = finsect.apply_symbol(basis.symbol(), coeffs)
    cut = K - 2 * basis.m
    if cut < 1:
        raise ValueError("K too small relative to m")
    w = 1.0 / (np.arange(K) + 1.0)
    num = math.sqrt(float(np.sum(np.abs(out[:cut]) ** 2 * w[:cut])))
    den = math.sqrt(float(np.sum(np.abs(coeffs) ** 2 * w)))
    return num / den
