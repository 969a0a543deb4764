"""Complex polynomial arithmetic and zero localization at the unit circle.

Polynomials are stored densely by ascending power.  Zero counting inside
the open unit disk uses the Schur-Cohn determinant test: for

    p(z) = a_n z^n + ... + a_1 z + a_0

build, for k = 1..n, the upper triangular k x k matrices

    A_k[i, j] = a_{j-i}            (first row a_0, a_1, ..., a_{k-1}),
    B_k[i, j] = conj(a_{n-j+i})    (first row conj(a_n), ..., conj(a_{n-k+1})),

and the determinants M_k = det(B_k* B_k - A_k* A_k), which are real because
the matrix is Hermitian.  When every M_k is nonzero the number of zeros of
p inside the unit disk equals n - N(1, M_1, ..., M_n), where N counts sign
changes after dropping zero entries.  Near-vanishing M_k means zeros close
to the circle; the count is then reported as indeterminate rather than
guessed.

The root finder is an Ehrlich-Aberth simultaneous iteration with a
companion-matrix fallback, returning roots sorted by (modulus, argument).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np


class RootFindingError(Exception):
    """Raised when the root finder cannot meet the residual tolerance."""


class NumericIntegrityError(Exception):
    """Raised when a quantity that must be real/Hermitian is visibly not."""


@dataclass(frozen=True)
class CPoly:
    """Dense complex polynomial, coefficients by ascending power."""

    coeffs: tuple[complex, ...]

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise ValueError("CPoly needs at least one coefficient")
        for c in self.coeffs:
            if not (math.isfinite(c.real) and math.isfinite(c.imag)):
                raise ValueError("non-finite coefficient")

    @classmethod
    def make(cls, coeffs: Sequence[complex]) -> "CPoly":
        """Build with exact trailing zeros trimmed."""
        cs = [complex(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [0j]
        return cls(tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0

    def __call__(self, z: complex) -> complex:
        return eval_poly(self, z)

    def scale(self) -> float:
        return max(abs(c) for c in self.coeffs)


def eval_poly(p: CPoly, z: complex) -> complex:
    """Horner evaluation of p at z."""
    acc = 0j
    for a in reversed(p.coeffs):
        acc = acc * z + a
    return acc


def eval_poly_many(coeffs: Sequence[complex], z: np.ndarray) -> np.ndarray:
    """Horner evaluation at an array of points."""
    z = np.asarray(z, dtype=complex)
    acc = np.zeros_like(z)
    for a in reversed(list(coeffs)):
        acc = acc * z + a
    return acc


def derivative(p: CPoly) -> CPoly:
    if p.degree == 0:
        return CPoly.make([0j])
    return CPoly.make([k * c for k, c in enumerate(p.coeffs)][1:])


def _horner_with_derivative(desc: np.ndarray, z: np.ndarray):
    p = np.zeros_like(z)
    dp = np.zeros_like(z)
    for a in desc:
        dp = dp * z + p
        p = p * z + a
    return p, dp


def _solve_quadratic(a: complex, b: complex, c: complex) -> list[complex]:
    # roots of a z^2 + b z + c, stable branch choice in the quadratic formula
    if c == 0:
        return [0j, -b / a]
    disc = b * b - 4 * a * c
    s = cmath.sqrt(disc)
    if abs(b + s) < abs(b - s):
        s = -s
    q = -(b + s) / 2
    return [q / a, c / q]


def _aberth(desc: np.ndarray, max_iter: int = 80) -> Optional[np.ndarray]:
    n = len(desc) - 1
    an, a0 = desc[0], desc[-1]
    r0 = abs(a0 / an) ** (1.0 / n) if a0 != 0 else 0.5
    r0 = min(max(r0, 1e-6), 1e6)
    k = np.arange(n)
    # spiral start breaks symmetric stagnation
    z = r0 * (1.0 + 0.05 * k / max(n - 1, 1)) * np.exp(1j * (2 * np.pi * k / n + 0.4))
    for _ in range(max_iter):
        p, dp = _horner_with_derivative(desc, z)
        dp = np.where(np.abs(dp) < 1e-300, 1e-300, dp)
        w = p / dp
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            sums = np.sum(1.0 / diff, axis=1) - 1.0 / np.diagonal(diff)
        denom = 1.0 - w * sums
        denom = np.where(np.abs(denom) < 1e-300, 1e-300, denom)
        step = w / denom
        z = z - step
        if not np.all(np.isfinite(z)):
            return None
        if np.all(np.abs(step) <= 1e-14 * (1.0 + np.abs(z))):
            return z
    return z


def _newton_polish(desc: np.ndarray, roots: np.ndarray, rounds: int = 2) -> np.ndarray:
    z = roots.copy()
    for _ in range(rounds):
        p, dp = _horner_with_derivative(desc, z)
        mask = np.abs(dp) > 1e-200
        step = np.zeros_like(z)
        step[mask] = p[mask] / dp[mask]
        cand = z - step
        pc, _ = _horner_with_derivative(desc, cand)
        better = np.abs(pc) < np.abs(p)
        z = np.where(better, cand, z)
    return z


def roots(p: CPoly, tol: float = 1e-9) -> list[complex]:
    """All roots of p with multiplicity, sorted by (modulus, argument).

    Residuals satisfy |p(root)| <= tol * max|a_k|; otherwise a
    RootFindingError is raised (after the companion-matrix fallback).
    """
    if p.is_zero:
        raise ValueError("zero polynomial has no well-defined roots")
    if p.degree < 1:
        raise ValueError("degree must be at least 1")

    cs = list(p.coeffs)
    zero_count = 0
    while cs[0] == 0 and len(cs) > 1:
        cs.pop(0)
        zero_count += 1
    found: list[complex] = [0j] * zero_count

    deg = len(cs) - 1
    if deg >= 1:
        scale = max(abs(c) for c in cs)
        norm = [c / scale for c in cs]
        if deg == 1:
            found.append(-norm[0] / norm[1])
        elif deg == 2:
            found.extend(_solve_quadratic(norm[2], norm[1], norm[0]))
        else:
            desc = np.array(norm[::-1], dtype=complex)
            # a small leading coefficient means large roots; those are the
            # small roots of the reversed polynomial, where evaluation is
            # far better conditioned
            reverse = abs(norm[-1]) < abs(norm[0])
            work = desc[::-1].copy() if reverse else desc
            cand = _aberth(work)
            if cand is not None:
                cand = _newton_polish(work, cand)

            def _residual(zs):
                return np.max(np.abs(_horner_with_derivative(desc, zs)[0]))

            def _back(zs):
                if not reverse:
                    return zs
                return np.where(np.abs(zs) < 1e-300, 1e300, 1.0 / zs)

            resid = _residual(_back(cand)) if cand is not None else None
            if cand is None or resid > tol:
                cand = np.roots(work)
                cand = _newton_polish(work, np.asarray(cand, dtype=complex))
                resid = _residual(_back(cand))
                if resid > tol:
                    raise RootFindingError(
                        f"residual {resid:.3e} exceeds tol {tol:.3e} for degree {deg}"
                    )
            found.extend(complex(z) for z in _back(cand))

    found.sort(key=lambda z: (abs(z), cmath.phase(z)))
    return found


def sign_variations(seq: Sequence[float]) -> int:
    """Sign changes in a real sequence, ignoring zero entries."""
    signs = [1 if x > 0 else -1 for x in seq if x != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


@dataclass(frozen=True)
class SchurCohnReport:
    """Determinants M_1..M_n, the sign-variation count, and the zero count.

    in_disk_count is None when some |M_k| fell below the degeneracy
    tolerance (zeros too close to the circle for the test to resolve).
    """

    dets: tuple[float, ...]
    variations: int
    in_disk_count: Optional[int]

    @property
    def is_indeterminate(self) -> bool:
        return self.in_disk_count is None


def schur_cohn(p: CPoly, degeneracy_tol: float = 1e-10) -> SchurCohnReport:
    """Count zeros of p inside the unit disk by the determinant test.

    The reported M_k come from the raw coefficients; the degeneracy test
    divides M_k by scale^(2k) with scale = max|a_j|, so degeneracy_tol is
    an absolute threshold on coefficient-normalized polynomials and the
    verdict is invariant under scaling p by a nonzero constant.
    """
    n = p.degree
    if n < 1:
        raise ValueError("schur_cohn requires degree >= 1")
    if p.coeffs[-1] == 0:
        raise ValueError("leading coefficient must be nonzero")
    a = np.array(p.coeffs, dtype=complex)
    scale = float(np.max(np.abs(a)))

    dets: list[float] = []
    for k in range(1, n + 1):
        A = np.zeros((k, k), dtype=complex)
        B = np.zeros((k, k), dtype=complex)
        for i in range(k):
            A[i, i:] = a[: k - i]
            B[i, i:] = np.conj(a[n::-1][: k - i])
        H = B.conj().T @ B - A.conj().T @ A
        hmax = float(np.max(np.abs(H))) if H.size else 0.0
        asym = float(np.max(np.abs(H - H.conj().T)))
        if asym > 1e-9 * hmax + 1e-12 * scale**2:
            raise NumericIntegrityError(f"M_{k} matrix not Hermitian: asymmetry {asym:.3e}")
        H = (H + H.conj().T) / 2
        det = complex(np.linalg.det(H))
        if abs(det.imag) > 1e-9 * abs(det) + 1e-12 * scale ** (2 * k):
            raise NumericIntegrityError(f"M_{k} determinant not real: {det!r}")
        dets.append(det.real)

    variations = sign_variations([1.0] + dets)
    if any(abs(m) / scale ** (2 * k) <= degeneracy_tol
           for k, m in enumerate(dets, start=1)):
        return SchurCohnReport(tuple(dets), variations, None)
    count = n - variations
    if not 0 <= count <= n:
        raise NumericIntegrityError(f"zero count {count} outside [0, {n}]")
    return SchurCohnReport(tuple(dets), variations, count)


def distinct_moduli(root_list: Sequence[complex], rel_tol: float = 1e-6) -> bool:
    """True when all pairwise modulus gaps exceed rel_tol * max modulus."""
    if len(root_list) == 0:
        raise ValueError("empty root list")
    mods = sorted(abs(z) for z in root_list)
    top = mods[-1]
    if top == 0:
        return len(mods) == 1
    return all(b - a > rel_tol * top for a, b in zip(mods, mods[1:]))


def to_json_coeffs(p: CPoly) -> list[list[float]]:
    """JSON form: array of [re, im] pairs, ascending powers."""
    return [[c.real, c.imag] for c in p.coeffs]


def from_json_coeffs(data: Sequence[Sequence[float]]) -> CPoly:
    return CPoly.make([complex(re, im) for re, im in data])
