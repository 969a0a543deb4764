"""Exact coefficient action of T_phi and finite truncation matrices.

On the Bergman space the monomials satisfy ||z^k||^2 = 1/(k+1), and the
projection of conj(z)^s z^k is ((k-s+1)/(k+1)) z^{k-s} for k >= s and 0
otherwise.  For a symbol with anti-analytic terms w_s conj(z)^s and
analytic terms a_i z^i this gives the exact coefficient map

    c_k = sum_s w_s ((k+1)/(s+k+1)) d_{s+k} + sum_i a_i d_{k-i},

which apply_symbol implements on truncated coefficient lists (indices
beyond the truncation contribute zero, so only outputs up to
K - max_shift are exact).

Truncations are assembled in the orthonormal basis e_k = sqrt(k+1) z^k:
the conj(z)^s band has entries sqrt(k-s+1)/sqrt(k+1) at (k-s, k) and the
z^s band sqrt(k+1)/sqrt(k+s+1) at (k+s, k).  Spectral quantities of
truncations are heuristic evidence only; finite sections of non-normal
Toeplitz operators may have spurious near-kernels.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .symbols import SpecialFamilySymbol, Symbol


def _terms(sym: Symbol):
    """(anti_terms, ana_terms) as lists of (shift, coefficient)."""
    if isinstance(sym, SpecialFamilySymbol):
        anti = [(sym.m, sym.gamma)] if sym.gamma != 0 else []
        ana = [(s, w) for s, w in ((sym.m, sym.alpha), (0, sym.beta)) if w != 0]
        return anti, ana
    anti = [(sym.m, 1.0 + 0j)]
    anti += [(sym.m - i, c) for i, c in enumerate(sym.anti, start=1) if c != 0]
    ana = [(i, a) for i, a in enumerate(sym.ana) if a != 0]
    return anti, ana


def apply_symbol(sym: Symbol, d: Sequence[complex]) -> np.ndarray:
    """Coefficient action of T_phi on d_0..d_K, truncated at K."""
    d = np.asarray(list(d), dtype=complex)
    K1 = len(d)
    out = np.zeros(K1, dtype=complex)
    anti, ana = _terms(sym)
    k = np.arange(K1, dtype=float)
    for s, w in anti:
        if s < K1:
            out[: K1 - s] += w * ((k[: K1 - s] + 1.0) / (k[: K1 - s] + s + 1.0)) * d[s:]
    for s, w in ana:
        if s < K1:
            out[s:] += w * d[: K1 - s]
    return out


def tstar_zm_check(m: int, g_coeffs: Sequence[complex]) -> float:
    """Max pairwise discrepancy between three routes to T_{z^m}^* g.

    Requires g to vanish to order m at 0.  The routes are the direct
    projection rule, the integral z^{-(m+1)} int_0^z [w g' - (m-1) g] dw,
    and g/z^m - m z^{-(m+1)} int_0^z g, all evaluated coefficientwise.
    """
    d = np.asarray(list(g_coeffs), dtype=complex)
    if m < 1:
        raise ValueError("m must be positive")
    if len(d) <= m:
        raise ValueError("need coefficients beyond index m")
    if np.any(d[:m] != 0):
        raise ValueError("g must have an m-fold zero at the origin")
    K1 = len(d)
    j = np.arange(K1, dtype=float)

    # route 1: projection rule, c_k = ((k+1)/(m+k+1)) d_{m+k}
    k = np.arange(K1 - m, dtype=float)
    r1 = ((k + 1.0) / (m + k + 1.0)) * d[m:]

    # route 2: [w g' - (m-1) g], integrate, shift down by m+1
    wgp = j * d
    top = wgp - (m - 1) * d
    integ = top / (j + 1.0)          # coefficient of z^{j+1}
    r2 = integ[m:]                   # z^{j+1} / z^{m+1} = z^{j-m}

    # route 3: g/z^m - (m/z^{m+1}) int_0^z g
    gshift = d[m:]
    anti = d / (j + 1.0)             # int g, coefficient of z^{j+1}
    r3 = gshift - m * anti[m:]

    return float(max(np.max(np.abs(r1 - r2)), np.max(np.abs(r1 - r3)),
                     np.max(np.abs(r2 - r3))))


@dataclass(frozen=True)
class ToeplitzTruncation:
    """n x n section of T_phi in the orthonormal basis e_k = sqrt(k+1) z^k."""

    n: int
    entries: np.ndarray

    def to_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("row,col,re,im\n")
            for r in range(self.n):
                for c in range(self.n):
                    v = self.entries[r, c]
                    fh.write(f"{r},{c},{v.real!r},{v.imag!r}\n")

    def to_binary(self, path) -> None:
        """Row-major complex doubles, little-endian."""
        np.ascontiguousarray(self.entries).astype("<c16").tofile(path)


def truncation(sym: Symbol, n: int) -> ToeplitzTruncation:
    """Banded n x n truncation; needs n at least twice the bandwidth."""
    anti, ana = _terms(sym)
    band = max([s for s, _ in anti], default=0) + max([s for s, _ in ana], default=0)
    if n < max(2 * band, 2):
        raise ValueError(f"dimension {n} too small for bandwidth {band}")
    E = np.zeros((n, n), dtype=complex)
    k = np.arange(n, dtype=float)
    for s, w in anti:
        if s == 0:
            E += w * np.eye(n)
            continue
        rows = np.arange(n - s)
        E[rows, rows + s] += w * np.sqrt((k[: n - s] + 1.0) / (k[s:] + 1.0))
    for s, w in ana:
        if s == 0:
            E += w * np.eye(n)
            continue
        rows = np.arange(n - s)
        E[rows + s, rows] += w * np.sqrt((k[: n - s] + 1.0) / (k[s:] + 1.0))
    return ToeplitzTruncation(n, E)


def min_singular_value(T: Union[ToeplitzTruncation, np.ndarray], lam: complex = 0j) -> float:
    """Smallest singular value of T - lam*I (dense SVD)."""
    E = T.entries if isinstance(T, ToeplitzTruncation) else np.asarray(T, dtype=complex)
    A = E - complex(lam) * np.eye(E.shape[0])
    return float(np.linalg.svd(A, compute_uv=False)[-1])
