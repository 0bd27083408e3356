"""Foundation numerics: dense complex matrices, general eigendecomposition,
polynomial interpolation and root extraction.

Matrices are plain ``numpy.ndarray`` of complex128 in row-major order.
Polynomials are :class:`CPoly`, coefficients stored lowest order first.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DegreeZero, NonConvergence, SingularSystem

DIM_CAP = 256
COND_CAP = 1e12


@dataclass(frozen=True)
class CPoly:
    """Polynomial c_0 + c_1 x + ... + c_d x^d with complex coefficients."""

    coeffs: tuple

    def __call__(self, x):
        return np.polynomial.polynomial.polyval(x, np.asarray(self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def deriv(self) -> "CPoly":
        der = np.polynomial.polynomial.polyder(np.asarray(self.coeffs))
        return CPoly(tuple(der))

    def normalized(self, rtol: float = 1e-12) -> "CPoly":
        """Trim trailing coefficients smaller than rtol * max|c_k|."""
        c = np.asarray(self.coeffs)
        scale = np.max(np.abs(c))
        if scale == 0.0:
            return CPoly((0j,))
        keep = len(c)
        while keep > 1 and abs(c[keep - 1]) < rtol * scale:
            keep -= 1
        return CPoly(tuple(c[:keep]))


@dataclass(frozen=True)
class EigenTriple:
    value: complex
    right: np.ndarray
    left: np.ndarray  # transpose-sense: left @ m == value * left


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(a, b)


def kron_chain(*ops) -> np.ndarray:
    out = np.asarray(ops[0], dtype=complex)
    for op in ops[1:]:
        out = np.kron(out, op)
    return out


def eig_general(m: np.ndarray, dim_cap: int = DIM_CAP) -> list[EigenTriple]:
    """Eigendecomposition of a general (non-Hermitian) complex matrix.

    Returns biorthogonally matched (value, right, left) triples sorted
    lexicographically by (Re, Im) of the eigenvalue.  Left vectors satisfy
    ``left @ m == value * left`` (transpose sense, no conjugation).
    Nearly equal eigenvalues are re-paired blockwise so that
    ``left_i @ right_j`` stays diagonal-dominant even for degenerate spectra.
    """
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("eig_general expects a square matrix")
    if n > dim_cap:
        raise ValueError(f"dimension {n} exceeds cap {dim_cap}")
    try:
        vals, vl, vr = scipy.linalg.eig(m, left=True, right=True)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NonConvergence(str(exc)) from exc
    if not np.all(np.isfinite(vals)):
        raise NonConvergence("non-finite eigenvalues returned")
    # scipy's left vectors are conjugate-sense (vl^H m = w vl^H); transpose
    # sense needs the conjugate.
    wl = vl.conj()

    order = np.lexsort((vals.imag, vals.real))
    vals = vals[order]
    vr = vr[:, order]
    wl = wl[:, order]

    scale = max(np.max(np.abs(vals)), 1.0)
    blocks = _cluster(vals, 1e-8 * scale)
    for blk in blocks:
        if len(blk) == 1:
            continue
        overlap = wl[:, blk].T @ vr[:, blk]
        try:
            wl[:, blk] = wl[:, blk] @ np.linalg.inv(overlap).T
        except np.linalg.LinAlgError as exc:
            raise NonConvergence("defective eigenvalue block") from exc
    return [EigenTriple(vals[i], vr[:, i], wl[:, i]) for i in range(n)]


def _cluster(vals, tol):
    """Group indices of sorted values into clusters of mutual distance < tol."""
    blocks = []
    current = [0]
    for i in range(1, len(vals)):
        if abs(vals[i] - vals[current[-1]]) < tol:
            current.append(i)
        else:
            blocks.append(current)
            current = [i]
    blocks.append(current)
    return blocks


def fit_poly(samples, degree: int) -> CPoly:
    """Interpolate a degree-`degree` polynomial through d+1 samples (x, y).

    Uses an exact Vandermonde solve on the first d+1 samples; raises
    SingularSystem when the abscissae are too close for a reliable
    solution.  Any extra samples must be consistent with the fit.
    """
    samples = list(samples)
    if len(samples) < degree + 1:
        raise ValueError(f"need {degree + 1} samples for degree {degree}")
    xs = np.array([s[0] for s in samples[: degree + 1]], dtype=complex)
    ys = np.array([s[1] for s in samples[: degree + 1]], dtype=complex)
    vand = np.vander(xs, degree + 1, increasing=True)
    if degree >= 1 and np.linalg.cond(vand) > COND_CAP:
        raise SingularSystem("interpolation abscissae nearly coincide")
    coeffs = np.linalg.solve(vand, ys)
    poly = CPoly(tuple(coeffs))
    scale = max(np.max(np.abs(ys)), 1e-300)
    for x, y in samples[degree + 1:]:
        if abs(poly(x) - y) > 1e-9 * max(abs(y), scale):
            raise ValueError("held-out samples inconsistent with degree")
    return poly


def poly_roots(p: CPoly) -> list[complex]:
    """Roots of the monic-normalized polynomial via companion-matrix eigenvalues."""
    q = p.normalized()
    if q.degree < 1:
        raise DegreeZero("cannot extract roots of a constant polynomial")
    roots = np.polynomial.polynomial.polyroots(np.asarray(q.coeffs))
    return sorted((complex(r) for r in roots), key=lambda z: (z.real, z.imag))


def from_roots(roots, leading: complex = 1.0) -> CPoly:
    coeffs = np.polynomial.polynomial.polyfromroots(np.asarray(roots, dtype=complex))
    return CPoly(tuple(coeffs * leading))
