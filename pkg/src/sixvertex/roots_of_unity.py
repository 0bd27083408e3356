"""Checks special to anisotropies on the unit-circle lattice e^(2 l gamma) = 1:
operator truncation, inversion-type relations, and the Bethe-type equations
satisfied by the eigenvalue zeroes."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PoleEncountered
from .functional_system import EigenState, m_coeff, n_coeff, theorem_terms
from .vertex_core import EPS_GENERIC, ModelParams, b_operator
from .zeros import SpectralData


@dataclass(frozen=True)
class RootOfUnitySpec:
    """Anisotropy gamma = i pi k / l with gcd(k, l) = 1 and l >= 2."""

    l: int
    k: int = 1

    def __post_init__(self):
        if self.l < 2:
            raise ValueError("l = 1 is trivial (all creation operators vanish)")
        if math.gcd(self.k, self.l) != 1:
            raise ValueError("k and l must be coprime")

    @property
    def gamma(self) -> complex:
        return 1j * math.pi * self.k / self.l

    @property
    def unit_residual(self) -> float:
        return abs(np.exp(2 * self.l * self.gamma) - 1.0)


def check_truncation(spec: RootOfUnitySpec, lam: complex,
                     params: ModelParams) -> float:
    """Relative operator norm of the l-fold string of shifted B operators."""
    g = spec.gamma
    prod = np.eye(params.dim, dtype=complex)
    scale = 1.0
    for k in range(spec.l):
        bmat = b_operator(lam - k * g, params)
        prod = prod @ bmat
        scale *= np.linalg.norm(bmat, 2)
    return float(np.linalg.norm(prod, 2) / max(scale, 1e-300))


def _mu_product(lam, shifts, params: ModelParams) -> complex:
    """prod_k prod_s sinh(lam - mu_k + shift_s)."""
    out = 1.0 + 0j
    for m in params.mu:
        for s in shifts:
            out *= np.sinh(lam - m + s)
    return complex(out)


def check_inversion_l2(state: EigenState, params: ModelParams,
                       lam_draws) -> float:
    """Residual of the two-fold inversion relation at l = 2."""
    g = params.gamma
    worst = 0.0
    for lam in lam_draws:
        lhs = state.lam(lam) * state.lam(lam - g)
        rhs = _mu_product(lam, (0, 0), params) - _mu_product(lam, (g, -g), params)
        scale = max(abs(lhs), abs(rhs), 1e-300)
        worst = max(worst, abs(lhs - rhs) / scale)
    return worst


def bethe_lhs(w: complex, params: ModelParams, eps: float = EPS_GENERIC) -> complex:
    """Site product of the Bethe-type equation at one zero."""
    g = params.gamma
    out = 1.0 + 0j
    for m in params.mu:
        den1 = np.sinh(w - m + 2 * g)
        den2 = np.sinh(w - m)
        if abs(den1) < eps or abs(den2) < eps:
            raise PoleEncountered("zero collides with an inhomogeneity shift")
        out *= np.sinh(w - m + g) * np.sinh(w - m - g) / (den1 * den2)
    return complex(out)


def bethe_residual(data: SpectralData, spec: RootOfUnitySpec,
                   params: ModelParams, eps: float = EPS_GENERIC) -> list:
    """Per-zero residuals of the Bethe-type equation.

    The interaction product runs over every zero, including the self
    term (which contributes sinh(g)/sinh(-g) = -1), matching the closure
    of the equation against the eigenvalue-ratio form.
    """
    out = []
    g = params.gamma
    for i, wi in enumerate(data.zeros):
        lhs = bethe_lhs(wi, params, eps)
        prod = 1.0 + 0j
        for wj in data.zeros:
            den = np.sinh(wj - wi - g)
            if abs(den) < eps:
                raise PoleEncountered("colliding zeroes in interaction product")
            prod *= np.sinh(wj - wi + g) / den
        out.append(complex(lhs + prod))
    return out


def bethe_residual_l2(data: SpectralData, params: ModelParams,
                      eps: float = EPS_GENERIC) -> list:
    """Per-zero residuals of the l = 2 site-product equation (no
    interaction term); reported alongside the general form."""
    g = params.gamma
    out = []
    for wi in data.zeros:
        prod = 1.0 + 0j
        for m in params.mu:
            den = np.sinh(wi - m) ** 2
            if abs(den) < eps**2:
                raise PoleEncountered("zero collides with an inhomogeneity")
            prod *= np.sinh(wi - m + g) * np.sinh(wi - m - g) / den
        out.append(complex(prod - 1.0))
    return out


def q_function(lam: complex, params: ModelParams) -> complex:
    """Inhomogeneous driving term of the four-fold relation at l = 4."""
    g = params.gamma
    t1 = (np.sinh(3 * g) / np.sinh(g)) * _mu_product(lam, (0, 0, -2 * g, -2 * g), params)
    t2 = _mu_product(lam, (g, -3 * g, -g, -g), params)
    t3 = 2 * np.cosh(2 * g) * _mu_product(lam, (0, -2 * g, -g, -g), params)
    return complex(t1 - t2 - t3)


def check_l4_relation(state: EigenState, data: SpectralData,
                      params: ModelParams, lam_draws) -> dict:
    """The four-fold functional relation at l = 4, the periodicity of its
    driving term, and the eigenvalue-ratio equation at each zero."""
    g = params.gamma
    worst_rel = 0.0
    worst_q = 0.0
    for lam in lam_draws:
        lams = [state.lam(lam - j * g) for j in range(4)]
        lhs = lams[0] * lams[1] * lams[2] * lams[3]
        rhs = (
            lams[1] * lams[2] * (np.sinh(3 * g) / np.sinh(g))
            * _mu_product(lam, (0, -2 * g), params)
            - lams[2] * lams[3] * _mu_product(lam, (g, -g), params)
            - lams[0] * lams[1] * _mu_product(lam, (-g, -3 * g), params)
            - lams[0] * lams[3] * _mu_product(lam, (0, -2 * g), params)
            + q_function(lam, params)
        )
        scale = max(abs(lhs), abs(rhs), 1e-300)
        worst_rel = max(worst_rel, abs(lhs - rhs) / scale)
        q0 = q_function(lam, params)
        q1 = q_function(lam + g, params)
        worst_q = max(worst_q, abs(q1 - q0) / max(abs(q0), 1e-300))
    ratio_residuals = []
    for wi in data.zeros:
        lhs = bethe_lhs(wi, params)
        lam_minus = state.lam(wi - g)
        lam_plus = state.lam(wi + g)
        if abs(lam_plus) < 1e-300:
            raise PoleEncountered("eigenvalue vanishes at shifted zero")
        ratio_residuals.append(complex(lhs + lam_minus / lam_plus))
    return {
        "relation_residual": worst_rel,
        "q_periodicity": worst_q,
        "ratio_residuals": ratio_residuals,
    }


def l4_specialized_residuals(state: EigenState, data: SpectralData,
                             params: ModelParams) -> list:
    """Residuals of the four-fold relation specialized at each shifted zero,
    without the ratio reduction: the product-weighted combination of
    eigenvalues at w +- gamma must reproduce the driving term."""
    g = params.gamma
    out = []
    for wi in data.zeros:
        s02 = _mu_product(wi, (2 * g, 0), params)
        spm = _mu_product(wi, (g, -g), params)
        lhs = state.lam(wi - 2 * g) * (
            s02 * state.lam(wi - g) + spm * state.lam(wi + g)
        )
        q = q_function(wi + g, params)
        out.append(abs(lhs - q) / max(abs(q), abs(lhs), 1e-300))
    return out


def check_l3_relation(state: EigenState, params: ModelParams,
                      lam_draws) -> dict:
    """The three-fold functional relation at l = 3, in both its explicit
    form and its hierarchy-coefficient form."""
    g = params.gamma
    worst_explicit = 0.0
    worst_agree = 0.0
    for lam in lam_draws:
        lams = [state.lam(lam - j * g) for j in range(3)]
        lhs = lams[0] * lams[1] * lams[2]
        rhs = (
            -lams[0] * _mu_product(lam, (0, -2 * g), params)
            + lams[1] * 2 * np.cosh(g) * _mu_product(lam, (0, -g), params)
            - lams[2] * _mu_product(lam, (g, -g), params)
        )
        scale = max(abs(lhs), abs(rhs), 1e-300)
        worst_explicit = max(worst_explicit, abs(lhs - rhs) / scale)
        v3 = (lam, lam - g, lam - 2 * g)
        rhs_coeff = (
            lams[0] * (m_coeff(1, v3[1:], params) + n_coeff(2, 1, v3, params))
            + lams[1] * m_coeff(2, v3, params)
            + lams[2] * m_coeff(1, v3, params)
        )
        worst_agree = max(
            worst_agree, abs(rhs - rhs_coeff) / max(abs(rhs), 1e-300)
        )
    return {"explicit_residual": worst_explicit, "form_agreement": worst_agree}


def truncated_expansion_residual(state: EigenState, spec: RootOfUnitySpec,
                                 params: ModelParams, lam: complex) -> float:
    """Residual of the truncated eigenvalue expansion: the full expansion
    sum over the l-fold shifted string must vanish."""
    g = spec.gamma
    vars_ = tuple(lam - j * g for j in range(spec.l))
    terms = theorem_terms(vars_, state.lam, params)
    total = sum(terms)
    scale = max(max(abs(t) for t in terms), 1e-300)
    return float(abs(total) / scale)
