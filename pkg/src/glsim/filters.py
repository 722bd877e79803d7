"""Transition filters and jump-rate coefficient tables.

Conventions (fixed once, used everywhere):
  * Fourier transform f̂(ω) = (2π)^{−1/2} ∫ f(t) e^{−iωt} dt.
  * Window f(t) = exp(−t²/β²)·(β^{−1}√(2/π))^{1/2}, so ∫|f̂|²dω = 1.
  * Gaussian filter γ(ω) = exp(−(βω+1)²/2); dissipative coefficient
        c(ν1,ν2) = ∫ γ(ω) f̂(ω−ν1) f̂(ω−ν2)* dω
    with the closed form implemented in `gaussian_coefficient` and certified
    against adaptive quadrature.
  * Metropolis filter γ^M(ω) = exp(−β·max(ω+βσ_E²/2, 0)); coefficients α(ν1,ν2)
    in exact Erf/Erfc closed form.
  * Coherent weight b(ν1,ν2) = tanh(−β(ν1−ν2)/4)/(2i) · c(ν1,ν2); this is the
    unique choice making the Gibbs state an exact fixed point given the KMS
    symmetry c(ν1,ν2) = e^{−β(ν1+ν2)/2} c(−ν1,−ν2) of both filters.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import integrate
from scipy.special import erf, erfc, erfcx

SQRT2 = np.sqrt(2.0)

#: Rate at which the assembled Gaussian generator is scaled so that its β=0
#: limit is exactly λ·(local depolarizing) with λ = −1/(√2 e^{1/4}).
GAUSSIAN_RATE_NORMALIZATION = 0.25
#: λ = −1/(√2 e^{1/4}): the depolarizing rate of the β=0 Gaussian generator.
DEPOLARIZING_LAMBDA = -1.0 / (SQRT2 * np.exp(0.25))


@dataclass(frozen=True)
class FilterSpec:
    """Gaussian{β} or Metropolis{β, σ_E} transition filter."""

    variant: str                  # "gaussian" | "metropolis"
    beta: float
    sigma_E: float | None = None  # Metropolis width; defaults to 1/β

    def __post_init__(self):
        if self.variant not in ("gaussian", "metropolis"):
            raise ValueError(f"unknown filter variant {self.variant!r}")
        if self.beta < 0:
            raise ValueError("beta must be nonnegative")
        if self.variant == "metropolis":
            sigma = self.sigma_E
            if sigma is None:
                if self.beta == 0:
                    raise ValueError("metropolis filter needs beta > 0 or explicit sigma_E")
                sigma = 1.0 / self.beta
            if sigma <= 0:
                raise ValueError("sigma_E must be positive")
            object.__setattr__(self, "sigma_E", float(sigma))

    def gamma(self, omega):
        """Filter weight γ(ω)."""
        omega = np.asarray(omega, dtype=float)
        if self.variant == "gaussian":
            return np.exp(-((self.beta * omega + 1.0) ** 2) / 2.0)
        shift = self.beta * self.sigma_E**2 / 2.0
        return np.exp(-self.beta * np.maximum(omega + shift, 0.0))

    def window(self, t):
        """Time window f(t); L2-normalized in frequency. Requires β > 0."""
        if self.beta <= 0:
            raise ValueError("window is defined for beta > 0")
        t = np.asarray(t, dtype=float)
        norm = np.sqrt(np.sqrt(2.0 / np.pi) / self.beta)
        return norm * np.exp(-(t**2) / self.beta**2)

    def window_hat(self, omega):
        """f̂(ω) = (2π)^{−1/2}∫f(t)e^{−iωt}dt (real Gaussian)."""
        if self.beta <= 0:
            raise ValueError("window is defined for beta > 0")
        omega = np.asarray(omega, dtype=float)
        norm = np.sqrt(np.sqrt(2.0 / np.pi) / self.beta) * self.beta / SQRT2
        return norm * np.exp(-(self.beta**2) * omega**2 / 4.0)


def gaussian_coefficient(beta: float, nu1, nu2):
    """Closed form of ∫ γ(ω) f̂(ω−ν1) f̂(ω−ν2) dω for the Gaussian filter.

    c(ν1,ν2) = 2^{−1/2} exp[(β(ν1+ν2)/2 − 1)²/4 − 1/2 − β²(ν1²+ν2²)/4].
    At β=0 or ν=0 this equals 1/(√2 e^{1/4}).
    """
    nu1 = np.asarray(nu1, dtype=float)
    nu2 = np.asarray(nu2, dtype=float)
    expo = ((beta * (nu1 + nu2) / 2.0 - 1.0) ** 2) / 4.0 - 0.5 \
        - beta**2 * (nu1**2 + nu2**2) / 4.0
    return np.exp(expo) / SQRT2


def gaussian_coefficient_quadrature(
    beta: float, nu1: float, nu2: float, abs_tol: float = 1e-12
) -> tuple[float, float]:
    """Adaptive-quadrature oracle for the Gaussian coefficient.

    Integrates over |ω − center| ≤ 40/β around the peak; returns (value, error
    estimate).  Raises if the quadrature does not converge to abs_tol.
    """
    spec = FilterSpec("gaussian", beta)

    def integrand(w):
        return spec.gamma(w) * spec.window_hat(w - nu1) * spec.window_hat(w - nu2)

    center = (nu1 + nu2) / 2.0
    half = 40.0 / beta
    val, err = integrate.quad(integrand, center - half, center + half,
                              epsabs=abs_tol, epsrel=0.0, limit=400)
    if err > 100 * abs_tol:
        raise RuntimeError(f"quadrature did not converge: error {err:.3e}")
    return val, err


def metropolis_alpha(beta: float, sigma_E: float, nu1, nu2):
    """Exact Metropolis coefficient α(ν1,ν2) via Erf/Erfc.

    α = ¼ e^{−β s/2 − d²/(8σ²)} (1 + Erf((s−βσ²)/(2√2σ)) + e^{βs/2}Erfc((s+βσ²)/(2√2σ)))
    with s = ν1+ν2, d = ν1−ν2, evaluated in overflow-safe scaled form.
    """
    s = np.asarray(nu1, dtype=float) + np.asarray(nu2, dtype=float)
    d = np.asarray(nu1, dtype=float) - np.asarray(nu2, dtype=float)
    sig = sigma_E
    u_minus = (s - beta * sig**2) / (2 * SQRT2 * sig)
    u_plus = (s + beta * sig**2) / (2 * SQRT2 * sig)
    # term12 = e^{−βs/2}(1 + Erf(u−)); term3 = Erfc(u+). For s ≪ 0 the first
    # form overflows, so use 1+Erf(x) = Erfc(−x) = erfcx(−x)e^{−x²} there.
    # Both branches are evaluated on clamped arguments to stay finite.
    neg = u_minus < 0
    u_neg = np.where(neg, u_minus, 0.0)
    s_pos = np.where(neg, 0.0, s)
    term12 = np.where(
        neg,
        erfcx(-u_neg) * np.exp(-(np.where(neg, u_plus, 0.0) ** 2)),
        np.exp(-beta * s_pos / 2.0) * (1.0 + erf(np.where(neg, 0.0, u_minus))),
    )
    term3 = erfc(u_plus)
    return 0.25 * np.exp(-(d**2) / (8 * sig**2)) * (term12 + term3)


ALPHA_00_INFINITE_BETA = 0.5 * erfc(1.0 / (2.0 * SQRT2))


def coherent_b(beta: float, nu1, nu2, c):
    """Coherent weight b(ν1,ν2) = tanh(−β(ν1−ν2)/4)/(2i) · c(ν1,ν2)."""
    d = np.asarray(nu1, dtype=float) - np.asarray(nu2, dtype=float)
    return np.tanh(-beta * d / 4.0) / 2j * np.asarray(c, dtype=complex)


def coefficient_fn(spec: FilterSpec):
    """Vectorized (ν1,ν2) ↦ dissipative coefficient for the given filter."""
    if spec.variant == "gaussian":
        if spec.beta == 0:
            const = 1.0 / (SQRT2 * np.exp(0.25))
            return lambda nu1, nu2: np.full(np.broadcast(nu1, nu2).shape, const)
        return lambda nu1, nu2: gaussian_coefficient(spec.beta, nu1, nu2)
    return lambda nu1, nu2: metropolis_alpha(spec.beta, spec.sigma_E, nu1, nu2)


def rate_normalization(spec: FilterSpec) -> float:
    """Overall rate scale applied when assembling a generator from the table."""
    if spec.variant == "gaussian":
        return GAUSSIAN_RATE_NORMALIZATION
    return 1.0


@dataclass(frozen=True)
class CoefficientTable:
    """Dissipative and coherent weights on pairs of Bohr frequencies."""

    filter: FilterSpec
    frequencies: tuple[float, ...]
    dissipative: dict[tuple[float, float], complex]
    coherent: dict[tuple[float, float], complex]


def coefficient_table(spec: FilterSpec, frequencies) -> CoefficientTable:
    """Tabulate c(ν1,ν2) and b(ν1,ν2) over all pairs from a Bohr-frequency set."""
    freqs = tuple(float(v) for v in frequencies)
    cfun = coefficient_fn(spec)
    diss = {}
    coh = {}
    for v1 in freqs:
        for v2 in freqs:
            c = complex(cfun(v1, v2))
            diss[(v1, v2)] = c
            coh[(v1, v2)] = complex(coherent_b(spec.beta, v1, v2, c))
    return CoefficientTable(spec, freqs, diss, coh)
