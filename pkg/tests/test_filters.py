import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate
from scipy.special import erfc

from glsim.filters import (
    ALPHA_00_INFINITE_BETA, DEPOLARIZING_LAMBDA, FilterSpec, coefficient_fn,
    coefficient_table, coherent_b, gaussian_coefficient,
    gaussian_coefficient_quadrature, metropolis_alpha, rate_normalization,
)

BETAS = st.floats(min_value=0.1, max_value=5.0)
NUS = st.floats(min_value=-4.0, max_value=4.0)


def test_window_is_l2_normalized_in_frequency():
    spec = FilterSpec("gaussian", 1.3)
    val, _ = integrate.quad(lambda w: spec.window_hat(w) ** 2, -60, 60)
    assert val == pytest.approx(1.0, abs=1e-10)


def test_window_hat_is_fourier_transform_of_window():
    # f̂(ω) = (2π)^{−1/2}∫f(t)e^{−iωt}dt, checked by direct quadrature.
    spec = FilterSpec("gaussian", 0.8)
    for omega in (0.0, 0.7, -1.9):
        re, _ = integrate.quad(
            lambda t: spec.window(t) * np.cos(omega * t), -30, 30, limit=200
        )
        assert spec.window_hat(omega) == pytest.approx(re / np.sqrt(2 * np.pi), abs=1e-10)


@pytest.mark.parametrize("beta", [0.3, 1.0, 2.5])
@pytest.mark.parametrize("nu1,nu2", [(0.0, 0.0), (1.0, -0.5), (-2.0, 1.5), (0.7, 0.7)])
def test_gaussian_closed_form_vs_quadrature(beta, nu1, nu2):
    closed = float(gaussian_coefficient(beta, nu1, nu2))
    quad, err = gaussian_coefficient_quadrature(beta, nu1, nu2)
    assert closed == pytest.approx(quad, abs=max(1e-9, 10 * err))


def test_gaussian_coefficient_frozen_value_at_origin():
    # c(0,0) = 1/(√2 e^{1/4}) = 0.5506953149031837…
    assert float(gaussian_coefficient(1.0, 0.0, 0.0)) == pytest.approx(
        0.5506953149031837, abs=1e-15
    )
    assert DEPOLARIZING_LAMBDA == pytest.approx(-0.5506953149031837, abs=1e-15)


@settings(max_examples=60, deadline=None)
@given(beta=BETAS, nu1=NUS, nu2=NUS)
def test_gaussian_kms_symmetry(beta, nu1, nu2):
    lhs = gaussian_coefficient(beta, nu1, nu2)
    rhs = np.exp(-beta * (nu1 + nu2) / 2.0) * gaussian_coefficient(beta, -nu1, -nu2)
    assert float(lhs) == pytest.approx(float(rhs), rel=1e-10)


@settings(max_examples=60, deadline=None)
@given(beta=BETAS, nu1=NUS, nu2=NUS)
def test_metropolis_kms_symmetry(beta, nu1, nu2):
    sigma = 1.0 / beta
    lhs = metropolis_alpha(beta, sigma, nu1, nu2)
    rhs = np.exp(-beta * (nu1 + nu2) / 2.0) * metropolis_alpha(beta, sigma, -nu1, -nu2)
    assert float(lhs) == pytest.approx(float(rhs), rel=1e-9, abs=1e-300)


@settings(max_examples=60, deadline=None)
@given(beta=BETAS, nu1=NUS, nu2=NUS)
def test_coefficients_symmetric_and_positive(beta, nu1, nu2):
    c12 = float(gaussian_coefficient(beta, nu1, nu2))
    c21 = float(gaussian_coefficient(beta, nu2, nu1))
    assert c12 == pytest.approx(c21, rel=1e-12)
    assert c12 > 0
    a12 = float(metropolis_alpha(beta, 1.0 / beta, nu1, nu2))
    a21 = float(metropolis_alpha(beta, 1.0 / beta, nu2, nu1))
    assert a12 == pytest.approx(a21, rel=1e-9)
    assert a12 >= 0


def test_gaussian_coefficient_decays_for_distant_frequencies():
    beta = 1.0
    for gap in (25.0, 40.0):
        val = float(gaussian_coefficient(beta, gap / 2, -gap / 2))
        assert val < 1e-12


@pytest.mark.parametrize("beta", [1.0, 10.0, 100.0])
def test_metropolis_alpha00_is_beta_independent(beta):
    val = float(metropolis_alpha(beta, 1.0 / beta, 0.0, 0.0))
    assert val == pytest.approx(ALPHA_00_INFINITE_BETA, abs=1e-14)
    assert ALPHA_00_INFINITE_BETA == pytest.approx(
        0.5 * erfc(1.0 / (2.0 * np.sqrt(2.0))), abs=1e-16
    )


@pytest.mark.parametrize(
    "beta,nu1,nu2",
    [(0.7, 0.0, 0.0), (0.7, 1.0, 1.0), (0.7, -1.5, 0.5), (2.0, 0.3, -0.3),
     (5.0, -1.0, -1.0)],
)
def test_metropolis_alpha_vs_quadrature(beta, nu1, nu2):
    # Independent route: α(ν1,ν2) = ½ ∫ γ^M(ω) f̂(ω−ν1) f̂(ω−ν2) dω.  The
    # closed form carries an exact global ½ relative to the plain frequency
    # overlap (consistent with α(0,0) → ½Erfc(1/(2√2)) as β → ∞); the
    # quadrature certifies the exact 2:1 ratio, not just proportionality.
    spec = FilterSpec("metropolis", beta)

    def integrand(w):
        return spec.gamma(w) * spec.window_hat(w - nu1) * spec.window_hat(w - nu2)

    center = (nu1 + nu2) / 2.0
    quad, err = integrate.quad(integrand, center - 50 / beta, center + 50 / beta,
                               epsabs=1e-13, epsrel=0.0, limit=400)
    closed = float(metropolis_alpha(beta, spec.sigma_E, nu1, nu2))
    assert closed == pytest.approx(0.5 * quad, abs=max(1e-10, 50 * err))


def test_metropolis_alpha_no_overflow_at_large_beta():
    vals = metropolis_alpha(1e4, 1e-4, np.array([-3.0, 3.0]), np.array([-3.0, 3.0]))
    assert np.all(np.isfinite(vals))
    assert vals[0] == pytest.approx(0.5, abs=1e-6)     # deep downhill
    assert vals[1] == pytest.approx(0.0, abs=1e-300)   # deep uphill


def test_coherent_b_vanishes_on_diagonal_and_is_odd():
    c = 0.4
    assert complex(coherent_b(1.0, 0.7, 0.7, c)) == 0
    b12 = complex(coherent_b(1.0, 1.0, -0.5, c))
    b21 = complex(coherent_b(1.0, -0.5, 1.0, c))
    assert b12 == pytest.approx(-b21)
    assert abs(b12.real) < 1e-15          # purely imaginary over real c


def test_filter_spec_validation():
    with pytest.raises(ValueError):
        FilterSpec("unknown", 1.0)
    with pytest.raises(ValueError):
        FilterSpec("gaussian", -1.0)
    with pytest.raises(ValueError):
        FilterSpec("metropolis", 0.0)
    assert FilterSpec("metropolis", 2.0).sigma_E == pytest.approx(0.5)


def test_rate_normalizations():
    assert rate_normalization(FilterSpec("gaussian", 1.0)) == 0.25
    assert rate_normalization(FilterSpec("metropolis", 1.0)) == 1.0


def test_coefficient_table_contents():
    spec = FilterSpec("gaussian", 1.0)
    table = coefficient_table(spec, [-1.0, 0.0, 1.0])
    assert len(table.dissipative) == 9
    assert table.dissipative[(0.0, 0.0)] == pytest.approx(0.5506953149031837)
    for (v1, v2), c in table.dissipative.items():
        assert table.coherent[(v1, v2)] == pytest.approx(
            complex(coherent_b(1.0, v1, v2, c))
        )


def test_beta_zero_coefficient_fn_is_constant():
    fn = coefficient_fn(FilterSpec("gaussian", 0.0))
    vals = fn(np.array([0.0, 3.0]), np.array([0.0, -2.0]))
    assert np.allclose(vals, 1.0 / (np.sqrt(2) * np.exp(0.25)))
