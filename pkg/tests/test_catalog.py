import math

import numpy as np
import pytest

from tapmeans.catalog import (
    catalog_entry,
    geometric_poisson_values,
    make_cosine,
    make_geometric,
    make_mode,
    make_random_real_poly,
    make_smoothed,
    make_weierstrass,
    standard_catalog,
)
from tapmeans.fourier import analyze, series_norm, series_sub, synthesize
from tapmeans.operators import poisson_mean, radial_derivative


def test_cosine_entry():
    e = make_cosine(3)
    assert e.degree == 3
    assert abs(e.series.coeff(3) - 0.5) < 1e-15
    assert abs(e.series.coeff(-3) - 0.5) < 1e-15
    assert e.tail_bound == 0.0


def test_mode_entry_is_complex_exponential():
    e = make_mode(2)
    assert abs(e.series.coeff(2) - 1.0) < 1e-15
    assert e.series.coeff(-2) == 0.0


def test_random_entry_deterministic_by_seed():
    a = make_random_real_poly(10, seed=42)
    b = make_random_real_poly(10, seed=42)
    c = make_random_real_poly(10, seed=43)
    assert np.array_equal(a.series.coeffs, b.series.coeffs)
    assert not np.array_equal(a.series.coeffs, c.series.coeffs)
    assert a.series.real_valued


def test_geometric_entry_coefficients_and_tail():
    e = make_geometric(0.5, degree=20)
    for k in (-3, 0, 7):
        assert abs(e.series.coeff(k) - 0.5 ** abs(k)) < 1e-15
    want_tail = 2 * 0.5**21 / 0.5
    assert abs(e.tail_bound - want_tail) < 1e-18


def test_geometric_closed_form_matches_series():
    e = make_geometric(0.4, degree=60)
    got = synthesize(e.series, 256)
    want = geometric_poisson_values(0.4, 1.0, 256)
    assert np.max(np.abs(got.samples - want.samples)) < 1e-12


def test_geometric_poisson_closed_form():
    # Poisson mean of the geometric series is geometric with ratio q*rho
    e = make_geometric(0.5, degree=60)
    got = synthesize(poisson_mean(e.series, 0.8), 128)
    want = geometric_poisson_values(0.5, 0.8, 128)
    assert np.max(np.abs(got.samples - want.samples)) < 1e-12


def test_weierstrass_structure():
    e = make_weierstrass(0.5, 7)
    assert e.degree == 128
    for j in range(8):
        assert abs(e.series.coeff(2**j) - 0.5 * 2 ** (-0.5 * j)) < 1e-15
    assert e.series.coeff(3) == 0.0
    assert e.smoothness.get("lip_alpha") == 0.5


def test_weierstrass_parameter_validation():
    with pytest.raises(ValueError):
        make_weierstrass(1.0, 7)
    with pytest.raises(ValueError):
        make_weierstrass(0.5, 3)  # too few levels to fit anything
    with pytest.raises(ValueError):
        make_weierstrass(0.5, 13)  # beyond the degree cap


def test_weierstrass_abel_rate_tracks_alpha():
    # classical Abel-mean rate on a lacunary Lip-alpha function
    for alpha in (0.4, 0.7):
        f = make_weierstrass(alpha, 12).series
        pairs = []
        for rho in 1 - np.geomspace(0.1, 0.001, 8):
            err = series_sub(f, poisson_mean(f, rho))
            pairs.append((1 - rho, series_norm(err, math.inf)))
        slope = np.polyfit(
            np.log([h for h, _ in pairs]), np.log([e for _, e in pairs]), 1
        )[0]
        assert abs(slope - alpha) < 0.15


def test_smoothed_is_right_inverse_of_radial_derivative():
    # exact recovery on modes |k| >= m; lower modes are out of reach
    base = make_weierstrass(0.5, 6)
    for m in (1, 2):
        g = make_smoothed(base, m)
        back = radial_derivative(g.series, m)
        for k in back.wavenumbers():
            want = base.series.coeff(k) if abs(k) >= m else 0.0
            assert abs(back.coeff(k) - want) < 1e-14


def test_smoothed_drops_unreachable_modes_keeps_mean():
    e = make_random_real_poly(4, seed=1)
    g = make_smoothed(e, 2)
    assert abs(g.series.coeff(0) - e.series.coeff(0)) < 1e-15
    assert g.series.coeff(1) == 0.0  # 0 < |k| < m zeroed
    assert abs(g.series.coeff(3) - e.series.coeff(3) / 6) < 1e-15  # /(3*2)


def test_smoothed_zero_order_is_identity():
    e = make_cosine(2)
    g = make_smoothed(e, 0)
    assert np.array_equal(g.series.coeffs, e.series.coeffs)


def test_smoothed_composition():
    # iterated order-1 smoothing inverts the iterated order-1 derivative,
    # single order-2 smoothing inverts the order-2 derivative; the falling
    # factorial multipliers make these distinct maps (1/k^2 vs 1/(k(k-1)))
    e = make_random_real_poly(6, seed=2)
    twice = make_smoothed(make_smoothed(e, 1), 1)
    once = make_smoothed(e, 2)
    back_twice = radial_derivative(radial_derivative(twice.series, 1), 1)
    back_once = radial_derivative(once.series, 2)
    for k in range(2, 7):
        for sk in (k, -k):
            assert abs(back_twice.coeff(sk) - e.series.coeff(sk)) < 1e-14
            assert abs(back_once.coeff(sk) - e.series.coeff(sk)) < 1e-14
        factor = twice.series.coeff(k) / once.series.coeff(k)
        assert abs(factor - (k - 1) / k) < 1e-12
    assert twice.smoothness.get("smoothed_order") == 2


def test_round_trip_all_catalog_entries():
    for e in standard_catalog(seed=5):
        n = 2 * e.degree + 2
        back = analyze(synthesize(e.series, n), e.degree)
        assert np.max(np.abs(back.coeffs - e.series.coeffs)) < 1e-10, e.name


# -- name grammar --------------------------------------------------------------

def test_parse_trigpoly_names():
    e = catalog_entry("trigpoly:cos=3")
    assert abs(e.series.coeff(3) - 0.5) < 1e-15
    e = catalog_entry("trigpoly:mode=2")
    assert abs(e.series.coeff(2) - 1.0) < 1e-15
    a = catalog_entry("trigpoly:random=8", seed=3)
    b = catalog_entry("trigpoly:random=8", seed=3)
    assert np.array_equal(a.series.coeffs, b.series.coeffs)


def test_parse_geometric_and_weierstrass():
    e = catalog_entry("geometric:q=0.5,K=40")
    assert e.degree == 40
    assert abs(e.series.coeff(2) - 0.25) < 1e-15
    e = catalog_entry("weierstrass:alpha=0.3,J=5")
    assert e.degree == 32


def test_parse_smoothed_nested():
    e = catalog_entry("smoothed:m=1,base=weierstrass:alpha=0.5,J=5")
    base = catalog_entry("weierstrass:alpha=0.5,J=5")
    back = radial_derivative(e.series, 1)
    assert np.max(np.abs(back.coeffs - base.series.coeffs)) < 1e-14
    assert e.smoothness.get("smoothed_order") == 1


def test_parse_errors():
    for bad in (
        "unknown:thing=1",
        "trigpoly:what=3",
        "geometric:q=2.0",
        "weierstrass:alpha=0.5",
        "smoothed:m=1",
        "",
    ):
        with pytest.raises(ValueError):
            catalog_entry(bad)
