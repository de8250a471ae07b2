import math

import numpy as np
import pytest

from tapmeans.catalog import geometric_poisson_values, make_geometric
from tapmeans.fourier import (
    FourierSeries,
    conjugate,
    derivative,
    from_modes,
    lp_norm,
    series_add,
    series_norm,
    series_scale,
    series_sub,
    synthesize,
)
from tapmeans.operators import (
    butzer_sunouchi,
    integral_representation_residual,
    lambda_complement,
    lambda_multiplier,
    lambda_profile,
    leis_transform,
    poisson_kernel_values,
    poisson_mean,
    poisson_radial_norm,
    poisson_rho_partial,
    radial_derivative,
    smoothing_bound_constant,
    taylor_abel_poisson,
    taylor_form_values,
)


def lambda_oracle(k, r, rho):
    """Exact-integer-arithmetic multiplier, the reference implementation."""
    if k < r:
        return 1.0
    return float(sum(math.comb(k, j) * (1 - rho) ** j * rho ** (k - j) for j in range(r)))


def random_series(degree, seed):
    rng = np.random.default_rng(seed)
    coeffs = np.zeros(2 * degree + 1, dtype=complex)
    coeffs[degree] = rng.uniform(-1, 1)
    for k in range(1, degree + 1):
        c = rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1)
        coeffs[degree + k] = c
        coeffs[degree - k] = np.conj(c)
    return FourierSeries(coeffs=coeffs, real_valued=True)


# -- multiplier values -------------------------------------------------------

def test_multiplier_frozen_values():
    assert abs(lambda_multiplier(3, 2, 0.6) - 0.648) < 1e-12
    assert abs(lambda_multiplier(2, 2, 0.5) - 0.75) < 1e-12
    assert abs(lambda_multiplier(4, 1, 0.7) - 0.7**4) < 1e-12


def test_multiplier_matches_exact_oracle():
    for rho in (0.0, 0.1, 0.5, 0.9, 0.99, 1.0):
        for r in (1, 2, 3, 5):
            for k in range(0, 61):
                assert abs(lambda_multiplier(k, r, rho) - lambda_oracle(k, r, rho)) < 1e-12


def test_profile_matches_scalar_multiplier():
    for rho in (0.0, 0.3, 0.97, 1.0):
        for r in (1, 2, 4):
            prof = lambda_profile(200, r, rho)
            for k in (0, 1, 5, 37, 200):
                assert abs(prof[k] - lambda_multiplier(k, r, rho)) < 1e-12


def test_multiplier_range_and_low_mode_fixing():
    for rho in (0.0, 0.1, 0.5, 0.9, 0.99, 1.0):
        for r in (1, 3, 5):
            prof = lambda_profile(200, r, rho)
            assert np.all(prof >= 0.0) and np.all(prof <= 1.0)
            assert np.all(prof[:r] == 1.0)


def test_multiplier_at_endpoints():
    # rho=1 fixes everything; rho=0 projects onto degree r-1
    assert lambda_multiplier(150, 4, 1.0) == 1.0
    assert lambda_multiplier(150, 4, 0.0) == 0.0
    assert lambda_multiplier(3, 4, 0.0) == 1.0


def test_complement_is_binomial_tail():
    for k in (2, 5, 17):
        for r in (1, 2, 3):
            for rho in (0.2, 0.8):
                tail = sum(
                    math.comb(k, j) * (1 - rho) ** j * rho ** (k - j)
                    for j in range(r, k + 1)
                )
                assert abs(lambda_complement(k, r, rho) - tail) < 1e-13
                assert (
                    abs(lambda_complement(k, r, rho) - (1 - lambda_multiplier(k, r, rho)))
                    < 1e-12
                )


# -- smoothing operator ------------------------------------------------------

def test_operator_fixes_low_degree_polynomials():
    s = random_series(2, seed=1)
    out = taylor_abel_poisson(s, 0.37, 3)
    assert np.max(np.abs(out.coeffs - s.coeffs)) < 1e-15


def test_operator_at_rho_one_is_identity():
    s = random_series(6, seed=2)
    out = taylor_abel_poisson(s, 1.0, 2)
    assert np.max(np.abs(out.coeffs - s.coeffs)) == 0.0


def test_operator_at_rho_zero_projects():
    s = random_series(6, seed=3)
    out = taylor_abel_poisson(s, 0.0, 3)
    for k in out.wavenumbers():
        want = s.coeff(k) if abs(k) < 3 else 0.0
        assert abs(out.coeff(k) - want) < 1e-15


def test_saturation_identity_cos_rx():
    # lambda_{r,r} = 1 - (1-rho)^r makes the sup error exactly (1-rho)^r
    for r in (1, 2, 3, 4):
        f = from_modes({r: 0.5, -r: 0.5}, real_valued=True)
        for rho in (0.1, 0.5, 0.9, 0.99):
            err = series_sub(f, taylor_abel_poisson(f, rho, r))
            sup = series_norm(err, math.inf)
            assert abs(sup - (1 - rho) ** r) < 1e-12


def test_monotone_smoothing_l2():
    s = random_series(10, seed=4)
    for rho in (0.2, 0.7):
        for r in (1, 2):
            out = taylor_abel_poisson(s, rho, r)
            assert np.all(np.abs(out.coeffs) <= np.abs(s.coeffs) + 1e-15)
            n_in = lp_norm(synthesize(s, 128), 2)
            n_out = lp_norm(synthesize(out, 128), 2)
            assert n_out <= n_in + 1e-12


def test_commutativity_in_rho():
    s = random_series(8, seed=5)
    for r in (1, 2, 3):
        for rho1, rho2 in ((0.3, 0.8), (0.5, 0.99)):
            ab = taylor_abel_poisson(taylor_abel_poisson(s, rho1, r), rho2, r)
            ba = taylor_abel_poisson(taylor_abel_poisson(s, rho2, r), rho1, r)
            assert np.max(np.abs(ab.coeffs - ba.coeffs)) < 1e-12


def test_order_one_is_poisson_mean():
    s = random_series(7, seed=6)
    for rho in (0.0, 0.4, 0.95):
        a1 = taylor_abel_poisson(s, rho, 1)
        pm = poisson_mean(s, rho)
        assert np.max(np.abs(a1.coeffs - pm.coeffs)) < 1e-15


def test_rho_out_of_range():
    s = random_series(2, seed=7)
    with pytest.raises(ValueError):
        taylor_abel_poisson(s, -0.1, 1)
    with pytest.raises(ValueError):
        taylor_abel_poisson(s, 1.1, 1)
    with pytest.raises(ValueError):
        poisson_mean(s, 1.0)  # open at the top for the mean


# -- Poisson machinery -------------------------------------------------------

def test_poisson_mean_matches_geometric_closed_form():
    q = 0.5
    entry = make_geometric(q, degree=60)
    for rho in (0.3, 0.9):
        got = synthesize(poisson_mean(entry.series, rho), 256)
        want = geometric_poisson_values(q, rho, 256)
        assert np.max(np.abs(got.samples - want.samples)) < 1e-10


def test_poisson_kernel_value_at_zero():
    vals = poisson_kernel_values(0.5, 64)
    # (1 - 0.25) / (1 - 2*0.5 + 0.25) = 3
    assert abs(vals.samples[0] - 3.0) < 1e-12


def test_poisson_kernel_unit_mean():
    for rho in (0.2, 0.8):
        vals = poisson_kernel_values(rho, 512)
        assert abs(np.mean(vals.samples) - 1.0) < 1e-12


def test_radial_derivative_multiplier():
    s = from_modes({3: 1.0, -2: 1.0, 0: 5.0})
    d = radial_derivative(s, 2)
    assert abs(d.coeff(3) - 6.0) < 1e-15   # 3*2
    assert abs(d.coeff(-2) - 2.0) < 1e-15  # 2*1
    assert d.coeff(0) == 0.0
    d1 = radial_derivative(s, 1)
    assert abs(d1.coeff(-2) - 2.0) < 1e-15


def test_radial_derivative_kills_low_modes():
    s = from_modes({1: 1.0, -1: 1.0, 0: 2.0}, real_valued=True)
    d = radial_derivative(s, 2)
    assert np.max(np.abs(d.coeffs)) == 0.0


def test_rho_partial_of_poisson_extension():
    # d/drho of rho^|k| is |k| rho^(|k|-1)
    s = from_modes({4: 1.0})
    for rho in (0.3, 0.9):
        d = poisson_rho_partial(s, rho, 1)
        assert abs(d.coeff(4) - 4 * rho**3) < 1e-14
        d2 = poisson_rho_partial(s, rho, 2)
        assert abs(d2.coeff(4) - 12 * rho**2) < 1e-14


def test_rho_partial_edge_rho_zero():
    s = from_modes({2: 1.0, 1: 1.0, 0: 1.0})
    d = poisson_rho_partial(s, 0.0, 1)
    # only |k| = m survives at rho = 0 (0^0 = 1 there)
    assert abs(d.coeff(1) - 1.0) < 1e-15
    assert d.coeff(2) == 0.0
    assert d.coeff(0) == 0.0


def test_radial_vs_rho_partial_norm_identity():
    # ||(f(rho,.))^[r]|| = rho^r ||d^r/drho^r f(rho,.)||
    s = random_series(9, seed=8)
    for rho in (0.4, 0.85):
        for r in (1, 2, 3):
            lhs = series_norm(radial_derivative(poisson_mean(s, rho), r), 2)
            rhs = rho**r * series_norm(poisson_rho_partial(s, rho, r), 2)
            assert abs(lhs - rhs) < 1e-12


def test_poisson_radial_norm_single_mode():
    s = from_modes({3: 1.0})
    for rho in (0.5, 0.9):
        want = 3 * 2 * 1 * rho**3  # ff(3,3) rho^3, |e^{i3x}| = 1
        assert abs(poisson_radial_norm(s, rho, 3, math.inf) - want) < 1e-6


def test_poisson_radial_norm_proof_bound():
    # M_p(rho, f, r) <= 2 r! ||f||_p / (1-rho)^r
    s = random_series(12, seed=9)
    for p in (1.0, 2.0, math.inf):
        norm_f = series_norm(s, p)
        for r in (1, 2, 3):
            for rho in (0.5, 0.9, 0.99):
                m = poisson_radial_norm(s, rho, r, p)
                bound = 2 * math.factorial(r) * norm_f / (1 - rho) ** r
                assert m <= bound * (1 + 1e-9)


def test_bernstein_type_bound():
    # ||(A f)^[r]||_p <= C_r ||f||_p / (1-rho)^r
    assert smoothing_bound_constant(1) == 4.0
    for r in (1, 2, 3):
        c_r = smoothing_bound_constant(r)
        assert c_r == math.factorial(r) * (2 ** (3 * r + 1) - 2 ** (r + 1)) / 3
    for seed in (10, 11):
        s = random_series(10, seed=seed)
        for p in (2.0, math.inf):
            norm_f = series_norm(s, p)
            for r in (1, 2, 3):
                for rho in (0.5, 0.75, 0.95):
                    lhs = series_norm(radial_derivative(taylor_abel_poisson(s, rho, r), r), p)
                    assert lhs <= smoothing_bound_constant(r) * norm_f / (1 - rho) ** r


# -- Taylor form and integral form -------------------------------------------

def test_taylor_form_agreement():
    s = random_series(8, seed=12)
    for r in (1, 2, 3, 4, 5):
        for rho in (0.1, 0.5, 0.9, 0.99):
            direct = synthesize(taylor_abel_poisson(s, rho, r), 64)
            tf = taylor_form_values(s, rho, r, 64)
            assert np.max(np.abs(direct.samples - tf.samples)) < 1e-10


def test_taylor_form_needs_enough_points():
    s = random_series(8, seed=12)
    with pytest.raises(ValueError):
        taylor_form_values(s, 0.5, 2, 8)


def test_integral_residual_small():
    s = random_series(10, seed=13)
    r_val = integral_representation_residual(s, 0.8, 3, 2.0, quad_tol=1e-9)
    assert r_val <= 1e-8


def test_integral_residual_trivial_low_degree():
    s = random_series(2, seed=14)
    assert integral_representation_residual(s, 0.6, 3, 2.0) < 1e-14


def test_integral_weight_equals_binomial_tail():
    # per-mode weight of the integral form must equal 1 - lambda
    from tapmeans.operators import _integral_multiplier_profile

    for r in (1, 2, 3):
        for rho in (0.5, 0.8, 0.95):
            w = _integral_multiplier_profile(40, rho, r, max(40, 16))
            for k in (0, 1, 5, 23, 40):
                assert abs(w[k] - lambda_complement(k, r, rho)) < 1e-13


# -- holomorphic split -------------------------------------------------------

def test_holomorphic_split_coefficients():
    from tapmeans.operators import holomorphic_split

    s = random_series(6, seed=15)
    f1, f2 = holomorphic_split(s)
    # both one-sided: f1 keeps the positive modes, f2 the reflected negatives
    assert abs(f1.coeff(0) - s.coeff(0) / 2) < 1e-15
    assert abs(f2.coeff(0) - s.coeff(0) / 2) < 1e-15
    for k in range(1, s.degree + 1):
        assert abs(f1.coeff(k) - s.coeff(k)) < 1e-15
        assert f1.coeff(-k) == 0.0
        assert abs(f2.coeff(k) - s.coeff(-k)) < 1e-15
        assert f2.coeff(-k) == 0.0


def test_holomorphic_split_cos():
    from tapmeans.operators import holomorphic_split

    f1, f2 = holomorphic_split(from_modes({1: 0.5, -1: 0.5}, real_valued=True))
    for part in (f1, f2):
        assert abs(part.coeff(0)) == 0.0
        assert abs(part.coeff(1) - 0.5) < 1e-15


def test_holomorphic_split_recombination():
    from tapmeans.operators import holomorphic_split

    s = random_series(6, seed=15)
    f1, f2 = holomorphic_split(s)
    n = 64
    for rho in (0.3, 0.9):
        # f1 at rho e^{ix} plus f2 at rho e^{-ix} gives the Poisson mean
        a = synthesize(poisson_mean(f1, rho), n).samples
        b = synthesize(poisson_mean(f2, rho), n).samples
        flipped = np.concatenate([b[:1], b[:0:-1]])  # x -> -x on the grid
        want = synthesize(poisson_mean(s, rho), n).samples
        assert np.max(np.abs(a + flipped - want)) < 1e-10


# -- comparison transforms ---------------------------------------------------

def test_leis_frozen_value():
    s = from_modes({2: 1.0})
    out = leis_transform(s, 0.9, 2)
    # sum_{j<2} C(2,j)(rho-1)^j = 1 - 2*0.1
    assert abs(out.coeff(2) - 0.8) < 1e-14


def test_leis_order_one_is_identity():
    s = random_series(5, seed=16)
    out = leis_transform(s, 0.37, 1)
    assert np.max(np.abs(out.coeffs - s.coeffs)) < 1e-15


def test_leis_truncated_binomial_oracle():
    s = from_modes({5: 1.0, -3: 1.0})
    rho = 0.85
    for r in (2, 3, 4):
        out = leis_transform(s, rho, r)
        for k in (5, -3):
            want = sum(
                math.comb(abs(k), j) * (rho - 1) ** j
                for j in range(min(r, abs(k) + 1))
            )
            assert abs(out.coeff(k) - want) < 1e-13


def test_leis_rate_on_geometric():
    f = make_geometric(0.5, degree=60).series
    for r in (1, 2):
        pairs = []
        for rho in np.linspace(0.9, 0.99, 6):
            err = series_sub(poisson_mean(f, rho), leis_transform(f, rho, r))
            pairs.append((1 - rho, series_norm(err, 2)))
        slope = np.polyfit(np.log([h for h, _ in pairs]), np.log([e for _, e in pairs]), 1)[0]
        assert abs(slope - r) < 0.15


def test_butzer_sunouchi_frozen_value():
    s = from_modes({1: 1.0})
    rho = math.exp(-0.1)
    out = butzer_sunouchi(s, rho, 2)
    assert abs(out.coeff(1) - 0.9) < 1e-14


def test_butzer_sunouchi_exponential_section_oracle():
    s = from_modes({4: 1.0, -2: 1.0})
    rho = 0.8
    t = -math.log(rho)
    for r in (1, 2, 3):
        out = butzer_sunouchi(s, rho, r)
        for k in (4, -2):
            want = sum((-abs(k) * t) ** m / math.factorial(m) for m in range(r))
            assert abs(out.coeff(k) - want) < 1e-13


def test_butzer_sunouchi_derivative_ladder():
    # multiplier form equals the alternating derivative / conjugate-derivative
    # ladder with sign (-1)^floor((m+1)/2)
    s = random_series(6, seed=17)
    rho = 0.75
    t = -math.log(rho)
    for r in (1, 2, 3, 4, 5):
        ladder = series_scale(s, 0.0)
        for m in range(r):
            term = derivative(s, m)
            if m % 2 == 1:
                term = conjugate(term)
            sign = (-1.0) ** ((m + 1) // 2)
            ladder = series_add(ladder, series_scale(term, sign * t**m / math.factorial(m)))
        direct = butzer_sunouchi(s, rho, r)
        assert np.max(np.abs(direct.coeffs - ladder.coeffs)) < 1e-12


def test_butzer_sunouchi_semigroup_rate():
    f = make_geometric(0.5, degree=60).series
    for r in (1, 2):
        pairs = []
        for rho in np.linspace(0.9, 0.99, 6):
            err = series_sub(poisson_mean(f, rho), butzer_sunouchi(f, rho, r))
            pairs.append((-math.log(rho), series_norm(err, 2)))
        slope = np.polyfit(np.log([h for h, _ in pairs]), np.log([e for _, e in pairs]), 1)[0]
        assert abs(slope - r) < 0.15
