import mpmath
import pytest
from mpmath import mp

from symval import gammakernel as gk


def test_upper_gamma_against_mpmath():
    # dual-route check of the series/continued-fraction implementation
    with mp.workprec(200):
        worst = mpmath.mpf(0)
        for a in (0.5, 1, 3, 7.5, -0.5, -3, -11, 0, 2 + 3j, -4.5 + 1j, 30, -22):
            for y in (0.01, 0.3, 0.9, 1.5, 5, 40, 300):
                mine = gk.upper_gamma(a, y, 160)
                ref = mpmath.gammainc(mpmath.mpmathify(a), y, mpmath.inf)
                scale = max(abs(ref), mpmath.mpf(2) ** -100)
                worst = max(worst, abs(mine - ref) / scale)
        assert worst < mpmath.mpf(2) ** -140


def test_upper_gamma_zero_argument():
    with mp.workprec(120):
        assert abs(gk.upper_gamma(3, 0, 100) - 2) < mpmath.mpf(2) ** -90


def test_gamma_one_plus_jet_coefficients():
    # Gamma(1+x) = 1 - euler x + (euler^2/2 + pi^2/12) x^2 + ...
    with mp.workprec(120):
        c = gk._gamma_one_plus_jet(3)
        assert abs(c[0] - 1) < mpmath.mpf(2) ** -100
        assert abs(c[1] + mpmath.euler) < mpmath.mpf(2) ** -100
        want = mpmath.euler**2 / 2 + mpmath.pi**2 / 12
        assert abs(c[2] - want) < mpmath.mpf(2) ** -100


def test_single_factor_kernels_match_incomplete_gamma():
    with mp.workprec(200):
        s = mpmath.mpf("3.7")
        for x in (0.5, 1.0, 2.5):
            mine = gk.kernel_value([("R", 0)], s, x, 160)
            ref = mpmath.power(mpmath.pi, -s / 2) * mpmath.gammainc(
                s / 2, mpmath.pi * x * x, mpmath.inf
            )
            assert abs(mine - ref) < mpmath.mpf(2) ** -140
        for x in (0.5, 1.5):
            mine = gk.kernel_value([("C", -1)], s, x, 160)
            u = s - 1
            ref = 2 * mpmath.power(2 * mpmath.pi, -u) * mpmath.gammainc(
                u, 2 * mpmath.pi * x, mpmath.inf
            )
            assert abs(mine - ref) < mpmath.mpf(2) ** -140


def test_pole_series_matches_single_factor():
    # the residue-series evaluator against the incomplete-gamma route
    with mp.workprec(300):
        s = mpmath.mpf("3.7")
        ev = gk.KernelEvaluator([("R", 0)], s, 280, 5)
        for x in (0.7, 1.3, 3.5, 4.8):
            a = ev(x)
            b = gk.kernel_value([("R", 0)], s, x, 280)
            assert abs(a - b) < mpmath.mpf(2) ** -160


def _contour_kernel(factors, s, x, c, T=60, prec=80):
    with mp.workprec(prec):
        s = mpmath.mpmathify(s)
        x = mpmath.mpf(x)

        def integrand(t):
            z = c + 1j * t
            return gk.gamma_product_value(factors, s + z) * mpmath.power(x, -z) / z

        return mpmath.quad(integrand, [-T, 0, T]) / (2 * mpmath.pi)


def test_two_gamma_c_kernel_against_contour():
    factors = (("C", 0), ("C", -11))
    s = mpmath.mpf("16.5")
    ev = gk.KernelEvaluator(factors, s, 300, 30)
    for x in (0.8, 2.0, 8.0):
        mine = ev(x)
        ref = _contour_kernel(factors, s, x, c=2.0)
        assert abs(mine - ref) / abs(ref) < mpmath.mpf(10) ** -20


def test_mixed_kernel_against_contour():
    factors = (("C", 0), ("R", -10))
    s = mpmath.mpf("12.25")
    ev = gk.KernelEvaluator(factors, s, 300, 30)
    for x in (0.9, 3.0):
        mine = ev(x)
        ref = _contour_kernel(factors, s, x, c=1.5)
        assert abs(mine - ref) / abs(ref) < mpmath.mpf(10) ** -20


def test_kernel_merge_case():
    # s sitting on the pole lattice: the log x terms kick in
    ev = gk.KernelEvaluator([("R", 0)], -2, 200, 3)
    ref = _contour_kernel([("R", 0)], mpmath.mpf(-2), 1.3, c=3.0)
    assert abs(ev(1.3) - ref) / abs(ref) < mpmath.mpf(10) ** -18


def test_kernel_complex_s():
    factors = (("C", 0), ("C", -11))
    sc = mpmath.mpc("8.25", "1.5")
    ev = gk.KernelEvaluator(factors, sc, 250, 10)
    with mp.workprec(80):

        def integrand(t):
            z = 9 + 1j * t
            return gk.gamma_product_value(factors, sc + z) * mpmath.power(mpmath.mpf(2), -z) / z

        ref = mpmath.quad(integrand, [-60, 0, 60]) / (2 * mpmath.pi)
    assert abs(ev(2.0) - ref) / abs(ref) < mpmath.mpf(10) ** -18


def test_rgamma_product_vanishes_at_poles():
    with mp.workprec(100):
        assert gk.rgamma_product_value((("R", 0),), mpmath.mpf(-2)) == 0
        assert gk.rgamma_product_value((("C", 0),), mpmath.mpf(-3)) == 0
        v = gk.rgamma_product_value((("R", 0),), mpmath.mpf(2))
        assert abs(1 / v - gk.gamma_factor_value("R", mpmath.mpf(2))) < mpmath.mpf(2) ** -80
