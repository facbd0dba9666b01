import math

import mpmath
import pytest

from symval import dihedral as dh
from symval import qseries as qs
from symval import satake as st
from symval.characters import make_character
from symval.errors import DomainError, RangeError, StateError


def _primes(n):
    return [p for p in range(2, n + 1) if all(p % q for q in range(2, int(math.isqrt(p)) + 1))]


def test_satake_at_two(delta_2000):
    sp = st.satake_at(delta_2000, 2)
    assert sp.trace == -24
    assert sp.norm == 2**11
    a, b = sp.roots(120)
    with mpmath.mp.workprec(130):
        assert abs(a + b + 24) < mpmath.mpf(2) ** -100
        assert abs(a * b - 2048) < mpmath.mpf(2) ** -90


def test_satake_requires_validation():
    f = qs.delta_newform(50)
    with pytest.raises(StateError):
        st.satake_at(f, 2)


def test_satake_bad_prime_convention():
    # level-32 CM form: beta = 0 and alpha = a_p at p | N
    K = dh.ImagQuadField(-4)
    chi = dh.HeckeCharacter(K, 1, dh.parse_conductor("(1+i)^3", K))
    f = dh.cm_newform(chi, 64).form
    sp = st.satake_at(f, 2)
    assert not sp.good_prime
    assert sp.norm == 0 and sp.trace == f.a(2)


def test_satake_deligne_bound(delta_2000):
    with mpmath.mp.workprec(120):
        for p in _primes(100):
            a, _ = st.satake_at(delta_2000, p).roots(110)
            assert abs(abs(a) - mpmath.mpf(p) ** 5.5) < mpmath.mpf(2) ** -80 * p**6


def test_sym1_is_hecke_polynomial(delta_2000):
    for p in (2, 3, 5, 7):
        sp = st.satake_at(delta_2000, p)
        f = st.sym_euler_factor(sp, 1)
        assert f.coefficients == (1, -delta_2000.a(p), p**11)


def test_twist_is_substitution(delta_2000):
    sp = st.satake_at(delta_2000, 3)
    for n in (1, 2, 3):
        plain = st.sym_euler_factor(sp, n)
        twisted = st.sym_euler_factor(sp, n, -1)
        assert twisted.coefficients == tuple(
            c * (-1) ** i for i, c in enumerate(plain.coefficients)
        )
    assert st.sym_euler_factor(sp, 3, 0).coefficients == (1,)


def test_sym2_factor_at_two(delta_2000):
    f = st.sym_euler_factor(st.satake_at(delta_2000, 2), 2)
    assert f.degree == 3
    assert f.coefficients[0] == 1
    assert f.coefficients[-1] == -(2**33)
    assert f.series_inverse(2)[1] == -1472  # = a_2^2 - 2^11


def test_central_character_determinant(delta_2000):
    # leading coefficient is (-1)^(n+1) (alpha beta)^(n(n+1)/2)
    for p in (2, 3, 5):
        sp = st.satake_at(delta_2000, p)
        for n in range(1, 6):
            f = st.sym_euler_factor(sp, n)
            assert f.coefficients[-1] == (-1) ** (n + 1) * (p**11) ** (n * (n + 1) // 2)


def test_dirichlet_coeffs_sym1_is_tau(delta_2000):
    b = st.dirichlet_coeffs(delta_2000, 1, length=2000)
    assert b == list(delta_2000.coefficients[:2000])


def test_dirichlet_coeffs_length_one(delta_2000):
    assert st.dirichlet_coeffs(delta_2000, 3, length=1) == [1]


def test_dirichlet_coeffs_multiplicative(delta_2000):
    for n in range(1, 5):
        b = st.dirichlet_coeffs(delta_2000, n, length=1000)
        for m in range(2, 32):
            for l in range(2, 1000 // m + 1):
                if math.gcd(m, l) == 1:
                    assert b[m * l - 1] == b[m - 1] * b[l - 1]


def test_twist_consistency(delta_2000):
    chi = make_character(5, [2])
    plain = st.dirichlet_coeffs(delta_2000, 2, length=400)
    twisted = st.dirichlet_coeffs(delta_2000, 2, eta=chi, length=400)
    for m in range(1, 401):
        t = chi.value_exact(m)
        w = 0 if t is None else (1 if t == 0 else -1)
        assert twisted[m - 1] == w * plain[m - 1]


def test_bad_prime_modes():
    # ramified prime away from the conductor: a_2 = chi((1+i)) = (1+i)^4 = -4
    K = dh.ImagQuadField(-4)
    chi = dh.HeckeCharacter(K, 4, dh.parse_conductor("(1)", K))
    f = dh.cm_newform(chi, 64).form
    assert f.level == 4 and f.a(2) == -4
    partial = st.dirichlet_coeffs(f, 1, length=8, bad_prime_mode="partial")
    naive = st.dirichlet_coeffs(f, 1, length=8, bad_prime_mode="naive")
    assert partial[1] == 0
    assert naive[1] == -4  # the beta = 0 factor keeps alpha = a_p
    assert partial[2] == naive[2]  # good primes agree
    with pytest.raises(DomainError):
        st.dirichlet_coeffs(f, 1, length=8, bad_prime_mode="bogus")


def test_dirichlet_coeffs_range_error(delta_2000):
    with pytest.raises(RangeError):
        st.dirichlet_coeffs(delta_2000, 1, length=5000)
