from fractions import Fraction

import pytest

from symval import cohomology as co
from symval.cohomology import ClozelRejection
from symval.errors import DomainError


def test_cuspidal_range_values():
    assert co.cuspidal_range(2) == (1, 1)
    assert co.cuspidal_range(3) == (2, 3)
    assert co.cuspidal_range(4) == (4, 5)


def test_cuspidal_range_consistency():
    for n in range(2, 21):
        b, t = co.cuspidal_range(n)
        assert b <= t
        assert t - b == (n - 1) // 2


def test_jwl_examples():
    assert co.jwl_admissible(0, (11, -11))
    assert not co.jwl_admissible(1, (11, -11))
    assert co.jwl_admissible(0, (4, 2, 0, -2, -4))
    assert not co.jwl_admissible(0, (2, 4, 0, -4, -2))  # not decreasing
    assert not co.jwl_admissible(0, (4, -4, 0, 4, -4))  # not antisymmetric


def test_clozel_weight_examples():
    assert co.clozel_weight(2, 12, 0, 1).entries == (10, 0, -10)
    with pytest.raises(ClozelRejection):
        co.clozel_weight(2, 12, Fraction(1, 2), 1)
    with pytest.raises(ClozelRejection):
        co.clozel_weight(2, 12, 0, 0)  # eps must be 11 mod 2
    assert co.clozel_weight(3, 11, Fraction(1, 2), 0).entries == (14, 5, -4, -13)


def test_clozel_odd_n_accepts_both_eps():
    for eps in (0, 1):
        mu = co.clozel_weight(3, 12, 1, eps)
        assert mu.entries == (16, 6, -4, -14)


def test_purity_and_jwl_equivalence():
    for n in range(1, 9):
        for k in range(2, 21):
            for twice_s in range(-6, 7):
                s = Fraction(twice_s, 2)
                for eps in (0, 1):
                    try:
                        mu = co.clozel_weight(n, k, s, eps)
                        accepted = True
                    except ClozelRejection:
                        accepted = False
                    if accepted:
                        e = mu.entries
                        assert all(e[j] + e[n - j] == 2 * s for j in range(n + 1))
                    # the implied tempered parameter: w = 2s, l = 2(k-1)rho
                    l = tuple(int(2 * (k - 1) * r) for r in co.rho_vector(n + 1))
                    w = 2 * s
                    jwl = w.denominator == 1 and co.jwl_admissible(int(w), l)
                    eps_ok = n % 2 == 1 or eps % 2 == (n * (k - 1) // 2) % 2
                    assert accepted == (jwl and eps_ok), (n, k, s, eps)


def test_rankin_cohomological():
    assert co.rankin_cohomological(4, 2)
    assert not co.rankin_cohomological(12, 12)
    assert not co.rankin_cohomological(3, 1)
    with pytest.raises(DomainError):
        co.rankin_cohomological(2, 4)


def test_domain_errors():
    with pytest.raises(DomainError):
        co.cuspidal_range(1)
    with pytest.raises(DomainError):
        co.clozel_weight(2, 1, 0, 1)
