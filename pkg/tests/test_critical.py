from fractions import Fraction

import pytest

from symval import critical as cr
from symval.errors import DomainError


def test_examples_from_the_lemmas():
    assert list(cr.critical_set(1, 12)) == list(range(1, 12))
    assert list(cr.critical_set(2, 12)) == [1, 3, 5, 7, 9, 11, 12, 14, 16, 18, 20, 22]
    assert list(cr.critical_set(4, 2)) == []
    assert list(cr.critical_set(5, 2)) == [3]


def test_weight_one_empty():
    for n in range(1, 13):
        assert len(cr.critical_set(n, 1)) == 0


def test_weight_two_structure():
    # critical points exist iff n is not a multiple of 4; odd n = 2r+1 has
    # exactly one critical point r+1; even n = 2r with r odd has {r, r+1}
    for n in range(1, 13):
        cs = cr.critical_set(n, 2)
        if n % 4 == 0:
            assert len(cs) == 0
        elif n % 2 == 1:
            assert list(cs) == [(n - 1) // 2 + 1]
        else:
            r = n // 2
            assert list(cs) == [r, r + 1]


def test_symmetry_and_parity():
    for n in range(1, 13):
        for k in range(1, 41):
            cs = cr.critical_set(n, k)
            total = n * (k - 1) + 1
            members = set(cs.members)
            assert all(total - m in members for m in members)
            assert cs.center == Fraction(total, 2)
            if n % 2 == 0:
                for m in members:
                    assert (m % 2 == 0) == (m > cs.center)


def test_zeta_critical():
    assert cr.zeta_critical(2)
    assert cr.zeta_critical(-1)
    assert not cr.zeta_critical(1)
    assert not cr.zeta_critical(0)
    assert cr.zeta_critical(10) and cr.zeta_critical(-7)


def test_prediction_sym1():
    p = cr.deligne_prediction(1, 7, 12)
    assert (p.pow_2pii, p.e_plus, p.e_minus, p.e_delta) == (7, 0, 1, 0)
    p = cr.deligne_prediction(1, 8, 12)
    assert (p.pow_2pii, p.e_plus, p.e_minus, p.e_delta) == (8, 1, 0, 0)


def test_prediction_sym2():
    p = cr.deligne_prediction(2, 12, 12)  # even m
    assert (p.pow_2pii, p.e_plus, p.e_minus, p.e_delta) == (24, 1, 1, 1)
    p = cr.deligne_prediction(2, 11, 12)  # odd m
    assert (p.pow_2pii, p.e_plus, p.e_minus, p.e_delta) == (11, 1, 1, 0)


def test_prediction_sym3():
    p = cr.deligne_prediction(3, 12, 12)
    assert (p.pow_2pii, p.e_plus, p.e_minus, p.e_delta) == (24, 3, 1, 1)
    p = cr.deligne_prediction(3, 13, 12)
    assert (p.pow_2pii, p.e_plus, p.e_minus, p.e_delta) == (26, 1, 3, 1)


def test_prediction_sym4():
    p = cr.deligne_prediction(4, 13, 12)  # odd m
    assert (p.pow_2pii, p.e_plus, p.e_minus, p.e_delta) == (26, 3, 3, 1)
    p = cr.deligne_prediction(4, 24, 12)  # even m
    assert (p.pow_2pii, p.e_plus, p.e_minus, p.e_delta) == (72, 3, 3, 3)


def test_prediction_requires_critical():
    with pytest.raises(DomainError):
        cr.deligne_prediction(2, 2, 12)  # even m left of center is not critical


def test_exponent_sum_invariant():
    for n in range(1, 13):
        l = (n - 1) // 2 if n % 2 else n // 2
        want = ((l + 1) * (l + 2) // 2 + l * (l + 1) // 2) if n % 2 else l * (l + 1)
        for k in (4, 12, 21):
            for m in cr.critical_set(n, k):
                p = cr.deligne_prediction(n, m, k)
                assert p.e_plus + p.e_minus == want


def test_ratio_exponent_examples():
    assert cr.ratio_exponent(1, 9, 7, 12) == (2, 0)
    assert cr.ratio_exponent(2, 12, 11, 12) == (2, 1)
    assert cr.ratio_exponent(3, 12, 13, 12) == cr.NON_CANCELLING


def test_ratio_exponent_even_n_always_cancels():
    for m1 in cr.critical_set(4, 12):
        for m2 in cr.critical_set(4, 12):
            assert cr.ratio_exponent(4, m1, m2, 12) != cr.NON_CANCELLING


def test_ratio_exponent_antisymmetry():
    e1, g1 = cr.ratio_exponent(2, 14, 9, 12)
    e2, g2 = cr.ratio_exponent(2, 9, 14, 12)
    assert e1 == -e2 and g1 == -g2
