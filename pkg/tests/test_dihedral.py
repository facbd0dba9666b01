import pytest

from symval import dihedral as dh
from symval import qseries as qs
from symval.errors import DomainError, IllDefinedCharacterError


@pytest.fixture(scope="module")
def gauss_field():
    return dh.ImagQuadField(-4)


@pytest.fixture(scope="module")
def weight2_chi(gauss_field):
    return dh.HeckeCharacter(gauss_field, 1, dh.parse_conductor("(1+i)^3", gauss_field))


@pytest.fixture(scope="module")
def cm32(weight2_chi):
    return dh.cm_newform(weight2_chi, 600)


def test_field_rejects_higher_class_number():
    with pytest.raises(DomainError):
        dh.ImagQuadField(-5)
    with pytest.raises(DomainError):
        dh.ImagQuadField(-20)


def test_quadint_arithmetic(gauss_field):
    i = gauss_field.theta
    assert (i * i).a == -1
    x = gauss_field.element(-1, 2)
    assert x.norm() == 5
    assert x.conj() == gauss_field.element(-1, -2)
    assert (x * x.conj()).a == 5
    K3 = dh.ImagQuadField(-3)
    z = K3.theta
    assert (z**6) == K3.element(1)  # zeta_6
    assert z.norm() == 1


def test_splitting(gauss_field):
    assert gauss_field.splitting(5) == "split"
    assert gauss_field.splitting(3) == "inert"
    assert gauss_field.splitting(2) == "ramified"
    pi = gauss_field.prime_above(5)
    assert pi.norm() == 5
    assert gauss_field.prime_above(2).norm() == 2


def test_conductor_parsing(gauss_field):
    f = dh.parse_conductor("(1+i)^3", gauss_field)
    assert f.norm() == 8
    assert dh.parse_conductor("(2)", gauss_field).norm() == 4
    K7 = dh.ImagQuadField(-7)
    assert dh.parse_conductor("(2w-1)", K7).norm() == 7
    with pytest.raises(DomainError):
        dh.parse_conductor("(1+", gauss_field)


def test_character_construction(weight2_chi):
    assert weight2_chi.rational_conductor() == 4
    assert weight2_chi.level == 32
    assert weight2_chi.weight == 2


def test_character_rejections(gauss_field):
    # units congruent to 1 mod (1): need eps^u = 1 for every unit
    with pytest.raises(IllDefinedCharacterError):
        dh.HeckeCharacter(gauss_field, 1, gauss_field.element(1))
    # Galois-unstable conductor
    with pytest.raises(IllDefinedCharacterError):
        dh.HeckeCharacter(gauss_field, 1, gauss_field.element(2, 1))
    # nontrivial ray class group: no normalized generators
    K7 = dh.ImagQuadField(-7)
    with pytest.raises(IllDefinedCharacterError):
        chi = dh.HeckeCharacter(K7, 1, dh.parse_conductor("(2w-1)", K7))
        dh.cm_newform(chi, 50)
    # weight-one configurations are out
    with pytest.raises(DomainError):
        dh.HeckeCharacter(gauss_field, 0, gauss_field.element(2, 2))


def test_cm_form_spec_examples(cm32, weight2_chi, gauss_field):
    f = cm32.form
    assert f.weight == 2 and f.level == 32
    assert f.nebentypus.is_trivial
    assert f.a(3) == 0  # inert
    assert f.a(7) == 0  # 7 = 3 mod 4 inert
    assert f.a(5) == -2
    pi5 = gauss_field.prime_above(5)
    assert weight2_chi.normalized_generator(pi5) == gauss_field.element(-1, 2)
    assert f.a(2) == 0  # 2 divides the conductor norm


def test_cm_registry_validates():
    K = dh.ImagQuadField(-4)
    configs = [
        (K, 1, "(1+i)^3"),
        (K, 2, "(1+i)^3"),
        (K, 3, "(1+i)^3"),
        (K, 4, "(1)"),
    ]
    for field, u, cond in configs:
        chi = dh.HeckeCharacter(field, u, dh.parse_conductor(cond, field))
        cm = dh.cm_newform(chi, 500)
        assert cm.form.is_validated
        assert cm.form.weight == u + 1


def test_nebentypus_identity(cm32, weight2_chi, gauss_field):
    # omega * omega_K = chi_Q at every good prime
    f = cm32.form
    wk = gauss_field.quadratic_character()
    for p in range(3, 500, 2):
        if any(p % q == 0 for q in range(2, p)):
            continue
        t1 = f.nebentypus.value_exact(p)
        t2 = wk.value_exact(p)
        assert (t1 + t2) % 1 == weight2_chi.rational_restriction_turn(p)


def test_isobaric_factors():
    assert dh.isobaric_factors(1) == [("AI", 1, 0)]
    assert dh.isobaric_factors(2) == [("AI", 2, 0), ("abelian", 1)]
    assert dh.isobaric_factors(3) == [("AI", 3, 0), ("AI", 2, 1)]
    # degree bookkeeping: 2 per induced summand, 1 for the abelian one
    for n in range(1, 13):
        deg = sum(2 if kind == "AI" else 1 for kind, *_ in dh.isobaric_factors(n))
        assert deg == n + 1


def test_decomposition_identity(cm32):
    for n in range(1, 5):
        rep = dh.verify_decomposition(cm32, n, 50)
        assert rep.ok, rep.failures[:2]
        assert rep.skipped == [2]
        assert len(rep.checked) > 0


def test_decomposition_trivial_at_n1():
    # regression anchor: Sym^1 is the form itself, for every supported form
    K = dh.ImagQuadField(-4)
    for u, cond in [(1, "(1+i)^3"), (2, "(1+i)^3"), (4, "(1)")]:
        chi = dh.HeckeCharacter(K, u, dh.parse_conductor(cond, K))
        cm = dh.cm_newform(chi, 120)
        assert dh.verify_decomposition(cm, 1, 100).ok


def test_period_relation_exponents():
    plus, minus = dh.period_relation_exponents(3)
    assert plus.exponent == 3 and plus.extra_factor == "1"
    assert minus.exponent == 3 and minus.extra_factor == "g(omega_K)"
    plus, minus = dh.period_relation_exponents(1)
    assert plus.exponent == 1 and minus.exponent == 1
