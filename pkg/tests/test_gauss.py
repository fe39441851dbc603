from fractions import Fraction

import pytest

from paramodular.dirichlet import DirichletCharacter, char_inverse, evaluate, primitive_characters
from paramodular.exactnum import CycloNumber
from paramodular.gauss import (
    LocalCharacter,
    epsilon_factor,
    epsilon_product_identity,
    epsilon_twist_check,
    gauss_sum,
    legendre_character,
    localize,
    localize_all,
    psi_eval,
    sqrt_int,
    sqrt_prime_power,
)
from paramodular.verify import characters_up_to

PRIMITIVE_24 = [c for c in characters_up_to(24) if c.modulus > 1]


def test_gauss_sum_absolute_square():
    for eta in PRIMITIVE_24:
        g = gauss_sum(eta)
        assert g * g.conjugate() == eta.modulus
        assert g * gauss_sum(char_inverse(eta)) == evaluate(eta, -1) * eta.modulus


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_legendre_gauss_sums(p):
    g = gauss_sum(legendre_character(p))
    z = complex(g)
    if p % 4 == 1:
        assert g * g == p and z.real > 0 and abs(z.imag) < 1e-12
    else:
        assert g * g == -p and z.imag > 0 and abs(z.real) < 1e-12


def test_gauss_sum_minus_four():
    assert gauss_sum(DirichletCharacter.from_label(4, 1)) == 2 * CycloNumber.i()


def test_sqrt_helpers():
    for n in (2, 3, 6, 8, 12, 50, 105):
        r = sqrt_int(n)
        assert r * r == n and complex(r).real > 0
    assert sqrt_prime_power(3, 3) * sqrt_prime_power(3, 3) == 27


def test_psi_values():
    # psi_p(x) = exp(-2 pi i {x}_p)
    assert psi_eval(5, Fraction(1, 5)) == CycloNumber.root_of_unity(5, -1)
    assert psi_eval(2, Fraction(3, 4)) == CycloNumber.root_of_unity(4, -3)
    assert psi_eval(3, 7) == 1
    with pytest.raises(ValueError):
        psi_eval(3, Fraction(1, 6))


def test_local_character_evaluation():
    eta = DirichletCharacter.from_label(15, 5)
    chi3 = localize(eta, 3)
    assert chi3.conductor_exponent == 1
    # chi_3(3) = eta_5(3)
    assert chi3(3) == evaluate(eta.component(5), 3)
    # unit action is eta_3^{-1}
    assert chi3(2) == evaluate(eta.component(3), 2).inverse()
    assert chi3(Fraction(2, 3)) == chi3(2) * chi3(3).inverse()
    with pytest.raises(ValueError):
        chi3(0)


def test_epsilon_product_identity_all_conductors():
    for eta in PRIMITIVE_24:
        res = epsilon_product_identity(eta)
        assert res.passed, res.claim


def test_alternative_dictionary_fails():
    quartic = [DirichletCharacter.from_label(5, 1), DirichletCharacter.from_label(5, 3)]
    assert not any(epsilon_product_identity(q, inverted=False).passed for q in quartic)


def test_epsilon_unramified_is_one():
    chi = LocalCharacter(7, DirichletCharacter.principal(1), Fraction(1, 3))
    assert chi.conductor_exponent == 0
    assert epsilon_factor(chi) == 1


def test_epsilon_twist_by_unramified():
    for eta in primitive_characters(25) + primitive_characters(8) + primitive_characters(7):
        for p, chi in localize_all(eta).items():
            for mu in (Fraction(1, 3), Fraction(1, 4), Fraction(2, 5)):
                assert epsilon_twist_check(mu, chi)


def test_epsilon_abs_one():
    for eta in PRIMITIVE_24[:40]:
        for chi in localize_all(eta).values():
            e = epsilon_factor(chi)
            assert e * e.conjugate() == 1


def test_identity_record_json():
    doc = epsilon_product_identity(legendre_character(5)).to_json()
    assert doc["pass"] is True and "lhs" in doc
