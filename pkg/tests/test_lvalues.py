from fractions import Fraction

import mpmath as mp
import pytest

from paramodular.crosscheck import l_value
from paramodular.dirichlet import DirichletCharacter, kronecker_character
from paramodular.exactnum import CycloNumber
from paramodular.gauss import legendre_character
from paramodular.lvalues import (
    bernoulli,
    bernoulli_generalized,
    bernoulli_generalized_series,
    bernoulli_poly,
    euler_correction,
    l_special,
    zeta_special,
)
from paramodular.verify import characters_up_to


def test_bernoulli_numbers():
    assert [bernoulli(n) for n in range(9)] == [
        1,
        Fraction(-1, 2),
        Fraction(1, 6),
        0,
        Fraction(-1, 30),
        0,
        Fraction(1, 42),
        0,
        Fraction(-1, 30),
    ]
    assert bernoulli(12) == Fraction(-691, 2730)
    with pytest.raises(ValueError):
        bernoulli(-1)


def test_bernoulli_polynomials():
    assert bernoulli_poly(2, Fraction(1, 2)) == Fraction(-1, 12)
    # B_k(1 - x) = (-1)^k B_k(x)
    for k in range(1, 8):
        x = Fraction(2, 7)
        assert bernoulli_poly(k, 1 - x) == (-1) ** k * bernoulli_poly(k, x)


def test_generalized_small_values():
    assert bernoulli_generalized(1, kronecker_character(-3)) == Fraction(-1, 3)
    assert bernoulli_generalized(1, kronecker_character(-4)) == Fraction(-1, 2)
    assert bernoulli_generalized(2, legendre_character(5)) == Fraction(4, 5)
    one = DirichletCharacter.principal(1)
    assert bernoulli_generalized(1, one) == Fraction(1, 2)
    assert bernoulli_generalized(4, one) == bernoulli(4)


def test_two_algorithms_and_parity():
    for eta in characters_up_to(24):
        for k in range(1, 11):
            b = bernoulli_generalized(k, eta)
            assert b == bernoulli_generalized_series(k, eta)
            if eta.modulus > 1 and (k - eta.parity) % 2:
                assert b.is_zero()


def test_generalized_needs_primitive():
    with pytest.raises(ValueError):
        bernoulli_generalized(2, DirichletCharacter.principal(5))


def test_zeta_values():
    assert zeta_special(2).algebraic == Fraction(1, 6)
    assert zeta_special(4).algebraic == Fraction(1, 90)
    assert zeta_special(4).pi_exponent == 4
    with pytest.raises(ValueError):
        zeta_special(3)


def test_l_special_classical():
    v = l_special(1, kronecker_character(-4))
    assert v.algebraic == Fraction(1, 4) and v.pi_exponent == 1
    one = DirichletCharacter.principal(1)
    assert l_special(6, one).algebraic == zeta_special(6).algebraic


def test_l_special_parity_guard():
    with pytest.raises(ValueError):
        l_special(2, kronecker_character(-3))
    with pytest.raises(ValueError):
        l_special(3, legendre_character(5))


@pytest.mark.parametrize("label", ["5:1", "5:2", "7:2", "8:1", "12:3", "13:5", "16:3", "21:7"])
def test_l_special_against_hurwitz(label):
    N, idx = map(int, label.split(":"))
    eta = DirichletCharacter.from_label(N, idx)
    if not eta.is_primitive():
        pytest.skip("not primitive")
    with mp.workdps(40):
        for k in range(1, 9):
            if (k - eta.parity) % 2:
                continue
            exact = l_special(k, eta).algebraic.embed(40) * mp.pi**k
            approx = l_value(k, lambda x: _val40(eta, x), N)
            assert abs(exact - approx) < mp.mpf(10) ** -25 * abs(exact)


def _val40(eta, x):
    ph = eta.phase(x % eta.modulus)
    return mp.mpc(0) if ph is None else mp.expjpi(2 * mp.mpf(ph.numerator) / ph.denominator)


def test_euler_correction():
    leg5 = legendre_character(5)
    # chi_{-3} at 2 is -1: 1 - (-1)/2
    assert euler_correction(kronecker_character(-3), 6, 1) == Fraction(3, 2)
    assert euler_correction(leg5, 10, 1) == Fraction(3, 2)
    assert euler_correction(leg5, 5, 2) == 1
    assert euler_correction(kronecker_character(-3), 12, 1) == Fraction(3, 2)
    with pytest.raises(ValueError):
        euler_correction(leg5, 12, 2)


def test_special_value_json():
    doc = l_special(2, legendre_character(5)).to_json()
    assert doc["pi_exponent"] == 2 and doc["character"] == "5:2"
    assert isinstance(CycloNumber.from_json(doc["algebraic"]), CycloNumber)
