from fractions import Fraction
from math import gcd

import mpmath as mp
import pytest
from hypothesis import given, strategies as st

from paramodular.exactnum import (
    CycloNumber,
    PiScaled,
    SubfieldSpec,
    cyclotomic_poly,
    embed_complex,
    fixing_subgroup,
    galois_apply,
    in_subfield,
    promote,
)

ORDERS = [1, 3, 4, 8, 12, 15, 40]

small_q = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def cyclo(draw, order=None):
    M = draw(st.sampled_from(ORDERS)) if order is None else order
    n = draw(st.integers(0, 3))
    x = CycloNumber.zero(M)
    for _ in range(n):
        x = x + CycloNumber.root_of_unity(M, draw(st.integers(0, M - 1))) * draw(small_q)
    return x


@st.composite
def same_order_triple(draw):
    M = draw(st.sampled_from(ORDERS))
    return draw(cyclo(M)), draw(cyclo(M)), draw(cyclo(M))


@given(same_order_triple())
def test_ring_axioms(t):
    a, b, c = t
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == CycloNumber.zero()


@given(cyclo(), cyclo())
def test_mixed_orders_promote(a, b):
    s = a + b
    assert abs(complex(s) - (complex(a) + complex(b))) < 1e-9


@given(cyclo())
def test_inverse(a):
    if a.is_zero():
        with pytest.raises(ZeroDivisionError):
            a.inverse()
        return
    assert a * a.inverse() == CycloNumber.one()


@given(cyclo(), st.integers(0, 200))
def test_galois_is_ring_hom(a, t):
    M = a.order
    units = [u for u in range(1, max(M, 2)) if gcd(u, M) == 1] or [1]
    s = units[t % len(units)]
    b = a * a + a
    assert b.galois(s) == a.galois(s) * a.galois(s) + a.galois(s)


@given(cyclo())
def test_json_roundtrip(a):
    assert CycloNumber.from_json(a.to_json()) == a


@given(cyclo())
def test_minimize_keeps_value(a):
    b = a.minimize_order()
    assert b == a
    assert a.order % b.order == 0


def test_cyclotomic_polys():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)
    assert len(cyclotomic_poly(15)) - 1 == 8


def test_inverse_of_one_plus_zeta3():
    z = CycloNumber.root_of_unity(3)
    assert (1 + z).inverse() == -z
    assert (1 + z) * (-z) == 1


def test_i_squared_and_zeta8():
    i = CycloNumber.i()
    assert i * i == -1
    z8 = CycloNumber.root_of_unity(8)
    assert z8**2 == i
    assert (z8 + z8 ** -1) ** 2 == 2


def test_roots_of_unity_reduce():
    assert CycloNumber.root_of_unity(12, 4) == CycloNumber.root_of_unity(3)
    assert CycloNumber.root_of_unity(6, 3) == -1
    assert CycloNumber.from_phase(Fraction(1, 2)) == -1


def test_rational_detection_and_fraction():
    z5 = CycloNumber.root_of_unity(5)
    s = sum((z5**k for k in range(5)), CycloNumber.zero())
    assert s.is_zero()
    t = sum((z5**k for k in range(1, 5)), CycloNumber.zero())
    assert t.is_rational() and t.to_fraction() == -1
    with pytest.raises(ValueError):
        z5.to_fraction()


def test_embedding_precision():
    z = CycloNumber.root_of_unity(40, 7)
    with mp.workdps(40):
        target = mp.expjpi(mp.mpf(14) / 40)
        assert abs(embed_complex(z, 40) - target) < mp.mpf(10) ** -35


def test_promote_and_galois_helpers():
    z3 = CycloNumber.root_of_unity(3)
    p = promote(z3, 12)
    assert p.order == 12 and p == z3
    assert galois_apply(2, z3) == z3**2
    assert z3.conjugate() == z3**2


def test_subfield_membership():
    sqrt5 = 2 * CycloNumber.root_of_unity(5) ** 1 + 2 * CycloNumber.root_of_unity(5, 4) + 1
    # 1 + 2(z + z^-1) = sqrt 5
    assert sqrt5 * sqrt5 == 5
    F = SubfieldSpec(5, (sqrt5,))
    assert in_subfield(sqrt5 * 3 + 1, F)
    assert not in_subfield(CycloNumber.root_of_unity(5), F)
    assert len(fixing_subgroup(F, 5)) == 2
    Q = SubfieldSpec(1, (CycloNumber.one(),))
    assert in_subfield(CycloNumber.rational(Fraction(7, 3)), Q)
    assert not in_subfield(CycloNumber.i(), Q)


def test_pi_scaled_ledger():
    a = PiScaled(CycloNumber.rational(2), 3)
    b = PiScaled(CycloNumber.rational(4), 3)
    assert (a / b).pi_exponent == 0
    assert (a / b).require_pi_free() == Fraction(1, 2)
    with pytest.raises(ArithmeticError):
        a.require_pi_free()
    with pytest.raises(ValueError):
        a + PiScaled(CycloNumber.one(), 2)
    assert abs(a.embed(20) / (2 * mp.pi**3) - 1) < 1e-12


def test_subfield_spec_validates():
    with pytest.raises(ValueError):
        SubfieldSpec(4, (CycloNumber.root_of_unity(3),))
