from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from paramodular.arith import (
    divisors,
    euler_phi,
    factorize,
    is_fundamental_discriminant,
    kronecker,
    moebius,
    square_part,
)
from paramodular.dirichlet import (
    DirichletCharacter,
    char_inverse,
    char_power,
    char_product,
    enumerate_characters,
    kronecker_character,
    primitive_characters,
    primitivize,
    unit_group,
)


def brute_conductor(chi: DirichletCharacter) -> int:
    N = chi.modulus
    for d in divisors(N):
        if all(chi.phase(x) == 0 for x in range(1, N + 1) if gcd(x, N) == 1 and x % d == 1 % d):
            return d
    raise AssertionError


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


@given(st.integers(1, 10**6))
def test_factorize_multiplies_back(n):
    prod = 1
    for p, e in factorize(n):
        prod *= p**e
    assert prod == n


@given(st.integers(-200, 200).filter(bool), st.sampled_from([3, 5, 7, 11, 13, 17, 19, 23]))
def test_kronecker_matches_legendre(a, p):
    assert kronecker(a, p) == legendre(a, p)


@given(st.integers(-300, 300), st.integers(1, 60), st.integers(1, 60))
def test_kronecker_multiplicative_in_bottom(a, m, n):
    assert kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n)


def test_fundamental_discriminants_small():
    fund = [D for D in range(-40, 0) if is_fundamental_discriminant(D)]
    assert fund == [-40, -39, -35, -31, -24, -23, -20, -19, -15, -11, -8, -7, -4, -3]


def test_square_part():
    assert square_part(-16) == (1, 4)
    assert square_part(72) == (2, 6)


def test_counts_and_primitive_counts():
    for N in range(1, 41):
        chars = enumerate_characters(N)
        assert len(chars) == euler_phi(N)
        prim = sum(moebius(N // d) * euler_phi(d) for d in divisors(N))
        assert len(primitive_characters(N)) == prim


@pytest.mark.parametrize("N", [5, 8, 12, 15, 16, 24, 36])
def test_conductor_against_brute_force(N):
    for chi in enumerate_characters(N):
        assert chi.conductor == brute_conductor(chi)


@pytest.mark.parametrize("N", [5, 8, 12, 15, 16, 24])
def test_character_axioms(N):
    for chi in enumerate_characters(N):
        for x in range(1, N):
            for y in range(1, N):
                px, py, pxy = chi.phase(x), chi.phase(y), chi.phase(x * y % N)
                if px is None or py is None:
                    assert pxy is None
                else:
                    assert pxy == (px + py) % 1


def test_label_roundtrip_and_order():
    for N in (7, 8, 20, 24):
        for chi in enumerate_characters(N):
            assert DirichletCharacter.from_label(N, chi.index) == chi
            assert chi.label == f"{N}:{chi.index}"
            assert char_power(chi, chi.order).is_principal()
    with pytest.raises(ValueError):
        DirichletCharacter.from_label(5, 4)


def test_generators_documented_order():
    G = unit_group(40)
    # 2^3 contributes -1 then 5, then a primitive root mod 5
    assert G.orders == (2, 2, 4)
    assert G.generators[0] % 8 == 7 and G.generators[1] % 8 == 5 and G.generators[2] % 5 == 2


def test_known_characters():
    leg5 = DirichletCharacter.from_label(5, 2)
    assert [leg5.phase(x) for x in range(1, 5)] == [0, Fraction(1, 2), Fraction(1, 2), 0]
    assert leg5.parity == 0 and leg5.order == 2
    chi3 = DirichletCharacter.from_label(3, 1)
    assert chi3.parity == 1 and chi3 == kronecker_character(-3)
    assert [c.parity for c in primitive_characters(5)] == [1, 0, 1]


def test_kronecker_characters():
    for D in range(-200, 200):
        if D in (0, 1) or not is_fundamental_discriminant(D):
            continue
        chi = kronecker_character(D)
        assert chi.is_primitive() and chi.order == 2
        assert chi.parity == (1 if D < 0 else 0)
    with pytest.raises(ValueError):
        kronecker_character(-16)


def test_primitivize_and_products():
    chi = char_product(kronecker_character(-4), DirichletCharacter.from_label(5, 2))
    assert chi.modulus == 20 and chi.is_primitive()
    quartic = DirichletCharacter.from_label(5, 1)
    alpha = primitivize(char_product(kronecker_character(-4), quartic))
    assert alpha.modulus == 20
    beta = primitivize(char_power(quartic, 2))
    assert beta == DirichletCharacter.from_label(5, 2)
    lifted = DirichletCharacter.from_label(5, 2).lift(15)
    assert primitivize(lifted) == DirichletCharacter.from_label(5, 2)
    chi3 = kronecker_character(-3)
    assert primitivize(char_product(chi3, char_inverse(chi3))).modulus == 1


def test_component_recombines():
    for chi in primitive_characters(60):
        for x in range(1, 60):
            if gcd(x, 60) != 1:
                continue
            total = sum((chi.component(p).phase(x % p**e) for p, e in factorize(60)), Fraction(0)) % 1
            assert total == chi.phase(x)
