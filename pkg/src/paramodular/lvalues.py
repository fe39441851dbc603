"""Bernoulli numbers, generalized Bernoulli numbers and critical L-values.

For the trivial character mod 1 the generalized Bernoulli number is taken from
the same generating function t e^t / (e^t - 1), i.e. B_{k,1} = B_k except
B_{1,1} = +1/2.  With that convention l_special(2k, trivial) reproduces
zeta(2k).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .arith import factorize
from .dirichlet import DirichletCharacter, char_inverse
from .exactnum import CycloNumber, PiScaled
from .gauss import gauss_sum


_BERNOULLI: list[Fraction] = []


def _extend_bernoulli(n: int) -> None:
    # Akiyama-Tanigawa; yields B_1 = +1/2, flipped in bernoulli()
    while len(_BERNOULLI) <= n:
        m = len(_BERNOULLI)
        a = [Fraction(1, j + 1) for j in range(m + 1)]
        for top in range(1, m + 1):
            for j in range(m - top + 1):
                a[j] = (j + 1) * (a[j] - a[j + 1])
        _BERNOULLI.append(a[0])


def bernoulli(n: int) -> Fraction:
    """B_n with B_1 = -1/2."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    _extend_bernoulli(n)
    return -_BERNOULLI[1] if n == 1 else _BERNOULLI[n]


def bernoulli_poly(k: int, x: Fraction) -> Fraction:
    x = Fraction(x)
    return sum((comb(k, j) * bernoulli(j) * x ** (k - j) for j in range(k + 1)), Fraction(0))


def _check_generalized_input(eta: DirichletCharacter) -> None:
    if not eta.is_primitive():
        raise ValueError(f"{eta.label} is not primitive")


@lru_cache(maxsize=4096)
def bernoulli_generalized(k: int, eta: DirichletCharacter) -> CycloNumber:
    """B_{k,eta} = m^{k-1} sum_{a=1}^{m} eta(a) B_k(a/m), exact in Q(eta)."""
    _check_generalized_input(eta)
    m = eta.modulus
    if m == 1:
        return CycloNumber.rational(bernoulli(k) if k != 1 else Fraction(1, 2))
    o = eta.order
    # m^{k-1} sum_a eta(a) B_k(a/m) = sum_a eta(a) sum_j C(k,j) B_j a^{k-j} m^{j-1};
    # accumulate integer power sums per character value first
    power_sums: dict[int, list[int]] = {}
    for a in range(1, m):
        ph = eta.phase(a)
        if ph is None:
            continue
        ps = power_sums.setdefault(int(ph * o), [0] * (k + 1))
        apow = 1
        for t in range(k + 1):
            ps[t] += apow
            apow *= a
    coeffs = [comb(k, j) * bernoulli(j) * Fraction(m) ** (j - 1) for j in range(k + 1)]
    sums = {e: sum((coeffs[j] * ps[k - j] for j in range(k + 1)), Fraction(0)) for e, ps in power_sums.items()}
    return CycloNumber.from_exponent_sums(o, sums)


def bernoulli_generalized_series(k: int, eta: DirichletCharacter) -> CycloNumber:
    """B_{k,eta} by power-series division of sum_a eta(a) t e^{at} / (e^{mt} - 1).

    Independent of bernoulli_generalized; used to cross-check it.
    """
    _check_generalized_input(eta)
    m = eta.modulus
    # numerator series sum_a eta(a) e^{at} = sum_j S_j t^j / j!
    num = []
    for j in range(k + 1):
        s = CycloNumber.zero()
        for a in range(1, m + 1):
            ph = eta.phase(a)
            if ph is not None:
                s = s + CycloNumber.from_phase(ph) * Fraction(a**j, factorial(j))
        num.append(s)
    den = [Fraction(m ** (j + 1), factorial(j + 1)) for j in range(k + 1)]
    c: list[CycloNumber] = []
    for j in range(k + 1):
        acc = num[j]
        for i in range(1, j + 1):
            acc = acc - c[j - i] * den[i]
        c.append(acc / den[0])
    return c[k] * factorial(k)


@dataclass(frozen=True)
class SpecialValue:
    algebraic: CycloNumber
    pi_exponent: int
    character: DirichletCharacter
    s: int

    def as_pi_scaled(self) -> PiScaled:
        return PiScaled(self.algebraic, self.pi_exponent)

    def to_json(self) -> dict:
        return {
            "character": self.character.label,
            "s": self.s,
            "pi_exponent": self.pi_exponent,
            "algebraic": self.algebraic.to_json(),
        }


def zeta_special(s: int) -> SpecialValue:
    """zeta(2k) = (-1)^{k-1} (2 pi)^{2k} B_{2k} / (2 (2k)!)."""
    if s < 2 or s % 2:
        raise ValueError("zeta_special needs an even argument >= 2")
    k = s // 2
    alg = Fraction((-1) ** (k - 1) * 2**s) * bernoulli(s) / (2 * factorial(s))
    return SpecialValue(CycloNumber.rational(alg), s, DirichletCharacter.principal(1), s)


@lru_cache(maxsize=4096)
def l_special(k: int, eta: DirichletCharacter) -> SpecialValue:
    """L(k, eta) = (-1)^{1+(k-e)/2} G(eta)/(2 i^e) (2 pi/m)^k B_{k, eta-bar}/k!  for k = e mod 2."""
    if k < 1:
        raise ValueError("k must be positive")
    _check_generalized_input(eta)
    eps = eta.parity
    if (k - eps) % 2:
        raise ValueError(f"parity mismatch: k={k} but eta({eta.label}) has parity {eps}")
    m = eta.modulus
    sign = (-1) ** (1 + (k - eps) // 2)
    i_pow = CycloNumber.i() ** eps
    alg = gauss_sum(eta) / (i_pow * 2) * (Fraction(sign) * Fraction(2, m) ** k / factorial(k))
    alg = alg * bernoulli_generalized(k, char_inverse(eta))
    return SpecialValue(alg, k, eta, k)


def euler_correction(alpha: DirichletCharacter, ell: int, s: int) -> CycloNumber:
    """prod_{p | ell} (1 - alpha(p) p^{-s}), so L(s, chi mod ell) = this * L(s, alpha)."""
    if ell % alpha.modulus:
        raise ValueError("conductor must divide ell")
    out = CycloNumber.one()
    for p, _ in factorize(ell) if ell > 1 else ():
        ph = alpha.phase(p)
        if ph is not None:
            out = out * (1 - CycloNumber.from_phase(ph) * Fraction(1, p**s))
    return out
