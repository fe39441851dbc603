"""Gauss sums, local components of Dirichlet characters and local epsilon factors.

Conventions (chosen so that prod_p eps(1/2, chi_p, psi_p) = eta(-1) G(eta) / sqrt(N)):

* the local character chi_p attached to a primitive eta = prod_q eta_q acts on
  Z_p^x as eta_p^{-1} and sends p to prod_{q != p} eta_q(p);
* psi_p(x) = exp(-2 pi i {x}_p), trivial on Z_p;
* Haar measure on Q_p with vol(Z_p) = 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .arith import factorize, lcm, vp
from .dirichlet import DirichletCharacter, char_inverse, evaluate
from .exactnum import CycloNumber

PSI_SIGN = -1


def gauss_sum(chi: DirichletCharacter) -> CycloNumber:
    """G(chi) = sum_{k mod m} chi(k) exp(2 pi i k / m)."""
    m = chi.modulus
    if m == 1:
        return CycloNumber.one()
    o = chi.order
    L = lcm(m, o)
    sums: dict[int, Fraction] = {}
    for k in range(1, m):
        ph = chi.phase(k)
        if ph is None:
            continue
        e = (k * (L // m) + int(ph * L)) % L
        sums[e] = sums.get(e, 0) + 1
    return CycloNumber.from_exponent_sums(L, sums)


@lru_cache(maxsize=None)
def legendre_character(p: int) -> DirichletCharacter:
    return DirichletCharacter.from_phases(p, lambda x: Fraction(0) if pow(x, (p - 1) // 2, p) == 1 else Fraction(1, 2))


@lru_cache(maxsize=None)
def sqrt_prime(p: int) -> CycloNumber:
    """The positive square root of a prime p as a cyclotomic number."""
    if p == 2:
        z8 = CycloNumber.root_of_unity(8)
        return z8 + z8.inverse()
    g = gauss_sum(legendre_character(p))
    return g if p % 4 == 1 else g / CycloNumber.i()


def sqrt_int(n: int) -> CycloNumber:
    """Positive square root of a positive integer."""
    out = CycloNumber.one()
    for p, e in factorize(n) if n > 1 else ():
        out = out * p ** (e // 2)
        if e % 2:
            out = out * sqrt_prime(p)
    return out


def sqrt_prime_power(p: int, a: int) -> CycloNumber:
    """p^(a/2) exactly, for an integer a (possibly negative)."""
    half = CycloNumber.rational(Fraction(p) ** (a // 2))
    return half * sqrt_prime(p) if a % 2 else half


# ---------------------------------------------------------------- local data


@dataclass(frozen=True)
class LocalCharacter:
    """A character of Q_p^x: chi_p(p^v u) = value_at_p^v * unit_char(u)."""

    p: int
    unit_char: DirichletCharacter  # modulus p^a; the action on Z_p^x
    value_phase: Fraction = Fraction(0)  # chi_p(p) = exp(2 pi i value_phase)

    @property
    def conductor_exponent(self) -> int:
        c = self.unit_char.conductor
        return vp(self.p, c) if c > 1 else 0

    @property
    def value_at_p(self) -> CycloNumber:
        return CycloNumber.from_phase(self.value_phase)

    def phase(self, x) -> Fraction:
        """Phase of chi_p(x) for a nonzero rational x."""
        x = Fraction(x)
        if x == 0:
            raise ValueError("chi_p(0) is undefined")
        v = _vq(self.p, x)
        u = x / Fraction(self.p) ** v
        ph = (v * self.value_phase) % 1
        q = self.unit_char.modulus
        if q > 1:
            res = u.numerator * pow(u.denominator, -1, q) % q
            ph = (ph + self.unit_char.phase(res)) % 1
        return ph

    def __call__(self, x) -> CycloNumber:
        return CycloNumber.from_phase(self.phase(x))

    def twist(self, mu_phase: Fraction) -> "LocalCharacter":
        """mu * chi_p for the unramified mu with mu(p) = exp(2 pi i mu_phase)."""
        return LocalCharacter(self.p, self.unit_char, (self.value_phase + Fraction(mu_phase)) % 1)


def _vq(p: int, x: Fraction) -> int:
    return (vp(p, x.numerator) if x.numerator % p == 0 else 0) - (
        vp(p, x.denominator) if x.denominator % p == 0 else 0
    )


def localize(eta: DirichletCharacter, p: int, *, inverted: bool = True) -> LocalCharacter:
    """Local component chi_p of the idele class character of a primitive eta.

    ``inverted=False`` gives the alternative dictionary (units act by eta_p,
    chi_p(p) = prod eta_q(p)^{-1}); it exists only to show that it fails the
    global epsilon identity.
    """
    if not eta.is_primitive():
        raise ValueError("localize requires a primitive character")
    N = eta.modulus
    comp = eta.component(p)
    val = Fraction(0)
    for q, _ in factorize(N) if N > 1 else ():
        if q != p:
            val += eta.component(q).phase(p)
    if inverted:
        return LocalCharacter(p, char_inverse(comp), val % 1)
    return LocalCharacter(p, comp, (-val) % 1)


def localize_all(eta: DirichletCharacter, *, inverted: bool = True) -> dict[int, LocalCharacter]:
    """Ramified components; every p not dividing N is unramified with chi_p(p) = eta(p)."""
    N = eta.modulus
    return {p: localize(eta, p, inverted=inverted) for p, _ in (factorize(N) if N > 1 else ())}


def psi_eval(p: int, x) -> CycloNumber:
    """psi_p(x) = exp(-2 pi i {x}_p) for x with p-power denominator."""
    x = Fraction(x)
    d = x.denominator
    if d == 1:
        return CycloNumber.one()
    if d != p ** vp(p, d):
        raise ValueError(f"denominator of {x} is not a power of {p}")
    return CycloNumber.root_of_unity(d, PSI_SIGN * x.numerator)


def epsilon_factor(chi: LocalCharacter) -> CycloNumber:
    """eps(1/2, chi_p, psi_p) from the integral formula with x = p^{-a}."""
    p, a = chi.p, chi.conductor_exponent
    if a == 0:
        return CycloNumber.one()
    pa = p**a
    o = lcm(pa, chi.unit_char.order)
    # integral of chi(mu^{-1}) psi(mu p^-a) over Z_p^x = p^-a sum over units mod p^a
    sums: dict[int, Fraction] = {}
    for u in range(1, pa):
        if u % p == 0:
            continue
        ph = -chi.phase(u)  # chi(u^{-1})
        e = int((ph % 1) * o) + PSI_SIGN * u * (o // pa)
        sums[e % o] = sums.get(e % o, 0) + 1
    integral = CycloNumber.from_exponent_sums(o, sums) * Fraction(1, pa)
    chi_x_inv = CycloNumber.from_phase(-chi.phase(Fraction(1, pa)))
    return sqrt_prime_power(p, a) * chi_x_inv * integral


def epsilon_twist_check(mu_phase: Fraction, chi: LocalCharacter) -> bool:
    """eps(mu chi) == mu(p)^{a(chi)} eps(chi) for an unramified mu."""
    lhs = epsilon_factor(chi.twist(mu_phase))
    rhs = CycloNumber.from_phase(Fraction(mu_phase) * chi.conductor_exponent) * epsilon_factor(chi)
    return lhs == rhs


@dataclass
class IdentityCheck:
    claim: str
    lhs: CycloNumber
    rhs: CycloNumber
    passed: bool
    meta: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"claim": self.claim, "lhs": self.lhs.to_json(), "rhs": self.rhs.to_json(), "pass": self.passed, **self.meta}


def epsilon_product_identity(eta: DirichletCharacter, *, inverted: bool = True) -> IdentityCheck:
    """Check prod_p eps(1/2, chi_p, psi_p) == eta(-1) G(eta) / sqrt(N)."""
    N = eta.modulus
    lhs = CycloNumber.one()
    for chi in localize_all(eta, inverted=inverted).values():
        lhs = lhs * epsilon_factor(chi)
    rhs = evaluate(eta, -1) * gauss_sum(eta) / sqrt_int(N)
    return IdentityCheck(
        claim=f"prod_p eps(1/2, chi_p, psi_p) = eta(-1) G(eta)/sqrt(N) for eta = {eta.label}",
        lhs=lhs,
        rhs=rhs,
        passed=lhs == rhs,
    )
