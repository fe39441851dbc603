"""Dirichlet characters as exponent vectors on fixed generators of (Z/NZ)^x.

Generator ordering (this fixes character labels): prime powers p^e || N in
increasing p; an odd p^e contributes its least primitive root; 2^2 contributes
-1; 2^e with e >= 3 contributes -1 then 5.  Each generator is lifted to a
residue mod N that is 1 at every other prime power.  A character is the tuple
(x_1, ..., x_r) with chi(g_i) = exp(2 pi i x_i / ord(g_i)), and its label index
is the mixed-radix number with digits x_i, first generator most significant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from math import gcd
from typing import Callable

from .arith import factorize, is_fundamental_discriminant, kronecker, lcm, vp
from .exactnum import CycloNumber


def _crt_lift(residue: int, q: int, N: int) -> int:
    """x mod N with x = residue mod q and x = 1 mod N/q (gcd(q, N/q) = 1)."""
    rest = N // q
    if rest == 1:
        return residue % N
    # x = residue + q*t, need residue + q*t = 1 mod rest
    t = ((1 - residue) * pow(q, -1, rest)) % rest
    return (residue + q * t) % N


def _primitive_root(p: int, e: int) -> int:
    pe = p**e
    order = (p - 1) * p ** (e - 1)
    fs = [q for q, _ in factorize(order)]
    for g in range(2, pe):
        if gcd(g, p) == 1 and all(pow(g, order // q, pe) != 1 for q in fs):
            return g
    raise ArithmeticError(f"no primitive root mod {pe}")


@dataclass(frozen=True)
class _Component:
    p: int
    e: int
    gens: tuple[int, ...]  # local generators mod p^e
    orders: tuple[int, ...]
    logs: dict  # residue mod p^e -> tuple of exponents


class UnitGroup:
    """(Z/NZ)^x with explicit CRT generators and discrete-log tables."""

    def __init__(self, N: int):
        if N < 1:
            raise ValueError("modulus must be positive")
        self.N = N
        comps = []
        for p, e in factorize(N) if N > 1 else ():
            pe = p**e
            if p == 2:
                if e == 1:
                    gens, orders = (), ()
                elif e == 2:
                    gens, orders = (pe - 1,), (2,)
                else:
                    gens, orders = (pe - 1, 5), (2, 2 ** (e - 2))
            else:
                gens, orders = (_primitive_root(p, e),), ((p - 1) * p ** (e - 1),)
            logs = {}
            for exps in product(*[range(o) for o in orders]):
                x = 1
                for g, k in zip(gens, exps):
                    x = x * pow(g, k, pe) % pe
                logs[x] = exps
            comps.append(_Component(p, e, gens, orders, logs))
        self.components = tuple(comps)
        self.generators = tuple(_crt_lift(g, c.p**c.e, N) for c in comps for g in c.gens)
        self.orders = tuple(o for c in comps for o in c.orders)
        self.exponent = lcm(*self.orders) if self.orders else 1

    def dlog(self, x: int) -> tuple[int, ...] | None:
        """Exponent vector of x on the generators, or None if gcd(x, N) > 1."""
        if gcd(x, self.N) != 1:
            return None
        out = []
        for c in self.components:
            out.extend(c.logs[x % (c.p**c.e)])
        return tuple(out)

    @cached_property
    def size(self) -> int:
        s = 1
        for o in self.orders:
            s *= o
        return s


@lru_cache(maxsize=None)
def unit_group(N: int) -> UnitGroup:
    return UnitGroup(N)


class DirichletCharacter:
    """A Dirichlet character mod N; immutable."""

    __slots__ = ("modulus", "exponents", "__dict__")

    def __init__(self, modulus: int, exponents: tuple[int, ...] | list[int]):
        G = unit_group(modulus)
        if len(exponents) != len(G.orders):
            raise ValueError(f"expected {len(G.orders)} exponents for modulus {modulus}")
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "exponents", tuple(x % o for x, o in zip(exponents, G.orders)))

    def __setattr__(self, name, value):
        raise AttributeError("DirichletCharacter is immutable")

    @property
    def group(self) -> UnitGroup:
        return unit_group(self.modulus)

    # -------------------------------------------------------------- building
    @classmethod
    def principal(cls, N: int = 1) -> "DirichletCharacter":
        return cls(N, (0,) * len(unit_group(N).orders))

    @classmethod
    def from_label(cls, N: int, index: int) -> "DirichletCharacter":
        orders = unit_group(N).orders
        size = 1
        for o in orders:
            size *= o
        if not 0 <= index < size:
            raise ValueError(f"character index {index} out of range for modulus {N}")
        exps = []
        for o in reversed(orders):
            exps.append(index % o)
            index //= o
        return cls(N, tuple(reversed(exps)))

    @classmethod
    def from_phases(cls, N: int, phase: Callable[[int], Fraction]) -> "DirichletCharacter":
        """Character mod N whose value at each unit x is exp(2 pi i phase(x))."""
        G = unit_group(N)
        exps = []
        for g, o in zip(G.generators, G.orders):
            t = (Fraction(phase(g)) % 1) * o
            if t.denominator != 1:
                raise ValueError("phase function is not a character of the stated modulus")
            exps.append(int(t))
        return cls(N, tuple(exps))

    # ------------------------------------------------------------ evaluation
    def phase(self, x: int) -> Fraction | None:
        """chi(x) = exp(2 pi i * phase), or None when gcd(x, N) > 1."""
        logs = self.group.dlog(x)
        if logs is None:
            return None
        L = self.group.exponent
        t = sum(a * l * (L // o) for a, l, o in zip(self.exponents, logs, self.group.orders))
        return Fraction(t % L, L)

    def __call__(self, x: int) -> CycloNumber:
        return evaluate(self, x)

    def complex_value(self, x: int) -> complex:
        import cmath

        ph = self.phase(x)
        return 0j if ph is None else cmath.exp(2j * cmath.pi * float(ph))

    # ----------------------------------------------------------- invariants
    @cached_property
    def order(self) -> int:
        return lcm(*[o // gcd(x, o) for x, o in zip(self.exponents, self.group.orders)]) if self.exponents else 1

    @cached_property
    def index(self) -> int:
        idx = 0
        for x, o in zip(self.exponents, self.group.orders):
            idx = idx * o + x
        return idx

    @cached_property
    def parity(self) -> int:
        """0 if chi(-1) = 1, 1 if chi(-1) = -1."""
        return 0 if self.phase(-1) == 0 else 1

    def is_principal(self) -> bool:
        return not any(self.exponents)

    @cached_property
    def conductor(self) -> int:
        cond = 1
        i = 0
        for c in self.group.components:
            k = len(c.gens)
            xs, os_ = self.exponents[i : i + k], c.orders
            i += k
            if c.p == 2:
                if c.e == 1:
                    continue
                if c.e == 2:
                    cond *= 4 if xs[0] else 1
                    continue
                ob = os_[1] // gcd(xs[1], os_[1])
                if ob > 1:
                    cond *= 2 ** (2 + vp(2, ob))
                elif xs[0]:
                    cond *= 4
            else:
                o = os_[0] // gcd(xs[0], os_[0])
                if o > 1:
                    cond *= c.p ** (1 + (vp(c.p, o) if o % c.p == 0 else 0))
        return cond

    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    @cached_property
    def value_order(self) -> int:
        """Order of the root of unity generating the values (= character order)."""
        return self.order

    # ------------------------------------------------------------ structure
    def __eq__(self, other):
        return (
            isinstance(other, DirichletCharacter)
            and self.modulus == other.modulus
            and self.exponents == other.exponents
        )

    def __hash__(self):
        return hash((self.modulus, self.exponents))

    def __repr__(self):
        return f"DirichletCharacter({self.modulus}:{self.index})"

    @property
    def label(self) -> str:
        return f"{self.modulus}:{self.index}"

    def to_json(self) -> dict:
        return {
            "modulus": self.modulus,
            "index": self.index,
            "conductor": self.conductor,
            "order": self.order,
            "parity": self.parity,
        }

    def lift(self, N: int) -> "DirichletCharacter":
        """The character mod N (a multiple of the modulus) induced by self."""
        if N % self.modulus:
            raise ValueError(f"{self.modulus} does not divide {N}")
        return DirichletCharacter.from_phases(N, lambda x: self.phase(x % self.modulus))

    def component(self, p: int) -> "DirichletCharacter":
        """The p-part eta_p of eta = prod_q eta_q, a character mod p^{v_p(N)}."""
        e = vp(p, self.modulus) if self.modulus % p == 0 else 0
        q = p**e
        return DirichletCharacter.from_phases(q, lambda x: self.phase(_crt_lift(x, q, self.modulus)))

    def conj(self) -> "DirichletCharacter":
        return char_inverse(self)


def evaluate(chi: DirichletCharacter, x: int) -> CycloNumber:
    ph = chi.phase(x)
    if ph is None:
        return CycloNumber.zero()
    return CycloNumber.from_phase(ph)


def conductor(chi: DirichletCharacter) -> int:
    return chi.conductor


def _lift_unit(g: int, c: int, N: int) -> int:
    """A residue mod N that is coprime to N and congruent to g mod c (c | N)."""
    x = g % c if c > 1 else 1
    while gcd(x, N) != 1:
        x += c
    return x


def primitivize(chi: DirichletCharacter) -> DirichletCharacter:
    c = chi.conductor
    return DirichletCharacter.from_phases(c, lambda g: chi.phase(_lift_unit(g, c, chi.modulus)))


def char_product(a: DirichletCharacter, b: DirichletCharacter) -> DirichletCharacter:
    L = lcm(a.modulus, b.modulus)
    return DirichletCharacter.from_phases(L, lambda x: a.phase(x % a.modulus) + b.phase(x % b.modulus))


def char_inverse(chi: DirichletCharacter) -> DirichletCharacter:
    return DirichletCharacter(chi.modulus, tuple(-x for x in chi.exponents))


def char_power(chi: DirichletCharacter, n: int) -> DirichletCharacter:
    return DirichletCharacter(chi.modulus, tuple(n * x for x in chi.exponents))


def enumerate_characters(N: int) -> list[DirichletCharacter]:
    G = unit_group(N)
    return [DirichletCharacter(N, exps) for exps in product(*[range(o) for o in G.orders])]


def primitive_characters(N: int) -> list[DirichletCharacter]:
    return [chi for chi in enumerate_characters(N) if chi.is_primitive()]


@lru_cache(maxsize=None)
def kronecker_character(D: int) -> DirichletCharacter:
    """chi_D = (D/.), the primitive quadratic character of conductor |D|."""
    if not is_fundamental_discriminant(D):
        raise ValueError(f"{D} is not a fundamental discriminant")
    return DirichletCharacter.from_phases(abs(D), lambda x: Fraction(0) if kronecker(D, x) == 1 else Fraction(1, 2))
