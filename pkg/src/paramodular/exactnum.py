"""Exact arithmetic in cyclotomic fields Q(zeta_M).

An element of Q(zeta_M) is stored on the power basis 1, z, ..., z^(phi(M)-1)
reduced modulo the M-th cyclotomic polynomial, as integer numerators over one
positive common denominator.  Binary operations between different orders
promote both sides to the lcm of the orders.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping

import mpmath

from .arith import divisors, euler_phi, lcm

DEFAULT_DIGITS = 50


@lru_cache(maxsize=None)
def cyclotomic_poly(M: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_M, lowest degree first."""
    if M < 1:
        raise ValueError("order must be positive")
    num = [-1] + [0] * (M - 1) + [1]  # x^M - 1
    for d in divisors(M):
        if d < M:
            num = _exact_div(num, cyclotomic_poly(d))
    return tuple(num)


def _exact_div(a: list[int], b: tuple[int, ...]) -> list[int]:
    a = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]  # b is monic
        q[i - db] = c
        if c:
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    assert not any(a[:db]), "inexact polynomial division"
    return q


@lru_cache(maxsize=None)
def _power_table(M: int) -> tuple[tuple[int, ...], ...]:
    """Row e is the reduction of z^e (0 <= e < M) on the power basis."""
    phi = euler_phi(M)
    cyc = cyclotomic_poly(M)
    rows = []
    for e in range(min(phi, M)):
        row = [0] * phi
        row[e] = 1
        rows.append(tuple(row))
    for e in range(phi, M):
        prev = rows[-1]
        top = prev[phi - 1]
        row = [0] + list(prev[: phi - 1])
        if top:
            for i in range(phi):
                row[i] -= top * cyc[i]
        rows.append(tuple(row))
    return tuple(rows)


def _reduce_exponents(M: int, acc: Mapping[int, int]) -> list[int]:
    """Sum of c * z^e over the mapping, reduced to basis coordinates (integers)."""
    phi = euler_phi(M)
    table = _power_table(M)
    out = [0] * phi
    for e, c in acc.items():
        if not c:
            continue
        row = table[e % M]
        if e % M < phi:
            out[e % M] += c
        else:
            for i, t in enumerate(row):
                if t:
                    out[i] += c * t
    return out


class CycloNumber:
    """Immutable element of Q(zeta_M)."""

    __slots__ = ("order", "_num", "_den", "_hash")

    def __init__(self, order: int, coeffs: Iterable, _den: int | None = None):
        if order < 1:
            raise ValueError("order must be positive")
        coeffs = list(coeffs)
        if len(coeffs) != euler_phi(order):
            raise ValueError(f"expected {euler_phi(order)} coordinates for order {order}")
        if _den is None:
            fr = [Fraction(c) for c in coeffs]
            den = 1
            for f in fr:
                den = den * f.denominator // gcd(den, f.denominator)
            nums = [f.numerator * (den // f.denominator) for f in fr]
        else:
            nums, den = [int(c) for c in coeffs], _den
        g = den
        for c in nums:
            g = gcd(g, c)
            if g == 1:
                break
        if g > 1:
            nums = [c // g for c in nums]
            den //= g
        if den < 0:
            nums, den = [-c for c in nums], -den
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "_num", tuple(nums))
        object.__setattr__(self, "_den", den)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("CycloNumber is immutable")

    # ----------------------------------------------------------- constructors
    @classmethod
    def _raw(cls, order: int, nums: list[int], den: int) -> "CycloNumber":
        return cls(order, nums, _den=den)

    @classmethod
    def rational(cls, q, order: int = 1) -> "CycloNumber":
        q = Fraction(q)
        nums = [0] * euler_phi(order)
        nums[0] = q.numerator
        return cls._raw(order, nums, q.denominator)

    @classmethod
    def zero(cls, order: int = 1) -> "CycloNumber":
        return cls.rational(0, order)

    @classmethod
    def one(cls, order: int = 1) -> "CycloNumber":
        return cls.rational(1, order)

    @classmethod
    def root_of_unity(cls, n: int, e: int = 1) -> "CycloNumber":
        """zeta_n^e, stored in Q(zeta_{n/g}) with g = gcd(n, e)."""
        g = gcd(n, e % n)
        n2, e2 = n // g, (e % n) // g
        return cls._raw(n2, _reduce_exponents(n2, {e2: 1}), 1)

    @classmethod
    def from_phase(cls, phase: Fraction) -> "CycloNumber":
        """exp(2 pi i * phase) for a rational phase."""
        phase = Fraction(phase) % 1
        return cls.root_of_unity(phase.denominator, phase.numerator)

    @classmethod
    def from_exponent_sums(cls, order: int, sums: Mapping[int, Fraction]) -> "CycloNumber":
        """Sum of q_e * zeta_order^e over a mapping e -> rational q_e."""
        den = 1
        for q in sums.values():
            den = lcm(den, Fraction(q).denominator)
        acc = {}
        for e, q in sums.items():
            q = Fraction(q)
            acc[e % order] = acc.get(e % order, 0) + q.numerator * (den // q.denominator)
        return cls._raw(order, _reduce_exponents(order, acc), den)

    @classmethod
    def i(cls) -> "CycloNumber":
        return cls.root_of_unity(4, 1)

    # ------------------------------------------------------------- accessors
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    @property
    def degree(self) -> int:
        return len(self._num)

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self._num[0], self._den)

    # ------------------------------------------------------------- promotion
    def promote(self, new_order: int) -> "CycloNumber":
        if new_order % self.order:
            raise ValueError(f"order {self.order} does not divide {new_order}")
        if new_order == self.order:
            return self
        step = new_order // self.order
        acc = {i * step: c for i, c in enumerate(self._num) if c}
        return CycloNumber._raw(new_order, _reduce_exponents(new_order, acc), self._den)

    def minimize_order(self) -> "CycloNumber":
        """Re-express in Q(zeta_d) for the smallest d | order containing self."""
        M = self.order
        for d in divisors(M):
            if d == M:
                return self
            if d % 4 == 2:
                continue
            if all(self.galois(a) == self for a in _units(M) if a % d == 1 % d):
                return self._descend(d)
        return self

    def _descend(self, d: int) -> "CycloNumber":
        # Solve self = sum_i c_i zeta_d^i in coordinates of Q(zeta_M).
        M = self.order
        cols = [CycloNumber.root_of_unity(d, i).promote(M).coeffs for i in range(euler_phi(d))]
        rows = [[cols[j][r] for j in range(len(cols))] + [self.coeffs[r]] for r in range(len(self._num))]
        sol = _solve(rows, len(cols))
        return CycloNumber(d, sol)

    # ------------------------------------------------------------ arithmetic
    @staticmethod
    def _coerce(x) -> "CycloNumber":
        if isinstance(x, CycloNumber):
            return x
        if isinstance(x, (int, Fraction)):
            return CycloNumber.rational(x)
        return NotImplemented

    def _common(self, other: "CycloNumber") -> tuple["CycloNumber", "CycloNumber"]:
        if self.order == other.order:
            return self, other
        L = lcm(self.order, other.order)
        return self.promote(L), other.promote(L)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._common(other)
        den = a._den * b._den // gcd(a._den, b._den)
        fa, fb = den // a._den, den // b._den
        return CycloNumber._raw(a.order, [x * fa + y * fb for x, y in zip(a._num, b._num)], den)

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber._raw(self.order, [-x for x in self._num], self._den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def _scale(self, q: Fraction) -> "CycloNumber":
        q = Fraction(q)
        return CycloNumber._raw(self.order, [x * q.numerator for x in self._num], self._den * q.denominator)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._scale(Fraction(other))
        if not isinstance(other, CycloNumber):
            return NotImplemented
        if other.is_rational():
            return self._scale(other.to_fraction())
        if self.is_rational():
            return other._scale(self.to_fraction())
        a, b = self._common(other)
        M = a.order
        acc: dict[int, int] = {}
        bn = [(j, y) for j, y in enumerate(b._num) if y]
        for i, x in enumerate(a._num):
            if not x:
                continue
            for j, y in bn:
                e = (i + j) % M
                acc[e] = acc.get(e, 0) + x * y
        return CycloNumber._raw(M, _reduce_exponents(M, acc), a._den * b._den)

    __rmul__ = __mul__

    def inverse(self) -> "CycloNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return CycloNumber.rational(1 / self.to_fraction(), self.order)
        inv = _poly_inverse_mod(list(self.coeffs), [Fraction(c) for c in cyclotomic_poly(self.order)])
        inv += [Fraction(0)] * (self.degree - len(inv))
        return CycloNumber(self.order, inv)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self._scale(1 / Fraction(other))
        if not isinstance(other, CycloNumber):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = CycloNumber.one(self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.to_fraction() == other
        if not isinstance(other, CycloNumber):
            return NotImplemented
        a, b = self._common(other)
        return a._den == b._den and a._num == b._num

    def __hash__(self):
        if self._hash is None:
            m = self.minimize_order()
            object.__setattr__(self, "_hash", hash((m.order, m._num, m._den)))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    # ----------------------------------------------------------------- Galois
    def galois(self, a: int) -> "CycloNumber":
        """sigma_a: zeta_M -> zeta_M^a."""
        M = self.order
        if gcd(a, M) != 1:
            raise ValueError(f"{a} is not coprime to {M}")
        if a % M == 1 or self.is_rational():
            return self
        acc = {}
        for i, c in enumerate(self._num):
            if c:
                e = (a * i) % M
                acc[e] = acc.get(e, 0) + c
        return CycloNumber._raw(M, _reduce_exponents(M, acc), self._den)

    def conjugate(self) -> "CycloNumber":
        return self.galois(-1)

    # ------------------------------------------------------------- embedding
    def embed(self, digits: int = DEFAULT_DIGITS) -> mpmath.mpc:
        with mpmath.workdps(digits + 5):
            z = mpmath.mpf(0)
            M = self.order
            for i, c in enumerate(self._num):
                if c:
                    z += c * mpmath.expjpi(mpmath.mpf(2 * i) / M)
            return +z / self._den

    def __complex__(self):
        return complex(self.embed(20))

    # --------------------------------------------------------- serialization
    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: Mapping) -> "CycloNumber":
        return cls(int(data["order"]), [Fraction(c) for c in data["coeffs"]])

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"({c})*z{self.order}^{i}")
        return " + ".join(terms) if terms else "0"


def promote(x: CycloNumber, order: int) -> CycloNumber:
    return x.promote(order)


def galois_apply(a: int, x: CycloNumber) -> CycloNumber:
    return x.galois(a)


def embed_complex(x: CycloNumber, precision: int = DEFAULT_DIGITS) -> mpmath.mpc:
    return x.embed(precision)


@lru_cache(maxsize=None)
def _units(M: int) -> tuple[int, ...]:
    return tuple(a for a in range(1, M + 1) if gcd(a, M) == 1) if M > 1 else (1,)


def _poly_inverse_mod(a: list[Fraction], m: list[Fraction]) -> list[Fraction]:
    """Inverse of a modulo m over Q via extended Euclid."""

    def trim(p):
        while len(p) > 1 and p[-1] == 0:
            p.pop()
        return p

    def sub(p, q):
        n = max(len(p), len(q))
        return trim([(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)])

    def mul(p, q):
        out = [Fraction(0)] * (len(p) + len(q) - 1)
        for i, x in enumerate(p):
            if x:
                for j, y in enumerate(q):
                    out[i + j] += x * y
        return trim(out)

    def divmod_(p, q):
        p = list(p)
        quo = [Fraction(0)] * max(1, len(p) - len(q) + 1)
        while len(p) >= len(q) and any(p):
            c = p[-1] / q[-1]
            s = len(p) - len(q)
            quo[s] = c
            for j, y in enumerate(q):
                p[s + j] -= c * y
            p.pop()
            trim(p)
            if len(p) < len(q):
                break
        return trim(quo), trim(p or [Fraction(0)])

    r0, r1 = trim(list(m)), trim(list(a))
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while any(r1):
        q, r = divmod_(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible")
    c = r0[0]
    _, rem = divmod_([x / c for x in s0], trim(list(m)))
    return rem


def _solve(rows: list[list[Fraction]], ncols: int) -> list[Fraction]:
    """Solve an (overdetermined, consistent) linear system given as augmented rows."""
    rows = [list(r) for r in rows]
    piv_rows = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv_rows.append(c)
        r += 1
    if any(row[-1] != 0 for row in rows[r:]):
        raise ValueError("inconsistent system: element not in subfield")
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(piv_rows):
        sol[c] = rows[i][-1]
    return sol


@dataclass(frozen=True)
class PiScaled:
    """value * pi**pi_exponent with the pi power kept symbolic."""

    value: CycloNumber
    pi_exponent: int = 0

    def __mul__(self, other):
        if isinstance(other, PiScaled):
            return PiScaled(self.value * other.value, self.pi_exponent + other.pi_exponent)
        return PiScaled(self.value * other, self.pi_exponent)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PiScaled):
            return PiScaled(self.value / other.value, self.pi_exponent - other.pi_exponent)
        return PiScaled(self.value / other, self.pi_exponent)

    def __add__(self, other):
        if not isinstance(other, PiScaled):
            raise TypeError("PiScaled can only be added to PiScaled")
        if other.pi_exponent != self.pi_exponent:
            raise ValueError(f"cannot add pi^{self.pi_exponent} and pi^{other.pi_exponent} terms")
        return PiScaled(self.value + other.value, self.pi_exponent)

    def embed(self, digits: int = DEFAULT_DIGITS) -> mpmath.mpc:
        with mpmath.workdps(digits + 5):
            return self.value.embed(digits) * mpmath.pi**self.pi_exponent

    def require_pi_free(self) -> CycloNumber:
        if self.pi_exponent != 0:
            raise ArithmeticError(f"pi ledger did not cancel: exponent {self.pi_exponent}")
        return self.value


@dataclass(frozen=True)
class SubfieldSpec:
    ambient_order: int
    generators: tuple[CycloNumber, ...]

    def __post_init__(self):
        for g in self.generators:
            if self.ambient_order % g.order:
                raise ValueError(f"generator of order {g.order} not in Q(zeta_{self.ambient_order})")


def fixing_subgroup(F: SubfieldSpec, order: int | None = None) -> list[int]:
    """All a in (Z/M)^x whose sigma_a fixes every generator of F."""
    M = order or F.ambient_order
    gens = [g.promote(M) for g in F.generators]
    return [a for a in _units(M) if all(g.galois(a) == g for g in gens)]


def in_subfield(x: CycloNumber, F: SubfieldSpec) -> bool:
    M = lcm(x.order, F.ambient_order)
    xm = x.promote(M)
    if xm.is_rational():
        return True
    return all(xm.galois(a) == xm for a in fixing_subgroup(F, M))
