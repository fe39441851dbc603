"""p-adic helpers and the exact evaluation of the local integral K(k, T, chi_p).

K(k, T, chi_p) = sum_{j >= 1 - n_p} p^{j(2-k)} int_{S(j+1, n_p)} chi_p(n/mu + r p^-n_p + m mu p^-2n_p) dmu,
S(j+1, n_p) = {mu in Z_p^x : v(n + r mu p^-n_p + m mu^2 p^-2n_p) = j},

with vol(Z_p) = 1.  Both the level sets and the integrand only depend on mu
modulo a finite power of p away from the (at most two) p-adic roots of the
quadratic, so the integral over each level set is a finite sum.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .arith import divisors, factorize, vp
from .dirichlet import DirichletCharacter
from .exactnum import CycloNumber
from .gauss import LocalCharacter


class KIntegralError(RuntimeError):
    """Raised when the j-sum or the resolution refinement fails to stabilize."""


def valuation(p: int, x) -> int:
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of 0 is infinite")
    return (vp(p, x.numerator) if x.numerator % p == 0 else 0) - (
        vp(p, x.denominator) if x.denominator % p == 0 else 0
    )


class NSplit(NamedTuple):
    r: int
    N: int
    r_N: int
    r_Nhat: int


def n_split(r: int, N: int) -> NSplit:
    """r = r_N * r_Nhat with r_N supported on the primes of N."""
    if r == 0:
        raise ValueError("n_split needs r != 0")
    rN = 1
    primes = {p for p, _ in factorize(N)} if N > 1 else set()
    for p, e in factorize(r) if abs(r) > 1 else ():
        if p in primes:
            rN *= p**e
    return NSplit(r, N, rN, r // rN)


def divisor_sum_sigma(ell: int, eta: DirichletCharacter, a: int) -> CycloNumber:
    """sigma_{ell,eta}(a) = sum_{d | a, d > 0} eta^{-1}(d) d^ell."""
    if a == 0:
        raise ValueError("divisor sum needs a != 0")
    o = eta.order
    sums: dict[int, Fraction] = {}
    for d in divisors(abs(a)):
        ph = eta.phase(d)
        if ph is None:
            continue
        e = int((-ph % 1) * o)
        sums[e] = sums.get(e, 0) + Fraction(d) ** ell
    return CycloNumber.from_exponent_sums(o, sums)


# ------------------------------------------------------------ level sets


def _scaled_quadratic(n: int, r: int, m: int, p: int, n_p: int, mu: int) -> int:
    """p^{2 n_p} (n + r mu p^-n_p + m mu^2 p^-2n_p), an integer for integral mu."""
    return n * p ** (2 * n_p) + r * mu * p**n_p + m * mu * mu


def s_membership(j: int, n_p: int, T, p: int, mu: int, M: int) -> bool | None:
    """Is every unit lifting mu mod p^M in S(j+1, n_p)?  None when undetermined at level M."""
    n, r, m = T
    if mu % p == 0:
        raise ValueError("mu must be a unit")
    pM = p**M
    A = _scaled_quadratic(n, r, m, p, n_p, mu) % pM
    if A == 0:
        return False if j < M - 2 * n_p else None
    return vp(p, A) - 2 * n_p == j


@dataclass
class KResult:
    value: CycloNumber
    terms: list[tuple[int, CycloNumber]]  # (j, integral over S(j+1, n_p))
    truncation_j: int
    stabilized: bool
    level_measures: dict[int, Fraction] = field(default_factory=dict)  # vol S(j+1, n_p)
    unresolved_measure: Fraction = Fraction(0)

    def contributing_levels(self) -> list[int]:
        return [j for j, vol in sorted(self.level_measures.items()) if vol]

    def to_json(self) -> dict:
        return {
            "value": self.value.to_json(),
            "terms": [{"j": j, "integral": v.to_json(), "measure": str(self.level_measures.get(j, 0))} for j, v in self.terms],
            "truncation_j": self.truncation_j,
            "stabilized": self.stabilized,
            "measure": "vol(Z_p) = 1",
        }


def _check_inputs(T, chi: LocalCharacter, p: int) -> tuple[int, int, int, int]:
    n, r, m = T
    n_p = chi.conductor_exponent
    if n_p < 1:
        raise ValueError("K is only evaluated for ramified chi_p")
    if r % p:
        raise ValueError("K is only evaluated when p divides r")
    if m % p ** (2 * n_p):
        raise ValueError("p^(2 n_p) must divide m")
    return n, r, m, n_p


def _level_integrals(T, chi: LocalCharacter, p: int, j_hi: int, extra: int = 0):
    """Exact {j: {phase: measure}} for 1-n_p <= j <= j_hi by refining residue classes.

    The scaled quadratic is p^c Q(mu) with Q primitive.  A class mu + p^M Z_p
    is accepted once w = v(Q(mu)) is below M and the unit part is known mod
    p^{n_p} (M >= w + n_p), plus ``extra`` further levels as a resolution
    cross-check.
    """
    n, r, m, n_p = _check_inputs(T, chi, p)
    coeffs = (n * p ** (2 * n_p), r * p**n_p, m)
    c = min(vp(p, a) for a in coeffs if a)
    a0, a1, a2 = (a // p**c for a in coeffs)
    q = p**n_p
    unit_phase = {res: chi.unit_char.phase(res) for res in range(1, q) if res % p}
    counts: dict[tuple[int, int, int], int] = {}  # (j, unit residue, M) -> number of classes
    unresolved = Fraction(0)
    stack = [(u, 1, None) for u in range(1, p)]
    while stack:
        u, M, need = stack.pop()
        pM = p**M
        A = (a0 + u * (a1 + u * a2)) % pM
        if A == 0:
            if M + c - 2 * n_p > j_hi:
                unresolved += Fraction(1, pM)
                continue
            stack.extend((u + t * pM, M + 1, None) for t in range(p))
            continue
        w = vp(p, A)
        j = w + c - 2 * n_p
        if j < 1 - n_p:
            raise KIntegralError(f"level j={j} below the summation range")
        if j > j_hi:
            unresolved += Fraction(1, pM)
            continue
        target = w + n_p + extra if need is None else need
        if M < target:
            stack.extend((u + t * pM, M + 1, target) for t in range(p))
            continue
        # unit part of p^{-w-c} A'(u) / u
        res = (A // p**w) * pow(u, -1, q) % q
        key = (j, res, M)
        counts[key] = counts.get(key, 0) + 1
    out: dict[int, dict[Fraction, Fraction]] = {}
    vols: dict[int, Fraction] = {}
    for (j, res, M), cnt in counts.items():
        ph = (j * chi.value_phase + unit_phase[res]) % 1
        vol = Fraction(cnt, p**M)
        bucket = out.setdefault(j, {})
        bucket[ph] = bucket.get(ph, 0) + vol
        vols[j] = vols.get(j, 0) + vol
    return out, vols, unresolved


def _phase_sum(bucket: dict[Fraction, Fraction]) -> CycloNumber:
    if not bucket:
        return CycloNumber.zero()
    o = 1
    for ph in bucket:
        o = o * ph.denominator // np.gcd(o, ph.denominator)
    o = int(o)
    return CycloNumber.from_exponent_sums(o, {int(ph * o): vol for ph, vol in bucket.items()})


def valuation_regime(T, p: int, n_p: int) -> str:
    """'collapse' if v(n) < min(v(r) - n_p, v(m) - 2n_p), 'balanced' if
    v(n) = v(r) - n_p < v(m) - 2n_p, 'other' otherwise (v(0) = infinity)."""
    inf = float("inf")
    n, r, m = T
    vn = vp(p, n) if n else inf
    vr = (vp(p, r) if r else inf) - n_p
    vm = (vp(p, m) if m else inf) - 2 * n_p
    if vn < min(vr, vm):
        return "collapse"
    if vn == vr < vm:
        return "balanced"
    return "other"


def default_j_cap(T, p: int, n_p: int) -> int:
    n, r, m = T
    data = 4 * n * m * (4 * n * m - r * r)
    return (vp(p, data) if data else 0) + 2 * n_p + 8


TAIL = 3


def k_integral(k: int, T, chi: LocalCharacter, p: int | None = None, *, j_cap: int | None = None) -> KResult:
    """Exact K(k, T, chi_p) in Q(eta)."""
    p = chi.p if p is None else p
    n, r, m, n_p = _check_inputs(T, chi, p)
    if j_cap is None:
        j_cap = default_j_cap(T, p, n_p)
    levels, vols, unresolved = _level_integrals(T, chi, p, j_cap)
    check, _, _ = _level_integrals(T, chi, p, j_cap, extra=1)
    if levels != check:
        raise KIntegralError("integrand not locally constant at the chosen resolution")
    terms = []
    value = CycloNumber.zero()
    last = 1 - n_p
    for j in range(1 - n_p, j_cap + 1):
        integral = _phase_sum(levels.get(j, {}))
        terms.append((j, integral))
        if not integral.is_zero():
            last = j
            value = value + integral * Fraction(p) ** (j * (2 - k))
    tail = [v for _, v in terms[-TAIL:]]
    if len(tail) < TAIL or any(not v.is_zero() for v in tail):
        raise KIntegralError(f"j-sum did not stabilize below cap {j_cap}")
    return KResult(value, terms, last, True, vols, unresolved)


def k_integral_oracle(k: int, T, chi: LocalCharacter, p: int, M: int, j_max: int) -> CycloNumber:
    """Direct double sum over j <= j_max and all units u mod p^M (test oracle).

    Exact for j <= j_max once M >= j_max + 3 n_p.
    """
    n, r, m, n_p = _check_inputs(T, chi, p)
    pM = p**M
    u = np.arange(1, pM, dtype=object if pM * pM * max(abs(m), 1) > 2**62 else np.int64)
    u = u[u % p != 0]
    A = n * p ** (2 * n_p) + r * u * p**n_p + m * u * u
    if np.any(A == 0):
        raise KIntegralError("scaled quadratic vanishes at a rational unit")
    w = np.zeros(len(u), dtype=np.int64)
    B = A.copy()
    mask = B % p == 0
    while mask.any():
        B[mask] //= p
        w[mask] += 1
        mask = B % p == 0
    j = w - 2 * n_p
    q = p**n_p
    keep = (j >= 1 - n_p) & (j <= j_max)
    inv = np.zeros(q, dtype=np.int64)
    for res in range(1, q):
        if res % p:
            inv[res] = pow(res, -1, q)
    units = (np.asarray(B % q, dtype=np.int64) * inv[np.asarray(u % q, dtype=np.int64)]) % q
    value = CycloNumber.zero()
    for jj in sorted(set(int(x) for x in j[keep])):
        counts = np.bincount(units[keep & (j == jj)], minlength=q)
        bucket: dict[Fraction, Fraction] = {}
        for res in np.nonzero(counts)[0].tolist():
            ph = (jj * chi.value_phase + chi.unit_char.phase(res)) % 1
            bucket[ph] = bucket.get(ph, 0) + Fraction(int(counts[res]), pM)
        value = value + _phase_sum(bucket) * Fraction(p) ** (jj * (2 - k))
    return value
