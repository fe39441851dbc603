"""Fourier coefficients a(T) of the paramodular Eisenstein series E_{k,eta} of level N^2.

Everything is assembled exactly in a cyclotomic field; powers of pi are carried
symbolically and must cancel.  The only analytic inputs are critical L-values,
which are algebraic multiples of pi^s.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd, isqrt

from .arith import factorize, lcm, moebius, divisors, square_part, is_fundamental_discriminant
from .dirichlet import (
    DirichletCharacter,
    char_inverse,
    char_power,
    char_product,
    kronecker_character,
    primitivize,
)
from .exactnum import CycloNumber, PiScaled, SubfieldSpec, fixing_subgroup, in_subfield
from .gauss import gauss_sum, localize, sqrt_int
from .lvalues import bernoulli_generalized, euler_correction, l_special, zeta_special
from .padic import divisor_sum_sigma, k_integral, n_split


class ParityError(ValueError):
    """k odd or eta odd: the exact special-value path does not apply."""


@dataclass(frozen=True)
class HalfIntMatrix:
    n: int
    r: int
    m: int

    @property
    def disc(self) -> int:
        """r^2 - 4nm."""
        return self.r * self.r - 4 * self.n * self.m

    @property
    def det(self) -> Fraction:
        return Fraction(4 * self.n * self.m - self.r * self.r, 4)

    def is_psd(self) -> bool:
        return self.n >= 0 and self.m >= 0 and self.disc <= 0

    @property
    def rank(self) -> int:
        if self.n == self.r == self.m == 0:
            return 0
        return 1 if self.disc == 0 else 2

    @property
    def content(self) -> int:
        return gcd(gcd(self.n, self.r), self.m)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.n, self.r, self.m)

    def to_json(self) -> dict:
        return {"n": self.n, "r": self.r, "m": self.m}


@dataclass(frozen=True)
class DiscData:
    D: int
    f: int
    e: int
    det_T: Fraction


def fundamental_discriminant(delta: int) -> tuple[int, int]:
    """Write a negative discriminant as D f^2 with D fundamental."""
    if delta >= 0 or delta % 4 not in (0, 1):
        raise ValueError(f"{delta} is not a negative discriminant")
    c, g = square_part(delta)
    c = -c
    if c % 4 == 1:
        D, f = c, g
    else:
        D, f = 4 * c, g // 2
    assert D * f * f == delta and is_fundamental_discriminant(D)
    return D, f


def disc_data(T: HalfIntMatrix) -> DiscData:
    D, f = fundamental_discriminant(T.disc)
    return DiscData(D, f, T.content, T.det)


def h_tilde(D: int, s: int, eta: DirichletCharacter, e: int, f: int) -> CycloNumber:
    """The triple divisor sum H~_{D,s,eta}(e, f)."""
    if e <= 0 or f % e:
        raise ValueError("h_tilde needs e | f")
    chi_D = kronecker_character(D)
    o = lcm(eta.order, 2)
    sums: dict[int, Fraction] = {}

    def ph(x):
        return eta.phase(x)

    for d in divisors(e):
        pd = ph(d)
        if pd is None:
            continue
        for g in divisors(f // d):
            mu = moebius(g)
            pg, cg = ph(g), chi_D.phase(g)
            if not mu or pg is None or cg is None:
                continue
            for h in divisors(f // (d * g)):
                pgh = ph(h)
                if pgh is None:
                    continue
                phase = (-pd + cg - pg - 2 * pgh) % 1
                val = mu * Fraction(d) ** (s - 1) * Fraction(g) ** (s - 2) * Fraction(h) ** (2 * s - 3)
                key = int(phase * o)
                sums[key] = sums.get(key, 0) + val
    return CycloNumber.from_exponent_sums(o, sums)


@lru_cache(maxsize=None)
def associated_characters(eta: DirichletCharacter, D: int) -> tuple[DirichletCharacter, DirichletCharacter]:
    """(alpha, beta): the primitive characters behind chi_D * eta and eta^2."""
    alpha = primitivize(char_product(kronecker_character(D), eta))
    beta = primitivize(char_power(eta, 2))
    return alpha, beta


def commuting_check(eta: DirichletCharacter, D: int) -> bool:
    """alpha(x) = chi_D(x) eta(x) and beta(x) = eta(x)^2 on units mod lcm(|D|, N)."""
    alpha, beta = associated_characters(eta, D)
    chi_D = kronecker_character(D)
    ell = lcm(abs(D), eta.modulus)
    for x in range(1, ell + 1):
        if gcd(x, ell) != 1:
            continue
        if alpha.phase(x % alpha.modulus) != (chi_D.phase(x % abs(D)) + eta.phase(x % eta.modulus)) % 1:
            return False
        if beta.phase(x % beta.modulus) != (2 * eta.phase(x % eta.modulus)) % 1:
            return False
    return True


def sqrt_absD(D: int) -> CycloNumber:
    """sqrt(|D|) = G(chi_D)/i for D < 0."""
    if D >= 0 or not is_fundamental_discriminant(D):
        raise ValueError("sqrt_absD needs a negative fundamental discriminant")
    return gauss_sum(kronecker_character(D)) / CycloNumber.i()


def split_discriminant(D: int, N: int) -> tuple[int, int]:
    """D = D_out * D_in, both fundamental, D_in supported on the primes of N."""
    Nprimes = {p for p, _ in factorize(N)} if N > 1 else set()
    d_in, d_out, rest = 1, 1, D
    for p, _ in factorize(D):
        if p == 2:
            continue
        pstar = p if p % 4 == 1 else -p
        rest //= pstar
        if p in Nprimes:
            d_in *= pstar
        else:
            d_out *= pstar
    # rest is the 2-part: 1, -4, 8 or -8
    if 2 in Nprimes:
        d_in *= rest
    else:
        d_out *= rest
    return d_out, d_in


@lru_cache(maxsize=None)
def sqrt_absD_gauss_alpha(D: int, eta: DirichletCharacter) -> CycloNumber:
    """sqrt(|D|) G(alpha), computed inside Q(eta, zeta_N, zeta_8, i).

    With D = D_out D_in (D_out prime to N) alpha = chi_{D_out} * gamma for
    gamma = prim(chi_{D_in} eta) of conductor prime to D_out, so
    G(alpha) = chi_{D_out}(c_gamma) gamma(|D_out|) G(chi_{D_out}) G(gamma) and
    sqrt|D_out| G(chi_{D_out}) = |D_out| (times i when D_out < 0).
    """
    d_out, d_in = split_discriminant(D, eta.modulus)
    gamma = primitivize(char_product(kronecker_character(d_in), eta))
    c = gamma.modulus
    alpha, _ = associated_characters(eta, D)
    assert alpha.modulus == abs(d_out) * c
    out_part = CycloNumber.rational(abs(d_out)) * (CycloNumber.i() if d_out < 0 else 1)
    out_part = out_part * kronecker_character(d_out)(c) * gamma(abs(d_out))
    return out_part * sqrt_int(abs(d_in)) * gauss_sum(gamma)


def _sqrtD_l_alpha(s: int, D: int, eta: DirichletCharacter) -> CycloNumber:
    """sqrt(|D|) * L(s, alpha) / pi^s for odd alpha and odd s."""
    alpha, _ = associated_characters(eta, D)
    if alpha.parity != 1 or s % 2 != 1:
        raise ParityError("alpha must be odd and s odd")
    a = alpha.modulus
    sign = (-1) ** (1 + (s - 1) // 2)
    scal = Fraction(sign) * Fraction(2, a) ** s / (2 * factorial(s))
    return sqrt_absD_gauss_alpha(D, eta) / CycloNumber.i() * scal * bernoulli_generalized(s, char_inverse(alpha))


# ------------------------------------------------------------- assembly


@dataclass
class Certificate:
    claim: str
    subfield: SubfieldSpec
    element: CycloNumber
    fixing_subgroup_size: int
    passed: bool

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "generators": [g.to_json() for g in self.subfield.generators],
            "ambient_order": self.subfield.ambient_order,
            "fixing_subgroup_size": self.fixing_subgroup_size,
            "pass": self.passed,
        }


@dataclass
class Coefficient:
    T: HalfIntMatrix
    rank: int
    value: CycloNumber
    pi_ledger: list[tuple[str, int]] = field(default_factory=list)
    certificates: list[Certificate] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    @property
    def pi_exponent(self) -> int:
        return sum(e for _, e in self.pi_ledger)

    def to_json(self, digits: int = 20) -> dict:
        z = self.value.embed(digits)
        return {
            "T": self.T.to_json(),
            "rank": self.rank,
            "value": self.value.to_json(),
            "decimal": [str(z.real), str(z.imag)],
            "pi_exponent": self.pi_exponent,
            "certificates": [c.to_json() for c in self.certificates],
            **self.meta,
        }


def _check_inputs(k: int, eta: DirichletCharacter, T: HalfIntMatrix) -> None:
    if k < 4:
        raise ValueError("weight must be at least 4")
    if k % 2:
        raise ParityError(f"weight k={k} is odd; only even weights are supported")
    if not eta.is_primitive():
        raise ValueError(f"{eta.label} is not primitive")
    if eta.parity:
        raise ParityError(
            f"{eta.label} is odd: L(k, eta) at even k is not a critical value, so no exact formula applies"
        )
    if not T.is_psd():
        raise ValueError(f"T = {T.as_tuple()} is not positive semi-definite")
    if T.m % (eta.modulus**2):
        raise ValueError(f"N^2 = {eta.modulus ** 2} does not divide m = {T.m}")


def _rank1_condition(eta: DirichletCharacter, T: HalfIntMatrix) -> bool:
    N = eta.modulus
    if T.m <= 0:
        return False
    if N == 1:
        return True
    if T.r == 0:
        return False
    return n_split(T.r, N).r_N * N == n_split(2 * T.m, N).r_N


def _char_at(eta: DirichletCharacter, x: int) -> CycloNumber:
    # eta at an integer prime to N; eta(0) = 1 only for the modulus-1 character
    return CycloNumber.from_phase(eta.phase(x))


def rank1_coefficient(k: int, eta: DirichletCharacter, T: HalfIntMatrix) -> tuple[CycloNumber, list]:
    N = eta.modulus
    prefactor = PiScaled(CycloNumber.rational(Fraction((-2) ** k, factorial(k - 1))) * CycloNumber.i() ** k, k)
    ledger = [("(-2 pi i)^k", k)]
    if N == 1 and T.m == 0 and T.r == 0 and T.n > 0:
        z = zeta_special(k).as_pi_scaled()
        ledger.append(("1/zeta(k)", -z.pi_exponent))
        val = prefactor * divisor_sum_sigma(k - 1, eta, T.n) / z
        return val.require_pi_free(), ledger
    if not _rank1_condition(eta, T):
        return CycloNumber.zero(), []
    e = T.content
    eN = n_split(e, N)
    L = l_special(k, eta).as_pi_scaled()
    ledger.append(("1/L(k, eta)", -L.pi_exponent))
    r_hat = n_split(T.r, N).r_Nhat if T.r else T.r
    two_hat = n_split(2, N).r_Nhat
    val = prefactor * divisor_sum_sigma(k - 1, eta, eN.r_Nhat) / L
    val = val * (_char_at(eta, r_hat) / _char_at(eta, two_hat)) * Fraction(eN.r_N) ** (k - 1)
    return val.require_pi_free(), ledger


def rank1_closed_form(k: int, eta: DirichletCharacter, T: HalfIntMatrix) -> CycloNumber:
    """The same rank-1 value written without pi, with m^k read as the conductor N^k."""
    N = eta.modulus
    if N == 1 and T.m == 0 and T.r == 0 and T.n > 0:
        z = zeta_special(k).algebraic
        return CycloNumber.rational(Fraction((-2) ** k, factorial(k - 1))) * CycloNumber.i() ** k * divisor_sum_sigma(k - 1, eta, T.n) / z
    if not _rank1_condition(eta, T):
        return CycloNumber.zero()
    eps = eta.parity
    e = T.content
    eN = n_split(e, N)
    r_hat = n_split(T.r, N).r_Nhat if T.r else T.r
    two_hat = n_split(2, N).r_Nhat
    num = CycloNumber.rational((-1) ** (-1 + (k + eps) // 2) * 2 * k * N**k) * CycloNumber.i() ** (k + eps)
    num = num * divisor_sum_sigma(k - 1, eta, eN.r_Nhat) * _char_at(eta, r_hat) * Fraction(eN.r_N) ** (k - 1)
    den = gauss_sum(eta) * bernoulli_generalized(k, char_inverse(eta)) * _char_at(eta, two_hat)
    return num / den


def rank2_coefficient(k: int, eta: DirichletCharacter, T: HalfIntMatrix, *, j_cap: int | None = None):
    N = eta.modulus
    dd = disc_data(T)
    D, f, e = dd.D, dd.f, dd.e
    f_hat = n_split(f, N).r_Nhat
    e_hat = n_split(e, N).r_Nhat
    alpha, beta = associated_characters(eta, D)
    ell = lcm(abs(D), N)
    meta = {"D": D, "f": f, "e": e, "alpha": alpha.label, "beta": beta.label}

    # part lying in Q(eta)
    local = CycloNumber.rational(Fraction(N) ** (2 - 2 * k) * Fraction(f_hat) ** (3 - 2 * k))
    local = local * _char_at(eta, f_hat * f_hat) * h_tilde(D, k, eta, e_hat, f_hat)
    k_terms = {}
    for p, n_p in factorize(N) if N > 1 else ():
        chi_p = localize(eta, p)
        if T.r % p:
            local = local * chi_p(T.r)
        else:
            K = k_integral(k, T.as_tuple(), chi_p, j_cap=j_cap)
            k_terms[p] = K
            local = local * (Fraction(p) ** (n_p * (2 - k)) * chi_p(p**n_p) * K.value)

    # (4 pi)^{2k-1} det^{k-3/2} / (2 (2k-2)!) * L(k-1, chi_D eta) / (L(k, eta) L(2k-2, eta^2)) * G(eta)
    det_part = Fraction(abs(D) * f * f, 4) ** (k - 2) * Fraction(f, 2)  # times sqrt|D|
    front = PiScaled(CycloNumber.rational(Fraction(4) ** (2 * k - 1) * det_part / (2 * factorial(2 * k - 2))), 2 * k - 1)
    l_alpha = PiScaled(euler_correction(alpha, ell, k - 1) * _sqrtD_l_alpha(k - 1, D, eta), k - 1)
    l_eta = l_special(k, eta).as_pi_scaled()
    l_beta = l_special(2 * k - 2, beta).as_pi_scaled() * euler_correction(beta, N, 2 * k - 2)
    ledger = [
        ("(4 pi)^(2k-1)", front.pi_exponent),
        ("L(k-1, chi_D eta)", l_alpha.pi_exponent),
        ("1/L(k, eta)", -l_eta.pi_exponent),
        ("1/L(2k-2, eta^2)", -l_beta.pi_exponent),
    ]
    analytic = front * l_alpha / (l_eta * l_beta) * gauss_sum(eta)
    value = analytic.require_pi_free() * local
    meta["K"] = {str(p): K.to_json() for p, K in k_terms.items()}
    return value, ledger, meta


def fourier_coefficient(
    k: int, eta: DirichletCharacter, T: HalfIntMatrix, *, certify_fields: bool = True, j_cap: int | None = None
) -> Coefficient:
    _check_inputs(k, eta, T)
    rank = T.rank
    meta: dict = {"weight": k, "character": eta.label}
    if rank == 0:
        value, ledger = CycloNumber.rational(1 if eta.modulus == 1 else 0), []
    elif rank == 1:
        value, ledger = rank1_coefficient(k, eta, T)
    else:
        value, ledger, extra = rank2_coefficient(k, eta, T, j_cap=j_cap)
        meta.update(extra)
    if sum(e for _, e in ledger) != 0:
        raise ArithmeticError("pi ledger does not cancel")
    coef = Coefficient(T, rank, value, ledger, [], meta)
    if certify_fields:
        coef.certificates = certify(coef, k, eta, T)
    return coef


# --------------------------------------------------------- certificates


def _spec(gens: list[CycloNumber]) -> SubfieldSpec:
    return SubfieldSpec(lcm(*[g.order for g in gens]), tuple(gens))


def _certificate(claim: str, x: CycloNumber, gens: list[CycloNumber]) -> Certificate:
    F = _spec(gens)
    M = lcm(x.order, F.ambient_order)
    return Certificate(claim, F, x, len(fixing_subgroup(F, M)), in_subfield(x, F))


def certify(coefficient: Coefficient, k: int, eta: DirichletCharacter, T: HalfIntMatrix) -> list[Certificate]:
    x = coefficient.value
    N = eta.modulus
    i = CycloNumber.i()
    z_eta = CycloNumber.root_of_unity(eta.order)
    certs = [_certificate("a(T) in Q(i, eta, zeta_N)", x, [i, z_eta, CycloNumber.root_of_unity(N)])]
    if T.rank == 1:
        certs.append(_certificate("a(T) in Q(eta, G(eta))", x, [z_eta, gauss_sum(eta)]))
    elif T.rank == 2:
        D = coefficient.meta.get("D") or disc_data(T).D
        _, beta = associated_characters(eta, D)
        gens = [z_eta, sqrt_absD_gauss_alpha(D, eta), gauss_sum(beta), i]
        certs.append(_certificate("a(T) in Q(eta, sqrt|D| G(alpha), G(beta), i)", x, gens))
    return certs


def sqrtN_field_applies(eta: DirichletCharacter, D: int) -> bool:
    """eta^2 = 1 and chi_D eta is already primitive mod lcm(|D|, N)."""
    if eta.order > 2:
        return False
    prod = char_product(kronecker_character(D), eta)
    return prod.conductor == prod.modulus


def sqrtN_field_certificate(coefficient: Coefficient, eta: DirichletCharacter) -> Certificate:
    """Rank-2 membership in Q(sqrt N, i) when eta^2 = 1 and alpha = chi_D eta."""
    return _certificate("a(T) in Q(sqrt N, i)", coefficient.value, [sqrt_int(eta.modulus), CycloNumber.i()])


# ------------------------------------------------------------ utilities


def paramodular_member(g, level: int) -> bool:
    """Membership of a 4x4 rational matrix in the paramodular group K(level)."""
    M = [[Fraction(x) for x in row] for row in g]
    if len(M) != 4 or any(len(row) != 4 for row in M):
        raise ValueError("need a 4x4 matrix")
    J = [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]
    # g^T J g == J
    JM = [[sum(J[a][c] * M[c][b] for c in range(4)) for b in range(4)] for a in range(4)]
    for a in range(4):
        for b in range(4):
            if sum(M[c][a] * JM[c][b] for c in range(4)) != J[a][b]:
                return False
    # allowed denominators: entry / scale must be integral
    scale = [
        [1, level, 1, 1],
        [1, 1, 1, Fraction(1, level)],
        [1, level, 1, 1],
        [level, level, level, 1],
    ]
    return all((M[a][b] / scale[a][b]).denominator == 1 for a in range(4) for b in range(4))


def c0_matrix(x) -> list[list[Fraction]]:
    x = Fraction(x)
    return [[1, 0, 0, 0], [0, 1, 0, 0], [0, x, 1, 0], [x, 0, 0, 1]]


def enumerate_T(N: int, n_max: int, m_max: int, r_max: int | None = None, *, include_zero: bool = False) -> list[HalfIntMatrix]:
    """PSD (n, r, m) with 0 <= n <= n_max, 0 <= m <= m_max, N^2 | m, |r| <= r_max, ordered by (n, m, r).

    T = 0 carries the constant term and is left out unless asked for.
    """
    if min(n_max, m_max) < 0 or (r_max is not None and r_max < 0):
        raise ValueError("bounds must be nonnegative")
    out = []
    for n in range(n_max + 1):
        for m in range(0, m_max + 1, N * N):
            bound = isqrt(4 * n * m)
            if r_max is not None:
                bound = min(bound, r_max)
            for r in range(-bound, bound + 1):
                if n == r == m == 0 and not include_zero:
                    continue
                out.append(HalfIntMatrix(n, r, m))
    return out
