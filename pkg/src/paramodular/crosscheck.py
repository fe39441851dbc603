"""Floating-point re-assembly of a(T), independent of the exact Bernoulli path.

L-values come from Hurwitz zeta sums (mpmath) or a truncated Dirichlet
series, H~ from a plain triple loop,
K from the brute-force unit sum and Gauss sums from their defining sum.  Only
the character tables and the local dictionary are shared with the exact code.
"""

from __future__ import annotations

import mpmath as mp
import numpy as np

from .arith import divisors, factorize, lcm, moebius
from .dirichlet import DirichletCharacter, kronecker_character
from .eisenstein import HalfIntMatrix, fundamental_discriminant
from .gauss import localize
from .padic import k_integral, k_integral_oracle, n_split


def _val(chi: DirichletCharacter, x: int):
    ph = chi.phase(x % chi.modulus)
    return mp.mpc(0) if ph is None else mp.expjpi(2 * mp.mpf(ph.numerator) / ph.denominator)


def _table(fn, q: int) -> list:
    return [fn(x) for x in range(q)]


SERIES_TERMS = 10**6
_SERIES_CACHE: dict = {}


def l_value(s: int, fn, q: int, method: str = "hurwitz"):
    """sum_{n>=1} fn(n) n^-s for a q-periodic fn.

    ``hurwitz`` is accurate to the working precision; ``series`` is the plain
    truncated sum in double precision with the mean-value tail term added.
    """
    table = _table(fn, q)
    if s == 1:
        # conditionally convergent; digamma closed form for a mean-zero table
        if abs(mp.fsum(table)) > mp.mpf(10) ** (-mp.mp.dps // 2):
            raise ValueError("L(1) diverges for a table with nonzero mean")
        return -mp.fsum(table[a] * mp.digamma(mp.mpf(a) / q) for a in range(1, q)) / q
    if method == "hurwitz":
        return mp.dirichlet(s, table)
    if method != "series":
        raise ValueError(f"unknown L-value method {method!r}")
    vals = np.array([complex(z) for z in table])
    key = (s, q, vals.tobytes())
    if key in _SERIES_CACHE:
        return _SERIES_CACHE[key]
    n = np.arange(1, SERIES_TERMS + 1, dtype=np.float64)
    total = np.sum(vals[np.arange(1, SERIES_TERMS + 1) % q] * n ** (-float(s)))
    # leading tail of a table with nonzero mean c: c X^{1-s} / (s-1) - c X^{-s} / 2
    c = vals.mean()
    X = float(SERIES_TERMS)
    total += c * (X ** (1 - s) / (s - 1) - X ** (-s) / 2)
    _SERIES_CACHE[key] = mp.mpc(total.real, total.imag)
    return _SERIES_CACHE[key]


def gauss_numeric(chi: DirichletCharacter):
    m = chi.modulus
    return mp.fsum(_val(chi, x) * mp.expjpi(mp.mpf(2 * x) / m) for x in range(m)) if m > 1 else mp.mpc(1)


def h_tilde_bruteforce(D: int, s: int, eta: DirichletCharacter, e: int, f: int):
    chi_D = kronecker_character(D)
    total = mp.mpc(0)
    for d in range(1, e + 1):
        if e % d or f % d:
            continue
        for g in range(1, f // d + 1):
            if (f // d) % g:
                continue
            for h in range(1, f // (d * g) + 1):
                if (f // (d * g)) % h:
                    continue
                ed, eg, eh = _val(eta, d), _val(eta, g), _val(eta, h)
                if ed == 0 or eg == 0 or eh == 0:
                    continue
                total += (
                    d ** (s - 1) / ed
                    * moebius(g) * _val(chi_D, g) / eg * mp.mpf(g) ** (s - 2)
                    / eh**2 * mp.mpf(h) ** (2 * s - 3)
                )
    return total


def _oracle_k(k: int, T, chi_p, p: int):
    """K by the brute-force unit sum up to the last level the tree reports."""
    n_p = chi_p.conductor_exponent
    exact = k_integral(k, T, chi_p)
    j_max = max(exact.truncation_j, 1 - n_p)
    M = j_max + 3 * n_p
    if p**M > 5 * 10**6:
        return None, exact
    return k_integral_oracle(k, T, chi_p, p, M, j_max), exact


def rank1_numeric(k: int, eta: DirichletCharacter, T: HalfIntMatrix, method: str = "hurwitz"):
    N = eta.modulus
    front = (-2j * mp.pi) ** k / mp.factorial(k - 1)
    if N == 1 and T.m == 0 and T.r == 0 and T.n > 0:
        zeta = mp.zeta(k) if method == "hurwitz" else l_value(k, lambda x: mp.mpc(1), 1, method)
        return front * mp.fsum(mp.mpf(d) ** (k - 1) for d in divisors(T.n)) / zeta
    if T.m <= 0 or (N > 1 and (T.r == 0 or n_split(T.r, N).r_N * N != n_split(2 * T.m, N).r_N)):
        return mp.mpc(0)
    e = T.content
    e_hat = n_split(e, N).r_Nhat
    sig = mp.fsum(mp.conj(_val(eta, d)) * mp.mpf(d) ** (k - 1) for d in divisors(e_hat))
    L = l_value(k, lambda x: _val(eta, x), N, method)
    r_hat = n_split(T.r, N).r_Nhat if T.r else 0
    return front * sig / L * _val(eta, r_hat) / _val(eta, n_split(2, N).r_Nhat) * mp.mpf(n_split(e, N).r_N) ** (k - 1)


def rank2_numeric(k: int, eta: DirichletCharacter, T: HalfIntMatrix, method: str = "hurwitz"):
    """Returns (value, used_oracle_for_every_K)."""
    N = eta.modulus
    D, f = fundamental_discriminant(T.disc)
    e = T.content
    f_hat = n_split(f, N).r_Nhat
    e_hat = n_split(e, N).r_Nhat
    chi_D = kronecker_character(D)
    ell = lcm(abs(D), N)
    det = mp.mpf(4 * T.n * T.m - T.r**2) / 4
    val = (4 * mp.pi) ** (2 * k - 1) * det ** (k - mp.mpf(3) / 2) / (2 * mp.factorial(2 * k - 2))
    val *= mp.mpf(N) ** (2 - 2 * k) * mp.mpf(f_hat) ** (3 - 2 * k) * _val(eta, f_hat**2)
    val *= h_tilde_bruteforce(D, k, eta, e_hat, f_hat)
    # imprimitive series straight from the definitions
    L1 = l_value(k - 1, lambda x: _val(chi_D, x) * _val(eta, x), ell, method)
    L2 = l_value(k, lambda x: _val(eta, x), N, method)
    L3 = l_value(2 * k - 2, lambda x: _val(eta, x) ** 2, N, method)
    val *= L1 / (L2 * L3) * gauss_numeric(eta)
    all_oracle = True
    for p, n_p in factorize(N) if N > 1 else ():
        chi_p = localize(eta, p)
        if T.r % p:
            val *= chi_p(T.r).embed(mp.mp.dps)
            continue
        K, exact = _oracle_k(k, T.as_tuple(), chi_p, p)
        if K is None:
            all_oracle = False
            K = exact.value
        val *= mp.mpf(p) ** (n_p * (2 - k)) * chi_p(p**n_p).embed(mp.mp.dps) * K.embed(mp.mp.dps)
    return val, all_oracle


def numeric_coefficient(k: int, eta: DirichletCharacter, T: HalfIntMatrix, dps: int = 40, method: str = "hurwitz"):
    """(value, every K came from the brute-force oracle)."""
    with mp.workdps(dps):
        if T.rank == 0:
            return mp.mpc(1 if eta.modulus == 1 else 0), True
        if T.rank == 1:
            return rank1_numeric(k, eta, T, method), True
        return rank2_numeric(k, eta, T, method)


def relative_error(exact, approx) -> float:
    a = mp.mpc(exact)
    b = mp.mpc(approx)
    scale = max(abs(a), abs(b))
    return float(abs(a - b) / scale) if scale else 0.0
