"""Print level-one Fourier coefficients next to the divisor-sum formula for diagonal T."""

import argparse

from paramodular.arith import divisors
from paramodular.dirichlet import DirichletCharacter
from paramodular.eisenstein import HalfIntMatrix, enumerate_T, fourier_coefficient

EISENSTEIN_1 = {4: 240, 6: -504}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--weight", type=int, default=4, choices=sorted(EISENSTEIN_1))
    ap.add_argument("--n-max", type=int, default=3)
    args = ap.parse_args()
    one = DirichletCharacter.principal(1)
    k = args.weight

    print(f"# a(diag(n, 0)) vs {EISENSTEIN_1[k]} sigma_{k - 1}(n)")
    for n in range(1, 11):
        a = fourier_coefficient(k, one, HalfIntMatrix(n, 0, 0)).value.to_fraction()
        expected = EISENSTEIN_1[k] * sum(d ** (k - 1) for d in divisors(n))
        print(f"{n:3d} {a!s:>14} {'ok' if a == expected else 'MISMATCH'}")

    print(f"\n# rank-2 coefficients, n, m <= {args.n_max}")
    for T in enumerate_T(1, args.n_max, args.n_max):
        if T.rank == 2 and T.r >= 0:
            c = fourier_coefficient(k, one, T)
            print(f"{T.as_tuple()!s:>12} {c.value.to_fraction()!s:>16} D={c.meta['D']} f={c.meta['f']}")


if __name__ == "__main__":
    main()
