"""Show the level decomposition of the local integral K for a few (p, T, eta)."""

import argparse

from paramodular import verify
from paramodular.gauss import localize
from paramodular.padic import k_integral, k_integral_oracle


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--weight", type=int, default=4)
    ap.add_argument("--per-regime", type=int, default=1)
    args = ap.parse_args()

    for p, T, eta, regime in verify.k_instances(args.per_regime):
        chi = localize(eta, p)
        K = k_integral(args.weight, T, chi)
        n_p = chi.conductor_exponent
        j_max = max(K.truncation_j, 1 - n_p) + 1
        agree = K.value == k_integral_oracle(args.weight, T, chi, p, j_max + 3 * n_p, j_max)
        print(f"p={p} n_p={n_p} eta={eta.label} T={T} regime={regime} oracle={'agrees' if agree else 'DIFFERS'}")
        for j, vol in sorted(K.level_measures.items()):
            if vol:
                print(f"    j={j:3d} vol={vol!s:>12}")
        print(f"    K = {complex(K.value):.6g}")


if __name__ == "__main__":
    main()
