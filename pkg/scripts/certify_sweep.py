"""Certify every coefficient in a box of T and optionally cross-check numerically.

Writes a JSON report and prints a one-line summary per weight.
"""

import argparse
import json
import time
from pathlib import Path

from paramodular import verify
from paramodular.dirichlet import DirichletCharacter


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--char", default="5:2")
    ap.add_argument("--weights", type=int, nargs="+", default=[4, 6])
    ap.add_argument("--n-max", type=int, default=4)
    ap.add_argument("--m-mult", type=int, default=4, help="m runs up to m_mult * N^2")
    ap.add_argument("--crosscheck", action="store_true")
    ap.add_argument("--out", type=Path, default=None)
    args = ap.parse_args()

    eta = DirichletCharacter.from_label(*map(int, args.char.split(":")))
    report = {"character": eta.label, "weights": {}}
    for k in args.weights:
        t = time.perf_counter()
        checks, coeffs = verify.field_checks(eta, k, args.n_max, args.m_mult)
        checks += verify.sqrtN_field_checks(eta, coeffs)
        if args.crosscheck:
            checks += verify.crosscheck_checks(eta, k, coeffs)
        dt = time.perf_counter() - t
        failed = [c.name for c in checks if not c.passed]
        report["weights"][k] = {"coefficients": len(coeffs), "checks": len(checks), "failed": failed, "seconds": dt}
        print(f"k={k} eta={eta.label}: {len(coeffs)} coefficients, {len(checks)} checks, {len(failed)} failed, {dt:.1f}s")
        for name in failed[:5]:
            print("   ", name, next(c.detail for c in checks if c.name == name))
    if args.out:
        args.out.write_text(json.dumps(report, indent=2))


if __name__ == "__main__":
    main()
