"""Command line entry point: coefficients, tables, verification suites, character listings."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import mpmath as mp

from .dirichlet import DirichletCharacter, primitive_characters, enumerate_characters
from .eisenstein import HalfIntMatrix, ParityError, enumerate_T, fourier_coefficient
from .padic import KIntegralError
from . import verify

OUT_ENV = "PARAMODULAR_OUT"
FORMATS = ("json", "jsonl", "csv")
SUITE_NAMES = ("epsilon", "kintegral", "fields", "bernoulli", "all")


@dataclass
class JobConfig:
    weight: int = 4
    char: str = "1:0"
    T: list[tuple[int, int, int]] = field(default_factory=list)
    n_max: int = 2
    m_max: int | None = None
    r_max: int | None = None
    format: str = "jsonl"
    precision: int = 20
    k_cap: int | None = None
    m_res_cap: int = verify.ORACLE_SIZE_CAP
    max_conductor: int = 24
    crosscheck: bool = False
    out: str | None = None

    def __post_init__(self):
        if self.weight < 4 or self.weight % 2:
            raise ValueError("weight must be an even integer >= 4")
        N, idx = parse_char(self.char)
        if N < 1 or idx < 0:
            raise ValueError("character modulus must be >= 1")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")
        for b in (self.n_max, self.m_max, self.r_max, self.k_cap):
            if b is not None and b < 0:
                raise ValueError("bounds must be nonnegative")
        self.T = [tuple(t) for t in self.T]

    @property
    def character(self) -> DirichletCharacter:
        return DirichletCharacter.from_label(*parse_char(self.char))

    @property
    def m_bound(self) -> int:
        N = parse_char(self.char)[0]
        return self.m_max if self.m_max is not None else 2 * N * N

    def to_dict(self) -> dict:
        d = asdict(self)
        d["T"] = [list(t) for t in self.T]
        return d

    def canonical(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict) -> "JobConfig":
        known = {f.name for f in fields(cls)}
        extra = set(d) - known
        if extra:
            raise ValueError(f"unknown config keys: {sorted(extra)}")
        return cls(**d)


def parse_char(label: str) -> tuple[int, int]:
    try:
        N, idx = label.split(":")
        return int(N), int(idx)
    except ValueError:
        raise ValueError(f"character label must look like MOD:IDX, got {label!r}") from None


def parse_T(text: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("T must be n,r,m")
    try:
        return tuple(int(x) for x in parts)  # type: ignore[return-value]
    except ValueError:
        raise argparse.ArgumentTypeError("T entries must be integers") from None


# ---------------------------------------------------------------- rendering


def _decimal(x, precision: int) -> list[str]:
    z = x.embed(precision + 5)
    return [mp.nstr(z.real, precision), mp.nstr(z.imag, precision)]


def coefficient_record(c, precision: int) -> dict:
    return {
        "T": c.T.to_json(),
        "rank": c.rank,
        "value": c.value.to_json(),
        "decimal": _decimal(c.value, precision),
        "pi_exponent": c.pi_exponent,
        "certificates": [x.to_json() for x in c.certificates],
    }


CSV_FIELDS = ["n", "r", "m", "rank", "order", "coeffs", "re", "im", "certified"]


def _csv_row(rec: dict) -> dict:
    return {
        "n": rec["T"]["n"],
        "r": rec["T"]["r"],
        "m": rec["T"]["m"],
        "rank": rec["rank"],
        "order": rec["value"]["order"],
        "coeffs": ";".join(rec["value"]["coeffs"]),
        "re": rec["decimal"][0],
        "im": rec["decimal"][1],
        "certified": all(c["pass"] for c in rec["certificates"]),
    }


def render(records: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(records, indent=2, sort_keys=True) + "\n"
    if fmt == "jsonl":
        return "".join(json.dumps(r, sort_keys=True) + "\n" for r in records)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in records:
        w.writerow(_csv_row(r))
    return buf.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _default_out(cfg: JobConfig, stem: str) -> str | None:
    if cfg.out:
        return cfg.out
    base = os.environ.get(OUT_ENV)
    if not base:
        return None
    ext = "json" if cfg.format == "json" else cfg.format
    return str(Path(base) / f"{stem}.{ext}")


# ---------------------------------------------------------------- commands


def cmd_coeff(cfg: JobConfig) -> int:
    if len(cfg.T) != 1:
        raise ValueError("coeff needs exactly one --T")
    c = fourier_coefficient(cfg.weight, cfg.character, HalfIntMatrix(*cfg.T[0]), j_cap=cfg.k_cap)
    rec = coefficient_record(c, cfg.precision)
    _emit(json.dumps(rec, indent=2, sort_keys=True) + "\n", cfg.out)
    return 0 if all(x.passed for x in c.certificates) else 1


def cmd_table(cfg: JobConfig) -> int:
    eta = cfg.character
    Ts = [HalfIntMatrix(*t) for t in cfg.T] or enumerate_T(eta.modulus, cfg.n_max, cfg.m_bound, cfg.r_max)
    records, ranks, ok = [], {0: 0, 1: 0, 2: 0}, True
    for T in Ts:
        c = fourier_coefficient(cfg.weight, eta, T, j_cap=cfg.k_cap)
        records.append(coefficient_record(c, cfg.precision))
        ranks[c.rank] += 1
        ok = ok and all(x.passed for x in c.certificates)
    stem = f"table_{eta.modulus}-{eta.index}_k{cfg.weight}"
    _emit(render(records, cfg.format), _default_out(cfg, stem))
    summary = {"records": len(records), "by_rank": {str(k): v for k, v in ranks.items()}, "certified": ok}
    print(json.dumps({"summary": summary}, sort_keys=True), file=sys.stderr)
    return 0 if ok else 1


def _suite_reports(suite: str, cfg: JobConfig) -> list[verify.SuiteReport]:
    reports = []
    if suite in ("epsilon", "all"):
        reports.append(
            verify.run_suite(
                "epsilon",
                lambda: verify.gauss_checks(cfg.max_conductor) + verify.epsilon_checks(cfg.max_conductor),
            )
        )
    if suite in ("bernoulli", "all"):
        reports.append(verify.run_suite("bernoulli", lambda: verify.bernoulli_checks(cfg.max_conductor)))
    if suite in ("kintegral", "all"):
        verify.ORACLE_SIZE_CAP = cfg.m_res_cap
        reports.append(verify.run_suite("kintegral", verify.k_checks))
    if suite in ("fields", "all"):
        eta = cfg.character

        def run():
            checks, coeffs = verify.field_checks(eta, cfg.weight, cfg.n_max, max(1, cfg.m_bound // eta.modulus**2))
            checks += verify.sqrtN_field_checks(eta, coeffs)
            if cfg.crosscheck:
                checks += verify.crosscheck_checks(eta, cfg.weight, coeffs)
            return checks

        reports.append(verify.run_suite("fields", run))
    return reports


def cmd_verify(suite: str, cfg: JobConfig) -> int:
    reports = _suite_reports(suite, cfg)
    ok = all(r.passed for r in reports)
    doc = {"pass": ok, "suites": [r.to_json() for r in reports]}
    _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", cfg.out)
    return 0 if ok else 1


def cmd_chars(modulus: int, primitive_only: bool, out: str | None) -> int:
    chars = primitive_characters(modulus) if primitive_only else enumerate_characters(modulus)
    rows = [{"label": c.label, **c.to_json()} for c in chars]
    _emit("".join(json.dumps(r, sort_keys=True) + "\n" for r in rows), out)
    return 0


# ------------------------------------------------------------------ parsing


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="paramodular", description="Exact Fourier coefficients of paramodular Eisenstein series.")
    sub = ap.add_subparsers(dest="command", required=True)

    def job_flags(p, with_T: bool = True):
        p.add_argument("--weight", type=int, default=4)
        p.add_argument("--char", default="1:0", help="character label MOD:IDX")
        if with_T:
            p.add_argument("--T", action="append", type=parse_T, default=[], help="n,r,m (repeatable)")
        p.add_argument("--n-max", type=int, default=2)
        p.add_argument("--m-max", type=int, default=None, help="default 2 N^2")
        p.add_argument("--r-max", type=int, default=None)
        p.add_argument("--format", choices=FORMATS, default="jsonl")
        p.add_argument("--precision", type=int, default=20, help="digits in decimal renderings")
        p.add_argument("--k-cap", type=int, default=None, help="j cap for the local integral")
        p.add_argument("--m-res-cap", type=int, default=verify.ORACLE_SIZE_CAP, help="largest p^M for the brute-force oracle")
        p.add_argument("--out", default=None)

    job_flags(sub.add_parser("coeff", help="one coefficient with certificates"))
    job_flags(sub.add_parser("table", help="coefficients over a box of T"))
    pv = sub.add_parser("verify", help="run verification suites")
    pv.add_argument("suite", choices=SUITE_NAMES)
    job_flags(pv, with_T=False)
    pv.add_argument("--max-conductor", type=int, default=24)
    pv.add_argument("--crosscheck", action="store_true", help="also re-assemble each coefficient numerically")
    pc = sub.add_parser("chars", help="list characters of a modulus")
    pc.add_argument("--modulus", type=int, required=True)
    pc.add_argument("--primitive", action="store_true")
    pc.add_argument("--out", default=None)
    return ap


def config_from_args(args: argparse.Namespace) -> JobConfig:
    keys = {f.name for f in fields(JobConfig)}
    d = {k: v for k, v in vars(args).items() if k in keys}
    return JobConfig.from_dict(d)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "chars":
            return cmd_chars(args.modulus, args.primitive, args.out)
        cfg = config_from_args(args)
        if args.command == "coeff":
            return cmd_coeff(cfg)
        if args.command == "table":
            return cmd_table(cfg)
        return cmd_verify(args.suite, cfg)
    except (ParityError, KIntegralError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
