"""Command-line entry point: ``modvertex verify | selftest | dump-fixtures``."""

from __future__ import annotations

import argparse
import sys

from .config import Config, seed_from_env
from .errors import ConfigError, DomainError
from .verify import dump_fixtures, report_json, report_text, selftest, verify_range


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--field-degree", type=int, default=2,
                   help="largest k such that GF(2^k) may be reached by scalar extension")
    p.add_argument("--budget-cosets", type=int, default=50_000_000)
    p.add_argument("--budget-elements", type=int, default=1 << 20)
    p.add_argument("--budget-endo", type=int, default=1 << 20)
    p.add_argument("--seed", type=int, default=None,
                   help="random seed (default: $MODVERTEX_SEED or 0)")
    p.add_argument("--report", choices=("json", "text"), default="json")
    p.add_argument("--include-sn", action="store_true",
                   help="also run the symmetric-group battery for even n that are not 2-powers")
    p.add_argument("--normalize-timings", action="store_true",
                   help="zero all timings so reruns are byte-identical")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="modvertex",
                                     description="Vertices and sources of natural simple modules.")
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run the per-n batteries and the vertex sandwich")
    v.add_argument("--n", type=int)
    v.add_argument("--from", dest="n_from", type=int)
    v.add_argument("--to", dest="n_to", type=int)
    _add_common(v)
    s = sub.add_parser("selftest", help="oracle suites, identities and fixture round-trip")
    s.add_argument("--fixtures", default=None, help="directory of dumped fixtures to compare")
    _add_common(s)
    d = sub.add_parser("dump-fixtures", help="write text fixtures for one n")
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--out", default=None, help="output directory (default: fixtures/n<N>)")
    return parser


def _config(args, n_from: int = 3, n_to: int = 3) -> Config:
    seed = args.seed if args.seed is not None else seed_from_env(0)
    return Config(n_from=n_from, n_to=n_to, field_degree=args.field_degree,
                  budget_cosets=args.budget_cosets, budget_elements=args.budget_elements,
                  budget_endo=args.budget_endo, seed=seed, report=args.report,
                  include_sn=args.include_sn, normalize_timings=args.normalize_timings)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            if args.n is not None:
                if args.n_from is not None or args.n_to is not None:
                    parser.error("use either --n or --from/--to")
                lo = hi = args.n
            elif args.n_from is not None and args.n_to is not None:
                lo, hi = args.n_from, args.n_to
            else:
                parser.error("verify needs --n or both --from and --to")
            config = _config(args, lo, hi)
            rows, code = verify_range(lo, hi, config)
            out = report_json(rows, config) if config.report == "json" else report_text(rows)
            sys.stdout.write(out if out.endswith("\n") else out + "\n")
            return code
        if args.command == "selftest":
            config = _config(args)
            results = selftest(config, args.fixtures)
            for c in results:
                line = f"{c.status.upper():4} {c.name}"
                print(line + (f": {c.details}" if c.details else ""))
            return 0 if all(c.status == "pass" for c in results) else 1
        if args.command == "dump-fixtures":
            for path in dump_fixtures(args.n, args.out or f"fixtures/n{args.n}"):
                print(path)
            return 0
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
