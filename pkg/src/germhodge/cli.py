"""Command line: germhodge {analyze,spectrum,residue-matrix,weight-filtration,signature,check}."""

from __future__ import annotations

import argparse
import logging
import re
import sys
from pathlib import Path

from .report import ORDERS, GermSpec, analyze, check, render_text, view

GERM_COMMANDS = {
    "analyze": "full report",
    "spectrum": "spectrum, Hodge bigrading and conjugation (quasi-homogeneous germs)",
    "residue-matrix": "Gram matrix of the residue pairing",
    "weight-filtration": "Jordan type of multiplication by f, weight filtration and level forms",
    "signature": "polarization signature from Hodge numbers and from level forms",
}


def _variables(text: str, given: str | None) -> list:
    if given:
        return [v.strip() for v in given.split(",") if v.strip()]
    return sorted(set(re.findall(r"[A-Za-z_][A-Za-z_0-9]*", text)))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="germhodge", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in GERM_COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("polynomial", help='germ such as "x^3+y^4"')
        p.add_argument("--vars", help="comma-separated variables (default: names in the polynomial, sorted)")
        p.add_argument("--order", choices=sorted(ORDERS), default="grevlex")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--oracle", action="store_true", help="cross-check the residue with the Morse sum")
        p.add_argument("--oracle-eps", type=float, default=1e-3)
    p = sub.add_parser("check", help="run the corpus against its golden reports")
    p.add_argument("corpus", nargs="?", type=Path, help="corpus directory (default: the shipped one)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--update-golden", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    if args.command == "check":
        results = check(args.corpus, jobs=args.jobs, update=args.update_golden)
        for r in results:
            print(f"{'PASS' if r.ok else 'FAIL'} {r.name}")
            for problem in r.problems:
                print(f"    {problem}")
        failed = sum(not r.ok for r in results)
        print(f"{len(results) - failed}/{len(results)} passed")
        return 1 if failed else 0

    spec = GermSpec(args.polynomial, _variables(args.polynomial, args.vars), args.order)
    report = view(analyze(spec, oracle=args.oracle, oracle_eps=args.oracle_eps), args.command)
    if args.format == "json":
        print(report.to_json())
    else:
        print(render_text({**report.data, "timings": report.timings}))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
