"""Command-line front end.

    lambda-lab suite  [--config PATH] [--seed N] [--report PATH]
    lambda-lab spec   --points a,b,c --fields 2,3,2^2
    lambda-lab scheme --points a,b,c --fields 2 --check all
    lambda-lab remark [--field 3]

Exit status is 0 when nothing failed, 1 when a check failed, 2 on bad usage.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from . import ev_periodic as ev
from .errors import LambdaLabError
from .finite_field import parse_field
from .product_ring import IndexSet, maximal_ideal
from .report import SuiteReport
from .suite import ConfigError, SuiteConfig, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _split(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _base(points: str, fields: str) -> IndexSet:
    labels = _split(points)
    specs = _split(fields)
    if not labels:
        raise UsageError("--points: expected a comma-separated list of labels")
    if len(specs) == 1:
        specs = specs * len(labels)
    if len(specs) != len(labels):
        raise UsageError(f"--fields: expected 1 or {len(labels)} fields, got {len(specs)}")
    try:
        fs = [parse_field(s) for s in specs]
        return IndexSet(tuple(labels), tuple(fs))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(report: SuiteReport, path: str | None, out) -> int:
    text = report.to_jsonl()
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        s = report.summary
        print(f"{s['pass']} pass, {s['fail']} fail, {s['partial']} partial -> {path}", file=out)
    else:
        out.write(text)
    return EXIT_OK if report.ok else EXIT_FAIL


# -- subcommands ------------------------------------------------------------


def cmd_suite(args, out) -> int:
    try:
        cfg = SuiteConfig.load(args.config)
        if args.seed is not None:
            cfg = cfg.with_seed(args.seed)
    except (ConfigError, OSError) as exc:
        raise UsageError(str(exc)) from None
    return _emit(run_suite(cfg), args.report, out)


def spec_table(base: IndexSet) -> tuple[list[str], bool]:
    """Rows describing ``Spec Λ``; cross-checked against the ideal oracle when small."""
    from .spectrum import CLOSURE_LIMIT, enumerate_ideals

    rows = [f"Spec of {base.describe()}", f"{'point':<8}{'generator of m_x':<24}residue field"]
    for x in base.labels:
        m = maximal_ideal(base, x)
        rows.append(f"{x:<8}{repr(m.generator):<24}{base.field_of(x)!r}")
    ok = True
    if base.order <= CLOSURE_LIMIT:
        oracle = enumerate_ideals(base)
        expected = sorted(oracle.mask_of(maximal_ideal(base, x)) for x in base.labels)
        ok = sorted(oracle.primes) == expected == sorted(oracle.maximals)
        verdict = "matches" if ok else "DOES NOT match"
        rows.append(f"ideal enumeration: {len(oracle.primes)} primes, {len(oracle.maximals)} maximal; {verdict} the table")
    else:
        rows.append(f"ideal enumeration skipped: |Λ| = {base.order} > {CLOSURE_LIMIT}")
    return rows, ok


def cmd_spec(args, out) -> int:
    base = _base(args.points, args.fields)
    rows, ok = spec_table(base)
    for r in rows:
        print(r, file=out)
    return EXIT_OK if ok else EXIT_FAIL


def scheme_records(base: IndexSet, check: str) -> list:
    from .scheme_functor import (
        check_affine_iff_finite,
        check_functor_laws,
        check_separated,
        check_sheaf,
        duality_suite,
    )

    records = []
    if check in ("sheaf", "all"):
        records += check_sheaf(base)
    if check in ("separated", "all"):
        records += check_separated(base)
    if check in ("affine", "all"):
        records += check_affine_iff_finite(base)
    if check in ("duality", "all"):
        for K in sorted(set(base.fields), key=lambda k: k.q):
            size = 3 if K.q <= 3 else 2
            records += duality_suite(K, size) + check_functor_laws(K, 2)
    return records


def cmd_scheme(args, out) -> int:
    base = _base(args.points, args.fields)
    try:
        records = scheme_records(base, args.check)
    except LambdaLabError as exc:
        raise UsageError(str(exc)) from None
    config = {"points": list(base.labels), "fields": [f.name for f in base.fields], "check": args.check}
    return _emit(SuiteReport(records, config, __version__), args.report, out)


def remark_demo(field=3, *, trials: int = 10_000, seed: int = 42) -> list[str]:
    """Trace of the search for two members of Λ′ whose sum leaves Λ′."""
    spec = parse_field(field)
    lines = [f"Λ = ∏_(n ∈ ℕ) {spec!r}, eventually periodic sequences",
             "Λ′ = sequences whose support is finite or cofinite"]
    rep = ev.lambda_prime_closure_test(spec, trials=trials, seed=seed)
    if rep.closed:
        lines.append(f"searched {rep.checked} pairs of members of Λ′ (period ≤ 4, then {trials} random pairs)")
        lines.append("closed under addition (no counterexample exists)")
        return lines
    a, b = rep.counterexample
    unit = ev.one(spec)
    if b == unit:
        a, b = b, a
    # Name the unit "1" and the other summand "f", as in the classic example.
    names = ("1", "f") if a == unit else ("g", "f")
    for name, v in zip(names, (a, b)):
        lines.append(f"{name} = {v.show()}    Su({name}): {v.support_class().tag}")
    s = a + b
    total = f"{names[0]} + {names[1]}"
    lines.append(f"{total} = {s.show()}    Su({total}): {s.support_class().tag}")
    lines.append(f"{names[0]}, {names[1]} ∈ Λ′ but {total} ∉ Λ′")
    lines.append("Λ′ is not a subring of Λ")
    return lines


def cmd_remark(args, out) -> int:
    try:
        spec = parse_field(args.field)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    for line in remark_demo(spec):
        print(line, file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lambda-lab", description="Exact checks for products of finite fields.")
    p.add_argument("--version", action="version", version=f"lambda-lab {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("suite", help="run the check suites and write a JSON-lines report")
    s.add_argument("--config", help="JSON config file (all fields optional)")
    s.add_argument("--seed", type=int, help="override the config seed")
    s.add_argument("--report", help="write the report here instead of stdout")
    s.set_defaults(func=cmd_suite)

    s = sub.add_parser("spec", help="list the prime spectrum of a product of fields")
    s.add_argument("--points", default="a,b,c")
    s.add_argument("--fields", default="2")
    s.set_defaults(func=cmd_spec)

    s = sub.add_parser("scheme", help="check the discrete scheme of a product of fields")
    s.add_argument("--points", default="a,b,c")
    s.add_argument("--fields", default="2")
    s.add_argument("--check", choices=["sheaf", "separated", "affine", "duality", "all"], default="all")
    s.add_argument("--report")
    s.set_defaults(func=cmd_scheme)

    s = sub.add_parser("remark", help="search for a sum of finite/cofinite supports that is neither")
    s.add_argument("--field", default="3")
    s.set_defaults(func=cmd_remark)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        print(f"lambda-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
