"""Command-line entry point: ``vdgv analyze|count|verify|tau|quotient``.

Exit codes: 0 ok, 2 invalid input, 3 a standing assumption fails, 4 an internal
cross-check fails, 5 an enumeration exceeds the size guard.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .errors import AssumptionError, ConsistencyError, InputError, SizeGuardExceeded, VdgvError
from .lfunc import DEFAULT_BUDGET, make_spec
from .pipeline import SCHEMA, Analysis, build_report, quotient_report, tau_report

EXIT_INPUT, EXIT_ASSUMPTION, EXIT_CONSISTENCY, EXIT_GUARD = 2, 3, 4, 5
COEFF_FLAGS = ("--R", "--FR", "--delta")


def parse_coeffs(text: str) -> list[list[int]]:
    """'a0;a1;...' with each coefficient a comma-separated coordinate vector."""
    out = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            raise InputError(f"empty coefficient in {text!r}")
        try:
            out.append([int(x) for x in part.split(",")])
        except ValueError:
            raise InputError(f"bad coefficient {part!r} in {text!r}") from None
    return out


def _join_negative_values(argv: list[str]) -> list[str]:
    # argparse treats "-1;1" as an option; glue it to its flag instead
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in COEFF_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") and argv[i + 1][1:2].isdigit():
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="vdgv", description="L-polynomials of curves y^p - y = x R(x) over F_q.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def curve_args(p, required=True):
        p.add_argument("--p0", type=int, required=required, help="characteristic")
        p.add_argument("--f", type=int, required=required, help="q = p0^f")
        p.add_argument("--p", type=int, required=required, help="p, a power of p0 with q a power of p")
        p.add_argument("--R", type=parse_coeffs, required=required, help="coefficients a_0;...;a_e of R = sum a_i x^(p^i)")
        p.add_argument("--FR", type=parse_coeffs, help="coefficients of F_R (fixes the isotropic subspace A)")
        p.add_argument("--delta", type=parse_coeffs, help="coefficients of delta in powers y^(p0^j)")

    def common(p):
        p.add_argument("--max-n", type=int, help="largest n for counts and verdicts (default 4 p0)")
        p.add_argument("--force", action="store_true", help="allow enumerations above the 2^40 size guard")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="largest field enumerated by optional routes")
        p.add_argument("--jobs", type=int, default=1, help="worker threads for point counting")
        p.add_argument("--out", help="write JSON here instead of stdout")
        p.add_argument("--timings", action="store_true", help="append a non-canonical timings section")

    p = sub.add_parser("analyze", help="full report")
    curve_args(p)
    common(p)
    p = sub.add_parser("count", help="N_n by enumeration")
    curve_args(p)
    common(p)
    p.add_argument("--n", type=int, default=1, help="extension degree")
    p = sub.add_parser("verify", help="run the verification suites")
    curve_args(p, required=False)
    common(p)
    p.add_argument("--grid", choices=("small", "extended"), help="sweep a built-in grid instead of one curve")
    p = sub.add_parser("tau", help="Gauss sum table only")
    curve_args(p)
    common(p)
    p = sub.add_parser("quotient", help="quotient chain only")
    curve_args(p)
    common(p)
    return parser


def _spec(args):
    missing = [f for f in ("p0", "f", "p", "R") if getattr(args, f) is None]
    if missing:
        raise InputError("missing " + ", ".join("--" + m for m in missing))
    return make_spec(args.p0, args.f, args.p, args.R, args.FR, args.delta)


def _analysis(args, spec=None):
    return Analysis(spec or _spec(args), budget=args.budget, force=args.force, jobs=args.jobs)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def cmd_analyze(args):
    an = _analysis(args)
    return build_report(an, args.max_n), an, 0


def cmd_count(args):
    spec = _spec(args)
    an = _analysis(args, spec)
    if args.n < 1:
        raise InputError("--n must be positive")
    with an.timed("count"):
        N = an.counter.count(args.n, args.force)
    return {"schema": SCHEMA, "curve": spec.to_json(), "n": args.n, "N": N}, an, 0


def cmd_tau(args):
    an = _analysis(args)
    return tau_report(an), an, 0


def cmd_quotient(args):
    an = _analysis(args)
    return quotient_report(an), an, 0


def cmd_verify(args):
    from .grid import grid_specs
    from .verify import all_passed, run_suites

    if args.grid:
        specs = grid_specs(args.grid)
    else:
        specs = [_spec(args)]
    curves, timings, ok = [], {}, True
    for i, spec in enumerate(specs):
        an = _analysis(args, spec)
        t = time.perf_counter()
        try:
            results = run_suites(an)
        except AssumptionError as exc:
            results = {"assumptions": {"status": "skipped", "detail": {"reason": str(exc)}}}
        ok = ok and all_passed(results)
        curves.append({"curve": spec.to_json(), "suites": results})
        timings[str(i)] = round(time.perf_counter() - t, 3)
    rep = {"schema": SCHEMA, "curves": curves, "all_pass": ok}
    if args.grid:
        rep["grid"] = args.grid
    return rep, _Timings(timings), 0 if ok else EXIT_CONSISTENCY


class _Timings:
    def __init__(self, timings):
        self.timings = timings


COMMANDS = {"analyze": cmd_analyze, "count": cmd_count, "verify": cmd_verify, "tau": cmd_tau, "quotient": cmd_quotient}


def run(argv: list[str] | None = None) -> int:
    argv = _join_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = build_parser().parse_args(argv)
        report, an, code = COMMANDS[args.command](args)
    except InputError as exc:
        print(f"vdgv: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AssumptionError as exc:
        print(f"vdgv: assumption violated: {exc}", file=sys.stderr)
        return EXIT_ASSUMPTION
    except SizeGuardExceeded as exc:
        print(f"vdgv: size guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ConsistencyError, VdgvError, AssertionError) as exc:
        print(f"vdgv: internal check failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    if args.timings:
        report = dict(report, timings={k: round(v, 3) for k, v in sorted(an.timings.items())})
    text = dumps(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
