"""Command-line entry point: ``h10kit <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or precondition error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from typing import Dict, List, Optional

from . import __version__
from .cardinal import parse_cardinal
from .dioph import dioph
from .enumerator import (BoxOracle, BudgetOracle, OracleInconsistency, QueryError,
                         Undecided, print_solutions, strengthen_oracle)
from .esystem import enumerate_en, parse_system, render_system
from .fkappa import (SUMMARY_HEADER, fkappa_search, parse_fkappa_certificate,
                     render_fkappa_certificate, summary_row, verify_certificate)
from .poly import parse_poly, render_poly
from .reducer import reduce, render_certificate, verify_conditions
from .solver import format_tuple, render_report, report_to_dict, solve_box, solve_poly_box
from .theorem1 import BUILTIN_G, FunctionGraphSpec, build_sn, forced_value_report


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: Optional[str], text: str):
    if path:
        with open(path, "w") as fh:
            fh.write(text)


def _is_system_text(text: str) -> bool:
    for line in text.splitlines():
        s = line.split("#", 1)[0].strip()
        if s:
            return s.startswith("vars")
    return False


def _out(args, text: str, data: dict):
    if args.format == "structured":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        sys.stdout.write(text)


def cmd_reduce(args) -> int:
    d = parse_poly(_read(args.poly_file))
    result = reduce(d)
    cert_text = render_certificate(result.certificate)
    _write(args.cert, cert_text)
    text = render_system(result.system)
    data = {"polynomial": render_poly(d), "system": text, "certificate": cert_text}
    code = 0
    if args.verify_box is not None:
        rep = verify_conditions(d, result, args.verify_box)
        data["verification"] = {"box": rep.box, "aux_box": rep.aux_box, "d_count": rep.d_count,
                                "t_count": rep.t_count, "condition1": rep.condition1,
                                "condition2": rep.condition2, "passed": rep.passed,
                                "failures": rep.failures}
        text += (f"# verify box {rep.box}: D solutions {rep.d_count}, T solutions {rep.t_count}, "
                 f"condition1 {'pass' if rep.condition1 else 'FAIL'}, "
                 f"condition2 {'pass' if rep.condition2 else 'FAIL'}\n")
        text += "".join(f"# {f}\n" for f in rep.failures)
        code = 0 if rep.passed else 1
    _write(args.out, render_system(result.system))
    _out(args, text, data)
    return code


def cmd_dioph(args) -> int:
    system = parse_system(_read(args.system_file))
    poly = dioph(system)
    _out(args, render_poly(poly) + "\n", {"polynomial": render_poly(poly), "vars": poly.var_count})
    return 0


def cmd_solve(args) -> int:
    text = _read(args.file)
    if _is_system_text(text):
        report = solve_box(parse_system(text), args.bound, count_only=args.count_only)
    else:
        report = solve_poly_box(parse_poly(text), args.bound,
                                store_cap=0 if args.count_only else 10**6)
    _out(args, render_report(report), report_to_dict(report))
    return 0


def cmd_fkappa(args) -> int:
    kappa = parse_cardinal(args.kappa)
    result = fkappa_search(args.n, kappa, args.bound, cap=args.cap,
                           allow_long_run=args.allow_long_run, sample=args.sample,
                           seed=args.seed, jobs=args.jobs)
    row = summary_row(result)
    lines = [f"value {result.value}", f"mode {result.mode}", f"subsets {result.subsets_scanned}"]
    lines += [f"{k} {v}" for k, v in sorted(result.tallies.items())]
    certs = []
    for c in result.certificates:
        check = verify_certificate(c)
        cert_text = render_fkappa_certificate(c)
        certs.append({"text": cert_text, "status": c.status, "recheck": check.ok})
        lines.append(f"certificate {c.status} recheck {'pass' if check else 'FAIL: ' + check.reason}")
        lines.append("witness")
        lines.extend("  " + ln for ln in render_system(c.witness).splitlines())
        lines.append("witness solutions " + " ".join(format_tuple(s) for s in c.witness_solutions))
    if args.cert_out and result.certificates:
        _write(args.cert_out, render_fkappa_certificate(result.certificates[0]))
    if args.summary:
        new = not os.path.exists(args.summary)
        with open(args.summary, "a", newline="") as fh:
            w = csv.writer(fh, delimiter="\t")
            if new:
                w.writerow(SUMMARY_HEADER)
            w.writerow(row)
    if args.plot:
        from .plotting import plot_fkappa_histogram
        plot_fkappa_histogram(result, args.plot)
        lines.append(f"plot {args.plot}")
    lines.append("\t".join(SUMMARY_HEADER))
    lines.append("\t".join(row))
    data = {"n": result.n, "kappa": str(result.kappa), "bound": result.bound,
            "value": result.value, "status": result.status, "mode": result.mode,
            "subsets": result.subsets_scanned, "tallies": result.tallies,
            "norm_histogram": {str(k): v for k, v in result.norm_histogram.items()},
            "certificates": certs}
    _out(args, "\n".join(lines) + "\n", data)
    return 0 if all(c["recheck"] for c in certs) else 1


def cmd_verify_cert(args) -> int:
    cert = parse_fkappa_certificate(_read(args.cert_file))
    check = verify_certificate(cert)
    _out(args, ("valid\n" if check else f"invalid: {check.reason}\n"),
         {"valid": check.ok, "reason": check.reason})
    return 0 if check else 1


def cmd_build_sn(args) -> int:
    if args.g not in BUILTIN_G:
        raise UsageError(f"unknown builtin g {args.g!r}; choose from {', '.join(BUILTIN_G)}")
    phi = parse_system(_read(args.phi))
    spec = FunctionGraphSpec(args.s, phi, BUILTIN_G[args.g])
    system = build_sn(spec, args.n)
    text = render_system(system)
    data = {"system": text}
    code = 0
    if args.verify_box is not None:
        rep = forced_value_report(spec, args.n, args.verify_box)
        data["verification"] = rep
        text += (f"# forced value: expected u={rep['expected_u']}, found {rep['u_values']}, "
                 f"solutions {rep['count']}, Phi witnesses {rep['phi_witnesses']}: "
                 f"{'pass' if rep['passed'] else 'FAIL'}\n")
        code = 0 if rep["passed"] else 1
    _out(args, text, data)
    return code


def _load_bound_file(path: str) -> Dict[int, int]:
    table: Dict[int, int] = {}
    for lineno, line in enumerate(_read(path).splitlines(), 1):
        s = line.split("#", 1)[0].strip()
        if not s:
            continue
        parts = s.replace(",", " ").split()
        if len(parts) != 2:
            raise UsageError(f"{path}:{lineno}: expected two columns 'n h(n)'")
        table[int(parts[0])] = int(parts[1])
    return table


def _make_oracle(spec: str):
    kind, _, arg = spec.partition(":")
    if kind == "box" and arg:
        return BoxOracle(_load_bound_file(arg))
    if kind == "budget" and arg:
        return BudgetOracle(int(arg))
    raise UsageError(f"oracle must be 'box:<h-file>' or 'budget:<steps>', got {spec!r}")


def cmd_enumerate(args) -> int:
    d = parse_poly(_read(args.poly_file))
    kappa = parse_cardinal(args.kappa)
    oracle = _make_oracle(args.oracle)
    budgets = None
    if args.max_rounds is not None:
        budgets = [2**k for k in range(args.max_rounds)]
    structured = args.format == "structured"
    emit = None if structured else (lambda t: print(" ".join(map(str, t)), flush=True))
    run = print_solutions(d, kappa, oracle, budgets=budgets, tranche=args.tranche, emit=emit)
    if structured:
        print(json.dumps({"solutions": [list(s) for s in run.solutions], "status": run.status}))
    else:
        print(run.status)
    return 0


def cmd_decide(args) -> int:
    d = parse_poly(_read(args.poly_file))
    decide = strengthen_oracle(_make_oracle(args.oracle), parse_cardinal(args.kappa),
                               tranche=args.tranche, max_rounds=args.max_rounds)
    answer = "YES" if decide(d) else "NO"
    _out(args, answer + "\n", {"answer": answer})
    return 0


def cmd_en_list(args) -> int:
    eqs = enumerate_en(args.n)
    _out(args, "".join(f"{e}\n" for e in eqs), {"n": args.n, "count": len(eqs),
                                                 "equations": [str(e) for e in eqs]})
    return 0


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                        help="worker processes (default: available CPUs)")

    parser = argparse.ArgumentParser(prog="h10kit", parents=[common],
                                     description="Lowering, bounded solving and f_kappa experiments "
                                                 "for systems of x=1, x+y=z, x*y=z equations.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", parents=[common], help="lower a polynomial equation to an E_n system")
    p.add_argument("poly_file")
    p.add_argument("--verify-box", type=_nonneg)
    p.add_argument("--cert", help="write the reduction certificate here")
    p.add_argument("--out", help="also write the system here")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("dioph", parents=[common], help="sum-of-squares equation for a system")
    p.add_argument("system_file")
    p.set_defaults(func=cmd_dioph)

    p = sub.add_parser("solve", parents=[common], help="all solutions in [0, B]^n")
    p.add_argument("file")
    p.add_argument("--bound", type=_nonneg, required=True)
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("fkappa", parents=[common], help="exhaustive f_kappa(n) experiment")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kappa", required=True, help="2, 3, ..., omega or omega1")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--cap", type=int, default=3)
    p.add_argument("--allow-long-run", action="store_true")
    p.add_argument("--sample", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cert-out")
    p.add_argument("--summary", help="append a tab-separated summary row to this file")
    p.add_argument("--plot", help="write a histogram figure (png/pdf/svg) here")
    p.set_defaults(func=cmd_fkappa)

    p = sub.add_parser("verify-cert", parents=[common], help="recheck an f_kappa certificate file")
    p.add_argument("cert_file")
    p.set_defaults(func=cmd_verify_cert)

    p = sub.add_parser("build-sn", parents=[common], help="construct S_n from a graph formula Phi")
    p.add_argument("--phi", required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--g", required=True, help="reference function: " + ", ".join(BUILTIN_G))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--verify-box", type=_nonneg)
    p.set_defaults(func=cmd_build_sn)

    for name, func, helptext in (("enumerate", cmd_enumerate, "print all roots using a weak oracle"),
                                 ("decide", cmd_decide, "dovetailed YES/NO decision")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("poly_file")
        p.add_argument("--kappa", required=True)
        p.add_argument("--oracle", required=True, help="box:<h-file> or budget:<steps>")
        p.add_argument("--tranche", type=int, default=10_000)
        p.add_argument("--max-rounds", type=int)
        p.set_defaults(func=func)

    p = sub.add_parser("en-list", parents=[common], help="print canonical E_n")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_en_list)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, ValueError, QueryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OracleInconsistency, Undecided) as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run())
