"""Command-line front end.

Exit status: 0 on success (and every verification passed), 1 when a
verification found a counterexample, 2 on usage or parameter errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import checks, lehn, moduli, segre
from .arith import parse_rational
from .series import SeriesError

DEFAULT_ORDER = 16


class UsageError(Exception):
    pass


@dataclass
class Output:
    records: list[dict]
    plain: list[str]
    csv_header: list[str] | None = None
    csv_rows: list[list[str]] = field(default_factory=list)
    exit_code: int = 0


def parse_range(text: str) -> tuple[int, int]:
    """``"a..b"`` (inclusive) or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; expected a..b or an integer")
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}")


def _series_output(name: str, s, meta: dict) -> Output:
    obj = {"command": name, **meta, "series": s.to_json_obj()}
    header = ["n", "coefficient"]
    rows = [[str(n), str(a)] for n, a in enumerate(s)]
    plain = [f"{n}\t{a}" for n, a in enumerate(s)]
    if meta:
        plain.insert(0, "# " + " ".join(f"{k}={v}" for k, v in meta.items()))
    return Output([obj], plain, header, rows)


# -- subcommands -------------------------------------------------------------


def cmd_segre(args) -> Output:
    v = segre.segre_top(args.ell, args.n)
    return Output([{"command": "segre", "ell": args.ell, "n": args.n, "value": str(v)}], [str(v)],
                  ["ell", "n", "value"], [[str(args.ell), str(args.n), str(v)]])


def cmd_alpha(args) -> Output:
    which, n = args.which, args.n
    meta: dict = {}
    if which == "curve" and args.ell is not None and args.ell % 2:
        meta["status"] = "extrapolated"
    if args.ell is None:
        poly = {"top": segre.alpha_top_poly, "next": segre.alpha_next_poly, "curve": segre.alpha_curve_poly}[which](n)
        rec = {"command": "alpha", "which": which, "n": n, "polynomial": poly.to_json_obj()}
        return Output([rec], [repr(poly)], ["power", "coefficient"],
                      [[str(k), str(a)] for k, a in enumerate(poly.coefficients)])
    if which == "top":
        v = segre.segre_top(args.ell, n)
    elif which == "next":
        v = segre.alpha_next(args.ell, n)
    else:
        v = segre.alpha_curve(args.ell, n)
    rec = {"command": "alpha", "which": which, "ell": args.ell, "n": n, "value": str(v), **meta}
    plain = str(v) + (f"  [{meta['status']}]" if meta else "")
    return Output([rec], [plain], list(rec)[1:], [[str(x) for x in list(rec.values())[1:]]])


def _matrix_lines(m) -> list[str]:
    return ["\t".join(str(a) for a in m.row(i)) for i in range(m.rows)]


def cmd_recursion(args) -> Output:
    m = segre.recursion_matrix(args.ell, args.n)
    rec = {"command": "recursion", "ell": args.ell, "n": args.n, "matrix": m.to_json_obj()}
    plain = _matrix_lines(m)
    rows = [[str(i)] + [str(a) for a in m.row(i)] for i in range(m.rows)]
    header = ["row"] + [f"alpha_{i}" for i in range(m.cols)]
    if args.kernel:
        basis = segre.nullspace(m)
        rec["kernel"] = [[str(a) for a in v] for v in basis]
        plain.append(f"# kernel dimension {len(basis)}")
        plain.extend("\t".join(str(a) for a in v) for v in basis)
        rows = [[f"kernel_{k}"] + [str(a) for a in v] for k, v in enumerate(basis)]
    return Output([rec], plain, header, rows)


def cmd_shhs(args) -> Output:
    m = segre.lehn_matrix(args.n)
    d = segre.det_exact(m)
    rec = {"command": "shhs", "n": args.n, "det": str(d), "matrix": m.to_json_obj()}
    return Output([rec], [str(d)], ["n", "det"], [[str(args.n), str(d)]])


def cmd_reconstruct(args) -> Output:
    rebuilt = segre.reconstruct_alpha_top(args.n)
    closed = segre.alpha_top_poly(args.n)
    rec = {
        "command": "reconstruct",
        "n": args.n,
        "reconstructed": rebuilt.to_json_obj(),
        "closed_form": closed.to_json_obj(),
        "equal": rebuilt == closed,
    }
    plain = [f"reconstructed: {rebuilt!r}", f"closed form:   {closed!r}", f"equal: {rebuilt == closed}"]
    rows = [[str(k), str(rebuilt.coeff(k)), str(closed.coeff(k))] for k in range(args.n + 1)]
    out = Output([rec], plain, ["power", "reconstructed", "closed_form"], rows)
    out.exit_code = 0 if rebuilt == closed else 1
    return out


def cmd_lehn(args) -> Output:
    order = args.order
    if args.preset:
        if args.preset == "elliptic":
            if args.chi is None:
                raise UsageError("--preset elliptic needs --chi")
            surf = lehn.elliptic(args.chi)
        else:
            if args.ell is None:
                raise UsageError(f"--preset {args.preset} needs --ell")
            surf = {"k3": lehn.k3, "abelian": lehn.abelian, "enriques": lehn.enriques}[args.preset](args.ell)
        k = lehn.lehn_constants(surf)
        status = "proved" if surf.k_trivial else "conjectural"
        meta = {"preset": args.preset, "a": str(k.a), "b": str(k.b), "c": str(k.c), "status": status}
    elif args.invariants:
        K2, HK, H2, chi = args.invariants
        surf = lehn.SurfaceInvariants(K2, HK, H2, chi)
        k = lehn.lehn_constants(surf)
        meta = {"a": str(k.a), "b": str(k.b), "c": str(k.c),
                "status": "proved" if surf.k_trivial else "conjectural"}
    else:
        if None in (args.a, args.b, args.c):
            raise UsageError("give --a, --b and --c, or --preset, or --invariants")
        k = lehn.LehnConstants(args.a, args.b, args.c)
        meta = {"a": str(k.a), "b": str(k.b), "c": str(k.c), "status": "conjectural"}
    return _series_output("lehn", lehn.lehn_series(k, order), meta)


def cmd_verify(args) -> Output:
    name = args.check
    ranges = {"ell": args.ell, "n": args.n, "chi": args.chi, "degree": args.degree, "order": args.order}
    pts = checks.points_for(name, ranges)
    reports = checks.run_sweep(name, pts, args.jobs)
    failures = [r for r in reports if not r.passed]
    summary = {
        "command": "verify",
        "check": name,
        "points": len(reports),
        "passed": len(reports) - len(failures),
        "verdict": "pass" if not failures else "fail",
    }
    if failures:
        summary["counterexample"] = failures[0].witness
    records = [r.to_json_obj(args.timing) for r in reports] + [summary]
    plain = [f"{name}: {summary['passed']}/{summary['points']} passed"]
    if failures:
        plain.append("smallest counterexample: " + json.dumps(failures[0].witness))
    if args.timing:
        plain.append(f"elapsed_ms: {sum(r.elapsed_ms for r in reports):.1f}")
    header = ["check", "params", "verdict", "witness"] + (["elapsed_ms"] if args.timing else [])
    rows = []
    for r in reports:
        row = [r.check, json.dumps(r.params), "pass" if r.passed else "fail",
               json.dumps(r.witness) if r.witness else ""]
        if args.timing:
            row.append(f"{r.elapsed_ms:.3f}")
        rows.append(row)
    return Output(records, plain, header, rows, 0 if not failures else 1)


def cmd_moduli(args) -> Output:
    rels = moduli.builtin_relations(args.degree, args.codimension, args.data)
    records = [{"command": "moduli", **r.to_json_obj()} for r in rels]
    plain = [f"[codim {r.codimension}] {r}" for r in rels]
    rows = [[str(r.degree), str(r.codimension), json.dumps(r.to_json_obj()["terms"]), r.source] for r in rels]
    if args.eliminate:
        codim = args.codimension or 1
        sel = [r for r in rels if r.codimension == codim]
        kappa = sorted({k for r in sel for k in r.terms if "kappa" in k})
        labels = []
        for lab in args.eliminate:
            labels.extend(kappa if lab == "kappa" and len(kappa) == 1 else [lab])
        elim = moduli.eliminate(sel, labels)
        records.append({"command": "moduli", "eliminate": labels, **elim.to_json_obj()})
        for lab, expr in sorted(elim.expressions.items()):
            rhs = " + ".join(f"({c})*[{m}]" for m, c in sorted(expr.items())) or "0"
            plain.append(f"{lab} = {rhs}")
            rows.append([str(args.degree), str(codim), json.dumps({lab: {m: str(c) for m, c in sorted(expr.items())}}), "elimination"])
    return Output(records, plain, ["degree", "codimension", "terms", "source"], rows)


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["plain", "json", "csv"], default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="worker processes for sweeps")

    p = argparse.ArgumentParser(prog="segre-k3", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("segre", parents=[common], help="top Segre integral on a K3 surface")
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_segre)

    s = sub.add_parser("alpha", parents=[common], help="closed forms of int c_{n-i} s_{n+i}")
    s.add_argument("--which", choices=["top", "next", "curve"], required=True)
    s.add_argument("--ell", type=int, help="omit to print the polynomial in l")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_alpha)

    s = sub.add_parser("recursion", parents=[common], help="localization relation matrix")
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--kernel", action="store_true")
    s.set_defaults(func=cmd_recursion)

    s = sub.add_parser("shhs", parents=[common], help="determinant of the beta-system matrix A_n")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_shhs)

    s = sub.add_parser("reconstruct", parents=[common], help="rebuild alpha_n from roots and leading term")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_reconstruct)

    s = sub.add_parser("lehn", parents=[common], help="Lehn's generating series")
    s.add_argument("--a", type=_rational_arg)
    s.add_argument("--b", type=_rational_arg)
    s.add_argument("--c", type=_rational_arg)
    s.add_argument("--preset", choices=["k3", "abelian", "enriques", "elliptic"])
    s.add_argument("--invariants", type=int, nargs=4, metavar=("K2", "HK", "H2", "CHI"))
    s.add_argument("--ell", type=int)
    s.add_argument("--chi", type=int)
    s.add_argument("--order", type=int, default=DEFAULT_ORDER)
    s.set_defaults(func=cmd_lehn)

    s = sub.add_parser("verify", parents=[common], help="run a named verification sweep")
    s.add_argument("check", choices=sorted(checks.CHECKS))
    s.add_argument("--ell", type=parse_range)
    s.add_argument("--n", type=parse_range)
    s.add_argument("--chi", type=parse_range)
    s.add_argument("--degree", type=parse_range)
    s.add_argument("--order", type=int)
    s.add_argument("--timing", action="store_true", help="include elapsed milliseconds (not deterministic)")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("moduli", parents=[common], help="tautological relations on moduli of K3 surfaces")
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--codimension", type=int, choices=[1, 2])
    s.add_argument("--eliminate", nargs="+", metavar="LABEL",
                   help="labels to solve for; 'kappa' names the invariant kappa combination")
    s.add_argument("--data", help="alternative relation data file (JSON)")
    s.set_defaults(func=cmd_moduli)
    return p


def render(out: Output, fmt: str) -> str:
    if fmt == "json":
        return "".join(json.dumps(r) + "\n" for r in out.records)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if out.csv_header:
            w.writerow(out.csv_header)
        w.writerows(out.csv_rows)
        return buf.getvalue()
    return "".join(line + "\n" for line in out.plain)


# argparse only accepts plain negative integers as option values
_NEGATIVE_VALUE = re.compile(r"-\d+(/\d+|\.\.-?\d+)")


def _attach_negative_values(argv: list[str]) -> list[str]:
    """Turn ``--c -2/3`` and ``--ell -6..20`` into ``--c=-2/3`` and ``--ell=-6..20``."""
    out: list[str] = []
    for tok in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] and _NEGATIVE_VALUE.fullmatch(tok):
            out[-1] += "=" + tok
        else:
            out.append(tok)
    return out


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    argv = _attach_negative_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    args.format = getattr(args, "format", "plain")
    args.jobs = getattr(args, "jobs", 1)
    if getattr(args, "order", None) is not None and args.order < 1:
        print("error: --order must be positive", file=stderr)
        return 2
    if args.jobs < 1:
        print("error: --jobs must be positive", file=stderr)
        return 2
    try:
        out = args.func(args)
    except (UsageError, segre.DomainError, moduli.UnsupportedDegree, moduli.Underdetermined,
            lehn.NotKTrivial, SeriesError, ValueError, ZeroDivisionError) as e:
        print(f"error: {e}", file=stderr)
        return 2
    stdout.write(render(out, args.format))
    return out.exit_code


def main() -> None:
    sys.exit(run())
