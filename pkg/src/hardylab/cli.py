"""Command-line interface.

Exit codes: 0 ok, 1 usage or constraint error, 2 numerical postcondition
violated, 3 resource guard exceeded. Data goes to stdout, diagnostics to
stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import __version__, inequality, lhv, paradox
from .combinatorics import Scenario, coefficient_f
from .errors import PostconditionError, ResourceLimitError, ScenarioError
from .quantum import MAX_QUBITS

FORMATS = ("human", "json", "csv")

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_RESOURCE = 0, 1, 2, 3

CSV_COLUMNS_HELP = """\
CSV columns by command:
  paradox      n,alpha,beta,gamma,theta_h,case,theta_a,theta_b,a0,a1,b0,b1,
               max_zero_residual,success_probability
  sweep        n,p_standard,p_generalized,p_standard_constructed,
               p_generalized_constructed,generalized_wins
  inequality   n,alpha,beta,x,y,F,F_argmin,trace,v_prime,lower_bound
  visibility   n,alpha,beta,trace,qm_max,symmetric_max,theta1,theta2,v_thr,v_prime,lower_bound,closed_form
  table1       n,row,alpha,beta,v_thr,column_min
  lhv verify   n,alpha,beta,passed,strategies,counterexample_a,counterexample_b
  lhv bound    n,alpha,beta,F_used,max_value,argmax_a,argmax_b
  lhv tight    n,alpha,beta,saturating,affine_rank,ambient_dim,is_tight
  tolerance    n,alpha,beta,gamma,epsilon,epsilon_exact
  best-choice  n,gamma,alpha,beta,probability,is_best
Rows are ordered by ascending n, then |alpha|, then |beta|.
"""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Every (sub)command lists the CSV columns in its help and reports usage errors as exit 1."""

    def __init__(self, *args, **kwargs):
        kwargs.setdefault("epilog", CSV_COLUMNS_HELP)
        kwargs.setdefault("formatter_class", argparse.RawDescriptionHelpFormatter)
        super().__init__(*args, **kwargs)

    def error(self, message: str):
        raise UsageError(message)


def sig12(value: float) -> float:
    return float(f"{value:.12g}")


def _clean(value: Any) -> Any:
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return sig12(float(value))
    if isinstance(value, float):
        return sig12(value)
    if isinstance(value, dict):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    return str(value)


def _fmt(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.12g}"
    if isinstance(value, Fraction):
        return f"{float(value):.12g}"
    if value is None:
        return ""
    return str(value)


def _bits(bits: Sequence[int]) -> str:
    return "".join(str(b) for b in bits)


def _scenario(args) -> Scenario:
    return Scenario(args.n, args.alpha, args.beta, Fraction(args.x), Fraction(args.y))


def _emit(args, command: str, parameters: dict, rows: list[dict], extra: dict | None = None) -> None:
    out = sys.stdout
    if args.format == "json":
        envelope = {
            "command": command,
            "parameters": _clean(parameters),
            "results": _clean({"rows": rows, **(extra or {})}),
            "tool_version": __version__,
            "numeric_format": "sig12",
        }
        out.write(json.dumps(envelope, sort_keys=True, indent=2) + "\n")
        return
    if not rows:
        return
    columns = list(rows[0])
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(row[c]) for c in columns])
        out.write(buf.getvalue())
        return
    table = [columns] + [[_fmt(row[c]) for c in columns] for row in rows]
    widths = [max(len(r[k]) for r in table) for k in range(len(columns))]
    for k, line in enumerate(table):
        out.write("  ".join(cell.rjust(w) for cell, w in zip(line, widths)) + "\n")
        if k == 0:
            out.write("  ".join("-" * w for w in widths) + "\n")
    for note in (extra or {}).get("notes", []):
        out.write(f"# {note}\n")


# Commands ----------------------------------------------------------------

def cmd_paradox(args) -> int:
    s = _scenario(args)
    if args.gamma <= 0:
        raise ScenarioError(f"gamma must be > 0 (got {args.gamma})")
    if s.n > MAX_QUBITS:
        raise ResourceLimitError(f"n={s.n} exceeds the state-vector limit of {MAX_QUBITS}")
    report = paradox.construct(s, args.gamma, args.theta_h)
    a, b = report.settings.a_basis, report.settings.b_basis
    row = {"n": s.n, "alpha": s.alpha_size, "beta": s.beta_size, "gamma": args.gamma,
           "theta_h": args.theta_h, "case": report.case_tag, "theta_a": a.phi, "theta_b": b.phi,
           "a0": a.c0, "a1": a.c1, "b0": b.c0, "b1": b.c1,
           "max_zero_residual": report.max_zero_constraint_residual,
           "success_probability": report.success_probability}
    _emit(args, "paradox", vars_of(args), [row], {"branch": list(report.branch)})
    if report.max_zero_constraint_residual > paradox.ZERO_TOL:
        raise PostconditionError(
            f"zero-constraint residual {report.max_zero_constraint_residual:.3e} exceeds {paradox.ZERO_TOL}")
    if report.success_probability <= paradox.TIE_TOL:
        raise PostconditionError("constructed success probability vanishes: no paradox for these parameters")
    return EXIT_OK


def cmd_sweep(args) -> int:
    rows = [{"n": r.n, "p_standard": r.p_standard, "p_generalized": r.p_generalized,
             "p_standard_constructed": r.p_standard_constructed,
             "p_generalized_constructed": r.p_generalized_constructed,
             "generalized_wins": r.generalized_wins}
            for r in paradox.sweep_success(args.n_min, args.n_max)]
    _emit(args, "sweep", vars_of(args), rows)
    return EXIT_OK


def cmd_inequality(args) -> int:
    s = _scenario(args)
    f = coefficient_f(s)
    vp = inequality.v_prime(s)
    row = {"n": s.n, "alpha": s.alpha_size, "beta": s.beta_size, "x": str(s.x), "y": str(s.y),
           "F": str(f.value), "F_argmin": f.argmin, "trace": str(inequality.trace_bell(s)),
           "v_prime": vp, "lower_bound": 1 - Fraction(2) / (1 + vp)}
    _emit(args, "inequality", vars_of(args), [row])
    return EXIT_OK


def cmd_visibility(args) -> int:
    s = _scenario(args)
    r = inequality.threshold_visibility(s)
    row = {"n": s.n, "alpha": s.alpha_size, "beta": s.beta_size, "trace": str(r.trace_value),
           "qm_max": r.qm_max, "symmetric_max": r.symmetric_max, "theta1": r.theta1_star, "theta2": r.theta2_star,
           "v_thr": r.v_thr, "v_prime": r.v_prime, "lower_bound": r.lower_bound,
           "closed_form": r.closed_form}
    notes = [] if r.violated else ["no violation in the symmetric family; v_thr undefined"]
    extra = {"violated": r.violated, "notes": notes}
    if r.closed_form is not None:
        extra["closed_form_exact"] = str(r.closed_form)
    _emit(args, "visibility", vars_of(args), [row], extra)
    return EXIT_OK


TABLE1_ROWS = (("(n,1)", lambda n: (n, 1)), ("(2,1)", lambda n: (2, 1)),
               ("(n-1,1)", lambda n: (n - 1, 1)), ("(2,2)", lambda n: (2, 2)))


def table1_rows(n_min: int, n_max: int) -> list[dict]:
    rows = []
    for n in range(n_min, n_max + 1):
        column = []
        for label, pick in TABLE1_ROWS:
            a, b = pick(n)
            column.append((label, a, b, inequality.threshold_visibility(Scenario(n, a, b)).v_thr))
        low = min(v for *_, v in column)
        for label, a, b, v in column:
            rows.append({"n": n, "row": label, "alpha": a, "beta": b, "v_thr": v,
                         "column_min": abs(v - low) <= inequality.TIE_TOL})
    return rows


def cmd_table1(args) -> int:
    if not 3 <= args.n_min <= args.n_max <= 10:
        raise ScenarioError(f"need 3 <= n_min <= n_max <= 10 (got {args.n_min}, {args.n_max})")
    rows = table1_rows(args.n_min, args.n_max)
    if args.format == "human":
        ns = list(range(args.n_min, args.n_max + 1))
        out = sys.stdout
        out.write("row".ljust(10) + "".join(f"n={n}".rjust(12) for n in ns) + "\n")
        for label, _ in TABLE1_ROWS:
            cells = []
            for r in rows:
                if r["row"] == label:
                    text = f"{r['v_thr']:.6f}"
                    cells.append((f"[{text}]" if r["column_min"] else text).rjust(12))
            out.write(label.ljust(10) + "".join(cells) + "\n")
        out.write("# [..] marks the lowest threshold visibility in each column\n")
        return EXIT_OK
    _emit(args, "table1", vars_of(args), rows)
    return EXIT_OK


def cmd_lhv(args) -> int:
    s = _scenario(args)
    base = {"n": s.n, "alpha": s.alpha_size, "beta": s.beta_size}
    if args.lhv_command == "verify":
        r = lhv.verify_logic(s, workers=args.workers)
        cex = r.counterexample
        row = {**base, "passed": r.passed, "strategies": r.strategies_checked,
               "counterexample_a": _bits(cex.a_bits) if cex else "",
               "counterexample_b": _bits(cex.b_bits) if cex else ""}
        _emit(args, "lhv verify", vars_of(args), [row])
        return EXIT_OK if r.passed else EXIT_NUMERIC
    if args.lhv_command == "bound":
        f = Fraction(args.f_override) if args.f_override is not None else coefficient_f(s).value
        value, strategy = lhv.classical_bound(s, f, workers=args.workers)
        row = {**base, "F_used": str(f), "max_value": str(value),
               "argmax_a": _bits(strategy.a_bits), "argmax_b": _bits(strategy.b_bits)}
        _emit(args, "lhv bound", vars_of(args), [row])
        return EXIT_OK
    r = lhv.check_tightness(s)
    row = {**base, "saturating": r.saturating_vertex_count, "affine_rank": r.affine_rank,
           "ambient_dim": r.ambient_affine_dim, "is_tight": r.is_tight}
    _emit(args, "lhv tight", vars_of(args), [row])
    return EXIT_OK


def cmd_tolerance(args) -> int:
    s = _scenario(args)
    eps = inequality.epsilon_tolerance(s, args.gamma)
    row = {"n": s.n, "alpha": s.alpha_size, "beta": s.beta_size, "gamma": args.gamma,
           "epsilon": float(eps), "epsilon_exact": str(eps) if isinstance(eps, Fraction) else ""}
    _emit(args, "tolerance", vars_of(args), [row])
    return EXIT_OK


def cmd_best_choice(args) -> int:
    r = paradox.best_paradox_choice(args.n, args.gamma)
    rows = [{"n": r.n, "gamma": r.gamma, "alpha": a, "beta": b, "probability": p,
             "is_best": (a, b) in r.ties} for a, b, p in r.table]
    notes = []
    if r.degenerate:
        notes.append("several choices tie within 1e-12: " + ", ".join(f"({a},{b})" for a, b in r.ties))
    _emit(args, "best-choice", vars_of(args), rows,
          {"best": [r.alpha_size, r.beta_size], "ties": [list(t) for t in r.ties], "notes": notes})
    return EXIT_OK


def vars_of(args) -> dict:
    return {k: v for k, v in vars(args).items() if k not in ("func",) and v is not None}


# Parser ------------------------------------------------------------------

def _add_scenario(p: argparse.ArgumentParser, default_alpha: int | None = None) -> None:
    p.add_argument("--n", type=int, required=True, help="number of qubits")
    p.add_argument("--alpha", type=int, required=default_alpha is None, default=default_alpha,
                   help="size |alpha| of the b-outcome-1 subsets")
    p.add_argument("--beta", type=int, required=True, help="size |beta| of the b-outcome-0 subsets")
    p.add_argument("--x", default="1", help="weight of the |alpha| terms (rational, default 1)")
    p.add_argument("--y", default="1", help="weight of the |beta| terms (rational, default 1)")


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", default="human", help="one of human, json, csv")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hardylab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("paradox", help="construct a paradox and report settings")
    _add_scenario(p)
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--theta-h", dest="theta_h", type=float, default=0.0)
    _add_format(p)
    p.set_defaults(func=cmd_paradox)

    p = sub.add_parser("sweep", help="standard vs generalized success probabilities")
    p.add_argument("--n-min", dest="n_min", type=int, default=3)
    p.add_argument("--n-max", dest="n_max", type=int, default=10)
    _add_format(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("inequality", help="classical coefficient and trace of the Bell operator")
    _add_scenario(p)
    _add_format(p)
    p.set_defaults(func=cmd_inequality)

    p = sub.add_parser("visibility", help="threshold visibility for one scenario")
    _add_scenario(p)
    _add_format(p)
    p.set_defaults(func=cmd_visibility)

    p = sub.add_parser("table1", help="threshold-visibility table")
    p.add_argument("--n-min", dest="n_min", type=int, default=3)
    p.add_argument("--n-max", dest="n_max", type=int, default=10)
    _add_format(p)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("lhv", help="exhaustive local-hidden-variable checks")
    lsub = p.add_subparsers(dest="lhv_command", required=True, parser_class=_Parser)
    for name, helptext in (("verify", "zero constraints force a vanishing success term"),
                           ("bound", "classical maximum of the Bell expression"),
                           ("tight", "facet check by exact affine rank")):
        q = lsub.add_parser(name, help=helptext)
        _add_scenario(q)
        if name == "bound":
            q.add_argument("--f-override", dest="f_override", default=None,
                           help="use this success coefficient instead of F")
        q.add_argument("--workers", type=int, default=1)
        _add_format(q)
        q.set_defaults(func=cmd_lhv)

    p = sub.add_parser("tolerance", help="largest tolerable zero-constraint error")
    _add_scenario(p)
    p.add_argument("--gamma", type=float, default=1.0)
    _add_format(p)
    p.set_defaults(func=cmd_tolerance)

    p = sub.add_parser("best-choice", help="best (|alpha|,|beta|) for the paradox success")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--gamma", type=float, default=1.0)
    _add_format(p)
    p.set_defaults(func=cmd_best_choice)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "format", "human") not in FORMATS:
            raise UsageError(f"--format must be one of {', '.join(FORMATS)} (got {args.format!r})")
        return args.func(args)
    except UsageError as exc:
        print(f"hardylab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ScenarioError, ValueError, ZeroDivisionError) as exc:
        print(f"hardylab: invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PostconditionError as exc:
        print(f"hardylab: postcondition violated: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ResourceLimitError, OverflowError) as exc:
        print(f"hardylab: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
