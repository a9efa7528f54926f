"""Command-line front end.

Exit status: 0 on success, 1 on bad input, 2 when an audit finds a
violated axiom, 64 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .audit import (
    AuditSuiteConfig,
    parameter_grid,
    reproduce_counterexample,
    run_audit,
    search_violations,
)
from .conditional import chain_rule, conditional_entropy
from .core import EntropyError, EntropyParams, make_distribution, make_joint
from .entropies import EntropyFamily, entropy

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VIOLATED = 2
EXIT_USAGE = 64

FAMILIES = [f.value for f in EntropyFamily]
AXIOMS = ["a2", "a3", "a4", "a5", "c1", "c3", "c4", "all"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt(x) -> str:
    return "nan" if x is None else f"{x:.12g}"


def _build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--family", choices=FAMILIES, default="corrected")
    common.add_argument("--q", type=float, default=1.0)
    common.add_argument("--tau", type=float, default=-1.0)
    common.add_argument("--lambda", dest="lam", type=float, default=0.0)
    common.add_argument("--alpha", type=float, default=None)
    common.add_argument("--format", choices=["table", "json"], default="table")

    data = _Parser(add_help=False)
    data.add_argument("--in", dest="input_path", metavar="FILE", help="JSON input file, '-' for stdin")

    audit = _Parser(add_help=False)
    audit.add_argument("--trials", type=int, default=1000)
    audit.add_argument("--seed", type=int, default=42)
    audit.add_argument("--tol", type=float, default=1e-9)
    audit.add_argument("--max-n", type=int, default=5)
    audit.add_argument("--max-m", type=int, default=5)

    parser = _Parser(prog="qentropy", description="Generalized entropies and axiom audits.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    p = sub.add_parser("compute", parents=[common, data], help="entropy of a distribution")
    p.add_argument("--p", help="inline JSON array of probabilities")
    for verb, text in (("conditional", "conditional entropy of a joint"), ("chain", "both sides of the chain rule")):
        p = sub.add_parser(verb, parents=[common, data], help=text)
        p.add_argument("--r", help="inline JSON matrix of joint probabilities")
    p = sub.add_parser("audit", parents=[common, audit], help="run axiom checks")
    p.add_argument("--axiom", choices=AXIOMS, default="all")
    sub.add_parser("counterexample", parents=[common], help="reproduce the q = 2 chain-rule counterexample")
    p = sub.add_parser("search", parents=[common, audit], help="randomised violation search")
    p.add_argument("--grid", action="store_true", help="sweep the default parameter grid")
    return parser


def _params(args) -> EntropyParams:
    return EntropyParams(q=args.q, tau=args.tau, lam=args.lam, alpha=args.alpha)


def _load(args, field, stdin):
    """Read ``field`` ('p' or 'r') from the inline flag or from ``--in``."""
    inline = getattr(args, field)
    if (inline is None) == (args.input_path is None):
        raise UsageError(f"give exactly one of --{field} and --in")
    if inline is not None:
        try:
            return json.loads(inline)
        except json.JSONDecodeError as exc:
            raise EntropyError(f"--{field}: invalid JSON ({exc.msg})") from None
    if args.input_path == "-":
        text = stdin.read()
    else:
        with open(args.input_path) as fh:
            text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise EntropyError(f"{args.input_path}: invalid JSON ({exc.msg})") from None
    if not isinstance(doc, dict) or field not in doc:
        raise EntropyError(f"{args.input_path}: missing field '{field}'")
    return doc[field]


def _check_numbers(value, field, depth):
    ok = isinstance(value, list) and value and all(
        (_check_numbers(v, field, depth - 1) if depth > 1 else isinstance(v, (int, float)) and not isinstance(v, bool))
        for v in value
    )
    if not ok:
        want = "a list of numbers" if depth == 1 else "a list of lists of numbers"
        raise EntropyError(f"field '{field}' must be {want}")
    return True


def _emit(out, args, payload, rows):
    if args.format == "json":
        out.write(json.dumps(payload) + "\n")
    else:
        width = max(len(k) for k, _ in rows)
        for key, val in rows:
            text = _fmt(val) if isinstance(val, float) or val is None else str(val)
            out.write(f"{key:<{width}}  {text}\n")


def _report_rows(rep):
    d = rep.to_json()
    return [
        ("axiom", d["axiom"]),
        ("family", d["family"]),
        ("verdict", d["verdict"]),
        ("gap", d["gap"]),
        ("lhs", d["lhs"]),
        ("rhs", d["rhs"]),
        ("tolerance", d["tolerance"]),
    ]


def _emit_reports(out, args, reports):
    if args.format == "json":
        out.write(json.dumps([r.to_json() for r in reports]) + "\n")
        return
    if not reports:
        out.write("no violations\n")
    for i, rep in enumerate(reports):
        if i:
            out.write("\n")
        _emit(out, args, None, _report_rows(rep))


def _config(args) -> AuditSuiteConfig:
    return AuditSuiteConfig(
        family=args.family,
        params=_params(args),
        trials=args.trials,
        max_n=args.max_n,
        max_m=args.max_m,
        seed=args.seed,
        tolerance=args.tol,
    )


def _dispatch(args, out, stdin) -> int:
    if args.verb == "compute":
        raw = _load(args, "p", stdin)
        _check_numbers(raw, "p", 1)
        P = make_distribution(raw)
        params = _params(args)
        value = entropy(args.family, P, params)
        _emit(out, args, {"family": args.family, "params": params.to_json(), "p": P.probs.tolist(), "value": value},
              [("family", args.family), ("value", value)])
        return EXIT_OK
    if args.verb in ("conditional", "chain"):
        raw = _load(args, "r", stdin)
        _check_numbers(raw, "r", 2)
        J = make_joint(raw)
        params = _params(args)
        head = {"family": args.family, "params": params.to_json(), "r": J.r.tolist()}
        if args.verb == "conditional":
            value = float(conditional_entropy(J, args.family, params))
            _emit(out, args, {**head, "conditional": value}, [("family", args.family), ("conditional", value)])
        else:
            ev = chain_rule(J, args.family, params).to_json()
            _emit(out, args, {**head, **ev}, [("family", args.family)] + list(ev.items()))
        return EXIT_OK
    if args.verb == "counterexample":
        rep = reproduce_counterexample()
        if args.format == "json":
            out.write(json.dumps(rep.to_json()) + "\n")
        else:
            w = rep.witness
            rows = _report_rows(rep) + [("d_lhs", w["d_lhs"]), ("d_rhs", w["d_rhs"]), ("d_gap", w["d_gap"])]
            _emit(out, args, None, rows)
        return EXIT_OK
    config = _config(args)
    if args.verb == "audit":
        reports = run_audit(config, [args.axiom])
    else:
        reports = search_violations(config, grid=parameter_grid(config.family) if args.grid else None)
    _emit_reports(out, args, reports)
    return EXIT_OK if all(r.holds for r in reports) else EXIT_VIOLATED


def run(argv=None, out=None, err=None, stdin=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    stdin = stdin or sys.stdin
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _dispatch(args, out, stdin)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except FileNotFoundError as exc:
        err.write(f"error: file not found: {exc.filename}\n")
        return EXIT_INPUT
    except EntropyError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
