"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import contextlib
import io
import json
import sys
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import automorphisms as au
from . import free_algebra as fa
from . import hopf
from . import pbw_algebra as pa
from .coefficients import LaurentPoly, is_generic_point, lp_to_text, scalar_evaluate, scalar_to_json
from .parsing import ParseError, parse_element_text


class UsageError(Exception):
    pass


def parse_element(text: str) -> pa.AlgebraElement:
    return parse_element_text(text)


def parse_point(text: str):
    point = {}
    for part in text.split(","):
        if "=" not in part:
            raise UsageError(f"--eval expects r=Q,s=Q, got {text!r}")
        k, v = (x.strip() for x in part.split("=", 1))
        if k not in ("r", "s"):
            raise UsageError(f"--eval: unknown variable {k!r}")
        try:
            point[k] = Fraction(v)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"--eval: bad rational {v!r}") from None
    if set(point) != {"r", "s"}:
        raise UsageError("--eval needs both r and s")
    if not is_generic_point(point):
        raise UsageError(f"--eval point {text!r} is not generic (r^m s^n = 1 for small m, n, or a zero)")
    return point


def _spec_elem(x, point):
    return pa.specialize(x, point) if point else x


def _spec_tensor(t, point):
    if not point:
        return t
    return hopf.TensorElement({k: LaurentPoly.const(scalar_evaluate(c, point)) for k, c in t.terms.items()})


def _spec_scalar(c, point):
    return LaurentPoly.const(scalar_evaluate(c, point)) if point else c


def _load_params(text: str) -> au.EndoParams:
    text = text.strip()
    try:
        if text.startswith("{"):
            data = json.loads(text)
        else:
            with open(text) as fh:
                data = json.load(fh)
        return au.EndoParams.from_json(data)
    except (OSError, json.JSONDecodeError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"bad parameter file {text!r}: {exc}") from None


def _load_matrix(text: str):
    try:
        M = json.loads(text)
        if not (isinstance(M, list) and all(isinstance(r, list) and all(isinstance(v, int) for v in r) for r in M)):
            raise ValueError("expected a list of integer rows")
        return M
    except (json.JSONDecodeError, ValueError) as exc:
        raise UsageError(f"bad matrix {text!r}: {exc}") from None


class Output:
    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.lines: List[str] = []

    def text(self, line: str):
        self.lines.append(line)

    def emit(self, data, fallback: Optional[str] = None):
        if self.as_json or fallback is None:
            self.lines.append(json.dumps(data, indent=2, sort_keys=True))
        else:
            self.lines.append(fallback)


# subcommand handlers; each returns an exit code ------------------------------------------------

def cmd_normalize(args, out, point):
    x = _spec_elem(parse_element(args.expr), point)
    out.emit({"text": str(x), "terms": x.to_json()}, str(x))
    return 0


def cmd_mul(args, out, point):
    x = pa.multiply(parse_element(args.left), parse_element(args.right))
    x = _spec_elem(x, point)
    out.emit({"text": str(x), "terms": x.to_json()}, str(x))
    return 0


def cmd_comm_table(args, out, point):
    rows = []
    for (i, j), v in sorted(pa.straightening_table().items(), key=lambda kv: (kv[0][1], kv[0][0])):
        v = _spec_elem(v, point)
        rows.append({"lhs": f"X{j}*X{i}", "rhs": str(v), "terms": v.to_json()})
    out.emit(rows, "\n".join(f"{r['lhs']} = {r['rhs']}" for r in rows))
    return 0


def cmd_delta(args, out, point):
    t = _spec_tensor(hopf.coproduct(parse_element(args.expr)), point)
    out.emit({"text": str(t), "terms": t.to_json()}, str(t))
    return 0


def cmd_antipode(args, out, point):
    x = _spec_elem(hopf.antipode(parse_element(args.expr), printed=args.printed), point)
    out.emit({"text": str(x), "terms": x.to_json()}, str(x))
    return 0


def cmd_counit(args, out, point):
    c = _spec_scalar(hopf.counit(parse_element(args.expr)), point)
    out.emit({"text": lp_to_text(c) if isinstance(c, LaurentPoly) else str(c), "value": scalar_to_json(c)}, str(c))
    return 0


def cmd_check_hopf_axioms(args, out, point):
    if args.max_degree > 4:
        raise UsageError("--max-degree must be at most 4")
    rep = hopf.check_hopf_axioms(args.max_degree, seed=args.seed)
    summary = (f"{'PASS' if rep.passed else 'FAIL'}: {rep.checked} "
               f"monomials, {rep.pairs_checked} sampled pairs, {len(rep.failures)} failures; "
               f"printed antipode errata: {len(rep.errata)}")
    out.emit(rep.to_json(), summary)
    return 0 if rep.passed else 1


def _relations_text(rep) -> str:
    lines = [f"{'PASS' if e['passed'] else 'FAIL'}  {e['relation']}" for e in rep.entries]
    return "\n".join(lines)


def cmd_check_endo(args, out, point):
    rep = au.check_relations(_load_params(args.params))
    out.emit(rep.to_json(), _relations_text(rep))
    return 0 if rep.passed else 1


def cmd_solve_constraints(args, out, point):
    lat = au.derive_exponent_constraints()
    out.emit(lat.to_json())
    return 0


def cmd_check_hopf_aut(args, out, point):
    p = _load_params(args.params)
    rel = au.check_relations(p)
    comp = au.check_hopf_compat(p)
    data = {"relations": rel.to_json(), "hopf": comp.to_json(), "passed": rel.passed and comp.passed}
    text = _relations_text(rel) + "\n" + "\n".join(
        f"{'PASS' if e['passed'] else 'FAIL'}  Delta compatibility on {e['generator']}" for e in comp.entries)
    out.emit(data, text)
    return 0 if data["passed"] else 1


def cmd_verify_lemmas(args, out, point):
    if args.box < 0:
        raise UsageError("--box must be nonnegative")
    audit = au.verify_commutation_lemmas(range(-args.box, args.box + 1))
    lines = []
    for e in audit.entries:
        if e["status"] == "interpretable":
            tag = "ok" if e["matches_after_corrections"] else "MISMATCH"
            fix = " (after correction)" if "correction" in e else ""
            lines.append(f"{tag:9} {e['identity']}: printed {e['printed_matches']}/{e['points']}, "
                         f"kernel agreement {e['corrected_matches']}/{e['points']}{fix}")
        else:
            lines.append(f"{'flagged':9} {e['identity']}: {e['reason']}")
    out.emit(audit.to_json(), "\n".join(lines))
    return 0 if audit.passed else 1


def cmd_confluence(args, out, point):
    sys_ = fa.serre_system() if args.raw else fa.default_system()
    rep = fa.confluence_check(sys_, max_degree=args.max_degree)
    n_bad = sum(1 for cp in rep.pairs if not cp.resolved)
    text = (f"{'confluent' if rep.confluent else 'NOT confluent'}: {len(sys_.rules)} rules, "
            f"{len(rep.pairs)} critical pairs, {n_bad} unresolved")
    if rep.dimension_table is not None:
        text += "\nwords: " + " ".join(str(a) for _, a, _ in rep.dimension_table)
        text += "\npbw:   " + " ".join(str(b) for _, _, b in rep.dimension_table)
    out.emit(rep.to_json(), text)
    return 0 if rep.confluent else 1


def cmd_dims(args, out, point):
    if args.max < 0:
        raise UsageError("--max must be nonnegative")
    dims = [pa.graded_dimension(n) for n in range(args.max + 1)]
    out.emit({"dimensions": dims}, " ".join(map(str, dims)))
    return 0


def cmd_gl_perm_check(args, out, point):
    res = au.gl_nonneg_permutation(_load_matrix(args.matrix))
    text = f"permutation: {res.cycle_text()}" if res.accepted else f"rejected: {res.reason}"
    out.emit(res.to_json(), text)
    return 0 if res.accepted else 1


def _group_op(fn, *params):
    try:
        return fn(*params)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_compose(args, out, point):
    p = _group_op(au.compose, _load_params(args.p), _load_params(args.q))
    out.emit(p.to_json())
    return 0


def cmd_invert(args, out, point):
    p = _group_op(au.invert, _load_params(args.p))
    out.emit(p.to_json())
    return 0


# parser --------------------------------------------------------------------------------------

def _global_flags(p: argparse.ArgumentParser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")
    p.add_argument("--eval", metavar="r=Q,s=Q", default=d(None), help="specialize results at a rational point")
    p.add_argument("--seed", type=int, default=d(0), help="seed for sampled checks")
    p.add_argument("--threads", type=int, default=d(1), help="worker threads for box scans")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="g2hopf", description="Exact computations in the two-parameter G2 Borel Hopf algebra.")
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(handler=fn)
        return sp

    add("normalize", cmd_normalize, "PBW normal form of an expression").add_argument("expr")
    sp = add("mul", cmd_mul, "product of two expressions")
    sp.add_argument("left")
    sp.add_argument("right")
    add("comm-table", cmd_comm_table, "straightening relations Xj*Xi, i<j")
    add("delta", cmd_delta, "coproduct").add_argument("expr")
    sp = add("antipode", cmd_antipode, "antipode")
    sp.add_argument("expr")
    sp.add_argument("--printed", action="store_true", help="use the transcribed (non-axiomatic) S on generators")
    add("counit", cmd_counit, "counit").add_argument("expr")
    add("check-hopf-axioms", cmd_check_hopf_axioms, "verify Hopf axioms on basis monomials").add_argument(
        "--max-degree", type=int, default=3)
    add("check-endo", cmd_check_endo, "check that parameters respect the defining relations").add_argument("params")
    add("solve-constraints", cmd_solve_constraints, "integer lattice of admissible k-exponents")
    add("check-hopf-aut", cmd_check_hopf_aut, "relations plus coproduct compatibility").add_argument("params")
    add("verify-lemmas", cmd_verify_lemmas, "audit printed commutation identities").add_argument(
        "--box", type=int, default=2)
    sp = add("confluence", cmd_confluence, "critical-pair and dimension certificate")
    sp.add_argument("--max-degree", type=int, default=8)
    sp.add_argument("--raw", action="store_true", help="the two Serre rules without completion")
    add("dims", cmd_dims, "graded PBW dimensions").add_argument("--max", type=int, required=True)
    add("gl-perm-check", cmd_gl_perm_check, "is a nonnegative integer matrix with nonnegative inverse a permutation").add_argument("matrix")
    sp = add("compose", cmd_compose, "parameters of p o q")
    sp.add_argument("p")
    sp.add_argument("q")
    add("invert", cmd_invert, "parameters of the inverse").add_argument("p")
    return parser


def run_command(argv: Sequence[str]) -> Tuple[int, str]:
    """Run one command; returns (exit code, combined output)."""
    parser = build_parser()
    err = io.StringIO()
    try:
        with contextlib.redirect_stderr(err), contextlib.redirect_stdout(err):
            args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return (exc.code if isinstance(exc.code, int) else 2), err.getvalue().rstrip("\n")
    out = Output(args.json)
    try:
        point = parse_point(args.eval) if args.eval else None
        code = args.handler(args, out, point)
    except ParseError as exc:
        return 2, f"parse error: {exc}"
    except UsageError as exc:
        return 2, f"error: {exc}"
    return code, "\n".join(out.lines)


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, text = run_command(sys.argv[1:] if argv is None else argv)
    if text:
        print(text, file=sys.stdout if code != 2 else sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
