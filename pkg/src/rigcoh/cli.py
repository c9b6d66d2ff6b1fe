"""Command-line interface.

    rigcoh check TERM
    rigcoh compile TERM --env ENV.json [--backend graded --phase-order N]
    rigcoh audit (LAW | all) [--trials N --seed N --max-dim N]
    rigcoh normalize SHAPE [--env ENV.json]
    rigcoh demo (disjoint-union | braiding)
    rigcoh laws

Exit status: 0 on success, 1 on a typing error or audit counterexample,
2 on bad input (parse errors, unbound variables, bad flags).
"""

from __future__ import annotations

import argparse
import json
import sys

from .backends import (
    BackendConfig, ConcreteMorphism, compile_term, def1_union, def2_union,
    is_initial_segment, mor_eq,
)
from .coherence import audit, builtin_laws, law_by_name
from .shapes import (
    Atom, Env, ParseError, UnboundVariableError, Var, free_vars, load_env,
    parse_shape, render_shape,
)
from .strictify import alt_normalize, normalize, reorder_witness
from .witnesses import (
    Gen, TypeCheckError, parse_term, render_term, seq, term_free_vars, typecheck,
)

DEFAULT_SEED = 0
DEFAULT_TRIALS = 100
DEFAULT_MAX_DIM = 3


class UsageError(Exception):
    pass


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def _config(args) -> BackendConfig:
    if args.backend == "finset":
        if args.phase_order not in (None, 1):
            raise UsageError("--phase-order must be 1 with --backend finset")
        return BackendConfig("finset", 1)
    n = 1 if args.phase_order is None else args.phase_order
    if n < 1:
        raise UsageError("--phase-order must be >= 1")
    return BackendConfig("graded", n)


def _env(args, needed, default_dim: int | None = None) -> Env:
    if args.env:
        try:
            env = load_env(args.env)
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"cannot read environment {args.env}: {exc}") from None
    elif default_dim is not None:
        env = Env.sized({name: default_dim for name in needed})
    else:
        raise UsageError("--env is required")
    for name in sorted(needed):
        env[name]
    return env


def _add_backend_flags(p):
    p.add_argument("--backend", choices=("finset", "graded"), default="graded")
    p.add_argument("--phase-order", type=int, default=None, metavar="N",
                   help="order of the braiding phase group (graded backend; default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rigcoh", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="typecheck a witness term")
    p.add_argument("term")

    p = sub.add_parser("compile", help="compile a witness term to a monomial matrix")
    p.add_argument("term")
    p.add_argument("--env", metavar="PATH")
    _add_backend_flags(p)

    p = sub.add_parser("audit", help="audit one coherence law, or all of them")
    p.add_argument("law")
    _add_backend_flags(p)
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM)

    p = sub.add_parser("normalize", help="distributive normal form with its witness")
    p.add_argument("shape")
    p.add_argument("--env", metavar="PATH",
                   help="environment for the compiled permutation (default: 2 atoms per variable)")
    _add_backend_flags(p)

    p = sub.add_parser("demo", help="worked examples")
    p.add_argument("name", choices=("disjoint-union", "braiding"))

    sub.add_parser("laws", help="list the builtin coherence laws")
    return parser


# -- commands ----------------------------------------------------------------

def cmd_check(args, out):
    try:
        mt = typecheck(parse_term(args.term))
    except TypeCheckError as exc:
        print(f"type error: {exc}", file=out)
        return 1
    print(mt, file=out)
    return 0


def cmd_compile(args, out):
    term = parse_term(args.term)
    cfg = _config(args)
    env = _env(args, term_free_vars(term))
    print(_dumps(compile_term(term, env, cfg).to_json()), file=out)
    return 0


def cmd_audit(args, out):
    if args.trials < 1 or args.max_dim < 0:
        raise UsageError("--trials must be >= 1 and --max-dim >= 0")
    cfg = _config(args)
    if args.law == "all":
        laws = builtin_laws()
    else:
        try:
            laws = [law_by_name(args.law)]
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    status = 0
    for law in laws:
        report = audit(law, cfg, args.trials, args.seed, args.max_dim)
        print(_dumps(report.to_json()), file=out)
        if not report.passed:
            status = 1
    return status


def cmd_normalize(args, out):
    shape = parse_shape(args.shape)
    cfg = _config(args)
    result = normalize(shape)
    env = _env(args, free_vars(shape), default_dim=2)
    print(f"shape:   {render_shape(shape)}", file=out)
    print(f"nf:      {result.nf}", file=out)
    print(f"witness: {render_term(result.witness)}", file=out)
    print(f"morphism: {_dumps(compile_term(result.witness, env, cfg).to_json())}", file=out)
    alt = alt_normalize(shape)
    if alt.nf != result.nf:
        print(f"alt nf:  {alt.nf}", file=out)
        print(f"reorder: {render_term(reorder_witness(shape))}", file=out)
    return 0


def _fmt_set(xs) -> str:
    if not xs:
        return "{}"
    return "{" + ", ".join(str(x) for x in sorted(xs, key=repr)) + "}"


def demo_disjoint_union(out):
    samples = [
        ({"x", "y"}, {"z"}),
        ({"x"}, {"z"}),
        ({5, 7}, set()),
        ({0, 1}, set()),
        (set(), set()),
    ]
    print("Tagged union (tags 0, 1) versus counting union |A|+|B|", file=out)
    print("", file=out)
    header = ("A", "B", "tagged A+B", "tagged B+A", "commutes", "counting A+B", "counting B+A", "commutes")
    rows = []
    for a, b in samples:
        d1ab, d1ba = def1_union(a, b), def1_union(b, a)
        d2ab, d2ba = def2_union(a, b), def2_union(b, a)
        rows.append((_fmt_set(a), _fmt_set(b), _fmt_set(d1ab), _fmt_set(d1ba),
                     str(d1ab == d1ba).lower(), _fmt_set(d2ab), _fmt_set(d2ba),
                     str(d2ab == d2ba).lower()))
    widths = [max(len(r[i]) for r in rows + [header]) for i in range(len(header))]
    for r in [header] + rows:
        print("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip(), file=out)

    x, y, z = {"x"}, {"y"}, {"z"}
    left = def1_union(def1_union(x, y), z)
    right = def1_union(x, def1_union(y, z))
    print("", file=out)
    print(f"tagged (A+B)+C = {_fmt_set(left)}", file=out)
    print(f"tagged A+(B+C) = {_fmt_set(right)}", file=out)
    print(f"associative: {str(left == right).lower()}", file=out)
    print("", file=out)
    print("Is A identical to the counting union A+{}?", file=out)
    for a in ({5, 7}, {0, 1}):
        u = def2_union(a, set())
        verdict = "identical to A" if u == a else "not identical to A"
        print(f"  A = {_fmt_set(a)}: A+{{}} = {_fmt_set(u)}  -> {verdict}"
              f" (A is {'a' if is_initial_segment(a) else 'not a'} number)", file=out)
    return 0


def _fmt_matrix(m: ConcreteMorphism) -> str:
    cells = [["0" if e is None else f"q^{e}" for e in row] for row in m.matrix()]
    return "[" + "; ".join(" ".join(row) for row in cells) + "]"


def demo_braiding(out):
    n = 4
    cfg = BackendConfig("graded", n)
    env = Env({"A": [Atom("a", 1)], "B": [Atom("b", 1)]})
    a, b = Var("A"), Var("B")
    over = compile_term(Gen("bT_over", (a, b)), env, cfg)
    under = compile_term(Gen("bT_under", (a, b)), env, cfg)
    double = compile_term(seq(Gen("bT_over", (a, b)), Gen("bT_over", (b, a))), env, cfg)
    round_trip = compile_term(seq(Gen("bT_over", (a, b)), Gen("bT_under", (b, a))), env, cfg)
    print(f"phase q = primitive {n}th root of unity; A = [a: degree 1], B = [b: degree 1]", file=out)
    print(f"over(A,B)                 = {_fmt_matrix(over)}", file=out)
    print(f"under(A,B)                = {_fmt_matrix(under)}", file=out)
    print(f"over(A,B) == under(A,B)   : {str(mor_eq(over, under)).lower()}", file=out)
    print(f"over(A,B) ; over(B,A)     = {_fmt_matrix(double)}"
          f"  (identity: {str(double.is_identity()).lower()})", file=out)
    print(f"over(A,B) ; under(B,A)    = {_fmt_matrix(round_trip)}"
          f"  (identity: {str(round_trip.is_identity()).lower()})", file=out)
    return 0


def cmd_demo(args, out):
    if args.name == "disjoint-union":
        return demo_disjoint_union(out)
    return demo_braiding(out)


def cmd_laws(args, out):
    for law in builtin_laws():
        print(law, file=out)
    return 0


COMMANDS = {
    "check": cmd_check, "compile": cmd_compile, "audit": cmd_audit,
    "normalize": cmd_normalize, "demo": cmd_demo, "laws": cmd_laws,
}


def run(argv, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, stdout)
    except (ParseError, UsageError) as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except UnboundVariableError as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except TypeCheckError as exc:
        print(f"type error: {exc}", file=stderr)
        return 1


def main(argv=None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
