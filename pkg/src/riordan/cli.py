"""Command-line front end.

Subcommands: triangle, exp, apply, flow, check.  Output is JSON by
default (CSV via --format csv); identical invocations produce identical
bytes.  Exit codes: 0 success or check passed, 1 check failed, 2 usage
or parse error, 3 exact-mode violation.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from random import Random

from .fps import Fps, SeriesError
from .group import (
    NotRiordan,
    RiordanMatrix,
    TriMatrix,
    involution_m,
)
from .lie import (
    ExactModeIrrational,
    MonomialGenerator,
    exp_monomial,
    exp_truncated_oracle,
)
from .flows import ApproachingProblem, check_symmetry, check_time_reversal, project_flow, projected_involution, rk4_integrate

NAMED_TRIANGLES = ("pascal", "identity", "m", "minus-m")
CHECKS = ("pseudo-involution", "symmetry", "time-reversal", "oracle-exp", "ftrm", "a-sequence")


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse rational {text!r}: {exc}") from None


def parse_rational_list(text: str) -> list[Fraction]:
    return [parse_rational(part) for part in text.split(",") if part.strip() != ""]


def emit(args, payload: dict, csv_text: str | None = None) -> None:
    if args.format == "csv" and csv_text is not None:
        sys.stdout.write(csv_text)
        return
    indent = 2 if args.pretty else None
    sys.stdout.write(json.dumps(payload, indent=indent, sort_keys=True) + "\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--trunc", type=int, default=None, help="truncation order")
    common.add_argument("--mode", choices=("exact", "float"), default="exact")
    common.add_argument("--tol", type=float, default=1e-9, help="float-mode tolerance")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("--pretty", action="store_true", help="indent output for humans")

    parser = argparse.ArgumentParser(
        prog="riordan",
        description="Riordan triangles, Lie-algebra exponentials, and flow checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("triangle", parents=[common], help="print a triangle section")
    p.add_argument("name", nargs="?", default=None, help="|".join(NAMED_TRIANGLES))
    p.add_argument("--f", default=None, help="comma-separated coefficients of f")
    p.add_argument("--g", default=None, help="comma-separated coefficients of g")
    p.add_argument("--rows", type=int, default=8)

    p = sub.add_parser("exp", parents=[common], help="one-parameter subgroup member")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", required=True)

    p = sub.add_parser("apply", parents=[common], help="act on a series")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--gamma", required=True, help="series to act on")

    p = sub.add_parser("flow", parents=[common], help="sample a finite flow")
    p.add_argument("--a", default="1")
    p.add_argument("--b", default="1")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--x0", required=True, help="comma-separated initial state")
    p.add_argument("--t", required=True, help="comma-separated sample times")
    p.add_argument("--rk4", type=int, default=None, metavar="STEPS")

    p = sub.add_parser("check", parents=[common], help="run a named invariant suite")
    p.add_argument("what", choices=CHECKS)
    p.add_argument("--a", default="1")
    p.add_argument("--b", default="1")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--t", default="1")
    p.add_argument("--dim", type=int, default=8)
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--count", type=int, default=20)

    return parser


# -- triangle ----------------------------------------------------------------


def _pretty_matrix(mat: TriMatrix) -> str:
    cells = [[str(x) for x in row] for row in mat.rows]
    width = max(len(c) for row in cells for c in row)
    return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells) + "\n"


def cmd_triangle(args) -> int:
    if args.rows < 1:
        raise ValueError(f"--rows must be >= 1, got {args.rows}")
    n = args.rows - 1
    trunc = max(args.trunc if args.trunc is not None else 0, n)
    if args.name is None:
        if args.f is None or args.g is None:
            raise ValueError("give a triangle name or both --f and --g")
        r = RiordanMatrix(
            Fps(parse_rational_list(args.f), trunc), Fps(parse_rational_list(args.g), trunc)
        )
    elif args.name == "pascal":
        r = RiordanMatrix.pascal(trunc)
    elif args.name == "identity":
        r = RiordanMatrix.identity(trunc)
    elif args.name == "m":
        r = involution_m(1, trunc)
    elif args.name == "minus-m":
        r = involution_m(-1, trunc)
    else:
        raise ValueError(f"unknown triangle {args.name!r}; expected one of {NAMED_TRIANGLES}")
    mat = r.to_matrix(n)
    if args.pretty and args.format == "json":
        sys.stdout.write(_pretty_matrix(mat))
        return 0
    emit(args, mat.to_json_dict(), mat.to_csv())
    return 0


# -- exp -----------------------------------------------------------------------


def cmd_exp(args) -> int:
    genr = MonomialGenerator(parse_rational(args.a), parse_rational(args.b), args.n)
    t = parse_rational(args.t)
    trunc = args.trunc if args.trunc is not None else 8
    payload: dict = {"generator": genr.to_json_dict(), "t": str(t), "trunc": trunc}
    if args.mode == "float" and genr.n == 0:
        f0 = math.exp(float((genr.a - genr.b) * t))
        g0 = math.exp(float(-genr.b * t))
        mat = exp_truncated_oracle(genr.lie_element(trunc), float(t), trunc)
        payload.update(
            {"f": [f0], "g": [g0], "matrix": mat.to_json_dict(), "oracle_check": "skipped"}
        )
        emit(args, payload, _exp_csv([str(f0)], [str(g0)], mat))
        return 0
    r = exp_monomial(genr, t, trunc)
    mat = r.to_matrix(trunc)
    oracle = exp_truncated_oracle(genr.lie_element(trunc), t, trunc)
    ok = mat == oracle
    payload.update(
        {
            "f": r.f.to_dict(),
            "g": r.g.to_dict(),
            "matrix": mat.to_json_dict(),
            "oracle_check": "pass" if ok else "fail",
        }
    )
    emit(args, payload, _exp_csv(r.f.to_strings(), r.g.to_strings(), mat))
    return 0 if ok else 1


def _exp_csv(f_strings, g_strings, mat: TriMatrix) -> str:
    return (
        "f," + ",".join(f_strings) + "\n"
        "g," + ",".join(g_strings) + "\n" + mat.to_csv()
    )


# -- apply ------------------------------------------------------------------------


def cmd_apply(args) -> int:
    fc = parse_rational_list(args.f)
    gc = parse_rational_list(args.g)
    hc = parse_rational_list(args.gamma)
    trunc = args.trunc if args.trunc is not None else max(len(fc), len(gc), len(hc), 9) - 1
    r = RiordanMatrix(Fps(fc, trunc), Fps(gc, trunc))
    image = r.apply(Fps(hc, trunc))
    emit(args, image.to_dict(), ",".join(image.to_strings()) + "\n")
    return 0


# -- flow --------------------------------------------------------------------------


def cmd_flow(args) -> int:
    genr = MonomialGenerator(parse_rational(args.a), parse_rational(args.b), args.n)
    if args.dim < 1:
        raise ValueError(f"--dim must be >= 1, got {args.dim}")
    problem = ApproachingProblem(genr, args.dim - 1)
    if args.mode == "exact" and not problem.has_zero_diagonal:
        raise ExactModeIrrational(
            "generator has a nonzero diagonal; its flow is float-only (use --mode float)"
        )
    x0 = parse_rational_list(args.x0)
    if len(x0) != args.dim:
        raise ValueError(f"--x0 needs {args.dim} components, got {len(x0)}")
    times = parse_rational_list(args.t)
    as_float = args.mode == "float"

    header = ["t"] + [f"x{i}" for i in range(args.dim)]
    rows = []
    max_err = 0.0
    for t in times:
        if as_float:
            state = exp_truncated_oracle(problem.lie_element, float(t), problem.n).matvec(
                [float(v) for v in x0]
            )
            values = [float(v) for v in state]
        else:
            state = project_flow(problem, x0, t)
            values = [str(v) for v in state]
        row = {"t": float(t) if as_float else str(t), "x": values}
        if args.rk4 is not None:
            approx = rk4_integrate(problem, x0, float(t), max(args.rk4, 1))
            row["rk4"] = list(approx)
            max_err = max(
                max_err, max(abs(float(e) - v) for e, v in zip(state, approx))
            )
        rows.append(row)

    payload = {"header": header, "rows": rows}
    csv_lines = []
    csv_header = list(header)
    if args.rk4 is not None:
        payload["rk4_steps"] = args.rk4
        payload["max_error"] = max_err
        csv_header += [f"rk4_x{i}" for i in range(args.dim)]
    csv_lines.append(",".join(csv_header))
    for row in rows:
        cells = [str(row["t"])] + [str(v) for v in row["x"]]
        if args.rk4 is not None:
            cells += [str(v) for v in row["rk4"]]
        csv_lines.append(",".join(cells))
    csv_text = "\n".join(csv_lines) + "\n"
    if args.rk4 is not None:
        csv_text += f"# max_error,{max_err}\n"
    emit(args, payload, csv_text)
    return 0


# -- check -------------------------------------------------------------------------


def _first_matrix_diff(a: TriMatrix, b: TriMatrix):
    for i in range(a.dim):
        for j in range(i + 1):
            if a.entry(i, j) != b.entry(i, j):
                return {"i": i, "j": j, "lhs": str(a.entry(i, j)), "rhs": str(b.entry(i, j))}
    return None


def _rand_unit_series(rng: Random, trunc: int) -> Fps:
    cs = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(trunc + 1)]
    while cs[0] == 0:
        cs[0] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return Fps(cs, trunc)


def cmd_check(args) -> int:
    genr = MonomialGenerator(parse_rational(args.a), parse_rational(args.b), args.n)
    t = parse_rational(args.t)
    depth = args.depth if args.depth is not None else max(args.dim - 1, 1)
    passed = True
    counterexample = None
    params: dict = {"seed": args.seed}

    if args.what == "pseudo-involution":
        params.update(genr.to_json_dict() | {"t": str(t), "depth": depth})
        e = exp_monomial(genr, t, 2 * depth + 2)
        section = (e * involution_m(1, e.trunc)).to_matrix(depth)
        square = section.mul(section)
        counterexample = _first_matrix_diff(square, TriMatrix.identity(depth + 1))
        passed = counterexample is None

    elif args.what in ("symmetry", "time-reversal"):
        n_sec = args.dim - 1
        params.update(genr.to_json_dict() | {"dim": args.dim})
        problem = ApproachingProblem(genr, n_sec)
        predicate = check_symmetry if args.what == "symmetry" else check_time_reversal
        for sign, label in ((1, "M"), (-1, "-M")):
            s = projected_involution(sign, n_sec)
            if not predicate(s, problem):
                passed = False
                lhs = s.mul(problem.matrix)
                rhs = problem.matrix.mul(s)
                if args.what == "time-reversal":
                    rhs = rhs.scale(Fraction(-1))
                counterexample = {"involution": label} | (
                    _first_matrix_diff(lhs, rhs) or {}
                )
                break

    elif args.what == "oracle-exp":
        trunc = args.trunc if args.trunc is not None else 12
        params.update(genr.to_json_dict() | {"t": str(t), "trunc": trunc})
        closed = exp_monomial(genr, t, trunc).to_matrix(trunc)
        oracle = exp_truncated_oracle(genr.lie_element(trunc), t, trunc)
        counterexample = _first_matrix_diff(closed, oracle)
        passed = counterexample is None

    elif args.what == "ftrm":
        params.update({"dim": args.dim, "count": args.count})
        rng = Random(args.seed)
        n_sec = args.dim - 1
        for case in range(args.count):
            r = RiordanMatrix(
                _rand_unit_series(rng, 2 * args.dim), _rand_unit_series(rng, 2 * args.dim)
            )
            gamma = Fps(
                [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(2 * args.dim + 1)],
                2 * args.dim,
            )
            got = r.apply(gamma).prefix(n_sec)
            want = r.to_matrix(n_sec).matvec(list(gamma.prefix(n_sec)))
            if tuple(got) != tuple(want):
                passed = False
                counterexample = {
                    "case": case,
                    "lhs": [str(v) for v in got],
                    "rhs": [str(v) for v in want],
                }
                break

    elif args.what == "a-sequence":
        params.update({"depth": depth, "count": args.count})
        rng = Random(args.seed)
        for case in range(args.count):
            r = RiordanMatrix(
                _rand_unit_series(rng, 2 * depth + 2), _rand_unit_series(rng, 2 * depth + 2)
            )
            a = r.a_sequence()
            section = r.to_matrix(depth)
            for i in range(1, depth + 1):
                for j in range(1, i + 1):
                    total = sum(a[k] * section.entry(i - 1, j - 1 + k) for k in range(i - j + 1))
                    if section.entry(i, j) != total:
                        passed = False
                        counterexample = {
                            "case": case,
                            "i": i,
                            "j": j,
                            "lhs": str(section.entry(i, j)),
                            "rhs": str(total),
                        }
                        break
                if not passed:
                    break
            if not passed:
                break

    payload = {
        "check": args.what,
        "params": params,
        "passed": passed,
        "counterexample": counterexample,
    }
    emit(args, payload, None)
    return 0 if passed else 1


COMMANDS = {
    "triangle": cmd_triangle,
    "exp": cmd_exp,
    "apply": cmd_apply,
    "flow": cmd_flow,
    "check": cmd_check,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ExactModeIrrational as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (NotRiordan, SeriesError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
