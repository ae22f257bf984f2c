"""Command-line interface: ``gencliff {eval,table,charpoly,basis,su3-tables,verify}``.

Exit codes: 0 on success, 1 on a usage, parse or evaluation error, 2 when
``verify`` finds a violated property.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import algebra as alg
from .algebra import AlgebraContext, AlgebraElement, make_context
from .errors import GencliffError, ParseError
from .expr import evaluate_text
from .groups import relation_residuals, special_unitary_lie_basis, su3_tables, unitary_lie_basis
from .matrix_rep import matrix_to_json
from .spectral import CharPolyResult
from .verify import ACCEPTANCE_CONFIGS, VerifyConfig, run_verification

EXIT_OK, EXIT_ERROR, EXIT_VERIFY = 0, 1, 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit 2, which is reserved for verify
        raise _UsageError(message)


# --------------------------------------------------------------------------
# rendering


# text output rounds coefficients below this relative size to zero; JSON is exact
TEXT_CHOP = 1e-13


def _scalar_json(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _charpoly_json(cp: CharPolyResult) -> dict:
    return {"N": cp.N, "C": [_scalar_json(c) for c in cp.C], "det": _scalar_json(cp.det)}


def result_to_json(value) -> dict:
    if isinstance(value, AlgebraElement):
        return {"type": "element", **alg.element_to_json(value)}
    if isinstance(value, np.ndarray):
        return {"type": "matrix", **matrix_to_json(value)}
    if isinstance(value, CharPolyResult):
        return {"type": "charpoly", **_charpoly_json(value)}
    return {"type": "scalar", "value": _scalar_json(value)}


def _matrix_text(A: np.ndarray) -> str:
    return "\n".join("  ".join(alg.format_complex(z) for z in row) for row in A)


def _chop(z: complex, scale: float) -> complex:
    """Zero out real or imaginary parts that are rounding noise relative to scale."""
    eps = TEXT_CHOP * max(1.0, scale)
    return complex(0.0 if abs(z.real) <= eps else z.real, 0.0 if abs(z.imag) <= eps else z.imag)


def result_to_text(value) -> str:
    if isinstance(value, AlgebraElement):
        scale = float(np.abs(value.coeffs).max(initial=0.0))
        cleaned = alg.from_coefficients(value.context, [_chop(c, scale) for c in value.coeffs])
        return alg.format_element(cleaned)
    if isinstance(value, np.ndarray):
        return _matrix_text(value)
    if isinstance(value, CharPolyResult):
        lines = [f"N = {value.N}"]
        scale = float(np.abs(value.C).max(initial=0.0))
        lines += [f"C{k} = {alg.format_complex(_chop(c, scale))}" for k, c in enumerate(value.C, start=1)]
        lines.append(f"det = {alg.format_complex(_chop(value.det, abs(value.det)))}")
        return "\n".join(lines)
    if isinstance(value, float):
        return alg.format_complex(value)
    return alg.format_complex(_chop(complex(value), abs(value)))


def table_order(ctx: AlgebraContext) -> list[tuple[int, ...]]:
    """Nonidentity monomials by grade, then support size, then exponents descending."""
    monos = [tuple(int(j) for j in J) for J in alg.tables(ctx).exponents if any(J)]
    return sorted(monos, key=lambda J: (sum(J), sum(1 for j in J if j), tuple(-j for j in J)))


def _phase_text(q: int) -> str:
    return "" if q == 0 else ("w" if q == 1 else f"w{q}")


def table_cell(q: int, K: tuple[int, ...]) -> str:
    phase = _phase_text(q)
    mono = alg.format_monomial(K)
    return f"{phase}*{mono}" if phase else mono


def multiplication_table(ctx: AlgebraContext) -> list[list[str]]:
    """Header row plus one row per monomial; cells are ``w<q>*<monomial>``."""
    order = table_order(ctx)
    rows = [["1st\\2nd"] + [alg.format_monomial(J) for J in order]]
    for J in order:
        row = [alg.format_monomial(J)]
        for K in order:
            q, L = alg.monomial_product(J, K, ctx)
            row.append(table_cell(q, L))
        rows.append(row)
    return rows


def render_table(rows: list[list[str]]) -> str:
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    lines = []
    for r in rows:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# commands


def _context(args) -> AlgebraContext:
    if args.m is None or args.d is None:
        raise _UsageError(f"{args.command} needs --m and --d")
    return make_context(args.m, args.d)


def _expression(args) -> str:
    return sys.stdin.read() if args.expression == "-" else args.expression


def _emit(args, value, out) -> None:
    if args.format == "json":
        out.write(json.dumps(result_to_json(value)) + "\n")
    else:
        out.write(result_to_text(value) + "\n")


def cmd_eval(args, out) -> int:
    ctx = _context(args)
    _emit(args, evaluate_text(_expression(args), ctx), out)
    return EXIT_OK


def cmd_charpoly(args, out) -> int:
    ctx = _context(args)
    value = evaluate_text(f"charpoly({_expression(args)})", ctx)
    _emit(args, value, out)
    return EXIT_OK


def cmd_table(args, out) -> int:
    ctx = _context(args)
    rows = multiplication_table(ctx)
    if args.format == "json":
        out.write(json.dumps({"m": ctx.m, "d": ctx.d, "rows": rows}) + "\n")
    else:
        out.write(render_table(rows))
    return EXIT_OK


def cmd_basis(args, out) -> int:
    ctx = _context(args)
    basis = unitary_lie_basis(ctx) if args.kind == "u" else special_unitary_lie_basis(ctx)
    if args.format == "json":
        out.write(json.dumps([alg.element_to_json(X) for X in basis]) + "\n")
    else:
        for k, X in enumerate(basis):
            out.write(f"tau{k if args.kind == 'u' else k + 1} = {alg.format_element(X)}\n")
    return EXIT_OK


def cmd_su3_tables(args, out) -> int:
    t = su3_tables()
    fwd_res = relation_residuals(t.tau_to_theta, t.theta, t.beta_tau)
    back_res = relation_residuals(t.theta_to_tau, t.beta_tau, t.theta)
    inverse_gap = float(np.abs(t.tau_to_theta @ t.theta_to_tau - np.eye(8)).max())
    if args.format == "json":
        payload = {
            "tau": [alg.element_to_json(x) for x in t.tau],
            "beta_tau": [matrix_to_json(B) for B in t.beta_tau],
            "gell_mann": [matrix_to_json(L) for L in t.gell_mann],
            "theta": [matrix_to_json(T) for T in t.theta],
            "tau_to_theta": t.tau_to_theta.tolist(),
            "theta_to_tau": t.theta_to_tau.tolist(),
            "derived_tau_to_theta": t.derived_tau_to_theta.tolist(),
            "derived_theta_to_tau": t.derived_theta_to_tau.tolist(),
            "residuals": {
                "tau_to_theta": fwd_res.tolist(),
                "theta_to_tau": back_res.tolist(),
                "product_minus_identity": inverse_gap,
            },
        }
        out.write(json.dumps(payload) + "\n")
        return EXIT_OK
    with np.printoptions(precision=6, suppress=True, linewidth=120):
        for k, (x, B) in enumerate(zip(t.tau, t.beta_tau), start=1):
            out.write(f"tau{k} = {alg.format_element(x)}\nbeta(tau{k}) =\n{_matrix_text(B)}\n")
        out.write(f"tau -> theta (published):\n{t.tau_to_theta}\n")
        out.write(f"tau -> theta (derived):\n{t.derived_tau_to_theta}\n")
        out.write(f"theta -> tau (published):\n{t.theta_to_tau}\n")
        out.write(f"theta -> tau (derived):\n{t.derived_theta_to_tau}\n")
        out.write(f"published tau->theta residual per row: {np.array2string(fwd_res, precision=3)}\n")
        out.write(f"published theta->tau residual per row: {np.array2string(back_res, precision=3)}\n")
    out.write(f"max |F G - I| for the published tables: {inverse_gap:.3g}\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    if (args.m is None) != (args.d is None):
        raise _UsageError("verify takes both --m and --d, or neither")
    configs = [(args.m, args.d)] if args.m is not None else list(ACCEPTANCE_CONFIGS)
    reports = []
    start = time.perf_counter()
    for m, d in configs:
        ctx = make_context(m, d)
        report = run_verification(ctx, seed=args.seed, config=VerifyConfig(group_tol=args.tol))
        reports.append(report)
        if args.format == "text":
            for c in report.checks:
                status = "PASS" if c.passed else "FAIL"
                out.write(f"[{status}] m={m} d={d} {c.name}: {c.detail}\n")
    ok = all(r.passed for r in reports)
    elapsed = time.perf_counter() - start
    if args.format == "json":
        payload = {
            "passed": ok,
            "seconds": elapsed,
            "configs": [
                {
                    "m": r.m,
                    "d": r.d,
                    "passed": r.passed,
                    "checks": [
                        {"name": c.name, "passed": c.passed, "worst": c.worst, "detail": c.detail}
                        for c in r.checks
                    ],
                }
                for r in reports
            ],
        }
        out.write(json.dumps(payload) + "\n")
    else:
        out.write(f"{'all checks passed' if ok else 'VERIFICATION FAILED'} ({elapsed:.1f} s)\n")
    return EXIT_OK if ok else EXIT_VERIFY


# --------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--m", type=int, help="order of the root of unity (m >= 2)")
    common.add_argument("--d", type=int, help="number of generators (d >= 1)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--tol", type=float, default=1e-9, help="membership tolerance")
    common.add_argument("--seed", type=int, default=0, help="seed for verify sampling")

    parser = _Parser(prog="gencliff", description="Generalized Clifford algebra calculator")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", parents=[common], help="evaluate an expression")
    p.add_argument("expression", help="expression text, or - to read stdin")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("charpoly", parents=[common], help="characteristic polynomial of an expression")
    p.add_argument("expression")
    p.set_defaults(func=cmd_charpoly)

    p = sub.add_parser("table", parents=[common], help="multiplication table of basis monomials")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("basis", parents=[common], help="basis of the u or su Lie algebra")
    p.add_argument("kind", choices=("u", "su"))
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("su3-tables", parents=[common], help="su(3) basis and Gell-Mann relations")
    p.set_defaults(func=cmd_su3_tables)

    p = sub.add_parser("verify", parents=[common], help="run the property checks")
    p.set_defaults(func=cmd_verify)
    return parser


def _report_error(kind: str, message: str, fmt: str, position: int | None = None) -> None:
    if fmt == "json":
        payload = {"error": kind, "message": message}
        if position is not None:
            payload["position"] = position
        sys.stderr.write(json.dumps(payload) + "\n")
    else:
        sys.stderr.write(f"error: {message}\n")


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    argv = sys.argv[1:] if argv is None else argv
    fmt = "json" if "json" in argv and "--format" in argv else "text"
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        fmt = args.format
        return args.func(args, out)
    except _UsageError as exc:
        _report_error("UsageError", str(exc), fmt)
        return EXIT_ERROR
    except ParseError as exc:
        _report_error("ParseError", str(exc), fmt, exc.position)
        return EXIT_ERROR
    except GencliffError as exc:
        _report_error(type(exc).__name__, str(exc), fmt)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
