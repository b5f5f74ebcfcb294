"""Command-line front end.

Exit codes: 0 pass/value, 1 mathematical failure, 2 parse or usage error,
3 unsupported (degenerate substitution, nonlocal requirement, divergence
integration out of reach).
"""

from __future__ import annotations

import argparse
import shlex
import sys
import time
from pathlib import Path
from typing import Callable, Sequence

from .diffalg import JetContext
from .diffop import LinDiffOp
from .errors import HamopError, ParseError, Unsupported
from .jacobi import JacobiReport, compatibility_check, jacobi_sampled_check
from .parser import parse_context, parse_expression, parse_operator
from .report import Detail, Report
from .transform import (
    Substitution,
    composite,
    darboux,
    hodograph,
    k_operator,
    potentiation,
    transform_equation,
    transform_operator_pushforward,
    verify_factorization,
    verify_operator_transform,
)
from .varcalc import (
    EvolutionEquation,
    Functional,
    euler,
    frechet,
    poisson_bracket,
    recursion_residual,
    verify_hamiltonian_form,
)
from . import verify


class UsageError(HamopError):
    pass


def _ctx(args) -> JetContext:
    return parse_context(args.vars)


def _expr(text: str, ctx: JetContext):
    return parse_expression(text, ctx)


def _op(text: str, ctx: JetContext) -> LinDiffOp:
    return parse_operator(text, ctx)


# --------------------------------------------------------------------------
# commands


def cmd_verify_theorem1(args) -> Report:
    target = _op(args.target, parse_context("y,v")) if args.target else None
    return verify.verify_theorem1(args.n, target)


def cmd_verify_darboux(args) -> Report:
    c = None
    if args.constant is not None:
        expr = _expr(args.constant, JetContext())
        if not expr.is_constant():
            raise ParseError(f"constant expected, got {args.constant!r}")
        c = expr.constant_value()
    return verify.verify_darboux(args.n, c)


def cmd_derive_darboux_constant(args) -> Report:
    return verify.darboux_constant_report(args.n)


def cmd_verify_potential_form(args) -> Report:
    return verify.verify_potential_form(args.n)


def cmd_verify_example(args) -> Report:
    return verify.verify_example()


def _substitution(args) -> Substitution:
    source = parse_context(args.vars)
    name = args.subst
    target = parse_context(args.target_vars) if args.target_vars else None
    if name == "custom":
        if not (args.phi and args.psi and target):
            raise UsageError("custom substitution needs --phi, --psi and --target-vars")
        return Substitution(_expr(args.phi, target), _expr(args.psi, target), source, "custom")
    builders: dict[str, Callable[..., Substitution]] = {
        "potentiation": potentiation,
        "hodograph": hodograph,
        "composite": composite,
    }
    if name == "darboux":
        if args.n is None:
            raise UsageError("darboux substitution needs --n")
        c = None
        if args.constant is not None:
            c = _expr(args.constant, source).constant_value()
        return darboux(args.n, c, source, target or parse_context("z,w"))
    defaults = {"potentiation": "z,w", "hodograph": "y,v", "composite": "y,v"}
    return builders[name](source, target or parse_context(defaults[name]))


def _subst_inputs(s: Substitution) -> list[str]:
    src = s.source_ctx
    return [f"substitution: {src.indep} = {s.phi}, {src.dep} = {s.psi} (new {s.target_ctx})"]


def cmd_transform_op(args) -> Report:
    s = _substitution(args)
    L1 = _op(args.op, s.source_ctx)
    report = Report("transform-op", [f"op={L1}", *_subst_inputs(s)],
                    cites="L1_bar = (D phi)^-1 K* o L2 o K")
    if args.target is None:
        report.value = str(transform_operator_pushforward(L1, s))
        report.details.append(_value("K", str(k_operator(s))))
        return report
    L2 = _op(args.target, s.target_ctx)
    report.inputs.append(f"target={L2}")
    check = verify_operator_transform(L1, s, L2)
    report.check("conjugation identity", check.ok, witness=None if check.ok else str(check.witness))
    report.finish_from_details()
    return report


def _value(name: str, value: str) -> Detail:
    return Detail(name, "value", value)


def cmd_transform_eq(args) -> Report:
    s = _substitution(args)
    eq = EvolutionEquation(_expr(args.rhs, s.source_ctx))
    new = transform_equation(eq, s)
    return Report("transform-eq", [str(eq), *_subst_inputs(s)], value=str(new),
                  cites="(D_psi - U_1 D_phi)(v_t) = K[U]")


def cmd_euler(args) -> Report:
    ctx = _ctx(args)
    T = _expr(args.density, ctx)
    return Report("euler", [f"density={T}"], value=str(euler(T)), cites="delta = sum (-D)^i d/du_i")


def cmd_frechet(args) -> Report:
    ctx = _ctx(args)
    K = _expr(args.expr, ctx)
    return Report("frechet", [f"K={K}"], value=str(frechet(K)), cites="D_K = sum (dK/du_i) D^i")


def cmd_bracket(args) -> Report:
    ctx = _ctx(args)
    H = _op(args.op, ctx)
    F, G = Functional(_expr(args.F, ctx)), Functional(_expr(args.G, ctx))
    B = poisson_bracket(H, F, G)
    report = Report("bracket", [f"H={H}", f"F={F.density}", f"G={G.density}"], value=str(B.density),
                    cites="{F, G} = int delta F * H(delta G)")
    report.details.append(_value("zero functional", "yes" if euler(B.density).is_zero() else "no"))
    return report


def _densities(args, ctx: JetContext):
    if not args.densities:
        return None
    out = []
    for lineno, line in enumerate(Path(args.densities).read_text().splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            out.append(_expr(line, ctx))
        except ParseError as exc:
            raise ParseError(f"{args.densities}:{lineno}: {exc}") from None
    if len(out) < 3:
        raise UsageError("density file must provide at least three densities")
    return out


def _jacobi_to_report(report: Report, jr: JacobiReport) -> Report:
    report.check("skew-adjoint", jr.skew_adjoint, witness="adjoint(H) != -H")
    for case in jr.jacobi_cases:
        report.check(f"jacobi {case.indices}", case.passed, witness=case.residual)
    for case in jr.compatible_cases:
        report.check(f"pencil H1+H2 jacobi {case.indices}", case.passed, witness=case.residual)
    report.finish_from_details()
    return report


def cmd_jacobi(args) -> Report:
    ctx = _ctx(args)
    H = _op(args.op, ctx)
    report = Report("jacobi", [f"H={H}"],
                    cites="Jacobi identity on sampled functionals (evidence, not proof)")
    return _jacobi_to_report(report, jacobi_sampled_check(H, _densities(args, ctx)))


def cmd_compat(args) -> Report:
    ctx = _ctx(args)
    H1, H2 = _op(args.op1, ctx), _op(args.op2, ctx)
    report = Report("compat", [f"H1={H1}", f"H2={H2}"],
                    cites="compatibility of a Hamiltonian pair on sampled functionals (evidence, not proof)")
    return _jacobi_to_report(report, compatibility_check(H1, H2, _densities(args, ctx)))


def cmd_verify_recursion(args) -> Report:
    ctx = _ctx(args)
    eq = EvolutionEquation(_expr(args.rhs, ctx))
    R = _op(args.op, ctx)
    report = Report("verify-recursion", [str(eq), f"R={R}"], cites="pr v_K(R) - [D_K, R] = 0")
    residual = recursion_residual(eq, R)
    report.check("recursion operator condition", residual.is_zero(), witness=f"residual {residual}")
    report.finish_from_details()
    return report


def cmd_verify_factorization(args) -> Report:
    ctx = _ctx(args)
    H, B = _op(args.op, ctx), _op(args.B, ctx)
    report = Report("verify-factorization", [f"H={H}", f"B={B}"],
                    cites="x = y, v = sum b_i(x) v_i sends H to D_y iff H = B o D o B*")
    try:
        check = verify_factorization(H, B)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report.check("H = B o D o B*", check.ok, witness=None if check.ok else str(check.witness))
    report.finish_from_details()
    return report


def cmd_verify_hamiltonian(args) -> Report:
    ctx = _ctx(args)
    eq = EvolutionEquation(_expr(args.rhs, ctx))
    H = _op(args.op, ctx)
    T = Functional(_expr(args.density, ctx))
    report = Report("verify-hamiltonian", [str(eq), f"H={H}", f"T={T.density}"],
                    cites="u_t = H delta T")
    ok = verify_hamiltonian_form(eq, H, T)
    report.check("Hamiltonian form", ok, witness=f"H(delta T) = {H(euler(T))}")
    report.finish_from_details()
    return report


COMMANDS: dict[str, Callable[[argparse.Namespace], Report]] = {
    "verify-theorem1": cmd_verify_theorem1,
    "verify-darboux": cmd_verify_darboux,
    "derive-darboux-constant": cmd_derive_darboux_constant,
    "verify-potential-form": cmd_verify_potential_form,
    "verify-example": cmd_verify_example,
    "transform-op": cmd_transform_op,
    "transform-eq": cmd_transform_eq,
    "euler": cmd_euler,
    "frechet": cmd_frechet,
    "bracket": cmd_bracket,
    "jacobi": cmd_jacobi,
    "compat": cmd_compat,
    "verify-recursion": cmd_verify_recursion,
    "verify-factorization": cmd_verify_factorization,
    "verify-hamiltonian": cmd_verify_hamiltonian,
}


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--timing", action="store_true",
                        help="record wall time in the report (otherwise 0, keeping output byte-stable)")
    common.add_argument("--vars", default="x,u", help="independent,dependent variable names (default x,u)")

    parser = _ArgumentParser(prog="hamop", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    p = add("verify-theorem1", "H^(N,0) -> -D^(2n+1) under x=v, u=1/v_y")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--target", help="candidate operator in y,v (default -D^(2n+1))")

    p = add("verify-darboux", "H^(N,0) -> D_z under the Darboux coordinates")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--constant", help="unit constant c (default i^(n+1))")

    p = add("derive-darboux-constant", "which units c give the Gardner form")
    p.add_argument("--n", type=int, required=True)

    p = add("verify-potential-form", "H -> H_check -> H_tilde and functoriality")
    p.add_argument("--n", type=int, required=True)

    add("verify-example", "the u_t = D^3(u^-2) example chain, with all functionals")

    for name, help_ in (("transform-op", "push an operator through a substitution"),
                        ("transform-eq", "rewrite an evolution equation")):
        p = add(name, help_)
        if name == "transform-op":
            p.add_argument("--op", required=True)
            p.add_argument("--target", help="candidate L2 to verify")
        else:
            p.add_argument("--rhs", required=True)
        p.add_argument("--subst", required=True,
                       choices=["potentiation", "hodograph", "composite", "darboux", "custom"])
        p.add_argument("--target-vars", help="new variable names, e.g. y,v")
        p.add_argument("--phi", help="custom: image of the independent variable")
        p.add_argument("--psi", help="custom: image of the dependent variable")
        p.add_argument("--n", type=int, help="darboux: family index")
        p.add_argument("--constant", help="darboux: unit constant")

    p = add("euler", "variational derivative of a density")
    p.add_argument("--density", required=True)

    p = add("frechet", "Frechet derivative of a differential function")
    p.add_argument("--expr", required=True)

    p = add("bracket", "Poisson bracket density of two functionals")
    p.add_argument("--op", required=True)
    p.add_argument("--F", required=True)
    p.add_argument("--G", required=True)

    p = add("jacobi", "sampled Jacobi identity check")
    p.add_argument("--op", required=True)
    p.add_argument("--densities", help="file with one density per line ('#' comments)")

    p = add("compat", "sampled compatibility check of two operators")
    p.add_argument("--op1", required=True)
    p.add_argument("--op2", required=True)
    p.add_argument("--densities")

    p = add("verify-recursion", "recursion operator condition")
    p.add_argument("--rhs", required=True)
    p.add_argument("--op", required=True)

    p = add("verify-factorization", "quasiconstant H = B o D o B*")
    p.add_argument("--op", required=True)
    p.add_argument("--B", required=True)

    p = add("verify-hamiltonian", "u_t = H delta T")
    p.add_argument("--rhs", required=True)
    p.add_argument("--op", required=True)
    p.add_argument("--density", required=True)
    return parser


_FLAGS = {"--json", "--timing", "-h", "--help"}


def _glue_values(argv: Sequence[str]) -> list[str]:
    """``--opt -D^3`` -> ``--opt=-D^3`` so leading minus signs are not read as flags."""
    out = []
    it = iter(argv)
    for a in it:
        if a.startswith("--") and "=" not in a and a not in _FLAGS:
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def run(argv: Sequence[str]) -> tuple[Report, bool]:
    """Parse ``argv`` and execute; returns the report and the ``--json`` flag."""
    want_json = "--json" in argv
    command = next((a for a in argv if a in COMMANDS), "hamop")
    try:
        args = build_parser().parse_args(_glue_values(argv))
    except UsageError as exc:
        return Report(command, [shlex.join(argv)], result="error", message=str(exc)), want_json
    start = time.perf_counter()
    try:
        report = COMMANDS[args.command](args)
    except Unsupported as exc:
        report = Report(args.command, [shlex.join(argv)], result="unsupported", message=str(exc))
    except (HamopError, ValueError) as exc:
        report = Report(args.command, [shlex.join(argv)], result="error", message=str(exc))
    except OSError as exc:
        report = Report(args.command, [shlex.join(argv)], result="error", message=str(exc))
    if args.timing:
        report.timing_ms = int(round((time.perf_counter() - start) * 1000))
    return report, args.json


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    if any(a in ("-h", "--help") for a in argv):
        build_parser().parse_args(argv)  # prints help and exits 0
    report, as_json = run(argv)
    out = report.to_json() if as_json else report.to_text()
    # JSON always goes to stdout; text-mode errors go to stderr
    stream = sys.stdout if as_json or report.result in ("pass", "fail", "value") else sys.stderr
    stream.write(out)
    return report.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
