"""Command-line front end: seed, solve, verify, jacobian.

Exit codes are a stable contract:
    0  success
    2  file/parse error
    3  domain invariant violation
    4  solver did not converge (partial report still written)
    5  non-real spectrum at the evaluation point
    6  verification failure
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .errors import (
    InvariantViolation,
    NoConvergence,
    NonRealSpectrum,
    ProblemFormatError,
)
from .matpoly import proper_values
from .problems import load_polynomial, load_problem, polynomial_to_doc, spec_to_config
from .seed import seed_diagonals
from .sensitivity import jacobian_x, seed_vandermonde_check
from .solver import assemble, continuation_solve, verify

EXIT_PARSE = 2
EXIT_INVARIANT = 3
EXIT_NO_CONVERGENCE = 4
EXIT_NON_REAL = 5
EXIT_VERIFY_FAIL = 6


def _emit(doc: dict, out: str | None):
    text = json.dumps(doc, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _summary_matrix(name: str, M: np.ndarray, quiet: bool):
    if quiet:
        return
    print(name)
    for row in M:
        print("  " + "  ".join(f"{v:.15g}" for v in row))


def cmd_seed(args) -> int:
    spec = load_problem(args.problem, overrides=_control_overrides(args))
    P = spec.seed()
    decomp = proper_values(P)
    doc = {
        "config": spec_to_config(spec),
        **polynomial_to_doc(P),
        "spectrum": decomp.values.tolist(),
    }
    _emit(doc, args.out)
    if not args.quiet and args.out:
        for s, c in enumerate(P.coeffs):
            _summary_matrix(f"coefficient {s}:", c, args.quiet)
    return 0


def cmd_solve(args) -> int:
    overrides = _control_overrides(args)
    if args.continuation is not None:
        overrides["continuation_steps"] = args.continuation
    if args.fd_jacobian:
        overrides["fd_jacobian"] = True
    spec = load_problem(args.problem, overrides=overrides)
    report = continuation_solve(spec)
    doc = {
        "config": spec_to_config(spec),
        **polynomial_to_doc(report.polynomial),
        "residual": report.residual,
        "converged": report.converged,
        "structure_ok": report.structure_ok,
        "structure_detail": list(report.structure_detail),
        "leading_ok": report.leading_ok,
        "matching_fallback": report.matching_fallback,
        "continuation_path": list(report.continuation_path),
        "iterations": [
            {"iteration": t.iteration, "residual": t.residual, "step_norm": t.step_norm}
            for t in report.iterations
        ],
        "failure": report.failure,
    }
    _emit(doc, args.out)
    if not args.quiet:
        for s, c in enumerate(report.polynomial.coeffs):
            _summary_matrix(f"coefficient {s}:", c, args.quiet)
        print(f"residual: {report.residual:.15g}")
        print(f"converged: {report.converged}  structure_ok: {report.structure_ok}")
    if report.converged:
        return 0
    if report.failure and "NonRealSpectrum" in report.failure and not report.continuation_path:
        return EXIT_NON_REAL
    return EXIT_NO_CONVERGENCE


def cmd_verify(args) -> int:
    spec = load_problem(args.problem, overrides=_control_overrides(args))
    P = load_polynomial(args.polynomial)
    tol = args.tol if args.tol is not None else 1e-8
    report = verify(P, spec, value_tol=tol)
    doc = {
        "config": spec_to_config(spec),
        "residual": report.residual,
        "values": [None if np.isnan(v) else v for v in report.values],
        "structure_ok": report.structure_ok,
        "structure_detail": list(report.structure_detail),
        "leading_ok": report.leading_ok,
        "passed": report.passed,
        "failure": report.failure,
    }
    _emit(doc, args.out)
    if not args.quiet:
        print(f"residual: {report.residual:.15g}")
        print(f"passed: {report.passed}" + (f"  ({report.failure})" if report.failure else ""))
    return 0 if report.passed else EXIT_VERIFY_FAIL


def cmd_jacobian(args) -> int:
    spec = load_problem(args.problem, overrides=_control_overrides(args))
    at_seed = args.at == "seed"
    if at_seed:
        x = seed_diagonals(spec.seed())
        tau = 0.0
    else:
        try:
            with open(args.at) as fh:
                x = np.asarray(json.load(fh), dtype=float)
        except (OSError, json.JSONDecodeError) as exc:
            raise ProblemFormatError(f"{args.at}: {exc}") from exc
        tau = 1.0
    P = assemble(x, spec, tau=tau)
    decomp = proper_values(P)
    J = jacobian_x(P, decomp)
    doc = {
        "config": spec_to_config(spec),
        "at": "seed" if at_seed else args.at,
        "jacobian": J.tolist(),
        "condition": float(np.linalg.cond(J)),
    }
    if at_seed:
        check = seed_vandermonde_check(P, spec.spectrum, decomp, J)
        doc["vandermonde"] = {
            "max_entry_error": check["max_entry_error"],
            "max_offblock": check["max_offblock"],
            "passed": check["max_entry_error"] <= 1e-12 and check["max_offblock"] <= 1e-12,
        }
    _emit(doc, args.out)
    if not args.quiet:
        print(f"condition: {doc['condition']:.15g}")
        if at_seed:
            print(f"vandermonde check passed: {doc['vandermonde']['passed']}")
    return 0


def _control_overrides(args) -> dict:
    return {
        "newton_tol": getattr(args, "tol", None),
        "max_iter": getattr(args, "max_iter", None),
    }


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="structured-iep",
        description="Construct symmetric matrix polynomials with prescribed "
                    "real spectrum and prescribed coefficient graphs.",
    )
    p.add_argument("--tol", type=float, default=None,
                   help="residual tolerance (Newton tolerance for solve, value tolerance for verify)")
    p.add_argument("--max-iter", type=int, default=None, help="Newton iteration cap")
    p.add_argument("--quiet", action="store_true", help="suppress the human-readable summary")
    sub = p.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("seed", help="build and verify the diagonal seed polynomial")
    ps.add_argument("problem")
    ps.add_argument("--out", default=None)
    ps.set_defaults(func=cmd_seed)

    pv = sub.add_parser("solve", help="solve the structured inverse problem")
    pv.add_argument("problem")
    pv.add_argument("--fd-jacobian", action="store_true",
                    help="use the finite-difference Jacobian (cross-validation mode)")
    pv.add_argument("--continuation", type=int, default=None, metavar="STEPS",
                    help="initial number of continuation steps")
    pv.add_argument("--out", default=None)
    pv.set_defaults(func=cmd_solve)

    pf = sub.add_parser("verify", help="verify a polynomial file against a problem file")
    pf.add_argument("polynomial")
    pf.add_argument("problem")
    pf.add_argument("--out", default=None)
    pf.set_defaults(func=cmd_verify)

    pj = sub.add_parser("jacobian", help="spectral Jacobian and seed structure check")
    pj.add_argument("problem")
    pj.add_argument("--at", default="seed", metavar="seed|X_FILE",
                    help="evaluation point: 'seed' or a JSON file with the kn diagonal unknowns")
    pj.add_argument("--out", default=None)
    pj.set_defaults(func=cmd_jacobian)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ProblemFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvariantViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except NonRealSpectrum as exc:
        print(f"error: non-real spectrum: {exc}", file=sys.stderr)
        return EXIT_NON_REAL
    except NoConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
