"""Newton correction of diagonal unknowns with off-diagonal continuation.

The unknowns are exactly the kn diagonal entries of the non-leading
coefficients; the prescribed off-diagonal values are held fixed (they are
the perturbation the Newton step must compensate).  A direct solve at full
off-diagonal strength can leave the real-spectrum regime, in which case the
off-diagonals are ramped in over a continuation schedule tau = j/steps with
warm starts, doubling the number of steps on failure up to a cap.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import (
    AmbiguousMatching,
    InvariantViolation,
    NearDegenerate,
    NoConvergence,
    NonRealSpectrum,
    SingularJacobian,
)
from .graphs import Graph, graph_of_matrix, matrix_of_graph
from .matpoly import MatrixPolynomial, SEP_TOL_REL, proper_values
from .seed import LeadingDiagonal, TargetSpectrum, seed_coefficients, seed_diagonals
from .sensitivity import jacobian_fd, jacobian_x

MAX_CONTINUATION_STEPS = 64
MAX_BACKTRACKS = 30


@dataclass(frozen=True)
class SolverControls:
    newton_tol: float | None = None  # None: 1e-11 * spectrum diameter
    max_iter: int = 50
    continuation_steps: int = 1
    damping: float = 1.0
    fd_jacobian: bool = False
    fd_step: float = 1e-6
    group_sorted: bool = False

    def __post_init__(self):
        if self.newton_tol is not None and self.newton_tol <= 0:
            raise InvariantViolation("newton_tol must be positive")
        if self.max_iter < 1:
            raise InvariantViolation("max_iter must be at least 1")
        if self.continuation_steps < 1:
            raise InvariantViolation("continuation_steps must be at least 1")

    def resolved_tol(self, spectrum: TargetSpectrum) -> float:
        if self.newton_tol is not None:
            return self.newton_tol
        return 1e-11 * max(spectrum.diameter, 1.0)


@dataclass(frozen=True)
class ProblemSpec:
    spectrum: TargetSpectrum
    lead: LeadingDiagonal
    graphs: tuple[Graph, ...]  # G_0 .. G_{k-1}
    epsilon: float = 0.5
    offdiag_values: tuple[np.ndarray, ...] | None = None  # default: all = epsilon
    controls: SolverControls = field(default_factory=SolverControls)

    def __post_init__(self):
        n, k = self.spectrum.n, self.spectrum.k
        if len(self.graphs) != k:
            raise InvariantViolation(f"need {k} graphs, got {len(self.graphs)}")
        for s, g in enumerate(self.graphs):
            if g.n != n:
                raise InvariantViolation(f"graph {s} has {g.n} vertices, expected {n}")
        if self.lead.alpha_k.shape != (n,):
            raise InvariantViolation(f"leading diagonal has wrong length {self.lead.alpha_k.shape[0]}")
        if self.offdiag_values is None:
            # epsilon == 0 is the degenerate "echo the seed" case; any other
            # zero off-diagonal would silently break the prescribed structure
            ys = tuple(np.full(g.num_edges, float(self.epsilon)) for g in self.graphs)
        else:
            ys = tuple(np.asarray(y, dtype=float) for y in self.offdiag_values)
            for s, (y, g) in enumerate(zip(ys, self.graphs)):
                if y.shape != (g.num_edges,):
                    raise InvariantViolation(
                        f"off-diagonal vector {s} has length {y.shape[0] if y.ndim == 1 else y.shape}, "
                        f"expected {g.num_edges}"
                    )
            if any(np.any(y == 0.0) for y in ys if len(y)):
                raise InvariantViolation("prescribed off-diagonal values must all be nonzero")
        object.__setattr__(self, "offdiag_values", ys)

    @property
    def n(self) -> int:
        return self.spectrum.n

    @property
    def k(self) -> int:
        return self.spectrum.k

    def seed(self) -> MatrixPolynomial:
        return seed_coefficients(self.spectrum, self.lead, group_sorted=self.controls.group_sorted)


@dataclass(frozen=True)
class IterationRecord:
    iteration: int
    residual: float
    step_norm: float


@dataclass(frozen=True)
class SolveReport:
    polynomial: MatrixPolynomial
    x: np.ndarray
    residual: float
    iterations: tuple[IterationRecord, ...]
    structure_ok: bool
    structure_detail: tuple[bool, ...]  # per non-leading coefficient
    leading_ok: bool
    continuation_path: tuple[float, ...]
    converged: bool
    failure: str | None = None
    matching_fallback: bool = False


def assemble(x: np.ndarray, spec: ProblemSpec, tau: float = 1.0) -> MatrixPolynomial:
    """Build the polynomial from diagonal unknowns x (s-major) with the
    prescribed off-diagonals scaled by tau; leading coefficient is fixed."""
    n, k = spec.n, spec.k
    x = np.asarray(x, dtype=float)
    if x.shape != (n * k,):
        raise ValueError(f"x has shape {x.shape}, expected ({n * k},)")
    coeffs = []
    for s in range(k):
        coeffs.append(matrix_of_graph(spec.graphs[s], x[s * n:(s + 1) * n], tau * spec.offdiag_values[s]))
    coeffs.append(np.diag(spec.lead.alpha_k))
    return MatrixPolynomial(tuple(coeffs))


def spectral_map(x: np.ndarray, spec: ProblemSpec, tau: float = 1.0):
    """Ascending proper values of the assembled polynomial (and the full
    decomposition, which the Jacobian reuses)."""
    diam = max(spec.spectrum.diameter, 1.0)
    decomp = proper_values(assemble(x, spec, tau), sep_tol=SEP_TOL_REL * diam)
    return decomp


MATCH_CAUTION_FACTOR = 1e3  # assignment fallback band above sep_tol


def match_targets(current: np.ndarray, targets: np.ndarray, sep_tol: float) -> tuple[np.ndarray, bool]:
    """Match ascending current values to sorted targets.

    With well-separated values this is the identity on sorted order.  A
    near-crossing pair (gap below MATCH_CAUTION_FACTOR * sep_tol) switches to
    a minimum-total-distance assignment, flagged in the report.  Values
    within sep_tol of each other are numerically indistinguishable, so any
    two assignments tie: AmbiguousMatching.
    """
    current = np.asarray(current, dtype=float)
    targets = np.sort(np.asarray(targets, dtype=float))
    if current.shape != targets.shape:
        raise ValueError("length mismatch")
    gaps = np.diff(current)
    if len(gaps) == 0 or np.min(gaps) >= MATCH_CAUTION_FACTOR * sep_tol:
        return np.arange(len(current)), False
    if np.min(gaps) < sep_tol:
        i = int(np.argmin(gaps))
        raise AmbiguousMatching(
            f"values {current[i]:.12g} and {current[i + 1]:.12g} are within sep_tol "
            f"{sep_tol:.3g}: assignments tie"
        )
    cost = np.abs(current[:, None] - targets[None, :])
    rows, cols = linear_sum_assignment(cost)
    perm = np.empty(len(current), dtype=int)
    perm[cols] = rows
    return perm, True


def _structure_verdict(P: MatrixPolynomial, spec: ProblemSpec) -> tuple[tuple[bool, ...], bool]:
    per_coeff = []
    for s in range(spec.k):
        per_coeff.append(graph_of_matrix(P.coeffs[s], 0.0) == spec.graphs[s])
    leading_ok = bool(np.array_equal(P.coeffs[spec.k], np.diag(spec.lead.alpha_k)))
    return tuple(per_coeff), leading_ok


def _report(spec, x, tau_path, trace, residual, converged, failure=None, fallback=False, tau=1.0):
    P = assemble(x, spec, tau)
    detail, leading_ok = _structure_verdict(P, spec)
    return SolveReport(
        polynomial=P,
        x=np.array(x, copy=True),
        residual=float(residual),
        iterations=tuple(trace),
        structure_ok=all(detail) and leading_ok,
        structure_detail=detail,
        leading_ok=leading_ok,
        continuation_path=tuple(tau_path),
        converged=converged,
        failure=failure,
        matching_fallback=fallback,
    )


def newton_solve(spec: ProblemSpec, x0: np.ndarray | None = None, tau: float = 1.0) -> SolveReport:
    """Damped Newton on the diagonal unknowns at fixed off-diagonal scale tau.

    Accepts a step only when the residual infinity-norm strictly decreases
    (backtracking halving); raises NoConvergence / SingularJacobian /
    NonRealSpectrum with the partial report attached where applicable.
    """
    ctl = spec.controls
    tol = ctl.resolved_tol(spec.spectrum)
    targets = spec.spectrum.sorted_values()
    sep_tol = SEP_TOL_REL * max(spec.spectrum.diameter, 1.0)
    x = seed_diagonals(spec.seed()) if x0 is None else np.array(x0, dtype=float, copy=True)
    trace = []
    fallback_used = False

    decomp = spectral_map(x, spec, tau)  # NonRealSpectrum propagates: continuation trigger
    perm, fb = match_targets(decomp.values, targets, sep_tol)
    fallback_used |= fb
    res = decomp.values[perm] - targets
    rnorm = float(np.max(np.abs(res)))
    trace.append(IterationRecord(0, rnorm, 0.0))

    for it in range(1, ctl.max_iter + 1):
        if rnorm <= tol:
            return _report(spec, x, [tau], trace, rnorm, True, fallback=fallback_used, tau=tau)
        P = assemble(x, spec, tau)
        if ctl.fd_jacobian:
            J = jacobian_fd(P, matching=perm, h=ctl.fd_step)
        else:
            J = jacobian_x(P, decomp, matching=perm)
        try:
            dx = np.linalg.solve(J, res)
        except np.linalg.LinAlgError as exc:
            raise SingularJacobian(f"Newton linear solve failed at iteration {it}: {exc}") from exc
        if not np.all(np.isfinite(dx)):
            raise SingularJacobian(f"Newton step non-finite at iteration {it}")
        damp = ctl.damping
        accepted = False
        for _ in range(MAX_BACKTRACKS + 1):
            x_try = x - damp * dx
            try:
                d_try = spectral_map(x_try, spec, tau)
            except (NonRealSpectrum, NearDegenerate):
                damp *= 0.5
                continue
            p_try, fb = match_targets(d_try.values, targets, sep_tol)
            r_try = d_try.values[p_try] - targets
            rn_try = float(np.max(np.abs(r_try)))
            if rn_try < rnorm:
                x, decomp, perm, res, rnorm = x_try, d_try, p_try, r_try, rn_try
                fallback_used |= fb
                trace.append(IterationRecord(it, rnorm, float(np.linalg.norm(damp * dx))))
                accepted = True
                break
            damp *= 0.5
        if not accepted:
            report = _report(spec, x, [tau], trace, rnorm, False,
                             failure="backtracking stalled", fallback=fallback_used, tau=tau)
            raise NoConvergence(
                f"backtracking stalled at residual {rnorm:.3g} (iteration {it})", report=report
            )
    if rnorm <= tol:
        return _report(spec, x, [tau], trace, rnorm, True, fallback=fallback_used, tau=tau)
    report = _report(spec, x, [tau], trace, rnorm, False,
                     failure=f"no convergence in {ctl.max_iter} iterations",
                     fallback=fallback_used, tau=tau)
    raise NoConvergence(f"residual {rnorm:.3g} > tol {tol:.3g} after {ctl.max_iter} iterations",
                        report=report)


def continuation_solve(spec: ProblemSpec) -> SolveReport:
    """Ramp the off-diagonals in over tau = j/steps with warm starts.

    Starts from controls.continuation_steps and doubles the step count on
    failure, up to MAX_CONTINUATION_STEPS.  On total failure returns a
    flagged partial report at the largest tau reached.
    """
    ctl = spec.controls
    steps = ctl.continuation_steps
    best_partial = None
    while True:
        x = seed_diagonals(spec.seed())
        path = []
        trace = []
        ok = True
        for j in range(1, steps + 1):
            tau = j / steps
            try:
                rep = newton_solve(spec, x0=x, tau=tau)
            except (NoConvergence, NonRealSpectrum, NearDegenerate, SingularJacobian) as exc:
                partial = getattr(exc, "report", None)
                if path:
                    # largest tau that did converge, with its polynomial
                    best_partial = _report(
                        spec, x, path, trace, trace[-1].residual if trace else np.inf,
                        False, failure=f"{type(exc).__name__} at tau={tau:.6g}: {exc}",
                        tau=path[-1],
                    )
                elif partial is not None:
                    best_partial = partial
                ok = False
                break
            x = rep.x
            path.append(tau)
            trace.extend(rep.iterations)
            last = rep
        if ok:
            return replace(last, continuation_path=tuple(path), iterations=tuple(trace))
        if steps >= MAX_CONTINUATION_STEPS:
            if best_partial is not None:
                return best_partial
            return _report(spec, seed_diagonals(spec.seed()), [], [], np.inf, False,
                           failure="continuation failed at every step count", tau=0.0)
        steps = min(2 * steps, MAX_CONTINUATION_STEPS)


@dataclass(frozen=True)
class VerifyReport:
    residual: float
    values: np.ndarray
    structure_detail: tuple[bool, ...]
    structure_ok: bool
    leading_ok: bool
    passed: bool
    failure: str | None = None


def verify(P: MatrixPolynomial, spec: ProblemSpec, value_tol: float = 1e-8) -> VerifyReport:
    """Independent check of a candidate polynomial against the problem:
    recompute proper values, compare to sorted targets, check every
    coefficient's graph and the leading coefficient."""
    targets = spec.spectrum.sorted_values()
    failure = None
    try:
        decomp = proper_values(P)
        values = decomp.values
        residual = float(np.max(np.abs(values - targets)))
    except (NonRealSpectrum, NearDegenerate) as exc:
        values = np.full_like(targets, np.nan)
        residual = float("inf")
        failure = f"{type(exc).__name__}: {exc}"
    detail, leading_ok = _structure_verdict(P, spec)
    structure_ok = all(detail) and leading_ok
    passed = failure is None and residual <= value_tol and structure_ok
    if failure is None and residual > value_tol:
        failure = f"spectral residual {residual:.3g} exceeds tolerance {value_tol:.3g}"
    elif failure is None and not structure_ok:
        failure = "structure mismatch"
    return VerifyReport(
        residual=residual,
        values=values,
        structure_detail=detail,
        structure_ok=structure_ok,
        leading_ok=leading_ok,
        passed=passed,
        failure=None if passed else failure,
    )
