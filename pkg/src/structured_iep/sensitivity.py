"""First-order sensitivities of simple proper values and the spectral Jacobian.

For a simple proper pair (lambda, v) of P and a symmetric one-slot
perturbation direction B(z) = z^s * E (E with a single unit diagonal entry,
or a symmetric pair of unit off-diagonal entries), the derivative of the
tracked proper value is the Rayleigh-quotient formula

    d lambda = -(v^T B(lambda) v) / (v^T P'(lambda) v).

At a diagonal seed with v = e_r this reduces to -lambda^s / P'(lambda)_rr
for the (r,r) diagonal slot and to exactly 0 for every off-diagonal slot.
Away from the seed the formula is the standard simple-eigenvalue one and is
cross-validated against finite differences (jacobian_fd) rather than taken
on faith.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDenominator
from .matpoly import MatrixPolynomial, SpectralDecomposition, derivative, evaluate, proper_values
from .seed import TargetSpectrum, block_assignment

DENOM_TOL = 1e-10


@dataclass(frozen=True)
class PerturbationDirection:
    """Perturb coefficient s: either diagonal entry r (1-based) or the
    symmetric off-diagonal pair {i, j}."""

    s: int
    diag: int | None = None
    edge: tuple[int, int] | None = None

    def __post_init__(self):
        if (self.diag is None) == (self.edge is None):
            raise ValueError("specify exactly one of diag or edge")


def eigderivative(
    P: MatrixPolynomial,
    pair: tuple[float, np.ndarray],
    direction: PerturbationDirection,
    denom_tol: float = DENOM_TOL,
) -> float:
    """Derivative of the simple proper value in ``pair`` along ``direction``."""
    if not (0 <= direction.s < P.degree):
        raise ValueError(f"power index {direction.s} out of range 0..{P.degree - 1}")
    lam, v = pair
    Pd = derivative(P)
    den = float(v @ evaluate(Pd, lam) @ v)
    if abs(den) < denom_tol * Pd.coefficient_scale(lam):
        raise DegenerateDenominator(
            f"|v^T P'(lambda) v| = {abs(den):.3g} at lambda = {lam:.12g}: value numerically non-simple"
        )
    zs = lam ** direction.s
    if direction.diag is not None:
        num = zs * v[direction.diag - 1] ** 2
    else:
        i, j = direction.edge
        # symmetric perturbation carries two unit entries, hence the factor 2
        num = 2.0 * zs * v[i - 1] * v[j - 1]
    return -num / den


def jacobian_x(
    P: MatrixPolynomial,
    decomp: SpectralDecomposition,
    matching: np.ndarray | None = None,
) -> np.ndarray:
    """Jacobian of the ascending proper values w.r.t. the kn diagonal unknowns.

    Row q is the (matched) q-th pair; column s*n + r is diagonal entry r of
    coefficient s.  ``matching`` maps row index to position in ``decomp``
    (identity when omitted).
    """
    n, k = P.n, P.degree
    nk = n * k
    if len(decomp) != nk:
        raise ValueError(f"decomposition has {len(decomp)} pairs, expected {nk}")
    if matching is None:
        matching = np.arange(nk)
    Pd = derivative(P)
    J = np.empty((nk, nk))
    for row in range(nk):
        lam = decomp.values[matching[row]]
        v = decomp.vectors[matching[row]]
        den = float(v @ evaluate(Pd, lam) @ v)
        if abs(den) < DENOM_TOL * Pd.coefficient_scale(lam):
            raise DegenerateDenominator(
                f"row {row}: |v^T P'(lambda) v| = {abs(den):.3g} at lambda = {lam:.12g}"
            )
        vsq = v ** 2
        for s in range(k):
            J[row, s * n:(s + 1) * n] = -(lam ** s) * vsq / den
    return J


def jacobian_fd(
    P: MatrixPolynomial,
    matching: np.ndarray | None = None,
    h: float = 1e-6,
) -> np.ndarray:
    """Central-difference Jacobian: re-solve proper values with each diagonal
    unknown perturbed by +-h, rows re-matched by ascending order."""
    if h <= 0:
        raise ValueError("step must be positive")
    n, k = P.n, P.degree
    nk = n * k
    if matching is None:
        matching = np.arange(nk)
    J = np.empty((nk, nk))
    for s in range(k):
        for r in range(n):
            col = s * n + r
            plus = _perturbed_values(P, s, r, +h)
            minus = _perturbed_values(P, s, r, -h)
            J[:, col] = (plus[matching] - minus[matching]) / (2.0 * h)
    return J


def _perturbed_values(P: MatrixPolynomial, s: int, r: int, delta: float) -> np.ndarray:
    coeffs = [np.array(c, copy=True) for c in P.coeffs]
    coeffs[s][r, r] += delta
    return proper_values(MatrixPolynomial(tuple(coeffs))).values


def seed_vandermonde_check(
    P: MatrixPolynomial,
    spec: TargetSpectrum,
    decomp: SpectralDecomposition,
    J: np.ndarray,
) -> dict:
    """Structure check of the Jacobian at a diagonal seed.

    After negating, scaling row q by (P'(lambda_q))_rr, and permuting rows
    into target blocks and columns into diagonal-entry blocks, the Jacobian
    must be block diagonal with n Vandermonde blocks (1, lam, ..., lam^(k-1)).
    Returns the scaled matrix, the expected Vandermonde form, the maximum
    relative entrywise deviation, and off-block leakage.
    """
    n, k = spec.n, spec.k
    nk = n * k
    assign = block_assignment(spec)
    # row for target q = position of lambda_q in the ascending decomposition
    order = np.argsort(spec.values, kind="stable")
    row_of_target = np.empty(nk, dtype=int)
    row_of_target[order] = np.arange(nk)
    Pd = derivative(P)
    scaled = np.empty((nk, nk))
    expected = np.zeros((nk, nk))
    for q in range(1, nk + 1):
        r = assign[q]
        row = row_of_target[q - 1]
        lam = decomp.values[row]
        den = evaluate(Pd, lam)[r - 1, r - 1]
        for s in range(k):
            for rp in range(1, n + 1):
                scaled[q - 1, (rp - 1) * k + s] = -J[row, s * n + (rp - 1)] * den
        for s in range(k):
            expected[q - 1, (r - 1) * k + s] = lam ** s
    # relative entrywise deviation: powers of lambda grow quickly, so an
    # absolute comparison would just measure magnitude times roundoff
    diff = np.abs(scaled - expected) / np.maximum(1.0, np.abs(expected))
    offblock = np.zeros_like(scaled)
    for q in range(1, nk + 1):
        r = assign[q]
        row = q - 1
        for rp in range(1, n + 1):
            if rp != r:
                offblock[row, (rp - 1) * k: rp * k] = scaled[row, (rp - 1) * k: rp * k]
    return {
        "scaled": scaled,
        "expected": expected,
        "max_entry_error": float(np.max(diff)),
        "max_offblock": float(np.max(np.abs(offblock))),
        "condition": float(np.linalg.cond(J)),
    }
