"""Matrix polynomials: evaluation, differentiation, linearization, proper values.

A degree-k matrix polynomial is P(z) = sum_s A_s z^s with real symmetric
n x n coefficients.  Its proper values are the zeros of det P(z); proper
vectors are the corresponding null directions.  This package operates in
the all-real, simple-spectrum regime; a non-real or near-multiple spectrum
is reported as an error, not a result.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LeadingCoefficientError, NearDegenerate, NonRealSpectrum

REAL_TOL_DEFAULT = 1e-8
SEP_TOL_REL = 1e-10


@dataclass(frozen=True)
class MatrixPolynomial:
    coeffs: tuple[np.ndarray, ...]  # A_0 .. A_k

    def __post_init__(self):
        coeffs = tuple(np.asarray(c, dtype=float) for c in self.coeffs)
        if not coeffs:
            raise ValueError("need at least one coefficient")
        n = coeffs[0].shape[0]
        for c in coeffs:
            if c.shape != (n, n):
                raise ValueError(f"coefficient shape {c.shape} != ({n},{n})")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def n(self) -> int:
        return self.coeffs[0].shape[0]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient_scale(self, z: float) -> float:
        """sum_s ||A_s||_F |z|^s, the natural residual scale at z."""
        return sum(np.linalg.norm(c) * abs(z) ** s for s, c in enumerate(self.coeffs))


@dataclass(frozen=True)
class SpectralDecomposition:
    """Matched (value, unit vector) pairs, values strictly ascending."""

    values: np.ndarray
    vectors: np.ndarray  # row q is the unit proper vector for values[q]

    def __len__(self):
        return len(self.values)

    def pairs(self):
        return list(zip(self.values, self.vectors))


def evaluate(P: MatrixPolynomial, z: float) -> np.ndarray:
    """Horner evaluation of P at z."""
    out = np.array(P.coeffs[-1], dtype=float, copy=True)
    for c in reversed(P.coeffs[:-1]):
        out = out * z + c
    return out


def derivative(P: MatrixPolynomial) -> MatrixPolynomial:
    """Termwise derivative; a constant polynomial differentiates to zero."""
    if P.degree == 0:
        return MatrixPolynomial((np.zeros((P.n, P.n)),))
    return MatrixPolynomial(tuple(s * P.coeffs[s] for s in range(1, P.degree + 1)))


def _check_leading(P: MatrixPolynomial) -> np.ndarray:
    Ak = P.coeffs[-1]
    offdiag = Ak - np.diag(np.diag(Ak))
    if np.any(offdiag != 0.0):
        raise LeadingCoefficientError("leading coefficient must be diagonal")
    d = np.diag(Ak)
    if np.any(d <= 0.0):
        raise LeadingCoefficientError("leading diagonal must be strictly positive")
    return d


def linearize(P: MatrixPolynomial) -> np.ndarray:
    """Block companion matrix of the monic reduction A_k^{-1} P(z).

    Requires a diagonal positive leading coefficient.  The companion
    eigenvalues are exactly the proper values of P with multiplicity, and a
    companion eigenvector stacks (v, z v, ..., z^{k-1} v).
    """
    lead = _check_leading(P)
    n, k = P.n, P.degree
    if k == 0:
        raise ValueError("cannot linearize a degree-0 polynomial")
    C = np.zeros((n * k, n * k))
    for i in range(k - 1):
        C[i * n:(i + 1) * n, (i + 1) * n:(i + 2) * n] = np.eye(n)
    for s in range(k):
        C[(k - 1) * n:, s * n:(s + 1) * n] = -P.coeffs[s] / lead[:, None]
    return C


def _refine_vector(P: MatrixPolynomial, lam: float, v: np.ndarray) -> np.ndarray:
    """One inverse-iteration step on P(lam); companion vectors lose accuracy
    for large |lam|, and Jacobian entries depend quadratically on v."""
    A = evaluate(P, lam)
    try:
        w = np.linalg.solve(A, v)
    except np.linalg.LinAlgError:
        return v
    norm = np.linalg.norm(w)
    if not np.isfinite(norm) or norm == 0.0:
        return v
    return w / norm


def proper_values(
    P: MatrixPolynomial,
    real_tol: float = REAL_TOL_DEFAULT,
    sep_tol: float | None = None,
) -> SpectralDecomposition:
    """All nk proper values of P, ascending, with refined unit proper vectors.

    Raises NonRealSpectrum if any companion eigenvalue has relative
    imaginary part above ``real_tol``, and NearDegenerate if two returned
    values are closer than ``sep_tol`` (default SEP_TOL_REL times the
    spectrum diameter).  Both signal that the simple-real regime the rest
    of the package relies on has been left.
    """
    C = linearize(P)
    w, V = np.linalg.eig(C)
    bad = np.abs(w.imag) > real_tol * (1.0 + np.abs(w.real))
    if np.any(bad):
        raise NonRealSpectrum(
            f"{int(bad.sum())} eigenvalue(s) with non-negligible imaginary part "
            f"(max |imag| = {np.max(np.abs(w.imag)):.3g})",
            max_imag=float(np.max(np.abs(w.imag))),
        )
    vals = w.real
    order = np.argsort(vals, kind="stable")
    vals = vals[order]
    if sep_tol is None:
        diam = vals[-1] - vals[0] if len(vals) > 1 else 0.0
        sep_tol = SEP_TOL_REL * max(diam, 1.0)
    gaps = np.diff(vals)
    if len(gaps) and np.min(gaps) < sep_tol:
        q = int(np.argmin(gaps))
        raise NearDegenerate(
            f"proper values {vals[q]:.12g} and {vals[q + 1]:.12g} closer than sep_tol {sep_tol:.3g}"
        )
    n = P.n
    vectors = np.empty((len(vals), n))
    for q, idx in enumerate(order):
        v = V[:n, idx]
        if np.max(np.abs(v.imag)) > 0:
            v = v.real if np.linalg.norm(v.real) >= np.linalg.norm(v.imag) else v.imag
        else:
            v = v.real
        nv = np.linalg.norm(v)
        if nv == 0.0:
            v = np.ones(n)
            nv = np.linalg.norm(v)
        v = _refine_vector(P, vals[q], v / nv)
        # deterministic sign: largest-magnitude component positive
        if v[np.argmax(np.abs(v))] < 0:
            v = -v
        vectors[q] = v
    return SpectralDecomposition(values=vals, vectors=vectors)
