"""JSON problem and polynomial files.

Problem schema (see schemas/problem.schema.json):

    {
      "n": 4, "k": 2,
      "proper_values": [nk doubles, input order],
      "leading": [n positive doubles],
      "graphs": [k entries: {"edges": [[i, j], ...]} or an edge-list string],
      "epsilon": 0.5,
      "offdiag_overrides": [per-graph arrays or null],      // optional
      "controls": {"newton_tol": ..., "max_iter": ..., ...}  // optional
    }

Polynomial schema: {"n": ..., "k": ..., "coefficients": [k+1 row-major matrices]}.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import GraphFormatError, InvariantViolation, ProblemFormatError
from .graphs import Graph, parse_graph
from .matpoly import MatrixPolynomial
from .seed import LeadingDiagonal, TargetSpectrum
from .solver import ProblemSpec, SolverControls

_CONTROL_FIELDS = {
    "newton_tol", "max_iter", "continuation_steps", "damping",
    "fd_jacobian", "fd_step", "group_sorted",
}


def _require(doc: dict, field: str, kind):
    if field not in doc:
        raise ProblemFormatError(f"missing field {field!r}")
    val = doc[field]
    if kind is float and isinstance(val, int):
        val = float(val)
    if not isinstance(val, kind):
        raise ProblemFormatError(f"field {field!r}: expected {kind.__name__}, got {type(val).__name__}")
    return val


def _parse_graph_entry(entry, n: int, idx: int) -> Graph:
    try:
        if isinstance(entry, str):
            g = parse_graph(entry)
            if g.n != n:
                raise ProblemFormatError(f"graphs[{idx}]: declares n={g.n}, problem has n={n}")
            return g
        if isinstance(entry, dict):
            edges = entry.get("edges", [])
            if not isinstance(edges, list):
                raise ProblemFormatError(f"graphs[{idx}].edges: expected a list")
            pairs = []
            for e in edges:
                if not (isinstance(e, list) and len(e) == 2):
                    raise ProblemFormatError(f"graphs[{idx}]: edge {e!r} is not a pair")
                pairs.append((int(e[0]), int(e[1])))
            return Graph(n=n, edges=tuple(pairs))
    except GraphFormatError as exc:
        raise ProblemFormatError(f"graphs[{idx}]: {exc}") from exc
    raise ProblemFormatError(f"graphs[{idx}]: expected an object with 'edges' or an edge-list string")


def load_problem(path: str, overrides: dict | None = None) -> ProblemSpec:
    """Load and validate a problem file; ``overrides`` patches control fields."""
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ProblemFormatError(f"{path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ProblemFormatError(f"{path}: top level must be an object")

    n = _require(doc, "n", int)
    k = _require(doc, "k", int)
    values = _require(doc, "proper_values", list)
    leading = _require(doc, "leading", list)
    graphs_raw = _require(doc, "graphs", list)
    if len(graphs_raw) != k:
        raise ProblemFormatError(f"graphs: expected {k} entries, got {len(graphs_raw)}")
    epsilon = doc.get("epsilon", 0.5)
    if not isinstance(epsilon, (int, float)):
        raise ProblemFormatError("field 'epsilon': expected a number")

    ctl_doc = dict(doc.get("controls", {}))
    unknown = set(ctl_doc) - _CONTROL_FIELDS
    if unknown:
        raise ProblemFormatError(f"controls: unknown field(s) {sorted(unknown)}")
    if overrides:
        ctl_doc.update({k_: v for k_, v in overrides.items() if v is not None})

    graphs = tuple(_parse_graph_entry(g, n, i) for i, g in enumerate(graphs_raw))

    offdiag = doc.get("offdiag_overrides")
    if offdiag is not None:
        if not isinstance(offdiag, list) or len(offdiag) != k:
            raise ProblemFormatError(f"offdiag_overrides: expected {k} entries")
        offdiag = tuple(
            np.asarray(y, dtype=float) if y is not None
            else np.full(graphs[s].num_edges, float(epsilon))
            for s, y in enumerate(offdiag)
        )

    spectrum = TargetSpectrum(values=np.asarray(values, dtype=float), n=n, k=k)
    lead = LeadingDiagonal(alpha_k=np.asarray(leading, dtype=float))
    controls = SolverControls(**ctl_doc)
    return ProblemSpec(
        spectrum=spectrum, lead=lead, graphs=graphs,
        epsilon=float(epsilon), offdiag_values=offdiag, controls=controls,
    )


def load_polynomial(path: str) -> MatrixPolynomial:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ProblemFormatError(f"{path}: {exc}") from exc
    coeffs = _require(doc, "coefficients", list)
    try:
        mats = tuple(np.asarray(c, dtype=float) for c in coeffs)
        return MatrixPolynomial(mats)
    except (ValueError, TypeError) as exc:
        raise ProblemFormatError(f"{path}: bad coefficient matrices: {exc}") from exc


def spec_to_config(spec: ProblemSpec) -> dict:
    """Fully resolved configuration embedded in every report for reproducibility."""
    return {
        "n": spec.n,
        "k": spec.k,
        "proper_values": spec.spectrum.values.tolist(),
        "leading": spec.lead.alpha_k.tolist(),
        "graphs": [{"edges": [list(e) for e in g.edges]} for g in spec.graphs],
        "epsilon": spec.epsilon,
        "offdiag_values": [y.tolist() for y in spec.offdiag_values],
        "controls": {
            "newton_tol": spec.controls.resolved_tol(spec.spectrum),
            "max_iter": spec.controls.max_iter,
            "continuation_steps": spec.controls.continuation_steps,
            "damping": spec.controls.damping,
            "fd_jacobian": spec.controls.fd_jacobian,
            "fd_step": spec.controls.fd_step,
            "group_sorted": spec.controls.group_sorted,
        },
    }


def polynomial_to_doc(P: MatrixPolynomial) -> dict:
    return {
        "n": P.n,
        "k": P.degree,
        "coefficients": [c.tolist() for c in P.coeffs],
    }
