"""Loopless simple graphs on labeled vertices and their symmetric matrix patterns.

Vertices are 1-based in every external format and converted to 0-based
indices only inside matrix routines.  Edges are stored canonically as
(i, j) with i < j, sorted lexicographically; that order also fixes how
off-diagonal value vectors are indexed everywhere else in the package.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import GraphFormatError


@dataclass(frozen=True)
class Graph:
    """A loopless undirected graph: the zero/nonzero pattern of one coefficient."""

    n: int
    edges: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        if self.n < 1:
            raise GraphFormatError(f"vertex count must be positive, got {self.n}")
        seen = set()
        canon = []
        for e in self.edges:
            i, j = e
            if i == j:
                raise GraphFormatError(f"self-loop at vertex {i}")
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise GraphFormatError(f"edge {{{i},{j}}} out of range for n={self.n}")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise GraphFormatError(f"duplicate edge {{{key[0]},{key[1]}}}")
            seen.add(key)
            canon.append(key)
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    @property
    def num_edges(self) -> int:
        return len(self.edges)


def parse_graph(text: str) -> Graph:
    """Parse an edge-list document: first line ``n <int>``, then ``i j`` lines.

    Lines starting with ``#`` are comments.  Rejects self-loops, duplicate
    edges, and out-of-range vertices.
    """
    n = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise GraphFormatError(f"line {lineno}: expected 'n <int>', got {line!r}")
            try:
                n = int(parts[1])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: vertex count {parts[1]!r} is not an integer")
            continue
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'i j', got {line!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer vertex in {line!r}")
        pairs.append((i, j))
    if n is None:
        raise GraphFormatError("missing 'n <int>' header line")
    return Graph(n=n, edges=tuple(pairs))


def matrix_of_graph(g: Graph, diag, offdiag) -> np.ndarray:
    """Symmetric matrix with ``diag`` on the diagonal and ``offdiag`` on the
    edges of ``g`` (canonical edge order); structural zeros elsewhere."""
    diag = np.asarray(diag, dtype=float)
    offdiag = np.asarray(offdiag, dtype=float)
    if diag.shape != (g.n,):
        raise ValueError(f"diag has length {diag.shape}, expected ({g.n},)")
    if offdiag.shape != (g.num_edges,):
        raise ValueError(f"offdiag has length {offdiag.shape}, expected ({g.num_edges},)")
    A = np.zeros((g.n, g.n))
    A[np.diag_indices(g.n)] = diag
    for val, (i, j) in zip(offdiag, g.edges):
        A[i - 1, j - 1] = val
        A[j - 1, i - 1] = val
    return A


def graph_of_matrix(A: np.ndarray, zero_tol: float = 0.0) -> Graph:
    """Graph with edge {i,j} iff |A_ij| > zero_tol (i != j); diagonal ignored.

    The default ``zero_tol=0`` is exact: constructed matrices carry
    structural zeros exactly, so no fuzz is needed.
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    asym = np.max(np.abs(A - A.T)) if A.size else 0.0
    if asym > zero_tol:
        raise ValueError(f"matrix asymmetry {asym:.3g} exceeds zero_tol {zero_tol:.3g}")
    n = A.shape[0]
    edges = [
        (i + 1, j + 1)
        for i in range(n)
        for j in range(i + 1, n)
        if abs(A[i, j]) > zero_tol
    ]
    return Graph(n=n, edges=tuple(edges))
