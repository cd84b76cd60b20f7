"""Structured inverse proper value problems for symmetric matrix polynomials.

Given nk distinct real targets, a positive diagonal leading coefficient,
and a graph prescribing the zero/nonzero pattern of every non-leading
coefficient, construct a real symmetric matrix polynomial with exactly
those proper values and exactly those patterns: seed a diagonal polynomial
carrying the targets, fix the off-diagonal entries to prescribed nonzero
values, and Newton-correct the diagonals using analytic spectral
sensitivities, with continuation in the off-diagonal scale when the direct
solve leaves the real-spectrum regime.
"""

from .errors import (
    AmbiguousMatching,
    DegenerateDenominator,
    GraphFormatError,
    InvariantViolation,
    LeadingCoefficientError,
    NearDegenerate,
    NoConvergence,
    NonRealSpectrum,
    ProblemFormatError,
    SingularJacobian,
    StructuredIEPError,
)
from .graphs import Graph, graph_of_matrix, matrix_of_graph, parse_graph
from .matpoly import (
    MatrixPolynomial,
    SpectralDecomposition,
    derivative,
    evaluate,
    linearize,
    proper_values,
)
from .seed import (
    LeadingDiagonal,
    TargetSpectrum,
    block_assignment,
    elementary_symmetric,
    seed_coefficients,
    seed_diagonals,
)
from .sensitivity import (
    PerturbationDirection,
    eigderivative,
    jacobian_fd,
    jacobian_x,
    seed_vandermonde_check,
)
from .solver import (
    IterationRecord,
    ProblemSpec,
    SolveReport,
    SolverControls,
    VerifyReport,
    assemble,
    continuation_solve,
    match_targets,
    newton_solve,
    spectral_map,
    verify,
)

__all__ = [
    "AmbiguousMatching", "DegenerateDenominator", "GraphFormatError",
    "InvariantViolation", "LeadingCoefficientError", "NearDegenerate",
    "NoConvergence", "NonRealSpectrum", "ProblemFormatError",
    "SingularJacobian", "StructuredIEPError",
    "Graph", "graph_of_matrix", "matrix_of_graph", "parse_graph",
    "MatrixPolynomial", "SpectralDecomposition", "derivative", "evaluate",
    "linearize", "proper_values",
    "LeadingDiagonal", "TargetSpectrum", "block_assignment",
    "elementary_symmetric", "seed_coefficients", "seed_diagonals",
    "PerturbationDirection", "eigderivative", "jacobian_fd", "jacobian_x",
    "seed_vandermonde_check",
    "IterationRecord", "ProblemSpec", "SolveReport", "SolverControls",
    "VerifyReport", "assemble", "continuation_solve", "match_targets",
    "newton_solve", "spectral_map", "verify",
]

__version__ = "0.1.0"
