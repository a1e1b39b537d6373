"""Exact fixed-point models of toric variety cohomology.

Given a simple smooth lattice polytope and a generic integer direction
gamma, this package computes the function f_rho attached to each facet
normal, the filtration it induces on the algebra of functions on the
fixed points, the graded ring with its structure constants, Morse
indices, and a piecewise polynomial realization with its averaging map.
All arithmetic is exact rational.
"""

from .exactnum import (NoSolution, RatMatrix, RowSpan, Singular, ZeroVector,
                       dot, primitive, solve)
from .polytope import (BadParams, DocumentError, Edge, Facet, Fan,
                       InvalidPolytope, Polytope, SmoothnessResult, UnknownName,
                       ValidationReport, builtin, builtin_from_uri, edges,
                       is_smooth, make_polytope, normal_fan, polytope_from_doc,
                       polytope_to_doc, require_valid, validate)
from .fixedpoints import (FixedPointTable, GenericityResult, NotGeneric,
                          NotIncident, NotSmooth, edge_vector, f_table,
                          is_generic, morse_indices, sample_generic,
                          table_to_doc, theta)
from .graded import (FiltrationError, GradedReport, GrBasis, GrProduct,
                     RelationReport, betti_from_morse, degree_cap,
                     filtration_ranks, gr_basis_to_doc, gr_structure,
                     graded_report, graded_to_doc, h_vector, minimal_nonfaces,
                     monomials_of_degree, relations_to_doc, sr_hilbert,
                     verify_relations)
from .brion import (BrionReport, ContinuityResult, NotHomogeneous,
                    PiecewisePoly, Wall, directional_derivative,
                    global_piecewise, is_continuous, make_g, phi,
                    piecewise_to_doc, poly_mul, verify_brion, walls)

__version__ = "0.1.0"

__all__ = [
    "BadParams", "BrionReport", "ContinuityResult", "DocumentError", "Edge",
    "Facet", "Fan", "FiltrationError", "FixedPointTable", "GenericityResult",
    "GrBasis", "GrProduct", "GradedReport", "InvalidPolytope", "NoSolution",
    "NotGeneric", "NotHomogeneous", "NotIncident", "NotSmooth",
    "PiecewisePoly", "Polytope", "RatMatrix", "RelationReport", "RowSpan",
    "Singular", "SmoothnessResult", "UnknownName", "ValidationReport", "Wall",
    "ZeroVector", "betti_from_morse", "builtin", "builtin_from_uri",
    "degree_cap", "directional_derivative", "dot", "edge_vector", "edges",
    "f_table", "filtration_ranks", "global_piecewise", "gr_basis_to_doc",
    "gr_structure", "graded_report", "graded_to_doc", "h_vector",
    "is_continuous", "is_generic", "is_smooth", "make_g", "make_polytope",
    "minimal_nonfaces", "monomials_of_degree", "morse_indices", "normal_fan",
    "phi", "piecewise_to_doc", "poly_mul", "polytope_from_doc",
    "polytope_to_doc", "primitive", "relations_to_doc", "require_valid",
    "sample_generic", "solve", "sr_hilbert", "table_to_doc", "theta",
    "validate", "verify_brion", "verify_relations", "walls",
]
