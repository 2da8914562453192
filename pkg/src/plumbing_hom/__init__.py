"""Graded endomorphism algebras of cocores in 3-dimensional ADE plumbings.

Wrapped side: the path algebra K Omega_Q / J.  Quotient (cluster) side:
K Omega-bar_Q / J-bar, where the v-arrows are inverted.  The Ginzburg dg
algebra provides an independent check of the wrapped side.
"""

from .algebra import hom_basis, hom_dim, multiply, enumerate_paths, ideal_subspace, quotient_engine
from .cluster import (
    DegreeMismatch,
    NormalMonomial,
    NotAUPath,
    QuotientAlgebra,
    QuotientElement,
    TypeAModel,
    UnsupportedShape,
    canonical_form,
    gram_determinant,
    gram_matrix,
    named_element,
    pairing,
    quotient_algebra,
    quotient_dim,
    quotient_multiply,
    rewrite_trace,
    u_path_stats,
    u_path_vanishes,
    uv_generator_check,
)
from .ginzburg import ginzburg_cohomology_dim
from .paths import GradedElement, GradedQuiver, NotComposable, Path
from .presentations import NotTypeA, closed_form_presentation, e6_ring_dims, type_a_hilbert
from .quiver import (
    build_dynkin,
    build_ginzburg,
    build_omega,
    build_omega_bar,
    compute_shift_exponent,
    coxeter_data,
    involution,
    parse_quiver_name,
    quiver_from_config,
)

__version__ = "0.1.0"
