"""Upper bounds for the axial distance of two-generator elliptic Kleinian groups.

The bounds come from the roots of Farey trace polynomials: the trace of the
commutator-like word attached to a rational number r/s is a polynomial in a
complex parameter mu, and its extremal root bounds the distance between the
axes of the two generators.
"""

from .farey import FareyFraction, enumerate_fractions, farey_word, sign_sequence
from .geometry import (
    AxialGeometry,
    complex_distance,
    cosh_two_delta,
    delta_one,
    fuchsian_deltas,
    gamma_from_mu,
    gap_closed_form,
)
from .polynomial import UniPoly
from .roots import RootFindingError, RootSet, find_roots, residual_certify
from .spectrum import (
    BoundRecord,
    best_bound,
    bound_for_fraction,
    ellipse_functional,
    riley_asymptotic,
    spectral_gap,
    table1,
    table2,
)
from .symalg import INF, deformation_expansion, farey_trace_polynomial, word_matrix
from .verify import rouche_root_stability

__version__ = "0.1.0"

__all__ = [
    "AxialGeometry",
    "BoundRecord",
    "FareyFraction",
    "INF",
    "RootFindingError",
    "RootSet",
    "UniPoly",
    "best_bound",
    "bound_for_fraction",
    "complex_distance",
    "cosh_two_delta",
    "deformation_expansion",
    "delta_one",
    "ellipse_functional",
    "enumerate_fractions",
    "farey_trace_polynomial",
    "farey_word",
    "find_roots",
    "fuchsian_deltas",
    "gamma_from_mu",
    "gap_closed_form",
    "residual_certify",
    "riley_asymptotic",
    "rouche_root_stability",
    "sign_sequence",
    "spectral_gap",
    "table1",
    "table2",
    "word_matrix",
]
