"""Dedal polygons, midpoint-map dynamics, and the polygonal outer billiard."""

from .polygon import (
    DegeneracyReport,
    Polygon,
    SimilarityWitness,
    center,
    centroid,
    cyclic_shift,
    degeneracy,
    diameter,
    is_convex,
    is_simple,
    reversed_shift,
    similar,
    star_similar,
    vertex_distance,
)
from .spectral import (
    ProjectiveClass,
    SpectralCoefficients,
    basis_vector,
    class_distance,
    class_from_coefficients,
    decompose,
    eigenvalue,
    project_class,
    reconstruct,
    unit_root,
)
from .midpoint import (
    DedalFamily,
    NoDedalError,
    dedal,
    dedal_even,
    dedal_odd,
    dedal_through_vertex,
    develop,
    existence_defect,
    family_member,
)
from .classify import (
    RegularityResult,
    SimilarDedalClass,
    classification_report,
    dedal_is_star_similar,
    is_affinely_regular,
    is_regular,
    regularity,
    similar_dedal_class,
    similarity_witness,
)
from .dynamics import (
    AttractorReport,
    IterationTrace,
    attractor_index,
    convexification_ensemble,
    convexification_index,
    cycle_scalar,
    decay_report,
    iterate,
    verify_n_periodicity,
)
from .billiard import (
    InteriorPointError,
    OrbitTrace,
    SingularPointError,
    Termination,
    convex_hull,
    dual_map,
    find_fagnano,
    orbit,
    support_vertex,
    verify_fagnano,
)
from .svg import render_svg

__version__ = "0.1.0"
