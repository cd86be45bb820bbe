"""Exact cut loci and farthest points on flat tori and flat Klein bottles."""

from .canonicalize import (
    KleinCanonicalPoint,
    KleinFrame,
    ReductionResult,
    klein_canonicalize,
    reduce_basis,
)
from .cutlocus import (
    CutLocusGraph,
    FarthestReport,
    KleinCase,
    KleinCutData,
    LambdaOutOfRange,
    TorusCutData,
    cut_locus,
    farthest_points,
    klein_cut_data,
    torus_cut_data,
)
from .orbit import DistanceResult, OrbitSet, RadiusTooLarge, distance, orbit
from .surface import (
    AngleOutOfRange,
    DeckElement,
    DegenerateBasis,
    GeometryError,
    KleinSpec,
    NonPositiveSide,
    NotCanonical,
    PlanePoint,
    SurfacePoint,
    TorusSpec,
    deck_apply,
    make_klein_spec,
    make_torus_spec,
    point,
    wrap,
)

__version__ = "0.1.0"
