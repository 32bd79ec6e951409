"""Periodic-point invariants of self-maps on wedge sums, from their action on homology."""

from .invariants import (
    AperSet,
    CrossCheckError,
    NotApplicable,
    aper_upto,
    cross_check,
    dold,
    dold_by_reduction,
    dold_sequence,
    euler_product_check,
    lefschetz_by_reduction,
    lefschetz_direct,
    lefschetz_sequence,
    zeta_by_reduction,
    zeta_det,
    zeta_series,
)
from .torus import (
    ToralWedgeSpec,
    build_toral_wedge,
    check_h1_realizability,
    companion_gc,
    companion_scan,
    is_quasi_unipotent,
    lppf_report,
)
from .wedge import (
    GradedLinearMap,
    SpaceSignature,
    StructureReport,
    WedgeMapHomology,
    assemble,
    classify,
    decompose,
    iterate,
)

__version__ = "0.1.0"
