"""Folded ribbon knot constructions: escape accordions, half-wraps and clasps.

Width is fixed at 1, so every reported length is a ribbonlength.
"""
from .analysis import (BandType, RibbonlengthReport, analyze, band_type, comparison_table,
                       derivative_roots, limit_rib, optimal_theta, rib_theta_derivative,
                       ribbon_linking_number, ribbonlength)
from .constructions import (ConstructionParams, Family, Parity, RibbonDiagram, build,
                            build_moebius, build_torus, build_twist, clasp_distances,
                            family_rib_formula)
from .errors import (ConstraintError, DocumentParseError, DomainError, NumericalError,
                     RibbonError, SchemaVersionError, UnsupportedInputError)
from .export import (CreasePattern, DiagramDocument, crease_pattern, from_document,
                     render_crease, render_diagram, table_csv, to_document)
from .geometry import (FoldKind, FoldSpec, PolylinePath, Side, ZigzagParams, build_zigzag,
                       clearance_check, escape_min_kd, path_length, turn_at_fold, v_unit_span)

__all__ = [name for name in dir() if not name.startswith("_")]
