"""Hypersurface families through a common isogeodesic curve in the
4-dimensional Galilean space: moving frames, admissibility checks, and
3-space mesh projection."""

__version__ = "0.1.0"

from .curve import (CurveSpec, DegenerateCurvatureError, DegenerateCurveError,
                    DegenerateTorsionError, FrenetFrame, frenet_frame,
                    verify_frenet_odes)
from .exprcalc import EvalDomainError, Expr, ParseError, diff, evaluate, parse
from .gvec import GalileanVec4, det4, gcross, gdot, gnorm
from .hypersurface import (HypersurfacePatch, ValidationReport,
                           anchor_normal_frame, isotropic_normal,
                           partials_frame, surface_point,
                           validate_isogeodesic)
from .marching import (ConditionReport, FactoredScale, GenericScale,
                       check_type_a, check_type_b, check_type_c,
                       eval_coeffs, to_generic)
from .projection import (Projection, SampleGrid, export_csv, export_obj,
                         project_point, sample)

__all__ = [
    "CurveSpec", "DegenerateCurvatureError", "DegenerateCurveError",
    "DegenerateTorsionError", "FrenetFrame", "frenet_frame",
    "verify_frenet_odes", "EvalDomainError", "Expr", "ParseError", "diff",
    "evaluate", "parse", "GalileanVec4", "det4", "gcross", "gdot", "gnorm",
    "HypersurfacePatch", "ValidationReport", "anchor_normal_frame",
    "isotropic_normal", "partials_frame", "surface_point",
    "validate_isogeodesic", "ConditionReport", "FactoredScale",
    "GenericScale", "check_type_a", "check_type_b", "check_type_c",
    "eval_coeffs", "to_generic", "Projection", "SampleGrid", "export_csv",
    "export_obj", "project_point", "sample",
]
