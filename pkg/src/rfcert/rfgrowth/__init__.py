"""Brute-force residual-finiteness oracle and growth curves."""

from .catalog import (
    ANY,
    EXT_BOUNDED,
    PRODUCT_LIE,
    SIMPLE_LIE,
    CatalogEntry,
    CatalogError,
    ClassFilter,
    QuotientCatalog,
    default_catalog,
    load_catalog_file,
    parse_catalog_file,
    parse_class,
)
from .curves import OracleSource, PipelineSource, PowerFit, curve_csv, fit_polynomial, rf_curve
from .invariance import (
    AutRule,
    CoreResult,
    OrbitUnbounded,
    RuleError,
    invariant_core,
    joint_image_order,
    kernel_contained,
    kernel_invariant,
    kernels_equal,
    nielsen_rules,
    parse_aut_rules,
    project_to_factor,
    substitute,
)
from .oracle import BudgetExceeded, DepthReport, Hom, NotSeparated, depth, enumerate_homs

__all__ = [
    "ANY", "EXT_BOUNDED", "PRODUCT_LIE", "SIMPLE_LIE",
    "AutRule", "BudgetExceeded", "CatalogEntry", "CatalogError", "ClassFilter", "CoreResult",
    "DepthReport", "Hom", "NotSeparated", "OracleSource", "OrbitUnbounded", "PipelineSource",
    "PowerFit", "QuotientCatalog", "RuleError",
    "curve_csv", "default_catalog", "depth", "enumerate_homs", "fit_polynomial", "invariant_core",
    "joint_image_order", "kernel_contained", "kernel_invariant", "kernels_equal", "load_catalog_file",
    "nielsen_rules", "parse_aut_rules", "parse_catalog_file", "parse_class", "project_to_factor",
    "rf_curve", "substitute",
]
