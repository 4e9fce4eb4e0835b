"""Continued fractions, polysquare surfaces and superdensity certificates."""

from ._superdense import (
    BudgetError,
    SingularityError,
    Slope,
    SuperdenseError,
    Surface,
    certify,
    chain_cover_audit,
    convergents,
    covering_radius,
    gap_product_scan,
    gap_spectrum,
    iet_orbit,
    run_cli,
)

__all__ = [
    "BudgetError",
    "SingularityError",
    "Slope",
    "SuperdenseError",
    "Surface",
    "certify",
    "chain_cover_audit",
    "convergents",
    "covering_radius",
    "gap_product_scan",
    "gap_spectrum",
    "iet_orbit",
    "run_cli",
]
