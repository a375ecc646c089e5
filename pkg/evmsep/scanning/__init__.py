"""
Parameter-grid scans over the state families.

A scan evaluates the separability inequality (and optionally PPT) at every
grid point, estimates the detection boundary along the last axis and writes
CSV tables. The reproduction bundles are fixed scans over the standard grids.
"""

from evmsep.scanning.boundary import DEFAULT_BISECTION_TOL, find_boundaries
from evmsep.scanning.export import boundaries_path, format_cell, write_boundaries, write_scan, write_table
from evmsep.scanning.grid import (
    DEFAULT_STEP_1D,
    DEFAULT_STEP_2D,
    MAX_AXIS_POINTS,
    parse_int_range,
    parse_range,
    unit_axis,
    with_values,
)
from evmsep.scanning.registry import DEFAULT_MATRIX_PATH_MAX_D, ScanFamily, family_registry, get_scan_family
from evmsep.scanning.reproduce import DEFAULT_MASK_MAX_D, DEFAULT_THRESHOLD_MAX_D, Reproducer
from evmsep.scanning.runner import GridScanner, grid_points

__all__ = [
    # Configuration
    "DEFAULT_STEP_1D",
    "DEFAULT_STEP_2D",
    "DEFAULT_MATRIX_PATH_MAX_D",
    "DEFAULT_BISECTION_TOL",
    "DEFAULT_MASK_MAX_D",
    "DEFAULT_THRESHOLD_MAX_D",
    "MAX_AXIS_POINTS",
    # Grid
    "parse_range",
    "parse_int_range",
    "unit_axis",
    "with_values",
    "grid_points",
    # Evaluation
    "ScanFamily",
    "family_registry",
    "get_scan_family",
    "GridScanner",
    "find_boundaries",
    # Output
    "write_scan",
    "write_boundaries",
    "write_table",
    "format_cell",
    "boundaries_path",
    "Reproducer",
]
