"""
Reproduction bundles for the family detection regions.

Each target writes its CSV tables into one output directory. Where the
computed values disagree with the reference figures the tables still hold the
computed values; the disagreement is logged as a warning and written next to
them.
"""

import itertools
import logging
from pathlib import Path
from typing import Callable

from evmsep.criteria import (
    horodecki_min_p,
    isotropic_threshold,
    upb_threshold,
    werner_threshold,
)
from evmsep.models.criteria import DEFAULT_TOLERANCES, Tolerances
from evmsep.models.family import FamilyKind
from evmsep.models.scan import ReproduceTarget, ScanResult
from evmsep.scanning.boundary import DEFAULT_BISECTION_TOL
from evmsep.scanning.export import write_scan, write_table
from evmsep.scanning.grid import DEFAULT_STEP_1D, DEFAULT_STEP_2D, parse_int_range, unit_axis, with_values
from evmsep.scanning.registry import DEFAULT_MATRIX_PATH_MAX_D
from evmsep.scanning.runner import GridScanner

__all__ = [
    "DEFAULT_MASK_MAX_D",
    "DEFAULT_THRESHOLD_MAX_D",
    "REFERENCE_WERNER_THRESHOLD",
    "REFERENCE_UPB_BOUNDARY",
    "EX3_SAMPLE_A",
    "Reproducer",
]

_LOGGER = logging.getLogger(__name__)

DEFAULT_MASK_MAX_D = 20
DEFAULT_THRESHOLD_MAX_D = 200

#: (d, η) where the Werner detection threshold is expected.
REFERENCE_WERNER_THRESHOLD = (134, 0.665)
REFERENCE_WERNER_TOL = 1e-3
#: Smallest p at which the tiles mixture is expected to be detected.
REFERENCE_UPB_BOUNDARY = 0.44
#: a values always included in the Horodecki mask.
EX3_SAMPLE_A = (0.1, 0.236, 0.5, 0.9)

_THRESHOLD_HEADER = ("d", "threshold", "analytic", "difference")


class Reproducer:
    """Writes the CSV bundles of the reproduction targets."""

    def __init__(
        self,
        out_dir: str | Path,
        num_workers: int = 1,
        tolerances: Tolerances = DEFAULT_TOLERANCES,
        mask_max_d: int = DEFAULT_MASK_MAX_D,
        threshold_max_d: int = DEFAULT_THRESHOLD_MAX_D,
        matrix_max_d: int = DEFAULT_MATRIX_PATH_MAX_D,
        with_ppt: bool = True,
    ):
        """
        :param out_dir: Output directory, created if missing.
        :param num_workers: Worker processes for the mask scans.
        :param tolerances: Verdict tolerances.
        :param mask_max_d: Largest d of the (d, parameter) masks.
        :param threshold_max_d: Largest d of the threshold tables.
        :param matrix_max_d: Largest d evaluated on the matrix path.
        :param with_ppt: Include the PPT verdict in mask scans.
        """
        self.out_dir = Path(out_dir)
        self.num_workers = num_workers
        self.tolerances = tolerances
        self.mask_max_d = mask_max_d
        self.threshold_max_d = threshold_max_d
        self.matrix_max_d = matrix_max_d
        self.with_ppt = with_ppt
        self._targets: dict[ReproduceTarget, Callable[[], list[Path]]] = {
            ReproduceTarget.FIG1A: self.fig1a,
            ReproduceTarget.FIG1B: self.fig1b,
            ReproduceTarget.EX3: self.ex3,
            ReproduceTarget.EX4: self.ex4,
        }

    def run(self, target: ReproduceTarget | str) -> list[Path]:
        """
        Writes one bundle.

        :param target: Target or its value (``"fig1a"``, ...).
        :return: Written files.
        """
        target = ReproduceTarget(target)
        self.out_dir.mkdir(parents=True, exist_ok=True)
        _LOGGER.info("Reproducing %s into %s.", target.value, self.out_dir)
        return self._targets[target]()

    def _scan(self, family: FamilyKind, axes, refine: bool = False, bisection_tol: float = DEFAULT_BISECTION_TOL):
        scanner = GridScanner(family, axes, self.tolerances, self.matrix_max_d, self.with_ppt)
        return scanner.run(self.num_workers, refine=refine, bisection_tol=bisection_tol)

    def _mask(self, family: FamilyKind, parameter: str) -> ScanResult:
        axes = (parse_int_range("d", f"2..{self.mask_max_d}"), unit_axis(parameter, DEFAULT_STEP_1D))
        return self._scan(family, axes)

    def _threshold_rows(self, threshold: Callable[[int], float], analytic: Callable[[int], float]) -> list[list]:
        rows = []
        for d in range(2, self.threshold_max_d + 1):
            value = threshold(d)
            rows.append([d, value, analytic(d), value - analytic(d)])
        return rows

    def fig1a(self) -> list[Path]:
        """Werner mask over (d, η) and the threshold table up to ``threshold_max_d``."""
        mask = write_scan(self._mask(FamilyKind.WERNER, "eta"), self.out_dir / "fig1a_mask.csv")
        rows = self._threshold_rows(werner_threshold, lambda d: 2 * (d - 1) / (3 * d - 2))
        ref_d, ref_eta = REFERENCE_WERNER_THRESHOLD
        meta = {
            "family": FamilyKind.WERNER.value,
            "threshold": "bisection on p to 1e-12",
            "analytic": "2(d-1)/(3d-2)",
            "reference": f"threshold({ref_d}) = {ref_eta}",
        }
        if self.threshold_max_d >= ref_d:
            value = rows[ref_d - 2][1]
            meta["reference deviation"] = f"{value - ref_eta:.12g}"
            if abs(value - ref_eta) > REFERENCE_WERNER_TOL:
                _LOGGER.warning("Werner threshold at d=%d is %.6f, reference %.3f.", ref_d, value, ref_eta)
        if any(later[1] < earlier[1] for earlier, later in itertools.pairwise(rows)):
            _LOGGER.warning("Werner thresholds are not increasing in d.")
        table = write_table(self.out_dir / "fig1a_thresholds.csv", _THRESHOLD_HEADER, rows, meta)
        return [mask, table]

    def fig1b(self) -> list[Path]:
        """Isotropic mask over (d, α) and the threshold table up to ``threshold_max_d``."""
        mask = write_scan(self._mask(FamilyKind.ISOTROPIC, "alpha"), self.out_dir / "fig1b_mask.csv")
        rows = self._threshold_rows(isotropic_threshold, lambda d: 2 / (d + 2))
        if any(later[1] > earlier[1] for earlier, later in itertools.pairwise(rows)):
            _LOGGER.warning("Isotropic thresholds are not decreasing in d.")
        meta = {
            "family": FamilyKind.ISOTROPIC.value,
            "threshold": "bisection on q to 1e-12",
            "analytic": "2/(d+2)",
        }
        table = write_table(self.out_dir / "fig1b_thresholds.csv", _THRESHOLD_HEADER, rows, meta)
        return [mask, table]

    def ex3(self) -> list[Path]:
        """Horodecki-mixture mask over (a, p) and the list of undetected interior points."""
        axes = (with_values(unit_axis("a", DEFAULT_STEP_2D), EX3_SAMPLE_A), unit_axis("p", DEFAULT_STEP_2D))
        result = self._scan(FamilyKind.HORODECKI, axes)
        mask = write_scan(result, self.out_dir / "ex3_mask.csv")

        interior = [r for r in result.records if r.value("a") > 0 and r.value("p") > 0]
        missed = [r for r in interior if not r.violated]
        rows = (
            [r.value("a"), r.value("p"), r.cond_lhs, r.cond_rhs, r.cond_lhs - r.cond_rhs, horodecki_min_p(r.value("a"))]
            for r in missed
        )
        meta = {
            "family": FamilyKind.HORODECKI.value,
            "reference": "detected for every 0 < a < 1 and 0 < p <= 1",
            "interior points": str(len(interior)),
            "undetected": str(len(missed)),
        }
        header = ["a", "p", "cond_lhs", "cond_rhs", "margin", "min_detectable_p"]
        deviations = write_table(self.out_dir / "ex3_deviations.csv", header, rows, meta)
        if missed:
            _LOGGER.warning(
                "Separability inequality misses %d of %d interior points; listed in %s.",
                len(missed),
                len(interior),
                deviations.name,
            )
        return [mask, deviations]

    def ex4(self) -> list[Path]:
        """Tiles-mixture scan over p and its boundary bisected to 1e-4."""
        result = self._scan(FamilyKind.UPB, (unit_axis("p", DEFAULT_STEP_1D),), refine=True)
        scan = write_scan(result, self.out_dir / "ex4_scan.csv")

        crossings = sum(1 for a, b in itertools.pairwise(result.records) if a.violated != b.violated)
        if crossings != 1:
            _LOGGER.warning("Tiles mixture changes verdict %d times along p.", crossings)
        if result.records and result.records[0].ppt_npt is False:
            _LOGGER.info("Tiles state at p=0 is PPT on both subsystems.")

        analytic = upb_threshold()
        rows = [
            [b.lower, b.upper, b.estimate, b.resolution, b.method]
            + [REFERENCE_UPB_BOUNDARY, b.estimate - REFERENCE_UPB_BOUNDARY, analytic]
            for b in result.boundaries
        ]
        for boundary in result.boundaries:
            if abs(boundary.estimate - REFERENCE_UPB_BOUNDARY) > DEFAULT_STEP_1D:
                _LOGGER.warning(
                    "Tiles mixture boundary p=%.6f differs from reference %.2f by %.6f.",
                    boundary.estimate,
                    REFERENCE_UPB_BOUNDARY,
                    boundary.estimate - REFERENCE_UPB_BOUNDARY,
                )
        meta = {
            "family": FamilyKind.UPB.value,
            "bisection": f"{DEFAULT_BISECTION_TOL:g} on the matrix path",
            "crossings": str(crossings),
        }
        header = ["lower", "upper", "estimate", "resolution", "method", "reference", "difference", "analytic"]
        table = write_table(self.out_dir / "ex4_boundary.csv", header, rows, meta)
        return [scan, table]
