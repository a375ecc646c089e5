"""Tests for grid parsing, the scan families, the runner, boundaries and CSV export."""

# pylint: disable=missing-class-docstring,missing-function-docstring

import csv
import logging
import math

import numpy as np
import pytest

from evmsep.models.errors import DomainError
from evmsep.models.family import FamilyKind
from evmsep.models.scan import EvaluationPath, ReproduceTarget, ScanAxis
from evmsep.scanning import (
    MAX_AXIS_POINTS,
    GridScanner,
    Reproducer,
    boundaries_path,
    family_registry,
    format_cell,
    get_scan_family,
    grid_points,
    parse_int_range,
    parse_range,
    unit_axis,
    with_values,
    write_boundaries,
    write_scan,
)


def _read_csv(path):
    lines = path.read_text(encoding="utf-8").splitlines()
    metadata = [line for line in lines if line.startswith("#")]
    rows = list(csv.reader(line for line in lines if not line.startswith("#")))
    return metadata, rows[0], rows[1:]


class TestParseRange:
    def test_inclusive_grid(self):
        axis = parse_range("eta", "0:1:0.25")
        assert axis.values == (0.0, 0.25, 0.5, 0.75, 1.0)
        assert axis.step == 0.25

    def test_fine_grid_ends_on_hi(self):
        axis = parse_range("p", "0.005:1:0.005")
        assert len(axis) == 200
        assert axis.values[-1] == 1.0
        assert axis.values[1] == 0.01

    def test_hi_off_grid(self):
        assert parse_range("eta", "0:0.5:0.2").values == (0.0, 0.2, 0.4)

    def test_single_value(self):
        axis = parse_range("alpha", "0.3")
        assert axis.values == (0.3,)
        assert axis.step == 0.0

    @pytest.mark.parametrize("text", ["0:1", "a:b:c", "0:1:0", "1:0:0.1", "0:1:-0.1", ""])
    def test_malformed(self, text):
        with pytest.raises(DomainError):
            parse_range("eta", text)

    @pytest.mark.parametrize("text", ["0:inf:0.1", "0:nan:0.1", "0:1:inf", "nan", "-inf:0:0.1"])
    def test_non_finite(self, text):
        with pytest.raises(DomainError, match="non-finite"):
            parse_range("x", text)

    @pytest.mark.parametrize("text", ["0:1:1e-300", "0:1e308:1e-308", "0:1:1e-5"])
    def test_point_limit(self, text):
        with pytest.raises(DomainError, match="points"):
            parse_range("x", text)

    def test_point_limit_inclusive(self):
        assert len(parse_range("x", f"0:{MAX_AXIS_POINTS - 1}:1")) == MAX_AXIS_POINTS

    def test_unit_axis_range_checked(self):
        with pytest.raises(DomainError):
            parse_range("eta", "0:1.5:0.5")

    def test_unit_axis_helper(self):
        assert len(unit_axis("p", 0.02)) == 51

    def test_with_values_merges_sorted(self):
        axis = with_values(parse_range("a", "0:1:0.5"), (0.236, 0.5))
        assert axis.values == (0.0, 0.236, 0.5, 1.0)

    def test_axis_must_be_sorted(self):
        with pytest.raises(ValueError):
            ScanAxis("p", (0.5, 0.1))


class TestParseIntRange:
    def test_range(self):
        axis = parse_int_range("d", "2..6")
        assert axis.values == (2, 3, 4, 5, 6)

    def test_single(self):
        assert parse_int_range("d", "134").values == (134,)

    @pytest.mark.parametrize("text", ["1..3", "6..2", "x", "2..", "2.5"])
    def test_invalid(self, text):
        with pytest.raises(DomainError):
            parse_int_range("d", text)


class TestRegistry:
    def test_scannable_families(self):
        assert set(family_registry()) == {
            FamilyKind.WERNER,
            FamilyKind.ISOTROPIC,
            FamilyKind.HORODECKI,
            FamilyKind.UPB,
        }

    def test_registry_is_read_only(self):
        with pytest.raises(TypeError):
            family_registry()[FamilyKind.BELL] = None  # type: ignore[index]

    @pytest.mark.parametrize("kind", ["bell", "product", "nope"])
    def test_unscannable(self, kind):
        with pytest.raises(DomainError):
            get_scan_family(kind)

    def test_axes_checked(self):
        with pytest.raises(DomainError):
            GridScanner("werner", (parse_range("eta", "0:1:0.5"), parse_int_range("d", "2..3")))

    def test_closed_form_beyond_matrix_limit(self):
        family = get_scan_family("werner")
        near = family.evaluate((("d", 3), ("eta", 0.9)), matrix_max_d=4)
        far = family.evaluate((("d", 5), ("eta", 0.9)), matrix_max_d=4)
        assert near.path == EvaluationPath.MATRIX
        assert far.path == EvaluationPath.CLOSED_FORM
        assert far.ppt_npt is None
        assert near.ppt_npt is True
        assert near.violated and far.violated

    def test_paths_agree(self):
        family = get_scan_family("isotropic")
        point = (("d", 4), ("alpha", 0.37))
        matrix = family.evaluate(point, matrix_max_d=8)
        closed = family.evaluate(point, matrix_max_d=2)
        assert matrix.cond_lhs == pytest.approx(closed.cond_lhs, abs=1e-12)
        assert matrix.cond_rhs == pytest.approx(closed.cond_rhs, abs=1e-12)
        assert matrix.witness == closed.witness

    def test_matrix_only_families(self):
        record = get_scan_family("upb").evaluate((("p", 0.5),), matrix_max_d=2)
        assert record.path == EvaluationPath.MATRIX
        assert record.witness is None


class TestGridScanner:
    def test_lexicographic_order(self):
        axes = (parse_int_range("d", "2..3"), parse_range("eta", "0:1:0.5"))
        points = list(grid_points(axes))
        assert points[:3] == [(("d", 2), ("eta", 0.0)), (("d", 2), ("eta", 0.5)), (("d", 2), ("eta", 1.0))]
        assert points[3] == (("d", 3), ("eta", 0.0))

    def test_record_count(self):
        axes = (parse_int_range("d", "2..4"), parse_range("alpha", "0:1:0.1"))
        result = GridScanner("isotropic", axes, with_ppt=False).run()
        assert len(result.records) == result.expected_size == 33

    def test_werner_boundaries(self):
        axes = (parse_int_range("d", "2..6"), unit_axis("eta", 0.005))
        result = GridScanner("werner", axes, with_ppt=False).run()
        assert [dict(b.group)["d"] for b in result.boundaries] == [2, 3, 4, 5, 6]
        for boundary in result.boundaries:
            d = dict(boundary.group)["d"]
            analytic = 2 * (d - 1) / (3 * d - 2)
            assert boundary.method == "bisection"
            assert boundary.lower <= analytic <= boundary.upper
            assert boundary.upper - boundary.lower == pytest.approx(0.005)
            assert abs(boundary.estimate - analytic) < 1e-4

    def test_bracket_boundaries(self):
        axes = (parse_int_range("d", "3"), parse_range("alpha", "0:1:0.1"))
        result = GridScanner("isotropic", axes, with_ppt=False).run(refine=False)
        (boundary,) = result.boundaries
        assert (boundary.lower, boundary.upper) == (0.4, 0.5)
        assert boundary.estimate == pytest.approx(0.45)
        assert boundary.method == "bracket"

    def test_closed_form_boundaries_are_tight(self):
        axes = (parse_int_range("d", "40"), unit_axis("eta", 0.01))
        result = GridScanner("werner", axes, matrix_max_d=8).run()
        (boundary,) = result.boundaries
        assert boundary.estimate == pytest.approx(78 / 118, abs=1e-8)

    def test_upb_boundary(self):
        result = GridScanner("upb", (unit_axis("p", 0.005),)).run()
        (boundary,) = result.boundaries
        assert (boundary.lower, boundary.upper) == (0.465, 0.47)
        assert abs(boundary.estimate - 7 / 15) < 1e-4
        assert result.records[0].ppt_npt is False

    def test_no_crossing(self):
        axes = (parse_int_range("d", "3"), parse_range("eta", "0:0.5:0.1"))
        result = GridScanner("werner", axes, with_ppt=False).run()
        assert result.boundaries == []
        assert result.detected_count == 0

    def test_workers_do_not_change_records(self):
        axes = (parse_int_range("d", "2..3"), parse_range("eta", "0:1:0.05"))
        serial = GridScanner("werner", axes).run(num_workers=1)
        parallel = GridScanner("werner", axes).run(num_workers=2)
        assert serial.records == parallel.records
        assert serial.boundaries == parallel.boundaries

    def test_metadata(self):
        axes = (parse_int_range("d", "2..3"), parse_range("eta", "0:1:0.5"))
        meta = GridScanner("werner", axes, with_ppt=False).metadata()
        assert meta["family"] == "werner"
        assert meta["witness"] == "p"
        assert meta["ppt"] == "off"
        assert meta["axis eta"] == "0:1:0.5 (3 points)"

    def test_logs_summary(self, caplog):
        with caplog.at_level(logging.INFO, logger="evmsep.scanning.runner"):
            GridScanner("upb", (parse_range("p", "0:1:0.25"),), with_ppt=False).run()
        assert "Scan finished" in caplog.text


class TestExport:
    @pytest.mark.parametrize(
        ("value", "text"),
        [
            (None, ""),
            (True, "1"),
            (np.bool_(False), "0"),
            (7, "7"),
            (0.1, "0.1"),
            (1 / 3, "0.333333333333"),
            (np.float64(2.5), "2.5"),
            (math.inf, "inf"),
            ("bisection", "bisection"),
        ],
    )
    def test_format_cell(self, value, text):
        assert format_cell(value) == text

    def test_scan_csv(self, tmp_path):
        axes = (parse_int_range("d", "2"), parse_range("eta", "0:1:0.5"))
        result = GridScanner("werner", axes).run()
        metadata, header, rows = _read_csv(write_scan(result, tmp_path / "scan.csv"))
        assert "# family: werner" in metadata
        assert header == ["d", "eta", "witness", "cond_lhs", "cond_rhs", "violated", "ppt_npt"]
        assert rows[0][:3] == ["2", "0", "inf"]
        assert [row[5] for row in rows] == ["0", "0", "1"]
        assert [row[6] for row in rows] == ["0", "1", "1"]

    def test_closed_form_rows_leave_ppt_blank(self, tmp_path):
        axes = (parse_int_range("d", "12"), parse_range("eta", "0.9"))
        result = GridScanner("werner", axes).run()
        _, _, rows = _read_csv(write_scan(result, tmp_path / "scan.csv"))
        assert rows[0][-1] == ""

    def test_boundaries_csv(self, tmp_path):
        axes = (parse_int_range("d", "2..3"), parse_range("eta", "0:1:0.05"))
        result = GridScanner("werner", axes, with_ppt=False).run()
        path = write_boundaries(result, boundaries_path(tmp_path / "scan.csv"))
        assert path.name == "scan.boundaries.csv"
        _, header, rows = _read_csv(path)
        assert header == ["d", "eta_lower", "eta_upper", "eta_estimate", "eta_resolution", "eta_method"]
        assert [row[0] for row in rows] == ["2", "3"]

    def test_output_is_deterministic(self, tmp_path):
        axes = (parse_int_range("d", "2..3"), parse_range("alpha", "0:1:0.1"))
        first = write_scan(GridScanner("isotropic", axes).run(), tmp_path / "first.csv")
        second = write_scan(GridScanner("isotropic", axes).run(), tmp_path / "second.csv")
        assert first.read_bytes() == second.read_bytes()


class TestReproducer:
    def test_werner_bundle(self, tmp_path):
        reproducer = Reproducer(tmp_path / "out", mask_max_d=3, threshold_max_d=10, with_ppt=False)
        paths = reproducer.run("fig1a")
        assert [p.name for p in paths] == ["fig1a_mask.csv", "fig1a_thresholds.csv"]
        _, header, rows = _read_csv(paths[1])
        assert header == ["d", "threshold", "analytic", "difference"]
        assert len(rows) == 9
        assert all(abs(float(row[3])) < 1e-10 for row in rows)

    def test_isotropic_bundle(self, tmp_path):
        paths = Reproducer(tmp_path, mask_max_d=2, threshold_max_d=4, with_ppt=False).run(ReproduceTarget.FIG1B)
        _, _, rows = _read_csv(paths[1])
        assert float(rows[0][1]) == pytest.approx(0.5, abs=1e-10)

    def test_upb_bundle_reports_deviation(self, tmp_path, caplog):
        with caplog.at_level(logging.WARNING):
            paths = Reproducer(tmp_path).run("ex4")
        metadata, header, rows = _read_csv(paths[1])
        assert "# crossings: 1" in metadata
        assert header[-3:] == ["reference", "difference", "analytic"]
        assert float(rows[0][2]) == pytest.approx(7 / 15, abs=1e-4)
        assert float(rows[0][-1]) == pytest.approx(7 / 15, abs=1e-10)
        assert "differs from reference" in caplog.text

    def test_unknown_target(self, tmp_path):
        with pytest.raises(ValueError):
            Reproducer(tmp_path).run("fig9")
