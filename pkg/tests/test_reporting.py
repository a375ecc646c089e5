"""Tests for the human-readable report printer."""

# pylint: disable=missing-class-docstring,missing-function-docstring

import io

import numpy as np
import pytest

from evmsep.criteria import analyze, werner_witness
from evmsep.evm import build_evm
from evmsep.families import bell, werner
from evmsep.models.state import BipartiteDims
from evmsep.reporting import ReportPrinter
from evmsep.scanning import GridScanner, parse_int_range, parse_range
from evmsep.states import random_mixed, validate


def _render(node, **kwargs) -> str:
    stream = io.StringIO()
    ReportPrinter(stream, **kwargs).print(node)
    return stream.getvalue()


class TestCriterionReport:
    def test_entangled_pure_state(self):
        text = _render(analyze(bell(0.6, 0.8)))
        assert text.startswith("CriterionReport: 2x2\n")
        assert "  Purity: 1 (pure)" in text
        assert "Pure product: fails at k = 1, 2, 3, 4" in text
        assert "-> NPT" in text
        assert "-> violated" in text
        assert text.rstrip().endswith("Verdict: ENTANGLED")

    def test_mixed_state(self):
        text = _render(analyze(validate(np.eye(4) / 4, BipartiteDims(2, 2))))
        assert "Pure product: n/a (mixed state)" in text
        assert "-> PPT" in text
        assert "-> satisfied" in text
        assert "Verdict: no entanglement detected" in text

    def test_rectangular_state(self):
        text = _render(analyze(validate(np.eye(6) / 6, BipartiteDims(2, 3))))
        assert "Separability inequality: not applicable (d1 != d2)" in text

    def test_witness_line(self):
        report = analyze(werner(3, 0.9), witness=werner_witness(3, 0.9))
        assert "Witness p: " in _render(report)
        assert "-> detected" in _render(report)

    def test_precision(self):
        text = _render(analyze(werner(3, 0.3)), precision=3)
        assert "lhs = 0.3," in text


class TestStateAndEvm:
    def test_density_matrix_rows(self):
        text = _render(bell(0.6, 0.8j))
        assert text.splitlines()[0] == "DensityMatrix: 2x2"
        assert "[0.36, 0, 0, -0.48j]" in text

    def test_evm_labels(self):
        text = _render(build_evm(validate(np.eye(4) / 4, BipartiteDims(2, 2))))
        assert "ExpectationValueMatrix: 2x2 (4x4 entries)" in text
        assert "Row 0: <A1^1 A1^1† A2^1 A2^1†> = 0.25" in text

    def test_truncation(self):
        rho = random_mixed(BipartiteDims(3, 3), np.random.default_rng(1))
        text = _render(build_evm(rho), entry_limit=2)
        assert "(7 more)" in text
        assert "... (7 more rows)" in text

    def test_indentation(self):
        text = _render(analyze(bell(0.6, 0.8)), indent_char="\t", indent_count=1)
        assert "\tPurity:" in text


class TestScanResult:
    def test_summary_and_boundaries(self):
        axes = (parse_int_range("d", "2..3"), parse_range("eta", "0:1:0.1"))
        result = GridScanner("werner", axes, with_ppt=False).run(refine=False)
        text = _render(result)
        assert text.startswith(f"ScanResult: werner (22 points, {result.detected_count} detected)")
        assert "  family: werner" in text
        assert "Boundaries (2):" in text
        assert "d=2: eta in [0.5, 0.6], estimate 0.55" in text

    def test_boundary_limit(self):
        axes = (parse_int_range("d", "2..4"), parse_range("eta", "0:1:0.1"))
        result = GridScanner("werner", axes, with_ppt=False).run(refine=False)
        assert "... (2 more)" in _render(result, boundary_limit=1)

    def test_no_boundaries(self):
        axes = (parse_int_range("d", "3"), parse_range("eta", "0:0.5:0.25"))
        result = GridScanner("werner", axes, with_ppt=False).run()
        assert "Boundaries: none found" in _render(result)


class TestDispatch:
    def test_unknown_type(self):
        with pytest.raises(TypeError):
            _render(object())
