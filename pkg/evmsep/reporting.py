"""
Human-readable rendering of states, reports, EVMs and scans.

Keeps presentation concerns (indentation, number formatting, truncation) out
of the domain model. Dispatch is by type, so a new model type registers a
single method here rather than carrying its own writer.
"""

from functools import singledispatchmethod
from typing import TextIO

import numpy as np

from evmsep.models.criteria import CriterionReport
from evmsep.models.operators import ExpectationValueMatrix
from evmsep.models.scan import ScanResult
from evmsep.models.state import DensityMatrix

__all__ = [
    "ReportPrinter",
    "DEFAULT_INDENT_CHAR",
    "DEFAULT_INDENT_COUNT",
    "DEFAULT_PRECISION",
    "DEFAULT_ENTRY_LIMIT",
    "DEFAULT_BOUNDARY_LIMIT",
]

DEFAULT_INDENT_CHAR = " "
DEFAULT_INDENT_COUNT = 2
DEFAULT_PRECISION = 6
DEFAULT_ENTRY_LIMIT = 9
DEFAULT_BOUNDARY_LIMIT = 20


class ReportPrinter:
    """Renders evmsep results as indented, human-readable text."""

    def __init__(
        self,
        stream: TextIO,
        indent_char: str = DEFAULT_INDENT_CHAR,
        indent_count: int = DEFAULT_INDENT_COUNT,
        precision: int = DEFAULT_PRECISION,
        entry_limit: int = DEFAULT_ENTRY_LIMIT,
        boundary_limit: int = DEFAULT_BOUNDARY_LIMIT,
    ):
        """
        :param stream: Destination text stream for rendered output.
        :param precision: Significant digits of printed numbers.
        :param entry_limit: Matrix rows and columns shown before truncation.
        :param boundary_limit: Scan boundaries listed before summarizing.
        """
        self._stream = stream
        self._indent_char = indent_char
        self._indent_count = indent_count
        self._precision = precision
        self._entry_limit = entry_limit
        self._boundary_limit = boundary_limit

    def print(
        self, node: CriterionReport | DensityMatrix | ExpectationValueMatrix | ScanResult, indent: int = 0
    ) -> None:
        """
        Renders a result to the stream.

        :param node: Result to render.
        :param indent: Starting indentation depth.
        """
        self._render(node, indent)

    def _emit(self, value: str, indent: int) -> None:
        self._stream.write(f"{self._indent_char * self._indent_count * indent}{value}\n")

    def _num(self, value: float) -> str:
        return format(float(value), f".{self._precision}g")

    def _complex(self, value: complex) -> str:
        value = complex(value)
        cutoff = 10.0**-self._precision
        if abs(value.imag) < cutoff:
            return self._num(value.real)
        if abs(value.real) < cutoff:
            return f"{self._num(value.imag)}j"
        sign = "-" if value.imag < 0 else "+"
        return f"{self._num(value.real)}{sign}{self._num(abs(value.imag))}j"

    def _truncated(self, cells: list[str]) -> str:
        if len(cells) > self._entry_limit:
            return ", ".join(cells[: self._entry_limit]) + f", ... ({len(cells) - self._entry_limit} more)"
        return ", ".join(cells)

    @singledispatchmethod
    def _render(self, node, indent: int) -> None:
        raise TypeError(f"cannot render {type(node).__name__}")

    @_render.register
    def _render_state(self, node: DensityMatrix, indent: int) -> None:
        self._emit(f"DensityMatrix: {node.dims.d1}x{node.dims.d2}", indent)
        self._render_rows(node.mat, indent + 1)

    def _render_rows(self, mat: np.ndarray, indent: int) -> None:
        for r, row in enumerate(mat[: self._entry_limit]):
            self._emit(f"[{self._truncated([self._complex(z) for z in row])}]", indent)
            if r == self._entry_limit - 1 and mat.shape[0] > self._entry_limit:
                self._emit(f"... ({mat.shape[0] - self._entry_limit} more rows)", indent)

    @_render.register
    def _render_report(self, node: CriterionReport, indent: int) -> None:
        d1, d2 = node.dims
        self._emit(f"CriterionReport: {d1}x{d2}", indent)
        self._emit(f"Purity: {self._num(node.purity)} ({'pure' if node.pure_flag else 'mixed'})", indent + 1)
        self._render_product(node, indent + 1)
        verdict = "NPT" if node.ppt.npt else "PPT"
        self._emit(
            f"Partial transpose: min eig T1 = {self._num(node.ppt.min_eig_1)}, "
            f"T2 = {self._num(node.ppt.min_eig_2)} -> {verdict}",
            indent + 1,
        )
        if node.cond is None:
            self._emit("Separability inequality: not applicable (d1 != d2)", indent + 1)
        else:
            verdict = "violated" if node.cond.violated else "satisfied"
            self._emit(
                f"Separability inequality: lhs = {self._num(node.cond.lhs)}, "
                f"rhs = {self._num(node.cond.rhs)} -> {verdict}",
                indent + 1,
            )
        if node.witness is not None:
            verdict = "detected" if node.witness.detected else "not detected"
            self._emit(f"Witness {node.witness.name}: {self._num(node.witness.value)} -> {verdict}", indent + 1)
        self._emit(f"Verdict: {'ENTANGLED' if node.entangled else 'no entanglement detected'}", indent + 1)

    def _render_product(self, node: CriterionReport, indent: int) -> None:
        if node.pure_product_flag is None:
            self._emit("Pure product: n/a (mixed state)", indent)
        elif node.pure_product_flag:
            self._emit("Pure product: condition holds", indent)
        else:
            failing = [str(k) for k, ok in enumerate(node.pure_product_diagonal, start=1) if not ok]
            self._emit(f"Pure product: fails at k = {self._truncated(failing)}", indent)

    @_render.register
    def _render_evm(self, node: ExpectationValueMatrix, indent: int) -> None:
        n = node.dims.size
        self._emit(f"ExpectationValueMatrix: {node.dims.d1}x{node.dims.d2} ({n}x{n} entries)", indent)
        for r in range(min(n, self._entry_limit)):
            cells = [f"<{node.label(r, c) or 'I'}> = {self._complex(node.entries[r, c])}" for c in range(n)]
            self._emit(f"Row {r}: {self._truncated(cells)}", indent + 1)
        if n > self._entry_limit:
            self._emit(f"... ({n - self._entry_limit} more rows)", indent + 1)

    @_render.register
    def _render_scan(self, node: ScanResult, indent: int) -> None:
        self._emit(
            f"ScanResult: {node.family.value} ({len(node.records)} points, {node.detected_count} detected)", indent
        )
        for key, value in node.metadata.items():
            self._emit(f"{key}: {value}", indent + 1)
        if not node.boundaries:
            self._emit("Boundaries: none found", indent + 1)
            return
        name = node.axes[-1].name
        self._emit(f"Boundaries ({len(node.boundaries)}):", indent + 1)
        for boundary in node.boundaries[: self._boundary_limit]:
            group = ", ".join(f"{key}={self._num(value)}" for key, value in boundary.group)
            prefix = f"{group}: " if group else ""
            self._emit(
                f"{prefix}{name} in [{self._num(boundary.lower)}, {self._num(boundary.upper)}], "
                f"estimate {self._num(boundary.estimate)} ± {boundary.resolution:.2g} ({boundary.method})",
                indent + 2,
            )
        if len(node.boundaries) > self._boundary_limit:
            self._emit(f"... ({len(node.boundaries) - self._boundary_limit} more)", indent + 2)
