"""
Defines transition operators, operator words and the expectation value matrix.

A :class:`TransitionOperator` is the matrix unit |ket⟩⟨bra| on one subsystem.
The non-Hermitian operator A_k^i = |0⟩_k⟨i| is ``TransitionOperator.a_op(k, i, d)``
and its adjoint ``.dagger()``. Words are ordered products of such factors;
factors on different subsystems commute.

Label grammar
-------------
A word label is a space-separated sequence of tokens ``A<k>^<i>`` (the
operator |0⟩⟨i| on subsystem k) or ``A<k>^<i>†`` (|i⟩⟨0|), subsystem-1 tokens
first, e.g. ``"A1^2† A1^1 A2^1"``. Matrix units are written canonically as

- |0⟩⟨0| → ``Ak^1 Ak^1†``
- |0⟩⟨i| → ``Ak^i``
- |i⟩⟨0| → ``Ak^i†``
- |i⟩⟨j| → ``Ak^i† Ak^j``  (i, j ≥ 1)
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from evmsep.models.errors import DimMismatchError, IndexOutOfRangeError
from evmsep.models.state import BipartiteDims

__all__ = ["TransitionOperator", "OperatorWord", "ExpectationValueMatrix", "DAGGER"]

DAGGER = "†"
_TOKEN = re.compile(r"^A([12])\^(\d+)(†?)$")


@dataclass(slots=True, frozen=True)
class TransitionOperator:
    """
    The matrix unit |ket⟩⟨bra| acting on one subsystem.

    :param subsystem: 1 or 2 (the k of A_k^i).
    :param ket: Row label a of |a⟩⟨b|.
    :param bra: Column label b of |a⟩⟨b|.
    :param dim: Dimension of the subsystem.
    """

    subsystem: int
    ket: int
    bra: int
    dim: int

    def __post_init__(self):
        if self.subsystem not in (1, 2):
            raise IndexOutOfRangeError(f"subsystem must be 1 or 2, got {self.subsystem}")
        if not (0 <= self.ket < self.dim and 0 <= self.bra < self.dim):
            raise IndexOutOfRangeError(
                f"|{self.ket}><{self.bra}| out of range for subsystem {self.subsystem} of dimension {self.dim}"
            )

    @classmethod
    def a_op(cls, subsystem: int, index: int, dim: int) -> TransitionOperator:
        """
        The operator A_k^i = |0⟩⟨i|.

        :param subsystem: k.
        :param index: i, in 1..dim−1.
        :param dim: Subsystem dimension.
        :return: TransitionOperator(k, 0, i).
        """
        if index < 1:
            raise IndexOutOfRangeError(f"A-operator index must be >= 1, got {index}")
        return cls(subsystem, 0, index, dim)

    def dagger(self) -> TransitionOperator:
        """Adjoint |bra⟩⟨ket|."""
        return TransitionOperator(self.subsystem, self.bra, self.ket, self.dim)

    @property
    def is_a_form(self) -> bool:
        """True when this is a single A or A† (exactly one label is 0)."""
        return (self.ket == 0) != (self.bra == 0)

    @property
    def label(self) -> str:
        """Canonical A-operator spelling of this unit (see module docstring)."""
        k = self.subsystem
        if self.ket == 0 and self.bra == 0:
            return f"A{k}^1 A{k}^1{DAGGER}"
        if self.ket == 0:
            return f"A{k}^{self.bra}"
        if self.bra == 0:
            return f"A{k}^{self.ket}{DAGGER}"
        return f"A{k}^{self.ket}{DAGGER} A{k}^{self.bra}"

    def matrix(self) -> np.ndarray:
        """
        Dense dim × dim representation.

        :return: Matrix with a single 1 at (ket, bra).
        """
        mat = np.zeros((self.dim, self.dim), dtype=np.complex128)
        mat[self.ket, self.bra] = 1.0
        return mat

    def a_factors(self) -> tuple[TransitionOperator, ...]:
        """
        Decomposes this unit into A-form factors.

        :return: One factor if already A-form, else the two-factor product of the canonical label.
        """
        if self.is_a_form:
            return (self,)
        if self.ket == 0:
            # |0><0| = A^1 A^1†
            first = TransitionOperator.a_op(self.subsystem, 1, self.dim)
            return (first, first.dagger())
        # |i><j| = A^i† A^j
        return (
            TransitionOperator.a_op(self.subsystem, self.ket, self.dim).dagger(),
            TransitionOperator.a_op(self.subsystem, self.bra, self.dim),
        )


@dataclass(slots=True, frozen=True)
class OperatorWord:
    """
    Ordered product of transition operators on a bipartite system.

    :param factors: Factors in multiplication order. Subsystem-1 and subsystem-2
        factors commute; within one subsystem order matters.
    """

    factors: tuple[TransitionOperator, ...] = field(default_factory=tuple)

    @classmethod
    def for_units(cls, dims: BipartiteDims, *units: tuple[int, int, int]) -> OperatorWord:
        """
        Builds the canonical A-form word for matrix units.

        :param dims: System dimensions.
        :param units: (subsystem, ket, bra) triples, at most one per subsystem.
        :return: Word whose factors spell each unit canonically.
        """
        factors: list[TransitionOperator] = []
        for subsystem, ket, bra in sorted(units):
            factors.extend(TransitionOperator(subsystem, ket, bra, dims.dim(subsystem)).a_factors())
        return cls(tuple(factors))

    @classmethod
    def for_entry(cls, row: int, col: int, dims: BipartiteDims) -> OperatorWord:
        """
        The word whose expectation equals ρ[row, col].

        With row = (r1, r2) and col = (c1, c2) in mixed-radix digits, the word is
        |c1⟩⟨r1| ⊗ |c2⟩⟨r2|, since Tr(ρ |c⟩⟨r|) = ⟨r|ρ|c⟩.

        :param row: 0-based flat row.
        :param col: 0-based flat column.
        :param dims: System dimensions.
        :return: Canonical word for the entry.
        """
        r1, r2 = dims.digits(row)
        c1, c2 = dims.digits(col)
        return cls.for_units(dims, (1, c1, r1), (2, c2, r2))

    @classmethod
    def parse(cls, label: str, dims: BipartiteDims) -> OperatorWord:
        """
        Parses a label written in the module's grammar.

        :param label: Space-separated A-tokens.
        :param dims: System dimensions.
        :return: Parsed word.
        """
        factors = []
        if label.strip() == "I":
            return cls()
        for token in label.split():
            match = _TOKEN.match(token)
            if match is None:
                raise ValueError(f"malformed operator token {token!r} in {label!r}")
            subsystem, index, daggered = int(match[1]), int(match[2]), bool(match[3])
            op = TransitionOperator.a_op(subsystem, index, dims.dim(subsystem))
            factors.append(op.dagger() if daggered else op)
        return cls(tuple(factors))

    def on(self, subsystem: int) -> tuple[TransitionOperator, ...]:
        """Factors acting on one subsystem, in order."""
        return tuple(f for f in self.factors if f.subsystem == subsystem)

    def dagger(self) -> OperatorWord:
        """Adjoint word: reversed order, each factor daggered."""
        return OperatorWord(tuple(f.dagger() for f in reversed(self.factors)))

    @property
    def label(self) -> str:
        """Label in the module grammar; the empty word is ``"I"``."""
        ordered = self.on(1) + self.on(2)
        if not ordered:
            return "I"
        return " ".join(token for f in ordered for token in f.label.split())

    def unit_product(self, subsystem: int) -> tuple[int, int] | None:
        """
        Product of this word's factors on one subsystem, as a matrix unit.

        A product of matrix units is either a matrix unit or zero.

        :param subsystem: 1 or 2.
        :return: (ket, bra) of the product, (-1, -1) for identity (no factors), None if zero.
        """
        factors = self.on(subsystem)
        if not factors:
            return (-1, -1)
        ket, bra = factors[0].ket, factors[0].bra
        for f in factors[1:]:
            if bra != f.ket:
                return None
            bra = f.bra
        return ket, bra

    def canonical(self, dims: BipartiteDims) -> OperatorWord | None:
        """
        Normalizes the word to the canonical spelling of its product.

        :param dims: System dimensions.
        :return: Canonical word, or None when the product vanishes.
        """
        units = []
        for subsystem in (1, 2):
            product = self.unit_product(subsystem)
            if product is None:
                return None
            if product != (-1, -1):
                units.append((subsystem, *product))
        return OperatorWord.for_units(dims, *units)

    def validate_dims(self, dims: BipartiteDims) -> None:
        """
        Checks every factor against the system dimensions.

        :param dims: System dimensions.
        """
        for f in self.factors:
            if f.dim != dims.dim(f.subsystem):
                raise DimMismatchError(
                    f"factor {f.label} built for dimension {f.dim}, subsystem {f.subsystem} has {dims.dim(f.subsystem)}"
                )


@dataclass(slots=True, frozen=True, eq=False)
class ExpectationValueMatrix:
    """
    Matrix of expectation values laid out exactly like ρ.

    :param dims: System dimensions.
    :param entries: (d1·d2) × (d1·d2) complex expectation values.
    :param word_labels: Label of the word whose expectation sits at each position.
    """

    dims: BipartiteDims
    entries: np.ndarray
    word_labels: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        entries = np.array(self.entries, dtype=np.complex128)
        entries.flags.writeable = False
        object.__setattr__(self, "entries", entries)
        n = self.dims.size
        if entries.shape != (n, n) or len(self.word_labels) != n or any(len(row) != n for row in self.word_labels):
            raise DimMismatchError(f"expectation value matrix must be {n}x{n} with a matching label table")

    def label(self, row: int, col: int) -> str:
        """Label at a 0-based position."""
        return self.word_labels[row][col]
