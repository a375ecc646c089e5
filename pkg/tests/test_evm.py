"""Tests for operator words, the expectation value matrix and reduced states."""

# pylint: disable=missing-class-docstring,missing-function-docstring

import numpy as np
import pytest

from evmsep.evm import build_evm, entry_words, evm_labels, evm_to_density, expect, op_matrix, reduced_state
from evmsep.families import basis_product, bell, werner
from evmsep.models.errors import DimMismatchError, IndexOutOfRangeError, TraceNotOneError
from evmsep.models.operators import ExpectationValueMatrix, OperatorWord, TransitionOperator
from evmsep.models.state import BipartiteDims
from evmsep.states import random_mixed, random_pure, validate

_QUBITS = BipartiteDims(2, 2)


def _random_word(dims, rng):
    factors = []
    for _ in range(rng.integers(1, 5)):
        subsystem = int(rng.integers(1, 3))
        dim = dims.dim(subsystem)
        op = TransitionOperator.a_op(subsystem, int(rng.integers(1, dim)), dim)
        factors.append(op.dagger() if rng.random() < 0.5 else op)
    return OperatorWord(tuple(factors))


class TestTransitionOperator:
    def test_a_operator_matrix(self):
        op = TransitionOperator.a_op(1, 2, 3)
        expected = np.zeros((3, 3))
        expected[0, 2] = 1
        assert np.array_equal(op.matrix(), expected)
        assert np.array_equal(op.dagger().matrix(), expected.T)

    def test_a_operator_index_starts_at_one(self):
        with pytest.raises(IndexOutOfRangeError):
            TransitionOperator.a_op(1, 0, 3)

    def test_index_beyond_dimension(self):
        with pytest.raises(IndexOutOfRangeError):
            TransitionOperator.a_op(2, 3, 3)

    @pytest.mark.parametrize(
        ("ket", "bra", "label"),
        [(0, 0, "A1^1 A1^1†"), (0, 2, "A1^2"), (2, 0, "A1^2†"), (1, 2, "A1^1† A1^2")],
    )
    def test_canonical_labels(self, ket, bra, label):
        assert TransitionOperator(1, ket, bra, 3).label == label

    @pytest.mark.parametrize(("ket", "bra"), [(0, 0), (0, 1), (2, 0), (1, 2), (2, 2)])
    def test_a_factors_multiply_to_unit(self, ket, bra):
        unit = TransitionOperator(1, ket, bra, 3)
        product = np.eye(3)
        for factor in unit.a_factors():
            product = product @ factor.matrix()
        assert np.array_equal(product, unit.matrix())


class TestOperatorWord:
    @pytest.mark.parametrize(
        ("row", "col", "label"),
        [
            (0, 0, "A1^1 A1^1† A2^1 A2^1†"),
            (0, 1, "A1^1 A1^1† A2^1†"),
            (1, 0, "A1^1 A1^1† A2^1"),
            (0, 3, "A1^1† A2^1†"),
            (3, 3, "A1^1† A1^1 A2^1† A2^1"),
        ],
    )
    def test_entry_labels(self, row, col, label):
        assert OperatorWord.for_entry(row, col, _QUBITS).label == label

    def test_parse_matches_entry_words(self):
        dims = BipartiteDims(3, 3)
        for row in entry_words(dims):
            for word in row:
                assert OperatorWord.parse(word.label, dims) == word

    def test_identity_word(self):
        word = OperatorWord.parse("I", _QUBITS)
        assert word.label == "I"
        assert np.array_equal(op_matrix(word, _QUBITS), np.eye(4))

    @pytest.mark.parametrize("label", ["B1^1", "A3^1", "A1^x", "A1^1 foo"])
    def test_parse_rejects_malformed(self, label):
        with pytest.raises((ValueError, IndexOutOfRangeError)):
            OperatorWord.parse(label, _QUBITS)

    def test_dagger_reverses_and_conjugates(self):
        dims = BipartiteDims(3, 2)
        word = OperatorWord.parse("A1^2† A1^1 A2^1", dims)
        assert np.array_equal(op_matrix(word.dagger(), dims), op_matrix(word, dims).conj().T)

    def test_canonical_of_product(self):
        dims = BipartiteDims(3, 3)
        assert OperatorWord.parse("A1^1† A1^1", dims).canonical(dims).label == "A1^1† A1^1"
        assert OperatorWord.parse("A1^1 A1^2", dims).canonical(dims) is None
        assert OperatorWord.parse("A1^2 A1^2† A2^1", dims).canonical(dims).label == "A1^1 A1^1† A2^1"

    def test_unit_product(self):
        dims = BipartiteDims(3, 3)
        word = OperatorWord.parse("A1^2† A1^1", dims)
        assert word.unit_product(1) == (2, 1)
        assert word.unit_product(2) == (-1, -1)

    def test_expect_rejects_foreign_dims(self):
        rho = validate(np.eye(4) / 4, _QUBITS)
        with pytest.raises(DimMismatchError):
            expect(rho, OperatorWord.parse("A1^2", BipartiteDims(3, 3)))

    def test_adjoint_word_conjugates_expectation(self, dims, rng):
        for _ in range(20):
            rho = random_mixed(dims, rng)
            words = [_random_word(dims, rng) for _ in range(20)]
            words += [word for row in entry_words(dims) for word in row]
            for word in words:
                assert expect(rho, word.dagger()) == pytest.approx(np.conj(expect(rho, word)), abs=1e-12)

    @pytest.mark.parametrize(
        ("label", "expected"),
        [
            ("A1^1† A2^1†", -0.48j),
            ("A1^1 A2^1", 0.48j),
            ("A1^1† A1^1 A2^1† A2^1", 0.64),
            ("A1^1 A1^1† A2^1 A2^1†", 0.36),
        ],
    )
    def test_bell_state_values(self, label, expected):
        rho = bell(0.6, 0.8j)
        assert expect(rho, OperatorWord.parse(label, _QUBITS)) == pytest.approx(expected, abs=1e-12)

    def test_ground_state_population(self):
        word = OperatorWord.parse("A1^1 A1^1† A2^1 A2^1†", _QUBITS)
        assert expect(basis_product(2, 0, 0), word) == pytest.approx(1.0, abs=1e-12)


class TestBuildEvm:
    def test_entries_equal_density_matrix(self, dims, rng):
        for _ in range(50):
            rho = random_mixed(dims, rng)
            evm = build_evm(rho)
            assert np.allclose(evm.entries, rho.mat, rtol=0.0, atol=1e-12)

    def test_round_trip(self, dims, rng):
        states = [random_pure(dims, rng)] + [random_mixed(dims, rng) for _ in range(10)]
        for rho in states:
            assert np.max(np.abs(evm_to_density(build_evm(rho)).mat - rho.mat)) < 1e-12

    def test_round_trip_werner(self):
        rho = werner(3, 0.7)
        assert np.max(np.abs(evm_to_density(build_evm(rho)).mat - rho.mat)) < 1e-12

    def test_labels_attached(self):
        rho = validate(np.eye(4) / 4, _QUBITS)
        evm = build_evm(rho)
        assert evm.word_labels == evm_labels(_QUBITS)
        assert evm.label(0, 0) == "A1^1 A1^1† A2^1 A2^1†"

    def test_rejects_scaled_matrix(self):
        rho = validate(np.eye(4) / 4, _QUBITS)
        tampered = ExpectationValueMatrix(_QUBITS, build_evm(rho).entries * 0.9, evm_labels(_QUBITS))
        with pytest.raises(TraceNotOneError):
            evm_to_density(tampered)

    def test_shape_checked(self):
        with pytest.raises(DimMismatchError):
            ExpectationValueMatrix(_QUBITS, np.eye(3), evm_labels(_QUBITS))


class TestReducedState:
    def test_matches_partial_trace(self, dims, rng):
        rho = random_mixed(dims, rng)
        blocks = rho.mat.reshape(dims.d1, dims.d2, dims.d1, dims.d2)
        assert np.allclose(reduced_state(rho, 1), np.einsum("ijkj->ik", blocks), atol=1e-12)
        assert np.allclose(reduced_state(rho, 2), np.einsum("ijil->jl", blocks), atol=1e-12)

    def test_invalid_subsystem(self):
        rho = validate(np.eye(4) / 4, _QUBITS)
        with pytest.raises(DimMismatchError):
            reduced_state(rho, 3)
