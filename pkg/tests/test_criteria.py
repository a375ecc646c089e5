"""Tests for the purity, pure-product, PPT and separability-inequality criteria."""

# pylint: disable=missing-class-docstring,missing-function-docstring

import logging
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from evmsep.criteria import (
    analyze,
    bisect_detection,
    cond_inequality,
    cond_terms_by_pair,
    cond_two_qubit,
    horodecki_cond_terms,
    horodecki_min_p,
    isotropic_cond_terms,
    isotropic_q,
    isotropic_threshold,
    isotropic_witness,
    partial_transpose,
    ppt_test,
    pure_product_check,
    purity_direct,
    purity_evm,
    purity_groups,
    upb_cond_terms,
    upb_threshold,
    werner_cond_terms,
    werner_p,
    werner_threshold,
    werner_witness,
)
from evmsep.families import (
    bell,
    horodecki_insep,
    horodecki_mixture,
    isotropic,
    max_entangled,
    tiles_state,
    upb_mixture,
    werner,
)
from evmsep.models.criteria import Tolerances
from evmsep.models.errors import DimMismatchError, DomainError, NotPureError, NotSquareBipartiteError
from evmsep.models.state import BipartiteDims, Ket
from evmsep.states import pure_from_ket, random_mixed, random_product, random_pure, random_separable, validate

_QUBITS = BipartiteDims(2, 2)
_BELL = bell(1 / math.sqrt(2), 1 / math.sqrt(2))


def _singlet():
    return pure_from_ket(Ket(np.array([0, 1, -1, 0]) / math.sqrt(2)), _QUBITS)


class TestPurity:
    def test_three_computations_agree(self, dims, rng):
        for _ in range(100):
            rho = random_mixed(dims, rng)
            reference = np.trace(rho.mat @ rho.mat).real
            assert purity_direct(rho) == pytest.approx(reference, abs=1e-10)
            assert purity_evm(rho) == pytest.approx(reference, abs=1e-10)

    def test_pure_state(self, rng):
        rho = random_pure(BipartiteDims(3, 3), rng)
        assert purity_evm(rho) == pytest.approx(1.0, abs=1e-9)

    def test_groups_cover_every_term(self, dims):
        n = dims.size
        groups = purity_groups(dims)
        assert len(groups) == 20
        squares = sum(1 for _, terms in groups for _, partner in terms if partner is None)
        pairs = sum(1 for _, terms in groups for _, partner in terms if partner is not None)
        assert squares == n
        assert pairs == n * (n - 1) // 2


class TestPureProduct:
    def test_products_pass(self, dims, rng):
        for _ in range(100):
            verdicts, passed = pure_product_check(random_product(dims, rng))
            assert passed
            assert len(verdicts) == dims.size

    def test_bell_fails(self):
        verdicts, passed = pure_product_check(_BELL)
        assert not passed
        assert verdicts == (False, False, False, False)

    def test_entangled_pure_states_fail(self, dims, rng):
        for _ in range(100):
            rho = random_pure(dims, rng)
            assert ppt_test(rho).npt
            _, passed = pure_product_check(rho)
            assert not passed

    @pytest.mark.parametrize("d", [2, 3])
    def test_violation_implies_product_failure(self, d, rng):
        dims = BipartiteDims(d, d)
        samples = [pure_from_ket(max_entangled(d), dims)] + [random_pure(dims, rng) for _ in range(100)]
        samples += [random_product(dims, rng) for _ in range(20)]
        violated = 0
        for rho in samples:
            if cond_inequality(rho).violated:
                violated += 1
                assert not pure_product_check(rho)[1]
        assert violated >= 1

    def test_mixed_state_rejected(self):
        with pytest.raises(NotPureError):
            pure_product_check(validate(np.eye(4) / 4, _QUBITS))


class TestPartialTranspose:
    def test_matches_index_swap(self, dims, rng):
        for _ in range(100):
            rho = random_mixed(dims, rng)
            blocks = rho.mat.reshape(dims.d1, dims.d2, dims.d1, dims.d2)
            first = blocks.transpose(2, 1, 0, 3).reshape(dims.size, dims.size)
            second = blocks.transpose(0, 3, 2, 1).reshape(dims.size, dims.size)
            assert np.allclose(partial_transpose(rho, 1), first, rtol=0.0, atol=1e-12)
            assert np.allclose(partial_transpose(rho, 2), second, rtol=0.0, atol=1e-12)

    def test_singlet_has_negative_eigenvalue(self):
        result = ppt_test(_singlet())
        assert result.min_eig_1 == pytest.approx(-0.5)
        assert result.min_eig_2 == pytest.approx(-0.5)
        assert result.npt
        assert isinstance(result.npt, bool)

    def test_maximally_mixed_is_ppt(self):
        result = ppt_test(validate(np.eye(6) / 6, BipartiteDims(2, 3)))
        assert result.min_eig_1 == pytest.approx(1 / 6)
        assert not result.npt

    @pytest.mark.parametrize("eta", [i / 100 for i in range(101) if abs(i / 100 - 1 / 3) > 0.005])
    def test_qubit_werner_npt_above_one_third(self, eta):
        assert ppt_test(werner(2, eta)).npt == (eta > 1 / 3)

    def test_qubit_werner_boundary_is_zero(self):
        result = ppt_test(werner(2, Fraction(1, 3)))
        assert result.min_eig_1 == pytest.approx(0.0, abs=1e-10)
        assert result.min_eig_2 == pytest.approx(0.0, abs=1e-10)
        assert not result.npt

    def test_separable_states_are_ppt(self, dims, rng):
        for _ in range(20):
            assert not ppt_test(random_separable(dims, rng)).npt


class TestCondInequality:
    def test_bell_violates(self):
        result = cond_inequality(_BELL)
        assert result.lhs == pytest.approx(1.0)
        assert result.rhs == pytest.approx(0.5)
        assert result.violated
        assert result.margin == pytest.approx(0.5)

    def test_two_qubit_form_doubles_both_sides(self):
        result = cond_two_qubit(_BELL)
        assert (result.lhs, result.rhs) == (pytest.approx(2.0), pytest.approx(1.0))
        assert result.violated

    def test_two_qubit_form_needs_qubits(self):
        with pytest.raises(DimMismatchError):
            cond_two_qubit(horodecki_insep())

    def test_insep_state(self):
        result = cond_inequality(horodecki_insep())
        assert result.lhs == pytest.approx(0.75, abs=1e-12)
        assert result.rhs == pytest.approx(0.625, abs=1e-12)
        assert result.violated

    def test_insep_pair_terms(self):
        terms = cond_terms_by_pair(horodecki_insep())
        assert [(t.i, t.j) for t in terms] == [(0, 1), (0, 2), (1, 2)]
        assert [t.violated for t in terms] == [False, True, False]
        assert sum(t.bound for t in terms) == pytest.approx(0.625, abs=1e-12)

    def test_pair_bounds_sum_to_rhs(self, rng):
        for d in (2, 3, 4):
            rho = random_mixed(BipartiteDims(d, d), rng)
            terms = cond_terms_by_pair(rho)
            assert len(terms) == d * (d - 1) // 2
            assert sum(t.bound for t in terms) == pytest.approx(cond_inequality(rho).rhs, abs=1e-12)

    @pytest.mark.parametrize("d", [2, 3])
    def test_never_violated_by_separable_states(self, d, rng):
        dims = BipartiteDims(d, d)
        for _ in range(500):
            assert not cond_inequality(random_separable(dims, rng)).violated

    def test_needs_square_system(self):
        with pytest.raises(NotSquareBipartiteError):
            cond_inequality(validate(np.eye(6) / 6, BipartiteDims(2, 3)))

    def test_tiles_state_not_detected(self):
        result = cond_inequality(tiles_state())
        assert result.lhs == pytest.approx(1 / 6)
        assert result.rhs == pytest.approx(51 / 72)
        assert not result.violated


class TestWernerClosedForm:
    @pytest.mark.parametrize("d", [2, 3, 4, 5])
    @pytest.mark.parametrize("eta", [0.0, 0.3, 0.55, 0.8, 1.0])
    def test_cond_terms_match_matrix(self, d, eta):
        result = cond_inequality(werner(d, eta))
        lhs, rhs = werner_cond_terms(d, eta)
        assert result.lhs == pytest.approx(lhs, abs=1e-12)
        assert result.rhs == pytest.approx(rhs, abs=1e-12)

    @pytest.mark.parametrize("d", range(2, 9))
    def test_witness_agrees_with_matrix_path(self, d):
        for i in range(101):
            eta = i / 100
            assert werner_witness(d, eta).detected == cond_inequality(werner(d, eta)).violated

    @given(st.integers(min_value=2, max_value=300), st.floats(min_value=0.01, max_value=1.0))
    @settings(max_examples=200, deadline=None)
    def test_witness_is_rhs_over_lhs(self, d, eta):
        lhs, rhs = werner_cond_terms(d, eta)
        assert werner_p(d, eta) == pytest.approx(rhs / lhs, rel=1e-12)

    def test_witness_infinite_at_zero(self):
        assert werner_p(3, 0) == math.inf
        assert not werner_witness(3, 0).detected

    @pytest.mark.parametrize("d", [2, 3, 10, 50, 134])
    def test_threshold_matches_analytic(self, d):
        assert werner_threshold(d) == pytest.approx(2 * (d - 1) / (3 * d - 2), abs=1e-10)

    def test_reference_threshold(self):
        assert werner_threshold(134) == pytest.approx(0.665, abs=1e-3)

    def test_thresholds_increase_towards_two_thirds(self):
        thresholds = [werner_threshold(d, 1e-9) for d in range(2, 201)]
        assert all(a < b for a, b in zip(thresholds, thresholds[1:]))
        assert all(abs(t - 2 / 3) < 2e-3 for t in thresholds[132:])

    def test_domain_checked(self):
        with pytest.raises(DomainError):
            werner_p(1, 0.5)
        with pytest.raises(DomainError):
            werner_cond_terms(3, 1.2)


class TestIsotropicClosedForm:
    @pytest.mark.parametrize("d", [2, 3, 5])
    @pytest.mark.parametrize("alpha", [0.0, 0.2, 0.45, 1.0])
    def test_cond_terms_match_matrix(self, d, alpha):
        result = cond_inequality(isotropic(d, alpha))
        lhs, rhs = isotropic_cond_terms(d, alpha)
        assert result.lhs == pytest.approx(lhs, abs=1e-12)
        assert result.rhs == pytest.approx(rhs, abs=1e-12)

    @pytest.mark.parametrize("d", range(2, 9))
    def test_witness_agrees_with_matrix_path(self, d):
        for i in range(101):
            alpha = i / 100
            assert isotropic_witness(d, alpha).detected == cond_inequality(isotropic(d, alpha)).violated

    @pytest.mark.parametrize("d", [2, 3, 6, 20])
    def test_threshold(self, d):
        assert isotropic_threshold(d) == pytest.approx(2 / (d + 2), abs=1e-10)

    def test_witness_at_endpoints(self):
        assert isotropic_q(4, 0) == math.inf
        assert isotropic_q(2, 1) == pytest.approx(0.5)


class TestHorodeckiClosedForm:
    @pytest.mark.parametrize("a", [0.0, 0.1, 0.236, 0.5, 0.9, 1.0])
    @pytest.mark.parametrize("p", [0.0, 0.2, 0.5, 0.8])
    def test_cond_terms_match_matrix(self, a, p):
        result = cond_inequality(horodecki_mixture(a, p))
        lhs, rhs = horodecki_cond_terms(a, p)
        assert result.lhs == pytest.approx(lhs, abs=1e-12)
        assert result.rhs == pytest.approx(rhs, abs=1e-12)

    @pytest.mark.parametrize("a", [0.1, 0.236, 0.5, 0.9])
    def test_min_p_is_detection_edge(self, a):
        edge = horodecki_min_p(a)
        assert cond_inequality(horodecki_mixture(a, edge + 1e-6)).violated
        assert not cond_inequality(horodecki_mixture(a, edge - 1e-6)).violated

    def test_min_p_value(self):
        assert horodecki_min_p(0.1) == pytest.approx(0.2451, abs=1e-3)


class TestUpbClosedForm:
    @pytest.mark.parametrize("p", [0.0, 0.05, 0.3, 7 / 15, 0.6, 1.0])
    def test_cond_terms_match_matrix(self, p):
        result = cond_inequality(upb_mixture(p))
        lhs, rhs = upb_cond_terms(p)
        assert result.lhs == pytest.approx(lhs, abs=1e-12)
        assert result.rhs == pytest.approx(rhs, abs=1e-12)

    def test_threshold(self):
        assert upb_threshold() == pytest.approx(7 / 15, abs=1e-10)

    def test_ppt_until_mixed_in(self):
        assert not ppt_test(upb_mixture(0.0)).npt
        assert ppt_test(upb_mixture(0.5)).npt


class TestBisectDetection:
    def test_narrows_bracket(self):
        lo, hi = bisect_detection(lambda x: x > 0.3, 0.0, 1.0, 1e-9)
        assert lo <= 0.3 < hi
        assert hi - lo <= 1e-9

    def test_requires_bracket(self):
        with pytest.raises(DomainError):
            bisect_detection(lambda x: True, 0.0, 1.0, 1e-6)


class TestAnalyze:
    def test_bell_report(self):
        report = analyze(_BELL)
        assert report.pure_flag
        assert report.pure_product_flag is False
        assert report.ppt.npt
        assert report.cond_violated
        assert report.entangled

    def test_maximally_mixed_report(self):
        report = analyze(validate(np.eye(4) / 4, _QUBITS))
        assert report.purity == pytest.approx(0.25)
        assert not report.pure_flag
        assert report.pure_product_flag is None
        assert not report.entangled

    def test_product_report(self, rng):
        report = analyze(random_product(BipartiteDims(3, 3), rng))
        assert report.pure_product_flag is True
        assert not report.entangled

    def test_rectangular_skips_inequality(self, caplog):
        with caplog.at_level(logging.WARNING):
            report = analyze(validate(np.eye(6) / 6, BipartiteDims(2, 3)))
        assert report.cond is None
        assert not report.cond_violated
        assert "d1 = d2" in caplog.text

    def test_insep_detected(self):
        report = analyze(horodecki_insep())
        assert report.cond_violated
        assert report.entangled

    def test_ppt_entangled_state_is_inconclusive(self):
        report = analyze(horodecki_mixture(0.5, 0.0))
        assert not report.ppt.npt
        assert not report.cond_violated
        assert not report.entangled

    def test_tolerances_recorded(self):
        report = analyze(_BELL, Tolerances.uniform(1e-6))
        assert report.as_dict()["tolerances"]["npt"] == 1e-6

    def test_report_dict_is_plain(self):
        data = analyze(_BELL).as_dict()
        assert data["entangled"] is True
        assert data["dims"] == [2, 2]
        assert isinstance(data["cond_lhs"], float)
