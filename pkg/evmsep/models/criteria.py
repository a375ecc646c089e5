"""
Defines tolerance bundles and result containers for the detection criteria.
"""

from dataclasses import dataclass, field, replace

__all__ = [
    "Tolerances",
    "DEFAULT_TOLERANCES",
    "PPTResult",
    "CondResult",
    "PairTerm",
    "WitnessValue",
    "CriterionReport",
]


@dataclass(slots=True, frozen=True)
class Tolerances:
    """
    Absolute tolerances used by validation and the criteria.

    :param hermitian: Max-norm bound on M − M†.
    :param trace: Bound on |Tr ρ − 1|.
    :param psd: Smallest admissible eigenvalue is −psd.
    :param purity: Tr ρ² within this of 1 counts as pure.
    :param product: Per-diagonal-entry tolerance of the pure-product condition.
    :param violation: The separability inequality is violated only when lhs > rhs + violation.
    :param npt: A partial-transpose eigenvalue below −npt flags NPT.
    """

    hermitian: float = 1e-9
    trace: float = 1e-9
    psd: float = 1e-9
    purity: float = 1e-9
    product: float = 1e-9
    violation: float = 1e-9
    npt: float = 1e-9

    @classmethod
    def uniform(cls, tol: float) -> "Tolerances":
        """
        Same tolerance for every check (the CLI ``--tol``).

        :param tol: Absolute tolerance.
        :return: Tolerances with every field set to tol.
        """
        return cls(tol, tol, tol, tol, tol, tol, tol)

    def with_overrides(self, **overrides: float) -> "Tolerances":
        """Copy with selected fields replaced."""
        return replace(self, **overrides)


DEFAULT_TOLERANCES = Tolerances()


@dataclass(slots=True, frozen=True)
class PPTResult:
    """
    Outcome of the partial-transpose test.

    :param min_eig_1: Smallest eigenvalue of ρ^{T_1}.
    :param min_eig_2: Smallest eigenvalue of ρ^{T_2}.
    :param npt: True when either is below −tol (entangled).
    """

    min_eig_1: float
    min_eig_2: float
    npt: bool


@dataclass(slots=True, frozen=True)
class CondResult:
    """
    Both sides of the d⊗d separability inequality.

    :param lhs: 2·max of the two off-diagonal sums.
    :param rhs: Diagonal and geometric-mean side.
    :param violated: lhs > rhs + tol (entangled); False is inconclusive.
    """

    lhs: float
    rhs: float
    violated: bool

    @property
    def margin(self) -> float:
        """lhs − rhs; positive means the inequality is broken."""
        return self.lhs - self.rhs


@dataclass(slots=True, frozen=True)
class PairTerm:
    """
    One (i, j) pair of the separability inequality.

    Summing ``bound`` over all pairs gives the right side of the full inequality.

    :param i: Smaller basis label.
    :param j: Larger basis label.
    :param diagonal_coherence: |⟨ii|ρ|jj⟩|.
    :param swap_coherence: |⟨ij|ρ|ji⟩|.
    :param bound: (⟨ii|ρ|ii⟩ + ⟨jj|ρ|jj⟩)/2 + √(⟨ij|ρ|ij⟩⟨ji|ρ|ji⟩).
    :param violated: 2·max(coherences) > bound + tol.
    """

    i: int
    j: int
    diagonal_coherence: float
    swap_coherence: float
    bound: float
    violated: bool


@dataclass(slots=True, frozen=True)
class WitnessValue:
    """
    Closed-form witness for a parametrized family.

    :param name: ``"p"`` (Werner) or ``"q"`` (isotropic).
    :param value: rhs/lhs ratio; +inf at the separable end point.
    :param detected: value < 1 − tol.
    """

    name: str
    value: float
    detected: bool


@dataclass(slots=True)
class CriterionReport:
    """
    Aggregated verdicts for one state.

    :param dims: (d1, d2).
    :param purity: Tr ρ².
    :param pure_flag: Purity within tolerance of 1.
    :param ppt: Partial-transpose outcome.
    :param cond: Separability inequality outcome; None when d1 ≠ d2.
    :param pure_product_flag: Pure-product verdict; None unless pure.
    :param pure_product_diagonal: Per-k verdicts of the pure-product condition (1-based order).
    :param witness: p or q value when the state carries a Werner/isotropic provenance.
    :param tolerances: Tolerances the verdicts were computed with.
    """

    dims: tuple[int, int]
    purity: float
    pure_flag: bool
    ppt: PPTResult
    cond: CondResult | None = None
    pure_product_flag: bool | None = None
    pure_product_diagonal: tuple[bool, ...] = field(default_factory=tuple)
    witness: WitnessValue | None = None
    tolerances: Tolerances = DEFAULT_TOLERANCES

    @property
    def cond_violated(self) -> bool:
        """True only when the separability inequality was evaluated and is broken."""
        return self.cond is not None and self.cond.violated

    @property
    def entangled(self) -> bool:
        """Any criterion certifies entanglement."""
        return self.ppt.npt or self.cond_violated or (self.pure_flag and self.pure_product_flag is False)

    def as_dict(self) -> dict:
        """
        JSON-ready representation (the ``report`` object of the state container).

        :return: Plain dict of floats, bools and None.
        """
        return {
            "dims": list(self.dims),
            "purity": self.purity,
            "pure": self.pure_flag,
            "pure_product": self.pure_product_flag,
            "ppt_min_eig_1": self.ppt.min_eig_1,
            "ppt_min_eig_2": self.ppt.min_eig_2,
            "npt": self.ppt.npt,
            "cond_lhs": None if self.cond is None else self.cond.lhs,
            "cond_rhs": None if self.cond is None else self.cond.rhs,
            "cond_violated": None if self.cond is None else self.cond.violated,
            "witness": None if self.witness is None else {self.witness.name: self.witness.value},
            "entangled": self.entangled,
            "tolerances": {
                "hermitian": self.tolerances.hermitian,
                "trace": self.tolerances.trace,
                "psd": self.tolerances.psd,
                "purity": self.tolerances.purity,
                "product": self.tolerances.product,
                "violation": self.tolerances.violation,
                "npt": self.tolerances.npt,
            },
        }
