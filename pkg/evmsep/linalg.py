"""
Dense complex linear algebra.

Adjoints, Kronecker products, traces and a cyclic complex Jacobi eigensolver
for Hermitian matrices. Every function returns read-only ``complex128``
arrays and leaves its inputs untouched.
"""

import logging

import numpy as np
import numpy.typing as npt

from evmsep.models.errors import ConvergenceError, NonSquareError, NotHermitianError
from evmsep.models.state import ComplexMatrix

__all__ = [
    "DEFAULT_HERMITIAN_TOL",
    "DEFAULT_MAX_SWEEPS",
    "JACOBI_REL_TOL",
    "as_matrix",
    "dagger",
    "kron",
    "trace",
    "hermiticity_defect",
    "is_hermitian",
    "purity",
    "eig_hermitian",
    "min_eigenvalue",
]

_LOGGER = logging.getLogger(__name__)

DEFAULT_HERMITIAN_TOL = 1e-9
DEFAULT_MAX_SWEEPS = 64
#: Sweeps stop once the off-diagonal Frobenius norm drops below this fraction of ‖M‖_F.
JACOBI_REL_TOL = 1e-12


def _readonly(arr: np.ndarray) -> ComplexMatrix:
    arr.flags.writeable = False
    return arr


def as_matrix(values: npt.ArrayLike) -> ComplexMatrix:
    """
    Coerces input into a read-only 2-D complex matrix.

    :param values: Nested sequence or array.
    :return: Copy as ``complex128`` with at least one row and column.
    """
    mat = np.array(values, dtype=np.complex128)
    if mat.ndim != 2 or mat.shape[0] < 1 or mat.shape[1] < 1:
        raise NonSquareError(f"expected a non-empty 2-D matrix, got shape {mat.shape}")
    return _readonly(mat)


def _require_square(mat: np.ndarray) -> None:
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise NonSquareError(f"expected a square matrix, got shape {mat.shape}")


def dagger(mat: npt.ArrayLike) -> ComplexMatrix:
    """
    Conjugate transpose.

    :param mat: Any 2-D matrix.
    :return: M†, with transposed shape.
    """
    return _readonly(as_matrix(mat).conj().T.copy())


def kron(left: npt.ArrayLike, right: npt.ArrayLike) -> ComplexMatrix:
    """
    Kronecker product; block (i, j) of the result is left[i, j]·right.

    :param left: Outer factor.
    :param right: Inner factor.
    :return: Matrix of shape (r1·r2, c1·c2).
    """
    return _readonly(np.kron(as_matrix(left), as_matrix(right)))


def trace(mat: npt.ArrayLike) -> complex:
    """
    Sum of the diagonal.

    :param mat: Square matrix.
    :return: Complex trace.
    """
    arr = np.asarray(mat)
    _require_square(arr)
    return complex(np.trace(arr))


def hermiticity_defect(mat: npt.ArrayLike) -> float:
    """
    Max-norm of M − M†.

    :param mat: Square matrix.
    :return: Largest absolute entry of the anti-Hermitian part times two.
    """
    arr = as_matrix(mat)
    _require_square(arr)
    return float(np.max(np.abs(arr - arr.conj().T)))


def is_hermitian(mat: npt.ArrayLike, tol: float = DEFAULT_HERMITIAN_TOL) -> bool:
    """True when ‖M − M†‖_max ≤ tol."""
    return hermiticity_defect(mat) <= tol


def purity(mat: npt.ArrayLike) -> float:
    """
    Re Tr(M·M).

    :param mat: Square matrix.
    :return: Real part of the trace of the square.
    """
    arr = as_matrix(mat)
    _require_square(arr)
    return float(np.real(np.einsum("ij,ji->", arr, arr)))


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """
    Partitions all pairs p < q of range(n) into rounds of disjoint pairs.

    :param n: Matrix order.
    :return: One (P, Q) index-array pair per round.
    """
    m = n + (n % 2)
    order = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = [(order[i], order[m - 1 - i]) for i in range(m // 2)]
        pairs = [(min(p, q), max(p, q)) for p, q in pairs if p < n and q < n]
        rounds.append((np.array([p for p, _ in pairs]), np.array([q for _, q in pairs])))
        order = [order[0], order[-1]] + order[1:-1]
    return rounds


def _off_norm(mat: np.ndarray) -> float:
    return float(np.sqrt(max(np.sum(np.abs(mat) ** 2) - np.sum(np.abs(np.diag(mat)) ** 2), 0.0)))


def eig_hermitian(
    mat: npt.ArrayLike, tol: float = DEFAULT_HERMITIAN_TOL, max_sweeps: int = DEFAULT_MAX_SWEEPS
) -> np.ndarray:
    """
    Eigenvalues of a Hermitian matrix by cyclic complex Jacobi sweeps.

    Each sweep annihilates every off-diagonal pair once. Pairs are grouped in
    round-robin rounds of disjoint index pairs so a whole round is applied as
    one vectorized two-sided update.

    :param mat: Square matrix with ‖M − M†‖_max ≤ tol.
    :param tol: Hermiticity tolerance.
    :param max_sweeps: Sweep budget before :class:`ConvergenceError`.
    :return: Real eigenvalues in ascending order.
    """
    arr = as_matrix(mat)
    _require_square(arr)
    defect = hermiticity_defect(arr)
    if defect > tol:
        raise NotHermitianError(defect, tol)

    work = (arr + arr.conj().T) / 2
    n = work.shape[0]
    scale = float(np.linalg.norm(work))
    if n == 1 or scale == 0.0:
        return np.sort(np.real(np.diag(work)))

    target = JACOBI_REL_TOL * scale
    rounds = _round_robin(n)
    for sweep in range(max_sweeps + 1):
        off = _off_norm(work)
        if off < target:
            _LOGGER.debug("Jacobi converged on %dx%d after %d sweeps (off-norm %.3e).", n, n, sweep, off)
            return np.sort(np.real(np.diag(work)))
        if sweep == max_sweeps:
            break
        for p, q in rounds:
            apq = work[p, q]
            r = np.abs(apq)
            phase = np.exp(-1j * np.angle(apq))
            theta = 0.5 * np.arctan2(2 * r, np.real(work[q, q]) - np.real(work[p, p]))
            theta = np.where(theta > np.pi / 4, theta - np.pi / 2, theta)
            c, s = np.cos(theta), np.sin(theta)
            # U restricted to (p, q): [[c, s], [-s e^{-iφ}, c e^{-iφ}]]
            u_pp, u_pq, u_qp, u_qq = c, s, -s * phase, c * phase

            col_p, col_q = work[:, p].copy(), work[:, q].copy()
            work[:, p] = col_p * u_pp + col_q * u_qp
            work[:, q] = col_p * u_pq + col_q * u_qq
            row_p, row_q = work[p, :].copy(), work[q, :].copy()
            work[p, :] = np.conj(u_pp)[:, None] * row_p + np.conj(u_qp)[:, None] * row_q
            work[q, :] = np.conj(u_pq)[:, None] * row_p + np.conj(u_qq)[:, None] * row_q
            work[p, q] = 0.0
            work[q, p] = 0.0

    raise ConvergenceError(f"Jacobi did not converge on a {n}x{n} matrix within {max_sweeps} sweeps")


def min_eigenvalue(mat: npt.ArrayLike, tol: float = DEFAULT_HERMITIAN_TOL) -> float:
    """
    Smallest eigenvalue of a Hermitian matrix.

    :param mat: Square Hermitian matrix.
    :param tol: Hermiticity tolerance.
    :return: Minimum of :func:`eig_hermitian`.
    """
    return float(eig_hermitian(mat, tol)[0])
