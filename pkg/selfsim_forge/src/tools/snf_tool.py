"""
Exact Smith normal form over the integers.

Matrices are numpy arrays of dtype=object so every entry stays a Python int.
The reduction alternates clearing a pivot column with row operations and the
pivot row with column operations (each a 2×2 extended-gcd step), then repairs
the divisibility chain of the diagonal.
"""

import logging
from typing import List, Sequence, Tuple

import numpy as np
from sympy import Matrix

from ..models.report_models import AbelianGroup


logger = logging.getLogger(__name__)


def exgcd(a: int, b: int) -> np.ndarray:
    """
    A determinant-one 2×2 matrix M with M·[a, b]ᵀ = [gcd(a, b), 0]ᵀ.

    When a divides b the top-right entry is 0.
    """
    a_sign = -1 if a < 0 else 1
    b_sign = -1 if b < 0 else 1
    a, b = a * a_sign, b * b_sign
    work = np.array([[b, 0, 1], [a, 1, 0]], dtype=object)
    while work[1, 0] != 0:
        q = work[0, 0] // work[1, 0]
        work[0] -= q * work[1]
        work = work[::-1].copy()
    g = work[0, 0]
    M = work[:, 1:].copy()
    M[:, 0] *= a_sign
    M[:, 1] *= b_sign
    if g != 0:
        M[1] = [-b_sign * b // g, a_sign * a // g]
    return M


def as_integer_matrix(rows: Sequence[Sequence[int]]) -> np.ndarray:
    return np.array([[int(v) for v in row] for row in rows], dtype=object).reshape(len(rows), -1)


class _Reduction:
    """Running state U·M·V = D of the reduction."""

    def __init__(self, M: np.ndarray):
        self.M = M
        self.D = M.copy()
        rows, cols = M.shape
        self.U = np.eye(rows, dtype=object)
        self.V = np.eye(cols, dtype=object)

    def row_op(self, i: int, j: int, R: np.ndarray) -> None:
        self.D[[i, j]] = R.dot(self.D[[i, j]])
        self.U[[i, j]] = R.dot(self.U[[i, j]])

    def col_op(self, i: int, j: int, C: np.ndarray) -> None:
        self.D[:, [i, j]] = self.D[:, [i, j]].dot(C)
        self.V[:, [i, j]] = self.V[:, [i, j]].dot(C)

    def clear_col(self, i: int) -> bool:
        if all(self.D[k, i] == 0 for k in range(i + 1, self.D.shape[0])):
            return False
        for j in range(i + 1, self.D.shape[0]):
            self.row_op(i, j, exgcd(self.D[i, i], self.D[j, i]))
        return True

    def clear_row(self, i: int) -> bool:
        if all(self.D[i, k] == 0 for k in range(i + 1, self.D.shape[1])):
            return False
        for j in range(i + 1, self.D.shape[1]):
            self.col_op(i, j, exgcd(self.D[i, i], self.D[i, j]).T)
        return True

    def clear(self, i: int) -> None:
        self.clear_col(i)
        while self.clear_row(i) and self.clear_col(i):
            pass

    def diagonalize(self) -> None:
        for i in range(min(self.D.shape)):
            self.clear(i)

    def fix_divisibility(self) -> None:
        n = min(self.D.shape)
        changed = True
        while changed:
            changed = False
            for i in range(n):
                for j in range(i + 1, n):
                    a, b = self.D[i, i], self.D[j, j]
                    if (a == 0 and b != 0) or (a != 0 and b % a != 0):
                        # col_i += col_j puts b below the pivot, then re-clear
                        self.col_op(i, j, np.array([[1, 0], [1, 1]], dtype=object))
                        for k in range(i, n):
                            self.clear(k)
                        changed = True

    def fix_signs(self) -> None:
        for i in range(min(self.D.shape)):
            if self.D[i, i] < 0:
                self.D[i] *= -1
                self.U[i] *= -1


def smith_normal_form(M) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    (U, S, V) with U·M·V = S, U and V unimodular, S diagonal with
    nonnegative entries d₁ | d₂ | … (zeros last).
    """
    M = M if isinstance(M, np.ndarray) else as_integer_matrix(M)
    M = M.astype(object)
    if M.size == 0:
        return np.eye(M.shape[0], dtype=object), M.copy(), np.eye(M.shape[1], dtype=object)
    work = _Reduction(M)
    work.diagonalize()
    work.fix_divisibility()
    work.fix_signs()
    U, S, V = work.U, work.D, work.V
    assert (U.dot(M).dot(V) == S).all(), "U·M·V must equal S"
    assert abs(Matrix(U.tolist()).det()) == 1 and abs(Matrix(V.tolist()).det()) == 1, "U and V must be unimodular"
    return U, S, V


def invariant_factors(M) -> List[int]:
    """The diagonal of the Smith form, zeros included."""
    _, S, _ = smith_normal_form(M)
    return [int(S[i, i]) for i in range(min(S.shape))]


def is_divisibility_chain(values: Sequence[int]) -> bool:
    for a, b in zip(values, values[1:]):
        if a == 0 and b != 0:
            return False
        if a != 0 and b % a != 0:
            return False
    return True


def cokernel(M) -> AbelianGroup:
    """ℤ^rows / image(M)."""
    M = M if isinstance(M, np.ndarray) else as_integer_matrix(M)
    factors = invariant_factors(M)
    nonzero = [d for d in factors if d != 0]
    free_rank = M.shape[0] - len(nonzero)
    return AbelianGroup(free_rank=free_rank, torsion=[d for d in nonzero if d > 1])


def kernel(M) -> AbelianGroup:
    """ker(M) ⊂ ℤ^cols, always free."""
    M = M if isinstance(M, np.ndarray) else as_integer_matrix(M)
    rank = Matrix(M.tolist()).rank() if M.size else 0
    return AbelianGroup(free_rank=M.shape[1] - rank)
