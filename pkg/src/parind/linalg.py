"""Dense linear algebra over a :class:`~parind.gfield.Field`.

Matrices are numpy int64 arrays of field codes.  Subspaces are stored as
row bases; action matrices act on column vectors (``v -> A @ v``).
"""

from __future__ import annotations

import itertools

import numpy as np

from .gfield import Field


def rref(F: Field, A, col_order=None):
    """Reduced row echelon form.

    ``col_order`` is the sequence in which columns are tried as pivots
    (default left to right).  Returns ``(R, pivots)`` with ``R`` holding
    only the nonzero rows and ``pivots[i]`` the pivot column of row i.
    """
    R = np.array(A, dtype=np.int64, copy=True)
    if R.ndim != 2:
        raise ValueError("rref expects a matrix")
    nrows, ncols = R.shape
    cols = range(ncols) if col_order is None else col_order
    pivots = []
    r = 0
    for c in cols:
        if r == nrows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        if R[r, c] != 1:
            R[r] = F.vmul(R[r], F.inv(int(R[r, c])))
        col = R[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            R[rows] = F.vsub(R[rows], F.vmul(col[rows, None], R[r][None, :]))
        pivots.append(c)
        r += 1
    return R[:r], pivots


def rank(F: Field, A) -> int:
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        return 0
    return len(rref(F, A)[1])


def nullspace(F: Field, A):
    """Row basis of ``{v : A @ v = 0}``."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, pivots = rref(F, A)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for i, c in enumerate(free):
        basis[i, c] = 1
        for row, pc in enumerate(pivots):
            basis[i, pc] = F.neg(int(R[row, c]))
    return basis


def left_nullspace(F: Field, A):
    """Row basis of ``{w : w @ A = 0}``."""
    return nullspace(F, np.asarray(A, dtype=np.int64).T)


def reduce_vectors(F: Field, basis, pivots, V):
    """Reduce the rows of V modulo an RREF basis (in place on a copy)."""
    V = np.array(V, dtype=np.int64, copy=True)
    for row, c in zip(basis, pivots):
        coef = V[:, c]
        nz = np.nonzero(coef)[0]
        if nz.size:
            V[nz] = F.vsub(V[nz], F.vmul(coef[nz, None], row[None, :]))
    return V


def in_span(F: Field, basis, v) -> bool:
    basis = np.asarray(basis, dtype=np.int64)
    if basis.shape[0] == 0:
        return not np.any(v)
    R, piv = rref(F, basis)
    return not np.any(reduce_vectors(F, R, piv, np.atleast_2d(v)))


def same_span(F: Field, A, B) -> bool:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    ra, rb = rank(F, A), rank(F, B)
    if ra != rb:
        return False
    if ra == 0:
        return True
    return rank(F, np.vstack([A, B])) == ra


def matpow(F: Field, A, n: int):
    A = np.asarray(A, dtype=np.int64)
    result = np.eye(A.shape[0], dtype=np.int64)
    base = A
    while n:
        if n & 1:
            result = F.matmul(result, base)
        base = F.matmul(base, base)
        n >>= 1
    return result


def commutator(F: Field, A, B):
    return F.vsub(F.matmul(A, B), F.matmul(B, A))


def scale(F: Field, c: int, A):
    return F.vmul(np.int64(c), np.asarray(A, dtype=np.int64))


def projective_points(F: Field, basis):
    """Yield one representative of every line in the row span of ``basis``.

    Representatives have their first nonzero coordinate (in the basis
    coefficient vector) equal to one.
    """
    basis = np.asarray(basis, dtype=np.int64)
    d = basis.shape[0]
    for lead in range(d):
        for tail in itertools.product(range(F.q), repeat=d - lead - 1):
            coeffs = np.zeros(d, dtype=np.int64)
            coeffs[lead] = 1
            coeffs[lead + 1 :] = tail
            yield F.matmul(coeffs[None, :], basis)[0]


def count_projective_points(q: int, d: int) -> int:
    return (q**d - 1) // (q - 1)
