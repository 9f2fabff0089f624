"""Exact row reduction over a field (prime fields vectorized with numpy)."""

from __future__ import annotations

import numpy as np

from .ring import Ring, _Modular


def rref(ring: Ring, rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    if not ring.is_field:
        raise ValueError(f"row reduction needs a field, got {ring}")
    if isinstance(ring, _Modular) and ring.m < 2**31:
        return _rref_modp(ring.m, rows, ncols)
    return _rref_generic(ring, rows, ncols)


def _rref_modp(p: int, rows, ncols):
    if not rows or ncols == 0:
        return [], []
    A = np.array(rows, dtype=np.int64).reshape(len(rows), ncols) % p
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(A):
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        col = A[:, c].copy()
        col[r] = 0
        A = (A - np.outer(col, A[r]) % p) % p
        pivots.append(c)
        r += 1
    return [list(map(int, row)) for row in A[:r]], pivots


def _rref_generic(ring: Ring, rows, ncols):
    A = [list(r) for r in rows]
    pivots = []
    r = 0
    is_zero, mul, sub = ring.is_zero, ring.mul, ring.sub
    for c in range(ncols):
        k = next((i for i in range(r, len(A)) if not is_zero(A[i][c])), None)
        if k is None:
            continue
        A[r], A[k] = A[k], A[r]
        inv = ring.inv(A[r][c])
        A[r] = [mul(inv, x) for x in A[r]]
        for i in range(len(A)):
            if i != r and not is_zero(A[i][c]):
                f = A[i][c]
                A[i] = [sub(x, mul(f, y)) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(ring: Ring, rows: list[list], ncols: int) -> int:
    return len(rref(ring, rows, ncols)[1])


def nullspace(ring: Ring, rows: list[list], ncols: int) -> list[list]:
    """Basis of ``{x : A x = 0}``, one vector per free column."""
    R, pivots = rref(ring, rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [ring.zero] * ncols
        v[f] = ring.one
        for row, pc in zip(R, pivots):
            v[pc] = ring.neg(row[f])
        basis.append(v)
    return basis
