"""Gaussian elimination over F_p on small integer matrices."""

from __future__ import annotations

import numpy as np


def row_reduce(rows, p: int) -> np.ndarray:
    """Return the reduced row echelon form of ``rows`` mod p, zero rows dropped."""
    m = np.array(rows, dtype=np.int64) % p
    if m.ndim == 1:
        m = m.reshape(1, -1)
    nrows, ncols = m.shape
    lead = 0
    for col in range(ncols):
        if lead >= nrows:
            break
        pivot = next((r for r in range(lead, nrows) if m[r, col]), None)
        if pivot is None:
            continue
        m[[lead, pivot]] = m[[pivot, lead]]
        m[lead] = (m[lead] * pow(int(m[lead, col]), -1, p)) % p
        for r in range(nrows):
            if r != lead and m[r, col]:
                m[r] = (m[r] - m[r, col] * m[lead]) % p
        lead += 1
    return m[:lead]


def rank(rows, p: int) -> int:
    if len(rows) == 0:
        return 0
    return row_reduce(rows, p).shape[0]


def in_span(vector, rows, p: int) -> bool:
    if len(rows) == 0:
        return not np.any(np.asarray(vector) % p)
    return rank(list(rows) + [vector], p) == rank(rows, p)


def nullspace(rows, ncols: int, p: int) -> np.ndarray:
    """Basis (as rows) of {x : rows @ x = 0 mod p}."""
    if len(rows) == 0:
        return np.eye(ncols, dtype=np.int64)
    r = row_reduce(rows, p)
    pivots = []
    for row in r:
        pivots.append(int(np.flatnonzero(row)[0]))
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros(ncols, dtype=np.int64)
        v[f] = 1
        for row, pc in zip(r, pivots):
            v[pc] = (-row[f]) % p
        basis.append(v)
    if not basis:
        return np.zeros((0, ncols), dtype=np.int64)
    return np.array(basis)
