"""Pure-Python (numpy) fallback for the Gauss-sum enumeration kernel.

Builds the table of q-values over Z2^dim by doubling: if q is known on the
span of e_0..e_{j-1} then on the coset +e_j it is q + q(e_j) + 2*lambda(x, e_j),
and lambda(x, e_j) is itself built by doubling over the earlier coordinates.
"""
from __future__ import annotations

import numpy as np

__all__ = ["gauss_counts", "backend"]


def gauss_counts(dim: int, qdiag, rows):
    """Counts of q-values over all of Z2^dim; same contract as the C kernel."""
    if dim < 0 or dim > 30:
        raise ValueError("dim out of range for the enumeration kernel")
    q = np.zeros(1, dtype=np.uint8)
    for j in range(dim):
        lam = np.zeros(1, dtype=np.uint8)
        row = rows[j]
        for i in range(j):
            bit = (row >> i) & 1
            lam = np.concatenate([lam, lam ^ bit])
        qj = (q + qdiag[j] + 2 * lam) & 3
        q = np.concatenate([q, qj])
    counts = np.bincount(q, minlength=4)
    return (int(counts[0]), int(counts[1]), int(counts[2]), int(counts[3]))


def backend() -> str:
    return "python"
