# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Gray-code enumeration kernel for Gauss sums over Z2^dim.

Walks all 2^dim vectors flipping one coordinate at a time, maintaining the
current value q(x) in Z4 and the vector of pairings lambda(x, e_j) as a bit
mask.  One step is O(1): when bit t flips,

    q(x + e_t) = q(x) + q(e_t) + 2*lambda(x, e_t)   (mod 4)
    lambda(x + e_t, -) = lambda(x, -) XOR row_t.

Returns the four counts #{x : q(x) = c}, c in Z4, from which the Gauss sum
S = (c0 - c2) + (c1 - c3) i is exact.
"""

from libc.stdint cimport int64_t, uint32_t, uint64_t


def gauss_counts(int dim, object qdiag, object rows):
    """Counts of q-values over all of Z2^dim.

    qdiag: sequence of dim values in {0,1,2,3} (q on the basis vectors)
    rows:  sequence of dim bit masks (rows of the Gram matrix)
    """
    if dim < 0 or dim > 30:
        raise ValueError("dim out of range for the enumeration kernel")
    cdef int64_t counts[4]
    cdef uint32_t crows[32]
    cdef int cq[32]
    cdef int j
    counts[0] = 0
    counts[1] = 0
    counts[2] = 0
    counts[3] = 0
    for j in range(dim):
        crows[j] = <uint32_t> rows[j]
        cq[j] = <int> qdiag[j]
    cdef uint64_t i, total = (<uint64_t> 1) << dim
    cdef uint32_t lam = 0
    cdef int q = 0
    cdef int t
    cdef uint64_t low
    counts[0] = 1  # x = 0
    i = 1
    while i < total:
        # Gray step: bit t = ctz(i) flips
        low = i & (~i + 1)
        t = 0
        while not (low & 1):
            low >>= 1
            t += 1
        q = (q + cq[t] + 2 * ((lam >> t) & 1)) & 3
        lam ^= crows[t]
        counts[q] += 1
        i += 1
    return (counts[0], counts[1], counts[2], counts[3])


def backend() -> str:
    return "cython"
