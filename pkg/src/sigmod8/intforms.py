"""Symmetric forms over Z and Q: exact signatures and mod-8 identities.

The signature is computed by congruence diagonalization in exact rational
arithmetic (no eigenvalues).  For a unimodular integral form the
characteristic (Wu) vector v satisfies phi(x,x) = phi(x,v) mod 2 and ties
three quantities together mod 8: the signature, phi(v,v) (van der Blij),
and the Brown-Kervaire invariant of the mod-4 reduction (Morita/Brown).

Nondegenerate even forms with 2-primary cokernel bound a quadratic linking
form (T, b, q) on T = coker(phi), with b = phi^{-1} mod Z and q = phi^{-1}
on the diagonal mod 2Z; its Gauss sum sum_x e^(pi i q(x)) recovers the
signature mod 8.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .enhancements import Z4Quadratic, arf, isotropic_subquotient
from .errors import (
    DegenerateForm,
    GroupTooLarge,
    NoGaussMatch,
    NotMod4Multiplicative,
    NotTwoPrimary,
    NotUnimodular,
    OddDiagonal,
)
from .z2forms import Z2SymForm, solve

__all__ = [
    "IntSymForm",
    "RatSymForm",
    "LinkingForm",
    "signature_exact",
    "characteristic_vector",
    "reduce_to_enhanced",
    "van_der_blij_residue",
    "boundary_linking_form",
    "bk_linking",
    "tensor_product",
    "multiplicativity_defect",
    "DefectReport",
    "smith_normal_form",
]

LINKING_GROUP_LIMIT = 1 << 20
GAUSS_SNAP_TOL = 1e-6


def _check_symmetric(matrix: Tuple[Tuple, ...]) -> None:
    n = len(matrix)
    for row in matrix:
        if len(row) != n:
            raise ValueError("matrix is not square")
    for i in range(n):
        for j in range(i + 1, n):
            if matrix[i][j] != matrix[j][i]:
                raise ValueError("matrix is not symmetric")


@dataclass(frozen=True)
class IntSymForm:
    """Symmetric bilinear form over Z (arbitrary-precision entries)."""

    dim: int
    matrix: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.matrix) != self.dim:
            raise ValueError("matrix size must equal dim")
        _check_symmetric(self.matrix)

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]]) -> "IntSymForm":
        return cls(len(matrix), tuple(tuple(int(x) for x in r) for r in matrix))

    @classmethod
    def diagonal(cls, entries: Sequence[int]) -> "IntSymForm":
        n = len(entries)
        return cls(n, tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n)))

    def determinant(self) -> int:
        return _det_bareiss(self.matrix)

    def is_unimodular(self) -> bool:
        return abs(self.determinant()) == 1

    def direct_sum(self, other: "IntSymForm") -> "IntSymForm":
        n, m = self.dim, other.dim
        rows = [tuple(self.matrix[i]) + (0,) * m for i in range(n)]
        rows += [(0,) * n + tuple(other.matrix[i]) for i in range(m)]
        return IntSymForm(n + m, tuple(rows))

    def negate(self) -> "IntSymForm":
        return IntSymForm(self.dim, tuple(tuple(-x for x in r) for r in self.matrix))

    def to_rational(self) -> "RatSymForm":
        return RatSymForm(
            self.dim, tuple(tuple(Fraction(x) for x in r) for r in self.matrix)
        )

    def evaluate(self, x: Sequence[int], y: Sequence[int]) -> int:
        return sum(
            x[i] * self.matrix[i][j] * y[j] for i in range(self.dim) for j in range(self.dim)
        )


@dataclass(frozen=True)
class RatSymForm:
    """Symmetric bilinear form over Q with exact Fraction entries."""

    dim: int
    matrix: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.matrix) != self.dim:
            raise ValueError("matrix size must equal dim")
        _check_symmetric(self.matrix)

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence]) -> "RatSymForm":
        return cls(len(matrix), tuple(tuple(Fraction(x) for x in r) for r in matrix))


def _det_bareiss(matrix: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    n = len(matrix)
    if n == 0:
        return 1
    m = [list(row) for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def signature_exact(form: RatSymForm) -> int:
    """p - n after exact congruence diagonalization; the radical counts 0.

    Zero-diagonal blocks are handled by the symmetric rank-2 step (add row
    and column j to i), which contributes one positive and one negative
    entry, i.e. 0 to the signature.
    """
    n = form.dim
    m = [list(row) for row in form.matrix]
    active = list(range(n))
    pos = neg = 0
    while active:
        piv = next((i for i in active if m[i][i] != 0), None)
        if piv is None:
            offdiag = None
            for ai, i in enumerate(active):
                for j in active[ai + 1 :]:
                    if m[i][j] != 0:
                        offdiag = (i, j)
                        break
                if offdiag:
                    break
            if offdiag is None:
                break  # remaining block is the radical
            i, j = offdiag
            for k in range(n):
                m[i][k] += m[j][k]
            for k in range(n):
                m[k][i] += m[k][j]
            piv = i
        d = m[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        factors = {i: m[i][piv] / d for i in active}
        for i in active:
            f = factors[i]
            if f:
                for j in active:
                    m[i][j] -= f * m[piv][j]
    return pos - neg


def characteristic_vector(form: IntSymForm) -> Tuple[int, ...]:
    """v with phi(x,x) = phi(x,v) mod 2, entries in {0,1}; needs det = +-1."""
    if not form.is_unimodular():
        raise NotUnimodular("characteristic vector needs a unimodular form")
    rows = [
        sum(((form.matrix[i][j] & 1) << j) for j in range(form.dim))
        for i in range(form.dim)
    ]
    diag = sum(((form.matrix[i][i] & 1) << i) for i in range(form.dim))
    v = solve(rows, form.dim, diag)
    return tuple((v >> i) & 1 for i in range(form.dim))


def reduce_to_enhanced(form: IntSymForm) -> Z4Quadratic:
    """(E/2E, phi mod 2, x -> phi(x,x) mod 4); BK of it equals sigma mod 8."""
    if not form.is_unimodular():
        raise NotUnimodular("mod-4 reduction needs a unimodular form")
    z2 = Z2SymForm.from_matrix([[x & 1 for x in row] for row in form.matrix])
    values = tuple(form.matrix[i][i] % 4 for i in range(form.dim))
    return Z4Quadratic(z2, values)


def van_der_blij_residue(form: IntSymForm) -> int:
    """phi(v, v) mod 8 for the characteristic vector v; equals sigma mod 8."""
    v = characteristic_vector(form)
    return form.evaluate(v, v) % 8


def smith_normal_form(
    matrix: Sequence[Sequence[int]],
) -> Tuple[List[List[int]], List[List[int]], List[List[int]]]:
    """(U, D, V) with D = U @ matrix @ V diagonal and U, V unimodular."""
    a = [list(row) for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def row_op(i, j, c):  # row_i -= c * row_j
        a[i] = [x - c * y for x, y in zip(a[i], a[j])]
        u[i] = [x - c * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, c):  # col_i -= c * col_j
        for r in a:
            r[i] -= c * r[j]
        for r in v:
            r[i] -= c * r[j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    t = 0
    while t < min(rows, cols):
        # move a nonzero pivot of minimal magnitude to (t, t)
        entries = [
            (abs(a[i][j]), i, j)
            for i in range(t, rows)
            for j in range(t, cols)
            if a[i][j] != 0
        ]
        if not entries:
            break
        _, pi, pj = min(entries)
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        dirty = False
        for i in range(t + 1, rows):
            q, r = divmod(a[i][t], a[t][t])
            if q:
                row_op(i, t, q)
            if r:
                dirty = True
        for j in range(t + 1, cols):
            q, r = divmod(a[t][j], a[t][t])
            if q:
                col_op(j, t, q)
            if r:
                dirty = True
        if dirty or any(a[i][t] for i in range(t + 1, rows)) or any(
            a[t][j] for j in range(t + 1, cols)
        ):
            continue
        # divisibility: fold in any entry the pivot does not divide
        bad = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % a[t][t]:
                    bad = i
                    break
            if bad:
                break
        if bad is not None:
            row_op(t, bad, -1)
            continue
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, a, v


@dataclass(frozen=True)
class LinkingForm:
    """Quadratic linking form on a finite abelian 2-group.

    orders: elementary divisors (d_1, ..., d_l), each a power of 2 > 1
    bmat:   b(g_i, g_j) in Q/Z, exact Fractions reduced to [0, 1)
    qvec:   q(g_i) in Q/2Z, exact Fractions reduced to [0, 2)

    General values follow the quadratic rule
        q(sum a_i g_i) = sum a_i^2 q(g_i) + 2 sum_{i<j} a_i a_j b(g_i, g_j).
    """

    orders: Tuple[int, ...]
    bmat: Tuple[Tuple[Fraction, ...], ...]
    qvec: Tuple[Fraction, ...]

    def __post_init__(self):
        l = len(self.orders)
        for d in self.orders:
            if d < 2 or d & (d - 1):
                raise NotTwoPrimary(f"order {d} is not a power of two")
        if len(self.bmat) != l or len(self.qvec) != l:
            raise ValueError("b and q must match the generator count")
        for i in range(l):
            for j in range(l):
                if (self.bmat[i][j] - self.bmat[j][i]) % 1 != 0:
                    raise ValueError("b is not symmetric mod Z")
                if (self.orders[i] * self.bmat[i][j]) % 1 != 0:
                    raise ValueError("b is not defined on the stated group")
            if (self.qvec[i] - self.bmat[i][i]) % 1 != 0:
                raise ValueError("q(x) must reduce to b(x,x) mod Z")
            if (self.orders[i] * self.qvec[i]) % 1 != 0:
                raise ValueError("q is not defined on the stated group")

    @property
    def order(self) -> int:
        n = 1
        for d in self.orders:
            n *= d
        return n

    def evaluate_q(self, coeffs: Sequence[int]) -> Fraction:
        """q(sum a_i g_i) as an exact Fraction mod 2Z."""
        l = len(self.orders)
        total = Fraction(0)
        for i in range(l):
            total += coeffs[i] * coeffs[i] * self.qvec[i]
            for j in range(i + 1, l):
                total += 2 * coeffs[i] * coeffs[j] * self.bmat[i][j]
        return total % 2

    def evaluate_b(self, x: Sequence[int], y: Sequence[int]) -> Fraction:
        l = len(self.orders)
        total = Fraction(0)
        for i in range(l):
            for j in range(l):
                total += x[i] * y[j] * self.bmat[i][j]
        return total % 1

    def direct_sum(self, other: "LinkingForm") -> "LinkingForm":
        l, m = len(self.orders), len(other.orders)
        bmat = [
            [self.bmat[i][j] if j < l else Fraction(0) for j in range(l + m)]
            for i in range(l)
        ] + [
            [Fraction(0)] * l + list(other.bmat[i]) for i in range(m)
        ]
        return LinkingForm(
            self.orders + other.orders,
            tuple(tuple(r) for r in bmat),
            self.qvec + other.qvec,
        )


def boundary_linking_form(form: IntSymForm) -> LinkingForm:
    """Boundary of a nondegenerate even form with 2-primary cokernel.

    T = coker(phi) with b = phi^{-1} in Q/Z and q(x) = phi^{-1}(x, x) in
    Q/2Z; for (Z, [4]) this is the cyclic form (Z4, b(1,1)=1/4, q(1)=1/4),
    whose Gauss sum reproduces BK = 1 = sigma(Z, [4]) mod 8.
    """
    det = form.determinant()
    if det == 0:
        raise DegenerateForm("boundary needs a nondegenerate form")
    for i in range(form.dim):
        if form.matrix[i][i] % 2:
            raise OddDiagonal("boundary linking form needs an even form")
    odd = abs(det)
    while odd % 2 == 0:
        odd //= 2
    if odd != 1:
        raise NotTwoPrimary(f"cokernel has odd part {odd}")
    u, d, _v = smith_normal_form(form.matrix)
    # coker(phi) = Z^n / phi Z^n maps isomorphically to Z^n / D Z^n by x -> Ux,
    # so the generators are g_i = U^{-1} e_i and
    # b(g_i, g_j) = g_i^T phi^{-1} g_j = (U^{-T} phi^{-1} U^{-1})_{ij}
    n = form.dim
    inv = _invert_rational(form.matrix)
    uinv = _invert_rational(u)
    ub = [
        [
            sum(
                uinv[k][i] * inv[k][l] * uinv[l][j]
                for k in range(n)
                for l in range(n)
            )
            for j in range(n)
        ]
        for i in range(n)
    ]
    keep = [i for i in range(n) if d[i][i] != 1]
    orders = tuple(d[i][i] for i in keep)
    bmat = tuple(tuple(ub[i][j] % 1 for j in keep) for i in keep)
    qvec = tuple(ub[i][i] % 2 for i in keep)
    return LinkingForm(orders, bmat, qvec)


def _invert_rational(matrix: Sequence[Sequence[int]]) -> List[List[Fraction]]:
    n = len(matrix)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise DegenerateForm("matrix is singular")
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return [row[n:] for row in m]


def bk_linking(lf: LinkingForm) -> int:
    """Brown-Kervaire invariant of a linking form via its Gauss sum.

    sum_{x in T} e^(pi i q(x)) = sqrt(|T|) e^(2 pi i k/8); evaluated in
    floating point and snapped to the nearest admissible value (the eight
    candidates are separated by at least sqrt(|T|) * 2 sin(pi/8)).
    """
    size = lf.order
    if size > LINKING_GROUP_LIMIT:
        raise GroupTooLarge(f"|T| = {size} exceeds {LINKING_GROUP_LIMIT}")
    l = len(lf.orders)
    total = 0j
    # iterate the product of cyclic groups with an odometer
    coeffs = [0] * l
    while True:
        qx = lf.evaluate_q(coeffs)
        total += cmath.exp(1j * math.pi * float(qx))
        i = 0
        while i < l:
            coeffs[i] += 1
            if coeffs[i] < lf.orders[i]:
                break
            coeffs[i] = 0
            i += 1
        if i == l:
            break
    mag = math.sqrt(size)
    best_k, best_err = None, None
    for k in range(8):
        target = mag * cmath.exp(1j * math.pi * k / 4)
        err = abs(total - target)
        if best_err is None or err < best_err:
            best_k, best_err = k, err
    if best_err > GAUSS_SNAP_TOL * max(mag, 1.0):
        raise NoGaussMatch(
            f"Gauss sum {total:.6g} is not within tolerance of any eighth root"
        )
    return best_k


def tensor_product(a: IntSymForm, b: IntSymForm) -> IntSymForm:
    """Kronecker product; sigma is multiplicative and Wu vectors tensor."""
    n, m = a.dim, b.dim
    rows = []
    for i in range(n):
        for k in range(m):
            rows.append(
                tuple(
                    a.matrix[i][j] * b.matrix[k][l]
                    for j in range(n)
                    for l in range(m)
                )
            )
    return IntSymForm(n * m, tuple(rows))


@dataclass(frozen=True)
class DefectReport:
    """Result of the mod-8 multiplicativity-defect computation."""

    arf: int
    sigma_e: int
    sigma_b: int
    sigma_f: int
    defect_mod8: int
    subquotient_dim: int


def multiplicativity_defect(
    e: IntSymForm, b: IntSymForm, f: IntSymForm
) -> DefectReport:
    """Arf invariant detecting sigma(e) - sigma(b)sigma(f) mod 8.

    Builds e + -(b tensor f), reduces mod 4, and takes the Arf invariant of
    the Wu-sublagrangian subquotient; requires the mod-4 multiplicativity
    sigma(e) = sigma(b)sigma(f) mod 4 (automatic for fibration data).
    """
    for name, form in (("e", e), ("b", b), ("f", f)):
        if not form.is_unimodular():
            raise NotUnimodular(f"form {name} must be unimodular")
    sigma_e = signature_exact(e.to_rational())
    sigma_b = signature_exact(b.to_rational())
    sigma_f = signature_exact(f.to_rational())
    if (sigma_e - sigma_b * sigma_f) % 4 != 0:
        raise NotMod4Multiplicative(
            f"sigma(e) - sigma(b)sigma(f) = {sigma_e - sigma_b * sigma_f} is not 0 mod 4"
        )
    product = tensor_product(b, f)
    total = e.direct_sum(product.negate())
    q = reduce_to_enhanced(total)
    w = isotropic_subquotient(q)
    a = arf(w)
    return DefectReport(
        arf=a,
        sigma_e=sigma_e,
        sigma_b=sigma_b,
        sigma_f=sigma_f,
        defect_mod8=(sigma_e - sigma_b * sigma_f) % 8,
        subquotient_dim=w.dim,
    )


ENTRY_BOUND = 1 << 15


def random_unimodular_form(dim: int, rng) -> IntSymForm:
    """Random unimodular symmetric form: +-1 diagonal conjugated by unipotents.

    Entries are kept below 2^15 by skipping congruence steps that would
    overflow the bound, so the corpus is reproducible across platforms.
    """
    m = [[0] * dim for _ in range(dim)]
    for i in range(dim):
        m[i][i] = 1 if rng.randrange(2) else -1
    for _ in range(2 * dim):
        i = rng.randrange(dim) if dim else 0
        j = rng.randrange(dim) if dim else 0
        if i == j or dim < 2:
            continue
        k = rng.choice((-2, -1, 1, 2))
        # congruence by E = I + k e_j e_i^T: row_j += k row_i, col_j += k col_i
        new_rows = [row[:] for row in m]
        for c in range(dim):
            new_rows[j][c] += k * m[i][c]
        for r in range(dim):
            new_rows[r][j] += k * new_rows[r][i]
        if any(abs(x) >= ENTRY_BOUND for row in new_rows for x in row):
            continue
        m = new_rows
    return IntSymForm.from_matrix(m)
