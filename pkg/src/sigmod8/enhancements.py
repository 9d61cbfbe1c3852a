"""Quadratic enhancements of Z2 forms and their Witt invariants.

A Z2-valued enhancement h refines lambda by h(x+y) = h(x)+h(y)+lambda(x,y)
and exists iff the form is isotropic; its Witt invariant is the Arf
invariant.  A Z4-valued enhancement q refines lambda by
q(x+y) = q(x)+q(y)+2*lambda(x,y) and always exists; its Witt invariant is
the Z8-valued Brown-Kervaire invariant, computed here two independent ways:

* bk_gauss: the exact Gauss sum  sum_x i^q(x) = sqrt(2)^dim e^(2 pi i BK/8),
  accumulated in Gaussian integers via the enumeration kernel;
* bk_classify: splitting q into standard pieces q00, q22, P1, P-1 and
  reading off 4n + p_plus - p_minus.

The bridge between the two theories is the Wu sublagrangian L = <v>: when
q(v) = 0 in Z4 the subquotient (L_perp/L, [lambda], [q]/2) carries a
Z2-enhancement whose Arf invariant satisfies BK = 4*Arf.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence, Tuple

from . import kernels
from .errors import (
    AnisotropicInput,
    DimTooLarge,
    FormMismatch,
    NoGaussMatch,
    NotDivisibleBy4,
    NotLinearDifference,
    SingularForm,
)
from .z2forms import (
    H_FORM,
    P_FORM,
    Z2SymForm,
    Z2Subspace,
    Z2Vec,
    _apply,
    _restrict,
    is_nonsingular,
    rref_basis,
    solve,
    split_vectors,
    wu_class,
)

__all__ = [
    "Z2Quadratic",
    "Z4Quadratic",
    "WittClassZ8",
    "arf",
    "bk_gauss",
    "bk_classify",
    "witt_class_z4",
    "double",
    "difference_vector",
    "wu_sublagrangian",
    "isotropic_subquotient",
    "p1",
    "pm1",
    "q00",
    "q22",
    "h00",
    "h11",
    "enumerate_z2_enhancements",
    "enumerate_z4_enhancements",
]

GAUSS_DIM_LIMIT = 24
TABLE_CHECK_LIMIT = 10


@dataclass(frozen=True)
class Z2Quadratic:
    """Z2-valued quadratic enhancement, stored by its values on the basis."""

    form: Z2SymForm
    values: Tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.form.dim:
            raise ValueError("need one value per basis vector")
        if any(v not in (0, 1) for v in self.values):
            raise ValueError("values must lie in Z2")
        if not self.form.is_isotropic():
            raise AnisotropicInput("Z2 enhancements require an isotropic form")

    @property
    def dim(self) -> int:
        return self.form.dim

    def evaluate_mask(self, x: int) -> int:
        acc = 0
        cross = 0
        rows = self.form.rows
        m = x
        while m:
            i = (m & -m).bit_length() - 1
            acc += self.values[i]
            cross += bin(rows[i] & x & ((1 << i) - 1)).count("1")
            m &= m - 1
        return (acc + cross) & 1

    def evaluate(self, x: Z2Vec) -> int:
        if x.dim != self.dim:
            raise ValueError("dimension mismatch")
        return self.evaluate_mask(x.mask)

    def direct_sum(self, other: "Z2Quadratic") -> "Z2Quadratic":
        return Z2Quadratic(self.form.direct_sum(other.form), self.values + other.values)


@dataclass(frozen=True)
class Z4Quadratic:
    """Z4-valued quadratic enhancement, stored by its values on the basis.

    The mod-2 reduction of q(e_i) must equal lambda(e_i, e_i).
    """

    form: Z2SymForm
    values: Tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.form.dim:
            raise ValueError("need one value per basis vector")
        diag = self.form.diagonal_mask()
        for i, v in enumerate(self.values):
            if v not in (0, 1, 2, 3):
                raise ValueError("values must lie in Z4")
            if (v & 1) != ((diag >> i) & 1):
                raise ValueError(
                    f"q(e_{i}) = {v} has wrong parity for lambda(e_{i}, e_{i})"
                )

    @classmethod
    def from_table(cls, form: Z2SymForm, table: Sequence[int]) -> "Z4Quadratic":
        """Build from a full value table over Z2^dim, validating quadraticity.

        The table is indexed by the bit mask of the vector.  Only available
        up to dim 10; beyond that the exhaustive check is refused.
        """
        if form.dim > TABLE_CHECK_LIMIT:
            raise DimTooLarge("table validation is exhaustive; dim must be <= 10")
        if len(table) != 1 << form.dim:
            raise ValueError("table must have one entry per vector")
        if table[0] % 4 != 0:
            raise NotLinearDifference("q(0) must be 0")
        q = cls(form, tuple(table[1 << i] % 4 for i in range(form.dim)))
        for x in range(1 << form.dim):
            if q.evaluate_mask(x) != table[x] % 4:
                raise NotLinearDifference(
                    f"table is not quadratic over the form at x = {x:#b}"
                )
        return q

    @property
    def dim(self) -> int:
        return self.form.dim

    def evaluate_mask(self, x: int) -> int:
        acc = 0
        cross = 0
        rows = self.form.rows
        m = x
        while m:
            i = (m & -m).bit_length() - 1
            acc += self.values[i]
            cross += bin(rows[i] & x & ((1 << i) - 1)).count("1")
            m &= m - 1
        return (acc + 2 * (cross & 1)) & 3

    def evaluate(self, x: Z2Vec) -> int:
        if x.dim != self.dim:
            raise ValueError("dimension mismatch")
        return self.evaluate_mask(x.mask)

    def direct_sum(self, other: "Z4Quadratic") -> "Z4Quadratic":
        return Z4Quadratic(self.form.direct_sum(other.form), self.values + other.values)

    def negate(self) -> "Z4Quadratic":
        """-q, an enhancement of the same form (over Z2, -lambda = lambda)."""
        return Z4Quadratic(self.form, tuple((-v) % 4 for v in self.values))


@dataclass(frozen=True)
class WittClassZ8:
    """Witt class of a Z4-enhanced form: its Brown-Kervaire invariant in Z8."""

    value: int

    def __post_init__(self):
        if not 0 <= self.value < 8:
            raise ValueError("value must lie in Z8")

    def __add__(self, other: "WittClassZ8") -> "WittClassZ8":
        return WittClassZ8((self.value + other.value) % 8)


def p1() -> Z4Quadratic:
    return Z4Quadratic(P_FORM, (1,))


def pm1() -> Z4Quadratic:
    return Z4Quadratic(P_FORM, (3,))


def q00() -> Z4Quadratic:
    return Z4Quadratic(H_FORM, (0, 0))


def q22() -> Z4Quadratic:
    return Z4Quadratic(H_FORM, (2, 2))


def h00() -> Z2Quadratic:
    return Z2Quadratic(H_FORM, (0, 0))


def h11() -> Z2Quadratic:
    return Z2Quadratic(H_FORM, (1, 1))


def arf(h: Z2Quadratic) -> int:
    """Arf invariant: sum of h(e_j) h(f_j) over a symplectic basis."""
    form = h.form
    if not is_nonsingular(form):
        raise SingularForm("arf requires a nonsingular form")
    aniso, pairs = split_vectors(form)
    if aniso:  # unreachable: the constructor enforces isotropy
        raise AnisotropicInput("arf requires an isotropic form")
    total = 0
    for e, f in pairs:
        total ^= h.evaluate_mask(e) & h.evaluate_mask(f)
    return total


def _match_gauss(dim: int, re: int, im: int) -> int:
    """The unique k in Z8 with re + im*i = sqrt(2)^dim e^(2 pi i k/8)."""
    if dim % 2 == 0:
        mag = 1 << (dim // 2)
        table = {(mag, 0): 0, (0, mag): 2, (-mag, 0): 4, (0, -mag): 6}
    else:
        mag = 1 << ((dim - 1) // 2)
        table = {(mag, mag): 1, (-mag, mag): 3, (-mag, -mag): 5, (mag, -mag): 7}
    k = table.get((re, im))
    if k is None:
        raise NoGaussMatch(
            f"Gauss sum {re}{im:+d}i does not match any eighth root at dim {dim}"
        )
    return k


def bk_gauss(q: Z4Quadratic) -> int:
    """Brown-Kervaire invariant via the exact Gauss sum sum_x i^q(x)."""
    form = q.form
    if form.dim > GAUSS_DIM_LIMIT:
        raise DimTooLarge(f"Gauss enumeration limited to dim <= {GAUSS_DIM_LIMIT}")
    if not is_nonsingular(form):
        raise SingularForm("bk_gauss requires a nonsingular form")
    c0, c1, c2, c3 = kernels.gauss_counts(form.dim, q.values, form.rows)
    return _match_gauss(form.dim, c0 - c2, c1 - c3)


def bk_classify(q: Z4Quadratic) -> Tuple[int, int, int, int]:
    """Multiplicities (m, n, p_plus, p_minus) of q00, q22, P1, P-1.

    Splits off the lowest-index anisotropic basis vector first, then
    hyperbolic pairs; the decomposition is non-unique but the residue
    4n + p_plus - p_minus mod 8 is the Brown-Kervaire invariant.
    """
    form = q.form
    if not is_nonsingular(form):
        raise SingularForm("bk_classify requires a nonsingular form")
    aniso, pairs = split_vectors(form)
    p_plus = sum(1 for v in aniso if q.evaluate_mask(v) == 1)
    p_minus = len(aniso) - p_plus
    n = sum(1 for e, f in pairs if q.evaluate_mask(e) == 2 and q.evaluate_mask(f) == 2)
    m = len(pairs) - n
    return m, n, p_plus, p_minus


def witt_class_z4(q: Z4Quadratic) -> WittClassZ8:
    m, n, p_plus, p_minus = bk_classify(q)
    return WittClassZ8((4 * n + p_plus - p_minus) % 8)


def double(h: Z2Quadratic) -> Z4Quadratic:
    """q = 2h; satisfies BK(2h) = 4*Arf(h) in Z8."""
    return Z4Quadratic(h.form, tuple(2 * v for v in h.values))


def difference_vector(q: Z4Quadratic, qprime: Z4Quadratic) -> Tuple[Z2Vec, int]:
    """The unique t with q'(x) - q(x) = 2*lambda(x, t), plus the check value.

    Returns (t, delta) where delta = 2*q(t) in Z8 satisfies
    BK(q) - BK(q') = delta.
    """
    if q.form != qprime.form:
        raise FormMismatch("enhancements live on different forms")
    form = q.form
    if not is_nonsingular(form):
        raise SingularForm("difference_vector requires a nonsingular form")
    rhs = 0
    for i in range(form.dim):
        d = (qprime.values[i] - q.values[i]) % 4
        if d & 1:
            raise NotLinearDifference("difference of the tables is not even")
        rhs |= (d >> 1) << i
    t = solve(form.rows, form.dim, rhs)
    delta = (2 * q.evaluate_mask(t)) % 8
    return Z2Vec(form.dim, t), delta


def wu_sublagrangian(q: Z4Quadratic) -> Z2Subspace:
    """L = <v> for the Wu class v; defined iff q(v) = 0 in Z4."""
    form = q.form
    v = wu_class(form)
    qv = q.evaluate(v)
    if qv != 0:
        raise NotDivisibleBy4(f"q(v) = {qv} in Z4; BK is not divisible by 4")
    return Z2Subspace(form.dim, rref_basis([v.mask], form.dim))


def isotropic_subquotient(q: Z4Quadratic) -> Z2Quadratic:
    """(W, mu, h) = (L_perp/L, [lambda], [q]/2) with L the Wu sublagrangian.

    Requires q(v) = 0 in Z4; then BK(q) = 4*Arf of the result.
    """
    form = q.form
    v = wu_class(form)
    qv = q.evaluate(v)
    if qv != 0:
        raise NotDivisibleBy4(f"q(v) = {qv} in Z4; BK is not divisible by 4")
    dim = form.dim
    phi_v = _apply(form.rows, v.mask)  # functional x -> lambda(x, v)
    if phi_v == 0:
        reps = [1 << i for i in range(dim)]
    else:
        pivot = (phi_v & -phi_v).bit_length() - 1
        kernel = []
        for i in range(dim):
            if i == pivot:
                continue
            b = 1 << i
            if (phi_v >> i) & 1:
                b |= 1 << pivot
            kernel.append(b)
        # quotient by <v>: express v in the RREF basis of L_perp and drop
        # the lowest-pivot vector appearing in that expression
        basis = list(rref_basis(kernel, dim))
        residue = v.mask
        drop = None
        for b in basis:
            low = b & -b
            if residue & low:
                residue ^= b
                if drop is None:
                    drop = b
        if residue != 0 or drop is None:
            raise SingularForm("Wu class does not lie in its own perpendicular")
        reps = [b for b in basis if b != drop]
    gram = _restrict(form.rows, reps)
    w_form = Z2SymForm(len(reps), tuple(gram))
    values = []
    for b in reps:
        qb = q.evaluate_mask(b)
        if qb & 1:
            raise SingularForm("representative is not isotropic")
        values.append((qb >> 1) & 1)
    return Z2Quadratic(w_form, tuple(values))


def enumerate_z4_enhancements(form: Z2SymForm) -> Iterator[Z4Quadratic]:
    """All 2^dim quadratic enhancements q with jq = diagonal of the form."""
    diag = form.diagonal_mask()
    base = [((diag >> i) & 1) for i in range(form.dim)]
    for bits in range(1 << form.dim):
        vals = tuple(base[i] + 2 * ((bits >> i) & 1) for i in range(form.dim))
        yield Z4Quadratic(form, vals)


def enumerate_z2_enhancements(form: Z2SymForm) -> Iterator[Z2Quadratic]:
    """All 2^dim Z2-enhancements of an isotropic form."""
    for bits in range(1 << form.dim):
        vals = tuple((bits >> i) & 1 for i in range(form.dim))
        yield Z2Quadratic(form, vals)
