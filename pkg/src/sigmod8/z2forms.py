"""Exact linear algebra over Z2 and the structure theory of symmetric forms.

Vectors and matrix rows are stored as machine-word bit masks (Python ints),
so all arithmetic is XOR/AND and everything is exact.  The two indecomposable
nonsingular symmetric forms are

    P = (Z2, [1])        the anisotropic line, and
    H = [[0,1],[1,0]]    the hyperbolic plane,

and every nonsingular form splits (non-uniquely) as p*P + k*H.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple

from .errors import (
    AnisotropicInput,
    DegenerateRestriction,
    SingularForm,
)

__all__ = [
    "Z2Vec",
    "Z2SymForm",
    "Z2Subspace",
    "is_nonsingular",
    "wu_class",
    "decompose",
    "split_vectors",
    "symplectic_split",
    "witt_class_sym",
    "P_FORM",
    "H_FORM",
]


def _parity(x: int) -> int:
    return bin(x).count("1") & 1


@dataclass(frozen=True)
class Z2Vec:
    """Vector in Z2^dim, packed into the low `dim` bits of `mask`."""

    dim: int
    mask: int

    def __post_init__(self):
        if self.dim < 0 or self.mask < 0 or self.mask >> self.dim:
            raise ValueError(f"mask {self.mask:#x} does not fit in dim {self.dim}")

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "Z2Vec":
        mask = 0
        for i, b in enumerate(bits):
            if b not in (0, 1):
                raise ValueError("bits must be 0/1")
            mask |= b << i
        return cls(len(bits), mask)

    @property
    def bits(self) -> Tuple[int, ...]:
        return tuple((self.mask >> i) & 1 for i in range(self.dim))

    def __add__(self, other: "Z2Vec") -> "Z2Vec":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        return Z2Vec(self.dim, self.mask ^ other.mask)

    def is_zero(self) -> bool:
        return self.mask == 0


@dataclass(frozen=True)
class Z2SymForm:
    """Symmetric bilinear form on Z2^dim; rows[i] packs lambda(e_i, e_j)."""

    dim: int
    rows: Tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.dim:
            raise ValueError("row count must equal dim")
        for i, r in enumerate(self.rows):
            if r < 0 or r >> self.dim:
                raise ValueError(f"row {i} does not fit in dim {self.dim}")
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                if (self.rows[i] >> j) & 1 != (self.rows[j] >> i) & 1:
                    raise ValueError("matrix is not symmetric")

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]]) -> "Z2SymForm":
        dim = len(matrix)
        rows = []
        for r in matrix:
            if len(r) != dim:
                raise ValueError("matrix is not square")
            rows.append(sum((int(x) & 1) << j for j, x in enumerate(r)))
        return cls(dim, tuple(rows))

    @property
    def matrix(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple((r >> j) & 1 for j in range(self.dim)) for r in self.rows)

    def evaluate(self, x: Z2Vec, y: Z2Vec) -> int:
        """lambda(x, y)."""
        if x.dim != self.dim or y.dim != self.dim:
            raise ValueError("dimension mismatch")
        return _parity(_apply(self.rows, x.mask) & y.mask)

    def evaluate_masks(self, x: int, y: int) -> int:
        return _parity(_apply(self.rows, x) & y)

    def diagonal_mask(self) -> int:
        return sum(((r >> i) & 1) << i for i, r in enumerate(self.rows))

    def is_isotropic(self) -> bool:
        """lambda(x,x) = 0 for all x, equivalently zero diagonal."""
        return self.diagonal_mask() == 0

    def direct_sum(self, other: "Z2SymForm") -> "Z2SymForm":
        rows = list(self.rows) + [r << self.dim for r in other.rows]
        return Z2SymForm(self.dim + other.dim, tuple(rows))


P_FORM = Z2SymForm(1, (1,))
H_FORM = Z2SymForm.from_matrix([[0, 1], [1, 0]])


def _apply(rows: Sequence[int], x: int) -> int:
    """Matrix * vector over Z2: XOR of the rows selected by x's bits."""
    out = 0
    i = 0
    while x:
        if x & 1:
            out ^= rows[i]
        x >>= 1
        i += 1
    return out


def _rank(rows: Iterable[int], dim: int) -> int:
    work = list(rows)
    rank = 0
    for col in range(dim):
        piv = None
        for k in range(rank, len(work)):
            if (work[k] >> col) & 1:
                piv = k
                break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        for k in range(len(work)):
            if k != rank and ((work[k] >> col) & 1):
                work[k] ^= work[rank]
        rank += 1
    return rank


def solve(rows: Sequence[int], dim: int, rhs: int) -> int:
    """Solve matrix * v = rhs over Z2 for square nonsingular `rows`.

    Raises SingularForm when no unique solution exists.
    """
    aug = [r | (((rhs >> i) & 1) << dim) for i, r in enumerate(rows)]
    rank = 0
    pivcols = []
    for col in range(dim):
        piv = None
        for k in range(rank, len(aug)):
            if (aug[k] >> col) & 1:
                piv = k
                break
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        for k in range(len(aug)):
            if k != rank and ((aug[k] >> col) & 1):
                aug[k] ^= aug[rank]
        pivcols.append(col)
        rank += 1
    if rank < dim:
        raise SingularForm("matrix is singular over Z2")
    v = 0
    for r, col in enumerate(pivcols):
        v |= ((aug[r] >> dim) & 1) << col
    return v


def rref_basis(vectors: Iterable[int], dim: int) -> Tuple[int, ...]:
    """Reduced-row-echelon canonical basis of the span of `vectors`."""
    rows = [v for v in vectors if v]
    out: List[int] = []
    for col in range(dim):
        bit = 1 << col
        piv = next((i for i, r in enumerate(rows) if r & bit), None)
        if piv is None:
            continue
        pivot_row = rows.pop(piv)
        for i in range(len(rows)):
            if rows[i] & bit:
                rows[i] ^= pivot_row
        for j in range(len(out)):
            if out[j] & bit:
                out[j] ^= pivot_row
        out.append(pivot_row)
    return tuple(out)


@dataclass(frozen=True)
class Z2Subspace:
    """Subspace of Z2^ambient_dim, stored by its canonical RREF basis."""

    ambient_dim: int
    basis: Tuple[int, ...]

    def __post_init__(self):
        canon = rref_basis(self.basis, self.ambient_dim)
        if canon != self.basis:
            object.__setattr__(self, "basis", canon)
        for b in self.basis:
            if b >> self.ambient_dim:
                raise ValueError("basis vector outside ambient space")

    @classmethod
    def spanned_by(cls, vectors: Iterable[Z2Vec]) -> "Z2Subspace":
        vecs = list(vectors)
        if not vecs:
            raise ValueError("need at least one vector (possibly zero) to fix ambient dim")
        dim = vecs[0].dim
        return cls(dim, rref_basis((v.mask for v in vecs), dim))

    @classmethod
    def full(cls, dim: int) -> "Z2Subspace":
        return cls(dim, tuple(1 << i for i in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vectors(self) -> List[Z2Vec]:
        return [Z2Vec(self.ambient_dim, b) for b in self.basis]

    def contains(self, v: Z2Vec) -> bool:
        m = v.mask
        for w in self.basis:
            low = w & -w
            if m & low:
                m ^= w
        return m == 0


def is_nonsingular(form: Z2SymForm) -> bool:
    """True iff the Gram matrix is invertible over Z2 (dim 0 counts)."""
    return _rank(form.rows, form.dim) == form.dim


def wu_class(form: Z2SymForm) -> Z2Vec:
    """The unique v with lambda(x, x) = lambda(x, v) for all x."""
    if not is_nonsingular(form):
        raise SingularForm("wu_class requires a nonsingular form")
    v = solve(form.rows, form.dim, form.diagonal_mask())
    return Z2Vec(form.dim, v)


def _restrict(rows: Sequence[int], basis: Sequence[int]) -> List[int]:
    """Gram matrix of the form restricted to `basis`, again bit-packed."""
    n = len(basis)
    out = []
    for i in range(n):
        row = 0
        mi = _apply(rows, basis[i])
        for j in range(n):
            row |= _parity(mi & basis[j]) << j
        out.append(row)
    return out


@lru_cache(maxsize=1 << 16)
def split_vectors(form: Z2SymForm) -> Tuple[Tuple[int, ...], Tuple[Tuple[int, int], ...]]:
    """Split a nonsingular form into anisotropic lines and hyperbolic pairs.

    Returns (aniso, pairs) of bit-mask vectors: len(aniso) lines on which
    lambda(v, v) = 1, split off lowest-index-first, and hyperbolic pairs
    spanning the isotropic remainder.  Deterministic, and cached since the
    result depends only on the form.
    """
    rows = form.rows
    basis = [1 << i for i in range(form.dim)]
    aniso = []
    while True:
        gram = _restrict(rows, basis) if len(basis) != form.dim else list(rows)
        n = len(basis)
        idx = next((i for i in range(n) if (gram[i] >> i) & 1), None)
        if idx is None:
            break
        # complement: replace each other basis vector b with b + v when
        # lambda(b, v) = 1, so the new basis is orthogonal to v
        v = basis[idx]
        aniso.append(v)
        new_basis = []
        for j, b in enumerate(basis):
            if j == idx:
                continue
            if (gram[j] >> idx) & 1:
                b ^= v
            new_basis.append(b)
        basis = new_basis
    pairs = _symplectic_pairs(rows, basis)
    return tuple(aniso), tuple(pairs)


def decompose(form: Z2SymForm) -> Tuple[int, int]:
    """Multiplicities (p, k) with form = p*P + k*H and p + 2k = dim.

    Splits off the lowest-index anisotropic basis vector first (deterministic),
    then symplectically splits the isotropic remainder.
    """
    if not is_nonsingular(form):
        raise SingularForm("decompose requires a nonsingular form")
    aniso, pairs = split_vectors(form)
    return len(aniso), len(pairs)


def _symplectic_pairs(rows: Sequence[int], basis: List[int]) -> List[Tuple[int, int]]:
    """Split an isotropic nonsingular restriction into hyperbolic pairs."""
    pairs: List[Tuple[int, int]] = []
    basis = list(basis)
    while basis:
        gram = _restrict(rows, basis)
        n = len(basis)
        e = basis[0]
        mate = next((j for j in range(1, n) if (gram[0] >> j) & 1), None)
        if mate is None:
            raise DegenerateRestriction("restricted form is singular")
        f = basis[mate]
        rest = []
        for j in range(1, n):
            if j == mate:
                continue
            b = basis[j]
            # make b orthogonal to both e and f
            if (gram[j] >> mate) & 1:
                b ^= e
            if (gram[j] >> 0) & 1:
                b ^= f
            rest.append(b)
        pairs.append((e, f))
        basis = rest
    return pairs


def symplectic_split(form: Z2SymForm, restricted_to: Z2Subspace) -> List[Tuple[Z2Vec, Z2Vec]]:
    """Hyperbolic pairs (e_i, f_i) with lambda(e_i, f_j) = delta_ij.

    The form restricted to the subspace must be isotropic and nonsingular.
    Returned vectors live in the ambient space.
    """
    if restricted_to.ambient_dim != form.dim:
        raise ValueError("subspace ambient dimension mismatch")
    basis = list(restricted_to.basis)
    gram = _restrict(form.rows, basis)
    for i in range(len(basis)):
        if (gram[i] >> i) & 1:
            raise AnisotropicInput("form is anisotropic on the subspace")
    if _rank(gram, len(basis)) != len(basis):
        raise DegenerateRestriction("restricted form is singular")
    pairs = _symplectic_pairs(form.rows, basis)
    return [(Z2Vec(form.dim, e), Z2Vec(form.dim, f)) for e, f in pairs]


def witt_class_sym(form: Z2SymForm) -> int:
    """Witt class in Z2: the multiplicity of P mod 2."""
    p, _ = decompose(form)
    return p & 1


def enumerate_nonsingular_forms(dim: int, isotropic_only: bool = False):
    """Yield every nonsingular symmetric form of the given dimension.

    There are 2^(dim(dim+1)/2) symmetric matrices to filter, so this is
    meant for dim <= 6.  With isotropic_only, restrict to zero diagonal.
    """
    n_entries = dim * (dim + 1) // 2
    positions = [(i, j) for i in range(dim) for j in range(i, dim)]
    if isotropic_only:
        positions = [(i, j) for (i, j) in positions if i != j]
        n_entries = len(positions)
    for bits in range(1 << n_entries):
        rows = [0] * dim
        for idx, (i, j) in enumerate(positions):
            if (bits >> idx) & 1:
                rows[i] |= 1 << j
                if i != j:
                    rows[j] |= 1 << i
        if _rank(rows, dim) == dim:
            yield Z2SymForm(dim, tuple(rows))
