"""Surface-bundle signatures from symplectic monodromy data.

Monodromy data for a genus-g base consists of g pairs (f_i, g_i) of
integer symplectic 2h x 2h matrices whose commutators multiply to the
identity.  Two computations are provided:

* per-handle Wall forms: for each handle the rational symmetric form
  S(f, g) = phi (1 - g^{-1})(1 - f)^{-1}(g - f) at g -> g f^{-1} g^{-1}
  (closed formula), or equivalently the pairing
  Psi((y,z),(y',z')) = phi(y + z, (1 - f) y') on the kernel of
  [(1-f) | (1-g)] (general formula, no invertibility hypothesis);

* the signature of the local coefficient system itself, computed from the
  twisted cohomology of the base surface group: the cup-product pairing on
  H^1(pi_1(B); Z^{2h}) composed with the symplectic form of the fibre.
  This is the invariant the multiplicativity theorems constrain: it is
  divisible by 4 (Meyer) and by 8 when the action is trivial mod 4.

The convention for the symplectic form is J = [[0, I], [-I, 0]], with
phi(x, y) = x^T J y; the transvection along c acts by x -> x + phi(x, c) c,
which reproduces the standard Dehn-twist matrices in this basis.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .errors import (
    CommutatorRelationViolated,
    NotSymplectic,
    OddDimension,
    OneMinusFSingular,
    ZeroVector,
)
from .intforms import RatSymForm, signature_exact

__all__ = [
    "SymplecticMatrix",
    "MonodromyData",
    "standard_j",
    "transvection",
    "is_symplectic",
    "wall_form_closed",
    "wall_form_general",
    "handle_signatures",
    "bundle_signature",
    "local_system_signature",
    "z4_trivial_check",
    "z2_trivial_check",
    "BundleReport",
    "bundle_report",
]

Matrix = Tuple[Tuple[int, ...], ...]


def standard_j(h: int) -> Matrix:
    """J = [[0, I_h], [-I_h, 0]]."""
    n = 2 * h
    rows = []
    for i in range(n):
        row = [0] * n
        if i < h:
            row[h + i] = 1
        else:
            row[i - h] = -1
        rows.append(tuple(row))
    return tuple(rows)


def _mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]):
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(m)) for j in range(p))
        for i in range(n)
    )


def _mat_vec(a, x):
    return tuple(sum(a[i][j] * x[j] for j in range(len(x))) for i in range(len(a)))


def _identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _transpose(a):
    return tuple(zip(*a)) if a else ()


def _symplectic_inverse(m: Matrix, j: Matrix) -> Matrix:
    """M^{-1} = -J M^T J, exact and integral for symplectic M."""
    n = len(m)
    mt = _transpose(m)
    inner = _mat_mul(_mat_mul(j, mt), j)
    return tuple(tuple(-inner[i][k] for k in range(n)) for i in range(n))


@dataclass(frozen=True)
class SymplecticMatrix:
    """Integer matrix M with M^T J M = J for the standard block J."""

    h: int
    entries: Matrix

    def __post_init__(self):
        n = 2 * self.h
        if len(self.entries) != n or any(len(r) != n for r in self.entries):
            raise OddDimension(f"expected a {n}x{n} matrix")
        j = standard_j(self.h)
        if _mat_mul(_mat_mul(_transpose(self.entries), j), self.entries) != j:
            raise NotSymplectic("M^T J M != J")

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]]) -> "SymplecticMatrix":
        n = len(matrix)
        if n % 2:
            raise OddDimension("symplectic matrices have even size")
        return cls(n // 2, tuple(tuple(int(x) for x in r) for r in matrix))

    def inverse(self) -> "SymplecticMatrix":
        return SymplecticMatrix(
            self.h, _symplectic_inverse(self.entries, standard_j(self.h))
        )

    def __matmul__(self, other: "SymplecticMatrix") -> "SymplecticMatrix":
        if self.h != other.h:
            raise ValueError("genus mismatch")
        return SymplecticMatrix(self.h, _mat_mul(self.entries, other.entries))

    def is_identity_mod(self, k: int) -> bool:
        n = 2 * self.h
        return all(
            (self.entries[i][j] - int(i == j)) % k == 0
            for i in range(n)
            for j in range(n)
        )


def is_symplectic(matrix: Sequence[Sequence[int]]) -> bool:
    """M^T J M = J, exactly, for the standard J of matching size."""
    n = len(matrix)
    if n % 2 or any(len(r) != n for r in matrix):
        raise OddDimension("symplectic matrices have even size")
    m = tuple(tuple(int(x) for x in r) for r in matrix)
    j = standard_j(n // 2)
    return _mat_mul(_mat_mul(_transpose(m), j), m) == j


def transvection(c: Sequence[int]) -> SymplecticMatrix:
    """The symplectic transvection x -> x + phi(x, c) c along c.

    As a matrix, T = I + (Jc) c^T; for c doubled the result is congruent
    to the identity mod 4.
    """
    n = len(c)
    if n % 2:
        raise OddDimension("vectors must live in Z^{2h}")
    c = tuple(int(x) for x in c)
    if not any(c):
        raise ZeroVector("transvection needs a nonzero vector")
    j = standard_j(n // 2)
    jc = _mat_vec(j, c)
    entries = tuple(
        tuple(int(i == k) + jc[i] * c[k] for k in range(n)) for i in range(n)
    )
    return SymplecticMatrix(n // 2, entries)


def _commutator(f: SymplecticMatrix, g: SymplecticMatrix) -> SymplecticMatrix:
    return f @ g @ f.inverse() @ g.inverse()


@dataclass(frozen=True)
class MonodromyData:
    """g pairs (f_i, g_i) in Sp(2h, Z) with prod [f_i, g_i] = I."""

    h: int
    g: int
    pairs: Tuple[Tuple[SymplecticMatrix, SymplecticMatrix], ...]

    def __post_init__(self):
        if len(self.pairs) != self.g:
            raise ValueError("need one pair per base handle")
        for f, gg in self.pairs:
            if f.h != self.h or gg.h != self.h:
                raise ValueError("fibre genus mismatch")
        n = 2 * self.h
        product = SymplecticMatrix(self.h, _identity(n))
        for f, gg in self.pairs:
            product = product @ _commutator(f, gg)
        if product.entries != _identity(n):
            raise CommutatorRelationViolated(
                "commutators do not multiply to the identity",
                product=product.entries,
            )

    @classmethod
    def from_matrices(cls, h: int, matrices: Sequence[Sequence[Sequence[int]]]) -> "MonodromyData":
        if len(matrices) % 2:
            raise ValueError("matrices must come in (f, g) pairs")
        sym = [SymplecticMatrix.from_matrix(m) for m in matrices]
        for s in sym:
            if s.h != h:
                raise ValueError("matrix size does not match fibre genus")
        pairs = tuple((sym[2 * i], sym[2 * i + 1]) for i in range(len(sym) // 2))
        return cls(h, len(pairs), pairs)


def _rational_inverse(m: Matrix) -> Tuple[Tuple[Fraction, ...], ...]:
    n = len(m)
    work = [
        [Fraction(m[i][j]) for j in range(n)]
        + [Fraction(int(i == j)) for j in range(n)]
        for i in range(n)
    ]
    for col in range(n):
        piv = next((r for r in range(col, n) if work[r][col] != 0), None)
        if piv is None:
            raise OneMinusFSingular("matrix is singular over Q")
        work[col], work[piv] = work[piv], work[col]
        pv = work[col][col]
        work[col] = [x / pv for x in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                fac = work[r][col]
                work[r] = [a - fac * b for a, b in zip(work[r], work[col])]
    return tuple(tuple(row[n:]) for row in work)


def wall_form_closed(f: SymplecticMatrix, g: SymplecticMatrix) -> RatSymForm:
    """S(f, g) = J (1 - g^{-1})(1 - f)^{-1}(g - f), requires det(1-f) != 0."""
    if f.h != g.h:
        raise ValueError("genus mismatch")
    n = 2 * f.h
    eye = _identity(n)
    j = standard_j(f.h)
    one_minus_f = _mat_sub(eye, f.entries)
    inv = _rational_inverse(one_minus_f)  # raises OneMinusFSingular
    one_minus_ginv = _mat_sub(eye, g.inverse().entries)
    gf = _mat_sub(g.entries, f.entries)
    s = _mat_mul(_mat_mul(_mat_mul(j, one_minus_ginv), inv), gf)
    mat = tuple(tuple(Fraction(x) for x in row) for row in s)
    for i in range(n):
        for k in range(i + 1, n):
            if mat[i][k] != mat[k][i]:
                raise NotSymplectic("closed Wall form is not symmetric")
    return RatSymForm(n, mat)


def wall_form_general(
    f: SymplecticMatrix, g: SymplecticMatrix
) -> Tuple[RatSymForm, int]:
    """Wall pairing on ker[(1-f) | (1-g)] and its signature.

    Works with no hypothesis on 1 - f; the radical of the pairing (Wall's
    degeneracy quotient) contributes 0 to the signature.
    """
    if f.h != g.h:
        raise ValueError("genus mismatch")
    n = 2 * f.h
    eye = _identity(n)
    one_minus_f = _mat_sub(eye, f.entries)
    one_minus_g = _mat_sub(eye, g.entries)
    rows = [
        tuple(one_minus_f[i]) + tuple(one_minus_g[i]) for i in range(n)
    ]
    basis = _rational_kernel(rows, 2 * n)
    j = standard_j(f.h)

    def psi(uu, vv):
        y, z = uu[:n], uu[n:]
        yprime = vv[:n]
        x = tuple(a + b for a, b in zip(y, z))
        w = _mat_vec(one_minus_f, yprime)
        jx = _mat_vec(j, w)
        return sum(x[i] * jx[i] for i in range(n))

    gram = tuple(tuple(psi(u, v) for v in basis) for u in basis)
    for i in range(len(basis)):
        for k in range(i + 1, len(basis)):
            if gram[i][k] != gram[k][i]:
                raise NotSymplectic("Wall pairing is not symmetric on the kernel")
    form = RatSymForm(len(basis), tuple(tuple(Fraction(x) for x in r) for r in gram))
    return form, signature_exact(form)


def _rational_kernel(rows: Sequence[Sequence], ncols: int) -> List[Tuple[Fraction, ...]]:
    work = [[Fraction(x) for x in row] for row in rows]
    pivots: List[int] = []
    r = 0
    for col in range(ncols):
        piv = next((k for k in range(r, len(work)) if work[k][col] != 0), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        pv = work[r][col]
        work[r] = [x / pv for x in work[r]]
        for k in range(len(work)):
            if k != r and work[k][col]:
                fac = work[k][col]
                work[k] = [a - fac * b for a, b in zip(work[k], work[r])]
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for rr, pc in enumerate(pivots):
            vec[pc] = -work[rr][fc]
        out.append(tuple(vec))
    return out


def handle_signatures(m: MonodromyData) -> List[int]:
    """sigma of the Wall form of (f_i, g_i f_i^{-1} g_i^{-1}) per handle."""
    out = []
    for f, g in m.pairs:
        twisted = g @ f.inverse() @ g.inverse()
        _, sig = wall_form_general(f, twisted)
        out.append(sig)
    return out


def local_system_signature(m: MonodromyData) -> int:
    """Signature of the twisted intersection form on H^1(base; Z^{2h}).

    A 1-cocycle is determined by its values on the 2g generators subject to
    vanishing on the surface relator; the cup product of two cocycles paired
    through the fibre's symplectic form descends to a symmetric bilinear
    form on H^1, and its signature is the signature of the local coefficient
    system.  Coboundaries pair to zero, so the form can be evaluated on the
    full cocycle space.
    """
    n = 2 * m.h
    j = standard_j(m.h)
    # letters of the relator prod [f_i, g_i]: generator index + sign
    mats: List[Matrix] = []
    for f, g in m.pairs:
        mats.append(f.entries)
        mats.append(g.entries)
    invs = [_symplectic_inverse(mm, j) for mm in mats]
    letters: List[Tuple[int, int]] = []
    for i in range(m.g):
        letters += [(2 * i, 1), (2 * i + 1, 1), (2 * i, -1), (2 * i + 1, -1)]

    # value of a cocycle on a letter, as a block acting on the generator value:
    # u(x) = u_x,  u(x^{-1}) = -x^{-1} u_x
    def letter_block(idx: int) -> Matrix:
        gi, sign = letters[idx]
        if sign == 1:
            return _identity(n)
        return tuple(tuple(-v for v in row) for row in invs[letters[idx][0]])

    prefixes = [_identity(n)]
    for idx in range(len(letters) - 1):
        gi, sign = letters[idx]
        mat = mats[gi] if sign == 1 else invs[gi]
        prefixes.append(_mat_mul(prefixes[-1], mat))

    ngen = 2 * m.g
    big = n * ngen
    # B_k = prefix_k * letter_block_k, placed in the columns of generator k
    contribs = []
    for idx in range(len(letters)):
        blk = _mat_mul(prefixes[idx], letter_block(idx))
        contribs.append((letters[idx][0], blk))

    # relator condition: sum_k B_k u_{gen(k)} = 0  (n equations, big unknowns)
    relator = [[0] * big for _ in range(n)]
    for gi, blk in contribs:
        for r in range(n):
            for cdx in range(n):
                relator[r][gi * n + cdx] += blk[r][cdx]
    cocycles = _rational_kernel(relator, big)

    # Gram of the cup pairing on cocycle coordinates:
    # c(u, v) = sum_{k >= 1} phi(U_{k-1} u, B_k v) + sum_i phi(u_i, v_i)
    # where U_{k-1} is the accumulated sum of the first k blocks.
    accum = [[0] * big for _ in range(n)]
    gram_big = [[0] * big for _ in range(big)]

    def add_outer(amat, bmat):
        # gram += A^T J B for n x big blocks A, B
        ja = [_mat_vec(j, col) for col in zip(*bmat)]  # columns of J B
        for r in range(big):
            acol = [amat[t][r] for t in range(n)]
            if not any(acol):
                continue
            row = gram_big[r]
            for cdx in range(big):
                row[cdx] += sum(acol[t] * ja[cdx][t] for t in range(n))

    for k, (gi, blk) in enumerate(contribs):
        bmat = [[0] * big for _ in range(n)]
        for r in range(n):
            for cdx in range(n):
                bmat[r][gi * n + cdx] = blk[r][cdx]
        if k >= 1:
            add_outer(accum, bmat)
        for r in range(n):
            row_a, row_b = accum[r], bmat[r]
            for cdx in range(big):
                row_a[cdx] += row_b[cdx]
    # correction terms phi(u_i, v_i) for each generator
    for gi in range(ngen):
        for a in range(n):
            for b in range(n):
                if j[a][b]:
                    gram_big[gi * n + a][gi * n + b] += j[a][b]

    dim = len(cocycles)
    gram = [
        [
            sum(
                cocycles[p][r] * gram_big[r][c] * cocycles[q][c]
                for r in range(big)
                for c in range(big)
                if gram_big[r][c]
            )
            for q in range(dim)
        ]
        for p in range(dim)
    ]
    for i in range(dim):
        for k in range(i + 1, dim):
            if gram[i][k] != gram[k][i]:
                raise NotSymplectic("cup pairing is not symmetric on cocycles")
    form = RatSymForm(dim, tuple(tuple(Fraction(x) for x in r) for r in gram))
    return signature_exact(form)


def bundle_signature(m: MonodromyData) -> int:
    """Signature of the total space of the local coefficient system.

    Computed from the twisted cohomology of the base surface group; the
    result is divisible by 4 for every valid monodromy and by 8 whenever
    the action is trivial mod 4.
    """
    return local_system_signature(m)


def z4_trivial_check(m: MonodromyData) -> bool:
    """True iff every f_i, g_i is congruent to the identity mod 4."""
    return all(
        f.is_identity_mod(4) and g.is_identity_mod(4) for f, g in m.pairs
    )


def z2_trivial_check(m: MonodromyData) -> bool:
    """True iff every f_i, g_i is congruent to the identity mod 2."""
    return all(
        f.is_identity_mod(2) and g.is_identity_mod(2) for f, g in m.pairs
    )


@dataclass(frozen=True)
class BundleReport:
    """Per-handle Wall data plus the local-system signature."""

    handle_forms: Tuple[RatSymForm, ...]
    handle_signatures: Tuple[int, ...]
    handle_sum: int
    total: int
    z2_trivial: bool
    z4_trivial: bool


def bundle_report(m: MonodromyData) -> BundleReport:
    forms = []
    sigs = []
    for f, g in m.pairs:
        twisted = g @ f.inverse() @ g.inverse()
        form, sig = wall_form_general(f, twisted)
        forms.append(form)
        sigs.append(sig)
    return BundleReport(
        handle_forms=tuple(forms),
        handle_signatures=tuple(sigs),
        handle_sum=sum(sigs),
        total=local_system_signature(m),
        z2_trivial=z2_trivial_check(m),
        z4_trivial=z4_trivial_check(m),
    )


def random_transvection_word(h: int, max_len: int, rng, doubled: bool = False) -> SymplecticMatrix:
    """Product of 1..max_len transvections along random small vectors.

    With doubled=True every twisting vector is doubled, so the word lies in
    the level-4 congruence subgroup (each factor is I mod 4).
    """
    n = 2 * h
    word = SymplecticMatrix(h, _identity(n))
    length = rng.randint(1, max_len)
    for _ in range(length):
        c = [rng.randint(-1, 1) for _ in range(n)]
        if not any(c):
            c[rng.randrange(n)] = 1
        if doubled:
            c = [2 * x for x in c]
        word = word @ transvection(c)
    return word


def random_monodromy(h: int, rng, max_len: int = 6, doubled: bool = False) -> MonodromyData:
    """Genus-2 monodromy (f, g, g, f): the commutator relation holds for free."""
    f = random_transvection_word(h, max_len, rng, doubled)
    g = random_transvection_word(h, max_len, rng, doubled)
    return MonodromyData(h, 2, ((f, g), (g, f)))
