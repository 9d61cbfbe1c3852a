"""Symplectic monodromy, Wall forms, and the local-system signature."""
from fractions import Fraction

import pytest

from sigmod8.errors import (
    CommutatorRelationViolated,
    NotSymplectic,
    OddDimension,
    OneMinusFSingular,
    ZeroVector,
)
from sigmod8.fibration import (
    MonodromyData,
    SymplecticMatrix,
    bundle_report,
    bundle_signature,
    handle_signatures,
    is_symplectic,
    local_system_signature,
    random_monodromy,
    random_transvection_word,
    transvection,
    wall_form_closed,
    wall_form_general,
    z2_trivial_check,
    z4_trivial_check,
)
from sigmod8.intforms import signature_exact
from sigmod8.rng import SplitMix64

F1 = SymplecticMatrix.from_matrix([[0, 1], [-1, 0]])
G1 = SymplecticMatrix.from_matrix([[0, 1], [-1, 1]])
F2 = SymplecticMatrix.from_matrix([[0, -1], [1, -1]])
G2 = SymplecticMatrix.from_matrix([[0, 1], [-1, 0]])

EXAMPLE1 = MonodromyData(1, 2, ((F1, G1), (F2, G2)))

D = [[1, 1], [1, 2]]
F2B = SymplecticMatrix.from_matrix([[4, -3], [7, -5]])
G2B = SymplecticMatrix.from_matrix([[-3, 2], [-5, 3]])
EXAMPLE2 = MonodromyData(1, 2, ((F1, G1), (F2B, G2B)))

ENDO_A = [[1, 0, 0, -1, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0],
          [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]]
ENDO_B = [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0],
          [1, -1, 0, 1, 0, 0], [-1, 1, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]]


# ---------------------------------------------------------------- transvection

def test_transvection_reproduces_dehn_twist_matrix():
    t = transvection([0, 0, 0, 0, 1, 0])
    expected = [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 1, 0], [0, 0, 1, 0, 0, 0],
                [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]]
    assert [list(r) for r in t.entries] == expected


def test_transvection_always_symplectic():
    rng = SplitMix64(30)
    for _ in range(30):
        h = rng.randint(1, 3)
        c = [rng.randint(-3, 3) for _ in range(2 * h)]
        if not any(c):
            c[0] = 1
        assert is_symplectic(transvection(c).entries)


def test_doubled_transvection_is_identity_mod4():
    rng = SplitMix64(31)
    for _ in range(10):
        h = rng.randint(1, 3)
        c = [2 * rng.randint(-2, 2) for _ in range(2 * h)]
        if not any(c):
            c[0] = 2
        assert transvection(c).is_identity_mod(4)


def test_transvection_zero_vector():
    with pytest.raises(ZeroVector):
        transvection([0, 0])
    with pytest.raises(OddDimension):
        transvection([1, 0, 0])


# --------------------------------------------------------------- is_symplectic

def test_is_symplectic_examples():
    assert is_symplectic([[0, 1], [-1, 0]])
    assert is_symplectic(ENDO_A)
    assert is_symplectic(ENDO_B)
    assert is_symplectic([[1, 1], [0, 1]])
    assert not is_symplectic([[2, 0], [0, 1]])
    with pytest.raises(OddDimension):
        is_symplectic([[1]])


def test_symplectic_matrix_constructor_rejects():
    with pytest.raises(NotSymplectic):
        SymplecticMatrix.from_matrix([[2, 0], [0, 1]])


# ------------------------------------------------------------ wall_form_closed

def test_wall_closed_printed_matrices():
    tw1 = G1 @ F1.inverse() @ G1.inverse()
    s1 = wall_form_closed(F1, tw1)
    assert s1.matrix == ((Fraction(4), Fraction(-3)), (Fraction(-3), Fraction(7, 2)))
    tw2 = G2 @ F2.inverse() @ G2.inverse()
    s2 = wall_form_closed(F2, tw2)
    assert s2.matrix == (
        (Fraction(-4, 3), Fraction(-2, 3)),
        (Fraction(-2, 3), Fraction(-10, 3)),
    )
    assert signature_exact(s1) == 2
    assert signature_exact(s2) == -2


def test_wall_closed_equal_arguments():
    z = wall_form_closed(F1, F1)
    assert all(x == 0 for row in z.matrix for x in row)
    assert signature_exact(z) == 0


def test_wall_closed_singular_raises():
    eye = SymplecticMatrix.from_matrix([[1, 0], [0, 1]])
    with pytest.raises(OneMinusFSingular):
        wall_form_closed(eye, F1)


def test_wall_closed_symmetric_random():
    rng = SplitMix64(32)
    checked = 0
    while checked < 100:
        h = rng.randint(1, 3)
        f = random_transvection_word(h, 6, rng)
        g = random_transvection_word(h, 6, rng)
        try:
            form = wall_form_closed(f, g)  # symmetry asserted inside
        except OneMinusFSingular:
            continue
        assert form.dim == 2 * h
        checked += 1


# ----------------------------------------------------------- wall_form_general

def test_wall_general_identity():
    eye = SymplecticMatrix.from_matrix([[1, 0], [0, 1]])
    form, sig = wall_form_general(eye, eye)
    assert form.dim == 4  # the whole of Q^{4h}
    assert sig == 0
    assert all(x == 0 for row in form.matrix for x in row)


def test_wall_general_matches_closed():
    rng = SplitMix64(33)
    checked = 0
    while checked < 25:
        h = rng.randint(1, 3)
        f = random_transvection_word(h, 6, rng)
        g = random_transvection_word(h, 6, rng)
        try:
            closed = wall_form_closed(f, g)
        except OneMinusFSingular:
            continue
        _, sig = wall_form_general(f, g)
        assert signature_exact(closed) == sig
        checked += 1


def test_wall_general_conjugation_invariance():
    rng = SplitMix64(34)
    for _ in range(10):
        h = rng.randint(1, 2)
        f = random_transvection_word(h, 5, rng)
        g = random_transvection_word(h, 5, rng)
        p = random_transvection_word(h, 5, rng)
        pi = p.inverse()
        _, sig = wall_form_general(f, g)
        _, sig_conj = wall_form_general(p @ f @ pi, p @ g @ pi)
        assert sig == sig_conj


def test_example1_per_handle_signatures():
    assert handle_signatures(EXAMPLE1) == [2, -2]


# ------------------------------------------------------------------- monodromy

def test_commutator_relation_enforced():
    with pytest.raises(CommutatorRelationViolated) as exc:
        MonodromyData(1, 2, ((F1, G1), (F1, G1)))
    assert exc.value.product is not None


def test_bundle_signature_examples():
    # The printed per-handle forms have signatures +2 and -2.  Their naive
    # sum is 0, and the local coefficient system itself (computed from the
    # twisted cohomology of the base group) also has signature 0: for
    # 2x2 blocks every Sp(2,Z)-system over a closed surface has signature 0.
    rep1 = bundle_report(EXAMPLE1)
    assert rep1.handle_signatures == (2, -2)
    assert rep1.handle_sum == 0
    assert rep1.total == 0
    rep2 = bundle_report(EXAMPLE2)
    assert rep2.handle_signatures == (2, -2)
    assert rep2.total == 0


def test_bundle_signature_identity_any_genus():
    eye = SymplecticMatrix.from_matrix([[1, 0], [0, 1]])
    for g in (1, 2, 3):
        m = MonodromyData(1, g, tuple((eye, eye) for _ in range(g)))
        assert bundle_signature(m) == 0


def test_meyer_mod4_random_monodromies():
    rng = SplitMix64(35)
    for _ in range(12):
        h = rng.randint(1, 2)
        m = random_monodromy(h, rng)
        assert bundle_signature(m) % 4 == 0


def test_local_system_signature_conjugation_invariance():
    rng = SplitMix64(36)
    for _ in range(5):
        m = random_monodromy(1, rng)
        p = random_transvection_word(1, 5, rng)
        pi = p.inverse()
        conj = MonodromyData(
            m.h, m.g, tuple((p @ f @ pi, p @ g @ pi) for f, g in m.pairs)
        )
        assert local_system_signature(m) == local_system_signature(conj)


# ------------------------------------------------------------------ triviality

def test_triviality_checks():
    eye = SymplecticMatrix.from_matrix([[1, 0], [0, 1]])
    m = MonodromyData(1, 2, ((eye, eye), (eye, eye)))
    assert z4_trivial_check(m) and z2_trivial_check(m)
    endo_pairless = SymplecticMatrix.from_matrix(ENDO_A)
    assert not endo_pairless.is_identity_mod(4)
    assert not endo_pairless.is_identity_mod(2)
    assert not SymplecticMatrix.from_matrix(ENDO_B).is_identity_mod(2)
    assert not z4_trivial_check(EXAMPLE1)
    assert not z2_trivial_check(EXAMPLE1)


def test_z4_trivial_family_mod8():
    rng = SplitMix64(37)
    for _ in range(6):
        h = rng.randint(1, 2)
        m = random_monodromy(h, rng, doubled=True)
        assert z4_trivial_check(m)
        assert bundle_signature(m) % 8 == 0


def test_cup_form_nondegenerate_on_h1():
    """Twisted duality: the cup pairing's radical is exactly the coboundaries."""
    from fractions import Fraction

    import sigmod8.fibration as fib

    def rank_of(m):
        m = [list(r) for r in m]
        if not m:
            return 0
        nrows, ncols = len(m), len(m[0])
        rank = 0
        for col in range(ncols):
            piv = next((r for r in range(rank, nrows) if m[r][col] != 0), None)
            if piv is None:
                continue
            m[rank], m[piv] = m[piv], m[rank]
            pv = m[rank][col]
            for r in range(nrows):
                if r != rank and m[r][col] != 0:
                    f = Fraction(m[r][col]) / pv
                    m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
            rank += 1
            if rank == nrows:
                break
        return rank

    captured = {}
    orig = fib.signature_exact

    def spy(form):
        captured["m"] = form.matrix
        return orig(form)

    rng = SplitMix64(38)
    try:
        fib.signature_exact = spy
        for _ in range(5):
            m = random_monodromy(rng.randint(1, 2), rng)
            n = 2 * m.h
            fib.local_system_signature(m)
            gram = captured["m"]
            rows = []
            for pair in m.pairs:
                for mat in pair:
                    for i in range(n):
                        rows.append(
                            [mat.entries[i][j] - int(i == j) for j in range(n)]
                        )
            dim_b1 = rank_of(rows)
            assert rank_of(gram) == len(gram) - dim_b1
    finally:
        fib.signature_exact = orig
