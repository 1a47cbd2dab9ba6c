import json
import random

import pytest

from chevwidth.chevalley import get_chevalley
from chevwidth.decompose import (Decomposition, UnsupportedMatrixInput,
                                 UnsupportedRank, decompose, decompose_short,
                                 g_minus_one, n_sigma, n_total,
                                 sigma_to_commutators, verify)
from chevwidth.matrices import int_matmul
from chevwidth.rings import Bool2k, FieldP, IntRing, RingError, Zmod
from chevwidth.slfactor import NotStableRank1
from chevwidth.words import GenWord, comm, identity


def rand_word(S, R, rng, k, lower=False):
    toks = []
    for _ in range(k):
        b = rng.choice(S.pos)
        if lower:
            b = tuple(-c for c in b)
        toks.append(("x", b, R.of(rng.randrange(0, 9))))
    return GenWord(toks)


def rand_quad(S, R, rng, k=3):
    return (rand_word(S, R, rng, k), rand_word(S, R, rng, k, lower=True),
            rand_word(S, R, rng, k), rand_word(S, R, rng, k, lower=True))


def sigma_product_ok(ch, R, theta, pairs):
    ev = ch.evaluator(R)
    m = ev.matrix(GenWord())
    for a, b in pairs:
        m = ev.space.mul(m, ev.matrix(comm(a, b, R)))
    want = [("x", g, theta[g]) for g in ch.S.pos
            if g in theta and not R.is_zero(theta[g])]
    return ev.equal(m, ev.matrix(GenWord(want)))


# ---------------------------------------------------------------------------
# sigma_to_commutators
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("name", ["A2", "A3", "A4", "B3", "C3", "D4", "F4"])
def test_sigma_pairs_all_rings(name):
    ch = get_chevalley(name)
    sig = ch.S.companion_sigma()
    for R in (FieldP(2), FieldP(3), Zmod(6), Zmod(9)):
        rng = random.Random(f"{name}:{R.descriptor()}")
        for _ in range(3):
            theta = {b: R.of(rng.randrange(0, 12)) for b in sig}
            pairs = sigma_to_commutators(ch, theta, R)
            assert len(pairs) <= n_sigma(ch.S)
            assert sigma_product_ok(ch, R, theta, pairs)


@pytest.mark.parametrize("name", ["B2", "C2", "G2"])
def test_sigma_pairs_need_invertible_two(name):
    ch = get_chevalley(name)
    sig = ch.S.companion_sigma()
    rng = random.Random(name)
    theta = {b: 1 for b in sig}
    for R in (FieldP(5), Zmod(9)):
        pairs = sigma_to_commutators(ch, {b: R.of(1) for b in sig}, R)
        assert sigma_product_ok(ch, R, {b: R.of(1) for b in sig}, pairs)
    # without 2 invertible the linear systems are genuinely singular
    for R in (FieldP(2), Zmod(6)):
        with pytest.raises(RingError):
            sigma_to_commutators(ch, {b: R.of(1) for b in sig}, R)


def test_sigma_pairs_e6():
    ch = get_chevalley("E6")
    sig = ch.S.companion_sigma()
    for R in (FieldP(2), Zmod(6)):
        rng = random.Random(f"e6:{R.descriptor()}")
        theta = {b: R.of(rng.randrange(0, 9)) for b in sig}
        pairs = sigma_to_commutators(ch, theta, R)
        assert len(pairs) <= 3
        assert sigma_product_ok(ch, R, theta, pairs)


def test_sigma_zero_and_rank_one():
    ch = get_chevalley("A3")
    assert sigma_to_commutators(ch, {}, Zmod(5)) == []
    zero = {b: 0 for b in ch.S.companion_sigma()}
    assert sigma_to_commutators(ch, zero, Zmod(5)) == []
    with pytest.raises(UnsupportedRank):
        sigma_to_commutators(get_chevalley("A1"), {}, Zmod(5))


def test_sigma_single_root_a2():
    # one commutator suffices for a single companion coefficient
    ch = get_chevalley("A2")
    R = FieldP(7)
    theta = {(0, 1): R.of(1), (1, 1): R.of(1)}
    pairs = sigma_to_commutators(ch, theta, R)
    assert len(pairs) == 1
    assert sigma_product_ok(ch, R, theta, pairs)


# ---------------------------------------------------------------------------
# the g-1 trick
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("l", [1, 2, 3, 4, 5, 6])
def test_g_minus_one(l):
    word, g, inv = g_minus_one(l)
    n = l + 1
    gm1 = [[g[i][j] - int(i == j) for j in range(n)] for i in range(n)]
    prod = [[int(v) for v in row] for row in int_matmul(gm1, inv)]
    assert prod == [[int(i == j) for j in range(n)] for i in range(n)]
    # the word evaluates to the matrix in SL(l+1)
    R = Zmod(101)
    ev = get_chevalley(f"A{l}").evaluator(R, "natural")
    got = ev.space.to_rows(ev.matrix([(k, r, R.of(v)) for k, r, v in word]))
    assert [[int(v) for v in row] for row in got] \
        == [[R.of(v) for v in row] for row in g]


def test_g_minus_one_small_blocks():
    _, g, inv = g_minus_one(1)
    assert g == [[1, -1], [1, 0]]
    assert inv == [[-1, 1], [-1, 0]]
    _, g2, _ = g_minus_one(2)
    assert g2 == [[1, 0, 1], [1, 1, 0], [0, 1, 0]]
    _, g3, _ = g_minus_one(3)
    assert g3[0][:2] == [1, -1] and g3[2][2:] == [1, -1]


def test_g_action_identity():
    # zeta = (g-1)^-1 xi satisfies (action of g)(zeta) - zeta = xi
    for l, mod in ((2, 6), (3, 9), (5, 4)):
        R = Zmod(mod)
        rng = random.Random(l * mod)
        _, g, inv = g_minus_one(l)
        n = l + 1
        xi = [R.of(rng.randrange(mod)) for _ in range(n)]
        zeta = [sum(R.mul(R.of(inv[i][j]), xi[j]) for j in range(n)) % mod
                for i in range(n)]
        moved = [sum(R.mul(R.of(g[i][j]), zeta[j]) for j in range(n)) % mod
                 for i in range(n)]
        assert [(a - b) % mod for a, b in zip(moved, zeta)] == xi


# ---------------------------------------------------------------------------
# decompose
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("name,mod", [("A2", 5), ("A3", 6), ("B3", 9),
                                      ("C3", 6), ("D4", 5), ("F4", 2)])
def test_decompose_quadruple(name, mod):
    ch = get_chevalley(name)
    R = Zmod(mod) if mod != 5 else FieldP(5)
    rng = random.Random(f"{name}/{mod}")
    for _ in range(3):
        quad = rand_quad(ch.S, R, rng)
        d = decompose(ch, R, quad)
        assert d.count <= n_total(ch.S)
        g = quad[0] * quad[1] * quad[2] * quad[3]
        assert verify(ch, R, None, g, d) == "exact"


def test_decompose_rearrangement_identity():
    # u1 v1 u2 v2 == (u1 u2) * [u2^-1, v1] * (v1 v2)
    ch = get_chevalley("B3")
    R = Zmod(7)
    rng = random.Random(272)
    ev = ch.evaluator(R)
    for _ in range(5):
        u1, v1, u2, v2 = rand_quad(ch.S, R, rng, k=4)
        lhs = u1 * v1 * u2 * v2
        rhs = u1 * u2 * comm(u2.inv(R), v1, R) * v1 * v2
        assert ev.equal(ev.matrix(lhs), ev.matrix(rhs))


def test_decompose_identity_and_errors():
    ch = get_chevalley("A3")
    d = decompose(ch, Zmod(5), (identity(), identity(), identity(), identity()))
    assert d.count == 0 and d.center == 1
    with pytest.raises(NotStableRank1):
        decompose(ch, IntRing(), (identity(),) * 4)
    with pytest.raises(UnsupportedRank):
        decompose(get_chevalley("A1"), Zmod(5), (identity(),) * 4)
    with pytest.raises(UnsupportedMatrixInput):
        decompose(get_chevalley("C3"), Zmod(5), [[1, 0], [0, 1]])


def rand_sl_matrix(ch, R, rng, nops):
    ev = ch.evaluator(R, "natural")
    toks = []
    for _ in range(nops):
        b = rng.choice(ch.S.pos)
        if rng.random() < 0.5:
            b = tuple(-c for c in b)
        toks.append(("x", b, R.of(rng.randrange(-4, 5))))
    return ev.space.to_rows(ev.matrix(toks))


def test_decompose_matrix_input():
    R = Zmod(6)
    ch = get_chevalley("A3")
    rng = random.Random(19)
    M = rand_sl_matrix(ch, R, rng, 10)
    d = decompose(ch, R, M)
    assert d.center == 1
    assert verify(ch, R, "natural", M, d) == "exact"


def test_decompose_matrix_sign_branch():
    # SL_6 routes through the negated factorization and flips the sign back
    R = Zmod(9)
    ch = get_chevalley("A5")
    rng = random.Random(41)
    for _ in range(2):
        M = rand_sl_matrix(ch, R, rng, 12)
        d = decompose(ch, R, M)
        assert d.center == -1
        assert d.count <= 3
        assert verify(ch, R, "natural", M, d) == "exact"


def test_decompose_short_counts():
    for name, R in (("A2", Bool2k(1)), ("A4", Bool2k(3)), ("B3", FieldP(2)),
                    ("D4", Bool2k(2)), ("E6", FieldP(2))):
        ch = get_chevalley(name)
        rng = random.Random(f"short {name}")
        u = rand_word(ch.S, R, rng, 3)
        v = rand_word(ch.S, R, rng, 3, lower=True)
        d = decompose_short(ch, R, (u, v))
        assert d.count <= n_total(ch.S) - 1
        assert verify(ch, R, None, u * v, d) == "exact"


def test_verify_negative_control():
    ch = get_chevalley("A2")
    R = FieldP(5)
    rng = random.Random(8)
    quad = rand_quad(ch.S, R, rng)
    d = decompose(ch, R, quad)
    g = quad[0] * quad[1] * quad[2] * quad[3]
    assert verify(ch, R, None, g, d) == "exact"
    corrupted = Decomposition(
        d.system, d.center, d.conjugator,
        [(a * GenWord.x(ch.S.simple(1), R.of(1)), b) for a, b in d.pairs])
    assert verify(ch, R, None, g, corrupted) == "mismatch"


def test_decomposition_json_roundtrip():
    ch = get_chevalley("A3")
    R = Zmod(6)
    rng = random.Random(55)
    d = decompose(ch, R, rand_quad(ch.S, R, rng))
    blob = json.dumps(d.to_json(R), sort_keys=True)
    d2 = Decomposition.from_json(json.loads(blob), R, system=d.system)
    assert json.dumps(d2.to_json(R), sort_keys=True) == blob
    assert d2.count == d.count and d2.center == d.center
