import json
import random

import pytest

from chevwidth.chevalley import get_chevalley
from chevwidth.rings import Bool2k, FieldP, IntRing, RatRing, Zmod
from chevwidth.slfactor import (DeterminantNotOne, FactoredQuadruple,
                                NotStableRank1, factor_sl, ring_det)


def rand_sl(n, R, rng, nops):
    ch = get_chevalley(f"A{n - 1}")
    ev = ch.evaluator(R, "natural")
    toks = []
    for _ in range(nops):
        b = rng.choice(ch.S.pos)
        if rng.random() < 0.5:
            b = tuple(-c for c in b)
        toks.append(("x", b, R.of(rng.randrange(-4, 5))))
    return ev.space.to_rows(ev.matrix(toks))


def matrices_equal(M, N, R):
    return all(R.eq(a, b) for row_m, row_n in zip(M, N)
               for a, b in zip(row_m, row_n))


@pytest.mark.parametrize("R", [FieldP(5), Zmod(6), Zmod(9), Zmod(25)])
def test_roundtrip(R):
    rng = random.Random(repr(R.descriptor()))
    for n in range(2, 7):
        for k in range(5):
            M = rand_sl(n, R, rng, 2 * n + k)
            q = factor_sl(M, R)
            assert matrices_equal(q.matrix(), M, R)


def test_roundtrip_bool_and_rat():
    rng = random.Random(40)
    for R in (Bool2k(2), RatRing()):
        for n in (2, 3, 4):
            M = rand_sl(n, R, rng, 7)
            q = factor_sl(M, R)
            assert matrices_equal(q.matrix(), M, R)


def test_piece_shapes():
    # u pieces sit on positive roots, v pieces on negative ones
    R = Zmod(12)
    rng = random.Random(7)
    q = factor_sl(rand_sl(5, R, rng, 14), R)
    for w in (q.u1, q.u2):
        assert all(min(r) >= 0 for _, r, _ in w.toks)
    for w in (q.v1, q.v2):
        assert all(max(r) <= 0 for _, r, _ in w.toks)


def test_upper_unitriangular_shortcut():
    R = Zmod(6)
    q = factor_sl([[1, 3, 2], [0, 1, 4], [0, 0, 1]], R)
    assert len(q.v1) == len(q.u2) == len(q.v2) == 0
    assert matrices_equal(q.matrix(), [[R.of(1), R.of(3), R.of(2)],
                                       [R.of(0), R.of(1), R.of(4)],
                                       [R.of(0), R.of(0), R.of(1)]], R)


def test_identity_and_lower():
    R = Zmod(9)
    q = factor_sl([[1, 0], [0, 1]], R)
    assert all(len(w) == 0 for w in q.pieces)
    # lower unitriangular input flows through with empty corrections
    q = factor_sl([[1, 0, 0], [5, 1, 0], [2, 7, 1]], R)
    assert len(q.u1) == 0 and len(q.v2) == 0
    assert matrices_equal(q.matrix(), [[R.of(1), 0, 0], [R.of(5), R.of(1), 0],
                                       [R.of(2), R.of(7), R.of(1)]], R)


def test_integer_input_rejected():
    with pytest.raises(NotStableRank1):
        factor_sl([[1, 0], [0, 1]], IntRing())


def test_determinant_checked():
    with pytest.raises(DeterminantNotOne):
        factor_sl([[2, 0], [0, 1]], FieldP(5))
    with pytest.raises(DeterminantNotOne):
        factor_sl([[1, 1], [1, 1]], Zmod(6))


def test_ring_det_matches_known():
    R = Zmod(30)
    M = [[R.of(v) for v in row] for row in [[2, 3, 1], [0, 4, 5], [6, 1, 2]]]
    # 2*(8-5) - 3*(0-30) + 1*(0-24) = 72
    assert ring_det(M, R) == 72 % 30


def test_json_roundtrip():
    R = Zmod(6)
    rng = random.Random(3)
    q = factor_sl(rand_sl(4, R, rng, 9), R)
    blob = json.dumps(q.to_json(), sort_keys=True)
    q2 = FactoredQuadruple.from_json(json.loads(blob))
    assert json.dumps(q2.to_json(), sort_keys=True) == blob
    assert matrices_equal(q2.matrix(), q.matrix(), R)
