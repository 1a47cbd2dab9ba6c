import random

import numpy as np
import pytest

from chevwidth.chevalley import get_chevalley
from chevwidth.extweyl import (ExcludedType, LiftError, h_word_for_diag,
                               int_eval, lift_defect, lift_weyl_action,
                               normalize_conjugator, pi_hat, w0_hat,
                               w0_minus_flag, w0_word, _int_inverse_signed)
from chevwidth.matrices import int_matmul
from chevwidth.rings import IntRing, Zmod
from chevwidth.words import GenWord


def test_pi_hat_realizes_rotation_word():
    for name in ["A2", "B3", "D4", "G2", "E6"]:
        ch = get_chevalley(name)
        S = ch.S
        act = lift_weyl_action(S, pi_hat(ch))
        for b in S.all_roots():
            assert act(b) == S.act(S.pi_word(), b)


def test_int_eval_matches_modular_evaluator():
    ch = get_chevalley("B3")
    R = Zmod(11)
    ev = ch.evaluator(R)
    word = pi_hat(ch) * GenWord.x(ch.S.simple(2), 3) * GenWord.h(ch.S.highest_root(), -1)
    M = int_eval(ch.rep(), word) % 11
    assert ev.word_rows(word) == tuple(tuple(int(x) for x in row) for row in M)


def test_w0_word_is_reduced_and_flips_positives():
    for name in ["A3", "B2", "C3", "D4", "F4", "G2"]:
        S = get_chevalley(name).S
        w = w0_word(S)
        assert len(w) == len(S.pos)
        for b in S.pos:
            assert not S.is_positive(S.act(w, b))


def test_w0_word_a2_frozen():
    assert w0_word(get_chevalley("A2").S) == [1, 2, 1]


def test_w0_hat_type_a_target_matrix():
    for n in range(2, 8):
        ch = get_chevalley(f"A{n-1}")
        M = int_eval(ch.rep("natural"), w0_hat(ch))
        if n % 4 in (0, 1):
            d = [1] * n
        elif n % 4 == 3:
            d = [-1] * n
        else:
            d = [(-1) ** j for j in range(n)]
        T = np.zeros((n, n), dtype=np.int64)
        for j in range(n):
            T[n - 1 - j, j] = d[j]
        assert np.array_equal(M, T)
        det = round(np.linalg.det(M.astype(float)))
        assert det == 1


def test_w0_conjugates_pi_to_inverse_type_a():
    for n in range(2, 8):
        ch = get_chevalley(f"A{n-1}")
        rep = ch.rep("natural")
        W = int_eval(rep, w0_hat(ch))
        P = int_eval(rep, pi_hat(ch))
        C = int_matmul(int_matmul(W, P), _int_inverse_signed(W))
        eps = -1 if w0_minus_flag(ch) else 1
        assert np.array_equal(C, eps * _int_inverse_signed(P))


@pytest.mark.parametrize("name", ["B3", "C3", "D4", "D5", "F4", "G2"])
def test_w0_commutes_with_pi_hat(name):
    ch = get_chevalley(name)
    rep = ch.rep()
    W = int_eval(rep, w0_hat(ch))
    P = int_eval(rep, pi_hat(ch))
    assert np.array_equal(int_matmul(W, P), int_matmul(P, W))


@pytest.mark.slow
def test_w0_commutes_with_pi_hat_e7():
    ch = get_chevalley("E7")
    rep = ch.rep()
    W = int_eval(rep, w0_hat(ch))
    P = int_eval(rep, pi_hat(ch))
    assert np.array_equal(int_matmul(W, P), int_matmul(P, W))


def test_h_word_for_diag_roundtrip():
    rng = random.Random(404)
    for name in ["A3", "B3", "G2"]:
        ch = get_chevalley(name)
        rep = ch.rep()
        for _ in range(5):
            toks = [("h", ch.S.simple(i + 1), -1)
                    for i in range(ch.S.rank) if rng.random() < 0.5]
            target = np.diag(int_eval(rep, GenWord(toks)))
            w = h_word_for_diag(ch, rep, target)
            assert w is not None
            assert np.array_equal(np.diag(int_eval(rep, w)), target)


def test_lift_defect_of_pi_hat_is_trivial():
    ch = get_chevalley("C3")
    assert np.array_equal(lift_defect(ch, pi_hat(ch)),
                          np.ones(ch.rep().dim, dtype=np.int64))


def test_normalize_conjugator_fixes_twisted_lifts():
    rng = random.Random(725)
    for name in ["B3", "C3", "F4", "G2", "E6"]:
        ch = get_chevalley(name)
        rep = ch.rep()
        target = int_eval(rep, pi_hat(ch))
        for _ in range(3):
            toks = [("h", ch.S.simple(i + 1), -1)
                    for i in range(ch.S.rank) if rng.random() < 0.5]
            c0 = GenWord(toks)
            twisted = c0 * pi_hat(ch) * c0.inv(IntRing())
            c = normalize_conjugator(ch, twisted)
            fixed = c * twisted * c.inv(IntRing())
            assert np.array_equal(int_eval(rep, fixed), target)


def test_normalize_conjugator_excluded_types():
    for name in ["A3", "D4", "E7"]:
        ch = get_chevalley(name)
        with pytest.raises(ExcludedType):
            normalize_conjugator(ch, pi_hat(ch))


def test_unreachable_defect_raises():
    ch = get_chevalley("B3")
    S = ch.S
    # try all sign-torus twists t * pi_hat; any whose defect is outside the
    # conjugation image must raise rather than return something wrong
    import itertools
    rep = ch.rep()
    target = int_eval(rep, pi_hat(ch))
    hits = misses = 0
    for bits in itertools.product((0, 1), repeat=S.rank):
        toks = [("h", S.simple(i + 1), -1) for i, b in enumerate(bits) if b]
        twisted = GenWord(toks) * pi_hat(ch)
        try:
            c = normalize_conjugator(ch, twisted)
        except LiftError:
            misses += 1
            continue
        hits += 1
        fixed = c * twisted * c.inv(IntRing())
        assert np.array_equal(int_eval(rep, fixed), target)
    assert hits >= 1
    assert hits + misses == 2 ** S.rank
