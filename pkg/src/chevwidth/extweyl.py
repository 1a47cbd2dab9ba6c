"""Lifts of Weyl elements to the group and their torus bookkeeping.

The distinguished lift of the rotation element is pi_hat = prod w_{alpha_i}(1)
along pi_word.  Other lifts of the same Weyl element differ by a sign torus
element; the helpers here evaluate lift words exactly over Z, locate such
discrepancies, and remove them by conjugation where possible.
"""

from __future__ import annotations

import itertools

import numpy as np

from .matrices import int_matmul
from .words import GenWord


class LiftError(Exception):
    pass


class ExcludedType(Exception):
    """Raised when a normalization only defined away from types A/D/E7 is
    requested for one of them."""


def int_eval(rep, word) -> np.ndarray:
    """Evaluate a word with integer parameters exactly (int64)."""
    toks = word.toks if isinstance(word, GenWord) else tuple(word)
    M = np.eye(rep.dim, dtype=np.int64)
    for tok in toks:
        M = int_matmul(M, _int_token(rep, tok))
    if isinstance(word, GenWord) and word.center == -1:
        M = -M
    return M


def _int_token(rep, tok):
    kind, root, val = tok
    v = int(val)
    neg = tuple(-c for c in root)
    if kind == "x":
        return rep.x_int(root, v)
    if kind == "w":
        assert v in (1, -1)
        m = int_matmul(rep.x_int(root, v), rep.x_int(neg, -v))
        return int_matmul(m, rep.x_int(root, v))
    if kind == "h":
        assert v in (1, -1)
        return int_matmul(_int_token(rep, ("w", root, v)),
                          _int_token(rep, ("w", root, -1)))
    raise ValueError(kind)


def pi_hat(ch) -> GenWord:
    S = ch.S
    toks = [("w", S.simple(i), 1) for i in S.pi_word()]
    return GenWord(toks)


def lift_of_word(S, indices, signs=None) -> GenWord:
    signs = signs or [1] * len(indices)
    return GenWord([("w", S.simple(i), s) for i, s in zip(indices, signs)])


def w0_word(S):
    """Greedy reduced word for the longest element."""
    word = []
    npos = len(S.pos)
    while len(word) < npos:
        for i in range(1, S.rank + 1):
            if S.is_positive(S.act(word, S.simple(i))):
                word.append(i)
                break
        else:
            raise AssertionError("stuck before reaching the longest element")
    for b in S.pos:
        assert not S.is_positive(S.act(word, b))
    return word


def subsystem_longest_word(S, indices):
    """Greedy reduced word for the longest element of the parabolic subgroup
    generated by the given simple reflections."""
    word = []
    while True:
        for i in indices:
            if S.is_positive(S.act(word, S.simple(i))):
                word.append(i)
                break
        else:
            return word


def w0_hat(ch) -> GenWord:
    """A lift of the longest element.

    For type A the lift is adjusted by a torus word so that its natural
    matrix is a fixed anti-diagonal: all +1 when n = 0, 1 (mod 4), all -1
    when n = 3 (mod 4), alternating when n = 2 (mod 4).  With that choice
    conjugation by it sends pi_hat to pi_hat^-1 exactly, up to a global
    sign -1 exactly when n = 2 (mod 4)."""
    S = ch.S
    base = lift_of_word(S, w0_word(S))
    if S.fam != "A":
        return base
    n = S.rank + 1
    rep = ch.rep("natural")
    if n % 4 in (0, 1):
        d = [1] * n
    elif n % 4 == 3:
        d = [-1] * n
    else:
        d = [(-1) ** j for j in range(n)]
    target = np.zeros((n, n), dtype=np.int64)
    for j in range(n):
        target[n - 1 - j, j] = d[j]
    M = int_eval(rep, base)
    # base differs from the target by a +-1 diagonal; absorb it into h's
    D = int_matmul(target, _int_inverse_signed(M))
    assert np.array_equal(D, np.diag(np.diag(D)))
    tor = h_word_for_diag(ch, rep, np.diag(D))
    assert tor is not None
    out = tor * base
    assert np.array_equal(int_eval(rep, out), target)
    return out


def w0_minus_flag(ch) -> bool:
    """True when conjugating pi_hat by w0_hat yields -pi_hat^-1 (type A with
    n = 2 mod 4) rather than pi_hat^-1."""
    return ch.S.fam == "A" and (ch.S.rank + 1) % 4 == 2


def _int_inverse_signed(M):
    """Inverse of an integer matrix with det +-1 (exact, via adjugate)."""
    n = M.shape[0]
    a = np.array(M, dtype=np.float64)
    det = round(np.linalg.det(a))
    assert det in (1, -1)
    inv = np.rint(np.linalg.inv(a) * det).astype(np.int64) * det
    assert np.array_equal(int_matmul(M, inv), np.eye(n, dtype=np.int64))
    return inv


def h_diag(ch, rep, i) -> np.ndarray:
    """Diagonal of h_{alpha_i}(-1) in the given representation."""
    M = _int_token(rep, ("h", ch.S.simple(i), -1))
    d = np.diag(M).copy()
    assert np.array_equal(M, np.diag(d))
    return d


def h_word_for_diag(ch, rep, target_diag):
    """Express a +-1 diagonal matrix as prod h_{alpha_i}(-1)^{x_i}, or None."""
    n = ch.S.rank
    diags = [h_diag(ch, rep, i + 1) for i in range(n)]
    target = np.asarray(target_diag, dtype=np.int64)
    for bits in itertools.product((0, 1), repeat=n):
        d = np.ones(rep.dim, dtype=np.int64)
        for b, hv in zip(bits, diags):
            if b:
                d = d * hv
        if np.array_equal(d, target):
            toks = [("h", ch.S.simple(i + 1), -1)
                    for i, b in enumerate(bits) if b]
            return GenWord(toks)
    return None


def lift_defect(ch, lift_word, repname=None):
    """Diagonal of eval(lift) * eval(pi_hat)^-1; asserts it is a sign torus."""
    rep = ch.rep(repname)
    L = int_eval(rep, lift_word)
    P = int_eval(rep, pi_hat(ch))
    D = int_matmul(L, _int_inverse_signed(P))
    d = np.diag(D).copy()
    assert np.array_equal(D, np.diag(d)) and set(np.unique(d)) <= {1, -1}
    return d


def normalize_conjugator(ch, lift_word, repname=None) -> GenWord:
    """A sign-torus word c with  c * lift * c^-1 = pi_hat  (as matrices in
    the working representation).  Searches all of H(Z); LiftError if the
    defect is not removable by conjugation."""
    if ch.S.fam in ("A", "D") or (ch.S.fam, ch.S.rank) == ("E", 7):
        raise ExcludedType(ch.S.name)
    rep = ch.rep(repname)
    L = int_eval(rep, lift_word)
    target = int_eval(rep, pi_hat(ch))
    n = ch.S.rank
    diags = [h_diag(ch, rep, i + 1) for i in range(n)]
    for bits in itertools.product((0, 1), repeat=n):
        d = np.ones(rep.dim, dtype=np.int64)
        for b, hv in zip(bits, diags):
            if b:
                d = d * hv
        if np.array_equal(d[:, None] * L * d[None, :], target):
            toks = [("h", ch.S.simple(i + 1), -1)
                    for i, b in enumerate(bits) if b]
            return GenWord(toks)
    raise LiftError(f"torus defect not removable by conjugation in {ch.S.name}")


def adjoint_sign_conjugator(ch, lift_word) -> np.ndarray:
    """Diagonal d (entries +-1, adjoint basis) with  d L d^-1 = pi_hat's
    matrix in the adjoint representation.

    Products of h_i(-1) are tried first; when none works the search widens
    to all sign characters of the root lattice, which act on the adjoint
    module even though they need not come from any product of h's.  (For
    B2 and C2 the relevant column of the Cartan matrix is even, so half
    the sign vectors have a defect only a bare character removes.)"""
    if ch.S.fam in ("A", "D") or (ch.S.fam, ch.S.rank) == ("E", 7):
        raise ExcludedType(ch.S.name)
    S = ch.S
    rep = ch.rep("adjoint")
    L = int_eval(rep, lift_word)
    target = int_eval(rep, pi_hat(ch))
    n = S.rank
    diags = [h_diag(ch, rep, i + 1) for i in range(n)]
    for bits in itertools.product((0, 1), repeat=n):
        d = np.ones(rep.dim, dtype=np.int64)
        for b, hv in zip(bits, diags):
            if b:
                d = d * hv
        if np.array_equal(d[:, None] * L * d[None, :], target):
            return d
    for chi in itertools.product((1, -1), repeat=n):
        d = np.ones(rep.dim, dtype=np.int64)
        for k, lab in enumerate(rep.basis_labels):
            if lab[0] == "e":
                p = 1
                for c, s in zip(lab[1], chi):
                    if s == -1 and c % 2:
                        p = -p
                d[k] = p
        if np.array_equal(d[:, None] * L * d[None, :], target):
            return d
    raise LiftError(f"no sign character conjugates the lift in {ch.S.name}")


def lift_weyl_action(S, word):
    """The Weyl-group action on roots realized by a word of w/h tokens."""
    toks = word.toks if isinstance(word, GenWord) else tuple(word)

    def act(beta):
        for kind, root, _ in reversed(toks):
            if kind == "w":
                beta = S.reflect(root, beta)
        return beta
    return act
