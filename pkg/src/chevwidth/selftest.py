"""End-to-end checks over the whole library, shared by the `selftest`
command and the acceptance test suite.

Each check function returns (ok, detail) and prints nothing; run_scope
collects the numbered results so callers can render one pass/fail line
per check.  Seeding is derived from fixed strings, so every run of a
check sees the same inputs.
"""

import itertools
import random

import numpy as np

from .chevalley import get_chevalley
from .decompose import decompose, decompose_short, g_minus_one, n_total, verify
from .extweyl import (ExcludedType, LiftError, adjoint_sign_conjugator,
                      int_eval, lift_of_word, normalize_conjugator, pi_hat,
                      w0_word)
from .matrices import int_matmul
from .rings import Bool2k, FieldP, IntRing, RingError, Zmod
from .roots import get_system
from .slfactor import NotStableRank1, factor_sl
from .words import GenWord, comm

WIDTH_TYPES = ["A2", "A3", "A4", "A5", "B2", "B3", "C2", "C3",
               "D4", "G2", "F4", "E6"]
WIDTH_RINGS = [FieldP(2), FieldP(5), Zmod(6), Zmod(9)]
# families whose decompositions must reproduce the group element on the
# nose; the others are only defined up to the central sign
EXACT_FAMS = ("A", "C", "G", "F")

ALL_TYPES = ["A1", "A2", "A3", "A4", "A5", "A6", "B2", "B3", "B4",
             "C2", "C3", "C4", "D3", "D4", "D5", "E6", "E7", "E8",
             "F4", "G2"]


def ring_tag(R) -> str:
    d = R.descriptor()
    kind = d.get("kind")
    if kind == "field_p":
        return "f%d" % d["n"]
    if kind == "zmod":
        return "z%d" % d["n"]
    if kind == "bool":
        return "bool%d" % d["n"]
    return kind


def rand_word(S, R, rng, k, lower=False) -> GenWord:
    toks = []
    for _ in range(k):
        b = rng.choice(S.pos)
        if lower:
            b = tuple(-c for c in b)
        toks.append(("x", b, R.sample(rng)))
    return GenWord(toks)


def rand_quad(ch, R, rng, k=5):
    S = ch.S
    return (rand_word(S, R, rng, k), rand_word(S, R, rng, k, lower=True),
            rand_word(S, R, rng, k), rand_word(S, R, rng, k, lower=True))


def _rep_names(ch):
    fam, n = ch.S.fam, ch.S.rank
    names = ["adjoint"]
    if fam in ("A", "C"):
        names.append("natural")
    if fam in ("B", "D"):
        names.append("vector")
    if (fam, n) == ("E", 7):
        names.append("minuscule")
    return names


# ---------------------------------------------------------------------------
# check 1: the commutator-count bound on random quadruples
# ---------------------------------------------------------------------------

def check_width_bound(cases=100):
    bad = []
    done = 0
    for name in WIDTH_TYPES:
        ch = get_chevalley(name)
        rep = ch.default_rep_name()
        bound = n_total(ch.S)
        need_exact = ch.S.fam in EXACT_FAMS
        for R in WIDTH_RINGS:
            cell = "%s/%s" % (name, ring_tag(R))
            rng = random.Random("width:" + cell)
            try:
                for _ in range(cases):
                    q = rand_quad(ch, R, rng)
                    d = decompose(ch, R, q)
                    if d.count > bound:
                        bad.append("%s count %d > %d" % (cell, d.count, bound))
                        break
                    res = verify(ch, R, rep, q[0] * q[1] * q[2] * q[3], d)
                    if res == "mismatch" or (need_exact and res != "exact"):
                        bad.append("%s verify %s" % (cell, res))
                        break
                else:
                    done += 1
            except RingError as e:
                bad.append("%s RingError: %s" % (cell, e))
    total = len(WIDTH_TYPES) * len(WIDTH_RINGS)
    if not bad:
        return True, "%d/%d cells x %d cases within bound" % (done, total,
                                                              cases)
    return False, "%d/%d cells ok; failing: %s" % (done, total,
                                                   "; ".join(bad))


# ---------------------------------------------------------------------------
# check 2: the central minus sign for A5 matrix input
# ---------------------------------------------------------------------------

def check_minus_center(cases=6):
    ch = get_chevalley("A5")
    R = Zmod(9)
    ev = ch.evaluator(R, "natural")
    hits = 0
    for i in range(cases):
        rng = random.Random("minus:%d" % i)
        q = rand_quad(ch, R, rng)
        rows = [list(r) for r in ev.rows(ev.matrix(q[0] * q[1] * q[2] * q[3]))]
        d = decompose(ch, R, rows)
        if d.count > n_total(ch.S):
            return False, "case %d count %d" % (i, d.count)
        if d.center == -1 and verify(ch, R, "natural", rows, d) == "exact":
            hits += 1
    if hits == 0:
        return False, "no case produced a central -1"
    return True, "%d/%d cases carried center -1 and verified exact" % (hits,
                                                                       cases)


# ---------------------------------------------------------------------------
# check 3: conjugation by the longest-word lift permutes the w_i(1)
# ---------------------------------------------------------------------------

def check_nice_lifts():
    combos = [("A2", "natural"), ("A3", "natural"), ("A4", "natural"),
              ("A5", "natural"), ("A6", "natural"), ("D4", "vector"),
              ("D5", "vector"), ("E7", "minuscule")]
    bad = []
    pairs = 0
    for name, repname in combos:
        ch = get_chevalley(name)
        S = ch.S
        rep = ch.rep(repname)
        # the plain lift of the longest word (every letter mapped to
        # w_i(1)); w0_hat's type-A torus adjustment would break the exact
        # generator permutation below
        word = w0_word(S)
        lift = lift_of_word(S, word)
        W0 = int_eval(rep, lift)
        W0i = int_eval(rep, lift.inv(IntRing()))
        gens = [int_eval(rep, GenWord([("w", S.simple(j), 1)]))
                for j in range(1, S.rank + 1)]
        for i in range(S.rank):
            A = int_matmul(int_matmul(W0, gens[i]), W0i)
            js = [j for j, G in enumerate(gens) if np.array_equal(A, G)]
            # conjugation must land exactly on the partner simple root,
            # the one sent to -alpha_i by the longest element
            neg = tuple(-c for c in S.act(word, S.simple(i + 1)))
            want = [j for j in range(S.rank) if S.simple(j + 1) == neg]
            if js != want:
                bad.append("%s %s i=%d matches %s wanted %s"
                           % (name, repname, i + 1,
                              [j + 1 for j in js], [j + 1 for j in want]))
            else:
                pairs += 1
    if bad:
        return False, "; ".join(bad)
    return True, "%d generator conjugates landed on the partner w_j(1)" % pairs


# ---------------------------------------------------------------------------
# check 4: trajectory partitions for the distinguished word and random ones
# ---------------------------------------------------------------------------

def _closure_defect(E, posset):
    for b in E:
        for c in E:
            s = tuple(x + y for x, y in zip(b, c))
            if s in posset and s not in E:
                return (b, c, s)
    return None


def _trajectory_issues(S, word, posset):
    layers, theta = S.omega_theta(word)
    issues = []
    chunks = [theta] + layers
    flat = [b for chunk in chunks for b in chunk]
    if len(flat) != len(S.pos) or len(set(flat)) != len(flat):
        issues.append("partition broken")
    d = _closure_defect(set(theta), posset)
    if d:
        issues.append("theta not closed at %s+%s" % (d[0], d[1]))
    E = set(theta)
    for k, lay in enumerate(layers):
        E |= set(lay)
        d = _closure_defect(E, posset)
        if d:
            issues.append("prefix n=%d not closed at %s+%s" % (k, d[0], d[1]))
            break
    return layers, theta, issues


def check_trajectories(words=50):
    bad = []
    checked = 0
    for name in ALL_TYPES:
        S = get_system(name)
        posset = set(S.pos)
        pw = S.pi_word()
        layers, theta, issues = _trajectory_issues(S, pw, posset)
        if issues:
            bad.append("%s pi-word: %s" % (name, "; ".join(issues)))
        want0 = 5 if name == "E6" else S.rank
        if len(layers[0]) != want0:
            bad.append("%s |layer0| %d != %d" % (name, len(layers[0]), want0))
        if theta != S.persistent_roots():
            bad.append("%s theta mismatch" % name)
        rng = random.Random("traj:" + name)
        for _ in range(words):
            w = [rng.randrange(1, S.rank + 1)
                 for _ in range(rng.randrange(1, 11))]
            _, _, issues = _trajectory_issues(S, w, posset)
            checked += 1
            if issues:
                bad.append("%s word %s: %s" % (name, w, issues[0]))
    if bad:
        head = "; ".join(bad[:3])
        more = "" if len(bad) <= 3 else " (+%d more)" % (len(bad) - 3)
        return False, head + more
    return True, "%d words over %d systems partition cleanly" % (
        checked, len(ALL_TYPES))


# ---------------------------------------------------------------------------
# check 5: every sign choice of the distinguished lift normalizes
# ---------------------------------------------------------------------------

def check_sign_normalization():
    bad = []
    total = 0
    chars_only = 0
    for name in ["B2", "B3", "C2", "C3", "E6", "F4", "G2"]:
        ch = get_chevalley(name)
        S = ch.S
        idxs = S.pi_word()
        rep = ch.rep("adjoint")
        target = int_eval(rep, pi_hat(ch))
        for signs in itertools.product((1, -1), repeat=len(idxs)):
            lift = lift_of_word(S, idxs, list(signs))
            try:
                d = adjoint_sign_conjugator(ch, lift)
            except Exception as e:
                bad.append("%s %s: %s" % (name, signs, e))
                continue
            L = int_eval(rep, lift)
            if not np.array_equal(d[:, None] * L * d[None, :], target):
                bad.append("%s %s: conjugate differs" % (name, signs))
                continue
            total += 1
            # torus words cover the rest of the table; note how often the
            # conjugator only exists as a bare sign character
            try:
                normalize_conjugator(ch, lift, "adjoint")
            except LiftError:
                chars_only += 1
    for name in ["A3", "D4", "E7"]:
        ch = get_chevalley(name)
        lift = lift_of_word(ch.S, ch.S.pi_word())
        for fn in (normalize_conjugator, adjoint_sign_conjugator):
            try:
                fn(ch, lift)
                bad.append("%s accepted by %s" % (name, fn.__name__))
            except ExcludedType:
                pass
    if bad:
        return False, "; ".join(bad[:4])
    return True, ("%d sign vectors normalized (%d via bare characters); "
                  "excluded families refused" % (total, chars_only))


# ---------------------------------------------------------------------------
# check 6: generator relations against matrix evaluation
# ---------------------------------------------------------------------------

def _relation_instance(ch, repname, R, rng):
    S = ch.S
    ev = ch.evaluator(R, repname)
    roots = list(S.pos) + [tuple(-c for c in b) for b in S.pos]
    if rng.random() < 0.5 or S.rank == 1:
        # conjugation by a Weyl lift: w_a(u) x_b(t) w_a(u)^-1
        a = rng.choice(roots)
        b = rng.choice(roots)
        u = R.sample(rng)
        while not R.is_unit(u):
            u = R.sample(rng)
        t = R.sample(rng)
        by = ("w", a, u)
        tok = ("x", b, t)
        out = ch.conj_token(by, tok, R)
        lhs = GenWord([by, tok]) * GenWord([by]).inv(R)
        rhs = GenWord([out])
    else:
        # the commutator of two generators against its closed form
        while True:
            a, b = rng.choice(roots), rng.choice(roots)
            if a != b and a != tuple(-c for c in b):
                break
        s, t = R.sample(rng), R.sample(rng)
        lhs = comm(GenWord([("x", a, s)]), GenWord([("x", b, t)]), R)
        terms = [("x", g, R.mul(R.of(c), R.mul(R.pow(s, i), R.pow(t, j))))
                 for i, j, g, c in ch.comm_terms(a, b)]
        rhs = GenWord(terms)
    return ev.equal(ev.matrix(lhs), ev.matrix(rhs))


def check_relations(cases=500):
    pairs = []
    for name in ALL_TYPES:
        ch = get_chevalley(name)
        for repname in _rep_names(ch):
            pairs.append((name, repname))
    per = cases // len(pairs)
    extra = cases - per * len(pairs)
    bad = []
    done = 0
    for k, (name, repname) in enumerate(pairs):
        ch = get_chevalley(name)
        n = per + (1 if k < extra else 0)
        rng = random.Random("rel:%s:%s" % (name, repname))
        for i in range(n):
            R = rng.choice(WIDTH_RINGS)
            if not _relation_instance(ch, repname, R, rng):
                bad.append("%s/%s case %d" % (name, repname, i))
                break
        else:
            done += n
    if bad:
        return False, "; ".join(bad[:4])
    return True, "%d instances over %d (system, rep) pairs agree" % (
        done, len(pairs))


# ---------------------------------------------------------------------------
# check 7: unipotent-quadruple factorization of SL_n matrices
# ---------------------------------------------------------------------------

def _random_sl(n, R, rng, ops=12):
    rows = [[R.one if i == j else R.zero for j in range(n)] for i in range(n)]
    for _ in range(ops):
        i = rng.randrange(n)
        j = rng.randrange(n)
        if i == j:
            continue
        c = R.sample(rng)
        rows[i] = [R.add(x, R.mul(c, y)) for x, y in zip(rows[i], rows[j])]
    return rows


def check_sl_factorization(cases=100):
    rings = [FieldP(5), Zmod(6), Zmod(9), Zmod(25)]
    bad = []
    for i in range(cases):
        rng = random.Random("slfac:%d" % i)
        n = rng.randrange(2, 7)
        R = rings[i % len(rings)]
        M = _random_sl(n, R, rng)
        fq = factor_sl(M, R)
        got = [list(r) for r in fq.matrix()]
        if got != [list(r) for r in M]:
            bad.append("case %d (n=%d, %s)" % (i, n, ring_tag(R)))
    try:
        factor_sl([[1, 1], [0, 1]], IntRing())
        bad.append("integer input accepted")
    except NotStableRank1:
        pass
    if bad:
        return False, "; ".join(bad[:4])
    return True, "%d matrices round-tripped; integer input refused" % cases


# ---------------------------------------------------------------------------
# check 8: the shift-block element g with g-1 invertible
# ---------------------------------------------------------------------------

def _det_int(M):
    A = [[int(v) for v in row] for row in M]
    n = len(A)
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            p = next((i for i in range(k + 1, n) if A[i][k]), None)
            if p is None:
                return 0
            A[k], A[p] = A[p], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[-1][-1]


def check_shift_blocks():
    bad = []
    for l in range(1, 7):
        word, g, inv = g_minus_one(l)
        n = l + 1
        gm1 = [[g[i][j] - (i == j) for j in range(n)] for i in range(n)]
        if _det_int(g) != 1 or _det_int(gm1) != 1:
            bad.append("l=%d determinant" % l)
            continue
        prod = int_matmul(gm1, inv)
        if not np.array_equal(np.asarray(prod), np.eye(n, dtype=np.int64)):
            bad.append("l=%d inverse" % l)
    if bad:
        return False, "; ".join(bad)
    return True, "l=1..6 give det(g)=det(g-1)=1 with exact integer inverse"


# ---------------------------------------------------------------------------
# check 9: one commutator fewer for two-factor input
# ---------------------------------------------------------------------------

def check_short_variant(cases=50):
    types = ["A2", "A3", "A4", "A5", "B3", "C3", "D4", "F4", "E6"]
    rings = [Bool2k(1), Bool2k(2), Bool2k(3)]
    bad = []
    for i in range(cases):
        name = types[i % len(types)]
        R = rings[i % len(rings)]
        ch = get_chevalley(name)
        rng = random.Random("short:%d" % i)
        u = rand_word(ch.S, R, rng, 5)
        v = rand_word(ch.S, R, rng, 5, lower=True)
        d = decompose_short(ch, R, (u, v))
        bound = n_total(ch.S) - 1
        if d.count > bound:
            bad.append("case %d %s count %d > %d" % (i, name, d.count, bound))
            continue
        res = verify(ch, R, ch.default_rep_name(), u * v, d)
        need_exact = ch.S.fam in EXACT_FAMS
        if res == "mismatch" or (need_exact and res != "exact"):
            bad.append("case %d %s verify %s" % (i, name, res))
    if bad:
        return False, "; ".join(bad[:4])
    return True, "%d two-factor cases stayed one commutator short" % cases


# ---------------------------------------------------------------------------
# scopes and the runner
# ---------------------------------------------------------------------------

CHECKS = [
    (1, "width-bound", check_width_bound),
    (2, "minus-center", check_minus_center),
    (3, "nice-lifts", check_nice_lifts),
    (4, "trajectories", check_trajectories),
    (5, "sign-normalization", check_sign_normalization),
    (6, "relations", check_relations),
    (7, "sl-factorization", check_sl_factorization),
    (8, "shift-blocks", check_shift_blocks),
    (9, "short-variant", check_short_variant),
]

SCOPES = {
    "quick": (4, 6),
    "full": tuple(num for num, _, _ in CHECKS),
    "e7nice": (3,),
}


def run_scope(scope):
    """Run the checks of a named scope; returns [(num, name, ok, detail)]."""
    nums = SCOPES[scope]
    out = []
    for num, name, fn in CHECKS:
        if num in nums:
            ok, detail = fn()
            out.append((num, name, ok, detail))
    return out


def format_result(num, name, ok, detail) -> str:
    return "check %d %-18s %s  %s" % (num, name, "PASS" if ok else "FAIL",
                                      detail)
