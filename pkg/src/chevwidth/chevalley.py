"""Chevalley group machinery: structure constants, integral representations,
word evaluation over a ring, and collection of unipotent products.

All representation matrices are built over Z and verified against the
structure constant table at construction time; evaluation over a coefficient
ring only ever specializes those integer matrices.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .matrices import int_matmul, mat_space
from .roots import RootSystem, get_system
from .words import GenWord

_COLLECT_LIMIT = 500_000


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _neg(a):
    return tuple(-x for x in a)


def _scl(k, a):
    return tuple(k * x for x in a)


class Chevalley:
    """Structure constants and representations for one root system."""

    def __init__(self, system: RootSystem):
        self.S = system
        self._sign_memo = {}
        self._n_memo = {}
        self._extraspecial_memo = {}
        self._comm_memo = {}
        self._eta_memo = {}
        self._reps = {}
        self._evals = {}

    # ------------------------------------------------------------------
    # structure constants N(a, b):  [e_a, e_b] = N(a, b) e_{a+b}
    # ------------------------------------------------------------------

    def N(self, a, b) -> int:
        a, b = tuple(a), tuple(b)
        key = (a, b)
        got = self._n_memo.get(key)
        if got is not None:
            return got
        s = _add(a, b)
        if all(c == 0 for c in s):
            raise ValueError("N(a,-a) is not defined")
        if not self.S.is_root(s):
            val = 0
        else:
            val = (self._p(a, b) + 1) * self._sign(a, b)
        self._n_memo[key] = val
        return val

    def _p(self, a, b) -> int:
        """max k >= 0 with b - k a a root."""
        p = 0
        g = _sub(b, a)
        while self.S.is_root(g):
            p += 1
            g = _sub(g, a)
        return p

    def _extraspecial(self, gamma):
        """The distinguished positive pair (a, b) with a + b = gamma and a
        least in the root order; N is normalized to be positive on these."""
        got = self._extraspecial_memo.get(gamma)
        if got is None:
            for a in self.S.pos:
                b = _sub(gamma, a)
                if self.S.is_positive(b):
                    got = (a, b)
                    break
            assert got is not None, gamma
            self._extraspecial_memo[gamma] = got
        return got

    def _sign(self, a, b) -> int:
        key = (a, b)
        got = self._sign_memo.get(key)
        if got is not None:
            return got
        val = self._sign_compute(a, b)
        self._sign_memo[key] = val
        return val

    def _sign_compute(self, a, b) -> int:
        S = self.S
        if S.is_positive(a) and S.is_positive(b):
            if S.index[a] > S.index[b]:
                return -self._sign(b, a)
            gamma = _add(a, b)
            a1, b1 = self._extraspecial(gamma)
            if (a, b) == (a1, b1):
                return 1
            # Jacobi identity on (-a1, a, b); the pairs that appear have
            # strictly smaller height sums, so this recursion terminates
            num = -(self.N(_neg(a1), a) * self._n0(_sub(a, a1), b)
                    + self.N(b, _neg(a1)) * self._n0(_sub(b, a1), a))
            den = self.N(gamma, _neg(a1))
            assert den != 0 and num % den == 0, (a, b)
            val = num // den
            assert abs(val) == self._p(a, b) + 1, (a, b, val)
            return 1 if val > 0 else -1
        if not S.is_positive(a) and not S.is_positive(b):
            return -self._sign(_neg(a), _neg(b))
        # mixed signs: use that sign N(a,b) = sign N(b,c) = sign N(c,a)
        # whenever a + b + c = 0
        c = _neg(_add(a, b))
        for x, y in ((b, c), (c, a)):
            if S.is_positive(x) and S.is_positive(y):
                return self._sign(x, y)
            if not S.is_positive(x) and not S.is_positive(y):
                return -self._sign(_neg(x), _neg(y))
        raise AssertionError((a, b))

    def _n0(self, a, b) -> int:
        """N(a, b), but 0 when a is not a root (for Jacobi bookkeeping)."""
        if not self.S.is_root(a):
            return 0
        return self.N(a, b)

    # ------------------------------------------------------------------
    # commutator expansion  [x_a(s), x_b(t)] = prod x_{ia+jb}(C_ij s^i t^j)
    # ------------------------------------------------------------------

    def comm_pairs(self, a, b):
        """The (i, j, ia+jb) triples in the fixed product order."""
        out = []
        for i in range(1, 5):
            for j in range(1, 5):
                g = _add(_scl(i, a), _scl(j, b))
                if self.S.is_root(g):
                    out.append((i, j, g))
        out.sort(key=lambda t: (t[0] + t[1], t[0]))
        return out

    def comm_terms(self, a, b):
        """[(i, j, gamma, C_ij)] such that [x_a(s), x_b(t)] equals the
        ordered product of x_gamma(C_ij s^i t^j)."""
        a, b = tuple(a), tuple(b)
        assert not all(c == 0 for c in _add(a, b)), "opposite roots"
        key = (a, b)
        got = self._comm_memo.get(key)
        if got is not None:
            return got
        pairs = self.comm_pairs(a, b)
        if not pairs:
            val = ()
        elif len(pairs) == 1:
            assert pairs[0][:2] == (1, 1)
            val = ((1, 1, pairs[0][2], self.N(a, b)),)
        else:
            val = self._comm_fit(a, b, pairs)
        self._comm_memo[key] = val
        return val

    def _comm_fit(self, a, b, pairs):
        """Determine the higher commutator constants by exact evaluation in
        the adjoint representation at a few integer points."""
        assert pairs[0][:2] == (1, 1)
        rep = self.rep("adjoint")
        pts = [(2, 3), (5, 2), (3, 5)]
        lhs = {}
        for s, t in pts:
            m = int_matmul(rep.x_int(a, s), rep.x_int(b, t))
            m = int_matmul(m, rep.x_int(a, -s))
            lhs[(s, t)] = int_matmul(m, rep.x_int(b, -t))
        c11 = self.N(a, b)
        hits = []
        for tail in itertools.product(range(-3, 4), repeat=len(pairs) - 1):
            cs = (c11,) + tail
            ok = True
            for s, t in pts:
                m = np.eye(rep.dim, dtype=np.int64)
                for (i, j, g), c in zip(pairs, cs):
                    m = int_matmul(m, rep.x_int(g, c * s ** i * t ** j))
                if not np.array_equal(m, lhs[(s, t)]):
                    ok = False
                    break
            if ok:
                hits.append(cs)
        assert len(hits) == 1, (a, b, hits)
        return tuple((i, j, g, c) for (i, j, g), c in zip(pairs, hits[0]))

    # ------------------------------------------------------------------
    # representations
    # ------------------------------------------------------------------

    def default_rep_name(self) -> str:
        fam, n = self.S.fam, self.S.rank
        if fam in ("A", "C"):
            return "natural"
        if fam in ("B", "D"):
            return "vector"
        if fam == "E" and n == 7:
            return "minuscule"
        return "adjoint"

    def rep(self, name=None) -> "Rep":
        name = name or self.default_rep_name()
        if name not in self._reps:
            fam, n = self.S.fam, self.S.rank
            if name == "adjoint":
                r = _build_adjoint(self)
            elif name == "natural" and fam in ("A", "C"):
                r = _build_weight_rep(self, 1)
            elif name == "vector" and fam == "D":
                r = _build_weight_rep(self, 1)
            elif name == "vector" and fam == "B":
                r = _build_weight_rep(self, 1, with_zero=True)
            elif name == "minuscule" and (fam, n) == ("E", 7):
                r = _build_weight_rep(self, 7)
            else:
                raise KeyError(f"no representation {name!r} for {self.S.name}")
            self._reps[name] = r
        return self._reps[name]

    def evaluator(self, R, repname=None) -> "Evaluator":
        repname = repname or self.default_rep_name()
        key = (repname, R)
        if key not in self._evals:
            self._evals[key] = Evaluator(self, self.rep(repname), R)
        return self._evals[key]

    # ------------------------------------------------------------------
    # conjugation rules for tokens
    # ------------------------------------------------------------------

    def eta(self, alpha, beta) -> int:
        """Sign in  w_alpha(1) x_beta(t) w_alpha(1)^-1 = x_{s(beta)}(eta t)
        for <beta, alpha> = 0; in general the parameter is eta u^-<b,a> t."""
        alpha, beta = tuple(alpha), tuple(beta)
        col = self._eta_memo.get(alpha)
        if col is None:
            rep = self.rep("adjoint")
            w = int_matmul(int_matmul(rep.x_int(alpha, 1),
                                      rep.x_int(_neg(alpha), -1)),
                           rep.x_int(alpha, 1))
            col = {}
            for b in self.S.all_roots():
                j = rep.basis_index[("e", b)]
                v = w[:, j]
                nz = np.nonzero(v)[0]
                assert len(nz) == 1, (alpha, b)
                i = int(nz[0])
                lab = rep.basis_labels[i]
                assert lab == ("e", self.S.reflect(alpha, b)), (alpha, b)
                assert v[i] in (1, -1)
                col[b] = int(v[i])
            self._eta_memo[alpha] = col
        return col[beta]

    def conj_token(self, by, tok, R):
        """(by) tok (by)^-1 for a w- or h-token `by`."""
        bk, alpha, u = by
        u = R.of(u) if isinstance(u, int) else u
        kind, beta, val = tok
        k = self.S.pairing(beta, alpha)
        if bk == "h":
            if kind == "h":
                return tok
            return (kind, beta, R.mul(R.pow(u, k), val))
        if bk == "w":
            sb = self.S.reflect(alpha, beta)
            c = R.mul(R.of(self.eta(alpha, beta)), R.pow(u, -k))
            if kind == "h":
                return ("h", sb, val)
            return (kind, sb, R.mul(c, val))
        raise ValueError(bk)

    def conj_word(self, by_toks, word: GenWord, R) -> GenWord:
        """Conjugate `word` by a product of w/h tokens (leftmost outermost)."""
        toks = list(word.toks)
        for by in reversed(list(by_toks)):
            toks = [self.conj_token(by, t, R) for t in toks]
        return GenWord(toks, word.center)

    # ------------------------------------------------------------------
    # collection
    # ------------------------------------------------------------------

    def collect_partial(self, toks, targets, R):
        """Rewrite a product of x-tokens as x_{t1}(c1)...x_{tk}(ck) * rest,
        pulling each target root (in the given order) to the front.

        Returns (coeffs, rest) where coeffs maps each target to its
        coefficient.  Correction terms produced by swapping never recreate a
        root that was already pulled out (their height is strictly larger
        than the height of the target being moved)."""
        work = [t for t in toks if not R.is_zero(t[2])]
        assert all(t[0] == "x" for t in work)
        coeffs = {}
        steps = 0
        for target in targets:
            acc = R.zero
            while True:
                idx = next((i for i, t in enumerate(work) if t[1] == target),
                           None)
                if idx is None:
                    break
                while idx > 0:
                    steps += 1
                    assert steps < _COLLECT_LIMIT, "collection diverged"
                    a = work[idx - 1]
                    b = work[idx]
                    corr = []
                    for i, j, g, c in self.comm_terms(a[1], b[1]):
                        v = R.mul(R.of(c), R.mul(R.pow(R.neg(a[2]), i),
                                                 R.pow(R.neg(b[2]), j)))
                        if not R.is_zero(v):
                            assert g != target and g not in coeffs, g
                            corr.append(("x", g, v))
                    work[idx - 1:idx + 1] = [b, a] + corr
                    idx -= 1
                acc = R.add(acc, work.pop(0)[2])
            coeffs[target] = acc
        return coeffs, work

    def collect(self, toks, order, R):
        """Full normal form along `order` (which must exhaust the support)."""
        coeffs, rest = self.collect_partial(toks, order, R)
        assert not rest, [t[1] for t in rest]
        return coeffs


class Rep:
    """An integral matrix representation; e_matrices maps each root to the
    matrix of the corresponding Chevalley generator."""

    def __init__(self, chev, name, basis_labels, e_matrices, h_matrices):
        self.chev = chev
        self.name = name
        self.basis_labels = basis_labels
        self.basis_index = {lab: i for i, lab in enumerate(basis_labels)}
        self.dim = len(basis_labels)
        self.e = e_matrices
        self.h = h_matrices
        self._pows = {}

    def xpows(self, root):
        """Integer matrices [I, M, M^2/2!, ...] for M = e_root (nilpotent)."""
        root = tuple(root)
        got = self._pows.get(root)
        if got is None:
            M = self.e[root]
            out = [np.eye(self.dim, dtype=np.int64), M]
            k = 2
            cur = M
            while True:
                cur = int_matmul(cur, M)
                assert (cur % k == 0).all()
                cur = cur // k
                if not cur.any():
                    break
                out.append(cur)
                k += 1
                assert k <= 8
            got = tuple(out)
            self._pows[root] = got
        return got

    def x_int(self, root, t: int):
        """x_root(t) as an exact integer matrix."""
        pows = self.xpows(root)
        acc = np.zeros((self.dim, self.dim), dtype=np.int64)
        tk = 1
        for P in pows:
            acc += tk * P
            tk *= t
        return acc


class Evaluator:
    """Evaluates GenWords as matrices over a fixed ring."""

    def __init__(self, chev, rep, R):
        self.chev = chev
        self.rep = rep
        self.R = R
        self.space = mat_space(R, rep.dim)
        self._tok_cache = {}

    def token_matrix(self, tok):
        got = self._tok_cache.get(tok)
        if got is not None:
            return got
        kind, root, val = tok
        R = self.R
        if kind in ("w", "h") and isinstance(val, int):
            val = R.of(val)
        if kind == "x":
            M = self.space.poly(self.rep.xpows(root), val)
        elif kind == "w":
            M = self.space.mul_many([
                self.token_matrix(("x", root, val)),
                self.token_matrix(("x", _neg(root), R.neg(R.inv(val)))),
                self.token_matrix(("x", root, val)),
            ])
        elif kind == "h":
            M = self.space.mul(self.token_matrix(("w", root, val)),
                               self.token_matrix(("w", root, R.neg(R.one))))
        else:
            raise ValueError(kind)
        if len(self._tok_cache) < 4096:
            self._tok_cache[tok] = M
        return M

    def matrix(self, word):
        """Internal-representation matrix of a GenWord (or token iterable)."""
        toks = word.toks if isinstance(word, GenWord) else tuple(word)
        M = self.space.mul_many([self.token_matrix(t) for t in toks])
        if isinstance(word, GenWord) and word.center == -1:
            M = self.space.neg(M)
        return M

    def rows(self, M):
        return self.space.to_rows(M)

    def word_rows(self, word):
        return self.rows(self.matrix(word))

    def equal(self, A, B) -> bool:
        return self.space.eq(A, B)

    def is_identity(self, word) -> bool:
        return self.space.is_identity(self.matrix(word))


# ----------------------------------------------------------------------
# representation builders
# ----------------------------------------------------------------------

def _weight_coords(S: RootSystem, root):
    """A root written in the eigenvalue coordinates <., alpha_j-dual>."""
    return tuple(S.pairing(root, S.simple(j + 1)) for j in range(S.rank))


def _build_weight_rep(chev: Chevalley, fund: int, with_zero=False) -> Rep:
    """Representation on the Weyl orbit of a fundamental weight, with all
    raising coefficients +1 (plus, for odd orthogonal groups, a doubled edge
    out of the zero weight).  Only valid for (quasi-)minuscule weights; the
    construction is fully verified before use."""
    S = chev.S
    n = S.rank
    start = tuple(1 if j == fund - 1 else 0 for j in range(n))
    orbit = {start}
    queue = [start]
    while queue:
        mu = queue.pop()
        for i in range(n):
            img = tuple(mu[j] - mu[i] * S.cartan[i][j] for j in range(n))
            if img not in orbit:
                orbit.add(img)
                queue.append(img)
        assert len(orbit) <= 300
    if with_zero:
        orbit.add((0,) * n)

    # order by depth below the highest weight, BFS over lowering steps
    simple_w = [_weight_coords(S, S.simple(i + 1)) for i in range(n)]
    depth = {start: 0}
    frontier = [start]
    while frontier:
        nxt = []
        for mu in frontier:
            for i in range(n):
                down = _sub(mu, simple_w[i])
                if down in orbit and down not in depth:
                    depth[down] = depth[mu] + 1
                    nxt.append(down)
        frontier = nxt
    assert len(depth) == len(orbit)
    basis = sorted(orbit, key=lambda mu: (depth[mu], mu))
    idx = {mu: i for i, mu in enumerate(basis)}
    dim = len(basis)
    zero_w = (0,) * n

    E, F, H = [], [], []
    for i in range(n):
        Ei = np.zeros((dim, dim), dtype=np.int64)
        Fi = np.zeros((dim, dim), dtype=np.int64)
        for mu in basis:
            up = _add(mu, simple_w[i])
            if up in idx:
                Ei[idx[up], idx[mu]] = 2 if mu == zero_w else 1
            dn = _sub(mu, simple_w[i])
            if dn in idx:
                Fi[idx[dn], idx[mu]] = 2 if mu == zero_w else 1
        Hi = np.diag(np.array([mu[i] for mu in basis], dtype=np.int64))
        E.append(Ei)
        F.append(Fi)
        H.append(Hi)

    _verify_presentation(chev, E, F, H)
    e = _extend_generators(chev, E, F)
    labels = [("v", mu) for mu in basis]
    rep = Rep(chev, f"weight-{fund}", labels, e, H)
    _verify_brackets(chev, rep)
    return rep


def _build_adjoint(chev: Chevalley) -> Rep:
    S = chev.S
    n = S.rank
    labels = ([("e", _neg(b)) for b in reversed(S.pos)]
              + [("h", i) for i in range(1, n + 1)]
              + [("e", b) for b in S.pos])
    index = {lab: i for i, lab in enumerate(labels)}
    dim = len(labels)

    e = {}
    for g in S.all_roots():
        M = np.zeros((dim, dim), dtype=np.int64)
        for lab in labels:
            j = index[lab]
            if lab[0] == "h":
                # [e_g, h_i] = -<g, alpha_i> e_g
                M[index[("e", g)], j] = -S.pairing(g, S.simple(lab[1]))
            else:
                d = lab[1]
                s = _add(g, d)
                if all(c == 0 for c in s):
                    for i, ci in enumerate(S.coroot(g)):
                        if ci:
                            M[index[("h", i + 1)], j] = ci
                elif S.is_root(s):
                    M[index[("e", s)], j] = chev.N(g, d)
        e[g] = M

    H = []
    for i in range(1, n + 1):
        M = np.zeros((dim, dim), dtype=np.int64)
        for lab in labels:
            if lab[0] == "e":
                M[index[lab], index[lab]] = S.pairing(lab[1], S.simple(i))
        H.append(M)

    rep = Rep(chev, "adjoint", labels, e, H)
    _verify_brackets(chev, rep, sample=400)
    return rep


def _bracket(A, B):
    return int_matmul(A, B) - int_matmul(B, A)


def _verify_presentation(chev, E, F, H):
    """Check the defining relations of the Lie algebra on simple generators."""
    S = chev.S
    n = S.rank
    A = S.cartan
    for i in range(n):
        for j in range(n):
            assert not _bracket(H[i], H[j]).any()
            b = _bracket(E[i], F[j])
            assert np.array_equal(b, H[i] if i == j else 0 * b), (i, j)
            assert np.array_equal(_bracket(H[i], E[j]), A[j][i] * E[j])
            assert np.array_equal(_bracket(H[i], F[j]), -A[j][i] * F[j])
            if i != j:
                m = 1 - A[j][i]
                ad_e, ad_f = E[j], F[j]
                for _ in range(m):
                    ad_e = _bracket(E[i], ad_e)
                    ad_f = _bracket(F[i], ad_f)
                assert not ad_e.any() and not ad_f.any(), (i, j)


def _extend_generators(chev, E, F):
    """Build every root generator from the simple ones along extraspecial
    pairs, checking exact divisibility by the structure constants."""
    S = chev.S
    e = {}
    for i in range(S.rank):
        e[S.simple(i + 1)] = E[i]
        e[_neg(S.simple(i + 1))] = F[i]
    for g in S.pos:
        if S.height(g) == 1:
            continue
        a, b = chev._extraspecial(g)
        for sgn in (1, -1):
            ga, gb, gg = (_scl(sgn, a), _scl(sgn, b), _scl(sgn, g))
            n = chev.N(ga, gb)
            br = _bracket(e[ga], e[gb])
            assert (br % n == 0).all(), (gg, n)
            e[gg] = br // n
    return e


def _verify_brackets(chev, rep, sample=None):
    """[e_a, e_b] must match the structure constants for every pair (or a
    random sample of pairs for the big adjoint modules)."""
    S = chev.S
    allr = S.all_roots()
    pairs = [(a, b) for a in allr for b in allr]
    if sample is not None and len(pairs) > sample:
        rng = np.random.RandomState(12345)
        pairs = [pairs[i] for i in
                 rng.choice(len(pairs), size=sample, replace=False)]
    for a, b in pairs:
        br = _bracket(rep.e[a], rep.e[b])
        s = _add(a, b)
        if all(c == 0 for c in s):
            want = sum((ci * rep.h[i] for i, ci in enumerate(S.coroot(a))
                        if ci), np.zeros_like(br))
            assert np.array_equal(br, want), ("h", a)
        elif S.is_root(s):
            assert np.array_equal(br, chev.N(a, b) * rep.e[s]), (a, b)
        else:
            assert not br.any(), (a, b)


@lru_cache(maxsize=None)
def get_chevalley(name: str) -> Chevalley:
    return Chevalley(get_system(name))
