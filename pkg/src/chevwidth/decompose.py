"""Decompose elementary Chevalley group elements into few commutators.

The pipeline rests on two reductions.  First, a factored element
u1*v1*u2*v2 rearranges as c2 * (u3*pi) * (pi^-1*v3) with u3 = u1*u2,
v3 = v1*v2 and c2 a single commutator.  Both rotation factors conjugate
into companion form (module companion), and the quotient of the two
companion forms is a unipotent element zeta supported near the highest
weight orbit:

    (u3*pi) * (pi^-1*v3)  =  [mu^-1 * zeta * nu, psi^-1] * conj(zeta)

Second, zeta itself is a short product of commutators, produced by a
residual-driven engine: the target coefficients are tracked in normal
form over all positive roots, and each stage emits one commutator pair
and subtracts its exact expansion.  Two stage kinds cover every type:

  pair stage -- [x_a(t), x_b(1)]; t is solved from the single linear
      term at a target root, all other terms spill into the residual.
  conjugation stage -- [g, x(zeta)] for a fixed unit-determinant word g
      acting on a coefficient block; zeta is solved by Newton iteration
      against the integer matrix of the action (g - 1 must be
      invertible over the ring; this is where 2 must be a unit for
      B2, C2 and G2).

Stage counts per family: 1 for A/F4/G2, 2 for B/C/D/E7/E8, 3 for E6,
giving total commutator counts of 3, 4 and 5 after the two outer pairs.
"""

from .companion import minus_side_to_companion, to_companion
from .extweyl import pi_hat
from .matrices import int_matmul
from .rings import IntRing, RingError
from .roots import get_system
from .slfactor import FactoredQuadruple, NotStableRank1, factor_sl
from .words import GenWord, comm, condense, identity


class DecomposeError(Exception):
    pass


class UnsupportedRank(DecomposeError):
    """Rank 1 has no block action and is outside every bound here."""


class UnsupportedMatrixInput(DecomposeError):
    """Matrix input is only meaningful for the A family (SL_n)."""


def n_sigma(S) -> int:
    """Commutators needed for a unipotent element on the companion roots."""
    if S.name == "E6":
        return 3
    if S.fam in ("A", "F", "G"):
        return 1
    return 2


def n_total(S) -> int:
    """Total commutator bound: the two outer pairs plus the sigma count."""
    return n_sigma(S) + 2


# ---------------------------------------------------------------------------
# residual engine
# ---------------------------------------------------------------------------

def _neg(r):
    return tuple(-c for c in r)


def _x_word(coeffs, R, order):
    return [("x", b, coeffs[b]) for b in order
            if b in coeffs and not R.is_zero(coeffs[b])]


def _inv_toks(toks, R):
    return [(k, b, R.neg(v)) for k, b, v in reversed(list(toks))]


def _conj_stream(ch, g_toks, toks, R):
    """Token stream of g * toks * g^-1.

    The incoming stream must be x-only and is pushed through the
    conjugator token by token; for an x-token conjugator the appended
    commutator terms keep everything on positive roots, so opposite
    roots never meet (asserted).
    """
    stream = list(toks)
    for by in reversed(list(g_toks)):
        kind_by, a, s = by
        if kind_by in ("w", "h"):
            stream = [ch.conj_token(by, t, R) for t in stream]
            continue
        if isinstance(s, int):
            s = R.of(s)
        out = []
        for t in stream:
            kind, b, z = t
            assert kind == "x", t
            if b == a:
                out.append(t)
                continue
            assert b != _neg(a), ("conjugation hit opposite roots", a, b)
            for i, j, g, c in ch.comm_terms(a, b):
                v = R.mul(R.of(c), R.mul(R.pow(s, i), R.pow(z, j)))
                if not R.is_zero(v):
                    out.append(("x", g, v))
            out.append(t)
        stream = out
    return stream


def _expand_comm(ch, g_toks, xtoks, R):
    """Normal-form coefficients of [g, x] over all positive roots."""
    stream = _conj_stream(ch, g_toks, xtoks, R) + _inv_toks(xtoks, R)
    return ch.collect(stream, ch.S.pos, R)


def _action_int(ch, g_toks, part):
    """Integer matrix of conj-by-g restricted to the span of `part`.

    Only the terms linear in the conjugated coefficient contribute;
    token values must be plain ints so the matrix is exact over Z.
    """
    idx = {b: k for k, b in enumerate(part)}
    n = len(part)
    eye = [[int(i == j) for j in range(n)] for i in range(n)]
    A = eye
    for kind, a, s in g_toks:
        assert isinstance(s, int), (kind, a, s)
        T = [row[:] for row in eye]
        if kind == "h":
            for b, k in idx.items():
                T[k][k] = s ** abs(ch.S.pairing(b, a))
        elif kind == "w":
            raise NotImplementedError("w tokens in stage conjugators")
        else:
            for b, k in idx.items():
                for i, j, g, c in ch.comm_terms(a, b):
                    if j == 1 and g in idx:
                        T[idx[g]][k] += c * s ** i
        A = int_matmul(A, T)
    return A


def _int_det(M):
    """Exact integer determinant (fraction-free elimination)."""
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


def _int_minor(M, i, j):
    return [[v for c, v in enumerate(row) if c != j]
            for r, row in enumerate(M) if r != i]


def _unit_inv(M, R):
    """Inverse of an integer matrix over R via the adjugate.

    The integer determinant must be a unit of R; RingError otherwise is
    the honest capability boundary (2 not invertible, and so on).
    """
    n = len(M)
    d = _int_det(M)
    dinv = R.inv(R.of(d))
    adj = [[R.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            md = _int_det(_int_minor(M, i, j)) if n > 1 else 1
            adj[j][i] = R.mul(R.of((-1) ** (i + j) * md), dinv)
    return adj


class _ConjStage:
    """One commutator [g, x(zeta)] clearing the residual on `part`."""

    def __init__(self, g_toks, part):
        self.g_toks = g_toks
        self.part = list(part)
        self._am1 = None
        self._minv = {}

    def _system(self, ch, R):
        """(A - 1, its inverse over R); both cached, A is ring-independent."""
        if self._am1 is None:
            A = _action_int(ch, self.g_toks, self.part)
            for k in range(len(self.part)):
                A[k][k] -= 1
            self._am1 = [[int(v) for v in row] for row in A]
        if R not in self._minv:
            self._minv[R] = _unit_inv(self._am1, R)
        return self._minv[R]

    def solve(self, ch, R, resid):
        n = len(self.part)
        Minv = self._system(ch, R)
        zeta = {b: R.zero for b in self.part}
        for _ in range(16):
            xt = _x_word(zeta, R, self.part)
            E = _expand_comm(ch, self.g_toks, xt, R)
            need = [R.sub(resid.get(b, R.zero), E.get(b, R.zero))
                    for b in self.part]
            if all(R.is_zero(v) for v in need):
                gw = GenWord([(k, r, R.of(v) if k == "x" and isinstance(v, int)
                               else v) for k, r, v in self.g_toks])
                return gw, GenWord(xt), E
            for k, b in enumerate(self.part):
                acc = zeta[b]
                for c in range(n):
                    acc = R.add(acc, R.mul(Minv[k][c], need[c]))
                zeta[b] = acc
        raise DecomposeError("stage iteration did not converge")


class _PairStage:
    """One commutator [x_a(t), x_b(1)] solving the coefficient at `target`."""

    def __init__(self, a, b, target, slot="a"):
        self.a, self.b, self.target, self.slot = a, b, target, slot

    def solve(self, ch, R, resid):
        terms = ch.comm_terms(self.a, self.b)
        [(i0, j0, _, c0)] = [(i, j, g, c) for i, j, g, c in terms
                             if g == self.target]
        assert (i0 if self.slot == "a" else j0) == 1, (self.a, self.b)
        t = R.mul(R.inv(R.of(c0)), resid.get(self.target, R.zero))
        ta = t if self.slot == "a" else R.one
        tb = t if self.slot == "b" else R.one
        stream = [("x", g, R.mul(R.of(c), R.mul(R.pow(ta, i), R.pow(tb, j))))
                  for i, j, g, c in terms]
        E = ch.collect(stream, ch.S.pos, R)
        return GenWord([("x", self.a, ta)]), GenWord([("x", self.b, tb)]), E


# ---------------------------------------------------------------------------
# block conjugators and the g-1 trick
# ---------------------------------------------------------------------------

def _chain_root(S, chain, i, j):
    """Root of e_ij on an adjacent chain of simple roots (1-based slots)."""
    lo, hi = (i, j) if i < j else (j, i)
    r = tuple(sum(c) for c in zip(*[S.simple(k) for k in chain[lo - 1:hi - 1]]))
    return r if i < j else _neg(r)


# 2x2 block [[1,-1],[1,0]] and 3x3 block [[1,0,1],[1,1,0],[0,1,0]] as
# elementary operations; both have determinant 1 and no eigenvalue 1.
_G1_OPS = [(2, 1, 1), (1, 2, -1)]
_G2_OPS = [(2, 1, 1), (3, 2, 1), (1, 3, 1), (2, 3, -1)]


def _block_ops(d):
    """Tile d = 2a + 3b and emit per-block elementary ops (1-based)."""
    assert d >= 2, "no fixed-point-free block action on a single slot"
    ops = []
    off, rest = 0, d
    while rest:
        size, block = (2, _G1_OPS) if rest % 2 == 0 else (3, _G2_OPS)
        ops.extend((off + i, off + j, c) for i, j, c in block)
        off += size
        rest -= size
    return ops


def _block_g_toks(S, chain):
    """Word acting as a block-diagonal fixed-point-free matrix on the
    d = len(chain)+1 weight slots carried by an adjacent simple chain."""
    return [("x", _chain_root(S, chain, i, j), c)
            for i, j, c in _block_ops(len(chain) + 1)]


def g_minus_one(l: int):
    """Block matrix g in SL(l+1, Z) with g - 1 invertible over Z.

    Returns (word, gmat, inv_of_g_minus_1): an elementary word over the
    A_l root system, its (l+1)x(l+1) integer matrix, and the exact
    integer inverse of g - 1.  Both g and g - 1 have determinant 1.
    """
    if l < 1:
        raise UnsupportedRank("need l >= 1")
    S = get_system(f"A{l}")
    chain = list(range(1, l + 1))
    toks = _block_g_toks(S, chain)
    n = l + 1
    g = [[int(i == j) for j in range(n)] for i in range(n)]
    for (i, j, c) in _block_ops(n):
        e = [[int(r == s) for s in range(n)] for r in range(n)]
        e[i - 1][j - 1] = c
        g = int_matmul(g, e)
    g = [[int(v) for v in row] for row in g]
    gm1 = [[g[i][j] - int(i == j) for j in range(n)] for i in range(n)]
    d = _int_det(gm1)
    assert d == 1 and _int_det(g) == 1, (d, _int_det(g))
    inv = [[(-1) ** (i + j) * (_int_det(_int_minor(gm1, j, i)) if n > 1 else 1)
            for j in range(n)] for i in range(n)]
    return GenWord(toks), g, inv


# ---------------------------------------------------------------------------
# per-type stage tables
# ---------------------------------------------------------------------------

def _simple_sum(S, idxs):
    return tuple(sum(c) for c in zip(*[S.simple(i) for i in idxs]))


_STAGE_CACHE = {}


def _stages_for(ch):
    """The stage recipe for each type; raises UnsupportedRank on rank 1.

    Stage lists are cached per system so the integer action matrices and
    their per-ring inverses survive across calls."""
    cached = _STAGE_CACHE.get(ch.S.name)
    if cached is not None:
        return cached
    stages = _build_stages(ch)
    _STAGE_CACHE[ch.S.name] = stages
    return stages


def _build_stages(ch):
    S = ch.S
    fam, l = S.fam, S.rank
    sig = S.companion_sigma()
    if fam == "A":
        if l < 2:
            raise UnsupportedRank("A1 admits no block action")
        return [_ConjStage(_block_g_toks(S, list(range(1, l))), sig)]
    if fam == "B":
        if l == 2:
            eps1 = _simple_sum(S, [1, 2])
            return [
                _PairStage(eps1, _neg(S.simple(1)), S.simple(2), slot="b"),
                _PairStage(eps1, S.simple(2), _simple_sum(S, [1, 2, 2]),
                           slot="a"),
            ]
        rest = [b for b in sig if b != S.simple(l)]
        return [
            _PairStage(_simple_sum(S, [l - 1, l]), _neg(S.simple(l - 1)),
                       S.simple(l), slot="b"),
            _ConjStage(_block_g_toks(S, list(range(1, l - 1))), rest),
        ]
    if fam == "C":
        if l == 2:
            ee = _simple_sum(S, [1, 2])
            return [
                _PairStage(_simple_sum(S, [1, 1, 2]), _neg(S.simple(1)), ee,
                           slot="a"),
                _PairStage(ee, _neg(S.simple(1)), S.simple(2), slot="a"),
            ]
        rest = [b for b in sig if b != S.simple(l)]
        return [
            _PairStage(_simple_sum(S, [l - 1, l - 1, l]),
                       _neg(S.simple(l - 1)), S.simple(l), slot="a"),
            _ConjStage(_block_g_toks(S, list(range(1, l - 1))), rest),
        ]
    if fam == "D":
        special = _simple_sum(S, list(range(1, l)))
        rest = [b for b in sig if b != special]
        return [
            _PairStage(tuple(a + b for a, b in zip(special, S.simple(l))),
                       _neg(S.simple(l)), special, slot="a"),
            _ConjStage(_block_g_toks(S, list(range(2, l - 1)) + [l]), rest),
        ]
    if S.name == "G2":
        # Extend past the companion roots: conjugation by h(-1) and a
        # short root flip acts invertibly on all positives but alpha_2.
        part = [b for b in S.pos if b != S.simple(2)]
        g = [("h", S.simple(1), -1),
             ("x", _neg(S.simple(2)), 1),
             ("x", S.simple(2), -1)]
        return [_ConjStage(g, part)]
    if S.name == "F4":
        g = _block_g_toks(S, [3]) + _block_g_toks(S, [1])
        return [_ConjStage(g, sig)]
    if S.name == "E6":
        # Three-part split: the five roots missing the branch node first
        # (their spill feeds forward), then the 20-dimensional layer
        # through the branch node, then the highest root by itself.
        theta = S.highest_root()
        p0 = [b for b in sig if b[1] == 0]
        p1 = [b for b in S.pos if b[1] >= 1 and b != theta]
        sub = [1, 3, 4, 5, 6]
        ops = [(1, 4, 1), (3, 5, 1), (4, 1, -1), (4, 5, 1), (5, 3, -1),
               (3, 4, 1)]
        g20 = [("x", _chain_root(S, sub, i, j), c) for i, j, c in ops]
        return [
            _ConjStage(_block_g_toks(S, [5, 4, 3, 1]), p0),
            _ConjStage(g20, p1),
            _PairStage(tuple(a - b for a, b in zip(theta, S.simple(2))),
                       S.simple(2), theta, slot="a"),
        ]
    if S.name == "E7":
        spur = _simple_sum(S, [2, 4, 5, 6, 7])
        rest = [b for b in sig if b != spur]
        return [
            _PairStage(tuple(a + b for a, b in zip(spur, S.simple(3))),
                       _neg(S.simple(3)), spur, slot="a"),
            _ConjStage(_block_g_toks(S, [6, 5, 4, 3, 1]), rest),
        ]
    if S.name == "E8":
        spur = _simple_sum(S, [2, 4, 5, 6, 7, 8])
        rest = [b for b in sig if b != spur]
        return [
            _PairStage(tuple(a + b for a, b in zip(spur, S.simple(3))),
                       _neg(S.simple(3)), spur, slot="a"),
            _ConjStage(_block_g_toks(S, [7, 6, 5, 4, 3, 1]), rest),
        ]
    raise UnsupportedRank(S.name)


def _is_trivial_word(w: GenWord, R) -> bool:
    return all(k == "x" and R.is_zero(v) for k, _, v in w.toks)


def sigma_to_commutators(ch, theta, R):
    """Commutator pairs whose product is the unipotent element theta.

    theta maps positive roots (normal-form order) to coefficients; its
    support must lie in the companion-root region the stages cover.
    Returns at most n_sigma(S) pairs; trivial stages are dropped, so a
    zero theta yields the empty list.
    """
    S = ch.S
    if S.rank < 2:
        raise UnsupportedRank("rank 1 unsupported")
    order = S.pos
    # theta values are ring elements already (re-coercing through R.of
    # would corrupt rings whose elements are not canonical integers)
    resid = dict(theta)
    pairs = []
    for stage in _stages_for(ch):
        aw, bw, E = stage.solve(ch, R, resid)
        if _is_trivial_word(aw, R) or _is_trivial_word(bw, R):
            continue
        pairs.append((aw, bw))
        toks = _inv_toks(_x_word(E, R, order), R) + _x_word(resid, R, order)
        resid = ch.collect(toks, order, R)
    bad = {b: v for b, v in resid.items() if not R.is_zero(v)}
    if bad:
        raise DecomposeError(f"support outside the handled region: {bad}")
    return pairs


# ---------------------------------------------------------------------------
# the main pipeline
# ---------------------------------------------------------------------------

class Decomposition:
    """g = center * conjugator * prod [a_i, b_i] * conjugator^-1."""

    def __init__(self, system: str, center: int, conjugator: GenWord, pairs):
        assert center in (1, -1)
        self.system = system
        self.center = center
        self.conjugator = conjugator
        self.pairs = list(pairs)

    @property
    def count(self) -> int:
        return len(self.pairs)

    def product_word(self, R) -> GenWord:
        w = self.conjugator
        for a, b in self.pairs:
            w = w * comm(a, b, R)
        w = w * self.conjugator.inv(R)
        return GenWord(condense(w.toks, R), self.center * w.center)

    def to_json(self, R):
        return {
            "center": self.center,
            "conjugator": self.conjugator.to_json(R),
            "pairs": [[a.to_json(R), b.to_json(R)] for a, b in self.pairs],
            "count": self.count,
        }

    @staticmethod
    def from_json(data, R, system="?") -> "Decomposition":
        pairs = [(GenWord.from_json(a, R), GenWord.from_json(b, R))
                 for a, b in data["pairs"]]
        return Decomposition(system, int(data["center"]),
                             GenWord.from_json(data["conjugator"], R), pairs)

    def __repr__(self):
        c = "-" if self.center == -1 else "+"
        return f"Decomposition({self.system}, {c}1, {self.count} pairs)"


def _uv_core(ch, R, u3: GenWord, v3: GenWord):
    """Split u3 * v3 into one bridging commutator plus the sigma pairs.

    Returns (sign, D, bridge_pair, sigma_pairs) with
    u3 * v3 = [bridge] * sign * D^-1 * prod(sigma_pairs) * D, D = mu*psi.
    """
    S = ch.S
    sig = S.companion_sigma()
    mu, a = to_companion(ch, u3.toks, R)
    vinv = v3.inv(R)
    nu, b, sign = minus_side_to_companion(ch, vinv.toks, R)
    ztoks = (_x_word(a, R, sig) + _inv_toks(_x_word(b, R, sig), R))
    zco = ch.collect(ztoks, S.pos, R)
    sigma_pairs = sigma_to_commutators(ch, zco, R)
    zword = GenWord(_x_word(zco, R, S.pos))
    pih = pi_hat(ch)
    psi_inv = vinv * pih
    bridge = (mu.inv(R) * zword * nu, psi_inv)
    D = mu * pih.inv(R) * v3
    return sign, D, bridge, sigma_pairs


def _coerce_input(ch, R, g):
    """Normalize decompose input to (u1, v1, u2, v2) words plus a sign."""
    if isinstance(g, FactoredQuadruple):
        return g.pieces, 1
    if (isinstance(g, (tuple, list)) and len(g) == 4
            and all(isinstance(w, GenWord) for w in g)):
        return tuple(g), 1
    if (isinstance(g, (tuple, list)) and g
            and all(isinstance(row, (tuple, list)) for row in g)):
        S = ch.S
        if S.fam != "A":
            raise UnsupportedMatrixInput(
                f"matrix input needs type A, got {S.name}")
        n = S.rank + 1
        if len(g) != n or any(len(row) != n for row in g):
            raise ValueError(f"expected a {n}x{n} matrix for {S.name}")
        M = [[R.of(x) if isinstance(x, int) else x for x in row] for row in g]
        if all(R.eq(M[i][j], R.one if i == j else R.zero)
               for i in range(n) for j in range(n)):
            return (identity(), identity(), identity(), identity()), 1
        if S.rank % 4 == 1:
            # The rotation route forces a sign here, so factor -g and
            # let the two minus signs cancel.
            M = [[R.neg(x) for x in row] for row in M]
            return factor_sl(M, R).pieces, -1
        return factor_sl(M, R).pieces, 1
    raise TypeError(f"cannot decompose input of type {type(g).__name__}")


def decompose(ch, R, g) -> Decomposition:
    """Decompose a factored quadruple (or SL_n matrix, type A) into at
    most n_total(S) commutators with an outer conjugator and a sign."""
    if isinstance(R, IntRing):
        raise NotStableRank1("Z does not have stable rank 1")
    S = ch.S
    if S.rank < 2:
        raise UnsupportedRank("rank 1 unsupported")
    (u1, v1, u2, v2), flip = _coerce_input(ch, R, g)
    if all(len(w) == 0 for w in (u1, v1, u2, v2)):
        return Decomposition(S.name, 1, identity(), [])
    u3 = u1 * u2
    v3 = v1 * v2
    # u1 v1 u2 v2 = c2 * u3 * v3 with c2 one commutator
    c2 = (u3 * u2.inv(R) * u3.inv(R), u3 * v1 * u3.inv(R))
    sign, D, bridge, sigma_pairs = _uv_core(ch, R, u3, v3)
    Dinv = D.inv(R)
    pairs = [(D * c2[0] * Dinv, D * c2[1] * Dinv),
             (D * bridge[0] * Dinv, D * bridge[1] * Dinv)]
    pairs.extend(sigma_pairs)
    center = sign * flip
    if center == -1:
        assert S.fam == "A" and S.rank % 4 == 1, (S.name, center)
    return Decomposition(S.name, center, Dinv, pairs)


def decompose_short(ch, R, uv) -> Decomposition:
    """Decompose u * v (u upper, v lower unipotent) into at most
    n_total(S) - 1 commutators; used when a length-3 unitriangular
    factorization of the group is already known."""
    if isinstance(R, IntRing):
        raise NotStableRank1("Z does not have stable rank 1")
    S = ch.S
    if S.rank < 2:
        raise UnsupportedRank("rank 1 unsupported")
    u, v = uv
    if len(u) == 0 and len(v) == 0:
        return Decomposition(S.name, 1, identity(), [])
    sign, D, bridge, sigma_pairs = _uv_core(ch, R, u, v)
    Dinv = D.inv(R)
    pairs = [(D * bridge[0] * Dinv, D * bridge[1] * Dinv)]
    pairs.extend(sigma_pairs)
    if sign == -1:
        assert S.fam == "A" and S.rank % 4 == 1, (S.name, sign)
    return Decomposition(S.name, sign, Dinv, pairs)


def verify(ch, R, rep, original, d: Decomposition) -> str:
    """Compare original against the decomposition's contract.

    original may be a GenWord or a matrix (list of rows).  Returns
    "exact", "equal-mod-center" or "mismatch".
    """
    ev = ch.evaluator(R, rep)
    sp = ev.space
    acc = ev.matrix(d.product_word(R))
    if isinstance(original, GenWord):
        G = ev.matrix(original)
    else:
        G = sp.from_rows([[R.of(x) if isinstance(x, int) else x for x in row]
                          for row in original])
    if sp.eq(acc, G):
        return "exact"
    if sp.eq(sp.neg(acc), G):
        return "equal-mod-center"
    return "mismatch"
