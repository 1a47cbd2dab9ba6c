"""Factor determinant-one matrices into four unitriangular pieces.

Over a commutative ring of stable rank 1 every matrix in SL(n, R) can be
written as u1 * v1 * u2 * v2 with u1, u2 upper unitriangular and v1, v2
lower unitriangular.  The algorithm steers every leading principal minor
of the input to exactly 1 using elementary row operations (collected into
u1) and column operations (collected into v2), then splits the remaining
matrix as v1 * u2 by unipotent Gaussian elimination.

Minor steering works one CRT component of the ring at a time: in a local
component, if the leading k x k minor is not 1 yet, some bordering minor
through rows/columns 1..k-1 must be a unit (otherwise the Schur complement
of the already-normalized (k-1) x (k-1) corner would have all entries in
the maximal ideal, contradicting determinant 1), and one row operation,
one column operation, or a row-then-column pair lands the minor on 1.
"""

from .chevalley import get_chevalley
from .rings import Bool2k, IntRing, Ring, make_ring
from .words import GenWord


class SLFactorError(Exception):
    """Base class for factorization failures."""


class NotStableRank1(SLFactorError):
    """The ring does not have stable rank 1, so the 4-piece form may not exist."""


class DeterminantNotOne(SLFactorError):
    pass


class NotUnimodularColumn(SLFactorError):
    """No bordering minor was a unit; the matrix is not reachable over this ring."""


def ring_det(rows, R: Ring):
    """Division-free determinant over an arbitrary commutative ring.

    Dynamic programming over column subsets: O(2^n * n) ring operations,
    exact for zero divisors and all.
    """
    n = len(rows)
    prev = {0: R.one}
    for row in rows:
        cur = {}
        for used, acc in prev.items():
            for c in range(n):
                bit = 1 << c
                if used & bit or R.is_zero(row[c]):
                    continue
                term = R.mul(acc, row[c])
                if bin(used >> (c + 1)).count("1") & 1:
                    term = R.neg(term)
                key = used | bit
                cur[key] = R.add(cur[key], term) if key in cur else term
        prev = cur
    return prev.get((1 << n) - 1, R.zero)


def _minor(M, rows_idx, cols_idx, R):
    return ring_det([[M[i][j] for j in cols_idx] for i in rows_idx], R)


def _entry_root(i: int, j: int, n: int):
    """Root whose one-parameter subgroup is I + t*E_ij in SL_n (0-based i != j)."""
    lo, hi = (i, j) if i < j else (j, i)
    coeffs = [1 if lo <= t < hi else 0 for t in range(n - 1)]
    if i > j:
        coeffs = [-c for c in coeffs]
    return tuple(coeffs)


def _component_views(R):
    """Per-component (ring, project) pairs plus a recombination map.

    Rings without a CRT decomposition (fields of fractions and such) are
    treated as a single component with identity projection.
    """
    if not hasattr(R, "components"):
        return [(R, lambda a: a)], (lambda residues: residues[0])
    comps = R.components()
    if isinstance(R, Bool2k):
        views = [(rc, (lambda pos: lambda a: R.project(a, pos))(i))
                 for i, (_, rc) in enumerate(comps)]
    else:
        views = [(rc, (lambda q: lambda a: a % q)(q)) for q, rc in comps]
    return views, R.crt


def _lift(recombine, nviews, ci, val):
    residues = [0] * nviews
    residues[ci] = val
    return recombine(residues)


def _is_upper_uni(M, R):
    n = len(M)
    for i in range(n):
        if not R.eq(M[i][i], R.one):
            return False
        for j in range(i):
            if not R.is_zero(M[i][j]):
                return False
    return True


def _upper_word(M, R, n) -> GenWord:
    # Rows bottom-up: later factors only touch rows above, so the raw
    # entries multiply out with no cross terms.
    toks = []
    for i in range(n - 1, -1, -1):
        for j in range(i + 1, n):
            if not R.is_zero(M[i][j]):
                toks.append(("x", _entry_root(i, j, n), M[i][j]))
    return GenWord(toks)


def _lower_word(M, R, n) -> GenWord:
    # Rows top-down, mirror of _upper_word.
    toks = []
    for i in range(n):
        for j in range(i):
            if not R.is_zero(M[i][j]):
                toks.append(("x", _entry_root(i, j, n), M[i][j]))
    return GenWord(toks)


class FactoredQuadruple:
    """g = u1 * v1 * u2 * v2 with u's upper and v's lower unitriangular."""

    def __init__(self, n: int, ring: Ring, u1, v1, u2, v2):
        self.n = n
        self.ring = ring
        self.u1 = u1
        self.v1 = v1
        self.u2 = u2
        self.v2 = v2

    @property
    def pieces(self):
        return (self.u1, self.v1, self.u2, self.v2)

    def word(self) -> GenWord:
        return self.u1 * self.v1 * self.u2 * self.v2

    def matrix(self):
        """Evaluate the product back to a matrix (natural representation)."""
        R = self.ring
        if self.n == 1:
            return [[R.one]]
        ev = get_chevalley(f"A{self.n - 1}").evaluator(R, "natural")
        return ev.space.to_rows(ev.matrix(list(self.word())))

    def to_json(self):
        R = self.ring
        return {
            "n": self.n,
            "ring": R.descriptor(),
            "u1": self.u1.to_json(R),
            "v1": self.v1.to_json(R),
            "u2": self.u2.to_json(R),
            "v2": self.v2.to_json(R),
        }

    @staticmethod
    def from_json(data) -> "FactoredQuadruple":
        R = make_ring(data["ring"])
        return FactoredQuadruple(
            int(data["n"]), R,
            GenWord.from_json(data["u1"], R),
            GenWord.from_json(data["v1"], R),
            GenWord.from_json(data["u2"], R),
            GenWord.from_json(data["v2"], R),
        )

    def __repr__(self):
        lens = "+".join(str(len(w)) for w in self.pieces)
        return f"FactoredQuadruple(n={self.n}, lengths={lens})"


def _apply_row(M, k, j, c, R, ops):
    """row_k += c * row_j (j > k), recorded for the u1 word."""
    M[k] = [R.add(M[k][t], R.mul(c, M[j][t])) for t in range(len(M))]
    ops.append((k, j, c))


def _apply_col(M, k, i, d, R, ops):
    """col_k += d * col_i (i > k), recorded for the v2 word."""
    for row in M:
        row[k] = R.add(row[k], R.mul(d, row[i]))
    ops.append((i, k, d))


def factor_sl(rows, R: Ring) -> FactoredQuadruple:
    """Factor a matrix in SL(n, R) as u1 * v1 * u2 * v2.

    Raises NotStableRank1 over the integers, DeterminantNotOne if the
    determinant is not 1, and NotUnimodularColumn if minor steering gets
    stuck (impossible for determinant-one input over a supported ring).
    """
    if isinstance(R, IntRing):
        raise NotStableRank1("Z does not have stable rank 1")
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("expected a nonempty square matrix")
    M = [[R.of(x) if isinstance(x, int) else x for x in row] for row in rows]

    d = ring_det(M, R)
    if not R.eq(d, R.one):
        raise DeterminantNotOne(f"determinant is {d!r}, expected 1")

    empty = GenWord()
    if _is_upper_uni(M, R):
        return FactoredQuadruple(n, R, _upper_word(M, R, n), empty, empty, empty)

    views, recombine = _component_views(R)
    row_ops, col_ops = [], []
    for k in range(1, n):
        head = list(range(k - 1))
        cols = list(range(k))
        for ci, (Rc, proj) in enumerate(views):
            mu = proj(_minor(M, cols, cols, R))
            if Rc.eq(mu, Rc.one):
                continue
            fixed = False
            for j in range(k, n):
                aj = proj(_minor(M, head + [j], cols, R))
                if Rc.is_unit(aj):
                    c = Rc.mul(Rc.sub(Rc.one, mu), Rc.inv(aj))
                    _apply_row(M, k - 1, j, _lift(recombine, len(views), ci, c),
                               R, row_ops)
                    fixed = True
                    break
            if fixed:
                continue
            for i in range(k, n):
                bi = proj(_minor(M, cols, head + [i], R))
                if Rc.is_unit(bi):
                    dd = Rc.mul(Rc.sub(Rc.one, mu), Rc.inv(bi))
                    _apply_col(M, k - 1, i, _lift(recombine, len(views), ci, dd),
                               R, col_ops)
                    fixed = True
                    break
            if fixed:
                continue
            # Both borders are non-units in this component: a row move with
            # coefficient 1 shifts some column border by a unit cross minor.
            for j in range(k, n):
                for i in range(k, n):
                    dji = proj(_minor(M, head + [j], head + [i], R))
                    if not Rc.is_unit(dji):
                        continue
                    _apply_row(M, k - 1, j,
                               _lift(recombine, len(views), ci, Rc.one),
                               R, row_ops)
                    mu2 = proj(_minor(M, cols, cols, R))
                    bi2 = proj(_minor(M, cols, head + [i], R))
                    dd = Rc.mul(Rc.sub(Rc.one, mu2), Rc.inv(bi2))
                    _apply_col(M, k - 1, i, _lift(recombine, len(views), ci, dd),
                               R, col_ops)
                    fixed = True
                    break
                if fixed:
                    break
            if not fixed:
                raise NotUnimodularColumn(
                    f"no unit bordering minor at level {k}; "
                    "input is not in SL over a stable rank 1 ring")

    # All leading principal minors are now 1; split as v1 * u2 by
    # unipotent elimination (every pivot is exactly 1 along the way).
    W = [row[:] for row in M]
    lower = [[R.zero] * n for _ in range(n)]
    for k in range(n):
        assert R.eq(W[k][k], R.one), (k, W[k][k])
        for i in range(k + 1, n):
            f = W[i][k]
            if R.is_zero(f):
                continue
            lower[i][k] = f
            W[i] = [R.sub(W[i][t], R.mul(f, W[k][t])) for t in range(n)]

    u1 = GenWord([("x", _entry_root(k, j, n), R.neg(c)) for k, j, c in row_ops])
    v2 = GenWord([("x", _entry_root(i, k, n), R.neg(c))
                  for i, k, c in reversed(col_ops)])
    v1 = _lower_word(lower, R, n)
    u2 = _upper_word(W, R, n)
    return FactoredQuadruple(n, R, u1, v1, u2, v2)
