"""Root systems of types A-G with Bourbaki numbering.

Roots are integer coefficient tuples over the simple roots.  Positive roots
are ordered by (height, then coefficient-lexicographic with alpha_1 first),
and that order is used everywhere downstream, so do not reorder.
"""

from __future__ import annotations

from functools import lru_cache


class InvalidType(Exception):
    pass


#: rank constraints per family
_RANK_RANGE = {
    "A": (1, None),
    "B": (2, None),
    "C": (2, None),
    "D": (3, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}


def parse_type(s: str):
    """"E6" -> ("E", 6), with validation."""
    s = s.strip().upper()
    if len(s) < 2 or s[0] not in _RANK_RANGE or not s[1:].isdigit():
        raise InvalidType(f"bad type {s!r}; expected e.g. A3, B2, E7")
    fam, rank = s[0], int(s[1:])
    lo, hi = _RANK_RANGE[fam]
    if rank < lo or (hi is not None and rank > hi):
        raise InvalidType(f"rank {rank} out of range for type {fam}")
    return fam, rank


def _cartan(fam: str, n: int):
    """Cartan matrix A with A[i][j] = <alpha_i, alpha_j> (0-based), plus the
    half-length-squared vector d (short roots have length^2 = 2)."""
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i, j, aij=-1, aji=-1):
        A[i][j], A[j][i] = aij, aji

    if fam in ("A", "B", "C", "F", "G"):
        chain = list(range(n - 1))
    elif fam == "D":
        chain = list(range(n - 3))
    else:  # E: chain 1-3-4-5-..., branch 2-4
        chain = []
    d = [1] * n

    if fam == "A":
        for i in chain:
            bond(i, i + 1)
    elif fam == "B":
        for i in chain[:-1]:
            bond(i, i + 1)
        bond(n - 2, n - 1, -2, -1)  # alpha_{n-1} long, alpha_n short
        d = [2] * (n - 1) + [1]
    elif fam == "C":
        for i in chain[:-1]:
            bond(i, i + 1)
        bond(n - 2, n - 1, -1, -2)  # alpha_n long
        d = [1] * (n - 1) + [2]
    elif fam == "D":
        for i in chain:
            bond(i, i + 1)
        bond(n - 3, n - 2)
        bond(n - 3, n - 1)
    elif fam == "E":
        # Bourbaki: 1-3-4-5-6(-7)(-8), 2 attached to 4
        links = [(0, 2), (2, 3), (1, 3)] + [(i, i + 1) for i in range(3, n - 1)]
        for i, j in links:
            bond(i, j)
    elif fam == "F":
        bond(0, 1)
        bond(1, 2, -2, -1)  # alpha_2 long, alpha_3 short
        bond(2, 3)
        d = [2, 2, 1, 1]
    elif fam == "G":
        bond(0, 1, -1, -3)  # alpha_1 short, alpha_2 long
        d = [1, 3]
    return A, d


def pos_key(beta):
    """Sort key fixing the positive-root order: by height, then with the
    earlier simple roots first (alpha_1 before alpha_2)."""
    return (sum(beta), tuple(-c for c in beta))


class RootSystem:
    """Reduced irreducible root system, all data exact over Z."""

    def __init__(self, fam, rank=None):
        if rank is None:
            fam, rank = parse_type(fam)
        else:
            fam = fam.upper()
            parse_type(f"{fam}{rank}")
        self.fam = fam
        self.rank = rank
        self._pair_memo = {}
        self._refl_memo = {}
        self.cartan, self.d = _cartan(fam, rank)
        # symmetrized bilinear form: (alpha_i, alpha_j) = d_j * A[i][j]
        self.bform = [[self.d[j] * self.cartan[i][j] for j in range(rank)]
                      for i in range(rank)]
        for i in range(rank):
            for j in range(rank):
                assert self.bform[i][j] == self.bform[j][i]
        self.pos = self._build_positive()
        self._pos_set = set(self.pos)
        self.index = {b: i for i, b in enumerate(self.pos)}

    @property
    def name(self):
        return f"{self.fam}{self.rank}"

    def __repr__(self):
        return f"RootSystem({self.name})"

    # ---------- construction ----------

    def _build_positive(self):
        n = self.rank
        simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
        by_ht = {1: set(simple)}
        known = set(simple)
        h = 1
        while by_ht.get(h):
            nxt = set()
            for beta in by_ht[h]:
                for i in range(n):
                    # string through beta in direction alpha_i:
                    # p = steps down available, q = p - <beta, alpha_i>
                    p = 0
                    g = self._sub_simple(beta, i)
                    while g is not None and g in known:
                        p += 1
                        g = self._sub_simple(g, i)
                    q = p - self.pairing(beta, simple[i])
                    if q > 0:
                        up = tuple(c + (1 if j == i else 0)
                                   for j, c in enumerate(beta))
                        nxt.add(up)
            if nxt:
                by_ht[h + 1] = nxt
                known |= nxt
            h += 1
        out = sorted(known, key=pos_key)
        return out

    @staticmethod
    def _sub_simple(beta, i):
        g = tuple(c - (1 if j == i else 0) for j, c in enumerate(beta))
        if all(c == 0 for c in g):
            return None
        return g

    # ---------- basic queries ----------

    def simple(self, i: int):
        """The i-th simple root (1-based)."""
        return tuple(1 if j == i - 1 else 0 for j in range(self.rank))

    def all_roots(self):
        return self.pos + [self.neg(b) for b in self.pos]

    def is_root(self, beta) -> bool:
        beta = tuple(beta)
        return beta in self._pos_set or self.neg(beta) in self._pos_set

    def is_positive(self, beta) -> bool:
        return tuple(beta) in self._pos_set

    @staticmethod
    def neg(beta):
        return tuple(-c for c in beta)

    @staticmethod
    def height(beta):
        return sum(beta)

    def highest_root(self):
        return self.pos[-1]

    def coxeter_number(self):
        return self.height(self.highest_root()) + 1

    # ---------- bilinear data ----------

    def bilinear(self, beta, gamma) -> int:
        B = self.bform
        return sum(bi * sum(gj * B[i][j] for j, gj in enumerate(gamma))
                   for i, bi in enumerate(beta))

    def length2(self, beta) -> int:
        return self.bilinear(beta, beta)

    def pairing(self, beta, alpha) -> int:
        """<beta, alpha> = 2(beta, alpha)/(alpha, alpha)."""
        key = (beta, alpha)
        hit = self._pair_memo.get(key)
        if hit is not None:
            return hit
        num = 2 * self.bilinear(beta, alpha)
        den = self.length2(alpha)
        assert num % den == 0, (beta, alpha)
        self._pair_memo[key] = num // den
        return num // den

    def coroot(self, beta):
        """Coefficients of beta-dual over the simple coroots (integers)."""
        bb = self.length2(beta)
        out = []
        for i, c in enumerate(beta):
            num = c * 2 * self.d[i]
            assert num % bb == 0, (beta, i)
            out.append(num // bb)
        return tuple(out)

    # ---------- Weyl group ----------

    def reflect(self, alpha, beta):
        """sigma_alpha(beta)."""
        key = (alpha, beta)
        hit = self._refl_memo.get(key)
        if hit is not None:
            return hit
        k = self.pairing(beta, alpha)
        out = tuple(b - k * a for b, a in zip(beta, alpha))
        self._refl_memo[key] = out
        return out

    def act(self, word, beta):
        """Apply a word in simple reflections (1-based), rightmost first."""
        for i in reversed(word):
            beta = self.reflect(self.simple(i), beta)
        return beta

    def act_inv(self, word, beta):
        for i in word:
            beta = self.reflect(self.simple(i), beta)
        return beta

    # ---------- the distinguished Weyl element ----------

    def pi_word(self):
        """Word for the rotation-like element used to reach companion form.

        A Coxeter element for most types; for E6 a Coxeter element of the
        subsystem spanned by the simple roots other than alpha_2."""
        n = self.rank
        fam = self.fam
        if fam in ("A", "B", "C", "F"):
            return list(range(1, n + 1))
        if fam == "D":
            return list(range(n, 0, -1))
        if fam == "G":
            return [2, 1]
        if fam == "E":
            if n == 6:
                return [1, 3, 4, 5, 6]
            return [1, 3, 2] + list(range(4, n + 1))
        raise AssertionError(fam)

    def sigma_set(self):
        """Inversions of pi_word: positive roots sent negative."""
        w = self.pi_word()
        out = [b for b in self.pos if not self.is_positive(self.act(w, b))]
        return sorted(out, key=pos_key)

    def persistent_roots(self):
        """Positive roots whose trajectory under pi never turns negative.

        Empty except for E6, where these are the roots involving alpha_2."""
        if self.name != "E6":
            return []
        return sorted((b for b in self.pos if b[1] != 0), key=pos_key)

    def companion_sigma(self):
        """The root set Sigma carrying the coefficients of a companion form."""
        sig = self.sigma_set()
        if self.name == "E6":
            extra = [b for b in self.persistent_roots() if b != self.simple(2)]
            sig = sorted(set(sig) | set(extra), key=pos_key)
        return sig

    def omega_theta(self, word):
        """Trajectory partition of the positive roots under any Weyl word.

        Layer k collects the roots sent negative by exactly k+1
        applications of the word (positively signed until then); theta
        collects the roots whose forward orbit never leaves the positives.
        Returns (layers, theta); layers keeps empty slots so the list
        index always equals k."""
        layers = {}
        theta = []
        for beta in self.pos:
            g, k, seen = beta, 0, {beta}
            while True:
                g = self.act(word, g)
                if not self.is_positive(g):
                    layers.setdefault(k, []).append(beta)
                    break
                if g in seen:
                    theta.append(beta)
                    break
                seen.add(g)
                k += 1
        top = max(layers) + 1 if layers else 0
        out = [sorted(layers.get(k, []), key=pos_key) for k in range(top)]
        return out, sorted(theta, key=pos_key)

    def omega_layers(self):
        """Partition of the non-persistent positive roots by the number of
        pi-steps needed to land in the inversion set.  Returns a list of
        lists; layer 0 is the inversion set itself."""
        w = self.pi_word()
        skip = set(self.persistent_roots())
        layers = {}
        for beta in self.pos:
            if beta in skip:
                continue
            g, k = beta, 0
            while True:
                ng = self.act(w, g)
                if not self.is_positive(ng):
                    break
                g = ng
                k += 1
                assert k <= 4 * len(self.pos), beta
            layers.setdefault(k, []).append(beta)
        out = [sorted(layers[k], key=pos_key) for k in sorted(layers)]
        assert sorted(layers) == list(range(len(out)))
        return out

    # ---------- diagram data ----------

    def edges(self):
        """Dynkin diagram edges: (i, j, bond, arrow) with 1-based nodes,
        bond in {1,2,3}, arrow pointing at the shorter root's node (or None)."""
        out = []
        for i in range(self.rank):
            for j in range(i + 1, self.rank):
                a, b = self.cartan[i][j], self.cartan[j][i]
                if a == 0:
                    continue
                bond = a * b
                if self.d[i] > self.d[j]:
                    arrow = j + 1
                elif self.d[i] < self.d[j]:
                    arrow = i + 1
                else:
                    arrow = None
                out.append((i + 1, j + 1, bond, arrow))
        return out


@lru_cache(maxsize=None)
def get_system(name: str) -> RootSystem:
    return RootSystem(name)
