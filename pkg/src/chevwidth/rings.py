"""Commutative coefficient rings with exact arithmetic.

Supported kinds:

* ``zmod``    -- integers modulo n (n >= 2), elements 0..n-1
* ``field_p`` -- prime field, same representation as zmod but n must be prime
* ``int``     -- the integers (not stable rank 1; used as a negative control)
* ``rat``     -- the rationals, via fractions.Fraction
* ``bool``    -- the boolean ring F_2^k, elements are k-bit masks

Every handle works on plain Python values so matrices can stay numpy-friendly.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
import random


class RingError(Exception):
    pass


class InvalidRing(RingError):
    pass


class NotUnimodular(RingError):
    """(a, b) generates a proper ideal; no witness can exist."""


class NoWitness(RingError):
    """The ring is not of stable rank 1 at this pair; exhaustive search failed."""


def _factorize(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class Ring:
    """Base class; subclasses fill in the arithmetic."""

    kind = None
    finite = False

    def of(self, k: int):
        """Image of the integer k under Z -> R."""
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    @property
    def zero(self):
        return self.of(0)

    @property
    def one(self):
        return self.of(1)

    def eq(self, a, b) -> bool:
        return a == b

    def is_zero(self, a) -> bool:
        return self.eq(a, self.zero)

    def sample(self, rng: random.Random):
        raise NotImplementedError

    def elements(self):
        raise NotImplementedError(f"{self.kind} is not finite")

    def units(self):
        return [a for a in self.elements() if self.is_unit(a)]

    def pow(self, a, k: int):
        if k < 0:
            return self.pow(self.inv(a), -k)
        out = self.one
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def descriptor(self) -> dict:
        raise NotImplementedError

    def to_json(self, a):
        return a

    def from_json(self, v):
        return self.of_value(v)

    def of_value(self, v):
        """Coerce a JSON-level value into a ring element."""
        raise NotImplementedError

    def __repr__(self):
        d = self.descriptor()
        return f"Ring({d})"

    def __eq__(self, other):
        return isinstance(other, Ring) and self.descriptor() == other.descriptor()

    def __hash__(self):
        return hash(tuple(sorted(self.descriptor().items())))


class Zmod(Ring):
    kind = "zmod"
    finite = True

    def __init__(self, n: int):
        if not isinstance(n, int) or n < 2:
            raise InvalidRing(f"zmod modulus must be an integer >= 2, got {n!r}")
        self.n = n

    def of(self, k):
        return k % self.n

    def add(self, a, b):
        return (a + b) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def is_unit(self, a):
        return gcd(a % self.n, self.n) == 1

    def inv(self, a):
        if not self.is_unit(a):
            raise RingError(f"{a} is not a unit mod {self.n}")
        return pow(a % self.n, -1, self.n)

    def sample(self, rng):
        return rng.randrange(self.n)

    def elements(self):
        return list(range(self.n))

    def descriptor(self):
        return {"kind": self.kind, "n": self.n}

    def of_value(self, v):
        return int(v) % self.n

    def components(self):
        """CRT decomposition into prime-power quotients [(modulus, Zmod), ...]."""
        return [(p ** e, Zmod(p ** e) if p ** e > 1 else self)
                for p, e in sorted(_factorize(self.n).items())]

    def crt(self, residues):
        """Inverse CRT: residues listed in components() order."""
        comps = self.components()
        x, m = 0, 1
        for (q, _), r in zip(comps, residues):
            # solve x' = x mod m, x' = r mod q
            t = ((r - x) * pow(m, -1, q)) % q
            x = x + m * t
            m *= q
        return x % self.n


class FieldP(Zmod):
    kind = "field_p"

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise InvalidRing(f"field_p modulus must be prime, got {p}")
        super().__init__(p)


class IntRing(Ring):
    kind = "int"

    def of(self, k):
        return int(k)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_unit(self, a):
        return a in (1, -1)

    def inv(self, a):
        if not self.is_unit(a):
            raise RingError(f"{a} is not a unit in Z")
        return a

    def sample(self, rng):
        return rng.randrange(-4, 5)

    def descriptor(self):
        return {"kind": "int"}

    def of_value(self, v):
        return int(v)


class RatRing(Ring):
    kind = "rat"

    def of(self, k):
        return Fraction(k)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_unit(self, a):
        return a != 0

    def inv(self, a):
        if a == 0:
            raise RingError("0 is not a unit in Q")
        return 1 / Fraction(a)

    def sample(self, rng):
        return Fraction(rng.randrange(-4, 5), rng.choice([1, 1, 2, 3]))

    def descriptor(self):
        return {"kind": "rat"}

    def to_json(self, a):
        return [a.numerator, a.denominator]

    def of_value(self, v):
        if isinstance(v, (list, tuple)):
            return Fraction(v[0], v[1])
        return Fraction(v)


class Bool2k(Ring):
    """F_2 x ... x F_2 (k factors); a boolean ring (x*x == x)."""

    kind = "bool"
    finite = True

    def __init__(self, k: int):
        if not isinstance(k, int) or k < 1:
            raise InvalidRing(f"bool ring needs k >= 1 components, got {k!r}")
        self.k = k
        self.mask = (1 << k) - 1

    def of(self, n):
        return self.mask if n % 2 else 0

    def add(self, a, b):
        return a ^ b

    def mul(self, a, b):
        return a & b

    def neg(self, a):
        return a

    def is_unit(self, a):
        return a == self.mask

    def inv(self, a):
        if not self.is_unit(a):
            raise RingError(f"{a:b} is not a unit in F_2^{self.k}")
        return a

    def sample(self, rng):
        return rng.randrange(1 << self.k)

    def elements(self):
        return list(range(1 << self.k))

    def descriptor(self):
        return {"kind": "bool", "n": self.k}

    def of_value(self, v):
        return int(v) & self.mask

    def components(self):
        return [(2, FieldP(2)) for _ in range(self.k)]

    def project(self, a, i):
        return (a >> i) & 1

    def crt(self, residues):
        out = 0
        for i, r in enumerate(residues):
            out |= (r & 1) << i
        return out


def make_ring(desc) -> Ring:
    """Build a ring handle from a descriptor dict or a CLI-style string.

    Strings: "zmod:6", "field:5", "f5", "z6", "int", "rat", "bool:3".
    """
    if isinstance(desc, Ring):
        return desc
    if isinstance(desc, str):
        s = desc.strip().lower()
        if s in ("int", "z"):
            return IntRing()
        if s in ("rat", "q"):
            return RatRing()
        if ":" in s:
            kind, _, num = s.partition(":")
            n = int(num)
            if kind in ("zmod", "zn"):
                return Zmod(n)
            if kind in ("field", "field_p", "fp", "gf"):
                return FieldP(n)
            if kind in ("bool", "b"):
                return Bool2k(n)
            raise InvalidRing(f"unknown ring spec {desc!r}")
        if s.startswith("f") and s[1:].isdigit():
            return FieldP(int(s[1:]))
        if s.startswith("z") and s[1:].isdigit():
            return Zmod(int(s[1:]))
        raise InvalidRing(f"unknown ring spec {desc!r}")
    if isinstance(desc, dict):
        kind = desc.get("kind")
        if kind == "zmod":
            return Zmod(desc["n"])
        if kind == "field_p":
            return FieldP(desc["n"])
        if kind == "int":
            return IntRing()
        if kind == "rat":
            return RatRing()
        if kind == "bool":
            return Bool2k(desc["n"])
        raise InvalidRing(f"unknown ring descriptor {desc!r}")
    raise InvalidRing(f"cannot build a ring from {desc!r}")


def sr1_witness(R: Ring, a, b):
    """Return c with a + b*c a unit, for a unimodular pair (a, b).

    Raises NotUnimodular if (a, b) generates a proper ideal, NoWitness if the
    pair is unimodular but no witness exists (e.g. over Z: stable rank > 1).
    """
    if isinstance(R, (Zmod, FieldP)):
        if gcd(gcd(a % R.n, b % R.n), R.n) != 1:
            raise NotUnimodular(f"({a},{b}) not unimodular mod {R.n}")
        for c in range(R.n):
            if R.is_unit(R.add(a, R.mul(b, c))):
                return c
        raise NoWitness(f"no witness mod {R.n}")  # unreachable: Z/n is semilocal
    if isinstance(R, Bool2k):
        # componentwise: in F_2 the pair (0,0) is the only non-unimodular one
        c = 0
        for i in range(R.k):
            ai, bi = R.project(a, i), R.project(b, i)
            if ai == 0 and bi == 0:
                raise NotUnimodular(f"({a:b},{b:b}) not unimodular in F_2^{R.k}")
            if ai == 0:
                c |= 1 << i
        return c
    if isinstance(R, RatRing):
        if a == 0 and b == 0:
            raise NotUnimodular("(0,0) over Q")
        return R.of(0) if a != 0 else R.of(1)
    if isinstance(R, IntRing):
        if gcd(a, b) != 1:
            raise NotUnimodular(f"({a},{b}) not unimodular over Z")
        if R.is_unit(a):
            return 0
        if b != 0:
            for target in (1, -1):
                q, r = divmod(target - a, b)
                if r == 0:
                    return q
        raise NoWitness(f"Z has stable rank 2: no witness for ({a},{b})")
    raise InvalidRing(f"sr1_witness: unsupported ring {R!r}")


def unimodular_witness(R: Ring, vec):
    """Coefficients c[1:] with vec[0] + sum(c_i * vec_i) a unit (i >= 1).

    Generalizes sr1_witness to longer unimodular tuples.  Works over the
    principal-ideal quotients and products in the menu; raises NotUnimodular
    or NoWitness like sr1_witness.
    """
    vec = list(vec)
    if len(vec) == 1:
        if not R.is_unit(vec[0]):
            raise NotUnimodular(f"({vec[0]},) not unimodular")
        return []
    if isinstance(R, (Zmod, FieldP)):
        n = R.n
        g = 0
        for v in vec:
            g = gcd(g, v % n)
        if gcd(g, n) != 1:
            raise NotUnimodular(f"{vec} not unimodular mod {n}")
        # d = gcd of the tail, expressed as an integer combination
        tail = vec[1:]
        d, coeffs = _int_gcd_combo(tail)
        c = sr1_witness(R, vec[0] % n, d % n)
        return [R.of(c * e) for e in coeffs]
    if isinstance(R, Bool2k):
        out = [0] * (len(vec) - 1)
        for i in range(R.k):
            comps = [R.project(v, i) for v in vec]
            if not any(comps):
                raise NotUnimodular(f"{vec} not unimodular in F_2^{R.k}")
            if comps[0] == 0:
                j = next(j for j, v in enumerate(comps[1:]) if v)
                out[j] |= 1 << i
        return out
    if isinstance(R, RatRing):
        if all(v == 0 for v in vec):
            raise NotUnimodular("zero vector over Q")
        if vec[0] != 0:
            return [R.of(0)] * (len(vec) - 1)
        j = next(j for j, v in enumerate(vec[1:]) if v != 0)
        out = [R.of(0)] * (len(vec) - 1)
        out[j] = R.inv(vec[j + 1])
        return out
    if isinstance(R, IntRing):
        g = 0
        for v in vec:
            g = gcd(g, v)
        if g != 1:
            raise NotUnimodular(f"{vec} not unimodular over Z")
        if R.is_unit(vec[0]):
            return [0] * (len(vec) - 1)
        d, coeffs = _int_gcd_combo(vec[1:])
        try:
            c = sr1_witness(R, vec[0], d)
        except NoWitness:
            raise NoWitness(f"Z has stable rank 2: no witness for {vec}")
        return [c * e for e in coeffs]
    raise InvalidRing(f"unimodular_witness: unsupported ring {R!r}")


def _int_gcd_combo(values):
    """gcd(values) together with integer coefficients realizing it."""
    d, coeffs = 0, [0] * len(values)
    for i, v in enumerate(values):
        if v == 0:
            continue
        if d == 0:
            d, coeffs = abs(v), [0] * len(values)
            coeffs[i] = 1 if v > 0 else -1
            continue
        g, x, y = _egcd(d, v)
        coeffs = [x * c for c in coeffs]
        coeffs[i] += y
        d = g
    return d, coeffs


def _egcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t
