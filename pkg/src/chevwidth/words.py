"""Words in the Steinberg generators x_a(t), w_a(u), h_a(u).

A GenWord is a sequence of tokens plus a central sign.  Tokens are plain
tuples:

    ("x", root, t)   root unipotent
    ("w", root, u)   w_a(u) = x_a(u) x_{-a}(-1/u) x_a(u), u a unit
    ("h", root, u)   h_a(u) = w_a(u) w_a(-1)

The central sign is +-1 and commutes with everything; it tracks the
scalar -1 in cases where a factorization is only found for -g.
"""

from __future__ import annotations


class GenWord:
    __slots__ = ("toks", "center")

    def __init__(self, toks=(), center=1):
        self.toks = tuple(toks)
        assert center in (1, -1)
        self.center = center

    # ---- constructors ----

    @staticmethod
    def x(root, t):
        return GenWord(((("x", tuple(root), t)),))

    @staticmethod
    def w(root, u):
        return GenWord((("w", tuple(root), u),))

    @staticmethod
    def h(root, u):
        return GenWord((("h", tuple(root), u),))

    @staticmethod
    def central(sign):
        return GenWord((), sign)

    # ---- algebra ----

    def __mul__(self, other):
        return GenWord(self.toks + other.toks, self.center * other.center)

    def inv(self, R):
        out = []
        for kind, root, val in reversed(self.toks):
            out.append(invert_token((kind, root, val), R))
        return GenWord(out, self.center)

    def conj(self, y, R):
        """self conjugated by y: y * self * y^-1."""
        return y * self * y.inv(R)

    def __len__(self):
        return len(self.toks)

    def __iter__(self):
        return iter(self.toks)

    def __eq__(self, other):
        return (isinstance(other, GenWord) and self.toks == other.toks
                and self.center == other.center)

    def __hash__(self):
        return hash((self.toks, self.center))

    def __repr__(self):
        bits = [f"{k}_{''.join(str(c) for c in r)}({v})" for k, r, v in self.toks]
        if self.center == -1:
            bits.append("(-1)")
        return " ".join(bits) if bits else "1"

    # ---- serialization ----

    def to_json(self, R):
        out = []
        for kind, root, val in self.toks:
            if isinstance(val, int) and val in (1, -1):
                val = R.of(val)  # words may carry ring-independent +-1
            key = "t" if kind == "x" else "u"
            out.append({"k": kind, "a": list(root), key: R.to_json(val)})
        if self.center == -1:
            out.append({"center": -1})
        return out

    @staticmethod
    def from_json(data, R):
        toks = []
        center = 1
        for i, tok in enumerate(data):
            if "center" in tok:
                assert i == len(data) - 1 and tok["center"] == -1
                center = -1
                continue
            kind = tok["k"]
            val = R.from_json(tok["t" if kind == "x" else "u"])
            toks.append((kind, tuple(tok["a"]), val))
        return GenWord(toks, center)


def invert_token(tok, R):
    kind, root, val = tok
    if kind == "x":
        return ("x", root, R.neg(val))
    if isinstance(val, int):
        val = R.of(val)
    if kind == "w":
        return ("w", root, R.neg(val))
    if kind == "h":
        return ("h", root, R.inv(val))
    raise ValueError(kind)


def comm(a: GenWord, b: GenWord, R) -> GenWord:
    """[a, b] = a b a^-1 b^-1."""
    return a * b * a.inv(R) * b.inv(R)


def condense(toks, R):
    """Collapse adjacent same-root tokens where a local rule applies.

    x_r(a) x_r(b) merges to x_r(a+b), h_r(a) h_r(b) to h_r(ab), and
    w_r(a) w_r(-a) cancels; each rewrite is an exact identity, so the
    returned stream is the same group element with fewer factors."""
    def rv(v):
        return R.of(v) if isinstance(v, int) else v

    out = []
    for t in toks:
        out.append(t)
        while len(out) >= 2:
            k1, r1, v1 = out[-2]
            k2, r2, v2 = out[-1]
            if k1 != k2 or r1 != r2:
                break
            a, b = rv(v1), rv(v2)
            if k1 == "x":
                s = R.add(a, b)
                out.pop(); out.pop()
                if not R.is_zero(s):
                    out.append(("x", r1, s))
            elif k1 == "h":
                s = R.mul(a, b)
                out.pop(); out.pop()
                if not R.is_zero(R.sub(s, R.one)):
                    out.append(("h", r1, s))
            elif k1 == "w" and R.is_zero(R.add(a, b)):
                out.pop(); out.pop()
            else:
                break
    return tuple(out)


def identity() -> GenWord:
    return GenWord()
