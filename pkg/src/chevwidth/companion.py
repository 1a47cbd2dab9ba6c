"""Conjugating coset representatives into companion form.

A companion form is x_Sigma(a) * pi_hat with a supported on the companion
root set.  to_companion conjugates any u * pi_hat (u a positive-root word)
into that shape by peeling trajectory layers; minus_side_to_companion does
the same for v * pi_hat with v supported on negative roots, routing through
the longest-element lift; inverse_companion conjugates the inverse of a
companion element back to companion form (the step that needs the rotation
reversed, so it only exists for the A family and E6).  All steps are
explicit words; the only matrix-level facts used are integral identities
between lift words, which specialize to every coefficient ring.
"""

from __future__ import annotations

import numpy as np

from .extweyl import (h_word_for_diag, int_eval, lift_of_word, pi_hat,
                      subsystem_longest_word, w0_hat, _int_inverse_signed)
from .matrices import int_matmul
from .rings import IntRing
from .words import GenWord, identity

_INT = IntRing()


class CompanionError(Exception):
    pass


class CompanionForm:
    """Coefficients of x_Sigma(a) * pi_hat; minus marks a central sign -1."""

    def __init__(self, system_name, coeffs, minus=False):
        self.system = system_name
        self.coeffs = dict(coeffs)
        self.minus = bool(minus)

    @property
    def center(self):
        return -1 if self.minus else 1

    def word(self, ch, R) -> GenWord:
        toks = [("x", g, self.coeffs[g]) for g in ch.S.companion_sigma()
                if g in self.coeffs and not R.is_zero(self.coeffs[g])]
        return GenWord(toks, self.center) * pi_hat(ch)

    def to_json(self, R):
        return {
            "system": self.system,
            "sigma_coeffs": {",".join(str(c) for c in g): R.to_json(v)
                             for g, v in sorted(self.coeffs.items())},
            "minus": self.minus,
        }

    @staticmethod
    def from_json(data, R):
        coeffs = {tuple(int(c) for c in k.split(",")): R.from_json(v)
                  for k, v in data["sigma_coeffs"].items()}
        return CompanionForm(data["system"], coeffs, data.get("minus", False))


# ---------------------------------------------------------------------------
# canonical recognition of lift words
# ---------------------------------------------------------------------------

_PI_MATS = {}
_CANON = {}


def _pi_mats(ch):
    name = ch.S.name
    if name not in _PI_MATS:
        P = int_eval(ch.rep(), pi_hat(ch))
        _PI_MATS[name] = (P, _int_inverse_signed(P))
    return _PI_MATS[name]


def _canon_lift(ch, toks):
    """Recognize a lift word as center * torus * pi_hat^p.

    Returns (ppow, center, torus_word).  The equality holds between integer
    matrices in the working representation, hence over every ring."""
    key = (ch.S.name, tuple(toks))
    if key in _CANON:
        return _CANON[key]
    rep = ch.rep()
    M = int_eval(rep, GenWord(toks))
    P, Pinv = _pi_mats(ch)
    out = None
    for p in (1, -1):
        D = int_matmul(M, Pinv if p == 1 else P)
        d = np.diag(D).copy()
        if not (np.array_equal(D, np.diag(d)) and set(np.unique(d)) <= {1, -1}):
            continue
        if np.all(d == 1):
            out = (p, 1, identity())
            break
        if np.all(d == -1):
            out = (p, -1, identity())
            break
        w = h_word_for_diag(ch, rep, d)
        if w is not None:
            out = (p, 1, w)
            break
        w = h_word_for_diag(ch, rep, -d)
        if w is not None:
            out = (p, -1, w)
            break
    if out is None:
        raise CompanionError(f"unrecognized lift word in {ch.S.name}")
    _CANON[key] = out
    return out


# ---------------------------------------------------------------------------
# internal coset state: center * torus * x-word * pi_hat^ppow
# ---------------------------------------------------------------------------

class _Coset:
    def __init__(self, ch, R, xtoks=(), center=1, torus=(), ppow=1):
        self.ch = ch
        self.R = R
        self.center = center
        self.torus = tuple(torus)
        self.xtoks = tuple(t for t in xtoks if not R.is_zero(t[2]))
        self.ppow = ppow
        assert all(t[0] == "x" for t in self.xtoks)
        assert all(t[0] == "h" for t in self.torus)

    def _pi_word(self):
        p = pi_hat(self.ch)
        return p if self.ppow == 1 else p.inv(_INT)

    def word(self) -> GenWord:
        return GenWord(self.torus + self.xtoks, self.center) * self._pi_word()

    def conj(self, y: GenWord) -> "_Coset":
        """State of y * self * y^-1 for a word of w/h tokens."""
        ch, R = self.ch, self.R
        assert all(t[0] in ("w", "h") for t in y.toks)
        tor = ch.conj_word(y.toks, GenWord(self.torus), _INT).toks
        xs = ch.conj_word(y.toks, GenWord(self.xtoks), R).toks
        lift = y.toks + self._pi_word().toks + y.inv(_INT).toks
        p, c, tw = _canon_lift(ch, lift)
        # the recognized torus sits right of the x part; pull it left
        xs2 = ch.conj_word(tw.inv(_INT).toks, GenWord(xs), R).toks
        return _Coset(ch, R, xs2, self.center * c,
                      _compact_torus(ch, tor + tw.toks), p)

    def invert(self) -> "_Coset":
        ch, R = self.ch, self.R
        pw = self._pi_word()
        xinv = GenWord(self.xtoks).inv(R)
        tinv = GenWord(self.torus).inv(_INT)
        # (t x pi^p)^-1 = pi^-p x^-1 t^-1; move pi^-p to the right
        xs = ch.conj_word(pw.inv(_INT).toks, xinv, R)
        tor = ch.conj_word(pw.inv(_INT).toks, tinv, _INT)
        # torus now right of x; pull left
        xs2 = ch.conj_word(tor.inv(_INT).toks, xs, R).toks
        return _Coset(ch, R, xs2, self.center,
                      _compact_torus(ch, tor.toks), -self.ppow)


def _compact_torus(ch, toks):
    if not toks:
        return ()
    rep = ch.rep()
    d = np.diag(int_eval(rep, GenWord(tuple(toks)))).copy()
    if np.all(d == 1):
        return ()
    w = h_word_for_diag(ch, rep, d)
    assert w is not None, "torus word outside the sign torus"
    return w.toks


# ---------------------------------------------------------------------------
# peeling to companion form
# ---------------------------------------------------------------------------

def to_companion(ch, utoks, R):
    """Conjugator mu and coefficients a with
    mu * (u * pi_hat) * mu^-1 = x_Sigma(a) * pi_hat."""
    S = ch.S
    layers = S.omega_layers()
    lay = {r: k for k, roots in enumerate(layers) for r in roots}
    persistent = set(S.persistent_roots())
    pi_toks = pi_hat(ch).toks

    u = [t for t in utoks if not R.is_zero(t[2])]
    assert all(t[0] == "x" for t in u)
    for _, r, _ in u:
        assert S.is_positive(r), r
    mu = identity()

    rounds = 0
    while True:
        kmax = 0
        for _, r, _ in u:
            if r not in persistent:
                kmax = max(kmax, lay[r])
        if kmax == 0:
            break
        rounds += 1
        assert rounds < 40 * (len(layers) + 1), "layer peeling stalled"
        targets = layers[kmax]
        coeffs, rest = ch.collect_partial(u, targets, R)
        w = GenWord([("x", g, coeffs[g]) for g in targets
                     if not R.is_zero(coeffs[g])])
        pushed = ch.conj_word(pi_toks, w, R)
        u = list(rest) + list(pushed.toks)
        mu = w.inv(R) * mu

    if persistent:
        # sweep alpha_2 out unconditionally: even a zero total must remove
        # the raw tokens, since alpha_2 itself is not a companion root
        a2 = S.simple(2)
        coeffs, rest = ch.collect_partial(u, [a2], R)
        c = coeffs[a2]
        u = list(rest)
        if not R.is_zero(c):
            w = GenWord([("x", a2, c)])
            pushed = ch.conj_word(pi_toks, w, R)
            u = u + list(pushed.toks)
            mu = w.inv(R) * mu

    final = ch.collect(u, S.companion_sigma(), R)
    # mu is a product of positive-root tokens; store its normal form so
    # downstream words (and their matrix evaluations) stay short
    mc = ch.collect(mu.toks, S.pos, R)
    mu = GenWord(tuple(("x", b, mc[b]) for b in S.pos if not R.is_zero(mc[b])))
    return mu, final


def companion_word(ch, coeffs, R, center=1) -> GenWord:
    return CompanionForm(ch.S.name, coeffs, center == -1).word(ch, R)


# ---------------------------------------------------------------------------
# the minus side: v * pi_hat with v on negative roots
# ---------------------------------------------------------------------------

def minus_side_to_companion(ch, vtoks, R):
    """Conjugator nu, coefficients b and a central sign s with
    nu * (v * pi_hat) * nu^-1 = s * x_Sigma(b) * pi_hat."""
    S = ch.S
    v = [t for t in vtoks if not R.is_zero(t[2])]
    assert all(t[0] == "x" and not S.is_positive(t[1]) for t in v)
    if S.fam == "A":
        return _inverse_a(ch, v, R)
    if S.name == "E6":
        return _inverse_e6(ch, v, R)
    return _inverse_plain(ch, v, R)


def _inverse_plain(ch, v, R):
    # w0_hat fixes pi_hat exactly for B, C, D, E7, E8, F4, G2
    w0 = w0_hat(ch)
    st = _Coset(ch, R, v).conj(w0)
    nu = w0
    if st.torus:
        from .extweyl import normalize_conjugator
        c = normalize_conjugator(ch, GenWord(st.torus) * pi_hat(ch))
        st = st.conj(c)
        nu = c * nu
    assert st.ppow == 1 and not st.torus, ch.S.name
    mu, coeffs = to_companion(ch, st.xtoks, R)
    return mu * nu, coeffs, st.center


def _inv_core_a(ch, coeffs, center, R):
    """Conjugate center * (x_Sigma(coeffs) * pi_hat)^-1 to companion form.

    Returns (eta, out_coeffs, out_center)."""
    S = ch.S
    w0 = w0_hat(ch)
    pinv = pi_hat(ch).inv(_INT)
    xneg = GenWord([("x", g, val) for g, val in coeffs.items()
                    if not R.is_zero(val)]).inv(R)
    xhat = ch.conj_word(pinv.toks, xneg, R)
    st = _Coset(ch, R, xhat.toks, center=center, ppow=-1)
    st = st.conj(w0).conj(pinv).conj(pinv)
    assert st.ppow == 1 and not st.torus
    for _, r, _ in st.xtoks:
        assert r in set(S.companion_sigma()), r
    mu2, out = to_companion(ch, st.xtoks, R)
    return mu2 * pinv * pinv * w0, out, st.center


def _inverse_a(ch, v, R):
    w0 = w0_hat(ch)
    pinv = pi_hat(ch).inv(_INT)
    st1 = _Coset(ch, R, v).conj(w0)
    assert not st1.torus
    if st1.ppow == 1:
        # pi_hat^2 central (rank 1): the conjugate is already upper
        mu, coeffs = to_companion(ch, st1.xtoks, R)
        return mu * w0, coeffs, st1.center
    # st1 = c * up * pi^-1; conjugating by pi^-1 gives c * (up^-1 * pi)^-1
    up_inv = GenWord(st1.xtoks).inv(R)
    mu1, c1 = to_companion(ch, up_inv.toks, R)
    # now (mu1 pi^-1 w0) X (…)^-1 = c * (x_S(c1) pi)^-1 = c * pi^-1 x_S(c1)^-1
    eta, coeffs, s = _inv_core_a(ch, c1, st1.center, R)
    return eta * mu1 * pinv * w0, coeffs, s


def _inv_core_e6(ch, coeffs, center, R):
    """E6 analogue of _inv_core_a, built on the subsystem longest lift."""
    S = ch.S
    from .extweyl import normalize_conjugator
    pinv = pi_hat(ch).inv(_INT)
    xneg = GenWord([("x", g, val) for g, val in coeffs.items()
                    if not R.is_zero(val)]).inv(R)
    xhat = ch.conj_word(pinv.toks, xneg, R)
    st = _Coset(ch, R, xhat.toks, center=center, ppow=-1)
    v0 = lift_of_word(S, subsystem_longest_word(S, [1, 3, 4, 5, 6]))
    st = st.conj(v0)
    rho2_toks = v0.toks + pinv.toks + v0.inv(_INT).toks
    st = st.conj(GenWord(rho2_toks).inv(_INT))
    if st.torus:
        c2 = normalize_conjugator(ch, GenWord(st.torus) * pi_hat(ch))
        st = st.conj(c2)
    else:
        c2 = identity()
    assert not st.torus and st.ppow == 1
    st = st.conj(pinv)
    for _, r, _ in st.xtoks:
        assert S.is_positive(r), r
    mu2, out = to_companion(ch, st.xtoks, R)
    return mu2 * pinv * c2 * GenWord(rho2_toks).inv(_INT) * v0, out, st.center


def _inverse_e6(ch, v, R):
    w0 = w0_hat(ch)
    from .extweyl import normalize_conjugator

    # X1 = w0 (v pi) w0^-1 = up * rho^-1 with rho^-1 = w0 pi w0^-1
    up = ch.conj_word(w0.toks, GenWord(v), R)
    rho_inv_toks = w0.toks + pi_hat(ch).toks + w0.inv(_INT).toks
    rho = GenWord(rho_inv_toks).inv(_INT)
    # conjugating X1 by rho^-1 leaves rho^-1 * up = (up^-1 * rho)^-1
    p, c0, tw = _canon_lift(ch, rho.toks)
    assert p == 1
    x0 = ch.conj_word(tw.inv(_INT).toks, up.inv(R), R)
    stW = _Coset(ch, R, x0.toks, center=c0, torus=tw.toks, ppow=1)
    cn = normalize_conjugator(ch, GenWord(stW.torus) * pi_hat(ch))
    stW = stW.conj(cn)
    assert not stW.torus and stW.ppow == 1
    mu1, c1 = to_companion(ch, stW.xtoks, R)
    xi = mu1 * cn * GenWord(rho_inv_toks) * w0
    # xi X0 xi^-1 = s1 * (x_S(c1) pi)^-1 = s1 * pi^-1 * x_S(c1)^-1
    eta, coeffs, s = _inv_core_e6(ch, c1, stW.center, R)
    return eta * xi, coeffs, s


def inverse_companion(ch, form: CompanionForm, R):
    """Conjugator eta and companion form of the inverse of form's element.

    Only the A family and E6 need this route (their rotations reverse under
    the longest element); for A ranks 4k+1 the output picks up a central
    sign flip."""
    S = ch.S
    if S.fam == "A":
        eta, coeffs, s = _inv_core_a(ch, form.coeffs, form.center, R)
    elif S.name == "E6":
        eta, coeffs, s = _inv_core_e6(ch, form.coeffs, form.center, R)
    else:
        raise CompanionError(
            f"{S.name}: inverse of a companion element is handled by the "
            "plain route; this step exists only for A and E6")
    return eta, CompanionForm(S.name, coeffs, s == -1)
