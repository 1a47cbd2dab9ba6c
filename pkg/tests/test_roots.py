import pytest

from chevwidth.roots import InvalidType, RootSystem, get_system, parse_type

ALL_TYPES = ["A1", "A2", "A3", "A5", "B2", "B3", "B4", "C2", "C3", "C4",
             "D3", "D4", "D5", "E6", "E7", "E8", "F4", "G2"]


def test_parse_type():
    assert parse_type("e7") == ("E", 7)
    for bad in ["E9", "F3", "G5", "B1", "D2", "H3", "A0", "Q"]:
        with pytest.raises(InvalidType):
            parse_type(bad)


def test_positive_root_counts():
    expected = {"A1": 1, "A2": 3, "A3": 6, "A5": 15, "B2": 4, "B3": 9,
                "B4": 16, "C2": 4, "C3": 9, "C4": 16, "D3": 6, "D4": 12,
                "D5": 20, "E6": 36, "E7": 63, "E8": 120, "F4": 24, "G2": 6}
    for name, cnt in expected.items():
        assert len(get_system(name).pos) == cnt, name


def test_highest_roots_frozen():
    expected = {
        "A3": (1, 1, 1),
        "B3": (1, 2, 2),
        "C3": (2, 2, 1),
        "D4": (1, 2, 1, 1),
        "E6": (1, 2, 2, 3, 2, 1),
        "E7": (2, 2, 3, 4, 3, 2, 1),
        "E8": (2, 3, 4, 6, 5, 4, 3, 2),
        "F4": (2, 3, 4, 2),
        "G2": (3, 2),
    }
    for name, hr in expected.items():
        assert get_system(name).highest_root() == hr, name


def test_coxeter_numbers():
    expected = {"A2": 3, "A5": 6, "B3": 6, "C4": 8, "D4": 6, "E6": 12,
                "E7": 18, "E8": 30, "F4": 12, "G2": 6}
    for name, h in expected.items():
        assert get_system(name).coxeter_number() == h, name


def test_positive_order_a2():
    S = get_system("A2")
    assert S.pos == [(1, 0), (0, 1), (1, 1)]


def test_order_starts_with_simples_in_sequence():
    for name in ALL_TYPES:
        S = get_system(name)
        assert S.pos[:S.rank] == [S.simple(i) for i in range(1, S.rank + 1)]


def test_reflection_basics():
    for name in ["A3", "B3", "C3", "G2", "F4"]:
        S = get_system(name)
        allr = S.all_roots()
        for i in range(1, S.rank + 1):
            a = S.simple(i)
            assert S.reflect(a, a) == S.neg(a)
            img = {S.reflect(a, b) for b in allr}
            assert img == set(allr)  # permutes the roots


def test_weyl_word_applies_rightmost_first():
    S = get_system("A2")
    # sigma_2 first sends alpha_2 to -alpha_2, then sigma_1 gives -(a1+a2)
    assert S.act([1, 2], (0, 1)) == (-1, -1)
    assert S.act([2, 1], (0, 1)) == (1, 0)


def test_act_inverse():
    S = get_system("F4")
    w = [1, 3, 2, 4, 1, 3]
    for b in S.pos[:8]:
        assert S.act_inv(w, S.act(w, b)) == b
        assert S.act(w, S.act_inv(w, b)) == b


def test_pairing_against_root_strings():
    # <beta, alpha> = p - q where p/q count steps down/up the alpha-string
    for name in ["C2", "G2", "B3", "A3"]:
        S = get_system(name)
        allr = set(S.all_roots())
        for a in allr:
            for b in allr:
                if b == a or b == S.neg(a):
                    continue
                p = 0
                g = tuple(x - y for x, y in zip(b, a))
                while g in allr:
                    p += 1
                    g = tuple(x - y for x, y in zip(g, a))
                q = 0
                g = tuple(x + y for x, y in zip(b, a))
                while g in allr:
                    q += 1
                    g = tuple(x + y for x, y in zip(g, a))
                assert S.pairing(b, a) == p - q, (name, a, b)


def test_pairing_self():
    S = get_system("B2")
    for b in S.all_roots():
        assert S.pairing(b, b) == 2
        assert S.pairing(S.neg(b), b) == -2


def test_coroot_values():
    G = get_system("G2")
    assert G.coroot((3, 2)) == (1, 2)   # long highest root
    assert G.coroot((2, 1)) == (2, 3)   # highest short root
    B = get_system("B3")
    assert B.coroot((1, 1, 1)) == (2, 2, 1)  # a short root
    for name in ALL_TYPES:
        S = get_system(name)
        for b in S.pos:
            S.coroot(b)  # asserts integrality internally


def test_pi_word_hits_each_generator_once():
    for name in ALL_TYPES:
        S = get_system(name)
        w = S.pi_word()
        if name == "E6":
            assert sorted(w) == [1, 3, 4, 5, 6]
        else:
            assert sorted(w) == list(range(1, S.rank + 1))


def test_sigma_set_frozen():
    assert get_system("A2").sigma_set() == [(0, 1), (1, 1)]
    assert get_system("A3").sigma_set() == [(0, 0, 1), (0, 1, 1), (1, 1, 1)]
    assert get_system("B2").sigma_set() == [(0, 1), (1, 2)]
    assert get_system("G2").sigma_set() == [(1, 0), (3, 1)]


def test_sigma_set_sizes():
    for name in ALL_TYPES:
        S = get_system(name)
        expect = 5 if name == "E6" else S.rank
        assert len(S.sigma_set()) == expect, name


def test_companion_sigma_closed():
    # if two members sum to a root, that root is again a member
    for name in ALL_TYPES:
        S = get_system(name)
        sig = set(S.companion_sigma())
        for a in sig:
            for b in sig:
                c = tuple(x + y for x, y in zip(a, b))
                if S.is_root(c):
                    assert c in sig, (name, a, b)


def test_companion_sigma_e6():
    S = get_system("E6")
    sig = S.companion_sigma()
    assert len(sig) == 25
    assert S.simple(2) not in sig
    assert len(S.persistent_roots()) == 21
    # persistent = roots using alpha_2; all but alpha_2 itself are in Sigma
    for b in S.persistent_roots():
        assert (b in sig) == (b != S.simple(2))


def test_omega_layers_partition():
    for name in ALL_TYPES:
        S = get_system(name)
        layers = S.omega_layers()
        assert layers[0] == S.sigma_set()
        flat = [b for layer in layers for b in layer]
        assert len(flat) == len(set(flat))
        assert set(flat) | set(S.persistent_roots()) == set(S.pos)
        # each non-final layer maps into the previous one under pi
        w = S.pi_word()
        for n in range(1, len(layers)):
            for b in layers[n]:
                assert S.act(w, b) in layers[n - 1]


def test_omega_layers_a2_frozen():
    assert get_system("A2").omega_layers() == [[(0, 1), (1, 1)], [(1, 0)]]


def test_edges():
    assert get_system("G2").edges() == [(1, 2, 3, 1)]
    assert get_system("B3").edges() == [(1, 2, 1, None), (2, 3, 2, 3)]
    assert get_system("C3").edges() == [(1, 2, 1, None), (2, 3, 2, 2)]
    assert get_system("F4").edges() == [(1, 2, 1, None), (2, 3, 2, 3),
                                        (3, 4, 1, None)]
    e6 = get_system("E6").edges()
    assert (2, 4, 1, None) in e6 and len(e6) == 5


def test_root_strings_unbroken():
    # between beta - p*alpha and beta + q*alpha every step is a root
    S = get_system("F4")
    allr = set(S.all_roots())
    for a in list(allr)[:12]:
        for b in allr:
            if b == a or b == S.neg(a):
                continue
            k = S.pairing(b, a)
            # sigma_a(b) = b - k a must be a root; every intermediate too
            step = 1 if k > 0 else -1
            for j in range(0, k + step, step) if k else [0]:
                g = tuple(x - j * y for x, y in zip(b, a))
                assert g in allr
