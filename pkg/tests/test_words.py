from chevwidth.rings import Zmod, RatRing
from chevwidth.words import GenWord, comm, identity


def test_mul_and_center():
    a = GenWord.x((1, 0), 3)
    b = GenWord.w((0, 1), 1)
    c = a * b * GenWord.central(-1)
    assert len(c) == 2
    assert c.center == -1
    assert (c * c).center == 1


def test_inverse_tokens():
    R = Zmod(7)
    w = GenWord.x((1, 0), 3) * GenWord.w((0, 1), 2) * GenWord.h((1, 1), 3)
    wi = w.inv(R)
    assert wi.toks == (("h", (1, 1), 5), ("w", (0, 1), 5), ("x", (1, 0), 4))


def test_json_roundtrip():
    R = Zmod(6)
    w = GenWord.x((1, 0), 5) * GenWord.h((0, 1), 5) * GenWord.central(-1)
    data = w.to_json(R)
    assert data[-1] == {"center": -1}
    assert GenWord.from_json(data, R) == w


def test_json_rational():
    R = RatRing()
    w = GenWord.x((1, 0), R.of_value([2, 3]))
    data = w.to_json(R)
    assert data[0]["t"] == [2, 3]
    assert GenWord.from_json(data, R) == w


def test_comm_shape():
    R = Zmod(5)
    a = GenWord.x((1, 0), 1)
    b = GenWord.x((0, 1), 2)
    k = comm(a, b, R)
    assert k.toks == (("x", (1, 0), 1), ("x", (0, 1), 2),
                      ("x", (1, 0), 4), ("x", (0, 1), 3))
    assert identity().toks == ()
