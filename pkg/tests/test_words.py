import random

import pytest
from hypothesis import given, strategies as st

from posetrep import groups as G
from posetrep import words as W

letters = st.integers(min_value=-2, max_value=2).filter(lambda a: a != 0)
letter_lists = st.lists(letters, max_size=40)


def test_reduce_examples():
    assert W.reduce_word([1, -1, 2]) == (2,)
    assert W.reduce_word([]) == ()
    assert W.reduce_word([1, 2, -2, 1]) == (1, 1)


@given(letter_lists)
def test_reduce_idempotent(ls):
    w = W.reduce_word(ls)
    assert W.reduce_word(w) == w


@given(letter_lists)
def test_word_times_inverse_cancels(ls):
    w = W.reduce_word(ls)
    assert W.concat(w, W.inverse_word(w)) == ()


def test_inverse_cancels_many_samples():
    rng = random.Random(7)
    for _ in range(10_000):
        ls = [rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(0, 12))]
        w = W.reduce_word(ls)
        assert W.concat(w, W.inverse_word(w)) == ()


def test_cyclic_reduce_examples():
    assert W.cyclic_reduce(W.parse_word("X y x")) == (2,)
    klein = W.parse_word("x y X y")
    assert W.cyclic_reduce(klein) == klein
    assert W.cyclic_reduce(W.parse_word("x y y X")) == (2, 2)


def test_parse_and_format_roundtrip():
    assert W.parse_word("x y X Y") == (1, 2, -1, -2)
    assert W.format_word((1, 2, -1, -2)) == "x y X Y"
    assert W.parse_word("1") == ()
    assert W.format_word(()) == "1"
    with pytest.raises(Exception):
        W.parse_word("xx yy")


def test_evaluate_examples():
    z5 = G.CyclicGroup(5)
    assert W.evaluate((1, 1), (2,), z5) == 4
    z6 = G.CyclicGroup(6)
    comm = W.parse_word("x y X Y")
    assert W.evaluate(comm, (2, 5), z6) == 0
    sl5 = G.SL2Group(5)
    x, y = G.margulis_generators(5)
    assert W.evaluate((1,) * 5, (x, y), sl5) == sl5.identity


def test_evaluate_is_multiplicative():
    rng = random.Random(11)
    s4 = G.SymmetricGroup(4)
    imgs = ((1, 0, 3, 2), (1, 2, 3, 0))
    for _ in range(300):
        w1 = W.reduce_word([rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(0, 8))])
        w2 = W.reduce_word([rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(0, 8))])
        lhs = W.evaluate(W.concat(w1, w2), imgs, s4)
        rhs = s4.mul(W.evaluate(w1, imgs, s4), W.evaluate(w2, imgs, s4))
        assert lhs == rhs


# -- folding -----------------------------------------------------------------

def test_stallings_examples():
    r = W.stallings_rank((1, 1), (1, 1, 1))
    assert r.rank == 1 and r.root == (1,) and r.exponents == (2, 3)
    assert W.stallings_rank((1,), (2,)).rank == 2
    assert W.stallings_rank((1, 2, -1), (2,)).rank == 2
    assert W.stallings_rank((), ()).rank == 0
    r2 = W.stallings_rank((), (2, 2))
    assert r2.rank == 1 and r2.exponents == (0, 2)


def test_stallings_conjugate_powers():
    u = W.parse_word("x y y X")          # conjugate of y^2; root x y X
    w1 = W.power_word(W.parse_word("x y X"), 4)
    w2 = W.power_word(W.parse_word("x y X"), -6)
    r = W.stallings_rank(w1, w2)
    assert r.rank == 1
    l, m = r.exponents
    assert W.power_word(r.root, l) == w1 and W.power_word(r.root, m) == w2


def test_rank_one_powers_agree_in_groups():
    rng = random.Random(5)
    s4 = G.SymmetricGroup(4)
    imgs = ((1, 0, 3, 2), (1, 2, 3, 0))
    for _ in range(100):
        u = W.reduce_word([rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(1, 4))])
        if not u:
            continue
        l, m = rng.randint(1, 3), rng.randint(-3, 3) or 1
        r = W.stallings_rank(W.power_word(u, l), W.power_word(u, m))
        assert r.rank in (0, 1)
        if r.rank == 1:
            ll, mm = r.exponents
            assert W.evaluate(W.power_word(u, l), imgs, s4) == \
                W.evaluate(W.power_word(r.root, ll), imgs, s4)


# -- combination --------------------------------------------------------------

def test_combine_examples():
    assert W.combine_words([(1, 1), (1, 1, 1)]) == (1,) * 6
    assert W.combine_words([(1,), (2,)]) == (1, 2, -1, -2)
    w = W.combine_words([(1,), (2,), (1,)])
    assert w != ()


def test_combine_rejects_trivial_inputs():
    with pytest.raises(Exception):
        W.combine_words([(1,), ()])


@pytest.mark.parametrize("order", [4, 6])
def test_combine_preserves_solutions_small(order, groups_up_to_6):
    """Spot version of the exhaustive acceptance check."""
    rng = random.Random(order)
    groups = [g for g in groups_up_to_6 if g.order <= order]
    words = []
    while len(words) < 12:
        w = W.reduce_word([rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(1, 4))])
        if w:
            words.append(w)
    for i in range(0, len(words), 2):
        w1, w2 = words[i], words[i + 1]
        combined = W.combine_words([w1, w2])
        for grp in groups:
            els = list(grp.elements())
            for a in els:
                for b in els:
                    if (W.evaluate(w1, (a, b), grp) == grp.identity
                            or W.evaluate(w2, (a, b), grp) == grp.identity):
                        assert W.evaluate(combined, (a, b), grp) == grp.identity
