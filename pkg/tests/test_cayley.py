import random

import pytest

from posetrep import cayley as C
from posetrep import groups as G
from posetrep import posets as P
from posetrep.errors import CapExceededError


def test_girth_free_group_exceeds_limit():
    f2 = G.FreeGroup(2)
    res = C.girth(f2, f2.generators(), limit=12)
    assert res.girth is None and res.exceeded
    assert str(res) == "> 12"


def test_girth_integers():
    res = C.girth(G.IntegerGroup(), [1, 3])
    assert res.girth == 4
    assert sum(1 if a > 0 else 0 for a in res.witness) in (1, 3)


def test_girth_involution_double_edge():
    s3 = G.SymmetricGroup(3)
    res = C.girth(s3, [(1, 0, 2), (1, 2, 0)])
    assert res.girth == 2 and res.witness == (1, 1)


def test_girth_degenerate_conventions():
    z5 = G.CyclicGroup(5)
    assert C.girth(z5, [0, 1]).girth == 1          # identity generator: loop
    assert C.girth(z5, [2, 2]).girth == 2          # repeated generator
    assert C.girth(z5, [2, 3]).girth == 2          # mutually inverse pair


def test_girth_z6_example():
    res = C.girth(G.CyclicGroup(6), [1, 2])
    assert res.girth == 3


def test_girth_witness_is_shortest_relation():
    z12 = G.CyclicGroup(12)
    res = C.girth(z12, [2, 3])
    assert res.girth == C.naive_girth(z12, [2, 3])
    from posetrep import words as W
    assert W.evaluate(res.witness, [2, 3], z12) == 0
    assert len(res.witness) == res.girth


def test_girth_matches_naive_oracle():
    cases = [
        (G.CyclicGroup(11), [1, 3]),
        (G.CyclicGroup(16), [3, 5]),
        (G.SymmetricGroup(4), [(1, 2, 3, 0), (1, 0, 2, 3)]),
        (G.QuaternionGroup(), [(1, 1), (1, 2)]),
        (G.DihedralGroup(7), [(1, 0), (0, 1)]),
        (G.SL2Group(5), list(G.margulis_generators(5))),
        (G.SL2Group(7), list(G.margulis_generators(7))),
    ]
    for grp, gens in cases:
        expected = C.naive_girth(grp, gens, limit=10)
        got = C.girth(grp, gens, limit=10)
        assert got.girth == expected, grp.descriptor


def test_girth_node_cap():
    f2 = G.FreeGroup(2)
    with pytest.raises(CapExceededError):
        C.girth(f2, f2.generators(), limit=24, node_cap=1000)


def test_neighborhood_examples():
    z12 = G.CyclicGroup(12)
    assert sorted(C.neighborhood(z12, [0, 1, 3], 5)) == [2, 3, 4, 5, 6, 7, 8]
    assert C.neighborhood(z12, [0], 7) == frozenset({7})
    z9 = G.CyclicGroup(9)
    assert len(C.neighborhood(z9, [0, 1, 3], 0)) == 7


def test_affinity_examples():
    z12 = G.CyclicGroup(12)
    assert C.affinity(z12, [0, 1, 3], 0, 1) == 6
    assert C.affinity(z12, [0, 1, 3], 0, 5) == 2
    # alpha(g, g) = |S S^-1|
    assert C.affinity(z12, [0, 1, 3], 4, 4) == 7
    z20 = G.CyclicGroup(20)
    for i in (0, 3, 11):
        assert C.affinity(z20, [0, 1, 3], i, i + 1) == 6


def test_affinity_is_automorphism_invariant():
    from posetrep.autos import automorphism_group
    for n, subset in ((9, (0, 1, 3)), (8, (0, 1, 2, 4)), (6, (0, 1, 3))):
        grp = G.CyclicGroup(n)
        pos = P.build_cayley_poset(grp, subset)
        aut = automorphism_group(pos)
        els = list(range(n))
        for perm in aut.generators:
            for g in els:
                for h in els:
                    assert C.affinity(grp, subset, g, h) == \
                        C.affinity(grp, subset, perm[g], perm[h])


def test_common_upper_bound_iff_neighborhood(groups_up_to_8):
    """Two minimal points share an upper bound exactly when one lies in
    the other's neighborhood; checked against the poset construction."""
    rng = random.Random(23)
    groups = list(groups_up_to_8) + [G.CyclicGroup(12), G.DihedralGroup(6)]
    for grp in groups:
        els = list(grp.elements())
        subsets = []
        if grp.order <= 4:
            import itertools
            for r in range(1, grp.order + 1):
                subsets += list(itertools.combinations(els, r))
        else:
            subsets = [tuple(rng.sample(els, rng.randint(1, grp.order)))
                       for _ in range(6)]
        for subset in subsets:
            pos = P.build_cayley_poset(grp, subset)
            index = {g: i for i, g in enumerate(els)}
            for g in els[:6]:
                hood = C.neighborhood(grp, subset, g)
                for h in els[:6]:
                    shares = bool(pos.up[index[g]] & pos.up[index[h]])
                    assert shares == (h in hood)


def test_degree_convention():
    z12 = G.CyclicGroup(12)
    assert C.CayleyGraph(z12, (1, 3)).degree == 4
    assert C.CayleyGraph(z12, (6, 1)).degree == 3   # 6 is an involution
    assert C.CayleyGraph(z12, (0, 1)).degree == 3   # loop counts once


def test_ball_signatures_match_free_group():
    f2 = G.FreeGroup(2)
    sl = G.SL2Group(13)     # girth 10 >= 2r + 2 for r <= 4
    x, y = G.margulis_generators(13)
    for r in (1, 2, 3):
        sig_free = C.ball_signature(C.bfs_ball(f2, f2.generators(), r))
        sig_sl = C.ball_signature(C.bfs_ball(sl, [x, y], r))
        assert sig_free == sig_sl
        assert sig_free[3] is not None      # both are trees
    # at radius where girth constraint breaks, signatures must differ
    sig_free = C.ball_signature(C.bfs_ball(f2, f2.generators(), 5))
    sig_sl = C.ball_signature(C.bfs_ball(sl, [x, y], 5))
    assert sig_free != sig_sl


def test_ball_words():
    z = G.IntegerGroup()
    ball = C.bfs_ball(z, [1, 3], 2)
    assert ball.dist[4] == 2
    from posetrep import words as W
    assert W.evaluate(ball.word_to(4), [1, 3], z) == 4
