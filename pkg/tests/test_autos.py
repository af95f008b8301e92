import random

import pytest

from _oracles import (all_permutation_automorphisms, backtracking_automorphisms,
                      orbit_partition, poset_aut_oracle, random_poset)
from posetrep import autos as A
from posetrep import groups as G
from posetrep import posets as P


def test_antichain_symmetric_group():
    anti = P.FinitePoset(["a", "b", "c"], [0, 0, 0])
    aut = A.automorphism_group(anti)
    assert aut.order == 6
    assert aut.closure_order() == 6
    assert aut.orbits == [[0, 1, 2]]


def test_cyclic_nine_reference():
    z9 = G.CyclicGroup(9)
    pos = P.build_cayley_poset(z9, [0, 1, 3])
    aut = A.automorphism_group(pos)
    assert aut.order == 9
    assert aut.orbit_count == 2
    trivial, _ = A.stabilizer_is_trivial(pos, 0)
    assert trivial


def test_cyclic_six_witness():
    z6 = G.CyclicGroup(6)
    pos = P.build_cayley_poset(z6, [0, 1, 3])
    trivial, witness = A.stabilizer_is_trivial(pos, 0)
    assert not trivial
    assert witness[0] == 0 and witness != tuple(range(12))
    assert A.is_poset_automorphism(pos, witness)
    # the classical involution: swap 2 with 5 and 0' with 3', fix the rest
    classical = list(range(12))
    classical[2], classical[5] = 5, 2
    classical[6], classical[9] = 9, 6
    assert A.is_poset_automorphism(pos, tuple(classical))


def test_two_chain_rigid():
    chain = P.FinitePoset.from_relations(["a", "b"], [(0, 1)])
    trivial, _ = A.stabilizer_is_trivial(chain, 0)
    assert trivial
    assert A.automorphism_group(chain).order == 1


def test_engine_equals_oracle_exhaustive_small():
    rng = random.Random(13)
    for _ in range(60):
        pos = random_poset(rng, rng.randint(1, 7))
        aut = A.automorphism_group(pos)
        oracle = all_permutation_automorphisms(pos)
        assert aut.order == len(oracle)
        assert aut.orbits == orbit_partition(pos.n, oracle)
        # the two oracles agree with each other as well
        assert sorted(oracle) == sorted(backtracking_automorphisms(pos))


def test_engine_equals_oracle_medium():
    rng = random.Random(17)
    for _ in range(25):
        pos = random_poset(rng, rng.randint(8, 11))
        aut = A.automorphism_group(pos)
        oracle = poset_aut_oracle(pos)
        assert aut.order == len(oracle)
        assert aut.orbits == orbit_partition(pos.n, oracle)


def test_engine_on_all_small_cayley_posets(groups_up_to_6):
    import itertools
    for grp in groups_up_to_6:
        if grp.order > 5:
            continue
        els = list(grp.elements())
        for r in range(1, len(els) + 1):
            for subset in itertools.combinations(els, r):
                pos = P.build_cayley_poset(grp, subset)
                aut = A.automorphism_group(pos)
                oracle = poset_aut_oracle(pos)
                assert aut.order == len(oracle)
                assert aut.orbits == orbit_partition(pos.n, oracle)


def test_aut_order_invariant_under_opposite():
    rng = random.Random(29)
    for _ in range(20):
        pos = random_poset(rng, rng.randint(2, 10))
        assert A.automorphism_group(pos).order == \
            A.automorphism_group(pos.opposite()).order


def test_left_action_divides_aut(groups_up_to_8):
    import itertools
    rng = random.Random(31)
    for grp in groups_up_to_8:
        els = list(grp.elements())
        for _ in range(4):
            subset = rng.sample(els, rng.randint(1, len(els)))
            if not P.connection_generates(grp, subset):
                continue
            pos = P.build_cayley_poset(grp, subset)
            aut = A.automorphism_group(pos)
            assert aut.order % grp.order == 0


def test_classify_left_action_kinds():
    z9 = G.CyclicGroup(9)
    pos, act = A.left_action(z9, [0, 1, 3])
    verdict = A.classify_action(pos, act, group=z9)
    assert verdict.kind == "cayley-representation"
    assert verdict.free and verdict.orbit_count == 2 and verdict.is_full_aut

    z4 = G.CyclicGroup(4)
    for subset in ([0], [0, 1], [0, 1, 2], [1, 3]):
        pos4, act4 = A.left_action(z4, subset)
        v4 = A.classify_action(pos4, act4, group=z4)
        assert v4.kind != "cayley-representation"


def test_classify_distinguishes_having_from_being_aut():
    """A four-point poset whose automorphism group is the Klein group,
    acting with fixed points: the verdict must be not-free even though
    the abstract group is right."""
    grp = G.make_group("elementary", 2, 2)
    pos = P.FinitePoset.from_relations(["0", "1", "0'", "1'"],
                                       [(0, 2), (0, 3), (1, 2), (1, 3)])
    els = list(grp.elements())
    swap_bottom = (1, 0, 2, 3)
    swap_top = (0, 1, 3, 2)
    both = (1, 0, 3, 2)
    action = {els[0]: (0, 1, 2, 3), els[1]: swap_top,
              els[2]: swap_bottom, els[3]: both}
    assert A.is_poset_automorphism(pos, swap_bottom)
    verdict = A.classify_action(pos, action)
    assert verdict.kind == "not-free"
    assert verdict.aut_order == 4 == verdict.action_order
    assert verdict.is_full_aut and not verdict.free
    assert verdict.witness is not None


def test_classify_validates_input():
    z4 = G.CyclicGroup(4)
    pos, act = A.left_action(z4, [0, 1])
    act[2] = tuple(range(1, pos.n)) + (0,)      # not an automorphism
    with pytest.raises(Exception):
        A.classify_action(pos, act, group=z4)


def test_format_permutation():
    labels = ["0", "1", "2", "0'", "1'", "2'"]
    perm = (0, 2, 1, 3, 5, 4)
    assert A.format_permutation(perm, labels) == "(1 2)(1' 2')"
    assert A.format_permutation(tuple(range(6)), labels) == "()"
