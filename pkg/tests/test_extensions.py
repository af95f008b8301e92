import pytest

from posetrep import extensions as E
from posetrep import groups as G
from posetrep import posets as P
from posetrep.errors import InvalidParameterError


def test_h_group_axioms_identity_twist():
    z9 = G.CyclicGroup(9)
    h = E.h_group(z9, G.identity_automorphism(z9))
    assert h.mul((2, 1), (3, 2)) == (5, 3)
    report = h.axioms_report(n_range=3)
    assert report["all"] and report["elements"] == 63


def test_h_group_klein_twist():
    z = G.IntegerGroup()
    h = E.h_group(z, G.negation_automorphism(z))
    # (1, 0) (0, 1) applies the twist to the first coordinate
    assert h.mul((1, 0), (0, 1)) == (-1, 1)
    assert h.mul(h.inv((5, 2)), (5, 2)) == (0, 0)
    report = h.axioms_report(n_range=2, base_elements=range(-4, 5))
    assert report["all"]


def test_h_group_nontrivial_finite_twist():
    z9 = G.CyclicGroup(9)
    els = list(z9.elements())
    psi = G.GroupAutomorphism(z9, tuple((g, (2 * g) % 9) for g in els), name="mul:2")
    h = E.h_group(z9, psi)
    assert h.axioms_report(n_range=3)["all"]
    with pytest.raises(InvalidParameterError):
        bad = G.GroupAutomorphism(z9, tuple((g, (3 * g) % 9) for g in els))
        E.h_group(z9, bad)


def test_two_level_window_shape_and_grading():
    z9 = G.CyclicGroup(9)
    w = E.build_window("two-level", z9, [0, 1, 3], radius=2)
    assert w.poset.n == (2 * 2 + 2) * 9
    assert w.poset.height == 2 * 2 + 1
    res = E.gradedness(w.poset)
    assert res.graded
    e_idx = w.index_of((0, 0))
    assert all(res.rank[i] - res.rank[e_idx] == w.layer_of[i]
               for i in range(w.poset.n))
    assert E.verify_rank_function(w.poset, res.rank)


def test_two_level_window_preconditions():
    with pytest.raises(InvalidParameterError):
        E.build_window("two-level", G.CyclicGroup(2), [0, 1])
    with pytest.raises(InvalidParameterError):
        E.build_window("two-level", G.CyclicGroup(6), [0, 1, 3])   # not a representation
    with pytest.raises(InvalidParameterError):
        E.build_window("two-level", G.IntegerGroup(), [0, 1, 3])   # needs base_window


def test_two_level_action_checks():
    z9 = G.CyclicGroup(9)
    w = E.build_window("two-level", z9, [0, 1, 3], radius=3)
    rep = E.check_action_on_window(w)
    assert rep.all_ok and rep.necessary_condition_only
    # a shifted translation moves layer n to layer n + 1 and adds 3
    idx = w.index_of((0, 0))
    assert w.names[w.act((3, 1), idx)] == (3, 1)


def test_klein_window_checks():
    z = G.IntegerGroup()
    neg = G.negation_automorphism(z)
    w = E.build_window("two-level", z, [0, 1, 3], neg, radius=2, base_window=30)
    res = E.gradedness(w.poset)
    assert res.graded
    act = E.check_action_on_window(w)
    assert act.all_ok
    rk = E.rank_epimorphism_check(w, res.rank)
    assert rk.additive and rk.image_is_interval


def test_three_level_window_shape():
    z9 = G.CyclicGroup(9)
    drr = P.build_drr_digraph(z9, [1, 3])
    w = E.build_window("three-level", z9, drr, radius=1)
    assert w.poset.n == 3 * 2 * 9 + 9
    # interior primed points cover exactly one element and are covered by one
    for i in range(w.poset.n):
        g, n, tier = w.names[i]
        if n != 0:
            continue
        one_one = (bin(w.poset.covers_up[i]).count("1") == 1
                   and bin(w.poset.covers_down[i]).count("1") == 1)
        assert one_one == (tier == 1), w.poset.labels[i]
    act = E.check_action_on_window(w, max_shift=0)
    assert act.all_ok


def test_three_level_exceptions_rejected():
    grp = G.parse_group("z2^k:2")
    drr = P.build_drr_digraph(grp, [list(grp.elements())[1]])
    with pytest.raises(InvalidParameterError):
        E.build_window("three-level", grp, drr, radius=1)


def test_gradedness_on_chains_and_gap_order():
    chain = P.FinitePoset.from_relations(list("abcd"),
                                         [(0, 1), (1, 2), (2, 3)])
    assert E.gradedness(chain).graded
    gap = E.integer_window_poset(0, 6)
    res = E.gradedness(gap)
    assert not res.graded
    assert res.witness is not None
    chains = E.maximal_chains_between(gap, 0, 6)
    as_labels = sorted(tuple(gap.labels[i] for i in c) for c in chains)
    assert as_labels == [("0", "2", "4", "6"), ("0", "3", "6")]


def test_rank_epimorphism_z9():
    z9 = G.CyclicGroup(9)
    w = E.build_window("two-level", z9, [0, 1, 3], radius=3)
    res = E.gradedness(w.poset)
    rep = E.rank_epimorphism_check(w, res.rank)
    assert rep.additive and rep.image_is_interval
    assert rep.image == list(range(min(rep.image), max(rep.image) + 1))
    assert rep.pairs_checked > 0
