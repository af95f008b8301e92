import pytest

from posetrep import certificate as CERT
from posetrep import groups as G
from posetrep import words as W


def test_reference_table_pinned_values():
    table = CERT.f2_reference_table()
    assert len(table) == 26
    assert table["x"] == 12 and table["X"] == 12
    assert table["y"] == 9 and table["Y"] == 9
    assert sorted(k for k, v in table.items() if v == 12) == ["X", "x"]
    x_powers = {W.format_word((1,) * k) for k in range(1, 5)}
    x_powers |= {W.format_word((-1,) * k) for k in range(1, 5)}
    nines = {k for k, v in table.items() if v == 9}
    assert nines - x_powers == {"Y", "y"}


def test_reference_table_symmetry():
    table = CERT.f2_reference_table()
    for key, value in table.items():
        w = W.parse_word(key)
        assert table[W.format_word(W.inverse_word(w))] == value


def test_connection_set_and_neighborhood():
    f2 = G.FreeGroup(2)
    s = CERT.connection_set(f2, (1,), (2,))
    assert len(s) == 6
    assert len(CERT.f2_neighborhood_words()) == 27


def test_neighborhood_tree_shape():
    tree = CERT.f2_neighborhood_tree()
    assert len(tree.nodes) == 32
    assert sum(1 for w in tree.nodes if not tree.member[w]) == 5
    assert len(tree.edges) == 31          # a tree on 32 nodes
    assert len(tree.affinity) == 26


def test_certify_free_group_applicable():
    f2 = G.FreeGroup(2)
    cert = CERT.certify(f2, (1,), (2,))
    assert cert.applicable
    assert cert.table_matches_free
    assert cert.unique_upper_bound_ok and cert.power_chain_upper_bound_ok
    assert cert.sufficient_only
    assert cert.generation.startswith("assumed")


def test_certify_small_prime_declines_with_witness():
    sl5 = G.SL2Group(5)
    x, y = G.margulis_generators(5)
    cert = CERT.certify(sl5, x, y)
    assert not cert.applicable
    assert cert.girth_result.girth == 5
    assert cert.girth_result.witness == (1, 1, 1, 1, 1)
    assert cert.generation == "verified"


def test_certify_rejects_non_generating_pair():
    z8 = G.CyclicGroup(8)
    cert = CERT.certify(z8, 2, 4)
    assert not cert.applicable
    assert "generate" in cert.reason


def test_margulis_bound_small_primes():
    scan = CERT.margulis_prime_scan(stop=200)
    assert scan.bound_violations == []
    for (p, g) in scan.girths:
        value = g if g is not None else scan.threshold + 1
        assert value >= CERT.margulis_girth_bound(p)


@pytest.mark.slow
def test_prime_scan_and_full_certificate():
    scan = CERT.margulis_prime_scan()
    assert scan.first_prime == 383
    p = scan.first_prime
    sl = G.SL2Group(p)
    x, y = G.margulis_generators(p)
    cert = CERT.certify(sl, x, y)
    assert cert.applicable
    assert cert.neighborhood_size == 27
    assert cert.table_matches_free
    assert cert.unique_upper_bound_ok
    assert cert.power_chain_upper_bound_ok


def test_cross_validation_shows_sufficiency_only():
    rows = CERT.cross_validate_small((5, 8, 9))
    assert all(row["consistent"] for row in rows)
    by_group = {row["group"]: row for row in rows}
    assert not by_group["z:5"]["certificate_applicable"]
    assert by_group["z:5"]["search_outcome"] == "exhausted-none"
    assert by_group["z:8"]["search_outcome"] == "found"
    assert by_group["z:9"]["search_outcome"] == "found"
    assert not by_group["z:9"]["certificate_applicable"]
