"""Named reproduction scenarios with deterministic JSON evidence.

Each driver re-derives one of the toolkit's headline facts from scratch
and reports per-assertion outcomes.  Reports contain no floats and no
timing, so a rerun with the same seed and version is byte-identical;
wall time goes to the log, not the payload.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import certificate as CERT
from . import extensions as EXT
from . import groups as G
from . import search as S
from . import smallcancel as SC
from . import words as W
from .autos import automorphism_group, classify_action, left_action
from .posets import build_cayley_poset, build_drr_digraph, build_babai_poset

PROPOSITIONS = ("ciclico", "contraejemplos", "zeta22", "main-f2", "main-sl2",
                "corofew", "producto1", "producto2", "nongraded")


@dataclass
class ReproReport:
    proposition: str
    passed: bool
    checks: list[tuple[str, bool, str]]
    evidence: dict = field(default_factory=dict)
    table: list[dict] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "schema": 1,
            "proposition": self.proposition,
            "pass": self.passed,
            "checks": [{"name": n, "ok": ok, "detail": d} for (n, ok, d) in self.checks],
            "evidence": self.evidence,
        }


def _finish(proposition: str, checks, evidence=None, table=None) -> ReproReport:
    return ReproReport(proposition, all(ok for (_, ok, _) in checks), checks,
                       evidence or {}, table or [])


def repro_ciclico(n_max: int = 20) -> ReproReport:
    """Every Z_n with n >= 9 and the set {0,1,3} yields a two-orbit
    representation; Z_8 does with {0,1,2,4}."""
    checks = []
    table = []
    for n in range(9, n_max + 1):
        grp = G.CyclicGroup(n)
        P, act = left_action(grp, [0, 1, 3])
        aut = automorphism_group(P)
        verdict = classify_action(P, act, group=grp)
        ok = (aut.order == n and verdict.kind == "cayley-representation"
              and verdict.free and verdict.orbit_count == 2)
        checks.append((f"z:{n} with {{0,1,3}}", ok,
                       f"aut order {aut.order}, {verdict.orbit_count} orbits"))
        table.append({"group": f"z:{n}", "connection": "0,1,3",
                      "aut_order": aut.order, "orbits": verdict.orbit_count,
                      "kind": verdict.kind})
    grp8 = G.CyclicGroup(8)
    P8, act8 = left_action(grp8, [0, 1, 2, 4])
    aut8 = automorphism_group(P8)
    v8 = classify_action(P8, act8, group=grp8)
    ok8 = aut8.order == 8 and v8.kind == "cayley-representation"
    checks.append(("z:8 with {0,1,2,4}", ok8, f"aut order {aut8.order}"))
    table.append({"group": "z:8", "connection": "0,1,2,4",
                  "aut_order": aut8.order, "orbits": v8.orbit_count, "kind": v8.kind})
    return _finish("ciclico", checks, {"n_max": n_max}, table)


def repro_contraejemplos() -> ReproReport:
    """Exhaustion proofs: eleven small groups admit no valid connection set."""
    checks = []
    table = []
    reports = S.reproduce_contraejemplos()
    for rep in reports:
        ok = rep.outcome == "exhausted-none"
        cover = rep.tested + sum(rep.counters.values()) == rep.total_subsets
        checks.append((rep.descriptor, ok and cover,
                       f"{rep.outcome}, tested {rep.tested} of {rep.total_subsets}"))
        table.append({"group": rep.descriptor, "outcome": rep.outcome,
                      "tested": rep.tested, "subsets": rep.total_subsets,
                      **rep.counters})
    sanity = S.search_cayley(G.CyclicGroup(9))
    checks.append(("z:9 control finds a set", sanity.outcome == "found",
                   f"found {sanity.found}"))
    return _finish("contraejemplos", checks,
                   {"groups": [r.descriptor for r in reports]}, table)


def repro_zeta22() -> ReproReport:
    """No invariant three-orbit representation for the Klein four-group;
    positive control on a cyclic nine-element base."""
    rep = S.enumerate_three_orbit(G.parse_group("z2^k:2"))
    checks = [("z2^2 enumeration empty", rep.is_empty,
               f"{rep.candidates_considered} candidates, {rep.posets_valid} posets, "
               f"{len(rep.representations)} representations")]
    z9 = G.CyclicGroup(9)
    drr = build_drr_digraph(z9, [1, 3])
    babai = build_babai_poset(drr)
    act = S.babai_action(z9, babai)
    verdict = classify_action(babai, act, group=z9)
    ok = (verdict.free and verdict.orbit_count == 3 and verdict.is_full_aut)
    checks.append(("z:9 three-copy control", ok,
                   f"aut order {verdict.aut_order}, {verdict.orbit_count} orbits, "
                   f"free {verdict.free}"))
    evidence = {"candidates": rep.candidates_considered,
                "valid_posets": rep.posets_valid,
                "representations": len(rep.representations)}
    table = [{"group": "z2^k:2", "candidates": rep.candidates_considered,
              "valid_posets": rep.posets_valid, "representations": 0},
             {"group": "z:9 (3-copy control)", "candidates": 1, "valid_posets": 1,
              "representations": int(ok)}]
    return _finish("zeta22", checks, evidence, table)


def repro_main_f2() -> ReproReport:
    """The free-group affinity table pins the generator pair exactly."""
    table_aff = CERT.f2_reference_table()
    twelves = sorted(k for k, v in table_aff.items() if v == 12)
    nines = sorted(k for k, v in table_aff.items() if v == 9)
    x_powers = {W.format_word(w) for k in range(1, 5)
                for w in ((1,) * k, (-1,) * k)}
    nines_non_x = sorted(set(nines) - x_powers)
    ns = CERT.neighborhood(CERT._F2, CERT.CONNECTION_WORDS, ())
    common = CERT._common_upper_bound_elements(CERT._F2, CERT.CONNECTION_WORDS,
                                               [(), (-2,)])
    checks = [
        ("affinity 12 exactly at x, x^-1", twelves == ["X", "x"], str(twelves)),
        ("affinity 9 among non powers of x exactly at y, y^-1",
         nines_non_x == ["Y", "y"], str(nines)),
        ("neighborhood size 27", len(ns) == 27, str(len(ns))),
        ("e' unique upper bound of {e, y^-1}", common == {()},
         "{" + ", ".join(W.format_word(w) for w in sorted(common)) + "}"),
    ]
    tree = CERT.f2_neighborhood_tree()
    small = sum(1 for w, m in tree.member.items() if not m)
    checks.append(("spanning tree is 27 + 5 nodes",
                   len(tree.nodes) == 32 and small == 5,
                   f"{len(tree.nodes)} nodes, {small} connectors"))
    rows = [{"word": k, "affinity": v} for k, v in sorted(table_aff.items())]
    return _finish("main-f2", checks, {"table": table_aff}, rows)


def repro_main_sl2(p_max: int = 200) -> ReproReport:
    """Girth bound on all small primes, then the first certified prime."""
    checks = []
    table = []
    scan = CERT.margulis_prime_scan(stop=None)
    for (p, g) in scan.girths:
        if p <= p_max:
            bound = CERT.margulis_girth_bound(p)
            value = g if g is not None else scan.threshold + 1
            table.append({"p": p, "girth": g if g is not None else f"> {scan.threshold}",
                          "bound": f"{bound:.4f}"})
    checks.append((f"published bound holds for all primes <= {p_max}",
                   not [p for p in scan.bound_violations if p <= p_max],
                   f"violations: {scan.bound_violations}"))
    checks.append(("scan finds a first qualifying prime", scan.first_prime is not None,
                   f"first prime {scan.first_prime}"))
    cert_dict = {}
    if scan.first_prime is not None:
        p = scan.first_prime
        sl = G.SL2Group(p)
        x, y = G.margulis_generators(p)
        cert = CERT.certify(sl, x, y)
        cert_dict = cert.to_json_dict()
        checks.append((f"certificate applicable at p = {p}", cert.applicable, cert.reason))
        checks.append(("in-group affinity table equals the free table",
                       bool(cert.table_matches_free), "local isometry surrogate"))
    evidence = {"first_prime": scan.first_prime,
                "girths": [[p, g if g is not None else f"> {scan.threshold}"]
                           for (p, g) in scan.girths],
                "certificate": cert_dict}
    return _finish("main-sl2", checks, evidence, table)


def repro_corofew(samples: int = 200, seed: int = 7, l: int = 60,
                  threshold: Fraction = Fraction(95, 100)) -> ReproReport:
    """Counting checks plus the Monte Carlo representability fraction."""
    checks = []
    brute_ok = all(SC.count_cyclically_reduced(2, k)
                   == SC.brute_count_cyclically_reduced(2, k) for k in range(1, 13))
    checks.append(("exact counts match enumeration up to length 12", brute_ok, ""))
    bound_ok = all(SC.count_cyclically_reduced(2, k) <= 4 * 3 ** (k - 1)
                   for k in range(1, 21))
    checks.append(("counts below 4 * 3^(l-1) up to length 20", bound_ok, ""))
    presentations = SC.sample_few_relators(2, 2, l, samples, seed=seed)
    good = 0
    short = 0
    for pres in presentations:
        rep = SC.check_c_lambda(pres)
        if rep.cayley_representable:
            good += 1
        if min(rep.relator_lengths) < SC.GIRTH_LENGTH_FLOOR:
            short += 1
    frac = Fraction(good, samples)
    checks.append((f"fraction representable >= {threshold.numerator}/{threshold.denominator} at l = {l}",
                   frac >= threshold, f"{good}/{samples}"))
    checks.append(("no sampled relator below the length floor", short == 0,
                   f"{short} short samples"))
    table = [{"l": k, "count": SC.count_cyclically_reduced(2, k),
              "bound": 4 * 3 ** (k - 1)} for k in range(1, 21)]
    evidence = {"fraction": [good, samples], "seed": seed, "l": l,
                "counts": {str(k): SC.count_cyclically_reduced(2, k)
                           for k in range(1, 13)}}
    return _finish("corofew", checks, evidence, table)


def repro_producto1() -> ReproReport:
    """Twisted product axioms and the graded window with its free action."""
    z9 = G.CyclicGroup(9)
    psi = G.identity_automorphism(z9)
    h = EXT.h_group(z9, psi)
    ax = h.axioms_report(n_range=3)
    checks = [("product axioms on the layer window", ax["all"],
               f"{ax['elements']} elements")]
    w = EXT.build_window("two-level", z9, [0, 1, 3], psi, radius=3)
    checks.append(("window has (2N+2) |G| points", w.poset.n == 8 * 9,
                   f"{w.poset.n} points"))
    gr = EXT.gradedness(w.poset)
    layer_match = False
    if gr.graded:
        e_idx = w.index_of((0, 0))
        layer_match = all(gr.rank[i] - gr.rank[e_idx] == w.layer_of[i]
                          for i in range(w.poset.n))
    checks.append(("window graded with rank = layer", gr.graded and layer_match, ""))
    act = EXT.check_action_on_window(w)
    checks.append(("action free, order preserving, interior transitive",
                   act.all_ok, f"{act.checked_elements} elements checked"))
    rk = EXT.rank_epimorphism_check(w, gr.rank) if gr.graded else None
    checks.append(("layer map additive onto a symmetric interval",
                   rk is not None and rk.all_ok,
                   f"{rk.pairs_checked} pairs" if rk else "skipped"))
    table = [{"check": n, "ok": ok, "detail": d} for (n, ok, d) in checks]
    return _finish("producto1", checks, {"points": w.poset.n}, table)


def repro_producto2() -> ReproReport:
    """Three-level window: primed points are the degree-one tier and the
    translation action is free with the two expected orbit classes."""
    z9 = G.CyclicGroup(9)
    psi = G.identity_automorphism(z9)
    drr = build_drr_digraph(z9, [1, 3])
    w = EXT.build_window("three-level", z9, drr, psi, radius=1)
    checks = [("window has (2N+1) 2|G| + |G| points", w.poset.n == 3 * 2 * 9 + 9,
               f"{w.poset.n} points")]
    bad = []
    for i in range(w.poset.n):
        g, n, tier = w.names[i]
        if n != 0:
            continue
        one_one = (bin(w.poset.covers_up[i]).count("1") == 1
                   and bin(w.poset.covers_down[i]).count("1") == 1)
        if one_one != (tier == 1):
            bad.append(w.poset.labels[i])
    checks.append(("interior primed points = cover-one points", not bad, str(bad)))
    act = EXT.check_action_on_window(w, max_shift=0)
    checks.append(("action free and interior transitive on the two classes",
                   act.all_ok, f"{act.checked_elements} elements"))
    table = [{"check": n, "ok": ok, "detail": d} for (n, ok, d) in checks]
    return _finish("producto2", checks, {"points": w.poset.n}, table)


def repro_nongraded() -> ReproReport:
    """The gap-two order on 0..6 is a window of a regular representation
    of the integers that admits no rank function."""
    P = EXT.integer_window_poset(0, 6)
    gr = EXT.gradedness(P)
    checks = [("window not graded", not gr.graded, "")]
    chains = EXT.maximal_chains_between(P, 0, 6)
    labels = sorted(tuple(P.labels[i] for i in c) for c in chains)
    expect = sorted([("0", "2", "4", "6"), ("0", "3", "6")])
    checks.append(("witness chains 0-2-4-6 and 0-3-6", labels == expect, str(labels)))
    checks.append(("chain lengths differ", len({len(c) for c in chains}) > 1,
                   str(sorted(len(c) for c in chains))))
    table = [{"chain": " < ".join(P.labels[i] for i in c), "covers": len(c) - 1}
             for c in chains]
    return _finish("nongraded", checks,
                   {"chains": [" < ".join(P.labels[i] for i in c) for c in chains]},
                   table)


REPRO_DRIVERS = {
    "ciclico": repro_ciclico,
    "contraejemplos": repro_contraejemplos,
    "zeta22": repro_zeta22,
    "main-f2": repro_main_f2,
    "main-sl2": repro_main_sl2,
    "corofew": repro_corofew,
    "producto1": repro_producto1,
    "producto2": repro_producto2,
    "nongraded": repro_nongraded,
}
