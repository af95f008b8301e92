"""Executable certificate: girth above 21 forces a Cayley representation.

The connection set is S = {e, x, x^2, x^4, y, y^3}.  When the Cayley
graph on (x, y) has no relation of length <= 21, the radius-7 ball
agrees with the free group's, so the affinity table around the identity
must coincide with the table computed exactly in the free group.  The
certificate recomputes that table in the target group and compares.
The condition is sufficient only: small-girth groups may still admit a
representation, which ``cross_validate_small`` demonstrates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import log, sqrt
from typing import Iterable, Sequence

from . import words as W
from .cayley import GirthResult, girth, neighborhood
from .errors import InvalidParameterError
from .groups import Element, FreeGroup, Group, closure, margulis_generators, primes, SL2Group

#: exponents of x and y whose products make up the connection set
CONNECTION_WORDS: tuple[W.Word, ...] = ((), (1,), (1, 1), (1, 1, 1, 1), (2,), (2, 2, 2))

GIRTH_THRESHOLD = 21

_F2 = FreeGroup(2)


def connection_set(group: Group, x: Element, y: Element) -> list[Element]:
    """S = {e, x, x^2, x^4, y, y^3} evaluated in the group."""
    return [W.evaluate(w, (x, y), group) for w in CONNECTION_WORDS]


def f2_neighborhood_words() -> list[W.Word]:
    """The 27 reduced words filling S S^-1 in the free group."""
    out = []
    for a in CONNECTION_WORDS:
        for b in CONNECTION_WORDS:
            w = W.concat(a, W.inverse_word(b))
            if w not in out:
                out.append(w)
    return out


def f2_reference_table() -> dict[str, int]:
    """Affinities alpha(e, g) for the 26 nonidentity g in S S^-1, exactly.

    Computed by set intersection inside the free group.  Also asserts the
    word-length bookkeeping that lets the table transfer to any group of
    girth above 21: neighborhood members have length <= 7, intersection
    comparisons only ever equate words of total length <= 21.
    """
    ns_e = neighborhood(_F2, CONNECTION_WORDS, ())
    assert len(ns_e) == 27
    assert all(len(w) <= 7 for w in ns_e), "neighborhood word exceeded length 7"
    table: dict[str, int] = {}
    for g in sorted(ns_e, key=lambda w: (len(w), w)):
        if not g:
            continue
        ns_g = neighborhood(_F2, CONNECTION_WORDS, g)
        assert all(len(w) <= 14 for w in ns_g)
        # any equality tested below compares words of length <= 7 and <= 14,
        # so only relations of length <= 21 could disturb it in a quotient
        table[W.format_word(g)] = len(ns_e & ns_g)
    assert len(table) == 26
    return table


@dataclass
class MainTheoremCertificate:
    descriptor: str
    generator_labels: tuple[str, str]
    girth_result: GirthResult
    applicable: bool
    reason: str
    generation: str                      # "verified" | "assumed (...)"
    connection_labels: list[str] = field(default_factory=list)
    neighborhood_size: int | None = None
    affinity_table: dict[str, int] | None = None
    table_matches_free: bool | None = None
    unique_upper_bound_ok: bool | None = None
    power_chain_upper_bound_ok: bool | None = None
    sufficient_only: bool = True

    def to_json_dict(self) -> dict:
        gr = self.girth_result
        return {
            "schema": 1,
            "group": self.descriptor,
            "generators": list(self.generator_labels),
            "girth": gr.girth if gr.girth is not None else f"> {gr.limit}",
            "girth_witness": W.format_word(gr.witness) if gr.witness else None,
            "applicable": self.applicable,
            "reason": self.reason,
            "generation": self.generation,
            "connection": self.connection_labels,
            "neighborhood_size": self.neighborhood_size,
            "affinity_table": self.affinity_table,
            "table_matches_free": self.table_matches_free,
            "unique_upper_bound_ok": self.unique_upper_bound_ok,
            "power_chain_upper_bound_ok": self.power_chain_upper_bound_ok,
            "sufficient_only": self.sufficient_only,
        }


def certify(group: Group, x: Element, y: Element, limit: int = 22,
            generation_cap: int = 250_000) -> MainTheoremCertificate:
    """Run the full local certificate for the pair (x, y).

    Checks, in order: generation (by closure, skipped with a note when the
    group is infinite or too large), girth above 21, |S S^-1| = 27,
    equality of the in-group affinity table with the free-group table,
    e' being the only upper bound of {e, y^-1}, and {e, x^2, x^3, x^4}
    having an upper bound.
    """
    labels = (group.label(x), group.label(y))
    if group.order is not None and group.order <= generation_cap:
        generated = len(closure(group, [x, y])) == group.order
        generation = "verified"
        if not generated:
            return MainTheoremCertificate(
                group.descriptor, labels,
                GirthResult(None, limit, None, 0, 0),
                applicable=False, reason="generators do not generate the group",
                generation=generation)
    else:
        generation = ("assumed (infinite group)" if group.order is None
                      else f"assumed (order {group.order} above closure cap)")
    gr = girth(group, [x, y], limit=limit)
    if gr.girth is not None and gr.girth <= GIRTH_THRESHOLD:
        return MainTheoremCertificate(
            group.descriptor, labels, gr, applicable=False,
            reason=f"girth {gr.girth} <= {GIRTH_THRESHOLD}", generation=generation)

    s = connection_set(group, x, y)
    cert = MainTheoremCertificate(
        group.descriptor, labels, gr, applicable=True,
        reason=f"girth > {GIRTH_THRESHOLD}", generation=generation,
        connection_labels=[group.label(g) for g in s])
    if len(set(s)) != 6:
        return _fail(cert, "connection words collide in the group")

    ns_e = neighborhood(group, s, group.identity)
    cert.neighborhood_size = len(ns_e)
    if len(ns_e) != 27:
        return _fail(cert, f"|S S^-1| = {len(ns_e)}, expected 27")

    reference = f2_reference_table()
    table: dict[str, int] = {}
    for w in f2_neighborhood_words():
        if not w:
            continue
        g = W.evaluate(w, (x, y), group)
        table[W.format_word(w)] = len(ns_e & neighborhood(group, s, g))
    cert.affinity_table = table
    cert.table_matches_free = table == reference
    if not cert.table_matches_free:
        return _fail(cert, "affinity table disagrees with the free-group table")

    inv_y = group.inv(y)
    common = _common_upper_bound_elements(group, s, [group.identity, inv_y])
    cert.unique_upper_bound_ok = common == {group.identity}
    x2 = group.mul(x, x)
    chain = [group.identity, x2, group.mul(x2, x), group.mul(group.mul(x2, x), x)]
    cert.power_chain_upper_bound_ok = bool(_common_upper_bound_elements(group, s, chain))
    if not cert.unique_upper_bound_ok:
        return _fail(cert, "e' is not the unique upper bound of {e, y^-1}")
    if not cert.power_chain_upper_bound_ok:
        return _fail(cert, "{e, x^2, x^3, x^4} has no upper bound")
    return cert


def _fail(cert: MainTheoremCertificate, reason: str) -> MainTheoremCertificate:
    cert.applicable = False
    cert.reason = reason
    return cert


def _common_upper_bound_elements(group: Group, s: Sequence[Element],
                                 points: Sequence[Element]) -> set:
    """Elements h with h' above every given minimal point of P(G, S)."""
    out: set | None = None
    for g in points:
        above = {group.mul(g, a) for a in s}
        out = above if out is None else out & above
    return out or set()


# ---------------------------------------------------------------------------
# Margulis scan
# ---------------------------------------------------------------------------

def margulis_girth_bound(p: int) -> float:
    """Published lower bound 2 log_{1+sqrt 2}(p / 2) - 1 for the girth."""
    return 2 * log(p / 2) / log(1 + sqrt(2)) - 1


@dataclass
class PrimeScanReport:
    threshold: int
    first_prime: int | None
    girths: list[tuple[int, int | None]]       # (p, exact girth or None for > threshold)
    bound_violations: list[int]

    def to_json_dict(self) -> dict:
        return {
            "schema": 1,
            "threshold": self.threshold,
            "first_prime": self.first_prime,
            "girths": [[p, g if g is not None else f"> {self.threshold}"]
                       for (p, g) in self.girths],
            "bound_violations": self.bound_violations,
        }


def margulis_prime_scan(threshold: int = GIRTH_THRESHOLD, start: int = 3,
                        stop: int | None = None) -> PrimeScanReport:
    """Scan odd primes upward for the first girth above the threshold.

    Uses the actual BFS girth rather than the published lower bound: the
    bound is conservative, so the crossing can happen earlier.  The bound
    guarantees the scan terminates; it is also checked per prime.
    """
    girths: list[tuple[int, int | None]] = []
    violations: list[int] = []
    first = None
    for p in primes(start):
        if stop is not None and p > stop:
            break
        if p == 2:
            continue
        sl = SL2Group(p)
        x, y = margulis_generators(p)
        res = girth(sl, [x, y], limit=threshold + 1)
        value = res.girth if (res.girth is not None and res.girth <= threshold) else None
        girths.append((p, res.girth))
        if not res.at_least(margulis_girth_bound(p)):
            violations.append(p)
        if value is None:
            first = p
            break
    return PrimeScanReport(threshold, first, girths, violations)


# ---------------------------------------------------------------------------
# cross-validation against brute force on small groups
# ---------------------------------------------------------------------------

def cross_validate_small(ns: Iterable[int] = (5, 8, 9)) -> list[dict]:
    """Show the certificate is sufficient, never necessary.

    For small cyclic groups (generators 1 and 3): the certificate always
    declines (tiny girth), yet the exhaustive search may still find a
    representation.  Consistency means: certificate applicable implies a
    representation exists; no claim the other way.
    """
    from .groups import CyclicGroup
    from .search import search_cayley
    out = []
    for n in ns:
        g = CyclicGroup(n)
        cert = certify(g, 1 % n, 3 % n)
        rep = search_cayley(g)
        consistent = (not cert.applicable) or rep.outcome == "found"
        out.append({
            "group": g.descriptor,
            "certificate_applicable": cert.applicable,
            "certificate_reason": cert.reason,
            "search_outcome": rep.outcome,
            "search_found": rep.found,
            "consistent": consistent,
        })
    return out


# ---------------------------------------------------------------------------
# the reference tree around the identity (figure analogue)
# ---------------------------------------------------------------------------

@dataclass
class NeighborhoodTree:
    """Smallest subtree of the free Cayley graph spanning S S^-1.

    ``nodes`` are reduced words (prefix closure of the 27 members);
    ``member`` flags the words that lie in S S^-1; ``affinity`` labels
    the nonidentity members.
    """

    nodes: list[W.Word]
    edges: list[tuple[W.Word, W.Word]]
    member: dict[W.Word, bool]
    affinity: dict[W.Word, int]


def f2_neighborhood_tree() -> NeighborhoodTree:
    members = f2_neighborhood_words()
    nodes: list[W.Word] = []
    seen = set()
    for w in members:
        for k in range(len(w) + 1):
            pre = w[:k]
            if pre not in seen:
                seen.add(pre)
                nodes.append(pre)
    nodes.sort(key=lambda w: (len(w), w))
    edges = [(w[:-1], w) for w in nodes if w]
    member = {w: (w in set(members)) for w in nodes}
    table = f2_reference_table()
    affinity = {w: table[W.format_word(w)] for w in nodes if member[w] and w}
    return NeighborhoodTree(nodes, edges, member, affinity)
