"""Extensions of the integers: twisted product groups and windowed posets.

The infinite posets obtained by stacking copies of a two-level (or
three-level) block and gluing top to bottom through a twisting
automorphism are represented by finite windows of layers.  Everything
asserted about them is a necessary condition checked on the window;
reports carry that flag explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from .autos import automorphism_group, stabilizer_is_trivial
from .errors import CapExceededError, InvalidParameterError
from .groups import Element, Group, GroupAutomorphism, identity_automorphism
from .posets import FinitePoset, LabeledDigraph, bits, build_cayley_poset


@dataclass
class ExtensionGroupH:
    """Pairs (g, n) with (g1, n1)(g2, n2) = (psi^n2(g1) g2, n1 + n2).

    Isomorphic to the twisted product of the base group with the integers
    via (g, n) -> (psi^-n(g), -n); built so that its left action on the
    glued poset reads off the layer structure directly.
    """

    base: Group
    psi: GroupAutomorphism

    @property
    def identity(self) -> tuple[Element, int]:
        return (self.base.identity, 0)

    def twist(self, g: Element, n: int) -> Element:
        return self.psi.power_apply(g, n)

    def mul(self, a: tuple[Element, int], b: tuple[Element, int]) -> tuple[Element, int]:
        (g1, n1), (g2, n2) = a, b
        return (self.base.mul(self.twist(g1, n2), g2), n1 + n2)

    def inv(self, a: tuple[Element, int]) -> tuple[Element, int]:
        g, n = a
        return (self.twist(self.base.inv(g), -n), -n)

    def label(self, a) -> str:
        g, n = a
        return f"({self.base.label(g)},{n})"

    def elements_window(self, n_range: int,
                        base_elements: Sequence[Element] | None = None) -> Iterator:
        els = list(self.base.elements()) if base_elements is None else list(base_elements)
        for n in range(-n_range, n_range + 1):
            for g in els:
                yield (g, n)

    def semidirect_mul(self, a, b):
        """Operation of the plain twisted product (g, n)(h, m) = (g psi^n(h), n + m)."""
        (g1, n1), (g2, n2) = a, b
        return (self.base.mul(g1, self.twist(g2, n1)), n1 + n2)

    def iso_to_semidirect(self, a):
        g, n = a
        return (self.twist(g, -n), -n)

    def axioms_report(self, n_range: int = 3,
                      base_elements: Sequence[Element] | None = None) -> dict:
        """Check the group laws and the twisted-product isomorphism on the
        full element window (pairs with |n| <= n_range)."""
        els = list(self.elements_window(n_range, base_elements))
        e = self.identity
        ident_ok = all(self.mul(e, a) == a == self.mul(a, e) for a in els)
        inv_ok = all(self.mul(a, self.inv(a)) == e == self.mul(self.inv(a), a)
                     for a in els)
        small = els if len(els) <= 70 else els[::max(1, len(els) // 70)]
        assoc_ok = all(self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
                       for a in small for b in small for c in small)
        iso_ok = all(self.iso_to_semidirect(self.mul(a, b))
                     == self.semidirect_mul(self.iso_to_semidirect(a),
                                            self.iso_to_semidirect(b))
                     for a in small for b in small)
        return {"elements": len(els), "identity": ident_ok, "inverses": inv_ok,
                "associativity": assoc_ok, "iso_to_semidirect": iso_ok,
                "all": ident_ok and inv_ok and assoc_ok and iso_ok}


def h_group(base: Group, psi: GroupAutomorphism) -> ExtensionGroupH:
    if psi.group != base:
        raise InvalidParameterError("automorphism acts on a different group")
    if base.order is not None and not _is_automorphism_table(base, psi):
        raise InvalidParameterError("psi is not an automorphism of the base group")
    return ExtensionGroupH(base, psi)


def _is_automorphism_table(base: Group, psi: GroupAutomorphism) -> bool:
    from .groups import is_automorphism
    if psi.mapping is None:
        return True
    return is_automorphism(base, psi.table)


# ---------------------------------------------------------------------------
# windowed posets
# ---------------------------------------------------------------------------

@dataclass
class WindowedPoset:
    """Finite window of the layered poset, with layer bookkeeping.

    For the two-level kind, point names are (g, layer): the primed copy of
    layer n is identified with the plain copy of layer n + 1, so layers
    run -N .. N+1.  For the three-level kind names are (g, layer, tier)
    with tier 0 (plain) or 1 (primed); double-primes are the next layer's
    plain copy.
    """

    kind: str
    group: Group
    psi: GroupAutomorphism
    radius: int
    poset: FinitePoset
    names: list
    layer_of: list[int]
    h: ExtensionGroupH
    base_elements: list

    def index_of(self, name) -> int:
        return self._index[name]

    def __post_init__(self):
        self._index = {name: i for i, name in enumerate(self.names)}

    def act(self, h_elem: tuple[Element, int], point: int) -> int | None:
        """Image of a point under (g1, n1); None when it leaves the window."""
        g1, n1 = h_elem
        name = self.names[point]
        if self.kind == "two-level":
            g2, k = name
            new = (self.group.mul(self.h.twist(g1, k), g2), n1 + k)
        else:
            g2, k, tier = name
            new = (self.group.mul(self.h.twist(g1, k), g2), n1 + k, tier)
        return self._index.get(new)


def _psi_or_identity(group: Group, psi: GroupAutomorphism | None) -> GroupAutomorphism:
    return identity_automorphism(group) if psi is None else psi


def build_window(kind: str, group: Group, data, psi: GroupAutomorphism | None = None,
                 radius: int = 2, base_window: int | None = None,
                 point_cap: int = 4096, verify_base: bool = True) -> WindowedPoset:
    """Glue 2N+1 copies of the base block through the twisting automorphism.

    kind "two-level": data is a connection set; copies of the Cayley poset
    are glued by (g', n) = (psi(g), n+1).  The connection must give a
    Cayley representation (checked exhaustively for small finite groups
    when verify_base is set) and the base group must not be Z_2.

    kind "three-level": data is a digraph on the group (or a ready-made
    three-copy poset); copies are glued by (g'', n) = (psi(g), n+1).

    Infinite base groups need ``base_window``: base elements are then the
    integers in [-M, M] and boundary-clipped relations are dropped.
    """
    psi = _psi_or_identity(group, psi)
    if radius < 1:
        raise InvalidParameterError("window radius must be >= 1")
    h = ExtensionGroupH(group, psi)
    if group.order is None:
        if base_window is None:
            raise InvalidParameterError("infinite base group needs base_window")
        base_els = list(range(-base_window, base_window + 1))
    else:
        base_els = list(group.elements())

    if kind in ("two-level", "p1", "producto1"):
        kind = "two-level"
        connection = list(data)
        if group.order == 2:
            raise InvalidParameterError("the two-element group is excluded for this kind")
        if verify_base and group.order is not None and group.order <= 32:
            from .search import is_cayley_representation
            ok, _ = is_cayley_representation(group, connection)
            if not ok:
                raise InvalidParameterError(
                    "the connection set is not a Cayley representation of the base")
        names = [(g, n) for n in range(-radius, radius + 2) for g in base_els]
        if len(names) > point_cap:
            raise CapExceededError(f"{len(names)} window points exceed {point_cap}")
        index = {nm: i for i, nm in enumerate(names)}
        pairs = []
        for n in range(-radius, radius + 1):
            for g in base_els:
                for s in connection:
                    gs = group.mul(g, s)
                    target = (psi(gs), n + 1)
                    if (g, n) in index and target in index:
                        pairs.append((index[(g, n)], index[target]))
        layer = [n for (g, n) in names]
    elif kind in ("three-level", "p2", "producto2"):
        kind = "three-level"
        if group.order is None:
            raise InvalidParameterError("the three-level kind needs a finite base")
        exceptions = {"z2^k:2", "z2^k:3", "z2^k:4", "z3^k:2"}
        if group.descriptor in exceptions:
            raise InvalidParameterError(f"{group.descriptor} is excluded for this kind")
        if isinstance(data, LabeledDigraph):
            out = data.out_neighbors()
            els = base_els
            arcs = [(els[u], els[v]) for u in range(len(els)) for v in out[u]]
        else:
            arcs = list(data)
        names = []
        for n in range(-radius, radius + 1):
            names += [(g, n, 0) for g in base_els]
            names += [(g, n, 1) for g in base_els]
        names += [(g, radius + 1, 0) for g in base_els]
        if len(names) > point_cap:
            raise CapExceededError(f"{len(names)} window points exceed {point_cap}")
        index = {nm: i for i, nm in enumerate(names)}
        pairs = []
        for n in range(-radius, radius + 1):
            for g in base_els:
                pairs.append((index[(g, n, 0)], index[(g, n, 1)]))
                pairs.append((index[(g, n, 1)], index[(psi(g), n + 1, 0)]))
            for (g, target) in arcs:
                pairs.append((index[(g, n, 0)], index[(psi(target), n + 1, 0)]))
        layer = [nm[1] for nm in names]
    else:
        raise InvalidParameterError(f"unknown window kind {kind!r}")

    labels = []
    for nm in names:
        if kind == "two-level":
            g, n = nm
            labels.append(f"({group.label(g)},{n})")
        else:
            g, n, tier = nm
            labels.append(f"({group.label(g)},{n}){chr(39) * tier}")
    poset = FinitePoset.from_relations(labels, pairs, cap=point_cap)
    return WindowedPoset(kind, group, psi, radius, poset, names, layer, h, base_els)


# ---------------------------------------------------------------------------
# action checks on windows
# ---------------------------------------------------------------------------

@dataclass
class WindowActionReport:
    kind: str
    checked_elements: int
    order_preserving: bool
    injective: bool
    free: bool
    interior_transitive: bool
    necessary_condition_only: bool = True

    @property
    def all_ok(self) -> bool:
        return (self.order_preserving and self.injective and self.free
                and self.interior_transitive)


def check_action_on_window(window: WindowedPoset, max_shift: int | None = None,
                           element_shift_cap: int = 3) -> WindowActionReport:
    """Necessary-condition checks for the translation action.

    For every group element paired with a layer shift that keeps the
    shifted sub-window inside, the action must be injective,
    order-preserving in both directions, and fixed-point free; the orbit
    of the base point must cover the interior.  For an infinite base the
    order checks are restricted to points far enough from the element
    boundary that clipped relations cannot fake a discrepancy.  Passing
    certifies nothing about the infinite poset beyond this window.
    """
    W = window
    N = W.radius
    max_shift = (N - 1) if max_shift is None else max_shift
    P = W.poset
    finite = W.group.order is not None

    def base_of(i: int):
        return W.names[i][0]

    if finite:
        hs = [(g, n) for n in range(-max_shift, max_shift + 1)
              for g in W.base_elements]
        inner = set(range(P.n))
    else:
        # safe region: relations between points this far from the element
        # boundary close entirely inside the window, so they are exact
        M = max(abs(g) for g in W.base_elements)
        layer_count = 2 * N + 2
        step = 3  # connection sets used here move elements by at most 3
        buffer = step * layer_count + element_shift_cap
        hs = [(g, n) for n in range(-max_shift, max_shift + 1)
              for g in W.base_elements if abs(g) <= element_shift_cap]
        inner = {i for i in range(P.n) if abs(base_of(i)) <= M - buffer}

    order_ok = injective_ok = free_ok = True
    checked = 0
    for h_elem in hs:
        g1, n1 = h_elem
        is_id = (g1 == W.group.identity and n1 == 0)
        images: dict[int, int] = {}
        for i in range(P.n):
            k = W.layer_of[i]
            if not (-N <= k + n1 <= N + 1):
                continue
            j = W.act(h_elem, i)
            if j is None:
                if finite:
                    injective_ok = False  # a layer-legal image must exist
                continue
            images[i] = j
            if not is_id and j == i:
                free_ok = False
        checked += 1
        if len(set(images.values())) != len(images):
            injective_ok = False
        pts = [i for i in images if i in inner and images[i] in inner]
        for i in pts:
            j = images[i]
            for i2 in pts:
                if P.less(i, i2) != P.less(j, images[i2]):
                    order_ok = False
    # interior transitivity: the orbit of the base point of each class hits
    # every interior point of that class (one class for the two-level kind,
    # the primed tier and its complement for the three-level kind)
    if W.kind == "two-level":
        anchors = [(W.group.identity, 0)]
    else:
        anchors = [(W.group.identity, 0, 0), (W.group.identity, 0, 1)]
    transitive_ok = True
    for anchor in anchors:
        e_point = W.index_of(anchor)
        reached = {W.act(h_elem, e_point) for h_elem in hs}
        reached.discard(None)
        if W.kind == "two-level":
            interior = {i for i in range(P.n) if abs(W.layer_of[i]) <= max_shift}
        else:
            tier = anchor[2]
            interior = {i for i in range(P.n)
                        if abs(W.layer_of[i]) <= max_shift and W.names[i][2] == tier}
        if not finite:
            interior = {i for i in interior if abs(base_of(i)) <= element_shift_cap}
        transitive_ok &= interior <= reached
    return WindowActionReport(W.kind, checked, order_ok, injective_ok,
                              free_ok, transitive_ok)


# ---------------------------------------------------------------------------
# gradedness
# ---------------------------------------------------------------------------

@dataclass
class GradednessResult:
    graded: bool
    rank: dict[int, int] | None
    witness: tuple[list[int], list[int]] | None  # two cover paths with a rank clash


def gradedness(P: FinitePoset) -> GradednessResult:
    """Try to rank the poset so covers step by exactly one.

    Walks the cover graph componentwise assigning ranks; a conflict edge
    yields a witness pair of cover paths from the same root whose implied
    ranks disagree.
    """
    rank: dict[int, int] = {}
    path_to: dict[int, list[int]] = {}
    for start in range(P.n):
        if start in rank:
            continue
        rank[start] = 0
        path_to[start] = [start]
        frontier = [start]
        while frontier:
            nxt = []
            for u in frontier:
                for v, step in ([(v, 1) for v in bits(P.covers_up[u])]
                                + [(v, -1) for v in bits(P.covers_down[u])]):
                    expected = rank[u] + step
                    if v not in rank:
                        rank[v] = expected
                        path_to[v] = path_to[u] + [v]
                        nxt.append(v)
                    elif rank[v] != expected:
                        return GradednessResult(False, None,
                                                (path_to[u] + [v], path_to[v]))
            frontier = nxt
    return GradednessResult(True, rank, None)


def verify_rank_function(P: FinitePoset, rank: dict[int, int]) -> bool:
    for i in range(P.n):
        for j in bits(P.up[i]):
            if rank[i] >= rank[j]:
                return False
        for j in bits(P.covers_up[i]):
            if rank[j] != rank[i] + 1:
                return False
    return True


def maximal_chains_between(P: FinitePoset, a: int, b: int) -> list[list[int]]:
    """All saturated chains (successive covers) from a up to b."""
    out: list[list[int]] = []

    def walk(u: int, chain: list[int]):
        if u == b:
            out.append(chain[:])
            return
        for v in bits(P.covers_up[u]):
            if v == b or P.less(v, b):
                chain.append(v)
                walk(v, chain)
                chain.pop()

    walk(a, [a])
    return out


def integer_window_poset(lo: int, hi: int, gap: int = 2) -> FinitePoset:
    """The integers lo..hi ordered by a < b when b - a >= gap."""
    labels = [str(v) for v in range(lo, hi + 1)]
    pairs = [(i, j) for i in range(hi - lo + 1) for j in range(hi - lo + 1)
             if (j - i) >= gap]
    return FinitePoset.from_relations(labels, pairs)


# ---------------------------------------------------------------------------
# rank epimorphism surrogate
# ---------------------------------------------------------------------------

@dataclass
class RankEpimorphismReport:
    additive: bool
    image_is_interval: bool
    image: list[int]
    pairs_checked: int

    @property
    def all_ok(self) -> bool:
        return self.additive and self.image_is_interval


def rank_epimorphism_check(window: WindowedPoset, rank: dict[int, int],
                           max_shift: int | None = None) -> RankEpimorphismReport:
    """Window surrogate of the rank-induced map onto the integers.

    f(h) = rank(h . base point), normalized to 0 at the base point; checks
    additivity on pairs whose product stays checkable and that the image
    is a symmetric integer interval.
    """
    W = window
    N = W.radius
    max_shift = (N - 1) if max_shift is None else max_shift
    base_name = (W.group.identity, 0) if W.kind == "two-level" else (W.group.identity, 0, 0)
    e_point = W.index_of(base_name)
    offset = rank[e_point]

    def f(h_elem) -> int | None:
        j = W.act(h_elem, e_point)
        return None if j is None else rank[j] - offset

    hs = [(g, n) for n in range(-max_shift, max_shift + 1) for g in W.base_elements]
    values = {}
    for h_elem in hs:
        v = f(h_elem)
        if v is not None:
            values[h_elem] = v
    additive = True
    checked = 0
    for h1, v1 in values.items():
        for h2, v2 in values.items():
            prod = W.h.mul(h1, h2)
            if prod in values:
                checked += 1
                if values[prod] != v1 + v2:
                    additive = False
    image = sorted(set(values.values()))
    interval = image == list(range(min(image), max(image) + 1)) and -min(image) == max(image)
    return RankEpimorphismReport(additive, interval, image, checked)
