"""Finite posets and the poset/graph constructions on groups.

The strict order is stored as bitmask rows (``up[i]`` holds the points
above i), validated for irreflexivity, antisymmetry and transitivity at
construction.  Builders: the two-level Cayley poset P(G, S), the Haar
bipartite graph B(G, S), the digraph with arcs (g, gs), and the
three-level poset over such a digraph.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import CapExceededError, InvalidParameterError, InfiniteGroupError
from .groups import Element, Group

DEFAULT_POINT_CAP = 256


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def transitive_closure(rows: list[int]) -> list[int]:
    n = len(rows)
    rows = list(rows)
    for k in range(n):
        bit = 1 << k
        rk = rows[k]
        for i in range(n):
            if rows[i] & bit:
                rows[i] |= rk
    return rows


class FinitePoset:
    """Strict partial order on labelled points; immutable after construction."""

    def __init__(self, labels: Sequence[str], up: Sequence[int], validate: bool = True):
        self.labels = tuple(labels)
        self.n = len(self.labels)
        self.up = tuple(up)
        if len(self.up) != self.n:
            raise InvalidParameterError("labels and relation rows disagree in length")
        if validate:
            self._validate()
        self.down = self._transpose(self.up)
        self.covers_up = self._compute_covers()
        self.covers_down = self._transpose(self.covers_up)
        self.minimal_mask = sum(1 << i for i in range(self.n) if self.down[i] == 0)
        self.maximal_mask = sum(1 << i for i in range(self.n) if self.up[i] == 0)
        self.levels = self._levels()
        self.height = max(self.levels, default=0)
        self._affinity: list[list[int]] | None = None

    # -- construction helpers ------------------------------------------------

    @classmethod
    def from_relations(cls, labels: Sequence[str], pairs: Iterable[tuple[int, int]],
                       cap: int = DEFAULT_POINT_CAP) -> "FinitePoset":
        """Close a set of i < j pairs transitively and validate the axioms."""
        n = len(labels)
        if n > cap:
            raise CapExceededError(f"{n} points exceed the poset cap {cap}")
        rows = [0] * n
        for i, j in pairs:
            rows[i] |= 1 << j
        rows = transitive_closure(rows)
        return cls(labels, rows)

    from_covers = from_relations

    def _validate(self) -> None:
        for i in range(self.n):
            if self.up[i] >> i & 1:
                raise InvalidParameterError(f"relation is reflexive at point {i}")
            for j in bits(self.up[i]):
                if self.up[j] >> i & 1:
                    raise InvalidParameterError(f"antisymmetry fails on ({i}, {j})")
                if self.up[j] & ~self.up[i]:
                    raise InvalidParameterError(f"transitivity fails at ({i}, {j})")

    def _transpose(self, rows: Sequence[int]) -> tuple[int, ...]:
        out = [0] * self.n
        for i in range(self.n):
            for j in bits(rows[i]):
                out[j] |= 1 << i
        return tuple(out)

    def _compute_covers(self) -> tuple[int, ...]:
        cov = []
        for i in range(self.n):
            above = self.up[i]
            indirect = 0
            for j in bits(above):
                indirect |= self.up[j]
            cov.append(above & ~indirect)
        return tuple(cov)

    def _levels(self) -> tuple[int, ...]:
        # longest chain (in edges) from a minimal point up to each point;
        # iterating by down-set size is a topological order
        level = [0] * self.n
        for i in sorted(range(self.n), key=lambda i: bin(self.down[i]).count("1")):
            lv = 0
            for j in bits(self.covers_down[i]):
                lv = max(lv, level[j] + 1)
            level[i] = lv
        return tuple(level)

    # -- queries --------------------------------------------------------------

    def less(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def comparability_count(self) -> int:
        return sum(bin(m).count("1") for m in self.up)

    def cover_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in bits(self.covers_up[i])]

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = 1
        frontier = [0]
        adj = [self.up[i] | self.down[i] for i in range(self.n)]
        while frontier:
            nxt = []
            for i in frontier:
                for j in bits(adj[i] & ~seen):
                    seen |= 1 << j
                    nxt.append(j)
            frontier = nxt
        return seen == (1 << self.n) - 1

    def opposite(self) -> "FinitePoset":
        return FinitePoset(self.labels, self.down, validate=False)

    def affinity_matrix(self) -> list[list[int]]:
        """For minimal points: alpha(i, j) = #{minimal w sharing an upper
        bound with i} intersected with the same set for j.

        This is an automorphism invariant of any poset; on a Cayley poset
        it equals the connection-set affinity.
        """
        if self._affinity is None:
            reach = [0] * self.n
            for i in bits(self.minimal_mask):
                m = 0
                for w in bits(self.minimal_mask):
                    if self.up[i] & self.up[w]:
                        m |= 1 << w
                reach[i] = m
            mat = [[0] * self.n for _ in range(self.n)]
            for i in bits(self.minimal_mask):
                for j in bits(self.minimal_mask):
                    mat[i][j] = bin(reach[i] & reach[j]).count("1")
            self._affinity = mat
        return self._affinity

    def upper_bounds(self, points: Iterable[int]) -> list[int]:
        mask = None
        for i in points:
            mask = self.up[i] if mask is None else mask & self.up[i]
        return list(bits(mask or 0))

    # -- serialization ----------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {"schema": 1, "points": list(self.labels), "covers": self.cover_pairs()}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"), sort_keys=True)

    @classmethod
    def from_json_dict(cls, data: dict, cap: int = DEFAULT_POINT_CAP) -> "FinitePoset":
        return cls.from_relations(data["points"],
                                  [tuple(p) for p in data["covers"]], cap=cap)

    def __repr__(self) -> str:
        return f"<poset {self.n} points, {self.comparability_count()} relations>"

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, FinitePoset)
                and self.labels == other.labels and self.up == other.up)

    def __hash__(self) -> int:
        return hash((self.labels, self.up))


@dataclass
class LabeledDigraph:
    """Directed graph with labelled vertices; optional bipartition."""

    vertex_labels: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]
    bipartition: tuple[int, int] | None = None  # sizes of the two parts

    def __post_init__(self):
        if self.bipartition:
            a, _ = self.bipartition
            for (u, v) in self.edges:
                if (u < a) == (v < a):
                    raise InvalidParameterError("edge inside a bipartition part")

    @property
    def n(self) -> int:
        return len(self.vertex_labels)

    def out_degree(self, v: int) -> int:
        return sum(1 for (u, _) in self.edges if u == v)

    def out_neighbors(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for (u, v) in self.edges:
            out[u].append(v)
        return out


@dataclass(frozen=True)
class CayleySpec:
    """A group with a connection set, plus the derived structures."""

    group: Group
    connection: tuple[Element, ...]

    @property
    def connection_set(self) -> frozenset:
        return frozenset(self.connection)

    def poset(self, cap: int = DEFAULT_POINT_CAP) -> FinitePoset:
        return build_cayley_poset(self.group, self.connection, cap=cap)

    def complement(self) -> "CayleySpec":
        return complement_connection(self.group, self.connection)


def _check_connection(group: Group, connection: Sequence[Element]) -> list[Element]:
    if group.order is None:
        raise InfiniteGroupError("finite poset construction needs a finite group")
    s = list(dict.fromkeys(connection))
    if not s:
        raise InvalidParameterError("connection set must be nonempty")
    return s


def build_cayley_poset(group: Group, connection: Sequence[Element],
                       cap: int = DEFAULT_POINT_CAP) -> FinitePoset:
    """Height-1 poset on two copies of G with g < h' iff g^-1 h in S."""
    s = _check_connection(group, connection)
    els = list(group.elements())
    if 2 * len(els) > cap:
        raise CapExceededError(f"{2 * len(els)} points exceed the poset cap {cap}")
    index = {g: i for i, g in enumerate(els)}
    n = len(els)
    labels = [group.label(g) for g in els] + [group.label(g) + "'" for g in els]
    rows = [0] * (2 * n)
    for i, g in enumerate(els):
        for x in s:
            rows[i] |= 1 << (n + index[group.mul(g, x)])
    return FinitePoset(labels, rows, validate=False)


def build_haar_graph(group: Group, connection: Sequence[Element]) -> LabeledDigraph:
    """Bipartite graph on G and G' with edges (g, (gs)')."""
    s = _check_connection(group, connection)
    els = list(group.elements())
    index = {g: i for i, g in enumerate(els)}
    n = len(els)
    labels = [group.label(g) for g in els] + [group.label(g) + "'" for g in els]
    edges = []
    for i, g in enumerate(els):
        for x in s:
            edges.append((i, n + index[group.mul(g, x)]))
    return LabeledDigraph(tuple(labels), tuple(sorted(set(edges))), bipartition=(n, n))


def build_drr_digraph(group: Group, connection: Sequence[Element]) -> LabeledDigraph:
    """Digraph on G with arcs (g, gs) for s in the connection set."""
    if group.order is None:
        raise InfiniteGroupError("digraph construction needs a finite group")
    s = list(dict.fromkeys(connection))
    els = list(group.elements())
    index = {g: i for i, g in enumerate(els)}
    edges = []
    for i, g in enumerate(els):
        for x in s:
            edges.append((i, index[group.mul(g, x)]))
    return LabeledDigraph(tuple(group.label(g) for g in els), tuple(sorted(set(edges))))


def build_babai_poset(drr: LabeledDigraph, cap: int = DEFAULT_POINT_CAP) -> FinitePoset:
    """Three-copy poset over a digraph: g < g' < g'' and g < h'' per arc (g, h)."""
    m = drr.n
    if 3 * m > cap:
        raise CapExceededError(f"{3 * m} points exceed the poset cap {cap}")
    labels = (list(drr.vertex_labels)
              + [lab + "'" for lab in drr.vertex_labels]
              + [lab + "''" for lab in drr.vertex_labels])
    pairs = []
    for g in range(m):
        pairs.append((g, m + g))
        pairs.append((m + g, 2 * m + g))
    for (g, h) in drr.edges:
        pairs.append((g, 2 * m + h))
    return FinitePoset.from_relations(labels, pairs, cap=cap)


def complement_connection(group: Group, connection: Sequence[Element]) -> CayleySpec:
    """Swap the connection set for its complement in G (S must be proper)."""
    if group.order is None:
        raise InfiniteGroupError("complements need a finite group")
    s = set(connection)
    els = list(group.elements())
    comp = [g for g in els if g not in s]
    if not comp:
        raise InvalidParameterError("connection set already covers the whole group")
    return CayleySpec(group, tuple(comp))


def connection_generates(group: Group, connection: Sequence[Element]) -> bool:
    """Whether S S^-1 generates G (equivalent to the Cayley poset being connected)."""
    s = list(dict.fromkeys(connection))
    seed = [group.mul(a, group.inv(b)) for a in s for b in s]
    from .groups import closure
    return len(closure(group, seed)) == group.order
