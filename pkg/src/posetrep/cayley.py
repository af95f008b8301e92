"""Cayley graphs: girth by collision BFS, neighborhoods, affinity, balls.

Girth here is the length of the shortest nontrivial reduced word in the
generators that evaluates to the identity.  Multigraph conventions: a
generator equal to the identity gives a loop (girth 1); an involution,
a repeated generator, or a generator pair (g, g^-1) gives a double edge
(girth 2).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import words as W
from .errors import CapExceededError, InvalidParameterError
from .groups import Element, Group


@dataclass
class CayleyGraph:
    """Group with a generator list; adjacency is computed lazily."""

    group: Group
    generators: tuple[Element, ...]

    def __post_init__(self):
        if not self.generators:
            raise InvalidParameterError("generator list must be nonempty")

    @property
    def degree(self) -> int:
        """Loops count 1, involution edges are doubled, so the convention is
        1 per generator of order <= 2 and 2 otherwise, with multiplicity."""
        d = 0
        for g in self.generators:
            if g == self.group.identity or self.group.mul(g, g) == self.group.identity:
                d += 1
            else:
                d += 2
        return d

    def neighbors(self, v: Element) -> list[Element]:
        out = []
        for g in self.generators:
            out.append(self.group.mul(v, g))
            out.append(self.group.mul(v, self.group.inv(g)))
        return out


@dataclass
class GirthResult:
    girth: int | None          # exact value when <= limit, else None
    limit: int
    witness: W.Word | None     # a shortest trivial word when girth <= limit
    nodes: int                 # elements touched by the search
    radius: int                # last fully expanded BFS level

    @property
    def exceeded(self) -> bool:
        return self.girth is None

    def at_least(self, bound: float) -> bool:
        value = self.girth if self.girth is not None else self.limit + 1
        return value >= bound

    def __str__(self) -> str:
        return f"> {self.limit}" if self.girth is None else str(self.girth)


def _letter_images(group: Group, gens: Sequence[Element]):
    images = {}
    for i, g in enumerate(gens, start=1):
        images[i] = g
        images[-i] = group.inv(g)
    return images


def _degenerate_girth(group: Group, gens: Sequence[Element]) -> tuple[int, W.Word] | None:
    e = group.identity
    for i, g in enumerate(gens, start=1):
        if g == e:
            return 1, (i,)
        if group.mul(g, g) == e:
            return 2, (i, i)
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if gens[i] == gens[j]:
                return 2, (i + 1, -(j + 1))
            if gens[i] == group.inv(gens[j]):
                return 2, (i + 1, j + 1)
    return None


def girth(group: Group, gens: Sequence[Element], limit: int = 24,
          node_cap: int = 4_000_000) -> GirthResult:
    """Shortest relation length among the generators, up to ``limit``.

    Collision BFS over group elements: after fully expanding radius k the
    search has decided every relation of length <= 2k + 2, so levels
    0..ceil(limit/2) - 1 suffice.  Words are kept reduced by never
    undoing the letter that discovered an element.
    """
    gens = list(gens)
    deg = _degenerate_girth(group, gens)
    if deg is not None:
        g, wit = deg
        if g <= limit:
            return GirthResult(g, limit, wit, nodes=1, radius=0)
        return GirthResult(None, limit, None, nodes=1, radius=0)

    images = _letter_images(group, gens)
    letters = sorted(images, key=lambda a: (abs(a), a < 0))
    e = group.identity
    # info: element -> (distance, parent element, letter used to arrive)
    info: dict[Element, tuple[int, Element | None, int | None]] = {e: (0, None, None)}
    frontier: list[Element] = [e]
    best: int | None = None
    best_edge = None
    k_max = max(0, (limit + 1) // 2 - 1) if limit >= 2 else 0
    k = 0
    while frontier and k <= k_max:
        nxt: list[Element] = []
        for u in frontier:
            du, _, lu = info[u]
            for a in letters:
                if lu is not None and a == -lu:
                    continue  # reduced words only: no immediate backtrack
                v = group.mul(u, images[a])
                got = info.get(v)
                if got is None:
                    if len(info) >= node_cap:
                        raise CapExceededError(
                            f"girth BFS exceeded {node_cap} nodes at radius {k}")
                    info[v] = (du + 1, u, a)
                    nxt.append(v)
                else:
                    cand = du + 1 + got[0]
                    if best is None or cand < best:
                        best, best_edge = cand, (u, a, v)
        if best is not None and best <= 2 * k + 2:
            break
        frontier = nxt
        k += 1
    if best is not None and best <= limit:
        u, a, v = best_edge
        word = W.concat(_word_to(info, u), (a,), W.inverse_word(_word_to(info, v)))
        assert len(word) == best and word, "witness does not match the candidate length"
        return GirthResult(best, limit, word, nodes=len(info), radius=k)
    return GirthResult(None, limit, None, nodes=len(info), radius=k)


def _word_to(info, v) -> W.Word:
    letters = []
    while True:
        _, parent, letter = info[v]
        if parent is None:
            break
        letters.append(letter)
        v = parent
    return tuple(reversed(letters))


def naive_girth(group: Group, gens: Sequence[Element], limit: int = 10) -> int | None:
    """Oracle: scan all reduced words by length for the first trivial one."""
    e = group.identity
    for length in range(1, limit + 1):
        for w in W.enumerate_reduced_words(len(gens), length, exact=length):
            if W.evaluate(w, gens, group) == e:
                return length
    return None


# ---------------------------------------------------------------------------
# neighborhoods and affinity
# ---------------------------------------------------------------------------

def neighborhood(group: Group, connection: Iterable[Element], g: Element) -> frozenset:
    """The set g S S^-1."""
    s = list(dict.fromkeys(connection))
    if not s:
        raise InvalidParameterError("connection set must be nonempty")
    out = set()
    for a in s:
        ga = group.mul(g, a)
        for b in s:
            out.add(group.mul(ga, group.inv(b)))
    return frozenset(out)


def affinity(group: Group, connection: Iterable[Element], g: Element, h: Element) -> int:
    """Size of the overlap of the S-neighborhoods of g and h."""
    s = list(dict.fromkeys(connection))
    return len(neighborhood(group, s, g) & neighborhood(group, s, h))


# ---------------------------------------------------------------------------
# balls
# ---------------------------------------------------------------------------

@dataclass
class BfsBall:
    """Ball of a given radius around a center in the undirected Cayley graph."""

    group: Group
    generators: tuple[Element, ...]
    center: Element
    radius: int
    dist: dict
    parent: dict  # element -> (parent element, letter)

    @property
    def vertices(self) -> list[Element]:
        return list(self.dist)

    def word_to(self, v: Element) -> W.Word:
        letters = []
        while v != self.center:
            p, a = self.parent[v]
            letters.append(a)
            v = p
        return tuple(reversed(letters))

    def induced_edges(self) -> list[tuple[Element, int, Element]]:
        """Directed generator edges with both ends inside the ball."""
        images = _letter_images(self.group, self.generators)
        out = []
        for v in self.dist:
            for i in range(1, len(self.generators) + 1):
                w = self.group.mul(v, images[i])
                if w in self.dist:
                    out.append((v, i, w))
        return out


def bfs_ball(group: Group, gens: Sequence[Element], radius: int,
             center: Element | None = None, node_cap: int = 4_000_000) -> BfsBall:
    gens = tuple(gens)
    images = _letter_images(group, gens)
    letters = sorted(images, key=lambda a: (abs(a), a < 0))
    c = group.identity if center is None else center
    dist = {c: 0}
    parent: dict = {}
    frontier = [c]
    for k in range(radius):
        nxt = []
        for u in frontier:
            for a in letters:
                v = group.mul(u, images[a])
                if v not in dist:
                    if len(dist) >= node_cap:
                        raise CapExceededError(f"ball exceeded {node_cap} nodes at radius {k}")
                    dist[v] = k + 1
                    parent[v] = (u, a)
                    nxt.append(v)
        frontier = nxt
    return BfsBall(group, gens, c, radius, dist, parent)


def ball_signature(ball: BfsBall) -> tuple:
    """(vertex count, undirected edge count, degree multiset, tree code).

    The tree code is a canonical rooted-tree encoding when the induced
    ball is a tree, else None.  Equal signatures on two balls of equal
    radius certify the degree-level agreement used by the local
    isometry argument; for trees they certify isomorphism.
    """
    verts = set(ball.dist)
    adj: dict = {v: set() for v in verts}
    for (v, _, w) in ball.induced_edges():
        if v != w:
            adj[v].add(w)
            adj[w].add(v)
    nedges = sum(len(s) for s in adj.values()) // 2
    degs = tuple(sorted(len(adj[v]) for v in verts))
    code = None
    if nedges == len(verts) - 1:
        def encode(v, prev) -> str:
            return "(" + "".join(sorted(encode(w, v) for w in adj[v] if w != prev)) + ")"
        code = encode(ball.center, None)
    return (len(verts), nedges, degs, code)
