"""Free-group word algebra: reduction, evaluation, folding, word combination.

A word is a tuple of nonzero ints.  Letter ``i`` (1-based) is the i-th
generator, ``-i`` its inverse.  Every public function returns freely
reduced words, so tuple equality is equality in the free group.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import InvalidParameterError, ParseError

Word = tuple[int, ...]

ALPHABET = "xyzuvw"


def reduce_word(letters: Iterable[int]) -> Word:
    """Freely reduce a letter sequence (cancel adjacent inverse pairs)."""
    stack: list[int] = []
    for a in letters:
        if a == 0:
            raise InvalidParameterError("letter 0 is not a generator")
        if stack and stack[-1] == -a:
            stack.pop()
        else:
            stack.append(a)
    return tuple(stack)


def inverse_word(w: Sequence[int]) -> Word:
    return tuple(-a for a in reversed(w))


def concat(*ws: Sequence[int]) -> Word:
    """Concatenate words and reduce the result."""
    return reduce_word(itertools.chain.from_iterable(ws))


def power_word(u: Sequence[int], k: int) -> Word:
    if k == 0:
        return ()
    base = tuple(u) if k > 0 else inverse_word(u)
    return reduce_word(base * abs(k))


def cyclic_reduce_with_conjugator(w: Sequence[int]) -> tuple[Word, Word]:
    """Split a reduced word as ``a + core + inverse(a)`` with a cyclically reduced core.

    Returns ``(a, core)``; the input must already be freely reduced.
    """
    w = tuple(w)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[:i], w[i:j]


def cyclic_reduce(w: Sequence[int]) -> Word:
    """Cyclically reduce a reduced word (strip cancelling end pairs)."""
    return cyclic_reduce_with_conjugator(w)[1]


def is_cyclically_reduced(w: Sequence[int]) -> bool:
    w = tuple(w)
    if w != reduce_word(w):
        return False
    return len(w) < 2 or w[0] != -w[-1]


def word_rank(w: Sequence[int]) -> int:
    """Highest generator index used by the word (0 for the empty word)."""
    return max((abs(a) for a in w), default=0)


def evaluate(w: Sequence[int], images, group):
    """Evaluate a word at a tuple of group elements.

    ``images[i]`` substitutes generator ``i+1``; inverse letters use
    ``group.inv``.  Works for any object exposing identity/mul/inv.
    """
    if word_rank(w) > len(images):
        raise InvalidParameterError(
            f"word uses generator {word_rank(w)} but only {len(images)} images given")
    acc = group.identity
    for a in w:
        g = images[a - 1] if a > 0 else group.inv(images[-a - 1])
        acc = group.mul(acc, g)
    return acc


def parse_word(text: str) -> Word:
    """Parse whitespace-separated letters; uppercase means inverse.

    ``x y X Y`` is the commutator of the first two generators.  The token
    ``1`` (or an empty string) denotes the empty word.
    """
    tokens = text.split()
    if tokens in ([], ["1"]):
        return ()
    letters = []
    for tok in tokens:
        if len(tok) != 1:
            raise ParseError(f"bad word token {tok!r}: single letters only")
        low = tok.lower()
        if low not in ALPHABET:
            raise ParseError(f"unknown generator letter {tok!r}")
        idx = ALPHABET.index(low) + 1
        letters.append(-idx if tok.isupper() else idx)
    return reduce_word(letters)


def format_word(w: Sequence[int]) -> str:
    if not w:
        return "1"
    out = []
    for a in w:
        c = ALPHABET[abs(a) - 1]
        out.append(c.upper() if a < 0 else c)
    return " ".join(out)


def enumerate_reduced_words(rank: int, max_len: int,
                            exact: int | None = None) -> Iterator[Word]:
    """Yield reduced words of length <= max_len (or == exact) in BFS order."""
    letters = [i for i in range(1, rank + 1)] + [-i for i in range(1, rank + 1)]
    letters.sort(key=abs)
    frontier: list[Word] = [()]
    if exact is None or exact == 0:
        yield ()
    for length in range(1, max_len + 1):
        nxt = []
        for w in frontier:
            for a in letters:
                if w and w[-1] == -a:
                    continue
                nw = w + (a,)
                nxt.append(nw)
                if exact is None or length == exact:
                    yield nw
        frontier = nxt


def primitive_root(w: Sequence[int]) -> tuple[Word, int]:
    """Return ``(u, l)`` with ``w == u**l``, ``l >= 1`` and u not a proper power.

    Uses the conjugate decomposition ``w = a c a^-1``: the core c is a
    literal concatenation of copies of its primitive period, found by a
    divisor scan.
    """
    w = tuple(w)
    if not w:
        raise InvalidParameterError("the empty word has no primitive root")
    pre, core = cyclic_reduce_with_conjugator(w)
    n = len(core)
    for q in range(1, n + 1):
        if n % q:
            continue
        z = core[:q]
        if z * (n // q) == core:
            root = pre + z + inverse_word(pre)
            return root, n // q
    raise AssertionError("unreachable: every word is a power of itself")


# ---------------------------------------------------------------------------
# Stallings folding
# ---------------------------------------------------------------------------

@dataclass
class StallingsGraph:
    """Folded core graph of a finitely generated subgroup of a free group.

    Vertices are ints with base vertex 0; edges are (src, label, dst) with
    labels 1..d.  After ``fold()`` no vertex carries two equal-label edges
    in the same direction; ``trim()`` removes non-base hanging trees.
    """

    edges: set[tuple[int, int, int]] = field(default_factory=set)
    vertices: set[int] = field(default_factory=lambda: {0})
    _next: int = 1

    @classmethod
    def from_words(cls, words: Iterable[Sequence[int]]) -> "StallingsGraph":
        g = cls()
        edge_list = []
        for w in words:
            cur = 0
            w = tuple(w)
            for i, a in enumerate(w):
                nxt = 0 if i == len(w) - 1 else g._fresh()
                if a > 0:
                    edge_list.append((cur, a, nxt))
                else:
                    edge_list.append((nxt, -a, cur))
                cur = nxt
        g.edges = set(edge_list)
        g.fold()
        g.trim()
        return g

    def _fresh(self) -> int:
        v = self._next
        self._next += 1
        self.vertices.add(v)
        return v

    def fold(self) -> None:
        parent = {v: v for v in self.vertices}

        def find(v: int) -> int:
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        changed = True
        while changed:
            changed = False
            out: dict[tuple[int, int], int] = {}
            inc: dict[tuple[int, int], int] = {}
            for (u, lab, v) in self.edges:
                u, v = find(u), find(v)
                for key, other, new in (((u, lab), out, v), ((v, lab), inc, u)):
                    seen = other.get(key)
                    if seen is None:
                        other[key] = new
                    elif find(seen) != find(new):
                        parent[find(seen)] = find(new)
                        changed = True
                if changed:
                    break
            if changed:
                continue
        self.edges = {(find(u), lab, find(v)) for (u, lab, v) in self.edges}
        self.vertices = {find(v) for v in self.vertices}

    def trim(self) -> None:
        # repeatedly drop degree-1 vertices other than the base
        while True:
            deg: dict[int, int] = {v: 0 for v in self.vertices}
            for (u, _, v) in self.edges:
                deg[u] += 1
                deg[v] += 1
            leaves = {v for v, d in deg.items() if d <= 1 and v != 0}
            if not leaves:
                return
            self.vertices -= leaves
            self.edges = {e for e in self.edges
                          if e[0] not in leaves and e[2] not in leaves}

    @property
    def rank(self) -> int:
        """First Betti number of the folded core (rank of the subgroup)."""
        if not self.edges:
            return 0
        return len(self.edges) - len(self.vertices) + 1


@dataclass
class RankResult:
    rank: int
    root: Word | None = None
    exponents: tuple[int, int] | None = None


def stallings_rank(w1: Sequence[int], w2: Sequence[int]) -> RankResult:
    """Rank of the subgroup generated by two words, via fold-and-trim.

    In the rank-1 case also returns a common root u and exponents (l, m)
    with ``w1 == u**l`` and ``w2 == u**m``.
    """
    w1, w2 = reduce_word(w1), reduce_word(w2)
    graph = StallingsGraph.from_words([w for w in (w1, w2) if w])
    r = graph.rank
    if r != 1:
        return RankResult(rank=r)
    anchor = w1 if w1 else w2
    root, _ = primitive_root(anchor)
    exps = []
    for w in (w1, w2):
        if not w:
            exps.append(0)
            continue
        _, core = cyclic_reduce_with_conjugator(w)
        _, root_core = cyclic_reduce_with_conjugator(root)
        k = len(core) // len(root_core)
        for m in (k, -k):
            if power_word(root, m) == w:
                exps.append(m)
                break
        else:
            raise AssertionError(f"rank-1 subgroup but {w} is not a power of {root}")
    return RankResult(rank=1, root=root, exponents=(exps[0], exps[1]))


def combine_words(words: Sequence[Sequence[int]]) -> Word:
    """Combine equations: the result is solved by every solution of any input.

    Pairwise left to right: two words spanning a cyclic subgroup ``<u>``
    combine to ``u**(l*m)``; an independent pair combines to its commutator.
    Every input must be nontrivial and the result is nontrivial.
    """
    ws = [reduce_word(w) for w in words]
    if not ws:
        raise InvalidParameterError("need at least one word")
    if any(not w for w in ws):
        raise InvalidParameterError("all input words must be nontrivial")
    acc = ws[0]
    for nxt in ws[1:]:
        res = stallings_rank(acc, nxt)
        if res.rank == 1:
            l, m = res.exponents
            acc = power_word(res.root, l * m)
        else:
            acc = concat(acc, nxt, inverse_word(acc), inverse_word(nxt))
        assert acc, "combination of nontrivial words collapsed"
    return acc
