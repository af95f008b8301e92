"""Independent brute-force oracles used to validate the engines.

These deliberately avoid the library's refinement machinery: poset
automorphisms come from literal permutation scans (or plain extension
backtracking with no invariants beyond the order relation itself), and
digraph automorphisms from literal scans.
"""

from __future__ import annotations

import itertools

from posetrep.posets import FinitePoset, LabeledDigraph, bits


def perm_preserves_order(P: FinitePoset, perm) -> bool:
    for i in range(P.n):
        for j in range(P.n):
            if P.less(i, j) != P.less(perm[i], perm[j]):
                return False
    return True


def all_permutation_automorphisms(P: FinitePoset) -> list[tuple[int, ...]]:
    """Literal scan of every permutation; use for n <= 8."""
    rel = {(i, j) for i in range(P.n) for j in bits(P.up[i])}
    out = []
    for perm in itertools.permutations(range(P.n)):
        ok = True
        for (i, j) in rel:
            if (perm[i], perm[j]) not in rel:
                ok = False
                break
        if ok:
            out.append(perm)
    return out


def backtracking_automorphisms(P: FinitePoset) -> list[tuple[int, ...]]:
    """Exhaustive point-by-point extension; no refinement, no invariants.

    Semantically identical to the all-permutations scan but feasible up
    to a dozen points; the two are cross-checked against each other in
    the tests for small sizes.
    """
    n = P.n
    out = []
    image = [-1] * n
    used = [False] * n

    def consistent(i: int, v: int) -> bool:
        for j in range(i):
            w = image[j]
            if P.less(i, j) != P.less(v, w) or P.less(j, i) != P.less(w, v):
                return False
        return True

    def extend(i: int):
        if i == n:
            out.append(tuple(image))
            return
        for v in range(n):
            if not used[v] and consistent(i, v):
                image[i] = v
                used[v] = True
                extend(i + 1)
                used[v] = False
        image[i] = -1

    extend(0)
    return out


def poset_aut_oracle(P: FinitePoset) -> list[tuple[int, ...]]:
    if P.n <= 8:
        return all_permutation_automorphisms(P)
    return backtracking_automorphisms(P)


def orbit_partition(n: int, perms) -> list[list[int]]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in perms:
        for i in range(n):
            a, b = find(i), find(p[i])
            if a != b:
                parent[a] = b
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def digraph_automorphisms(D: LabeledDigraph) -> list[tuple[int, ...]]:
    """Literal permutation scan; use for n <= 9."""
    edges = set(D.edges)
    out = []
    for perm in itertools.permutations(range(D.n)):
        if all((perm[u], perm[v]) in edges for (u, v) in edges):
            out.append(perm)
    return out


def random_poset(rng, n: int) -> FinitePoset:
    """Random DAG closure: upper-triangular coin flips under a shuffle."""
    order = list(range(n))
    rng.shuffle(order)
    pairs = []
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < 0.3:
                pairs.append((order[a], order[b]))
    return FinitePoset.from_relations([str(i) for i in range(n)], pairs)
