"""Exact poset automorphism groups via refinement and backtracking.

The engine colours points, refines the colouring to stability with
order-theoretic invariants (relation counts per colour class, and the
pairwise affinity of minimal points on height-1 posets), then searches
for automorphisms by individualizing a point on the source side and a
candidate image on the target side.  Orbit-stabilizer counting along the
individualization base yields the exact group order without enumerating
the whole group.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .errors import CapExceededError, InvalidParameterError
from .posets import FinitePoset, bits

Perm = tuple[int, ...]


@dataclass
class AutGroup:
    """Automorphism group data: generators, exact order, orbit partition."""

    poset: FinitePoset
    generators: list[Perm]
    order: int
    orbits: list[list[int]]
    base: list[int] = field(default_factory=list)

    @property
    def orbit_count(self) -> int:
        return len(self.orbits)

    def closure_order(self, cap: int = 10_000) -> int:
        """Order recomputed by closing the generators; cross-check helper."""
        n = self.poset.n
        identity = tuple(range(n))
        seen = {identity}
        frontier = [identity]
        while frontier:
            nxt = []
            for p in frontier:
                for g in self.generators:
                    q = tuple(g[x] for x in p)
                    if q not in seen:
                        if len(seen) >= cap:
                            raise CapExceededError(f"closure cap {cap} hit")
                        seen.add(q)
                        nxt.append(q)
            frontier = nxt
        return len(seen)


def is_poset_automorphism(P: FinitePoset, perm: Sequence[int]) -> bool:
    """Exact check that a point bijection preserves the strict order."""
    n = P.n
    if sorted(perm) != list(range(n)):
        return False
    for i in range(n):
        mapped = 0
        for j in bits(P.up[i]):
            mapped |= 1 << perm[j]
        if mapped != P.up[perm[i]]:
            return False
    return True


class _Engine:
    def __init__(self, P: FinitePoset, cap: int):
        if P.n > cap:
            raise CapExceededError(f"{P.n} points exceed the engine cap {cap}")
        self.P = P
        self.n = P.n
        self.use_affinity = P.height == 1 and P.n > 0
        self.alpha = P.affinity_matrix() if self.use_affinity else None
        self.min_points = list(bits(P.minimal_mask))

    # -- colouring -----------------------------------------------------------

    def initial_colors(self) -> tuple[int, ...]:
        return self.refine(tuple([0] * self.n)) if self.n else ()

    def _signatures(self, colors: Sequence[int]) -> list[tuple]:
        ncol = (max(colors) + 1) if colors else 0
        masks = [0] * ncol
        for i, c in enumerate(colors):
            masks[c] |= 1 << i
        P = self.P
        sigs: list[tuple] = []
        for i in range(self.n):
            base = [colors[i]]
            up, down = P.up[i], P.down[i]
            for m in masks:
                base.append(bin(up & m).count("1"))
                base.append(bin(down & m).count("1"))
            if self.use_affinity and P.down[i] == 0:
                row = self.alpha[i]
                pairs = sorted((colors[j], row[j]) for j in self.min_points)
                base.append(tuple(pairs))
            sigs.append(tuple(base))
        return sigs

    def refine(self, colors: tuple[int, ...]) -> tuple[int, ...]:
        """Refine one colouring to stability (source and target identical)."""
        while True:
            sigs = self._signatures(colors)
            keys = sorted(set(sigs))
            rank = {k: r for r, k in enumerate(keys)}
            new = tuple(rank[s] for s in sigs)
            if len(keys) == (max(colors) + 1 if colors else 0):
                return new
            colors = new

    def refine_pair(self, cs: tuple[int, ...], ct: tuple[int, ...]):
        """Refine two colourings in lockstep; None when incompatible."""
        while True:
            sig_s = self._signatures(cs)
            sig_t = self._signatures(ct)
            if sorted(sig_s) != sorted(sig_t):
                return None
            keys = sorted(set(sig_s))
            rank = {k: r for r, k in enumerate(keys)}
            new_s = tuple(rank[s] for s in sig_s)
            new_t = tuple(rank[s] for s in sig_t)
            if len(keys) == max(cs) + 1:
                return new_s, new_t
            cs, ct = new_s, new_t

    @staticmethod
    def individualize(colors: tuple[int, ...], point: int) -> tuple[int, ...]:
        fresh = max(colors) + 1
        out = list(colors)
        out[point] = fresh
        return tuple(out)

    @staticmethod
    def cells(colors: Sequence[int]) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for i, c in enumerate(colors):
            out.setdefault(c, []).append(i)
        return out

    def target_cell(self, colors: Sequence[int]) -> list[int] | None:
        """Smallest non-singleton cell; ties broken by lowest colour id."""
        best: list[int] | None = None
        for c in sorted(self.cells(colors)):
            cell = self.cells(colors)[c]
            if len(cell) >= 2 and (best is None or len(cell) < len(best)):
                best = cell
        return best

    # -- search ----------------------------------------------------------------

    def find_map(self, cs: tuple[int, ...], ct: tuple[int, ...],
                 forbid_identity: bool = False) -> Perm | None:
        pair = self.refine_pair(cs, ct)
        if pair is None:
            return None
        cs, ct = pair
        cell = self.target_cell(cs)
        if cell is None:
            # discrete: read the bijection colour by colour
            pos_t = {c: i for i, c in enumerate(ct)}
            perm = tuple(pos_t[c] for c in cs)
            if forbid_identity and perm == tuple(range(self.n)):
                return None
            if is_poset_automorphism(self.P, perm):
                return perm
            return None
        a = cell[0]
        cell_t = self.cells(ct)[cs[a]]
        for b in cell_t:
            found = self.find_map(self.individualize(cs, a),
                                  self.individualize(ct, b), forbid_identity)
            if found is not None:
                return found
        return None

    def group(self) -> AutGroup:
        colors = self.initial_colors()
        order = 1
        gens: list[Perm] = []
        base: list[int] = []
        while True:
            cell = self.target_cell(colors)
            if cell is None:
                break
            a = cell[0]
            base.append(a)
            level_gens: list[Perm] = []
            orbit = {a}
            for b in cell[1:]:
                if b in orbit:
                    continue
                m = self.find_map(self.individualize(colors, a),
                                  self.individualize(colors, b))
                if m is not None:
                    level_gens.append(m)
                    gens.append(m)
                    orbit = _orbit_closure(orbit, level_gens)
            order *= len(orbit)
            colors = self.refine(self.individualize(colors, a))
        gens = sorted(set(gens))
        return AutGroup(self.P, gens, order, _orbit_partition(self.n, gens), base)


def _orbit_closure(seed: set[int], perms: Sequence[Perm]) -> set[int]:
    orbit = set(seed)
    frontier = list(seed)
    while frontier:
        nxt = []
        for x in frontier:
            for p in perms:
                y = p[x]
                if y not in orbit:
                    orbit.add(y)
                    nxt.append(y)
        frontier = nxt
    return orbit


def _orbit_partition(n: int, perms: Sequence[Perm]) -> list[list[int]]:
    parent = list(range(n))

    def find(x: int) -> int:
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


def automorphism_group(P: FinitePoset, cap: int = 256) -> AutGroup:
    """Full automorphism group with exact order and orbit partition."""
    if P.n == 0:
        return AutGroup(P, [], 1, [])
    return _Engine(P, cap).group()


def stabilizer_is_trivial(P: FinitePoset, point: int,
                          cap: int = 256) -> tuple[bool, Perm | None]:
    """Whether only the identity fixes the point; a witness otherwise.

    Runs a pruned search for a single non-identity automorphism fixing
    the point, without computing the full group.
    """
    if not 0 <= point < P.n:
        raise InvalidParameterError(f"point {point} out of range")
    eng = _Engine(P, cap)
    colors = eng.initial_colors()
    fixed = eng.individualize(colors, point)
    witness = eng.find_map(fixed, fixed, forbid_identity=True)
    return witness is None, witness


def format_permutation(perm: Sequence[int], labels: Sequence[str]) -> str:
    """Cycle notation over point labels, e.g. ``(2 5)(0' 3')``."""
    seen: set[int] = set()
    parts = []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            seen.add(i)
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(labels[j])
            j = perm[j]
        parts.append("(" + " ".join(cyc) + ")")
    return "".join(parts) if parts else "()"


# ---------------------------------------------------------------------------
# action classification
# ---------------------------------------------------------------------------

@dataclass
class RepresentationVerdict:
    """Outcome of classifying a group action on a poset.

    kind is one of ``not-free``, ``semi-regular``, ``regular``,
    ``cayley-representation``; the last two require the action to realize
    the full automorphism group.  ``witness`` carries a non-identity
    automorphism with a fixed point when one is relevant.
    """

    kind: str
    free: bool
    orbit_count: int
    action_order: int
    aut_order: int
    is_full_aut: bool
    height: int
    witness: Perm | None = None
    witness_text: str | None = None

    @property
    def is_representation(self) -> bool:
        return self.is_full_aut


def classify_action(P: FinitePoset, action: dict, group=None,
                    cap: int = 256) -> RepresentationVerdict:
    """Classify an action given as ``{group element: point permutation}``.

    Every permutation must be an automorphism of P; when ``group`` is
    given and small, the homomorphism property is checked on all pairs.
    """
    perms = {g: tuple(p) for g, p in action.items()}
    for g, p in perms.items():
        if not is_poset_automorphism(P, p):
            raise InvalidParameterError(f"action of {g!r} is not an automorphism")
    if group is not None and group.order is not None and group.order <= 64:
        for g1, p1 in perms.items():
            for g2, p2 in perms.items():
                composed = tuple(p1[x] for x in p2)
                if composed != perms[group.mul(g1, g2)]:
                    raise InvalidParameterError("action is not a homomorphism")
    distinct = {tuple(p) for p in perms.values()}
    identity = tuple(range(P.n))
    witness = None
    witness_g = None
    for g, p in perms.items():
        p = tuple(p)
        if p == identity:
            continue
        fixed = [i for i in range(P.n) if p[i] == i]
        if fixed:
            witness, witness_g = p, (g, fixed[0])
            break
    free = witness is None
    orbits = _orbit_partition(P.n, [tuple(p) for p in perms.values()])
    aut = automorphism_group(P, cap=cap)
    full = aut.order == len(distinct)
    if not free:
        kind = "not-free"
        text = (f"{witness_g[0]!r} fixes {P.labels[witness_g[1]]}; "
                + format_permutation(witness, P.labels))
    else:
        if full and len(orbits) == 2 and P.height == 1:
            kind = "cayley-representation"
        elif full and len(orbits) == 1:
            kind = "regular"
        else:
            kind = "semi-regular"
        text = None
        if not full:
            # the action misses some automorphism; report one fixing a point
            for i in range(P.n):
                trivial, w = stabilizer_is_trivial(P, i, cap=cap)
                if not trivial:
                    witness = w
                    text = format_permutation(w, P.labels)
                    break
    return RepresentationVerdict(
        kind=kind, free=free, orbit_count=len(orbits),
        action_order=len(distinct), aut_order=aut.order, is_full_aut=full,
        height=P.height, witness=witness, witness_text=text)


def left_action(group, connection, P: FinitePoset | None = None) -> tuple[FinitePoset, dict]:
    """The left translation action on the Cayley poset of (G, S)."""
    from .posets import build_cayley_poset
    if P is None:
        P = build_cayley_poset(group, connection)
    els = list(group.elements())
    index = {g: i for i, g in enumerate(els)}
    n = len(els)
    action = {}
    for g in els:
        perm = [0] * (2 * n)
        for i, h in enumerate(els):
            k = index[group.mul(g, h)]
            perm[i] = k
            perm[n + i] = n + k
        action[g] = tuple(perm)
    return P, action
