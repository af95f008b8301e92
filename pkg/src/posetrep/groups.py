"""Group families with canonical hashable element encodings.

Elements are plain immutable values (ints, tuples, symbol pairs); the
group object supplies identity, multiplication, inverse and enumeration.
Two elements are equal exactly when their encodings are equal, so they
can be used freely as dict keys and set members.

Families: cyclic Z_n, the integers Z, elementary powers Z_p^k (as
products), symmetric S_n, dihedral D_n, the quaternion units Q8,
SL2(Z_p), free groups, and direct products.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Any, Callable, Iterator, Sequence

from . import words as W
from .errors import InfiniteGroupError, InvalidParameterError, CapExceededError, ParseError

Element = Any


class Group:
    """Base class; subclasses fill in the element algebra."""

    descriptor: str = "?"
    order: int | None = None  # None means infinite

    @property
    def identity(self) -> Element:
        raise NotImplementedError

    def mul(self, a: Element, b: Element) -> Element:
        raise NotImplementedError

    def inv(self, a: Element) -> Element:
        raise NotImplementedError

    def elements(self) -> Iterator[Element]:
        if self.order is None:
            raise InfiniteGroupError(f"{self.descriptor} is infinite; cannot enumerate")
        raise NotImplementedError

    def label(self, a: Element) -> str:
        return str(a)

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    def power(self, a: Element, k: int) -> Element:
        if k < 0:
            a, k = self.inv(a), -k
        acc = self.identity
        for _ in range(k):
            acc = self.mul(acc, a)
        return acc

    def element_order(self, a: Element) -> int:
        if self.order is None:
            raise InfiniteGroupError("element orders need a finite group")
        acc, k = a, 1
        while acc != self.identity:
            acc = self.mul(acc, a)
            k += 1
        return k

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Group) and self.descriptor == other.descriptor

    def __hash__(self) -> int:
        return hash(self.descriptor)

    def __repr__(self) -> str:
        return f"<group {self.descriptor}>"


class CyclicGroup(Group):
    def __init__(self, n: int):
        if n < 1:
            raise InvalidParameterError(f"cyclic order must be >= 1, got {n}")
        self.n = n
        self.order = n
        self.descriptor = f"z:{n}"

    @property
    def identity(self) -> int:
        return 0

    def mul(self, a: int, b: int) -> int:
        return (a + b) % self.n

    def inv(self, a: int) -> int:
        return (-a) % self.n

    def elements(self) -> Iterator[int]:
        return iter(range(self.n))


class IntegerGroup(Group):
    """The additive integers."""

    descriptor = "z"
    order = None

    @property
    def identity(self) -> int:
        return 0

    def mul(self, a: int, b: int) -> int:
        return a + b

    def inv(self, a: int) -> int:
        return -a


class SymmetricGroup(Group):
    """Permutations of {0..n-1} as image tuples; (s*t)(i) = s[t[i]]."""

    def __init__(self, n: int):
        if n < 1:
            raise InvalidParameterError(f"symmetric degree must be >= 1, got {n}")
        self.n = n
        self.order = math.factorial(n)
        self.descriptor = f"s:{n}"

    @property
    def identity(self) -> tuple[int, ...]:
        return tuple(range(self.n))

    def mul(self, a, b):
        return tuple(a[b[i]] for i in range(self.n))

    def inv(self, a):
        out = [0] * self.n
        for i, j in enumerate(a):
            out[j] = i
        return tuple(out)

    def elements(self):
        return itertools.permutations(range(self.n))

    def label(self, a) -> str:
        # cycle notation on symbols 1..n, matching the usual (12)(3) style
        seen: set[int] = set()
        parts = []
        for i in range(self.n):
            if i in seen or a[i] == i:
                seen.add(i)
                continue
            cyc, j = [], i
            while j not in seen:
                seen.add(j)
                cyc.append(str(j + 1))
                j = a[j]
            parts.append("(" + "".join(cyc) + ")")
        return "".join(parts) if parts else "e"


class DihedralGroup(Group):
    """D_n of order 2n; elements (i, j) meaning rotation^i * flip^j."""

    def __init__(self, n: int):
        if n < 1:
            raise InvalidParameterError(f"dihedral parameter must be >= 1, got {n}")
        self.n = n
        self.order = 2 * n
        self.descriptor = f"d:{n}"

    @property
    def identity(self):
        return (0, 0)

    def mul(self, a, b):
        i1, j1 = a
        i2, j2 = b
        i = (i1 + (i2 if j1 == 0 else -i2)) % self.n
        return (i, j1 ^ j2)

    def inv(self, a):
        i, j = a
        return ((-i) % self.n, 0) if j == 0 else (i, 1)

    def elements(self):
        return ((i, j) for j in (0, 1) for i in range(self.n))

    def label(self, a) -> str:
        i, j = a
        if (i, j) == (0, 0):
            return "e"
        return f"r{i}" if j == 0 else (f"r{i}s" if i else "s")


_Q8_LABELS = ("1", "-1", "i", "-i", "j", "-j", "k", "-k")
# axis products: i*j=k, j*k=i, k*i=j; reversed order flips the sign
_Q8_EPS = {(1, 2): 1, (2, 3): 1, (3, 1): 1, (2, 1): -1, (3, 2): -1, (1, 3): -1}
_Q8_THIRD = {(1, 2): 3, (2, 1): 3, (2, 3): 1, (3, 2): 1, (3, 1): 2, (1, 3): 2}


class QuaternionGroup(Group):
    """Q8 as signed unit symbols (sign, axis) with axis 0 = 1, 1..3 = i, j, k."""

    descriptor = "q8"
    order = 8

    @property
    def identity(self):
        return (1, 0)

    def mul(self, a, b):
        s1, x1 = a
        s2, x2 = b
        s = s1 * s2
        if x1 == 0:
            return (s, x2)
        if x2 == 0:
            return (s, x1)
        if x1 == x2:
            return (-s, 0)
        return (s * _Q8_EPS[(x1, x2)], _Q8_THIRD[(x1, x2)])

    def inv(self, a):
        s, x = a
        return (s, x) if x == 0 else (-s, x)

    def elements(self):
        return ((s, x) for x in range(4) for s in (1, -1))

    def label(self, a) -> str:
        s, x = a
        return _Q8_LABELS[2 * x + (0 if s == 1 else 1)]


class SL2Group(Group):
    """SL2 over Z_p, p prime; elements are row-major tuples (a, b, c, d)."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise InvalidParameterError(f"SL2 needs a prime modulus, got {p}")
        self.p = p
        self.order = p * (p * p - 1)
        self.descriptor = f"sl2:{p}"

    @property
    def identity(self):
        return (1, 0, 0, 1)

    def mul(self, m, n):
        p = self.p
        a, b, c, d = m
        e, f, g, h = n
        return ((a * e + b * g) % p, (a * f + b * h) % p,
                (c * e + d * g) % p, (c * f + d * h) % p)

    def inv(self, m):
        p = self.p
        a, b, c, d = m
        # det is 1, so the adjugate is the inverse
        return (d % p, (-b) % p, (-c) % p, a % p)

    def elements(self):
        p = self.p
        for a in range(p):
            for b in range(p):
                for c in range(p):
                    if a:
                        d = (1 + b * c) * pow(a, -1, p) % p
                        yield (a, b, c, d)
                    elif b:
                        # a = 0: need -bc = 1
                        if (-b * c) % p == 1:
                            for d in range(p):
                                yield (a, b, c, d)

    def label(self, m) -> str:
        a, b, c, d = m
        return f"[[{a},{b}],[{c},{d}]]"


class FreeGroup(Group):
    """Free group of given rank; elements are reduced word tuples."""

    def __init__(self, rank: int = 2):
        if rank < 1:
            raise InvalidParameterError("free group rank must be >= 1")
        self.rank = rank
        self.order = None
        self.descriptor = f"f{rank}"

    @property
    def identity(self) -> W.Word:
        return ()

    def mul(self, a, b):
        return W.concat(a, b)

    def inv(self, a):
        return W.inverse_word(a)

    def generators(self) -> tuple[W.Word, ...]:
        return tuple((i,) for i in range(1, self.rank + 1))

    def label(self, a) -> str:
        return W.format_word(a)


class DirectProductGroup(Group):
    def __init__(self, factors: Sequence[Group], descriptor: str | None = None):
        if not factors:
            raise InvalidParameterError("empty product")
        if any(g.order is None for g in factors):
            raise InvalidParameterError("product factors must be finite")
        self.factors = tuple(factors)
        self.order = math.prod(g.order for g in self.factors)
        self.descriptor = descriptor or "prod(" + ",".join(g.descriptor for g in self.factors) + ")"

    @property
    def identity(self):
        return tuple(g.identity for g in self.factors)

    def mul(self, a, b):
        return tuple(g.mul(x, y) for g, x, y in zip(self.factors, a, b))

    def inv(self, a):
        return tuple(g.inv(x) for g, x in zip(self.factors, a))

    def elements(self):
        return itertools.product(*(g.elements() for g in self.factors))

    def label(self, a) -> str:
        return "(" + ",".join(g.label(x) for g, x in zip(self.factors, a)) + ")"


class TrivialGroup(CyclicGroup):
    def __init__(self):
        super().__init__(1)


# ---------------------------------------------------------------------------
# construction and parsing
# ---------------------------------------------------------------------------

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes(start: int = 2) -> Iterator[int]:
    n = max(2, start)
    while True:
        if is_prime(n):
            yield n
        n += 1


def make_group(family: str, *params: int) -> Group:
    """Construct a group by family tag; see ``parse_group`` for the text form."""
    if family == "cyclic":
        return CyclicGroup(*params)
    if family == "integers":
        return IntegerGroup()
    if family == "symmetric":
        return SymmetricGroup(*params)
    if family == "dihedral":
        return DihedralGroup(*params)
    if family == "quaternion":
        return QuaternionGroup()
    if family == "sl2":
        return SL2Group(*params)
    if family == "free":
        return FreeGroup(*params) if params else FreeGroup(2)
    if family == "elementary":
        p, k = params
        g = DirectProductGroup([CyclicGroup(p) for _ in range(k)],
                               descriptor=f"z{p}^k:{k}")
        return g
    raise InvalidParameterError(f"unknown group family {family!r}")


_ELEM_RE = re.compile(r"^z(\d+)\^k:(\d+)$")


def _split_top_level(body: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in body:
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
            continue
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_group(descriptor: str) -> Group:
    """Parse a CLI group descriptor.

    Grammar: ``z`` (the integers), ``z:6``, ``z2^k:3`` (elementary power),
    ``s:3``, ``d:4``, ``q8``, ``sl2:13``, ``f2``, ``prod(z:3,z:3)``.
    """
    d = descriptor.strip()
    try:
        if d == "z":
            return IntegerGroup()
        if d == "q8":
            return QuaternionGroup()
        if d == "f2":
            return FreeGroup(2)
        m = _ELEM_RE.match(d)
        if m:
            return make_group("elementary", int(m.group(1)), int(m.group(2)))
        if d.startswith("prod(") and d.endswith(")"):
            parts = _split_top_level(d[5:-1])
            return DirectProductGroup([parse_group(p) for p in parts])
        if ":" in d:
            fam, _, arg = d.partition(":")
            n = int(arg)
            fam_map = {"z": "cyclic", "s": "symmetric", "d": "dihedral", "sl2": "sl2"}
            if fam in fam_map:
                return make_group(fam_map[fam], n)
    except InvalidParameterError:
        raise
    except (ValueError, TypeError) as exc:
        raise ParseError(f"bad group descriptor {descriptor!r}: {exc}") from exc
    raise ParseError(f"bad group descriptor {descriptor!r}")


def parse_element(group: Group, text: str) -> Element:
    """Parse one element in a family-appropriate text form."""
    text = text.strip()
    if isinstance(group, (CyclicGroup, IntegerGroup)):
        return int(text) % group.n if isinstance(group, CyclicGroup) else int(text)
    if isinstance(group, DirectProductGroup):
        if text.startswith("(") and text.endswith(")"):
            text = text[1:-1]
        parts = _split_top_level(text)
        if len(parts) != len(group.factors):
            raise ParseError(f"expected {len(group.factors)} components, got {len(parts)}")
        return tuple(parse_element(g, p) for g, p in zip(group.factors, parts))
    if isinstance(group, SymmetricGroup):
        imgs = tuple(int(t) for t in text.replace(",", " ").split())
        if sorted(imgs) != list(range(group.n)):
            raise ParseError(f"{text!r} is not a permutation of 0..{group.n - 1}")
        return imgs
    if isinstance(group, QuaternionGroup):
        table = {lab: (s, x) for x in range(4) for s, lab in
                 ((1, _Q8_LABELS[2 * x]), (-1, _Q8_LABELS[2 * x + 1]))}
        if text not in table:
            raise ParseError(f"unknown quaternion unit {text!r}")
        return table[text]
    if isinstance(group, DihedralGroup):
        i, j = (int(t) for t in text.replace(",", " ").split())
        return (i % group.n, j % 2)
    if isinstance(group, SL2Group):
        nums = [int(t) for t in re.findall(r"-?\d+", text)]
        if len(nums) != 4:
            raise ParseError(f"SL2 element needs 4 entries, got {text!r}")
        m = tuple(v % group.p for v in nums)
        if (m[0] * m[3] - m[1] * m[2]) % group.p != 1:
            raise ParseError(f"{text!r} does not have determinant 1 mod {group.p}")
        return m
    if isinstance(group, FreeGroup):
        return W.parse_word(text)
    raise ParseError(f"no element syntax for {group.descriptor}")


# ---------------------------------------------------------------------------
# generation, closure, automorphisms
# ---------------------------------------------------------------------------

def closure(group: Group, seed: Sequence[Element], cap: int | None = None) -> set[Element]:
    """Subgroup generated by ``seed``, by breadth-first products."""
    seen = {group.identity}
    frontier = [group.identity]
    gens = list(seed) + [group.inv(g) for g in seed]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = group.mul(a, g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
                    if cap is not None and len(seen) > cap:
                        raise CapExceededError(f"closure exceeded cap {cap}")
        frontier = nxt
    return seen


def generates(group: Group, seed: Sequence[Element]) -> bool:
    if group.order is None:
        raise InfiniteGroupError("generation check needs a finite group")
    return len(closure(group, seed)) == group.order


def generating_tuple(group: Group) -> tuple[Element, ...]:
    """Deterministic generating sequence: greedy scan in enumeration order."""
    if group.order is None:
        raise InfiniteGroupError("cannot scan an infinite group")
    gens: list[Element] = []
    have = {group.identity}
    for g in group.elements():
        if g in have:
            continue
        gens.append(g)
        have = closure(group, gens)
        if len(have) == group.order:
            break
    return tuple(gens)


@dataclass(frozen=True)
class GroupAutomorphism:
    """Automorphism as an image table (finite) or a named formula (infinite)."""

    group: Group
    mapping: tuple[tuple[Element, Element], ...] | None = None
    formula: Callable[[Element], Element] | None = None
    inverse_formula: Callable[[Element], Element] | None = None
    name: str = ""

    def __post_init__(self):
        if self.mapping is None and self.formula is None:
            raise InvalidParameterError("automorphism needs a table or a formula")

    @property
    def table(self) -> dict[Element, Element]:
        return dict(self.mapping)

    def __call__(self, a: Element) -> Element:
        if self.mapping is not None:
            return self.table[a]
        return self.formula(a)

    def apply(self, a: Element) -> Element:
        return self(a)

    def inverse(self) -> "GroupAutomorphism":
        if self.mapping is not None:
            return GroupAutomorphism(self.group,
                                     tuple((b, a) for a, b in self.mapping),
                                     name=f"{self.name}^-1" if self.name else "")
        return GroupAutomorphism(self.group, formula=self.inverse_formula,
                                 inverse_formula=self.formula,
                                 name=f"{self.name}^-1" if self.name else "")

    def power_apply(self, a: Element, k: int) -> Element:
        """Apply the k-th power of this automorphism (k may be negative)."""
        f = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            a = f(a)
        return a

    def is_identity(self) -> bool:
        if self.mapping is not None:
            return all(a == b for a, b in self.mapping)
        return self.name == "id"

    def __repr__(self) -> str:
        return f"<aut {self.name or 'table'} of {self.group.descriptor}>"


def identity_automorphism(group: Group) -> GroupAutomorphism:
    if group.order is not None:
        els = list(group.elements())
        return GroupAutomorphism(group, tuple((g, g) for g in els), name="id")
    return GroupAutomorphism(group, formula=lambda a: a,
                             inverse_formula=lambda a: a, name="id")


def negation_automorphism(group: Group) -> GroupAutomorphism:
    """g -> g^-1; an automorphism exactly for abelian groups."""
    if group.order is not None:
        els = list(group.elements())
        mapping = tuple((g, group.inv(g)) for g in els)
        aut = GroupAutomorphism(group, mapping, name="neg")
        if not is_automorphism(group, aut.table):
            raise InvalidParameterError(f"inversion is not an automorphism of {group.descriptor}")
        return aut
    return GroupAutomorphism(group, formula=lambda a: -a,
                             inverse_formula=lambda a: -a, name="neg")


def is_automorphism(group: Group, table: dict[Element, Element]) -> bool:
    els = list(group.elements())
    if set(table.values()) != set(els) or len(table) != len(els):
        return False
    for a in els:
        for b in els:
            if table[group.mul(a, b)] != group.mul(table[a], table[b]):
                return False
    return True


def _extend_homomorphism(group: Group, gens: Sequence[Element],
                         images: Sequence[Element]) -> dict[Element, Element] | None:
    """Extend gen -> image to a full endomorphism table, or None on conflict."""
    table = {group.identity: group.identity}
    frontier = [group.identity]
    while frontier:
        nxt = []
        for a in frontier:
            fa = table[a]
            for g, fg in zip(gens, images):
                b = group.mul(a, g)
                fb = group.mul(fa, fg)
                known = table.get(b)
                if known is None:
                    table[b] = fb
                    nxt.append(b)
                elif known != fb:
                    return None
        frontier = nxt
    if len(table) != group.order:
        return None  # gens did not generate; caller bug
    return table


_AUT_CACHE: dict[tuple[str, int], list[GroupAutomorphism]] = {}


def group_automorphisms(group: Group, cap: int = 16) -> list[GroupAutomorphism]:
    """All automorphisms of a small finite group, in a deterministic order.

    Backtracks over generator images restricted to elements of matching
    order, then extends multiplicatively and keeps the bijective ones.
    """
    if group.order is None:
        raise InfiniteGroupError("automorphism search needs a finite group")
    if group.order > cap:
        raise CapExceededError(f"|G| = {group.order} exceeds automorphism cap {cap}")
    key = (group.descriptor, cap)
    if key in _AUT_CACHE:
        return _AUT_CACHE[key]
    els = list(group.elements())
    gens = generating_tuple(group)
    by_order: dict[int, list[Element]] = {}
    for g in els:
        by_order.setdefault(group.element_order(g), []).append(g)
    candidates = [by_order[group.element_order(g)] for g in gens]
    result = []
    for images in itertools.product(*candidates):
        table = _extend_homomorphism(group, gens, images)
        if table is None:
            continue
        if len(set(table.values())) != group.order:
            continue
        result.append(GroupAutomorphism(group, tuple((g, table[g]) for g in els)))
    _AUT_CACHE[key] = result
    return result


def automorphism_generators(group: Group, cap: int = 16) -> list[GroupAutomorphism]:
    """A small generating subset of Aut(G), greedily extracted."""
    auts = group_automorphisms(group, cap=cap)
    els = list(group.elements())
    index = {g: i for i, g in enumerate(els)}

    def as_perm(a: GroupAutomorphism) -> tuple[int, ...]:
        t = a.table
        return tuple(index[t[g]] for g in els)

    identity_perm = tuple(range(len(els)))
    have: set[tuple[int, ...]] = {identity_perm}
    gen_perms: list[tuple[int, ...]] = []
    gens: list[GroupAutomorphism] = []
    for a in auts:
        pa = as_perm(a)
        if pa in have:
            continue
        gens.append(a)
        gen_perms.append(pa)
        frontier = list(have)
        while frontier:
            nxt = []
            for t in frontier:
                for gp in gen_perms:
                    composed = tuple(gp[x] for x in t)
                    if composed not in have:
                        have.add(composed)
                        nxt.append(composed)
            frontier = nxt
        if len(have) == len(auts):
            break
    return gens


def margulis_generators(p: int) -> tuple[Element, Element]:
    """The standard SL2(Z_p) generator pair [[1,2],[0,1]], [[1,0],[2,1]]."""
    if not is_prime(p) or p <= 2:
        raise InvalidParameterError(f"need an odd prime, got {p}")
    return (1, 2 % p, 0, 1), (1, 0, 2 % p, 1)


def all_groups_up_to(order: int) -> list[Group]:
    """One representative per isomorphism class of order <= the bound (bound <= 8)."""
    if order > 8:
        raise InvalidParameterError("iso-class table only goes up to order 8")
    table = [
        CyclicGroup(1), CyclicGroup(2), CyclicGroup(3), CyclicGroup(4),
        make_group("elementary", 2, 2), CyclicGroup(5), CyclicGroup(6),
        SymmetricGroup(3), CyclicGroup(7), CyclicGroup(8),
        DirectProductGroup([CyclicGroup(4), CyclicGroup(2)]),
        make_group("elementary", 2, 3), DihedralGroup(4), QuaternionGroup(),
    ]
    return [g for g in table if g.order <= order]
