"""Small cancellation: pieces, C'(lambda), word counting, random presentations.

A presentation holds cyclically reduced relators over n generators.  The
symmetrized family consists of every rotation of every relator and of
its inverse, kept as marked occurrences (relator, sign, rotation).  A
piece is a common prefix of two distinct occurrences; coincident
rotations of a periodic relator z^m contribute the classical overlap
piece of length |r| - |z|, and textually duplicated relators count as
full-length pieces.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from . import words as W
from .errors import CapExceededError, InvalidParameterError, ParseError

GIRTH_LENGTH_FLOOR = 22   # minimum relator length in the representability rule


@dataclass(frozen=True)
class Presentation:
    generators: int
    relators: tuple[W.Word, ...]

    def __post_init__(self):
        for r in self.relators:
            if not r:
                raise InvalidParameterError("relators must be nontrivial")
            if not W.is_cyclically_reduced(r):
                raise InvalidParameterError(
                    f"relator {W.format_word(r)} is not cyclically reduced")
            if W.word_rank(r) > self.generators:
                raise InvalidParameterError("relator uses an undeclared generator")

    def text(self) -> str:
        gens = ",".join(W.ALPHABET[:self.generators])
        rels = ", ".join(W.format_word(r) for r in self.relators)
        return f"<{gens} | {rels}>"


def parse_presentation(text: str) -> Presentation:
    """Parse ``<x,y | x y X Y, x x x>`` (letters as in word syntax)."""
    t = text.strip()
    if not (t.startswith("<") and t.endswith(">")):
        raise ParseError("presentation must be wrapped in angle brackets")
    body = t[1:-1]
    if "|" not in body:
        raise ParseError("presentation needs a | separating generators and relators")
    gen_part, _, rel_part = body.partition("|")
    gens = [g.strip() for g in gen_part.split(",") if g.strip()]
    for i, g in enumerate(gens):
        if g != W.ALPHABET[i]:
            raise ParseError(f"generators must be named {W.ALPHABET[:len(gens)]!r} in order")
    relators = tuple(W.parse_word(r) for r in rel_part.split(",") if r.strip())
    return Presentation(len(gens), relators)


# ---------------------------------------------------------------------------
# pieces
# ---------------------------------------------------------------------------

def _occurrences(pres: Presentation) -> list[tuple[W.Word, int, int, int]]:
    """All marked rotations: (word, relator index, sign, rotation)."""
    occs = []
    for j, r in enumerate(pres.relators):
        for sign, base in ((1, r), (-1, W.inverse_word(r))):
            for rot in range(len(base)):
                occs.append((base[rot:] + base[:rot], j, sign, rot))
    return occs


def _lcp(a: Sequence[int], b: Sequence[int]) -> int:
    n = min(len(a), len(b))
    for i in range(n):
        if a[i] != b[i]:
            return i
    return n


def _primitive_period(r: W.Word) -> int:
    n = len(r)
    for q in range(1, n + 1):
        if n % q == 0 and r[:q] * (n // q) == r:
            return q
    return n


@dataclass
class PieceScan:
    max_piece: int
    # (piece length, length of a relator containing it) for every occurrence pair
    # class that matters for C'(lambda); kept sparse
    constraints: list[tuple[int, int]]


def _scan_pieces(pres: Presentation) -> PieceScan:
    """Sorted-rotation scan: the maximal common prefix of two distinct
    occurrences is attained between sorted neighbours, so one pass over
    adjacent blocks of equal words finds every binding constraint."""
    occs = sorted(_occurrences(pres), key=lambda o: o[0])
    constraints: list[tuple[int, int]] = []
    best = 0
    # group equal words into blocks
    blocks: list[list[tuple[W.Word, int, int, int]]] = []
    for o in occs:
        if blocks and blocks[-1][0][0] == o[0]:
            blocks[-1].append(o)
        else:
            blocks.append([o])
    rel_lengths = [len(r) for r in pres.relators]
    for bi, block in enumerate(blocks):
        word = block[0][0]
        marks = {(j, s) for (_, j, s, _) in block}
        if len(marks) > 1:
            # two different relators (or a relator and an inverse) share a
            # full cyclic word: degenerate presentation, full-length piece
            for (j, _) in marks:
                constraints.append((len(word), rel_lengths[j]))
            best = max(best, len(word))
        if bi + 1 < len(blocks):
            nxt = blocks[bi + 1]
            l = _lcp(word, nxt[0][0])
            if l:
                best = max(best, l)
                for (_, j, _, _) in block:
                    constraints.append((l, rel_lengths[j]))
                for (_, j, _, _) in nxt:
                    constraints.append((l, rel_lengths[j]))
    for j, r in enumerate(pres.relators):
        q = _primitive_period(r)
        if q < len(r):
            # proper power z^m: rotations by |z| coincide, overlap piece z^(m-1)
            constraints.append((len(r) - q, len(r)))
            best = max(best, len(r) - q)
    return PieceScan(best, constraints)


def max_piece_length(pres: Presentation) -> int:
    return _scan_pieces(pres).max_piece


def naive_max_piece_length(pres: Presentation) -> int:
    """All-pairs oracle over marked occurrences; same piece convention."""
    occs = _occurrences(pres)
    best = 0
    for i in range(len(occs)):
        wi, ji, si, ri = occs[i]
        for k in range(i + 1, len(occs)):
            wk, jk, sk, rk = occs[k]
            if wi == wk:
                if (ji, si) == (jk, sk):
                    delta = abs(ri - rk)
                    delta = min(delta, len(wi) - delta)
                    best = max(best, len(wi) - delta)
                else:
                    best = max(best, len(wi))
            else:
                best = max(best, _lcp(wi, wk))
    return best


@dataclass
class CancellationReport:
    presentation: Presentation
    lam: Fraction
    max_piece: int
    relator_lengths: list[int]
    satisfies: bool
    cayley_representable: bool
    rule: str                  # which rule set the flag
    density_note: str | None = None

    def to_json_dict(self) -> dict:
        return {
            "schema": 1,
            "presentation": self.presentation.text(),
            "lambda": [self.lam.numerator, self.lam.denominator],
            "max_piece": self.max_piece,
            "relator_lengths": self.relator_lengths,
            "satisfies_c_lambda": self.satisfies,
            "cayley_representable": self.cayley_representable,
            "rule": self.rule,
            "density_note": self.density_note,
        }


def _is_proper_power(r: W.Word) -> bool:
    return _primitive_period(r) < len(r)


def check_c_lambda(pres: Presentation, lam: Fraction | float = Fraction(1, 6)) -> CancellationReport:
    """C'(lambda) decision plus the representability flag.

    C'(lambda) holds when every piece is shorter than lambda times the
    length of each relator containing it.  The representability flag is
    set by C'(1/6) with every relator of length >= 22 on two generators,
    or by the one-relator proper-power rule at the same length floor.
    """
    lam = Fraction(lam).limit_denominator(10**9) if not isinstance(lam, Fraction) else lam
    if not 0 < lam < 1:
        raise InvalidParameterError("lambda must be in (0, 1)")
    scan = _scan_pieces(pres)
    satisfies = all(Fraction(piece) < lam * rel_len
                    for piece, rel_len in scan.constraints)
    lengths = [len(r) for r in pres.relators]
    sixth = satisfies if lam == Fraction(1, 6) else _satisfies(scan, Fraction(1, 6))
    long_enough = bool(lengths) and min(lengths) >= GIRTH_LENGTH_FLOOR
    flag, rule = False, "none"
    if pres.generators == 2 and long_enough and sixth:
        flag, rule = True, "c'(1/6) with length floor 22"
    elif (pres.generators == 2 and len(pres.relators) == 1
          and _is_proper_power(pres.relators[0]) and long_enough):
        flag, rule = True, "one-relator proper power with length floor 22"
    note = None
    if flag:
        note = "density-model reading: at density below 1/5 two-generator random groups land here"
    return CancellationReport(pres, lam, scan.max_piece, lengths, satisfies, flag, rule, note)


def _satisfies(scan: PieceScan, lam: Fraction) -> bool:
    return all(Fraction(piece) < lam * rel_len for piece, rel_len in scan.constraints)


# ---------------------------------------------------------------------------
# counting cyclically reduced words (rank 2)
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=4096)
def count_cyclically_reduced(n: int, l: int) -> int:
    """Exact number of cyclically reduced words of length l over n generators.

    Transfer matrix over the 2n letters with transitions excluding inverse
    pairs; the cyclic condition excludes last = inverse(first).
    """
    if n < 1 or l < 0:
        raise InvalidParameterError("need n >= 1 and l >= 0")
    if l == 0:
        return 1
    k = 2 * n

    def inverse_index(i: int) -> int:
        return i ^ 1          # letters paired (g, g^-1) adjacently

    # paths[i][j] = number of reduced words of length l starting with letter i
    # and ending with letter j
    paths = [[1 if j == i else 0 for j in range(k)] for i in range(k)]
    for _ in range(l - 1):
        nxt = [[0] * k for _ in range(k)]
        for i in range(k):
            row = paths[i]
            for j in range(k):
                c = row[j]
                if not c:
                    continue
                for t in range(k):
                    if t != inverse_index(j):
                        nxt[i][t] += c
        paths = nxt
    total = 0
    for i in range(k):
        for j in range(k):
            if j != inverse_index(i):
                total += paths[i][j]
    return total


def count_cyclically_reduced_up_to(n: int, l: int) -> int:
    return sum(count_cyclically_reduced(n, k) for k in range(1, l + 1))


def brute_count_cyclically_reduced(n: int, l: int) -> int:
    """Enumeration oracle for small lengths."""
    return sum(1 for w in W.enumerate_reduced_words(n, l, exact=l)
               if W.is_cyclically_reduced(w))


# ---------------------------------------------------------------------------
# samplers
# ---------------------------------------------------------------------------

def _sample_reduced(rng: random.Random, n: int, length: int) -> W.Word:
    letters = [i for i in range(1, n + 1)] + [-i for i in range(1, n + 1)]
    out: list[int] = []
    for _ in range(length):
        choices = [a for a in letters if not out or a != -out[-1]]
        out.append(rng.choice(choices))
    return tuple(out)


def sample_cyclically_reduced(rng: random.Random, n: int, length: int) -> W.Word:
    """Uniform over cyclically reduced words of exact length, by rejection.

    A uniform reduced word is accepted when its wraparound does not
    cancel; acceptance rate is at least 2/3.
    """
    if length < 1:
        raise InvalidParameterError("length must be >= 1")
    while True:
        w = _sample_reduced(rng, n, length)
        if W.is_cyclically_reduced(w):
            return w


@functools.lru_cache(maxsize=256)
def _length_weights(n: int, l: int) -> tuple[tuple[int, ...], int]:
    weights = tuple(count_cyclically_reduced(n, k) for k in range(1, l + 1))
    return weights, sum(weights)


def _sample_length_up_to(rng: random.Random, n: int, l: int) -> int:
    weights, total = _length_weights(n, l)
    pick = rng.randrange(total)
    for k, wgt in enumerate(weights, start=1):
        if pick < wgt:
            return k
        pick -= wgt
    raise AssertionError("unreachable")


def sample_few_relators(n: int, m: int, l: int, count: int,
                        seed: int = 7) -> list[Presentation]:
    """The fixed-relator-number model: m uniform cyclically reduced words
    of length at most l, independently; ``count`` presentations."""
    if min(n, m, l, count) < 1:
        raise InvalidParameterError("all sampler parameters must be positive")
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        relators = tuple(
            sample_cyclically_reduced(rng, n, _sample_length_up_to(rng, n, l))
            for _ in range(m))
        out.append(Presentation(n, relators))
    return out


def density_relator_count(n: int, d: float, l: int) -> int:
    return int((2 * n - 1) ** (d * l))


def sample_density(n: int, d: float, l: int, seed: int = 7,
                   relator_cap: int = 1_000_000) -> Presentation:
    """The density model: (2n-1)^(d l) uniform cyclically reduced words of
    length exactly l."""
    if not 0 < d < 1:
        raise InvalidParameterError("density must lie in (0, 1)")
    if n < 1 or l < 1:
        raise InvalidParameterError("need n >= 1 and l >= 1")
    m = density_relator_count(n, d, l)
    if m > relator_cap:
        raise CapExceededError(f"{m} relators exceed the sample cap {relator_cap}")
    rng = random.Random(seed)
    relators = tuple(sample_cyclically_reduced(rng, n, l) for _ in range(max(1, m)))
    return Presentation(n, relators)
