"""Symmetric-group and pair-partition combinatorics.

Conventions used throughout the package:

- Permutations act on {1, ..., k} and are stored as image words, tuples
  ``word`` with ``word[s-1]`` the image of ``s``.
- A pair partition of {1, ..., 2k} is kept in canonical form: the smaller
  element of each pair comes first and pairs are listed by increasing first
  element.  Reading the canonical form left to right gives the image word of
  a permutation in S_2k, which is how pair partitions are multiplied and
  inverted.
- The cycle type of a permutation is the weakly decreasing tuple of its
  cycle lengths.  The coset type of a permutation of an even ground set
  {1, ..., 2k} is read off the graph whose edges join 2i-1 with 2i and
  sigma(2i-1) with sigma(2i): every component has an even number of
  vertices, and the coset type lists the half-sizes in decreasing order.

Low-level helpers (``compose``, ``inverse_word``, ``cycle_type_word``,
``coset_type_word``) operate on raw words and are what the enumeration-heavy
callers use; the ``Permutation``/``PairPartition``/``Partition`` classes wrap
them for the public surface.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cache
from math import factorial
from typing import Iterable, Iterator, Sequence

from .errors import (
    DEFAULT_MAX_PAIRINGS,
    DEFAULT_MAX_SYM,
    DEFAULT_MAX_ZONAL,
    check_guard,
)

Word = tuple[int, ...]


# ---------------------------------------------------------------------------
# partitions


@dataclass(frozen=True)
class Partition:
    """A weakly decreasing tuple of positive integers.

    >>> Partition((3, 2, 2, 1)).weight
    8
    """

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts!r}")
        if any(parts[s] < parts[s + 1] for s in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts!r}")

    @classmethod
    def of(cls, parts: Iterable[int]) -> "Partition":
        """Build a partition from parts given in any order."""
        return cls(tuple(sorted(parts, reverse=True)))

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def multiplicity(self, i: int) -> int:
        return self.parts.count(i)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __getitem__(self, s: int) -> int:
        return self.parts[s]

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


@cache
def partitions(k: int) -> tuple[Partition, ...]:
    """All partitions of k in descending lexicographic order, (k) first.

    >>> [str(mu) for mu in partitions(4)]
    ['(4)', '(3,1)', '(2,2)', '(2,1,1)', '(1,1,1,1)']
    """
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")

    def gen(remaining: int, max_part: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, max_part), 0, -1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest

    return tuple(Partition(p) for p in gen(k, k))


def z_mu(mu: Partition) -> int:
    """Centralizer order: the product of i^m_i * m_i! over the part sizes i.

    >>> z_mu(Partition((3, 2, 2, 1)))
    24
    """
    out = 1
    for i in sorted(set(mu.parts)):
        m = mu.parts.count(i)
        out *= i**m * factorial(m)
    return out


def class_size(mu: Partition) -> int:
    """Number of permutations in S_k with cycle type mu, k!/z_mu."""
    return factorial(mu.weight) // z_mu(mu)


def pairing_class_size(mu: Partition) -> int:
    """Number of pair partitions of {1..2k} with coset type mu."""
    k = mu.weight
    return (2**k * factorial(k)) // (2 ** mu.length * z_mu(mu))


# ---------------------------------------------------------------------------
# word-level permutation helpers


def identity_word(k: int) -> Word:
    return tuple(range(1, k + 1))


def compose(x: Word, y: Word) -> Word:
    """Word of the composite permutation, (x*y)(s) = x(y(s))."""
    if len(x) != len(y):
        raise ValueError(f"cannot compose words of sizes {len(x)} and {len(y)}")
    return tuple(x[s - 1] for s in y)


def inverse_word(w: Word) -> Word:
    inv = [0] * len(w)
    for s, image in enumerate(w, start=1):
        inv[image - 1] = s
    return tuple(inv)


def cycle_type_word(w: Word) -> tuple[int, ...]:
    """Cycle lengths of an image word, sorted decreasingly."""
    lengths = []
    seen = [False] * len(w)
    for start in range(len(w)):
        if seen[start]:
            continue
        length = 0
        pos = start
        while not seen[pos]:
            seen[pos] = True
            pos = w[pos] - 1
            length += 1
        lengths.append(length)
    lengths.sort(reverse=True)
    return tuple(lengths)


def coset_type_word(w: Word) -> tuple[int, ...]:
    """Component half-sizes of the pairing graph of w, sorted decreasingly.

    The graph on {1..2k} has edges {2i-1, 2i} and {w(2i-1), w(2i)}; components
    are found by union-find (edge multiplicities do not affect connectivity).
    """
    m = len(w)
    if m % 2:
        raise ValueError(f"coset type needs an even ground set, got size {m}")
    parent = list(range(m))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    for i in range(m // 2):
        union(2 * i, 2 * i + 1)
        union(w[2 * i] - 1, w[2 * i + 1] - 1)
    sizes: dict[int, int] = {}
    for v in range(m):
        r = find(v)
        sizes[r] = sizes.get(r, 0) + 1
    halves = sorted((s // 2 for s in sizes.values()), reverse=True)
    return tuple(halves)


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1, ..., k} stored as its image word.

    >>> p = Permutation.from_cycles(8, [(1, 2, 5), (3, 4), (6, 8)])
    >>> str(p.cycle_type())
    '(3,2,2,1)'
    """

    word: tuple[int, ...]

    def __post_init__(self):
        word = tuple(int(x) for x in self.word)
        object.__setattr__(self, "word", word)
        if sorted(word) != list(range(1, len(word) + 1)):
            raise ValueError(f"not an image word of 1..{len(word)}: {word!r}")

    @classmethod
    def identity(cls, k: int) -> "Permutation":
        return cls(identity_word(k))

    @classmethod
    def from_cycles(cls, k: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        """Permutation of S_k given by disjoint cycles; fixed points may be omitted."""
        word = list(range(1, k + 1))
        seen: set[int] = set()
        for cyc in cycles:
            cyc = tuple(cyc)
            for a in cyc:
                if not 1 <= a <= k:
                    raise ValueError(f"cycle entry {a} outside 1..{k}")
                if a in seen:
                    raise ValueError(f"cycles are not disjoint at {a}")
                seen.add(a)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                word[a - 1] = b
        return cls(tuple(word))

    @property
    def size(self) -> int:
        return len(self.word)

    def __call__(self, s: int) -> int:
        return self.word[s - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation(compose(self.word, other.word))

    def inverse(self) -> "Permutation":
        return Permutation(inverse_word(self.word))

    def cycle_type(self) -> Partition:
        return Partition(cycle_type_word(self.word))

    def coset_type(self) -> Partition:
        return Partition(coset_type_word(self.word))


@dataclass(frozen=True)
class PairPartition:
    """A perfect matching of {1, ..., 2k}, normalized to canonical form.

    >>> PairPartition(((3, 1), (4, 2))).pairs
    ((1, 3), (2, 4))
    """

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple(
            sorted((int(min(a, b)), int(max(a, b))) for a, b in self.pairs)
        )
        object.__setattr__(self, "pairs", pairs)
        flat = [x for pair in pairs for x in pair]
        if sorted(flat) != list(range(1, 2 * len(pairs) + 1)):
            raise ValueError(f"pairs must partition 1..2k: {self.pairs!r}")

    @classmethod
    def from_permutation(cls, p: Permutation) -> "PairPartition":
        """Pair partition {{p(1),p(2)}, {p(3),p(4)}, ...}."""
        if p.size % 2:
            raise ValueError("pair partitions need an even ground set")
        w = p.word
        return cls(tuple((w[2 * i], w[2 * i + 1]) for i in range(p.size // 2)))

    @property
    def size(self) -> int:
        """Number of pairs k; the ground set is {1, ..., 2k}."""
        return len(self.pairs)

    def as_permutation(self) -> Permutation:
        """The canonical form read as an image word in S_2k."""
        return Permutation(self.word())

    def word(self) -> Word:
        return tuple(x for pair in self.pairs for x in pair)

    def coset_type(self) -> Partition:
        return Partition(coset_type_word(self.word()))


# ---------------------------------------------------------------------------
# structural maps and enumerations


def cycle_type(p: Permutation) -> Partition:
    """Cycle type of a permutation, e.g. (3,2,2,1) for (1 2 5)(3 4)(6 8)(7)."""
    return Partition(cycle_type_word(p.word))


def coset_type(p: Permutation | PairPartition) -> Partition:
    """Coset type of a permutation of {1..2k}, or of an embedded pair partition."""
    if isinstance(p, PairPartition):
        return p.coset_type()
    return Partition(coset_type_word(p.word))


def enumerate_sym(k: int, max_k: int | None = None) -> Iterator[Permutation]:
    """All k! permutations of {1..k}, in lexicographic order of image words."""
    check_guard(k, DEFAULT_MAX_SYM, "enumerate_sym", max_k)
    for word in itertools.permutations(range(1, k + 1)):
        yield Permutation(word)


def enumerate_sym_words(k: int, max_k: int | None = None) -> Iterator[Word]:
    """Image words of all k! permutations, lexicographically."""
    check_guard(k, DEFAULT_MAX_SYM, "enumerate_sym", max_k)
    return itertools.permutations(range(1, k + 1))


def enumerate_pairings(k: int, max_k: int | None = None) -> Iterator[PairPartition]:
    """All (2k-1)!! pair partitions of {1..2k} in canonical order.

    >>> [pp.pairs for pp in enumerate_pairings(2)]
    [((1, 2), (3, 4)), ((1, 3), (2, 4)), ((1, 4), (2, 3))]
    """
    check_guard(k, DEFAULT_MAX_PAIRINGS, "enumerate_pairings", max_k)
    for pairs in _pairings_of(tuple(range(1, 2 * k + 1))):
        yield PairPartition(pairs)


def _pairings_of(free: tuple[int, ...]) -> Iterator[tuple[tuple[int, int], ...]]:
    if not free:
        yield ()
        return
    a = free[0]
    for t in range(1, len(free)):
        rest = free[1:t] + free[t + 1 :]
        for tail in _pairings_of(rest):
            yield ((a, free[t]),) + tail


def delta_u(sigma: Permutation, i: Sequence[int], i_prime: Sequence[int]) -> int:
    """Product of Kronecker deltas pairing i[sigma(s)] with i_prime[s]; 0 or 1."""
    k = sigma.size
    if len(i) != k or len(i_prime) != k:
        raise ValueError(f"index sequences must have length {k}")
    w = sigma.word
    return int(all(i[w[s] - 1] == i_prime[s] for s in range(k)))


def delta_o(sigma: Permutation | PairPartition, i: Sequence[int]) -> int:
    """Product of Kronecker deltas pairing i[sigma(2s-1)] with i[sigma(2s)]."""
    w = sigma.word() if isinstance(sigma, PairPartition) else sigma.word
    if len(w) % 2:
        raise ValueError("delta_o needs an even ground set")
    if len(i) != len(w):
        raise ValueError(f"index sequence must have length {len(w)}")
    return int(
        all(i[w[2 * t] - 1] == i[w[2 * t + 1] - 1] for t in range(len(w) // 2))
    )


def trace_monomial_u(pi: Permutation, a) -> object:
    """Product of power traces Tr(a^m) over the cycle lengths of pi."""
    return power_trace_product(cycle_type_word(pi.word), a)


def trace_monomial_o(sigma: Permutation | PairPartition, a) -> object:
    """Product of power traces Tr(a^m) over the coset type of sigma."""
    w = sigma.word() if isinstance(sigma, PairPartition) else sigma.word
    return power_trace_product(coset_type_word(w), a)


def power_trace_product(parts: Sequence[int], a) -> object:
    """Product of Tr(a^m) for m in parts; works on any square matrix whose
    entries support arithmetic (nested sequences of Fractions, numpy arrays)."""
    rows = [list(r) for r in a]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    traces = power_traces(rows, max(parts, default=0))
    out = 1
    for m in parts:
        out = out * traces[m]
    return out


def power_traces(rows: list[list], max_power: int) -> dict[int, object]:
    """Traces of the first max_power powers of a square matrix, by repeated
    multiplication."""
    n = len(rows)
    traces: dict[int, object] = {}
    cur = rows
    for m in range(1, max_power + 1):
        traces[m] = sum(cur[t][t] for t in range(n))
        if m < max_power:
            cur = [
                [sum(cur[r][t] * rows[t][c] for t in range(n)) for c in range(n)]
                for r in range(n)
            ]
    return traces


def t_k(k: int) -> Permutation:
    """The fixed-point-free involution (1 2)(3 4)...(2k-1 2k)."""
    word = []
    for i in range(1, k + 1):
        word += [2 * i, 2 * i - 1]
    return Permutation(tuple(word))


def hyperoctahedral_contains(sigma: Permutation) -> bool:
    """True iff sigma centralizes t_k, i.e. sigma lies in H_k."""
    if sigma.size % 2:
        raise ValueError("hyperoctahedral membership needs an even ground set")
    t = t_k(sigma.size // 2).word
    return compose(sigma.word, t) == compose(t, sigma.word)


def hyperoctahedral_words(k: int, max_k: int | None = None) -> Iterator[Word]:
    """Image words of all 2^k k! elements of H_k.

    Each element permutes the blocks {2s-1, 2s} and optionally swaps within
    them, which is exactly the centralizer of t_k in S_2k.
    """
    check_guard(k, DEFAULT_MAX_ZONAL, "hyperoctahedral enumeration", max_k)
    for tau in itertools.permutations(range(1, k + 1)):
        for flips in itertools.product((False, True), repeat=k):
            word = [0] * (2 * k)
            for s in range(k):
                a, b = 2 * tau[s] - 1, 2 * tau[s]
                if flips[s]:
                    a, b = b, a
                word[2 * s] = a
                word[2 * s + 1] = b
            yield tuple(word)


def hyperoctahedral_elements(k: int, max_k: int | None = None) -> Iterator[Permutation]:
    """All elements of the hyperoctahedral group H_k inside S_2k."""
    for word in hyperoctahedral_words(k, max_k):
        yield Permutation(word)


def perm_of_cycle_type(mu: Partition) -> Permutation:
    """A permutation with cycle type mu (one cycle per part, on consecutive blocks)."""
    word: list[int] = []
    base = 0
    for m in mu.parts:
        cyc = list(range(base + 1, base + m + 1))
        word += cyc[1:] + cyc[:1]
        base += m
    return Permutation(tuple(word))


def pairing_of_coset_type(mu: Partition) -> PairPartition:
    """A pair partition with coset type mu (one cyclically shifted block per part)."""
    pairs: list[tuple[int, int]] = []
    base = 0
    for m in mu.parts:
        verts = list(range(base + 1, base + 2 * m + 1))
        for t in range(m):
            pairs.append((verts[(2 * t + 1) % (2 * m)], verts[(2 * t + 2) % (2 * m)]))
        base += 2 * m
    return PairPartition(tuple(pairs))
