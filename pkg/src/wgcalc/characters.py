"""Symmetric-group character theory backing the Weingarten expansions.

Everything here is exact: dimensions by the hook length formula, character
values by the Murnaghan-Nakayama rule (border strips tracked through beta
numbers, memoized across shapes), zonal spherical values by direct averaging
of the doubled character over the hyperoctahedral group, and the content
products that appear as Weingarten denominators.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cache
from math import factorial

from .combinatorics import (
    Partition,
    compose,
    cycle_type_word,
    hyperoctahedral_words,
    pairing_of_coset_type,
    partitions,
)
from .errors import DEFAULT_MAX_CHARACTER, DEFAULT_MAX_ZONAL, check_guard


def dimension(lam: Partition) -> int:
    """Number of standard Young tableaux of shape lam, by hook lengths.

    >>> dimension(Partition((2, 1)))
    2
    """
    parts = lam.parts
    conj = _conjugate(parts)
    den = 1
    for r, row in enumerate(parts):
        for c in range(row):
            den *= (row - c) + (conj[c] - r) - 1
    return factorial(lam.weight) // den


def _conjugate(parts: tuple[int, ...]) -> tuple[int, ...]:
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p > c) for c in range(parts[0]))


def character(lam: Partition, mu: Partition) -> int:
    """Irreducible character indexed by lam on the class of cycle type mu.

    >>> character(Partition((2, 1)), Partition((3,)))
    -1
    """
    if lam.weight != mu.weight:
        raise ValueError(f"weights differ: {lam} is of {lam.weight}, {mu} of {mu.weight}")
    return _murnaghan_nakayama(lam.parts, mu.parts)


@cache
def _murnaghan_nakayama(lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
    if not mu:
        return 1
    strip, rest = mu[0], mu[1:]
    nrows = len(lam)
    beta = [lam[r] + (nrows - 1 - r) for r in range(nrows)]
    present = set(beta)
    total = 0
    for b in beta:
        c = b - strip
        if c < 0 or c in present:
            continue
        height = sum(1 for x in beta if c < x < b)
        shrunk = sorted((x for x in beta if x != b), reverse=True)
        shrunk.append(c)
        shrunk.sort(reverse=True)
        total += (-1) ** height * _murnaghan_nakayama(_from_beta(shrunk), rest)
    return total


def _from_beta(beta_desc: list[int]) -> tuple[int, ...]:
    nrows = len(beta_desc)
    parts = (b - (nrows - 1 - r) for r, b in enumerate(beta_desc))
    return tuple(p for p in parts if p > 0)


class CharacterTable:
    """All character values of S_k, keyed by (shape, cycle type)."""

    def __init__(self, k: int, max_k: int | None = None):
        check_guard(k, DEFAULT_MAX_CHARACTER, "character table", max_k)
        self.k = k
        mus = partitions(k)
        self.values = {
            (lam, mu): character(lam, mu) for lam in mus for mu in mus
        }
        self._e = Partition((1,) * k)

    def value(self, lam: Partition, mu: Partition) -> int:
        return self.values[(lam, mu)]

    def dimension(self, lam: Partition) -> int:
        return self.values[(lam, self._e)]


@cache
def character_table(k: int) -> CharacterTable:
    """Cached character table of S_k."""
    return CharacterTable(k)


def c_poly(lam: Partition, z) -> Fraction:
    """Product of (z + j - i) over the cells (i, j) of lam.

    >>> c_poly(Partition((1, 1)), 1)
    Fraction(0, 1)
    """
    z = Fraction(z)
    out = Fraction(1)
    for i, row in enumerate(lam.parts, start=1):
        for j in range(1, row + 1):
            out *= z + j - i
    return out


def c_prime_poly(lam: Partition, z) -> Fraction:
    """Product of (z + 2j - i - 1) over the cells (i, j) of lam."""
    z = Fraction(z)
    out = Fraction(1)
    for i, row in enumerate(lam.parts, start=1):
        for j in range(1, row + 1):
            out *= z + 2 * j - i - 1
    return out


def double_partition(lam: Partition) -> Partition:
    """The partition (2*lam_1, 2*lam_2, ...)."""
    return Partition(tuple(2 * p for p in lam.parts))


@cache
def _coset_cycle_histograms(k: int) -> dict[Partition, dict[Partition, int]]:
    """For each coset type mu, the cycle-type histogram of rep_mu * zeta over
    zeta in H_k, where rep_mu is a fixed pairing of coset type mu.

    This is the expensive part of zonal evaluation and is shared by every
    shape lam, so it is cached per k.
    """
    check_guard(k, DEFAULT_MAX_ZONAL, "zonal evaluation")
    out: dict[Partition, dict[Partition, int]] = {}
    for mu in partitions(k):
        rep = pairing_of_coset_type(mu).word()
        hist: dict[tuple[int, ...], int] = {}
        for zeta in hyperoctahedral_words(k):
            nu = cycle_type_word(compose(rep, zeta))
            hist[nu] = hist.get(nu, 0) + 1
        out[mu] = {Partition(nu): count for nu, count in sorted(hist.items())}
    return out


def zonal(lam: Partition, mu: Partition, max_k: int | None = None) -> Fraction:
    """Zonal spherical value on the coset type mu, for the shape lam.

    Computed as the average of the doubled character over the coset
    rep_mu * H_k; normalized so the value at mu = (1^k) is 1.

    >>> zonal(Partition((1, 1)), Partition((2,)))
    Fraction(-1, 2)
    """
    if lam.weight != mu.weight:
        raise ValueError(f"weights differ: {lam} vs {mu}")
    k = lam.weight
    check_guard(k, DEFAULT_MAX_ZONAL, "zonal evaluation", max_k)
    return _zonal_cached(lam, mu)


@cache
def _zonal_cached(lam: Partition, mu: Partition) -> Fraction:
    k = lam.weight
    lam2 = double_partition(lam)
    hist = _coset_cycle_histograms(k)[mu]
    total = sum(count * character(lam2, nu) for nu, count in hist.items())
    return Fraction(total, 2**k * factorial(k))


class ZonalTable:
    """All zonal spherical values for weight k, keyed by (shape, coset type)."""

    def __init__(self, k: int, max_k: int | None = None):
        check_guard(k, DEFAULT_MAX_ZONAL, "zonal table", max_k)
        self.k = k
        mus = partitions(k)
        self.values = {(lam, mu): _zonal_cached(lam, mu) for lam in mus for mu in mus}

    def value(self, lam: Partition, mu: Partition) -> Fraction:
        return self.values[(lam, mu)]


@cache
def zonal_table(k: int) -> ZonalTable:
    """Cached zonal table for weight k."""
    return ZonalTable(k)
