"""Weingarten functions and the convolution algebras they live in.

Central functions on S_k are stored by cycle type and H_k-biinvariant
functions on S_2k by coset type, so everything is a table over the
partitions of k with exact rational values.

The unitary Weingarten function of parameter z is the pseudo-inverse of the
power function z^kappa (kappa counts cycles) in the center of the group
algebra; the orthogonal one is the pseudo-inverse of z^kappa' (kappa' counts
pairing-graph components) for the renormalized convolution ``sharp`` on
biinvariant functions.  Both are evaluated through their spectral
expansions, skipping summands whose content product vanishes, which makes
them genuine pseudo-inverses at every parameter, degenerate values included.

Two-parameter versions divide by the content products of both parameters;
they coincide with the convolution (respectively sharp product) of the two
one-parameter functions whenever no content product vanishes individually.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cache
from math import factorial
from typing import Mapping

from .characters import (
    c_poly,
    c_prime_poly,
    character_table,
    dimension,
    double_partition,
    zonal_table,
)
from .combinatorics import (
    PairPartition,
    Partition,
    Permutation,
    class_size,
    compose,
    coset_type_word,
    cycle_type_word,
    enumerate_pairings,
    inverse_word,
    pairing_of_coset_type,
    partitions,
)
from .errors import DEFAULT_MAX_PAIRINGS, check_guard


def frac_str(v: Fraction) -> str:
    """Reduced num/den string, always with an explicit denominator."""
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def partition_key(mu: Partition) -> str:
    """Comma-joined parts, used as a JSON object key (e.g. "2,1")."""
    return ",".join(map(str, mu.parts))


class _TypeFunction:
    """Exact rational function stored by partition of k; base for the two
    concrete classes below.  Values are complete: every partition of k is a
    key, zeros included."""

    kind = "type"

    def __init__(self, k: int, values: Mapping[Partition, Fraction]):
        mus = partitions(k)
        missing = [mu for mu in mus if mu not in values]
        if missing:
            raise ValueError(f"missing value for {missing[0]}")
        if len(values) != len(mus):
            extra = [mu for mu in values if mu not in set(mus)]
            raise ValueError(f"unexpected key {extra[0]!r} for weight {k}")
        self.k = k
        self.values = {mu: Fraction(values[mu]) for mu in mus}

    def value(self, mu: Partition) -> Fraction:
        return self.values[mu]

    def __eq__(self, other) -> bool:
        return (
            type(self) is type(other)
            and self.k == other.k
            and self.values == other.values
        )

    def __repr__(self) -> str:
        body = ", ".join(f"{mu}: {v}" for mu, v in self.values.items())
        return f"{type(self).__name__}({self.k}, {{{body}}})"

    def to_json_dict(self) -> dict[str, str]:
        """Partition-keyed table of reduced fraction strings."""
        return {partition_key(mu): frac_str(v) for mu, v in self.values.items()}


class ClassFunction(_TypeFunction):
    """Central function on S_k: one exact value per cycle type."""

    kind = "cycle"

    def value_at(self, p: Permutation) -> Fraction:
        return self.values[Partition(cycle_type_word(p.word))]


class BiinvariantFunction(_TypeFunction):
    """H_k-biinvariant function on S_2k: one exact value per coset type."""

    kind = "coset"

    def value_at(self, p: Permutation | PairPartition) -> Fraction:
        w = p.word() if isinstance(p, PairPartition) else p.word
        return self.values[Partition(coset_type_word(w))]


# ---------------------------------------------------------------------------
# basis elements


def power_class(k: int, z) -> ClassFunction:
    """The function z^kappa, with kappa the number of cycles."""
    z = Fraction(z)
    return ClassFunction(k, {mu: z**mu.length for mu in partitions(k)})


def power_coset(k: int, z) -> BiinvariantFunction:
    """The function z^kappa', with kappa' the number of pairing-graph components."""
    z = Fraction(z)
    return BiinvariantFunction(k, {mu: z**mu.length for mu in partitions(k)})


def delta_e(k: int) -> ClassFunction:
    """The Dirac function at the identity: 1 on the singleton class (1^k)."""
    one = Partition((1,) * k)
    return ClassFunction(
        k, {mu: Fraction(1 if mu == one else 0) for mu in partitions(k)}
    )


def one_hk(k: int) -> BiinvariantFunction:
    """The indicator of H_k: 1 on coset type (1^k), 0 elsewhere."""
    one = Partition((1,) * k)
    return BiinvariantFunction(
        k, {mu: Fraction(1 if mu == one else 0) for mu in partitions(k)}
    )


# ---------------------------------------------------------------------------
# products


def convolve(f: ClassFunction, g: ClassFunction) -> ClassFunction:
    """Group-algebra convolution of central functions on S_k.

    Computed in the character basis: the coefficient of each shape gets
    multiplied with the scaling factor k!/dimension, which is the classical
    diagonalization of convolution on the center.
    """
    if f.k != g.k:
        raise ValueError(f"weights differ: {f.k} vs {g.k}")
    k = f.k
    table = character_table(k)
    mus = partitions(k)
    sizes = {mu: class_size(mu) for mu in mus}
    kfact = factorial(k)
    coeff: dict[Partition, Fraction] = {}
    for lam in mus:
        a = sum((sizes[mu] * f.values[mu] * table.value(lam, mu) for mu in mus),
                Fraction(0)) / kfact
        b = sum((sizes[mu] * g.values[mu] * table.value(lam, mu) for mu in mus),
                Fraction(0)) / kfact
        coeff[lam] = a * b * kfact / table.dimension(lam)
    values = {
        mu: sum((coeff[lam] * table.value(lam, mu) for lam in mus), Fraction(0))
        for mu in mus
    }
    return ClassFunction(k, values)


@cache
def _sharp_tables(
    k: int,
) -> dict[Partition, dict[tuple[Partition, Partition], int]]:
    """Structure counts for the sharp product: for each coset type mu with
    fixed representative s_mu, how often each pair (coset type of s_mu*tau,
    coset type of tau^{-1}) occurs as tau runs over all pairings."""
    check_guard(k, DEFAULT_MAX_PAIRINGS, "sharp product")
    tau_words = [pp.word() for pp in enumerate_pairings(k)]
    inv_types = [Partition(coset_type_word(inverse_word(w))) for w in tau_words]
    out: dict[Partition, dict[tuple[Partition, Partition], int]] = {}
    for mu in partitions(k):
        rep = pairing_of_coset_type(mu).word()
        counts: dict[tuple[Partition, Partition], int] = {}
        for w, inv_type in zip(tau_words, inv_types):
            key = (Partition(coset_type_word(compose(rep, w))), inv_type)
            counts[key] = counts.get(key, 0) + 1
        out[mu] = counts
    return out


def convolve_sharp(
    f: BiinvariantFunction, g: BiinvariantFunction
) -> BiinvariantFunction:
    """The renormalized convolution on biinvariant functions,
    (f # g)(sigma) = sum over pairings tau of f(sigma tau) g(tau^{-1}),
    evaluated by enumeration of the pairings with cached coset-type counts."""
    if f.k != g.k:
        raise ValueError(f"weights differ: {f.k} vs {g.k}")
    k = f.k
    tables = _sharp_tables(k)
    values = {
        mu: sum(
            (count * f.values[t1] * g.values[t2]
             for (t1, t2), count in tables[mu].items()),
            Fraction(0),
        )
        for mu in partitions(k)
    }
    return BiinvariantFunction(k, values)


# ---------------------------------------------------------------------------
# Weingarten functions


def wg_unitary(k: int, z) -> ClassFunction:
    """Unitary Weingarten function of parameter z as a cycle-type table.

    Character expansion divided by the content product; shapes with a
    vanishing content product are skipped, which yields the pseudo-inverse
    of z^kappa at every parameter.
    """
    z = Fraction(z)
    table = character_table(k)
    mus = partitions(k)
    kfact = factorial(k)
    terms = []
    for lam in mus:
        c = c_poly(lam, z)
        if c != 0:
            terms.append((lam, Fraction(table.dimension(lam)) / c))
    values = {
        mu: sum((w * table.value(lam, mu) for lam, w in terms), Fraction(0)) / kfact
        for mu in mus
    }
    return ClassFunction(k, values)


def wg_orthogonal(k: int, z) -> BiinvariantFunction:
    """Orthogonal Weingarten function of parameter z as a coset-type table.

    Zonal expansion with weights dim(2*lam) over the odd content product;
    shapes with a vanishing product are skipped.
    """
    z = Fraction(z)
    ztable = zonal_table(k)
    mus = partitions(k)
    prefactor = Fraction(2**k * factorial(k), factorial(2 * k))
    terms = []
    for lam in mus:
        c = c_prime_poly(lam, z)
        if c != 0:
            terms.append((lam, Fraction(dimension(double_partition(lam))) / c))
    values = {
        mu: prefactor
        * sum((w * ztable.value(lam, mu) for lam, w in terms), Fraction(0))
        for mu in mus
    }
    return BiinvariantFunction(k, values)


def wg_unitary_double(k: int, z, w) -> ClassFunction:
    """Two-parameter unitary Weingarten function, the convolution of the
    one-parameter functions at z and w; evaluated spectrally with the product
    of content products in the denominator."""
    z, w = Fraction(z), Fraction(w)
    table = character_table(k)
    mus = partitions(k)
    kfact = factorial(k)
    terms = []
    for lam in mus:
        c = c_poly(lam, z) * c_poly(lam, w)
        if c != 0:
            terms.append((lam, Fraction(table.dimension(lam)) / c))
    values = {
        mu: sum((wt * table.value(lam, mu) for lam, wt in terms), Fraction(0)) / kfact
        for mu in mus
    }
    return ClassFunction(k, values)


def wg_orthogonal_double(k: int, z, w) -> BiinvariantFunction:
    """Two-parameter orthogonal Weingarten function, the sharp product of the
    one-parameter functions at z and w; evaluated spectrally."""
    z, w = Fraction(z), Fraction(w)
    ztable = zonal_table(k)
    mus = partitions(k)
    prefactor = Fraction(2**k * factorial(k), factorial(2 * k))
    terms = []
    for lam in mus:
        c = c_prime_poly(lam, z) * c_prime_poly(lam, w)
        if c != 0:
            terms.append((lam, Fraction(dimension(double_partition(lam))) / c))
    values = {
        mu: prefactor
        * sum((wt * ztable.value(lam, mu) for lam, wt in terms), Fraction(0))
        for mu in mus
    }
    return BiinvariantFunction(k, values)


def verify_pseudo_inverse(k: int, z, ensemble: str = "unitary") -> bool:
    """Check both defining sandwich identities exactly.

    For the unitary ensemble: z^kappa * Wg * z^kappa = z^kappa and
    Wg * z^kappa * Wg = Wg, with * the central convolution; for the
    orthogonal ensemble the same with z^kappa' and the sharp product.
    Holds for every rational z, including degenerate values where content
    products vanish.
    """
    if ensemble in ("unitary", "u"):
        power = power_class(k, z)
        wg = wg_unitary(k, z)
        product = convolve
    elif ensemble in ("orthogonal", "o"):
        power = power_coset(k, z)
        wg = wg_orthogonal(k, z)
        product = convolve_sharp
    else:
        raise ValueError(f"unknown ensemble {ensemble!r}")
    sandwich_power = product(product(power, wg), power)
    sandwich_wg = product(product(wg, power), wg)
    return sandwich_power == power and sandwich_wg == wg
