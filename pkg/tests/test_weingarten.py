import itertools
import random
from fractions import Fraction
from math import factorial

import pytest

from wgcalc.combinatorics import (
    Partition,
    Permutation,
    class_size,
    enumerate_pairings,
    pairing_class_size,
    partitions,
)
from wgcalc.errors import CapacityError
from wgcalc.weingarten import (
    BiinvariantFunction,
    ClassFunction,
    convolve,
    convolve_sharp,
    delta_e,
    frac_str,
    one_hk,
    partition_key,
    power_class,
    power_coset,
    verify_pseudo_inverse,
    wg_orthogonal,
    wg_orthogonal_double,
    wg_unitary,
    wg_unitary_double,
)

from oracles import (
    all_pairing_words,
    all_words,
    brute_convolve,
    matching_loop_type,
    o_compose,
    o_coset_type,
    o_cycle_type,
    o_inverse,
    rational_pinv,
)


def random_class_function(k, rng):
    return ClassFunction(
        k, {mu: Fraction(rng.randrange(-9, 10)) for mu in partitions(k)}
    )


class TestBasisFunctions:
    def test_power_class_values(self):
        n = Fraction(7)
        f = power_class(2, n)
        assert f.value(Partition((1, 1))) == n * n
        assert f.value(Partition((2,))) == n

    def test_power_coset_weight_one(self):
        assert power_coset(1, Fraction(5, 3)).value(Partition((1,))) == Fraction(5, 3)

    def test_indicator_functions(self):
        d = delta_e(3)
        assert d.value(Partition((1, 1, 1))) == 1
        assert d.value(Partition((3,))) == 0
        assert d.value_at(Permutation.identity(3)) == 1
        h = one_hk(2)
        assert h.value(Partition((1, 1))) == 1
        assert h.value(Partition((2,))) == 0

    def test_one_hk_on_hyperoctahedral_elements(self):
        from wgcalc.combinatorics import hyperoctahedral_elements

        h = one_hk(2)
        for zeta in hyperoctahedral_elements(2):
            assert h.value_at(zeta) == 1

    def test_completeness_validation(self):
        with pytest.raises(ValueError):
            ClassFunction(2, {Partition((2,)): Fraction(1)})
        with pytest.raises(ValueError):
            BiinvariantFunction(
                1, {Partition((1,)): 1, Partition((2,)): 1}
            )

    def test_serialization(self):
        f = power_class(2, 3)
        assert f.to_json_dict() == {"2": "3/1", "1,1": "9/1"}
        assert frac_str(Fraction(-1, 60)) == "-1/60"
        assert partition_key(Partition((2, 1))) == "2,1"


class TestConvolve:
    def test_identity_element(self):
        rng = random.Random(7)
        for k in (1, 2, 3, 4):
            f = random_class_function(k, rng)
            assert convolve(f, delta_e(k)) == f
            assert convolve(delta_e(k), f) == f

    def test_weight_mismatch(self):
        with pytest.raises(ValueError):
            convolve(delta_e(2), delta_e(3))

    def test_against_pointwise_convolution(self):
        rng = random.Random(8)
        words = all_words(3)
        for _ in range(5):
            f = random_class_function(3, rng)
            g = random_class_function(3, rng)
            f_pt = {w: f.value(Partition(o_cycle_type(w))) for w in words}
            g_pt = {w: g.value(Partition(o_cycle_type(w))) for w in words}
            brute = brute_convolve(f_pt, g_pt, words)
            result = convolve(f, g)
            for w in words:
                assert result.value(Partition(o_cycle_type(w))) == brute[w]

    def test_power_times_weingarten_is_dirac(self):
        for k in (1, 2, 3, 4):
            for n in (k, k + 1, 9):
                assert convolve(power_class(k, n), wg_unitary(k, n)) == delta_e(k)


class TestSharp:
    def test_identity_element(self):
        rng = random.Random(9)
        for k in (1, 2, 3):
            values = {mu: Fraction(rng.randrange(-9, 10)) for mu in partitions(k)}
            f = BiinvariantFunction(k, values)
            assert convolve_sharp(f, one_hk(k)) == f
            assert convolve_sharp(one_hk(k), f) == f

    def test_commutativity(self):
        rng = random.Random(10)
        for k in (2, 3):
            a = BiinvariantFunction(
                k, {mu: Fraction(rng.randrange(-9, 10)) for mu in partitions(k)}
            )
            b = BiinvariantFunction(
                k, {mu: Fraction(rng.randrange(-9, 10)) for mu in partitions(k)}
            )
            assert convolve_sharp(a, b) == convolve_sharp(b, a)

    def test_against_full_group_convolution(self):
        # sharp equals the S_2k convolution divided by 2^k k!
        rng = random.Random(11)
        k = 2
        words = list(itertools.permutations(range(1, 2 * k + 1)))
        a = BiinvariantFunction(
            k, {mu: Fraction(rng.randrange(-9, 10)) for mu in partitions(k)}
        )
        b = BiinvariantFunction(
            k, {mu: Fraction(rng.randrange(-9, 10)) for mu in partitions(k)}
        )
        a_pt = {w: a.value(Partition(o_coset_type(w))) for w in words}
        b_pt = {w: b.value(Partition(o_coset_type(w))) for w in words}
        brute = brute_convolve(a_pt, b_pt, words)
        result = convolve_sharp(a, b)
        scale = Fraction(1, 2**k * factorial(k))
        for w in words:
            assert result.value(Partition(o_coset_type(w))) == scale * brute[w]

    def test_power_sharp_weingarten_is_indicator(self):
        for k in (1, 2, 3, 4):
            for n in (2 * k, 9):
                assert convolve_sharp(power_coset(k, n), wg_orthogonal(k, n)) == one_hk(k)


class TestWgUnitary:
    def test_weight_one(self):
        assert wg_unitary(1, Fraction(7)).value(Partition((1,))) == Fraction(1, 7)

    def test_weight_two_against_gram_inverse(self):
        # invert the 2x2 Gram matrix [[n^2, n], [n, n^2]] directly
        for n in (2, 3, 5, 11):
            det = Fraction(n**4 - n**2)
            expect_e = Fraction(n**2) / det
            expect_t = Fraction(-n) / det
            f = wg_unitary(2, n)
            assert f.value(Partition((1, 1))) == expect_e
            assert f.value(Partition((2,))) == expect_t

    def test_sum_identity(self):
        for k in range(1, 7):
            for n in (k, k + 1, 10):
                total = sum(
                    class_size(mu) * wg_unitary(k, n).value(mu)
                    for mu in partitions(k)
                )
                expected = Fraction(1)
                for t in range(k):
                    expected /= n + t
                assert total == expected

    def test_gram_pseudo_inverse_equivalence(self):
        for k in (1, 2, 3):
            words = all_words(k)
            for z in (-3, -1, 0, 1, 2, 5):
                gram = [
                    [Fraction(z) ** len(o_cycle_type(o_compose(o_inverse(a), b)))
                     for b in words]
                    for a in words
                ]
                pinv = rational_pinv(gram)
                wg = wg_unitary(k, z)
                for r, a in enumerate(words):
                    for c, b in enumerate(words):
                        mu = Partition(o_cycle_type(o_compose(o_inverse(a), b)))
                        assert pinv[r][c] == wg.value(mu)

    def test_inverse_symmetry(self):
        rng = random.Random(12)
        wg = wg_unitary(4, 9)
        for _ in range(30):
            p = Permutation(tuple(rng.sample(range(1, 5), 4)))
            assert wg.value_at(p) == wg.value_at(p.inverse())


class TestWgOrthogonal:
    def test_weight_one(self):
        assert wg_orthogonal(1, Fraction(3)).value(Partition((1,))) == Fraction(1, 3)

    def test_weight_two_closed_form(self):
        for n in (3, 5, 9):
            f = wg_orthogonal(2, n)
            den = Fraction(n * (n - 1) * (n + 2))
            assert f.value(Partition((1, 1))) == Fraction(n + 1) / den
            assert f.value(Partition((2,))) == Fraction(-1) / den

    def test_sum_identity(self):
        for k in range(1, 5):
            for n in (2 * k, 10):
                total = sum(
                    pairing_class_size(mu) * wg_orthogonal(k, n).value(mu)
                    for mu in partitions(k)
                )
                expected = Fraction(1)
                for t in range(k):
                    expected /= n + 2 * t
                assert total == expected

    def test_gram_pseudo_inverse_equivalence(self):
        for k in (1, 2):
            words = all_pairing_words(k)
            for z in (-3, -1, 0, 1, 2, 6):
                gram = [
                    [Fraction(z) ** len(o_coset_type(o_compose(o_inverse(a), b)))
                     for b in words]
                    for a in words
                ]
                pinv = rational_pinv(gram)
                wg = wg_orthogonal(k, z)
                for r, a in enumerate(words):
                    for c, b in enumerate(words):
                        mu = Partition(o_coset_type(o_compose(o_inverse(a), b)))
                        assert pinv[r][c] == wg.value(mu)

    def test_joint_type_matches_composition(self):
        # the coset type of a^{-1} b for pairings a, b is the type of the
        # alternating cycles of the two matchings
        for k in (2, 3):
            pairings = list(enumerate_pairings(k))
            for a in pairings:
                for b in pairings:
                    word = o_compose(o_inverse(a.word()), b.word())
                    assert o_coset_type(word) == matching_loop_type(a.pairs, b.pairs)


class TestDoubles:
    def test_weight_one(self):
        assert wg_unitary_double(1, 3, -4).value(Partition((1,))) == Fraction(-1, 12)
        assert wg_orthogonal_double(1, 5, 2).value(Partition((1,))) == Fraction(1, 10)

    def test_equals_convolution(self):
        for k in (1, 2, 3, 4):
            for z, w in ((5, 8), (Fraction(7, 2), -9), (k, k + 1)):
                assert wg_unitary_double(k, z, w) == convolve(
                    wg_unitary(k, z), wg_unitary(k, w)
                )

    def test_equals_sharp_product(self):
        for k in (1, 2, 3):
            for z, w in ((6, 9), (Fraction(11, 2), -8)):
                assert wg_orthogonal_double(k, z, w) == convolve_sharp(
                    wg_orthogonal(k, z), wg_orthogonal(k, w)
                )

    def test_parameter_symmetry(self):
        assert wg_unitary_double(3, 4, -7) == wg_unitary_double(3, -7, 4)
        assert wg_orthogonal_double(2, 5, -6) == wg_orthogonal_double(2, -6, 5)


class TestPseudoInverseIdentities:
    def test_generic_value(self):
        assert verify_pseudo_inverse(3, 5, "unitary")
        assert verify_pseudo_inverse(2, 5, "orthogonal")

    def test_degenerate_weight_two(self):
        # at z=1 only the single-row shape survives: both values are 1/4
        wg = wg_unitary(2, 1)
        assert wg.value(Partition((2,))) == Fraction(1, 4)
        assert wg.value(Partition((1, 1))) == Fraction(1, 4)
        assert verify_pseudo_inverse(2, 1, "unitary")

    def test_zero_parameter(self):
        assert wg_unitary(2, 0) == ClassFunction(
            2, {mu: Fraction(0) for mu in partitions(2)}
        )
        assert verify_pseudo_inverse(2, 0, "unitary")

    def test_full_range(self):
        for k in (1, 2, 3):
            for z in range(-6, 7):
                assert verify_pseudo_inverse(k, z, "unitary")
        for k in (1, 2):
            for z in range(-6, 7):
                assert verify_pseudo_inverse(k, z, "orthogonal")

    def test_fractional_parameters(self):
        for z in (Fraction(7, 2), Fraction(-5, 3), Fraction(1, 2)):
            assert verify_pseudo_inverse(3, z, "unitary")
            assert verify_pseudo_inverse(2, z, "orthogonal")

    def test_unknown_ensemble(self):
        with pytest.raises(ValueError):
            verify_pseudo_inverse(2, 3, "symplectic")

    def test_capacity(self):
        with pytest.raises(CapacityError):
            wg_orthogonal(9, 5)
        with pytest.raises(CapacityError):
            wg_unitary(20, 5)
