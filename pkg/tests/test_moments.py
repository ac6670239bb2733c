import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from wgcalc.combinatorics import Partition, Permutation, partitions
from wgcalc.errors import ValidityError
from wgcalc.moments import (
    BASIS_ORTHOGONAL,
    BASIS_UNITARY,
    MomentFormula,
    ScaleMatrix,
    ShapeMatrix,
    compound_wishart_inv_c,
    compound_wishart_inv_r,
    conj_invariant_moment_o,
    conj_invariant_moment_u,
    ginibre_pinv_moment_c,
    ginibre_pinv_moment_r,
    haar_orthogonal_moment,
    haar_unitary_moment,
    inv_wishart_trace_o,
    inv_wishart_trace_u,
    lr_invariant_moment_o,
    lr_invariant_moment_u,
)
from wgcalc.weingarten import frac_str, wg_orthogonal_double, wg_unitary_double

from oracles import (
    all_pairing_words,
    all_words,
    o_compose,
    o_coset_type,
    o_cycle_type,
    o_inverse,
    rational_pinv,
)

F = Fraction

SIGMA_4 = ScaleMatrix.from_rational(
    [[2, 1, 0, 0], [1, 3, 1, 0], [0, 1, 4, 1], [0, 0, 1, 5]]
)
SIGMA_3 = ScaleMatrix.from_rational([[2, 1, 0], [1, 3, 1], [0, 1, 4]])


def identity_scale(n):
    return ScaleMatrix.from_rational(
        [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    )


class TestHaarUnitary:
    def test_weight_one(self):
        assert haar_unitary_moment((1,), (1,), (1,), (1,), 5) == F(1, 5)
        assert haar_unitary_moment((1,), (1,), (2,), (1,), 5) == 0

    def test_weight_two_diagonal(self):
        for n in (2, 5, 9):
            value = haar_unitary_moment((1, 1), (1, 1), (1, 1), (1, 1), n)
            assert value == F(2, n * (n + 1))

    def test_degenerate_dimension(self):
        assert haar_unitary_moment((1, 1), (1, 1), (1, 1), (1, 1), 1) == 1

    def test_mismatched_multisets_vanish_exhaustively(self):
        n = 3
        for seqs in itertools.product(
            itertools.product(range(1, n + 1), repeat=2), repeat=4
        ):
            i, j, ip, jp = seqs
            if sorted(i) != sorted(ip) or sorted(j) != sorted(jp):
                assert haar_unitary_moment(i, j, ip, jp, n) == 0

    def test_factor_order_invariance(self):
        rng = random.Random(13)
        for k in (2, 3):
            for _ in range(10):
                i, j, ip, jp = (
                    tuple(rng.randrange(1, 4) for _ in range(k)) for _ in range(4)
                )
                base = haar_unitary_moment(i, j, ip, jp, 4)
                order = rng.sample(range(k), k)
                reordered = tuple(tuple(seq[s] for s in order) for seq in (i, j, ip, jp))
                assert haar_unitary_moment(*reordered, 4) == base

    def test_factor_order_invariance_other_operations(self):
        rng = random.Random(19)
        eye = identity_scale(4)
        for _ in range(5):
            order = rng.sample(range(2), 2)
            i, j = ((1, 2), (2, 1))
            ri = tuple(i[s] for s in order)
            rj = tuple(j[s] for s in order)
            base = conj_invariant_moment_u(i, j, 4)
            assert conj_invariant_moment_u(ri, rj, 4).coefficients == base.coefficients
            ip, jp = ((2, 1), (1, 2))
            rip = tuple(ip[s] for s in order)
            rjp = tuple(jp[s] for s in order)
            assert ginibre_pinv_moment_c(ri, rj, rip, rjp, eye, 4, 10) == \
                ginibre_pinv_moment_c(i, j, ip, jp, eye, 4, 10)

    def test_index_out_of_range(self):
        with pytest.raises(ValueError):
            haar_unitary_moment((4,), (1,), (4,), (1,), 3)


class TestHaarOrthogonal:
    def test_weight_one(self):
        assert haar_orthogonal_moment((1, 1), (1, 1), 4) == F(1, 4)
        assert haar_orthogonal_moment((1, 2), (1, 1), 4) == 0

    def test_weight_two_diagonal(self):
        for n in (2, 5, 10):
            assert haar_orthogonal_moment((1,) * 4, (1,) * 4, n) == F(3, n * (n + 2))

    def test_odd_length_rejected(self):
        with pytest.raises(ValueError):
            haar_orthogonal_moment((1, 1, 1), (1, 1, 1), 3)

    def test_second_moment(self):
        # E[u_11 u_22] = 0 and E[u_11^2] = 1/n
        assert haar_orthogonal_moment((1, 2), (1, 2), 5) == 0
        assert haar_orthogonal_moment((1, 1), (2, 2), 5) == F(1, 5)

    def test_asymmetric_delta_pattern(self):
        # E[u_11 u_12 u_21 u_22]: exactly one pairing matches each side and
        # their alternating cycle has half-length 2, so the value is the
        # coset-type-(2) Weingarten value
        for n in (3, 5, 8):
            expected = F(-1, n * (n - 1) * (n + 2))
            assert haar_orthogonal_moment((1, 1, 2, 2), (1, 2, 1, 2), n) == expected


class TestHaarMomentsAgainstFullAssemblyOracle:
    """Re-assemble the Haar moment sums from scratch: delta sets by direct
    definition, Weingarten values from the pseudo-inverted type Gram matrix."""

    def test_unitary(self):
        rng = random.Random(17)
        for k, n in ((2, 2), (2, 3), (3, 3)):
            words = all_words(k)
            gram = [
                [F(n) ** len(o_cycle_type(o_compose(o_inverse(a), b))) for b in words]
                for a in words
            ]
            pinv = rational_pinv(gram)
            index = {w: t for t, w in enumerate(words)}
            for _ in range(8):
                i, j, ip, jp = (
                    tuple(rng.randrange(1, n + 1) for _ in range(k)) for _ in range(4)
                )
                brute = F(0)
                for sw in words:
                    if any(i[sw[s] - 1] != ip[s] for s in range(k)):
                        continue
                    for tw in words:
                        if any(j[tw[s] - 1] != jp[s] for s in range(k)):
                            continue
                        brute += pinv[index[sw]][index[tw]]
                assert haar_unitary_moment(i, j, ip, jp, n) == brute

    def test_orthogonal(self):
        rng = random.Random(18)
        k, n = 2, 3
        words = all_pairing_words(k)
        gram = [
            [F(n) ** len(o_coset_type(o_compose(o_inverse(a), b))) for b in words]
            for a in words
        ]
        pinv = rational_pinv(gram)
        for _ in range(12):
            i = tuple(rng.randrange(1, n + 1) for _ in range(2 * k))
            j = tuple(rng.randrange(1, n + 1) for _ in range(2 * k))
            brute = F(0)
            for r, sw in enumerate(words):
                pairs_s = [(sw[0], sw[1]), (sw[2], sw[3])]
                if any(i[a - 1] != i[b - 1] for a, b in pairs_s):
                    continue
                for c, tw in enumerate(words):
                    pairs_t = [(tw[0], tw[1]), (tw[2], tw[3])]
                    if any(j[a - 1] != j[b - 1] for a, b in pairs_t):
                        continue
                    brute += pinv[r][c]
            assert haar_orthogonal_moment(i, j, n) == brute


class TestConjInvariant:
    def test_unitary_diagonal_tables(self):
        for n in (5, 10, 23):
            f1 = conj_invariant_moment_u((1,), (1,), n)
            assert frac_str(f1.coefficients[Partition((1,))]) == frac_str(F(1, n))
            f2 = conj_invariant_moment_u((1, 1), (1, 1), n)
            den2 = n * (n + 1)
            assert frac_str(f2.coefficients[Partition((2,))]) == frac_str(F(1, den2))
            assert frac_str(f2.coefficients[Partition((1, 1))]) == frac_str(F(1, den2))
            f3 = conj_invariant_moment_u((1, 1, 1), (1, 1, 1), n)
            den3 = n * (n + 1) * (n + 2)
            assert f3.coefficients[Partition((3,))] == F(2, den3)
            assert f3.coefficients[Partition((2, 1))] == F(3, den3)
            assert f3.coefficients[Partition((1, 1, 1))] == F(1, den3)

    def test_orthogonal_diagonal_tables(self):
        for n in (5, 10, 23):
            g1 = conj_invariant_moment_o((1, 1), n)
            assert g1.coefficients[Partition((1,))] == F(1, n)
            g2 = conj_invariant_moment_o((1,) * 4, n)
            den2 = n * (n + 2)
            assert g2.coefficients[Partition((2,))] == F(2, den2)
            assert g2.coefficients[Partition((1, 1))] == F(1, den2)
            g3 = conj_invariant_moment_o((1,) * 6, n)
            den3 = n * (n + 2) * (n + 4)
            assert g3.coefficients[Partition((3,))] == F(8, den3)
            assert g3.coefficients[Partition((2, 1))] == F(6, den3)
            assert g3.coefficients[Partition((1, 1, 1))] == F(1, den3)

    def test_off_diagonal_entry_vanishes(self):
        f = conj_invariant_moment_u((1,), (2,), 6)
        assert all(c == 0 for c in f.coefficients.values())

    def test_basis_tags(self):
        assert conj_invariant_moment_u((1,), (1,), 3).basis == BASIS_UNITARY
        assert conj_invariant_moment_o((1, 1), 3).basis == BASIS_ORTHOGONAL


class TestLeftRightInvariant:
    def test_unitary_weight_one(self):
        f = lr_invariant_moment_u((1,), (2,), (1,), (2,), 3, 5)
        assert f.coefficients[Partition((1,))] == F(1, 15)
        zero = lr_invariant_moment_u((1,), (2,), (1,), (3,), 3, 5)
        assert all(c == 0 for c in zero.coefficients.values())

    def test_orthogonal_weight_one(self):
        f = lr_invariant_moment_o((1, 1), (2, 2), 3, 5)
        assert f.coefficients[Partition((1,))] == F(1, 15)
        zero = lr_invariant_moment_o((1, 2), (2, 2), 3, 5)
        assert all(c == 0 for c in zero.coefficients.values())

    def test_unitary_against_triple_loop(self):
        n, p = 3, 4
        wgd = wg_unitary_double(2, n, p)
        words = all_words(2)
        for i, j, ip, jp in (
            ((1, 1), (1, 1), (1, 1), (1, 1)),
            ((1, 2), (1, 1), (2, 1), (1, 1)),
            ((1, 2), (3, 4), (1, 2), (4, 3)),
        ):
            formula = lr_invariant_moment_u(i, j, ip, jp, n, p)
            brute = {mu: F(0) for mu in partitions(2)}
            for pw in words:
                key = Partition(o_cycle_type(pw))
                for s1 in words:
                    if any(i[s1[s] - 1] != ip[s] for s in range(2)):
                        continue
                    for s2 in words:
                        if any(j[s2[s] - 1] != jp[s] for s in range(2)):
                            continue
                        word = o_compose(pw, o_compose(o_inverse(s1), s2))
                        brute[key] += wgd.value(Partition(o_cycle_type(word)))
            assert formula.coefficients == brute

    def test_orthogonal_against_triple_loop(self):
        n, p = 4, 7
        wgd = wg_orthogonal_double(2, n, p)
        words = all_pairing_words(2)
        for i, j in (
            ((1, 1, 2, 2), (1, 2, 1, 2)),
            ((1, 1, 1, 1), (2, 2, 3, 3)),
            ((1, 2, 2, 1), (3, 3, 4, 4)),
        ):
            formula = lr_invariant_moment_o(i, j, n, p)
            brute = {mu: F(0) for mu in partitions(2)}
            for pw in words:
                key = Partition(o_coset_type(pw))
                for s1 in words:
                    pairs1 = [(s1[0], s1[1]), (s1[2], s1[3])]
                    if any(i[a - 1] != i[b - 1] for a, b in pairs1):
                        continue
                    for s2 in words:
                        pairs2 = [(s2[0], s2[1]), (s2[2], s2[3])]
                        if any(j[a - 1] != j[b - 1] for a, b in pairs2):
                            continue
                        word = o_compose(o_inverse(s1), o_compose(s2, pw))
                        brute[key] += wgd.value(Partition(o_coset_type(word)))
            assert formula.coefficients == brute


class TestMomentFormula:
    def test_evaluation_is_linear(self):
        f = conj_invariant_moment_u((1, 1), (1, 1), 4)
        m1 = {mu: F(3) for mu in partitions(2)}
        m2 = {Partition((2,)): F(1, 2), Partition((1, 1)): F(5)}
        combo = {mu: 7 * m1[mu] + 2 * m2[mu] for mu in partitions(2)}
        assert f.evaluate(combo) == 7 * f.evaluate(m1) + 2 * f.evaluate(m2)

    def test_json_shape(self):
        doc = conj_invariant_moment_u((1, 1), (1, 1), 10).to_json_dict()
        assert doc["order"] == 2 and doc["basis"] == BASIS_UNITARY
        assert doc["terms"] == [
            {"partition": [2], "coeff": "1/110"},
            {"partition": [1, 1], "coeff": "1/110"},
        ]

    def test_completeness_required(self):
        with pytest.raises(ValueError):
            MomentFormula(2, BASIS_UNITARY, {Partition((2,)): F(1)})
        with pytest.raises(ValueError):
            MomentFormula(1, "weird", {Partition((1,)): F(1)})


class TestInverseWishart:
    def test_complex_weight_one(self):
        traces = {1: F(4)}
        assert inv_wishart_trace_u(Partition((1,)), traces, 4, 12) == F(1, 2)
        t3 = SIGMA_3.inv_power_traces(1)
        assert inv_wishart_trace_u(Partition((1,)), t3, 3, 12) == t3[1] / 9

    def test_real_weight_one(self):
        assert inv_wishart_trace_o(Partition((1,)), {1: F(4)}, 4, 12) == F(4, 7)
        t3 = SIGMA_3.inv_power_traces(1)
        assert inv_wishart_trace_o(Partition((1,)), t3, 3, 12) == t3[1] / 8

    def test_scalar_ground_truth(self):
        # n = 1: complex Wishart is Gamma(p, 1), real Wishart is chi^2_p
        ones = {1: F(1), 2: F(1)}
        for p in (4, 8, 12):
            assert inv_wishart_trace_u(Partition((2,)), ones, 1, p) == F(
                1, (p - 1) * (p - 2)
            )
            assert inv_wishart_trace_u(Partition((1, 1)), ones, 1, p) == F(
                1, (p - 1) * (p - 2)
            )
        for p in (6, 8, 12):
            assert inv_wishart_trace_o(Partition((2,)), ones, 1, p) == F(
                1, (p - 2) * (p - 4)
            )
            assert inv_wishart_trace_o(Partition((1, 1)), ones, 1, p) == F(
                1, (p - 2) * (p - 4)
            )

    def test_against_gram_oracle_weight_two(self):
        # assemble the two-term sums per class from the pseudo-inverted Gram
        n, p = 4, 9
        q = p - n
        eye = {1: F(n), 2: F(n)}
        words = all_words(2)
        gram = [
            [F(-q) ** len(o_cycle_type(o_compose(o_inverse(a), b))) for b in words]
            for a in words
        ]
        wg = rational_pinv(gram)
        for pi_idx, pw in enumerate(words):
            total = F(0)
            for t_idx, tw in enumerate(words):
                total += wg[pi_idx][t_idx] * eye[len(o_cycle_type(tw))] ** 0 * F(
                    n
                ) ** len(o_cycle_type(tw))
            expected = inv_wishart_trace_u(Partition(o_cycle_type(pw)), eye, n, p)
            assert total == expected

    def test_real_against_gram_oracle_weight_two(self):
        n, p = 3, 11
        q = p - n - 1
        eye = {1: F(n), 2: F(n)}
        words = all_pairing_words(2)
        gram = [
            [F(-q) ** len(o_coset_type(o_compose(o_inverse(a), b))) for b in words]
            for a in words
        ]
        wg = rational_pinv(gram)
        from wgcalc.combinatorics import enumerate_pairings

        for pi_idx, pairing in enumerate(enumerate_pairings(2)):
            total = F(0)
            for t_idx, tw in enumerate(words):
                total += wg[pi_idx][t_idx] * F(n) ** len(o_coset_type(tw))
            expected = inv_wishart_trace_o(pairing, eye, n, p)
            assert total == expected

    def test_permutation_argument(self):
        traces = {1: F(4), 2: F(4)}
        by_type = inv_wishart_trace_u(Partition((2,)), traces, 4, 12)
        by_perm = inv_wishart_trace_u(
            Permutation.from_cycles(2, [(1, 2)]), traces, 4, 12
        )
        assert by_type == by_perm

    def test_validity_range(self):
        with pytest.raises(ValidityError):
            inv_wishart_trace_u(Partition((2,)), {1: F(1), 2: F(1)}, 4, 5)
        with pytest.raises(ValidityError):
            inv_wishart_trace_o(Partition((2,)), {1: F(1), 2: F(1)}, 4, 7)


class TestGinibrePseudoInverse:
    def test_complex_weight_one(self):
        eye = identity_scale(4)
        assert ginibre_pinv_moment_c((1,), (1,), (1,), (1,), eye, 4, 10) == F(1, 60)
        assert ginibre_pinv_moment_c((1,), (1,), (1,), (2,), eye, 4, 10) == 0
        assert ginibre_pinv_moment_c((1,), (1,), (2,), (1,), eye, 4, 10) == 0
        inv = SIGMA_4.inverse()
        got = ginibre_pinv_moment_c((3,), (1,), (3,), (2,), SIGMA_4, 4, 10)
        assert got == inv[0][1] / 60

    def test_real_weight_one(self):
        eye = identity_scale(4)
        assert ginibre_pinv_moment_r((1, 1), (1, 1), eye, 4, 12) == F(1, 84)
        assert ginibre_pinv_moment_r((1, 2), (1, 1), eye, 4, 12) == 0
        inv = SIGMA_4.inverse()
        got = ginibre_pinv_moment_r((2, 2), (1, 3), SIGMA_4, 4, 12)
        assert got == inv[0][2] / 84

    def test_row_and_column_relabel_invariance(self):
        rng = random.Random(14)
        eye = identity_scale(4)
        n, p = 4, 10
        i, j, ip, jp = (1, 2), (1, 2), (2, 1), (2, 1)
        base = ginibre_pinv_moment_c(i, j, ip, jp, eye, n, p)
        for _ in range(5):
            row_map = {v + 1: w for v, w in enumerate(rng.sample(range(1, p + 1), p))}
            col_map = {v + 1: w for v, w in enumerate(rng.sample(range(1, n + 1), n))}
            relabeled = ginibre_pinv_moment_c(
                tuple(row_map[x] for x in i),
                tuple(col_map[x] for x in j),
                tuple(row_map[x] for x in ip),
                tuple(col_map[x] for x in jp),
                eye, n, p,
            )
            assert relabeled == base

    def test_numeric_matches_exact(self):
        exact = ginibre_pinv_moment_c((1,), (1,), (1,), (2,), SIGMA_4, 4, 10)
        numeric = ginibre_pinv_moment_c(
            (1,), (1,), (1,), (2,),
            ScaleMatrix.from_numeric(SIGMA_4.to_numpy()), 4, 10,
        )
        assert abs(complex(numeric) - complex(exact)) < 1e-12

    def test_validity_range(self):
        eye = identity_scale(4)
        with pytest.raises(ValidityError):
            ginibre_pinv_moment_c((1, 1), (1, 1), (1, 1), (1, 1), eye, 4, 5)
        with pytest.raises(ValidityError):
            ginibre_pinv_moment_c((1,) * 5, (1,) * 5, (1,) * 5, (1,) * 5, eye, 4, 12)
        with pytest.raises(ValidityError):
            ginibre_pinv_moment_r((1, 1, 1, 1), (1, 1, 1, 1), eye, 4, 7)

    def test_row_index_range(self):
        eye = identity_scale(4)
        with pytest.raises(ValueError):
            ginibre_pinv_moment_c((11,), (1,), (11,), (1,), eye, 4, 10)

    def test_real_ops_reject_complex_scale(self):
        a = np.array([[2.0, 0.5j], [-0.5j, 1.0]])
        complex_sigma = ScaleMatrix.from_numeric(a)
        with pytest.raises(ValidityError):
            ginibre_pinv_moment_r((1, 1), (1, 2), complex_sigma, 2, 8)
        with pytest.raises(ValidityError):
            compound_wishart_inv_r(
                (1, 2), complex_sigma, ShapeMatrix.from_numeric(np.eye(8)), 2, 8
            )

    def test_complex_scale_conjugation(self):
        # with a complex Hermitian scale, the covariance picks up the
        # conjugate of the inverse entry
        a = np.array([[2.0, 0.25 + 0.5j], [0.25 - 0.5j, 1.5]])
        sigma = ScaleMatrix.from_numeric(a)
        n, p = 2, 8
        got = ginibre_pinv_moment_c((1,), (1,), (1,), (2,), sigma, n, p)
        sinv = np.linalg.inv(a)
        expected = np.conj(sinv[0, 1]) / (p * (p - n))
        assert abs(complex(got) - expected) < 1e-14
        assert abs(complex(got).imag) > 1e-4


class TestCompoundWishartInverse:
    def test_complex_weight_one_closed_form(self):
        p = 12
        b = ShapeMatrix.from_rational(
            [[3 if r == c else (1 if abs(r - c) == 1 else 0) for c in range(p)]
             for r in range(p)]
        )
        trb = b.inv_power_traces(1)[1]
        sinv = SIGMA_3.inverse()
        got = compound_wishart_inv_c((1,), (2,), SIGMA_3, b, 3, p)
        assert got == trb * sinv[0][1] / (p * (p - 3))

    def test_real_weight_one_closed_form(self):
        p = 12
        b = ShapeMatrix.from_rational(
            [[3 if r == c else (1 if abs(r - c) == 1 else 0) for c in range(p)]
             for r in range(p)]
        )
        trb = b.inv_power_traces(1)[1]
        sinv = SIGMA_3.inverse()
        got = compound_wishart_inv_r((1, 2), SIGMA_3, b, 3, p)
        assert got == trb * sinv[0][1] / (p * (p - 3 - 1))

    def test_white_reduces_to_inverse_wishart_weight_one(self):
        p = 12
        eye_b = ShapeMatrix.identity(p)
        sinv = SIGMA_3.inverse()
        for i in (1, 2, 3):
            for j in (1, 2, 3):
                got_c = compound_wishart_inv_c((i,), (j,), SIGMA_3, eye_b, 3, p)
                assert got_c == sinv[i - 1][j - 1] / (p - 3)
                got_r = compound_wishart_inv_r((i, j), SIGMA_3, eye_b, 3, p)
                assert got_r == sinv[i - 1][j - 1] / (p - 3 - 1)

    def test_white_weight_two_trace_contractions(self):
        n, p = 3, 12
        eye_b = ShapeMatrix.identity(p)
        traces = SIGMA_3.inv_power_traces(2)
        sq = sum(
            compound_wishart_inv_c((a, b), (a, b), SIGMA_3, eye_b, n, p)
            for a in range(1, n + 1) for b in range(1, n + 1)
        )
        assert sq == inv_wishart_trace_u(Partition((1, 1)), traces, n, p)
        tr2 = sum(
            compound_wishart_inv_c((a, b), (b, a), SIGMA_3, eye_b, n, p)
            for a in range(1, n + 1) for b in range(1, n + 1)
        )
        assert tr2 == inv_wishart_trace_u(Partition((2,)), traces, n, p)
        sq_r = sum(
            compound_wishart_inv_r((a, a, b, b), SIGMA_3, eye_b, n, p)
            for a in range(1, n + 1) for b in range(1, n + 1)
        )
        assert sq_r == inv_wishart_trace_o(Partition((1, 1)), traces, n, p)
        tr2_r = sum(
            compound_wishart_inv_r((a, b, a, b), SIGMA_3, eye_b, n, p)
            for a in range(1, n + 1) for b in range(1, n + 1)
        )
        assert tr2_r == inv_wishart_trace_o(Partition((2,)), traces, n, p)

    def test_real_requires_symmetric_shape(self):
        p = 12
        rows = [[F(3) if r == c else F(0) for c in range(p)] for r in range(p)]
        rows[0][1] = F(1)
        lopsided = ShapeMatrix.from_rational(rows)
        with pytest.raises(ValidityError):
            compound_wishart_inv_r((1, 1), SIGMA_3, lopsided, 3, p)
        # the complex formula accepts non-symmetric shapes
        value = compound_wishart_inv_c((1, 1), (1, 1), SIGMA_3, lopsided, 3, p)
        assert isinstance(value, F)

    def test_singular_shape_rejected(self):
        p = 12
        singular = ShapeMatrix.from_rational(
            [[1 if r == 0 else 0 for _ in range(p)] for r in range(p)]
        )
        with pytest.raises(ValidityError):
            compound_wishart_inv_c((1,), (1,), SIGMA_3, singular, 3, p)

    def test_mixed_modes_rejected(self):
        p = 12
        b_num = ShapeMatrix.from_numeric(np.eye(p))
        with pytest.raises(ValueError):
            compound_wishart_inv_c((1,), (1,), SIGMA_3, b_num, 3, p)

    def test_validity_range(self):
        b = ShapeMatrix.identity(4)
        with pytest.raises(ValidityError):
            compound_wishart_inv_c((1, 1), (1, 1), SIGMA_3, b, 3, 4)
        with pytest.raises(ValidityError):
            compound_wishart_inv_r((1, 1, 2, 2), SIGMA_3, b, 3, 4)


class TestMatrices:
    def test_exact_inverse(self):
        inv = SIGMA_4.inverse()
        n = SIGMA_4.n
        rows = [[F(x) for x in row] for row in
                [[2, 1, 0, 0], [1, 3, 1, 0], [0, 1, 4, 1], [0, 0, 1, 5]]]
        for r in range(n):
            for c in range(n):
                entry = sum(rows[r][t] * inv[t][c] for t in range(n))
                assert entry == (1 if r == c else 0)

    def test_inv_power_traces(self):
        traces = SIGMA_3.inv_power_traces(3)
        inv = SIGMA_3.inverse()
        inv2 = [[sum(inv[r][t] * inv[t][c] for t in range(3)) for c in range(3)]
                for r in range(3)]
        assert traces[1] == sum(inv[d][d] for d in range(3))
        assert traces[2] == sum(inv2[d][d] for d in range(3))

    def test_not_positive_definite(self):
        bad = ScaleMatrix.from_rational([[1, 2], [2, 1]])
        with pytest.raises(ValidityError):
            bad.inverse()
        with pytest.raises(ValidityError):
            ScaleMatrix.from_numeric(np.array([[1.0, 2.0], [2.0, 1.0]])).inverse()

    def test_symmetry_validation(self):
        with pytest.raises(ValueError):
            ScaleMatrix.from_rational([[1, 2], [0, 1]])
        with pytest.raises(ValueError):
            ScaleMatrix.from_numeric(np.array([[1.0, 0.5], [0.0, 1.0]]))

    def test_numeric_hermitian_complex(self):
        a = np.array([[2.0, 1j], [-1j, 3.0]])
        sm = ScaleMatrix.from_numeric(a)
        inv = sm.inverse()
        assert np.allclose(a @ inv, np.eye(2))

    def test_shape_trace_monomial(self):
        b = ShapeMatrix.identity(5)
        assert b.inv_trace_monomial(Partition((2, 1))) == 25
