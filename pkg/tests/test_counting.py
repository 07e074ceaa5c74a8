"""Sampling, fiber counting, zeta reconstruction, class numbers."""

import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from paraspec import polys
from paraspec.counting import (
    INFINITY,
    FqSpec,
    SamplingExhausted,
    ZetaFitError,
    characteristic_divisor_gcd,
    class_numbers,
    count_curve,
    count_fiber,
    functional_equation_holds,
    is_integral,
    lambda_poly_irreducible,
    local_equation_at,
    sample_characteristic,
    weil_check,
    zeta_fit,
    zeta_pipeline,
)
from paraspec.fields import GF
from paraspec.hitchin import normalized_genus_closed_form
from paraspec.partitions import InvalidDataError, MarkedPoint, ParabolicData, delta_p
from paraspec.resolution import resolve


def borel_data(rank, positions):
    pts = tuple(MarkedPoint.make(p, (1,) * rank) for p in positions)
    return ParabolicData(rank=rank, genus=0, points=pts)


FOUR_BOREL = borel_data(2, (0, 1, 2, INFINITY))


@pytest.fixture(scope="module")
def four_borel_char():
    return sample_characteristic(FOUR_BOREL, q=5, seed=1)


class TestFqSpec:
    def test_tame_guard(self):
        FqSpec(5).check_tame(2)
        with pytest.raises(InvalidDataError):
            FqSpec(5).check_tame(5)
        with pytest.raises(InvalidDataError):
            FqSpec(9).check_tame(3)  # characteristic 3, not 9

    def test_prime_power_only(self):
        with pytest.raises(ValueError):
            FqSpec(12).field()


class TestSampling:
    def test_four_borel_alpha2_proportional(self, four_borel_char):
        # the only 1-dimensional system: alpha_2 = c * t(t-1)(t-2)
        K = four_borel_char.field
        base = [0, 1]
        for z in (1, 2):
            base = polys.mul(K, base, [K.neg(K.from_int(z)), K.one])
        a2 = list(four_borel_char.alphas[1])
        c = K.div(a2[-1], base[-1])
        assert not K.is_zero(c)
        assert polys.scale(K, base, c) == a2
        assert list(four_borel_char.alphas[0]) == []  # trace summand is empty

    def test_accepted_sample_is_integral(self, four_borel_char):
        assert is_integral(four_borel_char)

    def test_accepted_sample_locally_generic(self, four_borel_char):
        assert all(res.generic for res in four_borel_char.point_resolutions)

    def test_exhaustion_when_all_systems_vanish(self):
        data = ParabolicData(
            rank=3, genus=0,
            points=tuple(MarkedPoint.make(p, (2, 1)) for p in (0, 1, 2)),
        )
        with pytest.raises(SamplingExhausted):
            sample_characteristic(data, q=7, seed=0, max_draws=25)

    def test_genus_zero_only(self):
        data = ParabolicData(rank=2, genus=1, points=(MarkedPoint.make(0, (1, 1)),))
        with pytest.raises(InvalidDataError):
            sample_characteristic(data, q=5, seed=0)

    def test_small_characteristic_rejected(self):
        with pytest.raises(InvalidDataError):
            sample_characteristic(borel_data(3, (0, 1, 2)), q=3, seed=0)

    def test_local_equation_matches_direct_resolution(self, four_borel_char):
        # the induced local model at each marked point resolves to total ramification
        for pt in FOUR_BOREL.points:
            eq = local_equation_at(FOUR_BOREL, four_borel_char.field,
                                   four_borel_char.alphas, pt, 24)
            res = resolve(eq)
            assert res.generic
            assert res.profile.geometric_multiset() == (2,)


class TestIsIntegral:
    def test_square_discriminant_argument(self):
        K = GF(5)
        a2 = [0, 1]
        for z in (1, 2):
            a2 = polys.mul(K, a2, [K.neg(K.from_int(z)), K.one])
        lam = [polys.neg(K, a2), [], [K.one]]
        assert lambda_poly_irreducible(K, lam)

    def test_factorable(self):
        K = GF(5)
        # lambda^2 - t^2 = (lambda - t)(lambda + t)
        lam = [[0, 0, K.neg(K.one)], [], [K.one]]
        assert not lambda_poly_irreducible(K, lam)

    def test_zero_tail(self):
        K = GF(5)
        lam = [[], [], [], [K.one]]  # lambda^3
        assert not lambda_poly_irreducible(K, lam)

    def test_repeated_factor(self):
        K = GF(7)
        # (lambda - t)^2
        lam = [[0, 0, K.one], [0, K.from_int(-2 % 7)], [K.one]]
        assert not lambda_poly_irreducible(K, lam)

    def test_cubic_with_rational_root(self):
        K = GF(7)
        # (lambda - t)(lambda^2 - t(t-1)(t-2) - 1): reducible with a nontrivial split
        a = [0, 1]
        for z in (1, 2):
            a = polys.mul(K, a, [K.neg(K.from_int(z)), K.one])
        quad = [polys.sub(K, polys.neg(K, a), [K.one]), [], [K.one]]
        lin = [[K.zero, K.neg(K.one)], [K.one]]
        prod = [[] for _ in range(4)]
        for i, ci in enumerate(lin):
            for j, cj in enumerate(quad):
                prod[i + j] = polys.add(K, prod[i + j], polys.mul(K, ci, cj))
        assert not lambda_poly_irreducible(K, prod)

    def test_extension_field_coefficients(self):
        K = GF(9)
        # lambda^2 - x*t(t-1)(t-2) with x a generator: still irreducible
        gen = K.from_coeffs([0, 1])
        a = [K.zero, gen]
        for z in (1, 2):
            a = polys.mul(K, a, [K.neg(K.from_int(z)), K.one])
        lam = [polys.neg(K, a), [], [K.one]]
        assert lambda_poly_irreducible(K, lam)


class TestCountFiber:
    def test_marked_totally_ramified(self, four_borel_char):
        for m in (1, 2, 3):
            assert count_fiber(four_borel_char, 0, m) == 1
            assert count_fiber(four_borel_char, INFINITY, m) == 1

    def test_unmarked_fibers_q5(self, four_borel_char):
        # alpha_2 = c t(t-1)(t-2); the two eigenvalues above t0 exist iff
        # -alpha_2(t0) is a nonzero square
        K = four_borel_char.field
        a2 = list(four_borel_char.alphas[1])
        for t0 in (3, 4):
            v = K.neg(polys.evaluate(K, a2, K.from_int(t0)))
            sols = sum(1 for y in range(5) if (y * y - v) % 5 == 0)
            assert count_fiber(four_borel_char, t0, 1) == sols
            assert sols == 2  # 3*2*1 = 6 = 1 and 4*3*2 = 24 = 4 are squares mod 5

    def test_fiber_multiplicity_sum_is_rank(self, four_borel_char):
        # over the splitting field every unmarked fiber carries r roots with multiplicity
        K = four_borel_char.field
        lam = four_borel_char.lam_coeffs()
        for t0 in (3, 4):
            f = [polys.evaluate(K, a, K.from_int(t0)) for a in lam]
            assert polys.degree(polys.normalize(K, f)) == 2


class TestCountCurve:
    def test_four_borel_n1_brute_force(self, four_borel_char):
        # independent enumeration of lambda^2 + alpha_2(t) = 0 over F_5 plus infinity
        K = four_borel_char.field
        a2 = list(four_borel_char.alphas[1])
        brute = 0
        for t0 in range(5):
            v = polys.evaluate(K, a2, K.from_int(t0))
            brute += sum(1 for y in range(5) if (y * y + v) % 5 == 0) if t0 not in (0, 1, 2) else 1
        brute += 1  # marked infinity, totally ramified
        assert brute == 8
        assert count_curve(four_borel_char, 1) == 8

    def test_counts_match_fitted_l_beyond_fit_window(self, four_borel_char):
        zd = zeta_pipeline(four_borel_char, 1, depth=3)
        assert zd.counts == (8, 32, 104)
        assert zd.L == (1, 2, 5)

    def test_degenerate_rank_one_is_projective_line(self):
        # r = 1 has no parabolic content; the count of P^1 is the base case q^m + 1
        for q in (5, 9):
            K = GF(q)
            for m in (1, 2):
                big = GF(q ** m)
                assert sum(1 for _ in big.elements()) + 1 == q ** m + 1


class TestZetaFit:
    def test_example(self):
        assert zeta_fit([8], 5, 1) == [1, 2, 5]

    def test_genus_zero(self):
        assert zeta_fit([6], 5, 0) == [1]
        with pytest.raises(ZetaFitError):
            zeta_fit([7], 5, 0)

    def test_a_zero_case(self):
        assert zeta_fit([6], 5, 1) == [1, 0, 5]

    def test_inconsistent_counts_fail(self):
        with pytest.raises(ZetaFitError):
            zeta_fit([8, 33], 5, 1)  # N_2 must be 32 for L = 1+2T+5T^2

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 3), st.sampled_from([3, 5, 7, 9]),
           st.lists(st.integers(-3, 3), min_size=3, max_size=3))
    def test_roundtrip_from_functional_l(self, g, q, bs):
        # any integer L obeying the functional equation round-trips through counts
        b = [1] + bs[:g]
        L = b + [0] * g
        for i in range(g - 1, -1, -1):
            L[2 * g - i] = q ** (g - i) * b[i]
        ps = []
        counts = []
        for k in range(1, 2 * g + 1):
            bk = L[k] if k < len(L) else 0
            acc = k * bk + sum(L[i] * ps[k - i - 1] for i in range(1, min(k, len(L))))
            ps.append(-acc)
            counts.append(q ** k + 1 - ps[-1])
        assert zeta_fit(counts, q, g) == L
        assert functional_equation_holds(L, q, g)


class TestClassNumbers:
    def test_examples(self):
        assert class_numbers([1, 2, 5]) == (8, 8)
        assert class_numbers([1]) == (1, 1)
        assert class_numbers([1, 0, 5]) == (6, 6)

    def test_prym_division_failure(self):
        with pytest.raises(ZetaFitError):
            class_numbers([1, 2, 5], base_L=[1, 2])  # 8 not divisible by 3


class TestWeilCheck:
    def test_examples(self):
        assert weil_check([8], 1, 5)       # |2| <= 2 sqrt 5
        assert weil_check([6], 3, 5)       # N = q + 1
        bad = 5 + 2 + math.ceil(2 * 1 * math.sqrt(5)) + 1
        assert not weil_check([bad], 1, 5)


class TestDivisorGcd:
    def test_four_borel(self, four_borel_char):
        assert delta_p(FOUR_BOREL) == 1
        assert characteristic_divisor_gcd(four_borel_char) == 1


class TestExtensionFieldPipeline:
    def test_q9_four_borel(self):
        char = sample_characteristic(FOUR_BOREL, q=9, seed=3)
        gt, _ = normalized_genus_closed_form(FOUR_BOREL)
        zd = zeta_pipeline(char, gt, depth=2)
        assert len(zd.L) - 1 == 2 * gt
        assert functional_equation_holds(list(zd.L), 9, gt)
        assert weil_check(zd.counts, gt, 9)
        assert characteristic_divisor_gcd(char) == 1
