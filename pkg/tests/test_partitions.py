"""Partition combinatorics: worked examples and exhaustive properties."""

import itertools
from math import gcd

import pytest
from hypothesis import given, strategies as st

from paraspec.partitions import (
    InvalidDataError,
    MarkedPoint,
    ParabolicData,
    Partition,
    delta_p,
    delta_p_of_partitions,
    dual_partition,
    filtration_dims,
    flag_dim,
    gerbe_compatible,
    level_function,
    min_level_data,
    partitions_of,
    ramification_multiplicity_counts,
)


def P(*parts):
    return Partition(tuple(parts))


class TestDualPartition:
    @pytest.mark.parametrize("parts, expected", [
        ((3,), (1, 1, 1)),          # column of a single row
        ((1, 1, 1), (3,)),          # row of a single column
        ((2, 1), (2, 1)),
        ((2, 2), (2, 2)),
    ])
    def test_examples(self, parts, expected):
        # direct evaluation of mu_j = #{l : n_l >= j}
        brute = tuple(
            sum(1 for x in parts if x >= j) for j in range(1, parts[0] + 1)
        )
        assert brute == expected
        assert dual_partition(P(*parts)).parts == expected

    def test_involution_exhaustive(self):
        for r in range(1, 13):
            for p in partitions_of(r):
                assert dual_partition(dual_partition(p)).parts == p.parts
                assert dual_partition(p).total == p.total

    def test_rejects_bad_partitions(self):
        with pytest.raises(InvalidDataError):
            Partition((1, 2))
        with pytest.raises(InvalidDataError):
            Partition((2, 0))
        with pytest.raises(InvalidDataError):
            Partition(())


class TestLevelFunction:
    @pytest.mark.parametrize("mu, r, expected", [
        ((1, 1, 1), 3, (1, 2, 3)),  # singleton blocks
        ((3,), 3, (1, 1, 1)),       # single block of size 3
        ((2, 1), 3, (1, 1, 2)),     # blocks {1,2}, {3}
    ])
    def test_examples(self, mu, r, expected):
        assert level_function(P(*mu), r).gamma == expected

    def test_block_condition(self):
        # gamma_j = l iff the partial sums of mu bracket j
        for r in range(1, 13):
            for mu in partitions_of(r):
                gamma = level_function(mu, r).gamma
                partial = [0]
                for m in mu.parts:
                    partial.append(partial[-1] + m)
                for j in range(1, r + 1):
                    l = gamma[j - 1]
                    assert partial[l - 1] < j <= partial[l]

    def test_step_property(self):
        # gamma steps up exactly at the partial sums of mu
        for r in range(2, 13):
            for mu in partitions_of(r):
                gamma = level_function(mu, r).gamma
                sums = set(itertools.accumulate(mu.parts))
                for l in range(1, r):
                    assert (gamma[l] - gamma[l - 1] == 1) == (l in sums)

    def test_total_mismatch(self):
        with pytest.raises(InvalidDataError):
            level_function(P(2, 1), 4)


class TestMinLevelData:
    @pytest.mark.parametrize("n, i, expected_min, expected_set", [
        ((2, 1), 1, 2, {2, 3}),  # brute force over l=1..3: values (3, 2, 2)
        ((2, 1), 2, 1, {2}),     # values (2, 1, 2)
        ((1, 1), 1, 1, {2}),     # values (2, 1)
    ])
    def test_examples(self, n, i, expected_min, expected_set):
        part = P(*n)
        gamma = level_function(dual_partition(part), part.total)
        mv, ls = min_level_data(part, gamma, i)
        assert (mv, ls) == (expected_min, expected_set)

    def test_brute_force_exhaustive(self):
        # direct enumeration over l = 1..r for every partition of r <= 12
        for r in range(1, 13):
            for n in partitions_of(r):
                gamma = level_function(dual_partition(n), r)
                for i in range(1, n.num_parts + 1):
                    n_prev = sum(n.parts[i - 1:])
                    values = [i * gamma[l - 1] + n_prev - l for l in range(1, r + 1)]
                    mv, ls = min_level_data(n, gamma, i)
                    assert mv == min(values) == n.parts[i - 1]
                    assert ls == {l for l in range(1, r + 1) if values[l - 1] == mv}
                    assert any((i - 1) * gamma[l - 1] + n_prev - l == 0 for l in ls)

    def test_out_of_range(self):
        n = P(2, 1)
        gamma = level_function(dual_partition(n), 3)
        with pytest.raises(InvalidDataError):
            min_level_data(n, gamma, 3)
        with pytest.raises(InvalidDataError):
            min_level_data(n, gamma, 0)


class TestCountsAndFiltration:
    @pytest.mark.parametrize("mu, expected", [
        ((2, 1), {1: 1, 2: 1}),
        ((3,), {3: 1}),
        ((2, 2), {2: 2}),
    ])
    def test_multiplicity_counts(self, mu, expected):
        assert ramification_multiplicity_counts(P(*mu)) == expected

    def test_counts_weighted_sum(self):
        for r in range(1, 13):
            for mu in partitions_of(r):
                counts = ramification_multiplicity_counts(mu)
                assert sum(i * c for i, c in counts.items()) == r
                assert sum(counts.values()) == mu.num_parts

    @pytest.mark.parametrize("mu, expected", [
        ((2, 1), (2, 1)),    # m_1 = 1+1, m_2 = 1
        ((3,), (1, 1, 1)),   # counts {3:1} gives m = (1,1,1)
        ((1, 1, 1), (3,)),   # single filtration step of full dimension
    ])
    def test_filtration_examples(self, mu, expected):
        assert filtration_dims(P(*mu)) == expected

    def test_filtration_equals_dual(self):
        for r in range(1, 13):
            for mu in partitions_of(r):
                assert filtration_dims(mu) == dual_partition(mu).parts


class TestFlagDim:
    @pytest.mark.parametrize("parts, r, expected", [
        ((1, 1, 1), 3, 3),  # (9-3)/2
        ((3,), 3, 0),       # trivial flag
        ((2, 1), 3, 2),     # (9-5)/2
    ])
    def test_examples(self, parts, r, expected):
        assert flag_dim(P(*parts), r) == expected

    def test_always_integral_nonnegative(self):
        for r in range(1, 13):
            for p in partitions_of(r):
                f = flag_dim(p, r)
                assert f >= 0
                assert (r * r - sum(x * x for x in p.parts)) == 2 * f


def _data_from_partitions(r, parts_list, genus=0):
    need = max(1, 3 - 2 * genus)
    pts = [MarkedPoint.make(i, p.parts) for i, p in enumerate(parts_list)]
    while len(pts) < need:
        pts.append(MarkedPoint.make(len(pts), parts_list[-1].parts))
    return ParabolicData(rank=r, genus=genus, points=tuple(pts))


class TestDeltaP:
    def test_borel_forces_one(self):
        # full-flag point present => gcd includes a count of 1
        data = _data_from_partitions(3, [P(1, 1, 1), P(3), P(2, 1)])
        assert delta_p(data) == 1

    def test_single_point_22(self):
        assert delta_p_of_partitions([P(2, 2)]) == 2  # mu = (2,2), counts {2: 2}

    def test_two_points_22_and_4(self):
        # second point (4): mu = (1,1,1,1), counts {1: 4}; gcd(2, 4) = 2
        assert delta_p_of_partitions([P(2, 2), P(4,)]) == 2

    def test_borel_exhaustive(self):
        for r in range(2, 11):
            borel = P(*([1] * r))
            for other in partitions_of(r):
                assert delta_p_of_partitions([borel, other]) == 1

    def test_matches_brute_force(self):
        for r in range(2, 9):
            for pair in itertools.combinations_with_replacement(partitions_of(r), 2):
                counts = []
                for p in pair:
                    counts.extend(ramification_multiplicity_counts(dual_partition(p)).values())
                brute = 0
                for c in counts:
                    brute = gcd(brute, c)
                assert delta_p_of_partitions(pair) == brute


class TestGerbeCompatible:
    @pytest.mark.parametrize("d, e, delta, expected", [
        (1, 1, 1, 1),   # delta_P = 1 accepts everything
        (2, 4, 3, 2),   # brute force over lambda in {1,2,3}
        (0, 1, 2, None),
    ])
    def test_examples(self, d, e, delta, expected):
        assert gerbe_compatible(d, e, delta) == expected

    def test_brute_force_window(self):
        for delta in range(1, 13):
            for d in range(-20, 21):
                for e in range(-20, 21):
                    brute = next(
                        (lam for lam in range(1, delta + 1) if (e - lam * d) % delta == 0),
                        None,
                    )
                    assert gerbe_compatible(d, e, delta) == brute

    @given(st.integers(-100, 100), st.integers(-100, 100), st.integers(1, 30))
    def test_returned_witness_works(self, d, e, delta):
        lam = gerbe_compatible(d, e, delta)
        if lam is not None:
            assert 1 <= lam <= delta
            assert (e - lam * d) % delta == 0
        else:
            assert all((e - l * d) % delta != 0 for l in range(1, delta + 1))


class TestParabolicData:
    def test_standing_assumption(self):
        with pytest.raises(InvalidDataError):
            ParabolicData(rank=2, genus=0, points=(
                MarkedPoint.make(0, (1, 1)), MarkedPoint.make(1, (1, 1))))

    def test_partition_totals_checked(self):
        with pytest.raises(InvalidDataError):
            ParabolicData(rank=3, genus=1, points=(MarkedPoint.make(0, (1, 1)),))

    def test_duplicate_positions(self):
        with pytest.raises(InvalidDataError):
            ParabolicData(rank=2, genus=1, points=(
                MarkedPoint.make(0, (1, 1)), MarkedPoint.make(0, (2,))))

    def test_marked_point_derived_data(self):
        pt = MarkedPoint.make("inf", (1, 2), weights=["1/4", "1/2"])
        assert pt.partition.parts == (2, 1)       # sorted
        assert pt.original_order == (1, 2)        # kept as metadata
        assert pt.mu.parts == (2, 1)
        assert pt.gamma.gamma == (1, 1, 2)
        assert pt.flag_dim == 2
        assert pt.delta == 1
        assert not pt.is_borel()
