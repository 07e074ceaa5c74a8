"""Stringy evaluators: shifts, assembly, twists, weight specialization."""

from fractions import Fraction as F

import pytest

from paraspec.partitions import InvalidDataError
from paraspec.stringy import (
    CyclotomicNumber,
    EPolynomial,
    MissingSectorData,
    OrbifoldDescription,
    SectorComponent,
    cyclotomic_polynomial,
    exact_fraction_power,
    fermionic_shift,
    stringy_count,
    stringy_count_twisted,
    stringy_e,
    stringy_e_twisted,
    weight_consistency,
)


def z2_plane(minus_trace=(1, 2), twisted_zero=True):
    plane = SectorComponent(
        label="plane", eigen_exponents=(0, 0),
        e_poly=EPolynomial.from_dict({(2, 2): 1}),
        count_poly=(F(0), F(0), F(1)),
        twist_trace=(0, 1),
        twisted_e_poly=EPolynomial.from_dict({(2, 2): 1}),
    )
    origin = SectorComponent(
        label="origin", eigen_exponents=(1, 1),
        e_poly=EPolynomial.constant(1),
        count_poly=(F(1),),
        twist_trace=minus_trace,
        twisted_e_poly=EPolynomial.zero() if twisted_zero else EPolynomial.constant(1),
    )
    return OrbifoldDescription(
        ambient_dim=2, group=(("e", 1), ("s", 2)),
        sectors=(("e", (plane,)), ("s", (origin,))),
    )


class TestFermionicShift:
    @pytest.mark.parametrize("c, order, expected", [
        ((1, 1), 2, F(1)),
        ((0, 0, 0), 7, F(0)),
        ((1, 3), 4, F(1)),
        ((1,), 2, F(1, 2)),
    ])
    def test_examples(self, c, order, expected):
        assert fermionic_shift(c, order) == expected

    def test_out_of_range(self):
        with pytest.raises(InvalidDataError):
            fermionic_shift((2,), 2)
        with pytest.raises(InvalidDataError):
            fermionic_shift((-1,), 2)


class TestEPolynomial:
    def test_shift_and_eval(self):
        e = EPolynomial.from_dict({(1, 1): 2, (0, 0): 1})
        s = e.shift_uv(F(1, 2))
        assert s.as_dict() == {(F(3, 2), F(3, 2)): 2, (F(1, 2), F(1, 2)): 1}
        assert s.evaluate(4, 4) == 2 * 4 ** 3 + 4
        # on the diagonal the exponents combine first, so this stays exact
        assert s.evaluate(3, 3) == 2 * 27 + 3
        with pytest.raises(InvalidDataError):
            s.evaluate(3, 5)  # off the diagonal 3^(3/2) is irrational

    def test_ring_ops(self):
        a = EPolynomial.from_dict({(1, 0): 1})
        b = EPolynomial.from_dict({(0, 1): 1})
        assert (a + b).as_dict() == {(F(1), F(0)): 1, (F(0), F(1)): 1}
        assert (a * b).as_dict() == {(F(1), F(1)): 1}
        assert (a + a.scale(-1)).is_zero()

    def test_exact_power(self):
        assert exact_fraction_power(F(9), F(1, 2)) == 3
        assert exact_fraction_power(F(8, 27), F(2, 3)) == F(4, 9)
        with pytest.raises(InvalidDataError):
            exact_fraction_power(F(2), F(1, 2))


class TestCyclotomic:
    def test_polynomials(self):
        assert cyclotomic_polynomial(1) == (-1, 1)
        assert cyclotomic_polynomial(2) == (1, 1)
        assert cyclotomic_polynomial(4) == (1, 0, 1)
        assert cyclotomic_polynomial(6) == (1, -1, 1)
        assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)

    def test_compatible_system(self):
        # zeta_{mn}^n = zeta_m
        for m, n in ((2, 3), (3, 2), (4, 3), (2, 2)):
            lifted = CyclotomicNumber.root_of_unity(1, m * n)
            power = CyclotomicNumber.from_rational(1)
            for _ in range(n):
                power = power * lifted
            assert power == CyclotomicNumber.root_of_unity(1, m)

    def test_minus_one_and_i(self):
        minus = CyclotomicNumber.root_of_unity(1, 2)
        assert minus.as_rational() == F(-1)
        i = CyclotomicNumber.root_of_unity(1, 4)
        assert (i * i).as_rational() == F(-1)
        assert i.as_rational() is None

    def test_order_of_every_root(self):
        for n in (2, 3, 4, 5, 6, 8, 12):
            z = CyclotomicNumber.root_of_unity(1, n)
            acc = CyclotomicNumber.from_rational(1)
            for k in range(1, n + 1):
                acc = acc * z
                if k < n:
                    assert acc != 1
            assert acc == 1


class TestStringyE:
    def test_trivial_group(self):
        v = SectorComponent(label="V", eigen_exponents=(0, 0),
                            e_poly=EPolynomial.from_dict({(2, 2): 1}))
        desc = OrbifoldDescription(ambient_dim=2, group=(("e", 1),),
                                   sectors=(("e", (v,)),))
        assert stringy_e(desc) == EPolynomial.from_dict({(2, 2): 1})

    def test_z2_plane(self):
        assert stringy_e(z2_plane()) == EPolynomial.from_dict({(2, 2): 1, (1, 1): 1})

    def test_z2_trivial_action_on_point(self):
        pt = SectorComponent(label="pt", eigen_exponents=(),
                             e_poly=EPolynomial.constant(1))
        desc = OrbifoldDescription(ambient_dim=0, group=(("e", 1), ("s", 2)),
                                   sectors=(("e", (pt,)), ("s", (pt,))))
        assert stringy_e(desc) == EPolynomial.constant(2)

    def test_missing_data_named(self):
        bad = SectorComponent(label="hole", eigen_exponents=(0, 0))
        desc = OrbifoldDescription(ambient_dim=2, group=(("e", 1),),
                                   sectors=(("e", (bad,)),))
        with pytest.raises(MissingSectorData, match="hole"):
            stringy_e(desc)


class TestStringyCount:
    def test_examples(self):
        desc = z2_plane()
        assert stringy_count(desc, 5) == 30          # q^2 + q
        assert stringy_count(desc, 9) == 90
        v = SectorComponent(label="V", eigen_exponents=(0, 0),
                            count_poly=(F(0), F(0), F(1)))
        triv = OrbifoldDescription(ambient_dim=2, group=(("e", 1),),
                                   sectors=(("e", (v,)),))
        assert stringy_count(triv, 7) == 49

    def test_fractional_power_needs_perfect_power(self):
        comp = SectorComponent(label="c", eigen_exponents=(1,),
                               count_poly=(F(1),))
        desc = OrbifoldDescription(ambient_dim=1, group=(("e", 1), ("s", 2)),
                                   sectors=(("e", (SectorComponent(
                                       label="l", eigen_exponents=(0,),
                                       count_poly=(F(0), F(1))),)),
                                            ("s", (comp,))))
        assert stringy_count(desc, 9) == 12  # 9 + 9^(1/2) = 9 + 3
        with pytest.raises(InvalidDataError):
            stringy_count(desc, 7)


class TestTwisted:
    def test_all_traces_one_reproduces_untwisted(self):
        desc = z2_plane(minus_trace=(0, 1))
        for q in (2, 3, 5):
            assert stringy_count_twisted(desc, q) == stringy_count(desc, q)

    def test_z2_plane_sign_twist(self):
        desc = z2_plane()
        assert stringy_count_twisted(desc, 5) == 20     # q^2 - q, rational output
        assert isinstance(stringy_count_twisted(desc, 5), F)

    def test_order_four_trace(self):
        plane = SectorComponent(label="plane", eigen_exponents=(0, 0),
                                count_poly=(F(0), F(0), F(1)), twist_trace=(0, 1))
        axis = SectorComponent(label="axis", eigen_exponents=(0, 0),
                               count_poly=(F(0), F(1)), twist_trace=(1, 4))
        desc = OrbifoldDescription(ambient_dim=2, group=(("e", 1), ("g", 4)),
                                   sectors=(("e", (plane,)), ("g", (axis,))))
        got = stringy_count_twisted(desc, 3)
        i = CyclotomicNumber.root_of_unity(1, 4)
        assert got == CyclotomicNumber.from_rational(9) + i * CyclotomicNumber.from_rational(3)

    def test_real_output_for_order_two_traces(self):
        desc = z2_plane()
        out = stringy_count_twisted(desc, 7)
        assert isinstance(out, F) and out == 42

    def test_twisted_e(self):
        desc = z2_plane()
        assert stringy_e_twisted(desc) == EPolynomial.from_dict({(2, 2): 1})
        same = z2_plane(twisted_zero=False)
        assert stringy_e_twisted(same) == stringy_e(same)

    def test_missing_trace_named(self):
        plane = SectorComponent(label="plane", eigen_exponents=(0, 0),
                                count_poly=(F(1),))
        desc = OrbifoldDescription(ambient_dim=2, group=(("e", 1),),
                                   sectors=(("e", (plane,)),))
        with pytest.raises(MissingSectorData, match="plane"):
            stringy_count_twisted(desc, 3)


class TestWeightConsistency:
    def test_z2_plane_all_small_q(self):
        desc = z2_plane()
        for q in (2, 3, 4, 5):
            assert weight_consistency(desc, q)

    def test_trivial_group_contract(self):
        v = SectorComponent(label="V", eigen_exponents=(0, 0),
                            e_poly=EPolynomial.from_dict({(2, 2): 1}),
                            count_poly=(F(0), F(0), F(1)))
        desc = OrbifoldDescription(ambient_dim=2, group=(("e", 1),),
                                   sectors=(("e", (v,)),))
        for q in (2, 3, 4, 5):
            assert weight_consistency(desc, q)

    def test_corrupted_counts_detected(self):
        plane = SectorComponent(label="plane", eigen_exponents=(0, 0),
                                e_poly=EPolynomial.from_dict({(2, 2): 1}),
                                count_poly=(F(0), F(1), F(1)))  # wrong linear term
        origin = SectorComponent(label="origin", eigen_exponents=(1, 1),
                                 e_poly=EPolynomial.constant(1), count_poly=(F(1),))
        desc = OrbifoldDescription(ambient_dim=2, group=(("e", 1), ("s", 2)),
                                   sectors=(("e", (plane,)), ("s", (origin,))))
        assert not weight_consistency(desc, 3)

    def test_half_integer_shift_exact(self):
        line = SectorComponent(label="line", eigen_exponents=(0,),
                               e_poly=EPolynomial.from_dict({(1, 1): 1}),
                               count_poly=(F(0), F(1)))
        origin = SectorComponent(label="origin", eigen_exponents=(1,),
                                 e_poly=EPolynomial.constant(1), count_poly=(F(1),))
        desc = OrbifoldDescription(ambient_dim=1, group=(("e", 1), ("s", 2)),
                                   sectors=(("e", (line,)), ("s", (origin,))))
        # E_st = uv + (uv)^(1/2): at u=v=q both sides are q^2 + q
        for q in (2, 3, 4, 5):
            assert weight_consistency(desc, q)


class TestValidation:
    def test_identity_required(self):
        with pytest.raises(InvalidDataError):
            OrbifoldDescription(ambient_dim=1, group=(("s", 2),), sectors=())

    def test_exponent_dimension_checked(self):
        bad = SectorComponent(label="b", eigen_exponents=(0,))
        with pytest.raises(InvalidDataError):
            OrbifoldDescription(ambient_dim=2, group=(("e", 1),),
                                sectors=(("e", (bad,)),))

    def test_exponent_range_checked(self):
        bad = SectorComponent(label="b", eigen_exponents=(2, 0))
        with pytest.raises(InvalidDataError):
            OrbifoldDescription(ambient_dim=2, group=(("e", 1), ("s", 2)),
                                sectors=(("s", (bad,)),))

    def test_additivity_with_empty_sectors(self):
        v = SectorComponent(label="V", eigen_exponents=(0, 0),
                            e_poly=EPolynomial.from_dict({(2, 2): 1}))
        desc = OrbifoldDescription(ambient_dim=2, group=(("e", 1), ("s", 2)),
                                   sectors=(("e", (v,)), ("s", ())))
        assert stringy_e(desc) == EPolynomial.from_dict({(2, 2): 1})
