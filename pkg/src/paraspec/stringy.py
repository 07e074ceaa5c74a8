"""Stringy invariants of finite-abelian quotient orbifolds from sector data.

Evaluators only: the caller supplies, per group element and per fixed-locus
component, an E-polynomial and/or a point-count polynomial, the tangent
eigenvalue exponents (whence the Fermionic shift), and optionally a
root-of-unity trace for the gerbe twist.  Everything is exact: bivariate
polynomials with rational exponents, rationals, and cyclotomic numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Optional, Sequence

from .partitions import InvalidDataError


class MissingSectorData(ValueError):
    """A sector component lacks the data the requested evaluator needs."""


# -- exact powers ----------------------------------------------------------------


def exact_fraction_power(base: Fraction, exp: Fraction) -> Fraction:
    """base**exp as an exact rational, or raise when it is irrational."""
    base = Fraction(base)
    exp = Fraction(exp)
    if exp.denominator == 1:
        return base ** exp.numerator
    if base < 0:
        raise InvalidDataError(f"({base})**({exp}) is not rational")
    num, den = base.numerator, base.denominator

    def int_root(n: int, k: int) -> int:
        if n in (0, 1):
            return n
        lo, hi = 1, n
        while lo < hi:
            mid = (lo + hi) // 2
            if mid ** k < n:
                lo = mid + 1
            else:
                hi = mid
        if lo ** k != n:
            raise InvalidDataError(
                f"{n} has no integer {k}-th root: evaluate at a perfect power or keep symbolic"
            )
        return lo

    k = exp.denominator
    root = Fraction(int_root(num, k), int_root(den, k))
    return root ** exp.numerator


# -- E-polynomials with rational exponents ----------------------------------------


@dataclass(frozen=True)
class EPolynomial:
    """Integer combination of monomials u^p v^q with rational exponents."""

    terms: tuple  # sorted tuple of ((p, q), coeff) with Fraction exponents

    @classmethod
    def from_dict(cls, d: dict) -> "EPolynomial":
        clean = {}
        for (p, q), c in d.items():
            c = int(c)
            if c == 0:
                continue
            key = (Fraction(p), Fraction(q))
            clean[key] = clean.get(key, 0) + c
        return cls(tuple(sorted((k, v) for k, v in clean.items() if v != 0)))

    @classmethod
    def zero(cls) -> "EPolynomial":
        return cls(())

    @classmethod
    def constant(cls, c: int) -> "EPolynomial":
        return cls.from_dict({(0, 0): c})

    @classmethod
    def uv_power(cls, exp) -> "EPolynomial":
        e = Fraction(exp)
        return cls.from_dict({(e, e): 1})

    def as_dict(self) -> dict:
        return {k: v for k, v in self.terms}

    def __add__(self, other: "EPolynomial") -> "EPolynomial":
        d = self.as_dict()
        for k, v in other.terms:
            d[k] = d.get(k, 0) + v
        return EPolynomial.from_dict(d)

    def __mul__(self, other: "EPolynomial") -> "EPolynomial":
        d: dict = {}
        for (p1, q1), c1 in self.terms:
            for (p2, q2), c2 in other.terms:
                k = (p1 + p2, q1 + q2)
                d[k] = d.get(k, 0) + c1 * c2
        return EPolynomial.from_dict(d)

    def scale(self, c: int) -> "EPolynomial":
        return EPolynomial.from_dict({k: v * c for k, v in self.terms})

    def shift_uv(self, f) -> "EPolynomial":
        """Multiply by (uv)^f."""
        f = Fraction(f)
        return EPolynomial(tuple(((p + f, q + f), c) for (p, q), c in self.terms))

    def evaluate(self, u, v) -> Fraction:
        u, v = Fraction(u), Fraction(v)
        total = Fraction(0)
        for (p, q), c in self.terms:
            if u == v:
                # combine exponents first so half-integer shifts stay exact on the diagonal
                total += c * exact_fraction_power(u, p + q)
            else:
                total += c * exact_fraction_power(u, p) * exact_fraction_power(v, q)
        return total

    def is_zero(self) -> bool:
        return not self.terms

    def denominator_lcm(self) -> int:
        dens = [1]
        for (p, q), _ in self.terms:
            dens.append(p.denominator)
            dens.append(q.denominator)
        return lcm(*dens)

    def __repr__(self):
        if not self.terms:
            return "EPolynomial(0)"
        bits = [f"{c}*u^{p}v^{q}" for (p, q), c in self.terms]
        return "EPolynomial(" + " + ".join(bits) + ")"


# -- cyclotomic numbers ------------------------------------------------------------


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients (ascending) of the n-th cyclotomic polynomial."""
    if n == 1:
        return (-1, 1)
    # x^n - 1 divided by the product of all proper cyclotomic divisors
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            phi = cyclotomic_polynomial(d)
            out = [0] * (len(num) - len(phi) + 1)
            rem = list(num)
            for k in range(len(out) - 1, -1, -1):
                c = rem[k + len(phi) - 1] // phi[-1]
                out[k] = c
                if c:
                    for i, pc in enumerate(phi):
                        rem[k + i] -= c * pc
            if any(rem):
                raise ArithmeticError("cyclotomic division failed")  # pragma: no cover
            num = out
    return tuple(num)


@dataclass(frozen=True)
class CyclotomicNumber:
    """Element of Q(zeta_order), reduced modulo the cyclotomic polynomial."""

    order: int
    coeffs: tuple  # Fractions, length deg Phi_order

    @classmethod
    def from_rational(cls, x, order: int = 1) -> "CyclotomicNumber":
        degree = len(cyclotomic_polynomial(order)) - 1
        coeffs = [Fraction(0)] * degree
        coeffs[0] = Fraction(x)
        return cls(order, tuple(coeffs))

    @classmethod
    def root_of_unity(cls, num: int, order: int) -> "CyclotomicNumber":
        """zeta_order^num in the compatible tower (zeta_{mn}^n = zeta_m)."""
        if order < 1:
            raise InvalidDataError("root-of-unity order must be positive")
        phi = cyclotomic_polynomial(order)
        degree = len(phi) - 1
        raw = [Fraction(0)] * (num % order + 1)
        raw[num % order] = Fraction(1)
        return cls(order, tuple(_reduce_mod_phi(raw, phi, degree)))

    def lift(self, new_order: int) -> "CyclotomicNumber":
        if new_order == self.order:
            return self
        if new_order % self.order != 0:
            raise InvalidDataError("can only lift to a multiple order")
        k = new_order // self.order
        phi = cyclotomic_polynomial(new_order)
        degree = len(phi) - 1
        raw = [Fraction(0)] * ((len(self.coeffs) - 1) * k + 1 if self.coeffs else 1)
        for i, c in enumerate(self.coeffs):
            raw[i * k] += c
        return CyclotomicNumber(new_order, tuple(_reduce_mod_phi(raw, phi, degree)))

    def __add__(self, other):
        other = _coerce_cyc(other)
        n = lcm(self.order, other.order)
        a, b = self.lift(n), other.lift(n)
        return CyclotomicNumber(n, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    def __mul__(self, other):
        other = _coerce_cyc(other)
        n = lcm(self.order, other.order)
        a, b = self.lift(n), other.lift(n)
        phi = cyclotomic_polynomial(n)
        degree = len(phi) - 1
        raw = [Fraction(0)] * (2 * degree - 1 if degree else 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        raw[i + j] += x * y
        return CyclotomicNumber(n, tuple(_reduce_mod_phi(raw, phi, degree)))

    def __sub__(self, other):
        other = _coerce_cyc(other)
        return self + other * CyclotomicNumber.from_rational(-1)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CyclotomicNumber.from_rational(other)
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        n = lcm(self.order, other.order)
        return self.lift(n).coeffs == other.lift(n).coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def as_rational(self) -> Optional[Fraction]:
        """The value as a Fraction when it is rational, else None."""
        if all(c == 0 for c in self.coeffs[1:]):
            return self.coeffs[0] if self.coeffs else Fraction(0)
        return None

    def __repr__(self):
        rat = self.as_rational()
        if rat is not None:
            return f"CyclotomicNumber({rat})"
        return f"CyclotomicNumber(order={self.order}, coeffs={self.coeffs})"


def _coerce_cyc(x) -> CyclotomicNumber:
    if isinstance(x, CyclotomicNumber):
        return x
    return CyclotomicNumber.from_rational(Fraction(x))


def _reduce_mod_phi(raw: list, phi: tuple, degree: int) -> list:
    raw = list(raw) + [Fraction(0)] * max(0, degree - len(raw))
    for k in range(len(raw) - 1, degree - 1, -1):
        c = raw[k]
        if c:
            for i, pc in enumerate(phi[:-1]):
                raw[k - degree + i] -= c * pc
            raw[k] = Fraction(0)
    return raw[:degree]


# -- orbifold sector data -----------------------------------------------------------


@dataclass(frozen=True)
class SectorComponent:
    """One connected component of a fixed-locus sector."""

    label: str
    eigen_exponents: tuple[int, ...]
    e_poly: Optional[EPolynomial] = None
    count_poly: Optional[tuple] = None  # Fractions, ascending powers of q
    twist_trace: Optional[tuple[int, int]] = None  # (num, order): zeta_order^num
    twisted_e_poly: Optional[EPolynomial] = None

    def count_at(self, q) -> Fraction:
        if self.count_poly is None:
            raise MissingSectorData(f"component {self.label!r} has no point-count data")
        total = Fraction(0)
        for i, c in enumerate(self.count_poly):
            total += Fraction(c) * Fraction(q) ** i
        return total


@dataclass(frozen=True)
class OrbifoldDescription:
    """Declarative sector data for a finite abelian quotient."""

    ambient_dim: int
    group: tuple[tuple[str, int], ...]  # (element label, order); abelian, classes = elements
    sectors: tuple[tuple[str, tuple[SectorComponent, ...]], ...]

    def __post_init__(self):
        orders = dict(self.group)
        if not any(o == 1 for o in orders.values()):
            raise InvalidDataError("the identity element (order 1) must be present")
        labels = [lbl for lbl, _ in self.group]
        if len(set(labels)) != len(labels):
            raise InvalidDataError("group element labels must be distinct")
        sector_map = dict(self.sectors)
        for lbl in sector_map:
            if lbl not in orders:
                raise InvalidDataError(f"sector {lbl!r} does not name a group element")
        for lbl, comps in self.sectors:
            order = orders[lbl]
            for comp in comps:
                if len(comp.eigen_exponents) != self.ambient_dim:
                    raise InvalidDataError(
                        f"component {comp.label!r}: need {self.ambient_dim} eigenvalue exponents"
                    )
                if any(not 0 <= c < order for c in comp.eigen_exponents):
                    raise InvalidDataError(
                        f"component {comp.label!r}: exponents must lie in [0, {order})"
                    )
                if order == 1 and any(comp.eigen_exponents):
                    raise InvalidDataError("identity sector must have zero exponents")

    def components(self):
        orders = dict(self.group)
        for lbl, comps in self.sectors:
            for comp in comps:
                yield lbl, orders[lbl], comp


def fermionic_shift(exponents: Sequence[int], order: int) -> Fraction:
    """Sum of the eigenvalue exponents divided by the element's order."""
    if order < 1:
        raise InvalidDataError("order must be a positive integer")
    if any(not 0 <= c < order for c in exponents):
        raise InvalidDataError(f"exponents {tuple(exponents)} out of range [0, {order})")
    return Fraction(sum(exponents), order)


def stringy_e(desc: OrbifoldDescription) -> EPolynomial:
    """Sum over sectors of E(component) * (uv)^shift."""
    total = EPolynomial.zero()
    for lbl, order, comp in desc.components():
        if comp.e_poly is None:
            raise MissingSectorData(f"sector {lbl!r}, component {comp.label!r}: no E-polynomial")
        shift = fermionic_shift(comp.eigen_exponents, order)
        total = total + comp.e_poly.shift_uv(shift)
    return total


def stringy_e_twisted(desc: OrbifoldDescription) -> EPolynomial:
    """Same assembly over the supplied twisted (isotypic) E-polynomials."""
    total = EPolynomial.zero()
    for lbl, order, comp in desc.components():
        if comp.twisted_e_poly is None:
            raise MissingSectorData(
                f"sector {lbl!r}, component {comp.label!r}: no twisted E-polynomial"
            )
        shift = fermionic_shift(comp.eigen_exponents, order)
        total = total + comp.twisted_e_poly.shift_uv(shift)
    return total


def stringy_count(desc: OrbifoldDescription, q) -> Fraction:
    """Sum over sectors of q^shift * #component(q); exact, q a prime power."""
    total = Fraction(0)
    for lbl, order, comp in desc.components():
        shift = fermionic_shift(comp.eigen_exponents, order)
        total += exact_fraction_power(Fraction(q), shift) * comp.count_at(q)
    return total


def stringy_count_twisted(desc: OrbifoldDescription, q):
    """Twisted count: each component weighted by its root-of-unity trace.

    Returns a Fraction when the result is rational, else a CyclotomicNumber.
    """
    total = CyclotomicNumber.from_rational(0)
    for lbl, order, comp in desc.components():
        if comp.twist_trace is None:
            raise MissingSectorData(
                f"sector {lbl!r}, component {comp.label!r}: no twist trace"
            )
        shift = fermionic_shift(comp.eigen_exponents, order)
        weight = exact_fraction_power(Fraction(q), shift) * comp.count_at(q)
        num, trorder = comp.twist_trace
        term = CyclotomicNumber.root_of_unity(num, trorder) * CyclotomicNumber.from_rational(weight)
        total = total + term
    rat = total.as_rational()
    return rat if rat is not None else total


def weight_consistency(desc: OrbifoldDescription, q) -> bool:
    """Point counts at q^2 must match the E-polynomial at u = v = q."""
    counted = stringy_count(desc, Fraction(q) ** 2)
    e_val = stringy_e(desc).evaluate(q, q)
    return counted == e_val
