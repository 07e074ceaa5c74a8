"""Precision-tracked truncated power series over an exact field.

A ``TruncatedSeries`` holds coefficients for t^0 .. t^(N-1) and stands for
the germ "those terms + O(t^N)".  ``precision=None`` marks an exact series
(a polynomial known completely, e.g. promoted constants); arithmetic
propagates the most conservative precision and refuses to fabricate
coefficients past it.
"""

from __future__ import annotations


class PrecisionExhausted(RuntimeError):
    """A computation needed series coefficients beyond the tracked precision."""


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class TruncatedSeries:
    __slots__ = ("field", "coeffs", "precision")

    def __init__(self, field, coeffs, precision):
        self.field = field
        if precision is not None:
            coeffs = list(coeffs[:precision])
        else:
            coeffs = list(coeffs)
        while coeffs and field.is_zero(coeffs[-1]):
            coeffs.pop()
        self.coeffs = coeffs
        self.precision = precision

    # -- constructors ---------------------------------------------------------

    @classmethod
    def constant(cls, field, value, precision=None):
        return cls(field, [value], precision)

    @classmethod
    def zero(cls, field, precision=None):
        return cls(field, [], precision)

    @classmethod
    def from_polynomial(cls, field, coeffs, precision=None):
        return cls(field, coeffs, precision)

    # -- inspection -----------------------------------------------------------

    def coefficient(self, k):
        """Coefficient of t^k; raises PrecisionExhausted past the precision."""
        if self.precision is not None and k >= self.precision:
            raise PrecisionExhausted(
                f"coefficient t^{k} requested at precision O(t^{self.precision})"
            )
        return self.coeffs[k] if k < len(self.coeffs) else self.field.zero

    def constant_term(self):
        return self.coefficient(0)

    def is_unit(self):
        return len(self.coeffs) > 0 and not self.field.is_zero(self.coeffs[0])

    def is_zero(self):
        """True when all known coefficients vanish (an exact zero if precision is None)."""
        return not self.coeffs

    def valuation(self):
        """Order of vanishing; PrecisionExhausted if zero to full precision but inexact."""
        for i, c in enumerate(self.coeffs):
            if not self.field.is_zero(c):
                return i
        if self.precision is None:
            return None  # exactly zero
        raise PrecisionExhausted(f"series vanishes to its precision O(t^{self.precision})")

    def known_coeffs(self, upto):
        return [self.coefficient(k) for k in range(upto)]

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        K = self.field
        prec = _min_prec(self.precision, other.precision)
        n = max(len(self.coeffs), len(other.coeffs))
        if prec is not None:
            n = min(n, prec)
        out = []
        for i in range(n):
            a = self.coeffs[i] if i < len(self.coeffs) else K.zero
            b = other.coeffs[i] if i < len(other.coeffs) else K.zero
            out.append(K.add(a, b))
        return TruncatedSeries(K, out, prec)

    def __sub__(self, other):
        return self + other.negate()

    def negate(self):
        K = self.field
        return TruncatedSeries(K, [K.neg(c) for c in self.coeffs], self.precision)

    def __mul__(self, other):
        K = self.field
        prec = _min_prec(self.precision, other.precision)
        if not self.coeffs or not other.coeffs:
            return TruncatedSeries(K, [], prec)
        n = len(self.coeffs) + len(other.coeffs) - 1
        if prec is not None:
            n = min(n, prec)
        out = [K.zero] * n
        for i, x in enumerate(self.coeffs):
            if K.is_zero(x):
                continue
            for j, y in enumerate(other.coeffs):
                if i + j >= n:
                    break
                out[i + j] = K.add(out[i + j], K.mul(x, y))
        return TruncatedSeries(K, out, prec)

    def scale(self, c):
        K = self.field
        return TruncatedSeries(K, [K.mul(x, c) for x in self.coeffs], self.precision)

    def shift(self, k):
        """Multiply by t^k (precision grows with the shift)."""
        prec = None if self.precision is None else self.precision + k
        return TruncatedSeries(self.field, [self.field.zero] * k + self.coeffs, prec)

    def divide_t(self, k):
        """Divide by t^k; the first k coefficients must be known zeros."""
        K = self.field
        if self.precision is not None and self.precision < k:
            raise PrecisionExhausted(
                f"cannot verify divisibility by t^{k} at precision O(t^{self.precision})"
            )
        for i in range(min(k, len(self.coeffs))):
            if not K.is_zero(self.coeffs[i]):
                raise ArithmeticError(f"series not divisible by t^{k}")
        prec = None if self.precision is None else self.precision - k
        return TruncatedSeries(K, self.coeffs[k:], prec)

    def inverse(self, precision=None):
        """Multiplicative inverse of a unit, to the given (or inherited) precision."""
        K = self.field
        if not self.is_unit():
            raise ArithmeticError("inverse of a non-unit series")
        prec = _min_prec(self.precision, precision)
        if prec is None:
            raise ValueError("an exact inverse needs a target precision")
        c0_inv = K.inv(self.coeffs[0])
        out = [c0_inv]
        for n in range(1, prec):
            acc = K.zero
            for i in range(1, min(n, len(self.coeffs) - 1) + 1):
                ci = self.coeffs[i] if i < len(self.coeffs) else K.zero
                acc = K.add(acc, K.mul(ci, out[n - i]))
            out.append(K.neg(K.mul(c0_inv, acc)))
        return TruncatedSeries(K, out, prec)

    def power(self, e, precision=None):
        prec = _min_prec(self.precision, precision)
        result = TruncatedSeries(self.field, [self.field.one], prec)
        for _ in range(e):
            result = result * self
        return result

    def truncate(self, precision):
        return TruncatedSeries(self.field, self.coeffs, _min_prec(self.precision, precision))

    # -- comparison / display ---------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.field == other.field
            and self.precision == other.precision
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        tail = "" if self.precision is None else f" + O(t^{self.precision})"
        if not self.coeffs:
            return f"TruncatedSeries(0{tail})"
        terms = [f"{c!r}*t^{i}" for i, c in enumerate(self.coeffs) if not self.field.is_zero(c)]
        return f"TruncatedSeries({' + '.join(terms)}{tail})"


def polynomial_shift_series(field, coeffs, center, precision):
    """Expand the polynomial sum(coeffs[i] * t^i) around t = center + u.

    Returns the truncated series in u.  Horner form, so it is exact in any
    characteristic (no division by factorials).
    """
    acc = TruncatedSeries.zero(field, precision)
    u_plus_c = TruncatedSeries(field, [center, field.one], precision)
    for c in reversed(coeffs):
        acc = acc * u_plus_c + TruncatedSeries.constant(field, c, precision)
    return acc
