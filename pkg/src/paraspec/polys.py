"""Dense univariate polynomial arithmetic over an exact field object.

Polynomials are plain Python lists of field elements in ascending order,
trimmed so that the last entry is nonzero ([] is the zero polynomial).
Every function takes the field object ``K`` first.

Includes the factorization tools the rest of the package relies on:
squarefree (Yun) decomposition, distinct-degree factorization, and
Cantor-Zassenhaus equal-degree splitting over finite fields, plus an
irreducible-factor-degree interface over the rationals backed by sympy.
"""

from __future__ import annotations

import hashlib
import random
from fractions import Fraction


def normalize(K, cs):
    cs = list(cs)
    while cs and K.is_zero(cs[-1]):
        cs.pop()
    return cs


def degree(cs) -> int:
    """Degree, with the zero polynomial at -1."""
    return len(cs) - 1


def constant(K, c):
    return [] if K.is_zero(c) else [c]


def from_int_coeffs(K, ints):
    return normalize(K, [K.from_int(c) for c in ints])


def add(K, a, b):
    out = list(a) + [K.zero] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = K.add(out[i], c)
    return normalize(K, out)


def sub(K, a, b):
    out = list(a) + [K.zero] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = K.sub(out[i], c)
    return normalize(K, out)


def neg(K, a):
    return [K.neg(c) for c in a]


def scale(K, a, c):
    if K.is_zero(c):
        return []
    return normalize(K, [K.mul(x, c) for x in a])


def mul(K, a, b):
    if not a or not b:
        return []
    out = [K.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not K.is_zero(x):
            for j, y in enumerate(b):
                out[i + j] = K.add(out[i + j], K.mul(x, y))
    return normalize(K, out)


def mul_xk(K, a, k):
    if not a:
        return []
    return [K.zero] * k + list(a)


def divmod_(K, a, b):
    """Quotient and remainder; b must be nonzero."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    if len(a) < len(b):
        return [], a
    q = [K.zero] * (len(a) - len(b) + 1)
    inv_lc = K.inv(b[-1])
    while len(a) >= len(b):
        c = K.mul(a[-1], inv_lc)
        d = len(a) - len(b)
        q[d] = c
        for i, x in enumerate(b):
            a[d + i] = K.sub(a[d + i], K.mul(c, x))
        a = normalize(K, a)
        if not a:
            break
    return normalize(K, q), a


def exact_div(K, a, b):
    q, r = divmod_(K, a, b)
    if r:
        raise ArithmeticError("division not exact")
    return q


def monic(K, a):
    if not a:
        return []
    lc = a[-1]
    if lc == K.one:
        return list(a)
    inv = K.inv(lc)
    return [K.mul(c, inv) for c in a]


def gcd(K, a, b):
    a, b = list(a), list(b)
    while b:
        a, b = b, divmod_(K, a, b)[1]
    return monic(K, a)


def evaluate(K, a, x):
    acc = K.zero
    for c in reversed(a):
        acc = K.add(K.mul(acc, x), c)
    return acc


def derivative(K, a):
    out = []
    for i in range(1, len(a)):
        ci = a[i]
        m = K.from_int(i)
        out.append(K.mul(ci, m))
    return normalize(K, out)


def pow_mod(K, base, e, mod):
    result = [K.one]
    base = divmod_(K, base, mod)[1]
    while e:
        if e & 1:
            result = divmod_(K, mul(K, result, base), mod)[1]
        base = divmod_(K, mul(K, base, base), mod)[1]
        e >>= 1
    return result


def shift(K, a, c):
    """a(x + c) by Horner on (x + c); exact in any characteristic."""
    out = []
    for coeff in reversed(a):
        out = add(K, mul(K, out, [c, K.one]), [coeff])
    return out


def reverse(K, a, n=None):
    """Coefficient reversal x^n * a(1/x); n defaults to deg a."""
    if n is None:
        n = degree(a)
    out = [K.zero] * (n + 1)
    for i, c in enumerate(a):
        if n - i >= 0:
            out[n - i] = c
    return normalize(K, out)


def valuation(K, a):
    """Order of vanishing at 0 (len(a) for the zero polynomial)."""
    for i, c in enumerate(a):
        if not K.is_zero(c):
            return i
    return len(a)


# -- squarefree decomposition --------------------------------------------------

def squarefree_decomposition(K, f):
    """Yun's algorithm: list of (factor, multiplicity), factors monic squarefree.

    Requires multiplicities < char K when char K > 0 (true everywhere this
    package calls it: degrees stay below the characteristic).
    """
    f = monic(K, f)
    if degree(f) <= 0:
        return []
    df = derivative(K, f)
    if not df:
        raise ArithmeticError("inseparable polynomial: degree >= characteristic")
    out = []
    a = gcd(K, f, df)
    b = exact_div(K, f, a)
    c = exact_div(K, df, a)
    i = 1
    while degree(b) > 0:
        d = sub(K, c, derivative(K, b))
        p = gcd(K, b, d)
        if degree(p) > 0:
            out.append((p, i))
        b = exact_div(K, b, p)
        c = exact_div(K, d, p)
        i += 1
    return out


def radical(K, f):
    """Product of the distinct irreducible factors (monic)."""
    result = [K.one]
    for g, _ in squarefree_decomposition(K, f):
        result = mul(K, result, g)
    return result


# -- factorization over finite fields -------------------------------------------

def distinct_degree_factorization(K, f):
    """For monic squarefree f over GF(q): list of (d, product of degree-d factors)."""
    q = K.order
    out = []
    h = [K.zero, K.one]  # x
    v = list(f)
    d = 0
    while degree(v) > 0:
        d += 1
        if 2 * d > degree(v):
            out.append((degree(v), v))
            break
        h = pow_mod(K, h, q, f)
        g = gcd(K, sub(K, h, [K.zero, K.one]), v)
        if degree(g) > 0:
            out.append((d, g))
            v = exact_div(K, v, g)
    return out


def _cz_rng(K, f) -> random.Random:
    # deterministic rng derived from the polynomial: stable output across runs
    blob = repr((K.order, tuple(tuple(c) if isinstance(c, tuple) else c for c in f)))
    seed = int.from_bytes(hashlib.sha256(blob.encode()).digest()[:8], "big")
    return random.Random(seed)


def equal_degree_factorization(K, f, d):
    """Cantor-Zassenhaus split of monic squarefree f, all factors of degree d.

    Odd q only (this package guards p > 2 everywhere factorization runs).
    """
    n = degree(f)
    if n == d:
        return [list(f)]
    q = K.order
    rng = _cz_rng(K, f)
    while True:
        a = [K.random(rng) for _ in range(n)]
        a = normalize(K, a)
        if degree(a) < 1:
            continue
        g = gcd(K, a, f)
        if 0 < degree(g) < n:
            break
        b = pow_mod(K, a, (q ** d - 1) // 2, f)
        g = gcd(K, sub(K, b, [K.one]), f)
        if 0 < degree(g) < n:
            break
    left = equal_degree_factorization(K, g, d)
    right = equal_degree_factorization(K, exact_div(K, f, g), d)
    return left + right


def factor_finite(K, f):
    """Full factorization over GF(q): (lc, [(irreducible monic factor, multiplicity)]).

    Factors are reported in a deterministic order.
    """
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    lc = f[-1]
    out = []
    for g, m in squarefree_decomposition(K, f):
        for d, h in distinct_degree_factorization(K, g):
            for piece in equal_degree_factorization(K, h, d):
                out.append((piece, m))
    out.sort(key=lambda fm: (degree(fm[0]), [K.element_key(c) for c in fm[0]], fm[1]))
    return lc, out


def irreducible_degrees_finite(K, f):
    """Multiset of (degree, multiplicity) pairs without the factors themselves.

    Only squarefree + distinct-degree work: enough for residue-degree counts.
    """
    out = []
    for g, m in squarefree_decomposition(K, f):
        for d, h in distinct_degree_factorization(K, g):
            count = degree(h) // d
            out.extend([(d, m)] * count)
    out.sort()
    return out


def roots_in_field(K, f):
    """Distinct roots of f lying in the finite field K, sorted."""
    if not f:
        raise ValueError("zero polynomial")
    if degree(f) == 0:
        return []
    # strip to the part splitting in K
    x_q_minus_x = sub(K, pow_mod(K, [K.zero, K.one], K.order, f), [K.zero, K.one])
    g = gcd(K, f, x_q_minus_x)
    roots = []
    stack = [g]
    while stack:
        h = stack.pop()
        if degree(h) <= 0:
            continue
        if degree(h) == 1:
            roots.append(K.neg(K.mul(h[0], K.inv(h[1]))))
            continue
        for piece in equal_degree_factorization(K, monic(K, h), 1):
            stack.append(piece)
    return sorted(roots, key=K.element_key)


# -- factorization over the rationals -------------------------------------------

def irreducible_factors_rational(f):
    """Irreducible factorization over QQ via sympy: [(monic factor coeffs, multiplicity)].

    Input and output coefficients are Fractions (ascending).  sympy is a
    deliberate buy for this one standard, self-contained task.
    """
    import sympy

    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x ** i for i, c in enumerate(f))
    _, factors = sympy.factor_list(sympy.Poly(expr, x, domain="QQ"))
    out = []
    for poly, mult in factors:
        coeffs = [Fraction(c.p, c.q) for c in reversed(poly.all_coeffs())]
        lc = coeffs[-1]
        coeffs = [c / lc for c in coeffs]
        out.append((coeffs, int(mult)))
    out.sort(key=lambda fm: (len(fm[0]), fm[0]))
    return out


def irreducible_degrees(K, f):
    """(degree, multiplicity) list of the irreducible factors of f over K."""
    if K.is_finite:
        return irreducible_degrees_finite(K, f)
    out = [(degree(g), m) for g, m in irreducible_factors_rational(f)]
    out.sort()
    return out


def linear_roots(K, f):
    """Roots of f in K with multiplicities, as (root, multiplicity), sorted."""
    if K.is_finite:
        out = []
        for g, m in squarefree_decomposition(K, f):
            for r in roots_in_field(K, g):
                out.append((r, m))
        return sorted(out, key=lambda rm: (K.element_key(rm[0]), rm[1]))
    out = []
    for g, m in irreducible_factors_rational(f):
        if degree(g) == 1:
            out.append((-g[0] / g[1], m))
    return sorted(out)


# -- resultants of polynomials with polynomial coefficients ---------------------

def resultant_bivariate(K, A, B):
    """Res_y(A, B) for A, B in K[t][y]: lists of t-polynomials (ascending in y).

    Returns a t-polynomial.  Uses Sylvester + fraction-free Bareiss.
    """
    A = [list(c) for c in A]
    B = [list(c) for c in B]
    while A and not A[-1]:
        A.pop()
    while B and not B[-1]:
        B.pop()
    m, n = len(A) - 1, len(B) - 1
    if m < 0 or n < 0:
        return []
    if m == 0 and n == 0:
        return [K.one]
    size = m + n
    zero: list = []
    rows = []
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(reversed(A)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(B)):
            row[i + j] = c
        rows.append(row)

    rmul = lambda a, b: mul(K, a, b)
    rsub = lambda a, b: sub(K, a, b)
    rdiv = lambda a, b: exact_div(K, a, b)

    # fraction-free Bareiss elimination; entries stay in K[t]
    mt = rows
    sign = 1
    prev = [K.one]
    N = size
    for k in range(N - 1):
        if not mt[k][k]:
            swap = next((i for i in range(k + 1, N) if mt[i][k]), None)
            if swap is None:
                return []
            mt[k], mt[swap] = mt[swap], mt[k]
            sign = -sign
        for i in range(k + 1, N):
            for j in range(k + 1, N):
                num = rsub(rmul(mt[i][j], mt[k][k]), rmul(mt[i][k], mt[k][j]))
                mt[i][j] = rdiv(num, prev)
            mt[i][k] = []
        prev = mt[k][k]
    det = mt[N - 1][N - 1]
    if sign < 0:
        det = neg(K, det)
    return det


def discriminant_bivariate(K, F):
    """disc_y(F)(t) for monic-in-y F in K[t][y] as a t-polynomial."""
    dF = []
    for i in range(1, len(F)):
        dF.append(scale(K, F[i], K.from_int(i)))
    while dF and not dF[-1]:
        dF.pop()
    res = resultant_bivariate(K, F, dF)
    r = len(F) - 1
    if (r * (r - 1) // 2) % 2 == 1:
        res = neg(K, res)
    return res
