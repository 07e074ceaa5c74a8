"""Exact coefficient fields: the rationals and finite fields of prime-power order.

Every algebraic routine in this package is generic over a small "field
object" protocol rather than over element classes.  A field object owns the
arithmetic; elements are plain hashable Python values:

* ``RationalField``  -- elements are ``fractions.Fraction``
* ``PrimeField(p)``  -- elements are ints in ``range(p)``
* ``ExtensionField(p, n)`` -- elements are length-``n`` tuples of ints,
  coefficients of the residue class modulo a fixed irreducible polynomial.

The irreducible modulus of ``ExtensionField(p, n)`` is chosen
deterministically (first monic irreducible of degree ``n`` in
lexicographic coefficient order), so field construction, element
enumeration and embeddings are reproducible across runs.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


class RationalField:
    """Field object for exact rational arithmetic."""

    char = 0
    order = None
    is_finite = False

    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in QQ")
        return a / b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inversion of zero in QQ")
        return 1 / a

    def is_zero(self, a):
        return a == 0

    def pow(self, a, e):
        return a ** e

    def random(self, rng):
        # small random rationals; nonzero numerators favoured for genericity draws
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))

    def __repr__(self):
        return "QQ"


QQ = RationalField()


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factor_prime_power(q: int) -> tuple[int, int]:
    """Write q = p**n with p prime, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if p * p > q:
            p = q
        if q % p == 0:
            n = 0
            m = q
            while m % p == 0:
                m //= p
                n += 1
            if m != 1 or not _is_probable_prime(p):
                raise ValueError(f"{q} is not a prime power")
            return p, n
    raise ValueError(f"{q} is not a prime power")


class PrimeField:
    """GF(p) with int elements in range(p)."""

    is_finite = True

    def __init__(self, p: int):
        if not _is_probable_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.order = p
        self.degree = 1
        self.zero = 0
        self.one = 1 % p

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inversion of zero in GF({self.p})")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a % self.p == 0

    def pow(self, a, e):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def elements(self):
        return range(self.p)

    def random(self, rng):
        return rng.randrange(self.p)

    def random_nonzero(self, rng):
        return rng.randrange(1, self.p)

    def element_key(self, a):
        return a

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))


class ExtensionField:
    """GF(p**n), n > 1, as GF(p)[x] modulo a fixed irreducible of degree n.

    Elements are length-n int tuples (a_0, ..., a_{n-1}) standing for
    a_0 + a_1 x + ... + a_{n-1} x^{n-1}.
    """

    is_finite = True

    def __init__(self, p: int, n: int):
        if n < 2:
            raise ValueError("use PrimeField for degree 1")
        self.p = p
        self.n = n
        self.char = p
        self.degree = n
        self.order = p ** n
        self.prime_field = PrimeField(p)
        self.modulus = _find_irreducible(p, n)  # monic, coeffs ascending, length n+1
        self.zero = (0,) * n
        self.one = tuple([1 % p] + [0] * (n - 1))
        # reduction table: x^(n+k) mod modulus for k = 0..n-2
        self._red = []
        r = [(-c) % p for c in self.modulus[:n]]  # x^n mod f
        self._red.append(tuple(r))
        for _ in range(n - 2):
            r = self._shift_mod(r)
            self._red.append(tuple(r))

    def _shift_mod(self, r):
        # multiply by x modulo the modulus; r has length n
        p, n = self.p, self.n
        top = r[-1]
        out = [0] + list(r[:-1])
        if top:
            for i in range(n):
                out[i] = (out[i] + top * self._red[0][i]) % p
        return out

    def from_int(self, m):
        return tuple([m % self.p] + [0] * (self.n - 1))

    def from_coeffs(self, coeffs):
        cs = [c % self.p for c in coeffs]
        if len(cs) > self.n:
            raise ValueError("coefficient vector too long")
        cs += [0] * (self.n - len(cs))
        return tuple(cs)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a, b):
        p, n = self.p, self.n
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] = (prod[i + j] + x * y) % p
        out = prod[:n]
        for k in range(n - 1):
            c = prod[n + k]
            if c:
                red = self._red[k]
                for i in range(n):
                    out[i] = (out[i] + c * red[i]) % p
        return tuple(out)

    def is_zero(self, a):
        return not any(a)

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError(f"inversion of zero in {self!r}")
        # extended Euclid in GF(p)[x]
        K = self.prime_field
        r0, r1 = list(self.modulus), _trim(list(a))
        s0, s1 = [], [1]
        while r1:
            q, r = _poly_divmod_prime(K, r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub_prime(K, s0, _poly_mul_prime(K, q, s1))
        lc = r0[-1]
        lci = K.inv(lc)
        s0 = [K.mul(lci, c) for c in s0]
        return self.from_coeffs(s0)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def elements(self):
        p, n = self.p, self.n
        def gen():
            idx = [0] * n
            while True:
                yield tuple(idx)
                i = 0
                while i < n:
                    idx[i] += 1
                    if idx[i] < p:
                        break
                    idx[i] = 0
                    i += 1
                else:
                    return
        return gen()

    def random(self, rng):
        return tuple(rng.randrange(self.p) for _ in range(self.n))

    def random_nonzero(self, rng):
        while True:
            a = self.random(rng)
            if not self.is_zero(a):
                return a

    def element_key(self, a):
        return a

    def __repr__(self):
        return f"GF({self.p}^{self.n})"

    def __eq__(self, other):
        return isinstance(other, ExtensionField) and (other.p, other.n) == (self.p, self.n)

    def __hash__(self):
        return hash(("ExtensionField", self.p, self.n))


# -- helpers over GF(p) with plain coefficient lists (ascending) --------------

def _trim(cs):
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _poly_sub_prime(K, a, b):
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = K.sub(out[i], c)
    return _trim(out)


def _poly_mul_prime(K, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % K.p
    return _trim(out)


def _poly_divmod_prime(K, a, b):
    a = list(a)
    q = [0] * max(0, len(a) - len(b) + 1)
    inv_lc = K.inv(b[-1])
    while len(a) >= len(b) and a:
        c = K.mul(a[-1], inv_lc)
        d = len(a) - len(b)
        q[d] = c
        for i, x in enumerate(b):
            a[d + i] = K.sub(a[d + i], K.mul(c, x))
        _trim(a)
    return _trim(q), a


def _poly_powmod_prime(K, base, e, mod):
    result = [1]
    base = _poly_divmod_prime(K, base, mod)[1]
    while e:
        if e & 1:
            result = _poly_divmod_prime(K, _poly_mul_prime(K, result, base), mod)[1]
        base = _poly_divmod_prime(K, _poly_mul_prime(K, base, base), mod)[1]
        e >>= 1
    return result


def _poly_gcd_prime(K, a, b):
    a, b = list(a), list(b)
    while b:
        a, b = b, _poly_divmod_prime(K, a, b)[1]
    return a


def _is_irreducible_prime(K, f):
    """Rabin test: f (monic, degree n) irreducible over GF(p)."""
    n = len(f) - 1
    x = [0, 1]
    # x^(p^n) == x mod f
    h = x
    for _ in range(n):
        h = _poly_powmod_prime(K, h, K.p, f)
    if _trim(_poly_sub_prime(K, h, x)) != []:
        return False
    # gcd(x^(p^(n/l)) - x, f) == 1 for every prime l | n
    for l in _prime_divisors(n):
        h = x
        for _ in range(n // l):
            h = _poly_powmod_prime(K, h, K.p, f)
        g = _poly_gcd_prime(K, _poly_sub_prime(K, h, x), f)
        if len(g) - 1 > 0:
            return False
    return True


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def _find_irreducible(p: int, n: int) -> tuple:
    """First monic irreducible of degree n over GF(p) in lex coefficient order."""
    K = PrimeField(p)
    # iterate over (a_0, a_1, ..., a_{n-1}) lexicographically
    total = p ** n
    for idx in range(total):
        coeffs = []
        m = idx
        for _ in range(n):
            coeffs.append(m % p)
            m //= p
        f = coeffs + [1]
        if _is_irreducible_prime(K, f):
            return tuple(f)
    raise RuntimeError("unreachable: irreducible polynomial exists for every degree")


@lru_cache(maxsize=None)
def GF(q: int):
    """Finite field of order q (prime power), cached."""
    p, n = factor_prime_power(q)
    if n == 1:
        return PrimeField(p)
    return ExtensionField(p, n)


@lru_cache(maxsize=None)
def embedding(q_small: int, q_big: int):
    """Field embedding GF(q_small) -> GF(q_big); requires q_small = p^a, q_big = p^(a*b).

    The image of the small field's generator is the lexicographically first
    root of the small modulus in the big field, so the map is deterministic.
    Point counts and degree data downstream are Galois-invariant, hence do
    not depend on which root is picked.
    """
    ps, ns = factor_prime_power(q_small)
    pb, nb = factor_prime_power(q_big)
    if ps != pb or nb % ns != 0:
        raise ValueError(f"no embedding GF({q_small}) -> GF({q_big})")
    if q_small == q_big:
        return lambda a: a
    big = GF(q_big)
    if ns == 1:
        if nb == 1:
            return lambda a: a
        return big.from_int
    small = GF(q_small)
    # find a root of small.modulus inside big
    from . import polys  # local import: polys depends on fields

    mod_in_big = [big.from_int(c) for c in small.modulus]
    roots = polys.roots_in_field(big, mod_in_big)
    if not roots:
        raise RuntimeError("modulus must split in the extension")
    root = min(roots)

    def embed(a):
        acc = big.zero
        for c in reversed(a):
            acc = big.add(big.mul(acc, root), big.from_int(c))
        return acc

    return embed
