"""Point counting for spectral curves over finite fields on a genus-0 base.

Covers sampling a generic global characteristic (coefficients of the
degree-r cover of the projective line respecting the vanishing orders at
the marked points), an exact irreducibility test over the rational function
field, counting points of the normalized curve over extension fields,
Weil-style zeta reconstruction, and class numbers of the Jacobian and of
the norm-map kernel.

The affine chart is trivialized so that the j-th coefficient is a plain
polynomial alpha_j(t) of degree <= j*(deg D - 2) - gamma_j(inf), vanishing
to order >= gamma_j(x) at each finite marked x.  The chart at infinity uses
the twist rule alpha_j'(s) = s^(j*M) * alpha_j(1/s) with M = deg D - 2.
"""

from __future__ import annotations

import itertools
import random
import warnings
from dataclasses import dataclass
from math import lcm
from typing import Optional, Sequence

from . import polys
from .fields import GF, embedding, factor_prime_power
from .hitchin import coefficient_degrees
from .partitions import InvalidDataError, MarkedPoint, ParabolicData, delta_p
from .resolution import (
    local_equation_from_type,
    default_precision,
    resolve,
    realized_divisor_gcd,
)
from .series import TruncatedSeries

INFINITY = "inf"


class SamplingExhausted(RuntimeError):
    """The rejection sampler ran out of attempts."""


class ZetaFitError(RuntimeError):
    """Point counts admit no integral L-polynomial of the expected degree."""


@dataclass(frozen=True)
class FqSpec:
    """A finite coefficient field GF(q), q = p^k."""

    q: int

    @property
    def p(self) -> int:
        return factor_prime_power(self.q)[0]

    @property
    def k(self) -> int:
        return factor_prime_power(self.q)[1]

    def field(self):
        return GF(self.q)

    def check_tame(self, rank: int) -> None:
        if self.p <= rank:
            raise InvalidDataError(
                f"characteristic {self.p} <= rank {rank}: counting requires p > r"
            )

    def warn_on_count_divisibility(self, data: ParabolicData) -> None:
        """Warn when p divides a multiplicity count (divisor-degree arithmetic degrades)."""
        from .partitions import ramification_multiplicity_counts

        for pt in data.points:
            for c in ramification_multiplicity_counts(pt.mu).values():
                if c % self.p == 0:
                    warnings.warn(
                        f"characteristic {self.p} divides a multiplicity count at "
                        f"{pt.position!r}; rational-divisor degrees may collapse"
                    )
                    return


def parse_position(K, pos):
    """Decode a marked-point position into a field element or the INFINITY marker."""
    if pos == INFINITY or pos is None:
        return INFINITY
    if isinstance(pos, int):
        return K.from_int(pos)
    if isinstance(pos, (list, tuple)):
        if not hasattr(K, "from_coeffs"):
            raise InvalidDataError(f"vector position {pos!r} needs an extension field")
        return K.from_coeffs(pos)
    raise InvalidDataError(f"cannot interpret position {pos!r} over {K!r}")


@dataclass(frozen=True)
class GlobalCharacteristic:
    """An accepted characteristic: one point of the genus-0 linear-system product."""

    data: ParabolicData
    q: int
    seed: int
    alphas: tuple  # alpha_1 .. alpha_r as t-polynomial coefficient tuples
    attempts: int
    rejections: tuple  # sorted (reason, count) pairs
    point_resolutions: tuple  # ResolutionResult per marked point, aligned with data.points

    @property
    def field(self):
        return GF(self.q)

    @property
    def rank(self) -> int:
        return self.data.rank

    @property
    def deg_m(self) -> int:
        return self.data.deg_d - 2

    def lam_coeffs(self):
        """The characteristic as a lambda-polynomial with t-polynomial coefficients."""
        K = self.field
        r = self.rank
        out = [[] for _ in range(r + 1)]
        out[r] = [K.one]
        for j in range(1, r + 1):
            out[r - j] = list(self.alphas[j - 1])
        return out


# -- the local equation induced at a marked point -------------------------------


def local_equation_at(data: ParabolicData, K, alphas, pt: MarkedPoint, precision: int):
    """Unit-series local model of the characteristic at one marked point.

    At finite x the chart trivialization differs from the local one by the
    unit w(u) = 1 / prod_{z != x} (x + u - z); at infinity by
    (-1)^l * s^(l*M) / prod_z (1 - z s)^l.  Dividing by u^{gamma_l} is exact
    because the sampled coefficients vanish to at least that order.
    """
    r = data.rank
    gamma = pt.gamma
    positions = [parse_position(K, p.position) for p in data.points]
    here = parse_position(K, pt.position)
    finite_others = [z for z in positions if z != INFINITY and z != here]
    series = []
    if here == INFINITY:
        deg_m = data.deg_d - 2
        denom = [K.one]
        for z in finite_others:
            denom = polys.mul(K, denom, [K.one, K.neg(z)])  # (1 - z s)
        inv = TruncatedSeries.from_polynomial(K, denom, None).inverse(precision)
        inv_pow = TruncatedSeries.constant(K, K.one, precision)
        for l in range(1, r + 1):
            inv_pow = inv_pow * inv
            alpha = list(alphas[l - 1])
            top = l * deg_m
            flipped = [K.zero] * (top + 1)
            for i, c in enumerate(alpha):
                flipped[top - i] = c
            s = TruncatedSeries.from_polynomial(K, flipped, precision)
            s = (s * inv_pow).divide_t(gamma[l - 1])
            if l % 2 == 1:
                s = s.negate()
            series.append(s)
    else:
        prod = [K.one]
        for z in finite_others:
            prod = polys.mul(K, prod, [K.neg(z), K.one])  # (t - z)
        shifted = polys.shift(K, prod, here)
        w = TruncatedSeries.from_polynomial(K, shifted, None).inverse(precision)
        w_pow = TruncatedSeries.constant(K, K.one, precision)
        for l in range(1, r + 1):
            w_pow = w_pow * w
            a_shift = polys.shift(K, list(alphas[l - 1]), here)
            s = TruncatedSeries.from_polynomial(K, a_shift, precision)
            s = (s * w_pow).divide_t(gamma[l - 1])
            series.append(s)
    return local_equation_from_type(pt.mu, series, K, precision)


# -- irreducibility over the rational function field ----------------------------


def _distinct_root_count(K, f) -> int:
    """Distinct roots of monic f lying in the finite field K."""
    if polys.degree(f) == 0:
        return 0
    xq = polys.pow_mod(K, [K.zero, K.one], K.order, f)
    g = polys.gcd(K, polys.sub(K, xq, [K.zero, K.one]), f)
    return polys.degree(g)


def _bivar_divides(K, F, G) -> bool:
    """Does G divide F in K[t][lambda]?  Both monic in lambda (coefficient lists of t-polys)."""
    rem = [list(c) for c in F]
    degg = len(G) - 1
    while len(rem) - 1 >= degg:
        top = rem[-1]
        if not top and len(rem) - 1 > 0:
            rem.pop()
            continue
        shiftk = len(rem) - 1 - degg
        for i in range(degg + 1):
            rem[shiftk + i] = polys.sub(K, rem[shiftk + i], polys.mul(K, top, G[i]))
        rem.pop()
        while len(rem) > 1 and not rem[-1]:
            rem.pop()
        if len(rem) - 1 < degg:
            break
    return all(not c for c in rem)


def _newton_series_root(L, coeff_series, rho, prec):
    """Lift the simple root rho of the reduced equation to a series root mod u^prec."""
    lam = TruncatedSeries.constant(L, rho, prec)
    deriv_coeffs = []
    for j in range(1, len(coeff_series)):
        deriv_coeffs.append(coeff_series[j].scale(L.from_int(j)))
    steps = max(1, prec).bit_length() + 1
    for _ in range(steps):
        val = TruncatedSeries.zero(L, prec)
        for cs in reversed(coeff_series):
            val = val * lam + cs
        dval = TruncatedSeries.zero(L, prec)
        for cs in reversed(deriv_coeffs):
            dval = dval * lam + cs
        lam = lam - val * dval.inverse(prec)
    # final residual must vanish identically at this precision
    val = TruncatedSeries.zero(L, prec)
    for cs in reversed(coeff_series):
        val = val * lam + cs
    if val.coeffs:
        raise ArithmeticError("Newton lift failed to converge at working precision")
    return lam


def lambda_poly_irreducible(K, lam_coeffs) -> bool:
    """Is the monic lambda-polynomial with K[t] coefficients irreducible over K(t)?

    Zassenhaus-style: expand the r roots as power series at a squarefree
    specialization point (searched over K, then small extensions), and test
    every balanced subset of roots for recombining into a proper factor with
    polynomial coefficients in the base field.  Exact: candidate factors are
    confirmed by division in K[t][lambda].
    """
    r = len(lam_coeffs) - 1
    if r <= 1:
        return r == 1
    if not lam_coeffs[0]:
        return False  # lambda divides
    q = K.order
    if K.char <= r:
        raise InvalidDataError("irreducibility test requires characteristic > rank")
    D = max(1, max(polys.degree(c) for c in lam_coeffs if c))
    disc_bound = (2 * r - 1) * D + 1

    found = None
    s = 0
    while found is None:
        s += 1
        Ks = GF(q ** s)
        emb = embedding(q, q ** s)
        lam_s = [[emb(c) for c in a] for a in lam_coeffs]
        for t0 in Ks.elements():
            f0 = [polys.evaluate(Ks, a, t0) for a in lam_s]
            f0 = polys.normalize(Ks, f0)
            if polys.degree(f0) != r:
                continue
            if polys.degree(polys.gcd(Ks, f0, polys.derivative(Ks, f0))) == 0:
                found = (s, t0, f0)
                break
        if found is None and q ** s > disc_bound:
            # more points than the discriminant has roots: it vanishes identically
            return False
    s, t0, f0 = found
    Ks = GF(q ** s)
    degs = [d for d, _ in polys.irreducible_degrees_finite(Ks, f0)]
    ext = lcm(*degs) if degs else 1
    big_q = q ** (s * ext)
    L = GF(big_q)
    emb_base = embedding(q, big_q)
    emb_s = embedding(q ** s, big_q)
    lam_L = [[emb_base(c) for c in a] for a in lam_coeffs]
    f0_L = [emb_s(c) for c in f0]
    roots = polys.roots_in_field(L, f0_L)
    if len(roots) != r:
        raise ArithmeticError("splitting field failed to split the specialization")

    B = r * D
    prec = B + 2
    t0_L = emb_s(t0)
    coeff_series = [
        TruncatedSeries.from_polynomial(
            L, polys.shift(L, a, t0_L), prec
        )
        for a in lam_L
    ]
    series_roots = [_newton_series_root(L, coeff_series, rho, prec) for rho in roots]

    one = TruncatedSeries.constant(L, L.one, prec)
    neg_t0 = L.neg(t0_L)
    for size in range(1, r // 2 + 1):
        for subset in itertools.combinations(range(r), size):
            # product of (lambda - root_i) as series coefficients in lambda
            prod = [one]
            for idx in subset:
                root = series_roots[idx]
                new = [TruncatedSeries.zero(L, prec) for _ in range(len(prod) + 1)]
                for k, cs in enumerate(prod):
                    new[k + 1] = new[k + 1] + cs
                    new[k] = new[k] - cs * root
                prod = new
            cand = []
            ok = True
            for cs in prod[:-1]:
                coeffs = cs.known_coeffs(prec)
                if any(not L.is_zero(c) for c in coeffs[B + 1:]):
                    ok = False
                    break
                upoly = polys.normalize(L, coeffs[: B + 1])
                tpoly = polys.shift(L, upoly, neg_t0)
                if any(L.pow(c, q) != c for c in tpoly):
                    ok = False
                    break
                cand.append(tpoly)
            if not ok:
                continue
            cand.append([L.one])
            if _bivar_divides(L, lam_L, cand):
                return False
    return True


def is_integral(char: GlobalCharacteristic) -> bool:
    """Is the sampled spectral curve integral (characteristic irreducible over GF(q)(t))?"""
    return lambda_poly_irreducible(char.field, char.lam_coeffs())


# -- discriminant genericity -----------------------------------------------------


def discriminant_generic(K, lam_coeffs, finite_marked_elems, infinity_is_marked,
                         rank, deg_m) -> bool:
    """All discriminant zeros away from the marked points are simple.

    Strips every (t - x) factor at the marked points, then demands the rest
    squarefree; the (unmarked) point at infinity is checked through the
    degree drop of the discriminant against r(r-1)*M.
    """
    disc = polys.discriminant_bivariate(K, lam_coeffs)
    if not disc:
        return False
    stripped = disc
    for x in finite_marked_elems:
        lin = [K.neg(x), K.one]
        while stripped and K.is_zero(polys.evaluate(K, stripped, x)):
            stripped = polys.exact_div(K, stripped, lin)
    if polys.degree(stripped) > 0:
        d1 = polys.derivative(K, stripped)
        if polys.degree(polys.gcd(K, stripped, d1)) != 0:
            return False
    if not infinity_is_marked:
        vanishing_at_inf = rank * (rank - 1) * deg_m - polys.degree(disc)
        if vanishing_at_inf > 1:
            return False
    return True


# -- the rejection sampler --------------------------------------------------------


def sample_characteristic(data: ParabolicData, q: int, seed: int,
                          precision: Optional[int] = None,
                          max_draws: int = 400) -> GlobalCharacteristic:
    """Draw until the characteristic is integral with generic local behaviour.

    Uniform draws from each coefficient's linear system; a draw is accepted
    when (i) the top coefficient is nonzero and the curve is integral,
    (ii) every marked point resolves generically, and (iii) the
    discriminant has only simple zeros away from the marked points.
    """
    if data.genus != 0:
        raise InvalidDataError("counting is implemented for genus-0 base curves only")
    spec = FqSpec(q)
    spec.check_tame(data.rank)
    spec.warn_on_count_divisibility(data)
    K = GF(q)
    r = data.rank
    positions = [parse_position(K, pt.position) for pt in data.points]
    finite_elems = [z for z in positions if z != INFINITY]
    if len(set(positions) - {INFINITY}) != len(finite_elems):
        raise InvalidDataError("marked positions collide in the coefficient field")
    infinity_marked = INFINITY in positions
    deg_m = data.deg_d - 2
    degrees = [e.degree for e in coefficient_degrees(data).entries]
    if precision is None:
        gamma_max = max(max(pt.gamma.gamma) for pt in data.points)
        precision = default_precision(r, gamma_max)

    base_polys = []
    for j in range(1, r + 1):
        base = [K.one]
        for pt, z in zip(data.points, positions):
            if z == INFINITY:
                continue
            gj = pt.gamma[j - 1]
            lin = [K.neg(z), K.one]
            for _ in range(gj):
                base = polys.mul(K, base, lin)
        base_polys.append(base)

    rng = random.Random(seed)
    rejections: dict[str, int] = {}

    def reject(reason):
        rejections[reason] = rejections.get(reason, 0) + 1

    for attempt in range(1, max_draws + 1):
        alphas = []
        for j in range(1, r + 1):
            dj = degrees[j - 1]
            if dj < 0:
                alphas.append([])
                continue
            beta = polys.normalize(K, [K.random(rng) for _ in range(dj + 1)])
            alphas.append(polys.mul(K, beta, base_polys[j - 1]))
        if not alphas[r - 1]:
            reject("top_coefficient_zero")
            continue
        resolutions = []
        for pt in data.points:
            eq = local_equation_at(data, K, alphas, pt, precision)
            resolutions.append(resolve(eq))
        if not all(res.generic for res in resolutions):
            reject("local_non_generic")
            continue
        lam = [[] for _ in range(r + 1)]
        lam[r] = [K.one]
        for j in range(1, r + 1):
            lam[r - j] = list(alphas[j - 1])
        if not discriminant_generic(K, lam, finite_elems, infinity_marked, r, deg_m):
            reject("discriminant_multiple_zero")
            continue
        if not lambda_poly_irreducible(K, lam):
            reject("reducible")
            continue
        return GlobalCharacteristic(
            data=data,
            q=q,
            seed=seed,
            alphas=tuple(tuple(a) for a in alphas),
            attempts=attempt,
            rejections=tuple(sorted(rejections.items())),
            point_resolutions=tuple(resolutions),
        )
    raise SamplingExhausted(
        f"no generic characteristic found after {max_draws} draws (base may be too small); "
        f"rejections: {sorted(rejections.items())}"
    )


# -- fiber and curve counting ------------------------------------------------------


def _marked_index(char: GlobalCharacteristic, point) -> Optional[int]:
    K = char.field
    if isinstance(point, MarkedPoint):
        for i, pt in enumerate(char.data.points):
            if pt is point or pt.position == point.position:
                return i
        raise InvalidDataError("marked point does not belong to this characteristic")
    positions = [parse_position(K, pt.position) for pt in char.data.points]
    if point == INFINITY:
        return positions.index(INFINITY) if INFINITY in positions else None
    return None


def _infinity_specialization(char: GlobalCharacteristic):
    """Coefficients of the chart-at-infinity characteristic at s = 0."""
    K = char.field
    r = char.rank
    deg_m = char.deg_m
    out = [K.zero] * (r + 1)
    out[r] = K.one
    for j in range(1, r + 1):
        alpha = char.alphas[j - 1]
        top = j * deg_m
        out[r - j] = alpha[top] if top < len(alpha) else K.zero
    return out


def count_fiber(char: GlobalCharacteristic, point, m: int) -> int:
    """Points of the normalized curve over GF(q^m) lying above one base point.

    Marked points are read from the resolution profile (closed points of
    residue degree d contribute d points when d | m); unmarked points count
    distinct eigenvalues of the specialized characteristic.
    """
    idx = _marked_index(char, point)
    if idx is not None:
        return char.point_resolutions[idx].profile.fiber_count(m)
    K = char.field
    big = GF(char.q ** m)
    emb = embedding(char.q, char.q ** m)
    if point == INFINITY:
        f = [emb(c) for c in _infinity_specialization(char)]
        return _distinct_root_count(big, polys.normalize(big, f))
    if isinstance(point, int):
        point = big.from_int(point)
    # guard: a caller-supplied element equal to a marked image is still marked
    marked_imgs = {
        emb(z) for z in (parse_position(K, pt.position) for pt in char.data.points)
        if z != INFINITY
    }
    if point in marked_imgs:
        positions = [parse_position(K, pt.position) for pt in char.data.points]
        for i, z in enumerate(positions):
            if z != INFINITY and emb(z) == point:
                return char.point_resolutions[i].profile.fiber_count(m)
    lam_m = [[emb(c) for c in a] for a in char.lam_coeffs()]
    f = polys.normalize(big, [polys.evaluate(big, a, point) for a in lam_m])
    return _distinct_root_count(big, f)


def count_curve(char: GlobalCharacteristic, m: int) -> int:
    """N_m = number of GF(q^m)-points of the normalized spectral curve."""
    K = char.field
    big = GF(char.q ** m)
    emb = embedding(char.q, char.q ** m)
    positions = [parse_position(K, pt.position) for pt in char.data.points]
    marked_imgs = {emb(z) for z in positions if z != INFINITY}
    lam_m = [[emb(c) for c in a] for a in char.lam_coeffs()]
    total = 0
    for t0 in big.elements():
        if t0 in marked_imgs:
            continue
        f = polys.normalize(big, [polys.evaluate(big, a, t0) for a in lam_m])
        total += _distinct_root_count(big, f)
    for res in char.point_resolutions:
        total += res.profile.fiber_count(m)
    if INFINITY not in positions:
        f = [emb(c) for c in _infinity_specialization(char)]
        total += _distinct_root_count(big, polys.normalize(big, f))
    return total


# -- zeta reconstruction ------------------------------------------------------------


def zeta_fit(counts: Sequence[int], q: int, g_tilde: int) -> list[int]:
    """Integer L-polynomial of degree 2*g_tilde reproducing the counts.

    Newton's identities turn N_1..N_g into the low coefficients; the
    functional equation b_{2g-i} = q^{g-i} b_i supplies the rest; every
    provided count is then re-derived as a consistency check.
    """
    counts = list(counts)
    if len(counts) < g_tilde:
        raise ZetaFitError(f"need at least {g_tilde} counts, got {len(counts)}")
    if g_tilde == 0:
        L = [1]
    else:
        ps = [q ** m + 1 - counts[m - 1] for m in range(1, len(counts) + 1)]
        b = [1]
        for k in range(1, g_tilde + 1):
            acc = ps[k - 1] + sum(b[i] * ps[k - i - 1] for i in range(1, k))
            if acc % k != 0:
                raise ZetaFitError(f"zeta fit failed: Newton step {k} non-integral")
            b.append(-acc // k)
        L = b + [0] * g_tilde
        for i in range(g_tilde - 1, -1, -1):
            L[2 * g_tilde - i] = q ** (g_tilde - i) * b[i]
    # reproduce every provided count
    ps_back = []
    for k in range(1, len(counts) + 1):
        bk = L[k] if k < len(L) else 0
        acc = k * bk + sum((L[i] if i < len(L) else 0) * ps_back[k - i - 1] for i in range(1, k))
        ps_back.append(-acc)
        if q ** k + 1 - ps_back[-1] != counts[k - 1]:
            raise ZetaFitError(f"zeta fit failed: N_{k} not reproduced")
    return L


def functional_equation_holds(L: Sequence[int], q: int, g_tilde: int) -> bool:
    if len(L) != 2 * g_tilde + 1:
        return False
    return all(L[2 * g_tilde - i] == q ** (g_tilde - i) * L[i] for i in range(g_tilde + 1))


def class_numbers(L: Sequence[int], base_L: Optional[Sequence[int]] = None) -> tuple[int, int]:
    """(order of the degree-0 class group, its quotient by the base's).

    h = L(1); the norm-kernel class number is L(1)/L_base(1), which must be
    integral (the base of genus 0 has L_base = 1).
    """
    h_jac = sum(L)
    base = sum(base_L) if base_L is not None else 1
    if base == 0 or h_jac % base != 0:
        raise ZetaFitError("Prym L-division failed: non-integral class-number ratio")
    return h_jac, h_jac // base


def weil_check(counts: Sequence[int], g_tilde: int, q: int) -> bool:
    """|N_m - q^m - 1| <= 2 g q^{m/2} for every count, compared via squares."""
    for m, n in enumerate(counts, start=1):
        lhs = (n - q ** m - 1) ** 2
        if lhs > 4 * g_tilde * g_tilde * q ** m:
            return False
    return True


@dataclass(frozen=True)
class ZetaData:
    q: int
    g_tilde: int
    counts: tuple[int, ...]
    L: tuple[int, ...]
    h_jac: int
    h_prym: int


def zeta_pipeline(char: GlobalCharacteristic, g_tilde: int,
                  depth: Optional[int] = None) -> ZetaData:
    """Count N_1..N_depth, fit the L-polynomial, extract class numbers."""
    depth = depth if depth is not None else g_tilde
    depth = max(depth, g_tilde)
    counts = [count_curve(char, m) for m in range(1, depth + 1)]
    L = zeta_fit(counts, char.q, g_tilde)
    h_jac, h_prym = class_numbers(L)
    return ZetaData(
        q=char.q,
        g_tilde=g_tilde,
        counts=tuple(counts),
        L=tuple(L),
        h_jac=h_jac,
        h_prym=h_prym,
    )


def characteristic_divisor_gcd(char: GlobalCharacteristic) -> int:
    """Realized divisor-degree gcd over the marked points of an accepted sample."""
    return realized_divisor_gcd(list(char.point_resolutions), delta_p(char.data))
