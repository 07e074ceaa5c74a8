"""Successive blow-up resolution of a local spectral equation.

The local model at a marked point is

    lambda^r + c_1 t^{gamma_1} lambda^{r-1} + ... + c_r t^{gamma_r}

with unit power series c_l and the level-function exponents gamma of the
point's dual partition mu.  Blowing up the origin repeatedly (substitute
t -> lambda^i u_i, strip the exceptional factor) produces a chain of stage
equations whose exceptional multiplicities are the sorted parts n_1 >= ...
>= n_sigma, and whose "ramification polynomials" R_i(u) carry one nonzero
root (over the algebraic closure) for every part of mu equal to i.

Stages are stored as sparse bivariate polynomials {(lambda_exp, u_exp):
coefficient}.  Truncation of the input series only ever discards monomials
of u-degree >= the tracked precision, and both the substitution
(a, b) -> (a + b, b) and the exceptional division (a, b) -> (a - m, b)
preserve u-degree, so the low-order reads below (R_i, multiplicities,
smoothness certificates) are exact whenever the tracked precision allows
them at all.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from . import polys
from .partitions import InvalidDataError, Partition, dual_partition, level_function
from .series import PrecisionExhausted, TruncatedSeries


class DegenerateEquation(ValueError):
    """The equation is a pure lambda power (all coefficient series vanish)."""


def default_precision(r: int, gamma_r: int) -> int:
    return max(8, 4 * r * gamma_r)


@dataclass(frozen=True)
class LocalEquation:
    """Truncated-series presentation of the spectral germ at one marked point."""

    field: object
    mu: Partition
    coeffs: tuple[TruncatedSeries, ...]  # c_1 .. c_r; exact zeros mark absent terms
    unit_defect: bool  # some present c_l has c_l(0) = 0

    @property
    def rank(self) -> int:
        return self.mu.total

    @property
    def n(self) -> Partition:
        return dual_partition(self.mu)

    @property
    def gamma(self) -> tuple[int, ...]:
        return level_function(self.mu, self.rank).gamma

    @property
    def sigma(self) -> int:
        return self.n.num_parts

    def support(self) -> tuple[int, ...]:
        """1-based indices l with c_l not exactly zero."""
        return tuple(l for l in range(1, self.rank + 1) if not self.coeffs[l - 1].is_zero())


def local_equation_from_type(mu, coeffs, field, precision: Optional[int] = None) -> LocalEquation:
    """Build the local equation for type mu with the given coefficient units.

    ``coeffs``: one entry per l = 1..r, each a field element (promoted to an
    exact constant series) or a TruncatedSeries.  A present coefficient with
    vanishing constant term is legal but clears the genericity flag.
    """
    if not isinstance(mu, Partition):
        mu = Partition(tuple(mu))
    r = mu.total
    if len(coeffs) != r:
        raise InvalidDataError(f"need {r} coefficients, got {len(coeffs)}")
    series = []
    unit_defect = False
    if field.is_finite and field.char <= r:
        raise InvalidDataError(
            f"characteristic {field.char} <= rank {r}: wild ramification not supported"
        )
    for c in coeffs:
        if isinstance(c, TruncatedSeries):
            s = c if precision is None else c.truncate(precision)
        else:
            val = c if not isinstance(c, int) else field.from_int(c)
            if isinstance(val, Fraction) and field is not None and field.is_finite:
                raise InvalidDataError("rational constant supplied for a finite field")
            s = TruncatedSeries.constant(field, val)
        if not s.is_zero() and field.is_zero(s.coefficient(0)):
            unit_defect = True  # non-generic leading coefficient
        series.append(s)
    return LocalEquation(field=field, mu=mu, coeffs=tuple(series), unit_defect=unit_defect)


@dataclass(frozen=True)
class RootCluster:
    """One irreducible factor of the nonzero part of a ramification polynomial."""

    degree: int
    multiplicity: int


@dataclass
class BlowupStage:
    """Stage i of the chain: the strict transform in coordinates (lambda, u_i)."""

    index: int
    monomials: dict  # {(lambda_exp, u_exp): field element}
    field: object
    gamma: tuple[int, ...]
    n_parts: tuple[int, ...]
    units0: tuple  # constant terms c_l(0), None for absent terms
    remaining: int  # N_i
    tprec: Optional[int]
    exceptional_multiplicity: Optional[int] = None  # multiplicity stripped entering this stage
    chart1_certified: Optional[bool] = None
    anomalies: tuple[str, ...] = ()

    @property
    def rank(self) -> int:
        return sum(self.n_parts)

    @property
    def sigma(self) -> int:
        return len(self.n_parts)

    def origin_multiplicity(self) -> int:
        """Total-degree multiplicity of the curve germ at (0, 0); 0 if off the curve."""
        if not self.monomials:
            raise DegenerateEquation("degenerate equation: no monomials")
        return min(a + b for a, b in self.monomials)

    def is_pure_lambda_power(self) -> bool:
        return all(b == 0 for _, b in self.monomials)


def initial_stage(eq: LocalEquation) -> BlowupStage:
    """Stage 0: the equation itself, with u_0 = t."""
    K = eq.field
    r = eq.rank
    gamma = eq.gamma
    mono: dict = {(r, 0): K.one}
    tprec: Optional[int] = None
    units0 = []
    for l in range(1, r + 1):
        s = eq.coeffs[l - 1]
        if s.is_zero():
            units0.append(None)
            continue
        units0.append(s.coefficient(0))
        if s.precision is not None:
            if s.precision < 1:
                raise PrecisionExhausted("precision exhausted; rerun with larger N")
            reach = s.precision + gamma[l - 1]
            tprec = reach if tprec is None else min(tprec, reach)
        for m, c in enumerate(s.coeffs):
            if not K.is_zero(c):
                mono[(r - l, gamma[l - 1] + m)] = c
    stage = BlowupStage(
        index=0,
        monomials=mono,
        field=K,
        gamma=gamma,
        n_parts=eq.n.parts,
        units0=tuple(units0),
        remaining=r,
        tprec=tprec,
    )
    if stage.is_pure_lambda_power():
        raise DegenerateEquation("degenerate equation: all coefficient series vanish")
    return stage


def blowup_step(stage: BlowupStage) -> BlowupStage:
    """One blow-up: substitute u_{i-1} = lambda * u_i, strip lambda^{n_i}.

    The first chart (lambda = u_{i-1} v_i) is certified empty on the strict
    transform by locating the unique index l* with gamma_{l*} = n_i and
    (i-1) gamma_{l*} + N_{i-1} - l* = 0: its unit constant term survives as
    the chart's constant term, so the chart misses (0, 0).
    """
    i = stage.index + 1
    if i > stage.sigma:
        raise InvalidDataError(f"all {stage.sigma} stages already performed")
    if stage.is_pure_lambda_power():
        raise DegenerateEquation("degenerate equation: pure lambda power")
    K = stage.field
    expected = stage.n_parts[i - 1]
    anomalies = list(stage.anomalies)

    substituted = {(a + b, b): v for (a, b), v in stage.monomials.items()}
    measured = min(a for a, _ in substituted)
    if measured != expected:
        anomalies.append(
            f"non-generic: unexpected exceptional multiplicity at stage {i} "
            f"(measured {measured}, expected n_{i} = {expected})"
        )
    mono = {(a - measured, b): v for (a, b), v in substituted.items()}

    # first-chart certificate: l* = (i-1) n_i + N_{i-1}
    n_prev = stage.remaining
    l_star = (i - 1) * expected + n_prev
    certified = False
    if 1 <= l_star <= stage.rank and stage.gamma[l_star - 1] == expected:
        u0 = stage.units0[l_star - 1]
        certified = u0 is not None and not K.is_zero(u0)
    if not certified:
        anomalies.append(f"first chart not certifiably empty at stage {i}")

    return BlowupStage(
        index=i,
        monomials=mono,
        field=K,
        gamma=stage.gamma,
        n_parts=stage.n_parts,
        units0=stage.units0,
        remaining=n_prev - measured,
        tprec=stage.tprec,
        exceptional_multiplicity=measured,
        chart1_certified=certified,
        anomalies=tuple(anomalies),
    )


@dataclass(frozen=True)
class RamPolyData:
    """Ramification polynomial of a stage and its nonzero-root analysis."""

    stage_index: int
    poly: list  # dense in u over the base field
    clusters: tuple[RootCluster, ...]  # nonzero part, one per distinct irreducible factor
    base_roots: tuple = ()  # (root, multiplicity) pairs living in the base field

    @property
    def distinct_nonzero_roots(self) -> int:
        """Number of distinct roots over the algebraic closure."""
        return sum(c.degree for c in self.clusters)

    @property
    def simple(self) -> bool:
        return all(c.multiplicity == 1 for c in self.clusters)

    def support_spread(self, field) -> int:
        """Max minus min u-exponent with nonzero coefficient (0 for <= 1 term)."""
        support = [k for k, c in enumerate(self.poly) if not field.is_zero(c)]
        if len(support) < 2:
            return 0
        return max(support) - min(support)


def ramification_polynomial(stage: BlowupStage) -> RamPolyData:
    """R_i(u): the lambda-degree-zero slice of the stage equation.

    Equals sum over l in the stage's level set of c_l(0) u^{gamma_l}, plus
    the constant 1 exactly at the last stage (where the bare lambda^{N_i}
    term has dropped to lambda^0).  Truncated tails never reach
    lambda-degree 0, so the slice is exact.
    """
    if stage.index < 1:
        raise InvalidDataError("ramification polynomial is defined for stages i >= 1")
    K = stage.field
    if stage.tprec is not None and stage.tprec < 1:
        raise PrecisionExhausted("precision exhausted; rerun with larger N")
    degmax = max((b for (a, b) in stage.monomials if a == 0), default=-1)
    coeffs = [K.zero] * (degmax + 1)
    for (a, b), v in stage.monomials.items():
        if a == 0:
            coeffs[b] = v
    poly = polys.normalize(K, coeffs)
    clusters: list[RootCluster] = []
    base_roots: tuple = ()
    if poly:
        val = polys.valuation(K, poly)
        nonzero = poly[val:]
        if polys.degree(nonzero) > 0:
            degs = polys.irreducible_degrees(K, nonzero)
            clusters = [RootCluster(degree=d, multiplicity=m) for d, m in degs]
            base_roots = tuple(polys.linear_roots(K, nonzero))
    return RamPolyData(
        stage_index=stage.index,
        poly=poly,
        clusters=tuple(clusters),
        base_roots=base_roots,
    )


@dataclass(frozen=True)
class RamEntry:
    e: int  # ramification index
    degree: int  # residue degree over the base field
    count: int


@dataclass(frozen=True)
class RamificationProfile:
    entries: tuple[RamEntry, ...]

    def total(self) -> int:
        return sum(en.e * en.degree * en.count for en in self.entries)

    def geometric_multiset(self) -> tuple[int, ...]:
        """Ramification indices of geometric points, sorted descending."""
        out: list[int] = []
        for en in self.entries:
            out.extend([en.e] * (en.degree * en.count))
        return tuple(sorted(out, reverse=True))

    def group_degrees(self) -> dict[int, int]:
        """Realized divisor degree per ramification index: sum deg * count."""
        acc: dict[int, int] = {}
        for en in self.entries:
            acc[en.e] = acc.get(en.e, 0) + en.degree * en.count
        return dict(sorted(acc.items()))

    def fiber_count(self, m: int) -> int:
        """Points over a degree-m extension: closed points of residue degree d | m give d each."""
        return sum(en.degree * en.count for en in self.entries if m % en.degree == 0)


@dataclass(frozen=True)
class DeltaLedger:
    multiplicities: tuple[int, ...]

    @property
    def delta(self) -> int:
        return sum(m * (m - 1) // 2 for m in self.multiplicities)


@dataclass(frozen=True)
class ResolutionResult:
    profile: RamificationProfile
    ledger: DeltaLedger
    stages: tuple[BlowupStage, ...]
    ram_polys: tuple[RamPolyData, ...]
    generic: bool
    anomalies: tuple[str, ...]

    @property
    def delta(self) -> int:
        return self.ledger.delta

    @property
    def singular_locus_confined(self) -> bool:
        """Jacobian-criterion reading: away from each stage origin the strict
        transform is smooth (all nonzero exceptional roots are simple, and the
        coordinate axes meet the curve nowhere else)."""
        return all(rp.simple for rp in self.ram_polys)


def resolve(eq: LocalEquation) -> ResolutionResult:
    """Run all sigma blow-up stages and assemble profile, ledger and flags.

    All stages run even when an intermediate origin is already smooth: each
    stage contributes the ramification-index-i points read off R_i.  The
    genericity flag demands simple nonzero roots at every stage, the
    expected exceptional multiplicities, unit leading coefficients, and a
    certified-empty first chart.
    """
    if eq.coeffs[-1].is_zero():
        raise DegenerateEquation("degenerate equation: a_r vanishes identically")
    stage = initial_stage(eq)
    stages = [stage]
    ram_polys: list[RamPolyData] = []
    entries: list[RamEntry] = []
    multiplicities: list[int] = []
    anomalies: list[str] = []
    simple = True
    if eq.unit_defect:
        anomalies.append("non-generic leading coefficient (some c_l(0) = 0)")
    for _ in range(eq.sigma):
        stage = blowup_step(stage)
        stages.append(stage)
        multiplicities.append(stage.exceptional_multiplicity)
        rp = ramification_polynomial(stage)
        ram_polys.append(rp)
        if not rp.simple:
            simple = False
            anomalies.append(f"repeated nonzero roots of R_{stage.index}")
        counter: dict[int, int] = {}
        for cl in rp.clusters:
            counter[cl.degree] = counter.get(cl.degree, 0) + 1
        for d in sorted(counter):
            entries.append(RamEntry(e=stage.index, degree=d, count=counter[d]))
    anomalies.extend(a for a in stage.anomalies if a not in anomalies)
    profile = RamificationProfile(tuple(entries))
    ledger = DeltaLedger(tuple(multiplicities))
    expected_geometric = eq.mu.parts
    generic = (
        simple
        and not eq.unit_defect
        and tuple(multiplicities) == eq.n.parts
        and all(s.chart1_certified for s in stages[1:])
        and profile.geometric_multiset() == tuple(sorted(expected_geometric, reverse=True))
    )
    return ResolutionResult(
        profile=profile,
        ledger=ledger,
        stages=tuple(stages),
        ram_polys=tuple(ram_polys),
        generic=generic,
        anomalies=tuple(anomalies),
    )


def newton_polygon_profile(eq: LocalEquation) -> tuple[int, ...]:
    """Independent oracle: geometric ramification multiset from the lower hull.

    Support points (r - l, v_l) with v_l the t-valuation of the l-th
    coefficient, plus (r, 0) for the monic term.  An edge of horizontal run
    h and slope a/e in lowest terms contributes h/e geometric points of
    ramification index e (generic coefficients).
    """
    K = eq.field
    r = eq.rank
    gamma = eq.gamma
    points = [(r, 0)]
    for l in range(1, r + 1):
        s = eq.coeffs[l - 1]
        if s.is_zero():
            continue
        v = s.valuation()
        if v is None:
            continue
        points.append((r - l, gamma[l - 1] + v))
    if not any(x == 0 for x, _ in points):
        raise DegenerateEquation("degenerate support: no constant-in-lambda term")
    # lower-left convex hull from (r, 0) to x = 0, slopes measured leftwards
    best: dict[int, int] = {}
    for x, y in points:
        if x not in best or y < best[x]:
            best[x] = y
    pts = sorted(best.items())  # ascending x
    hull: list[tuple[int, int]] = []
    for x, y in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] if it lies on or above segment hull[-2] -> (x, y)
            if (y2 - y1) * (x - x1) >= (y - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append((x, y))
    out: list[int] = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        run = x2 - x1
        rise = y1 - y2  # valuations drop moving right
        if rise <= 0:
            continue
        e = run // gcd(run, rise)
        out.extend([e] * (run // e))
    return tuple(sorted(out, reverse=True))


def realized_divisor_gcd(resolutions: Sequence[ResolutionResult],
                         delta_p: Optional[int] = None) -> int:
    """gcd of the realized divisor degrees over all points and stages.

    Each (point, ramification index) group of closed points is one divisor
    defined over the base field, of degree sum(deg * count).  For generic
    coefficients the gcd equals the combinatorial count gcd; the divides
    check is asserted only for generic results.
    """
    g = 0
    for res in resolutions:
        for _, deg in res.profile.group_degrees().items():
            if deg:
                g = gcd(g, deg)
    if g == 0:
        raise InvalidDataError("no realized divisors: resolutions are empty")
    if delta_p is not None and all(res.generic for res in resolutions):
        if delta_p % g != 0:
            raise AssertionError(
                f"realized divisor gcd {g} does not divide delta_P = {delta_p}"
            )
    return g
