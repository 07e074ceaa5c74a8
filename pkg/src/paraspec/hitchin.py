"""Degrees and dimensions attached to a parabolic type.

Coefficient-bundle degrees with Riemann-Roch section counts, the base
dimension and its trace-free part, arithmetic and geometric genus of the
associated spectral curves, the pushforward line-bundle degree, and the
cross-identities that tie them together.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, Optional

from .partitions import InvalidDataError, ParabolicData


class IndeterminateH0(ValueError):
    """A section count fell in a range Riemann-Roch alone cannot decide."""


@dataclass(frozen=True)
class DegreeEntry:
    j: int
    degree: int
    h0: int
    determinate: bool
    note: Optional[str] = None


@dataclass(frozen=True)
class DegreeProfile:
    entries: tuple[DegreeEntry, ...]

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(e.degree for e in self.entries)

    @property
    def h0s(self) -> tuple[int, ...]:
        return tuple(e.h0 for e in self.entries)

    def all_determinate(self) -> bool:
        return all(e.determinate for e in self.entries)

    def indeterminate_js(self) -> tuple[int, ...]:
        return tuple(e.j for e in self.entries if not e.determinate)


@dataclass(frozen=True)
class DimensionReport:
    dim_base: int
    dim_base_traceless: int
    p_a: int
    g_tilde: int
    delta_total: int
    prym_dim: int
    bnr_degree: Callable[[int], int]


def h0_line_bundle(g: int, d: int, canonical: bool = False):
    """Sections of a degree-d line bundle on a genus-g curve, where decidable.

    Returns (value, determinate).  Negative degree gives 0; the canonical
    bundle itself gives g; genus 0 gives d+1; degree above 2g-2 gives d+1-g.
    Genus 1, degree 0 reports 1 (the twist divisors arising here are sums of
    non-negative multiples of points, so degree 0 forces the literally
    trivial bundle) but is flagged indeterminate: the linear system contains
    the zero section only, which breaks genericity-based identities.
    Remaining special ranges are indeterminate with value 0 as a placeholder.
    """
    if g < 0:
        raise InvalidDataError("genus must be non-negative")
    if d < 0:
        return 0, True
    if canonical:
        return g, True
    if g == 0:
        return d + 1, True
    if g == 1 and d == 0:
        return 1, False
    if d > 2 * g - 2:
        return d + 1 - g, True
    return 0, False


def coefficient_degrees(data: ParabolicData) -> DegreeProfile:
    """Degrees deg_j = j(2g-2) + sum_x (j - gamma_j(x)) with section counts.

    The j = 1 summand is the canonical bundle itself (gamma_1 = 1 at every
    point), so its section count is exactly g.
    """
    g, r = data.genus, data.rank
    entries = []
    for j in range(1, r + 1):
        twist = 0
        for pt in data.points:
            gj = pt.gamma[j - 1]
            if j - gj < 0:
                raise InvalidDataError("level function exceeded its index")
            twist += j - gj
        deg = j * (2 * g - 2) + twist
        canonical = j == 1
        h0, determinate = h0_line_bundle(g, deg, canonical=canonical)
        note = None
        if canonical:
            note = "canonical summand: h0 = g"
        elif g == 1 and deg == 0:
            note = "genus-1 degree-0 twist divisor is zero: literally trivial bundle, h0 = 1"
        elif not determinate:
            note = "special range: h0 undecidable from degree alone"
        entries.append(DegreeEntry(j=j, degree=deg, h0=h0, determinate=determinate, note=note))
    return DegreeProfile(tuple(entries))


def hitchin_dims(data: ParabolicData, profile: Optional[DegreeProfile] = None) -> tuple[int, int]:
    """(dim of the base, dim of its trace-free part = dim - g).

    Raises IndeterminateH0 naming the offending j when a section count is
    not pinned down.
    """
    if profile is None:
        profile = coefficient_degrees(data)
    bad = profile.indeterminate_js()
    if bad:
        raise IndeterminateH0(f"indeterminate h0 at j = {', '.join(map(str, bad))}")
    total = sum(profile.h0s)
    return total, total - data.genus


def spectral_arithmetic_genus(data: ParabolicData) -> int:
    """p_a of a degree-r cover cut out in the total space of a degree-(2g-2+deg D) bundle."""
    r, g = data.rank, data.genus
    m = 2 * g - 2 + data.deg_d
    return r * (g - 1) + 1 + (r * (r - 1) // 2) * m


def normalized_genus_closed_form(data: ParabolicData) -> tuple[int, tuple[int, ...]]:
    """(g_tilde, per-point deltas): g_tilde = r^2(g-1) + 1 + sum_x f_x.

    Also checks p_a - sum(delta_x) = g_tilde, which pins the two closed forms
    against each other.
    """
    r, g = data.rank, data.genus
    deltas = tuple(pt.delta for pt in data.points)
    g_tilde = r * r * (g - 1) + 1 + sum(pt.flag_dim for pt in data.points)
    if spectral_arithmetic_genus(data) - sum(deltas) != g_tilde:
        raise AssertionError("genus bookkeeping identity violated")  # pragma: no cover
    if g_tilde < 0:
        warnings.warn("no integral spectral curve for this data (negative normalized genus)")
    return g_tilde, deltas


def bnr_line_bundle_degree(data: ParabolicData, d: int) -> int:
    """Degree of pushed-forward line bundles hitting degree-d bundles downstairs.

    delta = (r^2 - r)(g - 1) + sum_x f_x + d, checked against the Euler
    characteristic identity delta + 1 - g_tilde = d + r(1 - g).
    """
    r, g = data.rank, data.genus
    delta = (r * r - r) * (g - 1) + sum(pt.flag_dim for pt in data.points) + d
    g_tilde, _ = normalized_genus_closed_form(data)
    if delta + 1 - g_tilde != d + r * (1 - g):
        raise AssertionError("Euler characteristic identity violated")  # pragma: no cover
    return delta


@dataclass(frozen=True)
class IntegrabilityReport:
    status: str  # "holds" | "fails" | "vacuous"
    reason: Optional[str]
    dim_base: Optional[int]
    dim_base_traceless: Optional[int]
    g_tilde: int
    prym_dim: int


def integrability_report(data: ParabolicData) -> IntegrabilityReport:
    """Check dim base = g_tilde and trace-free dim = g_tilde - g.

    The identities are asserted only when the data can support an integral
    spectral curve at all: the top coefficient's linear system must be
    nonempty (h0 of the j = r summand >= 1).  Otherwise the report is
    vacuous.  Failures are reported, never raised.
    """
    g = data.genus
    profile = coefficient_degrees(data)
    g_tilde, _ = normalized_genus_closed_form(data)
    prym = g_tilde - g
    bad = profile.indeterminate_js()
    if bad:
        return IntegrabilityReport(
            status="vacuous",
            reason=f"indeterminate h0 at j = {', '.join(map(str, bad))}",
            dim_base=None,
            dim_base_traceless=None,
            g_tilde=g_tilde,
            prym_dim=prym,
        )
    dim_base, dim_traceless = hitchin_dims(data, profile)
    top = profile.entries[-1]
    if top.h0 < 1:
        return IntegrabilityReport(
            status="vacuous",
            reason=f"top coefficient forced to zero (deg_{data.rank} = {top.degree})",
            dim_base=dim_base,
            dim_base_traceless=dim_traceless,
            g_tilde=g_tilde,
            prym_dim=prym,
        )
    ok = dim_base == g_tilde and dim_traceless == g_tilde - g
    return IntegrabilityReport(
        status="holds" if ok else "fails",
        reason=None if ok else f"dims ({dim_base}, {dim_traceless}) vs genus ({g_tilde}, {g_tilde - g})",
        dim_base=dim_base,
        dim_base_traceless=dim_traceless,
        g_tilde=g_tilde,
        prym_dim=prym,
    )


def dimension_report(data: ParabolicData, d: int = 0) -> DimensionReport:
    """Bundle every numeric invariant of the data into one record."""
    dim_base, dim_traceless = hitchin_dims(data)
    g_tilde, deltas = normalized_genus_closed_form(data)
    return DimensionReport(
        dim_base=dim_base,
        dim_base_traceless=dim_traceless,
        p_a=spectral_arithmetic_genus(data),
        g_tilde=g_tilde,
        delta_total=sum(deltas),
        prym_dim=g_tilde - data.genus,
        bnr_degree=lambda dd: bnr_line_bundle_degree(data, dd),
    )
