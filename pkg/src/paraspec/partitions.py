"""Partition combinatorics of parabolic types.

Dual partitions, level functions, the successive-degree minimum data used by
the blow-up stages, filtration dimensions, flag dimensions, the gcd
invariant of multiplicity counts, and the gerbe degree-compatibility check.
All functions are pure and exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Optional, Sequence


class InvalidDataError(ValueError):
    """Input violates a structural precondition."""


@dataclass(frozen=True)
class Partition:
    """A partition: positive parts in non-increasing order."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts:
            raise InvalidDataError("empty partition")
        if any(p < 1 for p in parts):
            raise InvalidDataError(f"parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise InvalidDataError(f"parts must be non-increasing: {parts}")

    @classmethod
    def sorted_from(cls, seq: Sequence[int]) -> "Partition":
        """Build from an arbitrary ordering (the original order is the caller's metadata)."""
        return cls(tuple(sorted((int(p) for p in seq), reverse=True)))

    @property
    def total(self) -> int:
        return sum(self.parts)

    @property
    def num_parts(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]


def dual_partition(p: Partition) -> Partition:
    """Conjugate partition: mu_j = #{l : n_l >= j}; an involution."""
    n = p.parts
    return Partition(tuple(sum(1 for x in n if x >= j) for j in range(1, n[0] + 1)))


@dataclass(frozen=True)
class LevelFunction:
    """The staircase (gamma_1, ..., gamma_r) attached to a partition mu of r.

    gamma_j = l exactly when sum(mu_t, t <= l-1) < j <= sum(mu_t, t <= l):
    constant on blocks of sizes mu_1, mu_2, ... reading left to right.
    """

    gamma: tuple[int, ...]

    def __post_init__(self):
        g = tuple(int(x) for x in self.gamma)
        object.__setattr__(self, "gamma", g)
        if not g or g[0] != 1:
            raise InvalidDataError("level function must start at 1")
        for a, b in zip(g, g[1:]):
            if b - a not in (0, 1):
                raise InvalidDataError(f"level function steps must be 0 or 1: {g}")

    def __iter__(self):
        return iter(self.gamma)

    def __len__(self):
        return len(self.gamma)

    def __getitem__(self, j):
        return self.gamma[j]


def level_function(mu: Partition, r: int) -> LevelFunction:
    """Level function of mu; requires mu to total r."""
    if mu.total != r:
        raise InvalidDataError(f"partition {mu.parts} does not total r={r}")
    gamma = []
    for l, m in enumerate(mu.parts, start=1):
        gamma.extend([l] * m)
    return LevelFunction(tuple(gamma))


def min_level_data(n: Partition, gamma: LevelFunction, i: int) -> tuple[int, set[int]]:
    """Minimum of i*gamma_l + N_{i-1} - l over l = 1..r and its level set L_i.

    N_{i-1} = n_i + n_{i+1} + ... .  Checks by direct enumeration that the
    minimum equals n_i and that some l in L_i has (i-1)*gamma_l + N_{i-1} - l = 0;
    both facts drive the exceptional multiplicities of the blow-up stages.
    """
    sigma = n.num_parts
    if not 1 <= i <= sigma:
        raise InvalidDataError(f"stage index i={i} out of range 1..{sigma}")
    r = n.total
    if len(gamma) != r:
        raise InvalidDataError("level function length must equal the partition total")
    n_prev = sum(n.parts[i - 1:])  # N_{i-1}
    values = [i * gamma[l - 1] + n_prev - l for l in range(1, r + 1)]
    min_value = min(values)
    level_set = {l for l in range(1, r + 1) if values[l - 1] == min_value}
    if min_value != n.parts[i - 1]:
        raise InvalidDataError(
            f"minimum {min_value} != n_{i} = {n.parts[i - 1]}: gamma does not match n"
        )
    if not any((i - 1) * gamma[l - 1] + n_prev - l == 0 for l in level_set):
        raise InvalidDataError("no index in the level set kills the previous-stage exponent")
    return min_value, level_set


def ramification_multiplicity_counts(mu: Partition) -> dict[int, int]:
    """How many parts of mu equal each value i (zero counts omitted)."""
    counts: dict[int, int] = {}
    for m in mu.parts:
        counts[m] = counts.get(m, 0) + 1
    return dict(sorted(counts.items()))


def filtration_dims(mu: Partition) -> tuple[int, ...]:
    """Successive quotient dimensions m_i = sum over k >= i of #{l : mu_l = k}.

    Equals the conjugate of mu, i.e. recovers the sorted parts n.
    """
    counts = ramification_multiplicity_counts(mu)
    sigma = mu.parts[0]
    return tuple(sum(c for k, c in counts.items() if k >= i) for i in range(1, sigma + 1))


def flag_dim(p: Partition, r: int) -> int:
    """Dimension of the partial flag variety with quotient dimensions p: (r^2 - sum n_i^2)/2."""
    if p.total != r:
        raise InvalidDataError(f"partition {p.parts} does not total r={r}")
    num = r * r - sum(x * x for x in p.parts)
    return num // 2


def local_delta(p: Partition) -> int:
    """Local genus drop sum n_i(n_i - 1)/2 = (sum n_i^2 - r)/2."""
    return sum(x * (x - 1) for x in p.parts) // 2


@dataclass(frozen=True)
class MarkedPoint:
    """A marked point with its quasi-parabolic type.

    ``partition`` holds the sorted quotient dimensions; the ordering actually
    supplied by the user is kept in ``original_order`` as metadata.  Weights
    are carried through untouched (genericity is assumed, never computed).
    """

    position: object
    partition: Partition
    original_order: tuple[int, ...]
    weights: Optional[tuple[Fraction, ...]] = None

    @classmethod
    def make(cls, position, parts: Sequence[int], weights=None) -> "MarkedPoint":
        original = tuple(int(p) for p in parts)
        part = Partition.sorted_from(original)
        w = None
        if weights is not None:
            w = tuple(Fraction(x) for x in weights)
            if len(w) != len(original):
                raise InvalidDataError("weights must match the number of flag steps")
            if any(not (0 <= x < 1) for x in w):
                raise InvalidDataError("weights must lie in [0, 1)")
        return cls(position=position, partition=part, original_order=original, weights=w)

    @property
    def mu(self) -> Partition:
        return dual_partition(self.partition)

    @property
    def gamma(self) -> LevelFunction:
        return level_function(self.mu, self.partition.total)

    @property
    def flag_dim(self) -> int:
        return flag_dim(self.partition, self.partition.total)

    @property
    def delta(self) -> int:
        return local_delta(self.partition)

    def is_borel(self) -> bool:
        return all(p == 1 for p in self.partition.parts)


@dataclass(frozen=True)
class ParabolicData:
    """Rank, base genus and the marked points; the global input everything derives from."""

    rank: int
    genus: int
    points: tuple[MarkedPoint, ...]

    def __post_init__(self):
        if self.rank < 2:
            raise InvalidDataError("rank must be at least 2")
        if self.genus < 0:
            raise InvalidDataError("genus must be non-negative")
        if not self.points:
            raise InvalidDataError("at least one marked point is required")
        if 2 * self.genus - 2 + len(self.points) <= 0:
            raise InvalidDataError(
                f"2g-2+deg D = {2 * self.genus - 2 + len(self.points)} must be positive"
            )
        positions = [pt.position for pt in self.points]
        if len(set(map(repr, positions))) != len(positions):
            raise InvalidDataError("marked point positions must be pairwise distinct")
        for pt in self.points:
            if pt.partition.total != self.rank:
                raise InvalidDataError(
                    f"partition {pt.partition.parts} at {pt.position!r} does not total rank {self.rank}"
                )

    @property
    def deg_d(self) -> int:
        return len(self.points)


def delta_p(data: ParabolicData) -> int:
    """gcd over all points and all i of the nonzero counts #{l : mu_l(x) = i}.

    Zero counts are skipped; gcd(g, 0) = g makes their inclusion immaterial.
    """
    g = 0
    for pt in data.points:
        for count in ramification_multiplicity_counts(pt.mu).values():
            g = gcd(g, count)
    return g


def delta_p_of_partitions(parts: Sequence[Partition]) -> int:
    """delta_P computed directly from point partitions (no full ParabolicData needed)."""
    g = 0
    for p in parts:
        for count in ramification_multiplicity_counts(dual_partition(p)).values():
            g = gcd(g, count)
    return g


def gerbe_compatible(d: int, e: int, delta: int) -> Optional[int]:
    """Least lambda in 1..delta with e = lambda*d (mod delta), or None if none exists.

    delta = 1 accepts everything with lambda = 1.
    """
    if delta < 1:
        raise InvalidDataError("delta_P must be a positive integer")
    for lam in range(1, delta + 1):
        if (e - lam * d) % delta == 0:
            return lam
    return None


@lru_cache(maxsize=None)
def partitions_of(r: int) -> tuple[Partition, ...]:
    """All partitions of r, lexicographically from (r) down to (1,...,1)."""
    if r < 1:
        raise InvalidDataError("r must be positive")

    def gen(remaining, cap):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest

    return tuple(Partition(p) for p in gen(r, r))
