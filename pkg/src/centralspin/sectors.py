"""Total-spin sector bookkeeping for a bath of n identical spin-F nuclei.

Adding n spins F decomposes the (2F+1)^n product space into multiplets of
total spin K with integer multiplicities g_K.  The infinite-temperature
bath state is uniform over the product basis, so each (K, m) level carries
probability g_K / (2F+1)^n independent of m.  Everything here is exact
integer / rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .constants import DEFAULT_PRODUCT_DIM_CAP
from .errors import DimensionCapError


@dataclass(frozen=True)
class BathSpec:
    """Bath of ``n`` nuclei, each of spin ``f`` (positive half-integer)."""

    n: int
    f: float

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"nucleus count must be a positive integer, got {self.n!r}")
        two_f = round(2 * self.f)
        if two_f < 1 or abs(2 * self.f - two_f) > 1e-12:
            raise ValueError(f"nuclear spin must be a positive half-integer, got {self.f!r}")

    @property
    def two_f(self) -> int:
        return round(2 * self.f)

    @property
    def product_dim(self) -> int:
        """Bare bath dimension (2F+1)^n, exact."""
        return (self.two_f + 1) ** self.n

    @property
    def k_max(self) -> float:
        return self.n * self.f

    @property
    def k_min(self) -> float:
        """0 for integer total spin, 1/2 otherwise."""
        return (round(2 * self.n * self.f) % 2) / 2


@dataclass(frozen=True)
class SectorEntry:
    """One total-spin-K sector: multiplicity and exact occupation weights."""

    k: float
    multiplicity: int
    weight: Fraction            # g_K (2K+1) / (2F+1)^n, total sector mass
    prob_per_state: Fraction    # g_K / (2F+1)^n, per (K, m) level

    @property
    def bath_dim(self) -> int:
        return round(2 * self.k) + 1


@dataclass(frozen=True)
class SectorTable:
    """All (K, g_K) sectors of a bath, with infinite-temperature weights."""

    spec: BathSpec
    entries: tuple[SectorEntry, ...]

    def multiplicity(self, k: float) -> int:
        for e in self.entries:
            if abs(e.k - k) < 1e-9:
                return e.multiplicity
        return 0

    def probability(self, k: float, m: float) -> Fraction:
        """Occupation of the level |K, m> in the infinite-temperature state.

        Uniform in m within a sector; zero for |m| > K or absent K.
        """
        if abs(m) > k + 1e-9:
            return Fraction(0)
        for e in self.entries:
            if abs(e.k - k) < 1e-9:
                return e.prob_per_state
        return Fraction(0)


def _m_projection_counts(spec: BathSpec) -> list[int]:
    """Degeneracy of each total z-projection, by iterated convolution.

    Returns counts indexed by i with 2m = -2nF + 2i (ascending), obtained
    by convolving the flat single-spin degeneracy vector n times.  Exact.
    """
    d = spec.two_f + 1
    vec = [1] * d
    for _ in range(spec.n - 1):
        out = [0] * (len(vec) + d - 1)
        for i, a in enumerate(vec):
            for j in range(d):
                out[i + j] += a
        vec = out
    return vec


def enumerate_sectors(spec: BathSpec, max_dim: int = DEFAULT_PRODUCT_DIM_CAP) -> SectorTable:
    """Enumerate all total-spin sectors of the bath.

    Multiplicities come from the exact projection-count convolution:
    g_K = c_K - c_{K+1} where c_m counts product states of z-projection m.
    Weights are the infinite-temperature occupations g_K / (2F+1)^n.

    Args:
        spec: bath definition.
        max_dim: reject baths with (2F+1)^n above this cap.

    Raises:
        DimensionCapError: if the bare bath dimension exceeds ``max_dim``.
    """
    dim = spec.product_dim
    if dim > max_dim:
        raise DimensionCapError(
            f"bath dimension (2F+1)^n = {dim} exceeds the cap {max_dim}; "
            "raise max_dim explicitly if this size is intended"
        )
    counts = _m_projection_counts(spec)
    two_k_max = round(2 * spec.n * spec.f)
    entries = []
    for two_k in range(two_k_max % 2, two_k_max + 1, 2):
        i = (two_k + two_k_max) // 2
        c_k = counts[i]
        c_k1 = counts[i + 1] if i + 1 < len(counts) else 0
        g = c_k - c_k1
        if g < 0:
            raise AssertionError("projection counts must be unimodal")
        if g == 0:
            continue
        k = two_k / 2
        entries.append(
            SectorEntry(
                k=k,
                multiplicity=g,
                weight=Fraction(g * (two_k + 1), dim),
                prob_per_state=Fraction(g, dim),
            )
        )
    table = SectorTable(spec=spec, entries=tuple(entries))
    total = sum(e.multiplicity * e.bath_dim for e in entries)
    if total != dim:
        raise AssertionError(f"sector dimensions sum to {total}, expected {dim}")
    return table


def multiplicity_closed_form(spec: BathSpec, k: float) -> int:
    """Closed-form multiplicity of total spin ``k``, no convolution.

    Evaluates the alternating binomial (inclusion-exclusion) count of
    product states with z-projection K, minus the same count at K+1:

        c_M = sum_j (-1)^j C(n, j) C(nF + M + n - 1 - j(2F+1), n - 1)

    Binomials with a negative upper argument contribute zero.  Agrees with
    ``enumerate_sectors`` for every admissible sector; the convolution is
    the authority and this form is cross-checked against it in tests.
    """
    two_k = round(2 * k)
    if two_k < 0 or two_k > round(2 * spec.n * spec.f):
        raise ValueError(f"K={k} is not an admissible sector for {spec}")
    if (two_k - round(2 * spec.n * spec.f)) % 2 != 0:
        raise ValueError(f"K={k} has the wrong parity for {spec}")

    def c(two_m: int) -> int:
        # number of product states with total 2m = two_m
        n, two_f = spec.n, spec.two_f
        total = 0
        for j in range(n + 1):
            top = (n * two_f + two_m) // 2 + n - 1 - j * (two_f + 1)
            if top < 0:
                continue
            total += (-1) ** j * comb(n, j) * comb(top, n - 1)
        return total

    return c(two_k) - c(two_k + 2)
