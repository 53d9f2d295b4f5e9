"""Toroidal (wrap-around) distances and rank-1 lattice distance diagnostics.

The l_p distance on the unit torus is

    dist_p(x, y) = ( sum_j min(|x_j - y_j|, 1 - |x_j - y_j|)**p )**(1/p).

For a rank-1 lattice every pairwise difference x_i - x_j is itself a
lattice point, so the n(n-1)/2 pairwise distances collapse onto the n-1
norms ||x_k||, k = 1..n-1, with

    ||x_k||_p**p = sum_j m_{k,j}**p / n**p,
    m_{k,j} = min(k z_j mod n, n - (k z_j mod n)).

``lattice_min_distance`` exploits this O(nd) reformulation and keeps the
census on exact integer keys (sum of m for l1, sum of m**2 for l2), so
equal distances are grouped exactly -- no floating-point aliasing.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .exceptions import AdmissibilityError, DomainError, SizeLimitError
from .numtheory import PrimeModulus, is_prime

if TYPE_CHECKING:  # import for annotations only; no runtime dependency
    from .lattice import GeneratingVector
    from .pointset import LatticePointSet

__all__ = [
    "ToroidalNorm",
    "T1",
    "T2",
    "norm_exponent",
    "DistanceReport",
    "DistanceBounds",
    "OptimalDistances",
    "toroidal_distance",
    "lattice_min_distance",
    "min_distance_bounds",
    "optimal_distances",
    "brute_force_min_distance",
]

# Brute-force pairwise enumeration refuses point sets larger than this.
BRUTE_FORCE_CAP = 10_000


@dataclass(frozen=True)
class ToroidalNorm:
    """Toroidal l_p norm tag; only p = 1 and p = 2 are supported."""

    p: int

    def __post_init__(self) -> None:
        if self.p not in (1, 2):
            raise DomainError(f"only p in {{1, 2}} is supported, got p={self.p}")


T1 = ToroidalNorm(1)
T2 = ToroidalNorm(2)


def norm_exponent(norm: ToroidalNorm | int | str) -> int:
    """Normalize a norm designator to its exponent, 1 or 2.

    Accepts ``ToroidalNorm``, the integers 1/2, or the strings
    "l1"/"l2"/"t1"/"t2" (case-insensitive).
    """
    if isinstance(norm, ToroidalNorm):
        return norm.p
    if isinstance(norm, int) and not isinstance(norm, bool):
        if norm in (1, 2):
            return norm
        raise DomainError(f"only p in {{1, 2}} is supported, got p={norm}")
    if isinstance(norm, str):
        tag = norm.strip().lower()
        if tag in ("l1", "t1", "1"):
            return 1
        if tag in ("l2", "t2", "2"):
            return 2
    raise DomainError(f"unrecognized norm designator: {norm!r}")


def _norm_tag(p: int) -> str:
    return "l1" if p == 1 else "l2"


@dataclass(frozen=True)
class DistanceReport:
    """Minimum-distance diagnostics for a rank-1 lattice.

    Attributes
    ----------
    min_distance : float
        Minimum pairwise toroidal distance (unit-cube units).
    argmin_k : int
        Smallest index k in 1..n-1 whose lattice point attains it.
    census : tuple of (float, int)
        Distinct distance values (ascending) with their k-multiplicities.
    distinct_count : int
        ``len(census)``.
    min_key : int
        Exact integer key of the minimum (sum of wrapped residues for l1,
        sum of their squares for l2); ``min_distance`` is derived from it.
    census_keys : tuple of int
        Exact integer keys backing ``census``, ascending.
    norm : str
        "l1" or "l2".
    n : int
        Number of lattice points.
    """

    min_distance: float
    argmin_k: int
    census: tuple[tuple[float, int], ...]
    distinct_count: int
    min_key: int
    census_keys: tuple[int, ...]
    norm: str
    n: int

    def multiplicities(self) -> tuple[int, ...]:
        return tuple(c for _, c in self.census)


@dataclass(frozen=True)
class DistanceBounds:
    """Two-sided bounds on the minimum toroidal distance of a rank-1
    lattice with a non-degenerate generating vector (n prime, n >= 2d+1)."""

    d: int
    n: int
    l1_lower: float
    l1_upper: float
    l2_lower: float
    l2_upper: float


@dataclass(frozen=True)
class OptimalDistances:
    """Distance values of the equidistant lattice at n = 2d + 1.

    When n = 2d + 1 is prime, the subgroup construction makes every
    pairwise toroidal distance equal, and the common value attains the
    upper bound of ``min_distance_bounds`` in both norms.
    """

    l1: float
    l2: float
    n: PrimeModulus


def toroidal_distance(
    x: np.ndarray, y: np.ndarray, norm: ToroidalNorm | int | str
) -> float:
    """l_p distance between two points on the unit torus.

    Parameters
    ----------
    x, y : array_like, shape (d,)
        Points with coordinates in [0, 1].
    norm : ToroidalNorm | int | str
        Which norm; p = 1 or p = 2.

    Returns
    -------
    float
        ``( sum_j min(|x_j-y_j|, 1-|x_j-y_j|)**p )**(1/p)``.
    """
    p = norm_exponent(norm)
    xa = np.asarray(x, dtype=np.float64)
    ya = np.asarray(y, dtype=np.float64)
    if xa.shape != ya.shape or xa.ndim != 1:
        raise DomainError(
            f"expected two 1-d points of equal length, got shapes {xa.shape} and {ya.shape}"
        )
    for name, arr in (("x", xa), ("y", ya)):
        if arr.size and (arr.min() < 0.0 or arr.max() > 1.0):
            raise DomainError(f"{name} has a coordinate outside [0, 1]")
    delta = np.abs(xa - ya)
    wrap = np.minimum(delta, 1.0 - delta)
    if p == 1:
        return float(wrap.sum())
    return float(math.sqrt(float((wrap * wrap).sum())))


def lattice_min_distance(
    z: "GeneratingVector", norm: ToroidalNorm | int | str
) -> DistanceReport:
    """Minimum toroidal distance and distance census of a rank-1 lattice.

    Runs in O(nd) by scanning k = 1..n-1 instead of all point pairs.
    The census accumulates on exact integer keys, so distances that are
    equal as rationals are counted together exactly.

    Parameters
    ----------
    z : GeneratingVector
        Generating vector (defines points x_i = (i * z mod n) / n).
    norm : ToroidalNorm | int | str
        p = 1 or p = 2.
    """
    p = norm_exponent(norm)
    n = z.n
    z_arr = z.as_array()
    if n < 2:
        raise DomainError(f"need n >= 2 lattice points, got n={n}")

    counts: dict[int, int] = {}
    min_key: int | None = None
    argmin_k = -1
    rows = max(1, (1 << 21) // max(1, z.d))
    for start in range(1, n, rows):
        k = np.arange(start, min(start + rows, n), dtype=np.int64)
        km = (k[:, None] * z_arr[None, :]) % n
        m = np.minimum(km, n - km)
        keys = m.sum(axis=1) if p == 1 else (m * m).sum(axis=1)
        pos = int(np.argmin(keys))
        block_min = int(keys[pos])
        if min_key is None or block_min < min_key:
            min_key = block_min
            argmin_k = int(k[pos])
        uniq, cnt = np.unique(keys, return_counts=True)
        for key, c in zip(uniq.tolist(), cnt.tolist()):
            counts[key] = counts.get(key, 0) + c

    assert min_key is not None
    keys_sorted = sorted(counts)
    if p == 1:
        to_dist = lambda key: key / n  # noqa: E731
    else:
        to_dist = lambda key: math.sqrt(key) / n  # noqa: E731
    census = tuple((to_dist(key), counts[key]) for key in keys_sorted)
    return DistanceReport(
        min_distance=to_dist(min_key),
        argmin_k=argmin_k,
        census=census,
        distinct_count=len(census),
        min_key=min_key,
        census_keys=tuple(keys_sorted),
        norm=_norm_tag(p),
        n=n,
    )


def min_distance_bounds(d: int, n: int | PrimeModulus) -> DistanceBounds:
    """Two-sided minimum-distance bounds for non-degenerate vectors.

    For prime n >= 2d + 1 and any generating vector whose components are
    distinct up to sign mod n (z_i != +-z_j for i != j, so the 2d residues
    {+-z_1, ..., +-z_d} are pairwise distinct), the minimum pairwise
    toroidal distance T of the lattice satisfies

        d(d+1)/(2n)                 <= T_l1 <= (n+1)d/(4n)
        sqrt(6d(d+1)(2d+1))/(6n)    <= T_l2 <= sqrt((n+1)d/(12n))

    The upper bounds hold for every generating vector with nonzero
    components.  The lower bounds genuinely need sign-distinctness, not
    just distinct components: z_i = n - z_j makes two coordinates wrap to
    the same magnitude, and the smallest lattice point can then dip below
    d(d+1)/(2n) (e.g. d=11, n=29, z containing the pairs {1,28}, {4,25},
    {7,22}: min l1 distance 55/29 < 66/29).  Subgroup vectors always
    satisfy the stronger condition because {+-z_j} forms a full order-2d
    subgroup.
    """
    d = operator.index(d)
    n_int = operator.index(n)
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    if not is_prime(n_int):
        raise DomainError(f"n must be prime, got {n_int}")
    if n_int < 2 * d + 1:
        raise AdmissibilityError(f"need n >= 2d + 1, got d={d}, n={n_int}")
    return DistanceBounds(
        d=d,
        n=n_int,
        l1_lower=d * (d + 1) / (2 * n_int),
        l1_upper=(n_int + 1) * d / (4 * n_int),
        l2_lower=math.sqrt(6 * d * (d + 1) * (2 * d + 1)) / (6 * n_int),
        l2_upper=math.sqrt((n_int + 1) * d / (12 * n_int)),
    )


def optimal_distances(d: int) -> OptimalDistances:
    """Distance values of the equidistant lattice at n = 2d + 1.

    Requires n = 2d + 1 prime; then every pairwise distance of the
    subgroup lattice equals (n+1)d/(4n) in l1 and sqrt((n+1)d/(12n)) in
    l2 -- the upper bounds of ``min_distance_bounds``, attained exactly.
    """
    d = operator.index(d)
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    n = 2 * d + 1
    if not is_prime(n):
        raise AdmissibilityError(f"2d + 1 = {n} is not prime for d={d}")
    return OptimalDistances(
        l1=(n + 1) * d / (4 * n),
        l2=math.sqrt((n + 1) * d / (12 * n)),
        n=PrimeModulus(n),
    )


def brute_force_min_distance(
    points: "LatticePointSet | np.ndarray", norm: ToroidalNorm | int | str
) -> float:
    """Minimum pairwise toroidal distance by O(n^2 d) enumeration.

    Reference oracle for ``lattice_min_distance``; works on any point set
    (shifted, Monte Carlo, ...). Refuses more than ``BRUTE_FORCE_CAP``
    points.
    """
    p = norm_exponent(norm)
    pts = points.points if hasattr(points, "points") else np.asarray(points, dtype=np.float64)
    if pts.ndim != 2:
        raise DomainError(f"expected an (n, d) point array, got shape {pts.shape}")
    n = pts.shape[0]
    if n < 2:
        raise DomainError(f"need at least two points, got {n}")
    if n > BRUTE_FORCE_CAP:
        raise SizeLimitError(
            f"brute force is capped at {BRUTE_FORCE_CAP} points, got {n}"
        )

    d = pts.shape[1]
    block = max(16, int(math.isqrt((1 << 22) // max(1, d))))
    best = math.inf
    for i0 in range(0, n, block):
        a = pts[i0 : i0 + block]
        for j0 in range(i0, n, block):
            b = pts[j0 : j0 + block]
            delta = np.abs(a[:, None, :] - b[None, :, :])
            wrap = np.minimum(delta, 1.0 - delta)
            dist = wrap.sum(axis=-1) if p == 1 else (wrap * wrap).sum(axis=-1)
            if i0 == j0:
                # mask the diagonal and the duplicated lower triangle
                il, jl = np.tril_indices(dist.shape[0], k=0, m=dist.shape[1])
                dist[il, jl] = math.inf
            best = min(best, float(dist.min()))
    return best if p == 1 else math.sqrt(best)
