"""k-subsets of [n] as bitmasks: colex ranking, cyclic stability, binomials.

Ground-set elements are 1-based; bit i-1 of a mask represents element i.
The canonical vertex order everywhere in this package is colexicographic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import CapacityError

MAX_GROUND_SET = 64

LN_2PI = math.log(2.0 * math.pi)


@dataclass(frozen=True)
class KSubset:
    """A k-element subset of [n], with its colex rank among all k-subsets."""

    mask: int
    n: int
    k: int
    rank: int

    @classmethod
    def from_mask(cls, mask: int, n: int) -> "KSubset":
        if n < 0 or n > MAX_GROUND_SET:
            raise CapacityError(f"ground set size {n} outside 0..{MAX_GROUND_SET}")
        if mask < 0 or mask >> n:
            raise ValueError(f"mask {mask:#x} has bits outside positions 1..{n}")
        return cls(mask=mask, n=n, k=mask.bit_count(), rank=rank_mask(mask))

    @classmethod
    def from_elements(cls, elements, n: int) -> "KSubset":
        mask = 0
        for e in elements:
            if not 1 <= e <= n:
                raise ValueError(f"element {e} outside 1..{n}")
            mask |= 1 << (e - 1)
        return cls.from_mask(mask, n)

    def elements(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.n) if self.mask >> i & 1)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.elements())) + "}"


def rank_mask(mask: int) -> int:
    """Colex rank of a subset given as a bitmask: sum of C(pos_j, j+1)."""
    r = 0
    j = 0
    m = mask
    while m:
        low = m & -m
        r += math.comb(low.bit_length() - 1, j + 1)
        j += 1
        m ^= low
    return r


def unrank_ksubset(n: int, k: int, rank: int) -> KSubset:
    """Inverse of ``KSubset.rank`` for the colex order on k-subsets of [n]."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    if n > MAX_GROUND_SET:
        raise CapacityError(f"n={n} exceeds {MAX_GROUND_SET}")
    if not 0 <= rank < math.comb(n, k):
        raise ValueError(f"rank {rank} outside 0..C({n},{k})-1")
    mask = 0
    r = rank
    c = n - 1
    for j in range(k, 0, -1):
        while math.comb(c, j) > r:
            c -= 1
        r -= math.comb(c, j)
        mask |= 1 << c
        c -= 1
    return KSubset(mask=mask, n=n, k=k, rank=rank)


def _colex_masks(n: int, k: int):
    # all k-subsets of positions 0..n-1 in colex order, as masks
    if k == 0:
        yield 0
        return
    for top in range(k - 1, n):
        for rest in _colex_masks(top, k - 1):
            yield rest | (1 << top)


def enumerate_ksubsets(n: int, k: int) -> list[KSubset]:
    """All k-subsets of [n] in colex order; list position equals rank."""
    if k > n:
        raise ValueError(f"k={k} exceeds n={n}")
    if k < 0 or n < 0:
        raise ValueError("n and k must be nonnegative")
    if n > MAX_GROUND_SET:
        raise CapacityError(f"n={n} exceeds {MAX_GROUND_SET}")
    return [
        KSubset(mask=m, n=n, k=k, rank=r) for r, m in enumerate(_colex_masks(n, k))
    ]


def mask_is_stable(mask: int, n: int) -> bool:
    """True iff the subset has no two cyclically consecutive elements of [n].

    Singletons and the empty set are stable: a lone element is not a pair,
    even on the degenerate 1-cycle.
    """
    if n <= 1 or mask.bit_count() <= 1:
        return True
    full = (1 << n) - 1
    succ = ((mask << 1) | (mask >> (n - 1))) & full
    return mask & succ == 0


def is_stable(s: KSubset) -> bool:
    return mask_is_stable(s.mask, s.n)


def enumerate_stable_ksubsets(n: int, k: int) -> list[KSubset]:
    """Stable k-subsets of [n] in colex order (filter of enumerate_ksubsets)."""
    return [s for s in enumerate_ksubsets(n, k) if mask_is_stable(s.mask, n)]


def binomial_exact(a: int, b: int) -> int:
    """Exact C(a, b); zero when b > a."""
    if a < 0 or b < 0:
        raise ValueError("binomial arguments must be nonnegative")
    if b > a:
        return 0
    return math.comb(a, b)


def _ln_factorial(x: int) -> float:
    if x < 2**53:
        return math.lgamma(x + 1.0)
    # Stirling; the 1/(12x) term already puts the truncation error below 1e-200
    xf = float(x)
    return (xf + 0.5) * math.log(x) - xf + 0.5 * LN_2PI + 1.0 / (12.0 * xf)


@lru_cache(maxsize=65536)
def ln_binomial(a: int, b: int) -> float:
    """ln C(a, b) with relative error <= 1e-9 for a <= 1e9.

    Routes through an exact binomial for tiny a, an fsum of integer logs when
    min(b, a-b) is moderate (the accuracy-critical regime), and log-factorials
    only when both parts are large enough to drown the cancellation error.
    """
    if b < 0 or b > a:
        raise ValueError(f"need 0 <= b <= a, got a={a}, b={b}")
    m = min(b, a - b)
    if m == 0:
        return 0.0
    if a <= 64:
        return math.log(math.comb(a, b))
    if m <= 10_000:
        return math.fsum(
            math.log(a - m + i) - math.log(i) for i in range(1, m + 1)
        )
    return _ln_factorial(a) - _ln_factorial(b) - _ln_factorial(a - b)


def stable_count(n: int, k: int) -> int:
    """Number of stable k-subsets of the n-cycle: (n/(n-k)) * C(n-k, k)."""
    if k == 0:
        return 1
    if n <= 0:
        return 0
    if n == 1:
        return 1 if k == 1 else 0
    if 2 * k > n:
        return 0
    return n * math.comb(n - k, k) // (n - k)
