"""Log-space evaluation of the chromatic lower-bound condition and its chain.

Everything is overflow-safe for n up to 1e9: the pigeonhole count t is an
exact big integer, and no binomial or 3^n is ever materialized outside log
space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .setfam import binomial_exact, ln_binomial

LN3 = math.log(3.0)


@dataclass(frozen=True)
class TheoremParams:
    """Finite parameter tuple (n, k, ell, p, eps) with derived d and t."""

    n: int
    k: int
    ell: int
    p: float
    eps: float

    def __post_init__(self):
        derived_params(self.n, self.k, self.ell)
        if not 0.0 < self.p <= 1.0:
            raise ValueError(f"p={self.p} outside (0, 1]")
        if not 0.0 < self.eps < 1.0:
            raise ValueError(f"eps={self.eps} outside (0, 1)")

    @property
    def d(self) -> int:
        return self.n - 2 * self.k - 2 * self.ell + 1

    @property
    def t(self) -> int:
        return derived_params(self.n, self.k, self.ell)[1]


def derived_params(n: int, k: int, ell: int) -> tuple[int, int]:
    """Exact (d, t): d = n-2k-2ell+1, t = ceil(C(k+ell, k) / d)."""
    if k < 2:
        raise ValueError(f"precondition k >= 2 violated (k={k})")
    if ell < 1:
        raise ValueError(f"precondition ell >= 1 violated (ell={ell})")
    d = n - 2 * k - 2 * ell + 1
    if d < 2:
        raise ValueError(f"precondition d >= 2 violated (d={d})")
    t = -(-binomial_exact(k + ell, k) // d)
    return d, t


def _inv_powers(t: int) -> tuple[float, float]:
    """(1/t, 1/t^2) for an exact big integer t, without float overflow."""
    try:
        tf = float(t)
        return 1.0 / tf, 1.0 / (tf * tf)
    except OverflowError:
        lt = math.log(t)
        return math.exp(-lt), math.exp(-2.0 * lt)


def condition_rhs(n: int, k: int, ell: int) -> float:
    """t^-2 n ln3 + 2 t^-1 (1 + ln d), in log space."""
    d, t = derived_params(n, k, ell)
    inv_t, inv_t2 = _inv_powers(t)
    return n * LN3 * inv_t2 + 2.0 * (1.0 + math.log(d)) * inv_t


def condition_holds(params: TheoremParams) -> bool:
    """Strict test (1 - eps) p > t^-2 n ln3 + 2 t^-1 (1 + ln d)."""
    return (1.0 - params.eps) * params.p > condition_rhs(
        params.n, params.k, params.ell
    )


def _safe_product(t1: int, t2: int) -> float:
    try:
        return float(t1 * t2)
    except OverflowError:
        return math.inf


def ln_g(t1: int, t2: int, d: int, p: float) -> float:
    """ln of C(t1 d, t1) C(t2 d, t2) (1-p)^(t1 t2); -inf at p = 1."""
    if t1 < 1 or t2 < 1:
        raise ValueError("t1 and t2 must be >= 1")
    if d < 2:
        raise ValueError(f"d={d} must be >= 2")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p={p} outside [0, 1]")
    lnq = math.log1p(-p) if p < 1.0 else -math.inf
    tail = 0.0 if lnq == 0.0 else _safe_product(t1, t2) * lnq
    return ln_binomial(t1 * d, t1) + ln_binomial(t2 * d, t2) + tail


def g_is_decreasing(d: int, t: int, p: float) -> bool:
    """True iff p > (1 + ln d) / t, making g shrink above the starting t."""
    if t < 1:
        raise ValueError("t must be >= 1")
    if d < 2:
        raise ValueError(f"d={d} must be >= 2")
    inv_t, _ = _inv_powers(t)
    return p > (1.0 + math.log(d)) * inv_t


@dataclass(frozen=True)
class ChainBounds:
    """Successive log-space upper bounds on the bad-event probability.

    l1 = n ln3 + 2 ln C(td,t) + t^2 ln(1-p)   (exact first bound)
    l2 = n ln3 + 2 t (1+ln d) - p t^2         (binomial relaxation)
    l3 = -t^2 eps p                            (condition applied)
    l4 = -eps n ln3                            (pigeonhole on t^2 p)
    l2..l4 are only meaningful when the condition holds (conclusive=True).
    """

    l1: float
    l2: float | None
    l3: float | None
    l4: float | None
    conclusive: bool


def ln_pA_bound(params: TheoremParams) -> ChainBounds:
    n, p, eps = params.n, params.p, params.eps
    d, t = derived_params(params.n, params.k, params.ell)
    t2 = _safe_product(t, t)
    lnq = math.log1p(-p) if p < 1.0 else -math.inf
    tail = 0.0 if lnq == 0.0 else t2 * lnq
    l1 = n * LN3 + 2.0 * ln_binomial(t * d, t) + tail
    if not condition_holds(params):
        return ChainBounds(l1=l1, l2=None, l3=None, l4=None, conclusive=False)
    inv_t, _ = _inv_powers(t)
    tf = 1.0 / inv_t
    l2 = n * LN3 + 2.0 * tf * (1.0 + math.log(d)) - p * t2
    l3 = -t2 * eps * p
    l4 = -eps * n * LN3
    return ChainBounds(l1=l1, l2=l2, l3=l3, l4=l4, conclusive=True)


@dataclass(frozen=True)
class BestGap:
    ell: int
    gap: int
    chi_lower: int


def best_gap(n: int, k: int, p: float, eps: float) -> BestGap | None:
    """Minimal ell >= 1 whose condition holds; None when no ell works.

    Scans ell upward (no structure in ell is assumed), so the first success
    is the smallest chromatic gap 2*ell the condition certifies.
    """
    if k < 2:
        raise ValueError(f"precondition k >= 2 violated (k={k})")
    if not 0.0 < p <= 1.0:
        raise ValueError(f"p={p} outside (0, 1]")
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps={eps} outside (0, 1)")
    ell_max = (n - 2 * k - 1) // 2
    for ell in range(1, ell_max + 1):
        if condition_holds(TheoremParams(n=n, k=k, ell=ell, p=p, eps=eps)):
            d = n - 2 * k - 2 * ell + 1
            return BestGap(ell=ell, gap=2 * ell, chi_lower=d + 1)
    return None


@dataclass(frozen=True)
class RegimeEntry:
    ell: int
    d: int | None
    t: int | None
    rhs: float | None
    lhs: float
    holds: bool
    t_vs_sqrt_n: str | None
    conclusion: str | None


@dataclass(frozen=True)
class RegimeReport:
    n: int
    k: int
    p: float
    eps: float
    entries: tuple[RegimeEntry, ...]
    certified: tuple[str, ...]


def corollary_regime_report(
    n: int, k: int, p: float, eps: float, extra_ells=()
) -> RegimeReport:
    """Evaluate the finite-n condition at ell = 1, 2 and any requested ells.

    Each ell whose condition holds certifies the chromatic gap <= 2*ell at
    these concrete parameters (the fixed-ell corollary conclusions; ell = 2
    and ell = 1 are the two headline gap-4 / gap-2 regimes).
    """
    ells = sorted({1, 2} | set(extra_ells))
    lhs = (1.0 - eps) * p
    entries = []
    certified = []
    sqrt_n = math.isqrt(n)
    for ell in ells:
        try:
            d, t = derived_params(n, k, ell)
        except ValueError:
            entries.append(
                RegimeEntry(
                    ell=ell,
                    d=None,
                    t=None,
                    rhs=None,
                    lhs=lhs,
                    holds=False,
                    t_vs_sqrt_n=None,
                    conclusion=None,
                )
            )
            continue
        rhs = condition_rhs(n, k, ell)
        holds = lhs > rhs
        conclusion = None
        if holds:
            conclusion = f"chi >= n-2k+2 - {2 * ell} (gap <= {2 * ell})"
            certified.append(conclusion)
        entries.append(
            RegimeEntry(
                ell=ell,
                d=d,
                t=t,
                rhs=rhs,
                lhs=lhs,
                holds=holds,
                t_vs_sqrt_n=f"t={t} vs sqrt(n)={sqrt_n}",
                conclusion=conclusion,
            )
        )
    return RegimeReport(
        n=n, k=k, p=p, eps=eps, entries=tuple(entries), certified=tuple(certified)
    )
