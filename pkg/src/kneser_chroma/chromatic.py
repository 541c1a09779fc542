"""Exact chromatic number, clique/independence bounds, vertex criticality.

The solver wraps a DSATUR-ordered branch-and-bound m-colorability decision:
greedy DSATUR gives the upper bound, a clique the lower one, and the answer
is certified by exhausting the (chi-1)-color search tree.  All tie-breaks
are fixed (saturation desc, then degree desc, then lowest index), so results
are deterministic under node budgets.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass

from .graphs import Graph

EXACT = "exact"
TIMEOUT = "timeout"


@dataclass(frozen=True)
class Budget:
    """Search budget; ``max_nodes`` is deterministic, ``max_ms`` is not."""

    max_nodes: int | None = None
    max_ms: float | None = None


class _OutOfBudget(Exception):
    pass


class _Counter:
    __slots__ = ("nodes", "max_nodes", "deadline")

    def __init__(self, budget: Budget | None):
        self.nodes = 0
        self.max_nodes = budget.max_nodes if budget else None
        self.deadline = None
        if budget and budget.max_ms is not None:
            self.deadline = time.monotonic() + budget.max_ms / 1000.0

    def spend(self, amount: int = 1) -> None:
        self.nodes += amount
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise _OutOfBudget
        if self.deadline is not None and self.nodes % 1024 == 0:
            if time.monotonic() > self.deadline:
                raise _OutOfBudget


@dataclass(frozen=True)
class ColoringResult:
    chi: int
    coloring: tuple[int, ...] | None
    clique: tuple[int, ...]
    nodes_explored: int
    status: str
    lower: int
    upper: int


def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _greedy_clique(adj: tuple[int, ...], active: int) -> list[int]:
    """Deterministic maximal clique: grow in (degree desc, index asc) order."""
    verts = sorted(
        _iter_bits(active), key=lambda v: (-(adj[v] & active).bit_count(), v)
    )
    clique: list[int] = []
    cmask = 0
    for v in verts:
        if cmask & ~adj[v] == 0:
            clique.append(v)
            cmask |= 1 << v
    return clique


def _max_clique_exact(
    adj: tuple[int, ...], active: int, counter: _Counter
) -> list[int]:
    """Branch-and-bound maximum clique with a greedy-coloring bound."""
    best = _greedy_clique(adj, active)
    stack: list[int] = []

    def expand(p: int) -> None:
        nonlocal best
        # color candidates greedily; vertices are tried in reverse color order
        seq: list[tuple[int, int]] = []
        rem = p
        c = 0
        while rem:
            c += 1
            cand = rem
            while cand:
                low = cand & -cand
                v = low.bit_length() - 1
                seq.append((v, c))
                cand &= ~adj[v] & ~low
                rem ^= low
        cur = p
        for v, c in reversed(seq):
            if len(stack) + c <= len(best):
                return
            counter.spend()
            stack.append(v)
            nxt = cur & adj[v]
            if nxt:
                expand(nxt)
            elif len(stack) > len(best):
                best = stack[:]
            stack.pop()
            cur &= ~(1 << v)

    if active:
        expand(active)
    return sorted(best)


def clique_lower(graph: Graph, budget: Budget | None = None) -> int:
    """Size of a clique found: exact for <= 64 vertices, greedy beyond."""
    m = graph.num_vertices
    if m == 0:
        raise ValueError("empty graph")
    active = (1 << m) - 1
    if m <= 64:
        counter = _Counter(budget)
        try:
            return len(_max_clique_exact(graph.adj, active, counter))
        except _OutOfBudget:
            pass
    return max(1, len(_greedy_clique(graph.adj, active)))


@dataclass(frozen=True)
class IndependentSetResult:
    size: int
    vertices: tuple[int, ...]
    status: str
    nodes_explored: int


def max_independent_set(
    graph: Graph, budget: Budget | None = None
) -> IndependentSetResult:
    """Exact alpha(G) within budget, else the best set found with status."""
    m = graph.num_vertices
    if m == 0:
        raise ValueError("empty graph")
    full = (1 << m) - 1
    comp = tuple(~graph.adj[u] & full & ~(1 << u) for u in range(m))
    counter = _Counter(budget)
    try:
        best = _max_clique_exact(comp, full, counter)
        status = EXACT
    except _OutOfBudget:
        best = _greedy_clique(comp, full)
        status = TIMEOUT
    return IndependentSetResult(len(best), tuple(sorted(best)), status, counter.nodes)


def greedy_upper(graph: Graph, order) -> int:
    """Colors used by sequential greedy coloring along the given order."""
    m = graph.num_vertices
    order = list(order)
    if sorted(order) != list(range(m)):
        raise ValueError("order is not a permutation of the vertices")
    colors = [-1] * m
    used = 0
    for v in order:
        forbidden = 0
        for u in _iter_bits(graph.adj[v]):
            if colors[u] >= 0:
                forbidden |= 1 << colors[u]
        c = 0
        while forbidden >> c & 1:
            c += 1
        colors[v] = c
        used = max(used, c + 1)
    return max(used, 1)


def _dsatur_greedy(adj: tuple[int, ...], active: int) -> tuple[list[int], int]:
    """Greedy DSATUR coloring of the active vertices; returns (colors, used)."""
    n_bits = active.bit_length()
    colors = [-1] * n_bits
    ncm = [0] * n_bits
    degs = [(adj[v] & active).bit_count() for v in range(n_bits)]
    uncolored = active
    used = 0
    while uncolored:
        best_v, best_key = -1, None
        for v in _iter_bits(uncolored):
            key = (ncm[v].bit_count(), degs[v], -v)
            if best_key is None or key > best_key:
                best_v, best_key = v, key
        c = 0
        while ncm[best_v] >> c & 1:
            c += 1
        colors[best_v] = c
        used = max(used, c + 1)
        uncolored ^= 1 << best_v
        for u in _iter_bits(adj[best_v] & uncolored):
            ncm[u] |= 1 << c
    return colors, used


def _kernelize(adj: tuple[int, ...], active: int, m: int) -> tuple[int, list[int]]:
    """Strip vertices with active degree < m; they are always colorable last."""
    removed: list[int] = []
    changed = True
    while changed:
        changed = False
        for v in _iter_bits(active):
            if (adj[v] & active).bit_count() < m:
                active ^= 1 << v
                removed.append(v)
                changed = True
    return active, removed


def _decide_colorable(
    adj: tuple[int, ...],
    m: int,
    active: int,
    counter: _Counter,
) -> list[int] | None:
    """Coloring of the active vertices with m colors, or None if impossible.

    Raises _OutOfBudget when the node budget runs out before a verdict.
    """
    if active == 0:
        return []
    if m <= 0:
        return None
    n_bits = active.bit_length()
    kernel, removed = _kernelize(adj, active, m)
    colors = [-1] * n_bits

    if kernel:
        degs = [(adj[v] & kernel).bit_count() for v in range(n_bits)]
        clique = _greedy_clique(adj, kernel)
        if len(clique) > m:
            return None
        ncm = [0] * n_bits
        uncolored = kernel
        for i, v in enumerate(clique):
            colors[v] = i
            uncolored ^= 1 << v
            bit = 1 << i
            for u in _iter_bits(adj[v] & kernel):
                ncm[u] |= bit
        used0 = len(clique)

        spend = counter.spend

        def dfs(uncolored: int, used: int) -> bool:
            if uncolored == 0:
                return True
            # DSATUR pick: saturation desc, degree desc, lowest index
            best_v = -1
            best_sat = -1
            best_deg = -1
            um = uncolored
            while um:
                low = um & -um
                v = low.bit_length() - 1
                um ^= low
                sat = ncm[v].bit_count()
                if sat > best_sat or (
                    sat == best_sat and degs[v] > best_deg
                ):
                    best_v, best_sat, best_deg = v, sat, degs[v]
            v = best_v
            limit = used + 1 if used < m else m
            allowed = ~ncm[v] & ((1 << limit) - 1)
            rest = uncolored ^ (1 << v)
            while allowed:
                low = allowed & -allowed
                c = low.bit_length() - 1
                allowed ^= low
                spend()
                colors[v] = c
                touched = 0
                nb = adj[v] & rest
                while nb:
                    nlow = nb & -nb
                    u = nlow.bit_length() - 1
                    nb ^= nlow
                    if not ncm[u] >> c & 1:
                        ncm[u] |= 1 << c
                        touched |= nlow
                if dfs(rest, used if c < used else c + 1):
                    return True
                colors[v] = -1
                while touched:
                    nlow = touched & -touched
                    u = nlow.bit_length() - 1
                    touched ^= nlow
                    ncm[u] ^= 1 << c
            return False

        if uncolored and not dfs(uncolored, used0):
            return None

    # reinsert kernel-stripped vertices; a free color always exists for them
    seen = kernel
    for v in reversed(removed):
        forbidden = 0
        for u in _iter_bits(adj[v] & seen):
            if colors[u] >= 0:
                forbidden |= 1 << colors[u]
        c = 0
        while forbidden >> c & 1:
            c += 1
        colors[v] = c
        seen |= 1 << v
    return colors


def chromatic_number(graph: Graph, budget: Budget | None = None) -> ColoringResult:
    """Exact chi(G) with a proper coloring; bracketing bounds on timeout."""
    nv = graph.num_vertices
    if nv == 0:
        raise ValueError("empty graph")
    if sys.getrecursionlimit() < 4 * nv + 1000:
        sys.setrecursionlimit(4 * nv + 1000)
    active = (1 << nv) - 1
    counter = _Counter(budget)

    if graph.num_edges == 0:
        return ColoringResult(
            chi=1,
            coloring=(0,) * nv,
            clique=(0,),
            nodes_explored=0,
            status=EXACT,
            lower=1,
            upper=1,
        )

    if nv <= 64:
        try:
            clique = _max_clique_exact(graph.adj, active, counter)
        except _OutOfBudget:
            clique = sorted(_greedy_clique(graph.adj, active))
    else:
        clique = sorted(_greedy_clique(graph.adj, active))
    lower = max(2, len(clique))

    gcolors, upper = _dsatur_greedy(graph.adj, active)
    best = gcolors

    status = EXACT
    m = upper - 1
    while m >= lower - 1:
        try:
            attempt = _decide_colorable(graph.adj, m, active, counter)
        except _OutOfBudget:
            status = TIMEOUT
            break
        if attempt is None:
            break
        best = attempt
        upper = m
        m -= 1

    if status == EXACT:
        return ColoringResult(
            chi=upper,
            coloring=tuple(best),
            clique=tuple(clique),
            nodes_explored=counter.nodes,
            status=EXACT,
            lower=upper,
            upper=upper,
        )
    return ColoringResult(
        chi=upper,
        coloring=tuple(best),
        clique=tuple(clique),
        nodes_explored=counter.nodes,
        status=TIMEOUT,
        lower=lower,
        upper=upper,
    )


def is_proper(graph: Graph, coloring) -> bool:
    """True iff every vertex is colored and no edge is monochromatic."""
    colors = list(coloring)
    if len(colors) != graph.num_vertices or any(c is None for c in colors):
        raise ValueError("coloring must assign every vertex a color")
    for u in range(graph.num_vertices):
        row = graph.adj[u] >> (u + 1)
        while row:
            low = row & -row
            v = u + low.bit_length()
            row ^= low
            if colors[u] == colors[v]:
                return False
    return True


def _subgraph_active(nv: int, dropped: int) -> int:
    return ((1 << nv) - 1) ^ (1 << dropped)


def vertex_critical(graph: Graph, budget: Budget | None = None) -> bool | None:
    """True iff removing any single vertex lowers the chromatic number.

    Returns None (indeterminate) if the budget runs out before a verdict.
    """
    nv = graph.num_vertices
    if nv == 0:
        raise ValueError("empty graph")
    if nv == 1:
        return True
    res = chromatic_number(graph, budget)
    if res.status != EXACT:
        return None
    chi = res.chi
    if chi == 1:
        return False
    counter = _Counter(budget)
    for v in range(nv):
        try:
            attempt = _decide_colorable(
                graph.adj, chi - 1, _subgraph_active(nv, v), counter
            )
        except _OutOfBudget:
            return None
        if attempt is None:
            return False
    return True
