"""Deciding ℓ-rankings and computing exact ranking numbers on small graphs."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from .errors import BudgetExceeded, InstanceTooLarge, UncoloredVertex
from .graph import Graph

DEFAULT_BUDGET_NODES = 10**8
ORACLE_MAX_N = 14


@dataclass(frozen=True)
class Ranking:
    """A colouring with positive integer colours and its path-length parameter."""

    colors: tuple[int, ...]
    ell: int
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(int(c) for c in self.colors))

    @property
    def max_color(self) -> int:
        return max(self.colors, default=0)

    @property
    def num_colors(self) -> int:
        return len(set(self.colors))

    def __len__(self) -> int:
        return len(self.colors)

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def restrict(self, vertices: Sequence[int]) -> "Ranking":
        return Ranking(tuple(self.colors[v] for v in vertices), self.ell, dict(self.meta))


@dataclass(frozen=True)
class Violation:
    witness_path: tuple[int, ...]
    kind: str = "EqualEndpointsNoLargerInterior"

    @property
    def length(self) -> int:
        return len(self.witness_path) - 1


def compress_colors(colors: Sequence[int]) -> list[int]:
    """Order-preserving relabelling onto ``1..#distinct``; keeps rankings valid."""
    rank = {c: i + 1 for i, c in enumerate(sorted(set(colors)))}
    return [rank[c] for c in colors]


def _colors_of(g: Graph, r: Ranking | Sequence[int]) -> Sequence[int]:
    colors = r.colors if isinstance(r, Ranking) else r
    if len(colors) < g.n:
        raise UncoloredVertex(len(colors))
    for v in range(g.n):
        if colors[v] is None:
            raise UncoloredVertex(v)
    return colors


def _search_from(adj, colors, u: int, ell: int, stamp: list[int], parent: list[int],
                 allowed=None) -> tuple[int, ...] | None:
    """Bounded BFS from ``u`` through strictly smaller colours.

    Returns a shortest path to another vertex of colour ``colors[u]`` or None.
    ``allowed`` optionally limits the search to coloured vertices.
    """
    cu = colors[u]
    stamp[u] = u + 1
    frontier = [u]
    for _ in range(ell):
        nxt = []
        for x in frontier:
            for w in adj[x]:
                if stamp[w] == u + 1:
                    continue
                if allowed is not None and not allowed[w]:
                    continue
                cw = colors[w]
                if cw > cu:
                    continue
                stamp[w] = u + 1
                parent[w] = x
                if cw == cu:
                    path = [w]
                    while path[-1] != u:
                        path.append(parent[path[-1]])
                    return tuple(reversed(path))
                nxt.append(w)
        if not nxt:
            break
        frontier = nxt
    return None


def verify_ranking(g: Graph, r: Ranking | Sequence[int], ell: int | None = None) -> Violation | None:
    """Return None if ``r`` is an ℓ-ranking of ``g``, else a witness violation."""
    colors = _colors_of(g, r)
    if ell is None:
        ell = r.ell
    counts: dict[int, int] = {}
    for c in colors[: g.n]:
        counts[c] = counts.get(c, 0) + 1
    adj = g.adj
    stamp = [0] * g.n
    parent = [-1] * g.n
    for u in range(g.n):
        if counts[colors[u]] < 2:
            continue
        path = _search_from(adj, colors, u, ell, stamp, parent)
        if path is not None:
            return Violation(path)
    return None


def is_ranking(g: Graph, r: Ranking | Sequence[int], ell: int | None = None) -> bool:
    return verify_ranking(g, r, ell) is None


def verify_ranking_oracle(g: Graph, r: Ranking | Sequence[int], ell: int | None = None,
                          max_n: int = ORACLE_MAX_N) -> Violation | None:
    """Exhaustive check over every path of length at most ℓ."""
    if g.n > max_n:
        raise InstanceTooLarge(f"oracle limited to {max_n} vertices, got {g.n}")
    colors = _colors_of(g, r)
    if ell is None:
        ell = r.ell
    adj = g.adj

    def extend(path: list[int], on_path: set[int]) -> Violation | None:
        if len(path) > 1:
            a, b = path[0], path[-1]
            if colors[a] == colors[b] and max(colors[x] for x in path) == colors[a]:
                return Violation(tuple(path))
        if len(path) - 1 == ell:
            return None
        for w in adj[path[-1]]:
            if w not in on_path:
                path.append(w)
                on_path.add(w)
                found = extend(path, on_path)
                path.pop()
                on_path.discard(w)
                if found is not None:
                    return found
        return None

    for u in range(g.n):
        found = extend([u], {u})
        if found is not None:
            return found
    return None


def _budget_from_env(default: int) -> int:
    raw = os.environ.get("RANK_BUDGET_NODES")
    return int(raw) if raw else default


class _PartialSearch:
    """Backtracking over colourings with sound partial-violation pruning."""

    def __init__(self, g: Graph, ell: int, order: Sequence[int]):
        self.g = g
        self.ell = ell
        self.order = list(order)
        self.colors = [0] * g.n
        self.assigned = [False] * g.n
        self.stamp = [0] * g.n
        self.parent = [-1] * g.n
        self.nodes = 0

    def _near(self, v: int) -> list[int]:
        # coloured vertices within ell-1 steps of v through coloured vertices
        adj, assigned = self.g.adj, self.assigned
        seen = {v}
        frontier = [v]
        for _ in range(self.ell - 1):
            nxt = []
            for x in frontier:
                for w in adj[x]:
                    if assigned[w] and w not in seen:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
        return list(seen)

    def consistent(self, v: int) -> bool:
        adj, colors = self.g.adj, self.colors
        st, par = self.stamp, self.parent
        for i in range(len(st)):
            st[i] = 0
        if _search_from(adj, colors, v, self.ell, st, par, self.assigned) is not None:
            return False
        cv = colors[v]
        for u in self._near(v):
            if u != v and colors[u] > cv:
                for i in range(len(st)):
                    st[i] = 0
                if _search_from(adj, colors, u, self.ell, st, par, self.assigned) is not None:
                    return False
        return True

    def run(self, palette: Sequence[int], budget: int | None) -> Iterator[list[int]]:
        order = self.order
        n = len(order)

        def rec(i: int):
            if i == n:
                yield list(self.colors)
                return
            v = order[i]
            self.assigned[v] = True
            for c in palette:
                self.nodes += 1
                if budget is not None and self.nodes > budget:
                    self.assigned[v] = False
                    raise _OutOfBudget
                self.colors[v] = c
                if self.consistent(v):
                    yield from rec(i + 1)
            self.colors[v] = 0
            self.assigned[v] = False

        yield from rec(0)


class _OutOfBudget(Exception):
    pass


def search_order(g: Graph) -> list[int]:
    """Descending degree, ties by index."""
    return sorted(range(g.n), key=lambda v: (-g.degree(v), v))


def iter_rankings(g: Graph, ell: int, palette: Sequence[int]) -> Iterator[list[int]]:
    """Every ℓ-ranking of ``g`` with colours from ``palette``."""
    yield from _PartialSearch(g, ell, search_order(g)).run(list(palette), None)


def find_ranking(g: Graph, ell: int, k: int, budget: int | None = None) -> tuple[list[int] | None, int]:
    """A ranking with colours ``1..k`` (or None) and the number of search nodes used."""
    search = _PartialSearch(g, ell, search_order(g))
    try:
        for colors in search.run(range(1, k + 1), budget):
            return colors, search.nodes
    except _OutOfBudget:
        raise BudgetExceeded(0, None, search.nodes) from None
    return None, search.nodes


def exact_chi(g: Graph, ell: int, budget_nodes: int | None = None,
              lower: int = 1, upper: int | None = None) -> tuple[int, Ranking]:
    """Minimum number of colours in an ℓ-ranking, with a witness.

    Iterative deepening on k from ``lower``; raises BudgetExceeded carrying the
    best bounds known when the node budget runs out.
    """
    budget = _budget_from_env(DEFAULT_BUDGET_NODES if budget_nodes is None else budget_nodes)
    if g.n == 0:
        return 0, Ranking((), ell)
    hi = g.n if upper is None else upper
    used = 0
    k = max(1, lower)
    while k <= hi:
        try:
            colors, nodes = find_ranking(g, ell, k, budget - used)
        except BudgetExceeded as exc:
            raise BudgetExceeded(k, None, used + exc.nodes) from None
        used += nodes
        if colors is not None:
            return k, Ranking(tuple(colors), ell, {"nodes": used})
        k += 1
    raise BudgetExceeded(k, None, used)


def chi_at_least(g: Graph, ell: int, k: int, budget_nodes: int | None = None) -> bool:
    """True when no ℓ-ranking with ``k - 1`` colours exists."""
    if k <= 1:
        return True
    budget = _budget_from_env(DEFAULT_BUDGET_NODES if budget_nodes is None else budget_nodes)
    colors, _ = find_ranking(g, ell, k - 1, budget)
    return colors is None
