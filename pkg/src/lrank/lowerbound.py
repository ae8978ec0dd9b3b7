"""Generators for the lower-bound constructions: ary trees, boosts, and their recursion."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .decomposition import RootedTreeDecomposition
from .errors import TooLarge
from .graph import Graph, Layering
from .numerics import tower
from .verify import iter_rankings

DEFAULT_BUDGET = 2_000_000


def ary_tree_size(r: int) -> int:
    return sum((r + 1) ** i for i in range(r))


def complete_ary_tree(r: int, budget: int = DEFAULT_BUDGET) -> tuple[Graph, Layering]:
    """The complete (r+1)-ary tree of height r-1, vertices numbered level by level."""
    if r < 1:
        raise ValueError("r must be at least 1")
    size = ary_tree_size(r)
    if size > budget:
        raise TooLarge(size, budget)
    edges = []
    layers = [[0]]
    nxt_id = 1
    for _ in range(r - 1):
        layer = []
        for p in layers[-1]:
            for _ in range(r + 1):
                edges.append((p, nxt_id))
                layer.append(nxt_id)
                nxt_id += 1
        layers.append(layer)
    layer_of = {v: i for i, layer in enumerate(layers) for v in layer}
    return Graph(size, tuple(edges)), Layering(tuple(tuple(x) for x in layers), layer_of)


def tree_decomposition_of_tree(g: Graph, root: int = 0) -> RootedTreeDecomposition:
    """Width-1 decomposition of a tree: a root bag and one bag per edge."""
    parent_v = {root: -1}
    order = [root]
    for u in order:
        for w in g.adj[u]:
            if w not in parent_v:
                parent_v[w] = u
                order.append(w)
    node = {root: 0}
    bags = [frozenset({root})]
    parent = [-1]
    for v in order[1:]:
        node[v] = len(bags)
        bags.append(frozenset({parent_v[v], v}))
        parent.append(node[parent_v[v]])
    return RootedTreeDecomposition(tuple(parent), tuple(bags), 0)


@dataclass(frozen=True)
class BoostSpec:
    base: Graph
    h: int
    m: int

    def __post_init__(self):
        if self.h < 1:
            raise ValueError("h must be at least 1")
        if self.m < 0:
            raise ValueError("m must be nonnegative")

    @property
    def copies(self) -> int:
        return self.h * self.m + 1


def boost_size_estimate(u_size: int, h: int, m: int) -> int:
    """Exact vertex count: sum over levels of (|U| (hm+1))^i."""
    per = u_size * (h * m + 1)
    return sum(per ** i for i in range(m + 1))


def boost(spec: BoostSpec, budget: int = DEFAULT_BUDGET) -> tuple[Graph, Layering]:
    """The (h, m)-boost: every vertex of level i-1 gets hm+1 private copies of U."""
    size = boost_size_estimate(spec.base.n, spec.h, spec.m)
    if size > budget:
        raise TooLarge(size, budget)
    u = spec.base
    edges: list[tuple[int, int]] = []
    layers = [[0]]
    nxt = 1
    for _ in range(spec.m):
        layer = []
        for a in layers[-1]:
            for _ in range(spec.copies):
                off = nxt
                nxt += u.n
                edges.extend((a, off + v) for v in range(u.n))
                edges.extend((off + x, off + y) for x, y in u.edges)
                layer.extend(range(off, off + u.n))
        layers.append(layer)
    layer_of = {v: i for i, layer in enumerate(layers) for v in layer}
    return Graph(size, tuple(edges)), Layering(tuple(tuple(x) for x in layers), layer_of)


def boost_decomposition(u_decomp: RootedTreeDecomposition, spec: BoostSpec) -> RootedTreeDecomposition:
    """Copies of U's decomposition, each with its apex added to every bag.

    Vertex numbering matches :func:`boost`.  Each copy's tree hangs below the
    topmost node whose bag contains its apex.
    """
    u = spec.base
    bags: list[frozenset[int]] = [frozenset({0})]
    parent = [-1]
    host = {0: 0}  # vertex -> topmost node containing it
    frontier = [0]
    nxt = 1
    ud_order = u_decomp.order
    for _ in range(spec.m):
        new_frontier = []
        for a in frontier:
            for _ in range(spec.copies):
                off = nxt
                nxt += u.n
                ids = {}
                for x in ud_order:
                    ids[x] = len(bags)
                    bags.append(frozenset({a} | {off + v for v in u_decomp.bags[x]}))
                    p = u_decomp.parent[x]
                    parent.append(host[a] if p < 0 else ids[p])
                for v, x in u_decomp.top_node.items():
                    host[off + v] = ids[x]
                new_frontier.extend(range(off, off + u.n))
        frontier = new_frontier
    return RootedTreeDecomposition(tuple(parent), tuple(bags), 0)


@dataclass(frozen=True)
class LowerBoundInstance:
    graph: Graph
    decomposition: RootedTreeDecomposition
    t: int
    r: int
    h: int | None
    m: int | None
    guarantee_applies: bool  # False when r < τ(t)

    @property
    def warning(self) -> bool:
        return not self.guarantee_applies


def boost_parameters(r: int) -> tuple[int, int]:
    """h = ceil(ln r), m = ceil(r / ln r)."""
    lr = math.log(r)
    return math.ceil(lr), math.ceil(r / lr)


def lowerbound_size_estimate(t: int, r: int) -> int:
    if r <= 1:
        return 1
    if t == 1:
        return ary_tree_size(r)
    h, m = boost_parameters(r)
    return boost_size_estimate(lowerbound_size_estimate(t - 1, h), h, m)


def _guarantee(t: int, r: int) -> bool:
    try:
        return r >= tower(t)
    except Exception:
        return False


def lowerbound_graph(t: int, r: int, budget: int = DEFAULT_BUDGET) -> LowerBoundInstance:
    """Treewidth-t graph intended to need r colours in any 2-ranking."""
    if t < 1:
        raise ValueError("t must be at least 1")
    if r < 1:
        raise ValueError("r must be at least 1")
    size = lowerbound_size_estimate(t, r)
    if size > budget:
        raise TooLarge(size, budget)
    ok = _guarantee(t, r)
    if r == 1:
        g = Graph(1)
        d = RootedTreeDecomposition((-1,), (frozenset({0}),), 0)
        return LowerBoundInstance(g, d, t, r, None, None, ok)
    if t == 1:
        g, _ = complete_ary_tree(r, budget)
        return LowerBoundInstance(g, tree_decomposition_of_tree(g), t, r, None, None, ok)
    h, m = boost_parameters(r)
    inner = lowerbound_graph(t - 1, h, budget)
    spec = BoostSpec(inner.graph, h, m)
    g, _ = boost(spec, budget)
    d = boost_decomposition(inner.decomposition, spec)
    return LowerBoundInstance(g, d, t, r, h, m, ok)


def apex_graph(u: Graph, copies: int) -> Graph:
    """``copies`` disjoint copies of U plus an apex (the last vertex) adjacent to all."""
    n = u.n * copies
    edges = []
    for i in range(copies):
        off = i * u.n
        edges.extend((off + x, off + y) for x, y in u.edges)
    edges.extend((v, n) for v in range(n))
    return Graph(n + 1, tuple(edges))


@dataclass(frozen=True)
class ApexCheck:
    holds: bool
    rankings: int
    min_apex_color: int | None
    counterexample: tuple[int, ...] | None = None


def apex_lemma_check(u: Graph, h: int, k0: int, k: int) -> ApexCheck:
    """Every 2-ranking of k+1 copies of U plus an apex with colours in k0..k
    gives the apex colour at least k0 + h."""
    g = apex_graph(u, k + 1)
    apex = g.n - 1
    count = 0
    lowest = None
    for colors in iter_rankings(g, 2, range(k0, k + 1)):
        count += 1
        c = colors[apex]
        lowest = c if lowest is None else min(lowest, c)
        if c < k0 + h:
            return ApexCheck(False, count, lowest, tuple(colors))
    return ApexCheck(True, count, lowest)
