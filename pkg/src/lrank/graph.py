"""Simple undirected graphs, BFS layerings, graph powers and strong products.

Vertices are dense integers ``0..n-1``.  Optional string labels ride along
but no algorithm looks at them.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import EmptyFactor, EmptyRoots, GraphError, UnknownVertex, UnreachableVertex


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple graph.

    ``edges`` keeps the order (and orientation) in which edges were supplied so
    that files can be written back byte-for-byte.  ``comments`` holds
    ``(position, text)`` pairs where *position* is the number of edges that
    preceded the comment in the source file.
    """

    n: int
    edges: tuple[tuple[int, int], ...] = ()
    labels: tuple[str, ...] | None = None
    comments: tuple[tuple[int, str], ...] = field(default=(), repr=False)

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("vertex count must be nonnegative")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        seen = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge {u}-{v} has an endpoint outside 0..{self.n - 1}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise GraphError(f"parallel edge {u}-{v}")
            seen.add(key)
        if self.labels is not None and len(self.labels) != self.n:
            raise GraphError("labels must name every vertex")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], **kw) -> "Graph":
        """Build a graph, silently dropping duplicate edges (sorted order)."""
        keys = sorted({(u, v) if u < v else (v, u) for u, v in edges})
        return cls(n, tuple(keys), **kw)

    @classmethod
    def from_adjacency(cls, adj: Sequence[Iterable[int]]) -> "Graph":
        return cls.from_edges(len(adj), ((u, v) for u, nb in enumerate(adj) for v in nb if u != v))

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        """Sorted neighbour tuples."""
        nb: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].append(v)
            nb[v].append(u)
        return tuple(tuple(sorted(x)) for x in nb)

    @cached_property
    def adj_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(x) for x in self.adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    def __len__(self) -> int:
        return self.n

    def vertices(self) -> range:
        return range(self.n)

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset((u, v) if u < v else (v, u) for u, v in self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj_sets[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edge_set() == other.edge_set()

    def __hash__(self) -> int:
        return hash((self.n, self.edge_set()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(itertools.combinations(range(n), 2)))


def star_graph(leaves: int) -> Graph:
    """``K_{1,leaves}`` with the centre at vertex 0."""
    return Graph(leaves + 1, tuple((0, i) for i in range(1, leaves + 1)))


def disjoint_union(graphs: Sequence[Graph]) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph(offset, tuple(edges))


def connected_components(g: Graph, vertices: Iterable[int] | None = None) -> list[list[int]]:
    """Components of ``g[vertices]`` (whole graph by default), each sorted."""
    if vertices is None:
        allowed = None
        order = range(g.n)
    else:
        order = sorted(set(vertices))
        allowed = set(order)
    seen: set[int] = set()
    comps = []
    adj = g.adj
    for s in order:
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen and (allowed is None or w in allowed):
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        comp.sort()
        comps.append(comp)
    return comps


def distances_from(g: Graph, sources: Iterable[int], limit: int | None = None,
                   allowed: set[int] | None = None) -> dict[int, int]:
    """Multi-source BFS distances, optionally truncated at ``limit``."""
    dist: dict[int, int] = {}
    q: deque[int] = deque()
    for s in sources:
        if s not in dist:
            dist[s] = 0
            q.append(s)
    adj = g.adj
    while q:
        u = q.popleft()
        du = dist[u]
        if limit is not None and du >= limit:
            continue
        for w in adj[u]:
            if w not in dist and (allowed is None or w in allowed):
                dist[w] = du + 1
                q.append(w)
    return dist


@dataclass(frozen=True)
class Layering:
    """BFS layering ``L_0..L_m``; ``layer_of[v]`` is the index of v's layer."""

    layers: tuple[tuple[int, ...], ...]
    layer_of: dict[int, int]

    @property
    def depth(self) -> int:
        return len(self.layers) - 1

    def precedes(self, v: int, w: int) -> bool:
        """The strict layer order: v's layer comes before w's."""
        return self.layer_of[v] < self.layer_of[w]


def bfs_layering(g: Graph, roots: Iterable[int], vertices: Iterable[int] | None = None) -> Layering:
    """Generalized BFS layering of ``g`` (or of ``g[vertices]``) from ``roots``."""
    roots = list(dict.fromkeys(roots))
    if not roots:
        raise EmptyRoots("root set is empty")
    allowed = None if vertices is None else set(vertices)
    for r in roots:
        if not 0 <= r < g.n or (allowed is not None and r not in allowed):
            raise UnknownVertex(r)
    dist = distances_from(g, roots, allowed=allowed)
    universe = range(g.n) if allowed is None else allowed
    for v in universe:
        if v not in dist:
            raise UnreachableVertex(v)
    depth = max(dist.values())
    buckets: list[list[int]] = [[] for _ in range(depth + 1)]
    for v, d in dist.items():
        buckets[d].append(v)
    return Layering(tuple(tuple(sorted(b)) for b in buckets), dist)


def graph_power(g: Graph, k: int) -> Graph:
    if k < 1:
        raise GraphError("power must be at least 1")
    if k == 1:
        return g
    edges = set()
    for u in range(g.n):
        for w, d in distances_from(g, [u], limit=k).items():
            if u < w and d >= 1:
                edges.add((u, w))
    return Graph(g.n, tuple(sorted(edges)))


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, list[int]]:
    """``g[s]`` relabelled to ``0..|s|-1``; returns the graph and the list new->old."""
    old = sorted(set(s))
    for v in old:
        if not 0 <= v < g.n:
            raise UnknownVertex(v)
    index = {v: i for i, v in enumerate(old)}
    edges = []
    for u, v in g.edges:
        if u in index and v in index:
            edges.append((index[u], index[v]))
    labels = None if g.labels is None else tuple(g.labels[v] for v in old)
    return Graph(len(old), tuple(edges), labels=labels), old


@dataclass(frozen=True)
class ProductGraph:
    """A strong product together with its coordinate system.

    Vertex ``v`` has coordinates given by mixed radix over ``sizes`` with the
    first factor most significant.
    """

    graph: Graph
    sizes: tuple[int, ...]

    def coords(self, v: int) -> tuple[int, ...]:
        out = []
        for size in reversed(self.sizes):
            v, r = divmod(v, size)
            out.append(r)
        return tuple(reversed(out))

    def index(self, coords: Sequence[int]) -> int:
        if len(coords) != len(self.sizes):
            raise GraphError("arity mismatch")
        v = 0
        for c, size in zip(coords, self.sizes):
            if not 0 <= c < size:
                raise UnknownVertex(tuple(coords))
            v = v * size + c
        return v


def strong_product(factors: Sequence[Graph]) -> ProductGraph:
    if len(factors) < 2:
        raise GraphError("strong product needs at least two factors")
    if any(f.n == 0 for f in factors):
        raise EmptyFactor("every factor must have a vertex")
    sizes = tuple(f.n for f in factors)
    # closed neighbourhoods per factor
    closed = [[(v,) + f.adj[v] for v in range(f.n)] for f in factors]
    total = 1
    for s in sizes:
        total *= s
    pg = ProductGraph(Graph(0), sizes)
    edges = []
    for v in range(total):
        cv = pg.coords(v)
        for cw in itertools.product(*(closed[i][c] for i, c in enumerate(cv))):
            w = pg.index(cw)
            if v < w:
                edges.append((v, w))
    edges.sort()
    return ProductGraph(Graph(total, tuple(edges)), sizes)
