"""Rooted tree decompositions, path decompositions and related utilities."""

from __future__ import annotations

import itertools
import random
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import (
    InvalidDecomposition,
    LayerOutOfRange,
    TooSmall,
    VertexNotInDecomposition,
)
from .graph import Graph, Layering


@dataclass(frozen=True, eq=False)
class RootedTreeDecomposition:
    """Bags indexed by the nodes ``0..N-1`` of a rooted tree.

    ``parent[x]`` is ``-1`` exactly for the root.
    """

    parent: tuple[int, ...]
    bags: tuple[frozenset[int], ...]
    root: int = 0

    def __post_init__(self):
        object.__setattr__(self, "parent", tuple(self.parent))
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in self.bags))
        if len(self.parent) != len(self.bags):
            raise InvalidDecomposition("parent and bag arrays differ in length")
        if self.bags and self.parent[self.root] != -1:
            raise InvalidDecomposition("root must have no parent")

    @classmethod
    def from_edges(cls, bags: Sequence[Iterable[int]], tree_edges: Iterable[tuple[int, int]],
                   root: int = 0) -> "RootedTreeDecomposition":
        """Orient an undirected tree (given by its edges) away from ``root``."""
        nb: list[list[int]] = [[] for _ in bags]
        for x, y in tree_edges:
            nb[x].append(y)
            nb[y].append(x)
        parent = [-2] * len(bags)
        if bags:
            parent[root] = -1
            stack = [root]
            while stack:
                x = stack.pop()
                for y in nb[x]:
                    if parent[y] == -2:
                        parent[y] = x
                        stack.append(y)
                    elif y != parent[x]:
                        raise InvalidDecomposition("decomposition graph contains a cycle")
        if -2 in parent:
            raise InvalidDecomposition("decomposition tree is disconnected")
        return cls(tuple(parent), tuple(frozenset(b) for b in bags), root)

    def __len__(self) -> int:
        return len(self.bags)

    @cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        ch: list[list[int]] = [[] for _ in self.bags]
        for x, p in enumerate(self.parent):
            if p >= 0:
                ch[p].append(x)
        return tuple(tuple(c) for c in ch)

    @cached_property
    def order(self) -> tuple[int, ...]:
        """Nodes in BFS order from the root (parents before children)."""
        if not self.bags:
            return ()
        out = [self.root]
        ch = self.children
        i = 0
        while i < len(out):
            out.extend(ch[out[i]])
            i += 1
        return tuple(out)

    @cached_property
    def depth(self) -> tuple[int, ...]:
        d = [0] * len(self.bags)
        for x in self.order:
            p = self.parent[x]
            if p >= 0:
                d[x] = d[p] + 1
        return tuple(d)

    @cached_property
    def occurrences(self) -> dict[int, list[int]]:
        occ: dict[int, list[int]] = defaultdict(list)
        for x in self.order:
            for v in self.bags[x]:
                occ[v].append(x)
        return dict(occ)

    @cached_property
    def top_node(self) -> dict[int, int]:
        """``x_T(v)`` for every vertex: its bag node of minimum depth."""
        return {v: nodes[0] for v, nodes in self.occurrences.items()}

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def vertices(self) -> set[int]:
        return set(self.occurrences)

    def tree_edges(self) -> list[tuple[int, int]]:
        return [(p, x) for x, p in enumerate(self.parent) if p >= 0]

    def ancestors_closure(self, nodes: Iterable[int]) -> set[int]:
        out: set[int] = set()
        for x in nodes:
            while x >= 0 and x not in out:
                out.add(x)
                x = self.parent[x]
        return out

    def tree_precedes(self, v: int, w: int) -> bool:
        """``v`` strictly precedes ``w`` in the decomposition order."""
        xv, xw = self.top_node[v], self.top_node[w]
        if xv == xw:
            return False
        depth = self.depth
        while depth[xw] > depth[xv]:
            xw = self.parent[xw]
        return xw == xv


@dataclass(frozen=True)
class PathDecomposition:
    bags: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in self.bags))

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def vertices(self) -> set[int]:
        return set().union(*self.bags) if self.bags else set()

    def as_tree(self) -> RootedTreeDecomposition:
        return RootedTreeDecomposition(tuple(range(-1, len(self.bags) - 1)), self.bags, 0)


@dataclass(frozen=True)
class Finding:
    kind: str
    detail: tuple = ()

    def __str__(self) -> str:
        return f"{self.kind}{self.detail}"


@dataclass
class DecompositionReport:
    is_valid: bool
    width: int
    is_simple_for: int | None = None
    violations: list[Finding] = field(default_factory=list)


def _check_tree(d: RootedTreeDecomposition) -> list[Finding]:
    n = len(d.bags)
    if n == 0:
        return []
    roots = [x for x, p in enumerate(d.parent) if p == -1]
    if roots != [d.root]:
        return [Finding("NotATree", ("root count", len(roots)))]
    if len(d.order) != n or any(not -1 <= p < n for p in d.parent):
        return [Finding("NotATree", ("cycle or dangling parent",))]
    return []


def validate_decomposition(g: Graph, d: RootedTreeDecomposition | PathDecomposition,
                           t: int | None = None) -> DecompositionReport:
    """Check a decomposition against ``g``; optionally check it is ``t``-simple.

    Findings are collected rather than raised.
    """
    if isinstance(d, PathDecomposition):
        d = d.as_tree()
    findings = _check_tree(d)
    width = d.width
    if findings:
        return DecompositionReport(False, width, None, findings)
    for x, bag in enumerate(d.bags):
        for v in bag:
            if not 0 <= v < g.n:
                findings.append(Finding("UnknownVertex", (x, v)))
    occ = d.occurrences
    for v in range(g.n):
        nodes = occ.get(v)
        if not nodes:
            findings.append(Finding("VertexUncovered", (v,)))
            continue
        # occurrence set is connected iff exactly one node has its parent outside
        node_set = set(nodes)
        tops = [x for x in nodes if d.parent[x] not in node_set]
        if len(tops) != 1:
            findings.append(Finding("DisconnectedOccurrence", (v, tuple(sorted(tops)))))
    for u, v in g.edges:
        ou, ov = occ.get(u, ()), occ.get(v, ())
        if not ou or not ov or not set(ou).intersection(ov):
            findings.append(Finding("EdgeUncovered", (u, v)))
    simple = None
    if t is not None:
        if width > t:
            findings.append(Finding("WidthExceeds", (width, t)))
        counts: Counter = Counter()
        for bag in d.bags:
            if len(bag) >= t:
                for sub in itertools.combinations(sorted(bag), t):
                    counts[sub] += 1
        bad = [s for s, c in counts.items() if c > 2]
        for s in bad[:20]:
            findings.append(Finding("NotSimple", (s, counts[s])))
        if not bad and width <= t and not findings:
            simple = t
    return DecompositionReport(not findings, width, simple, findings)


def require_valid(g: Graph, d: RootedTreeDecomposition | PathDecomposition) -> None:
    rep = validate_decomposition(g, d)
    if not rep.is_valid:
        raise InvalidDecomposition(
            "decomposition is not valid: " + ", ".join(map(str, rep.violations[:5])),
            rep.violations,
        )


def bag_clique_edges(bags: Iterable[Iterable[int]]) -> set[tuple[int, int]]:
    out = set()
    for bag in bags:
        out.update(itertools.combinations(sorted(bag), 2))
    return out


def make_edge_maximal(g: Graph, d: RootedTreeDecomposition | PathDecomposition,
                      check: bool = True) -> Graph:
    """Add every missing edge inside a bag."""
    if check:
        require_valid(g, d)
    extra = bag_clique_edges(d.bags) - g.edge_set()
    if not extra:
        return g
    return Graph(g.n, g.edges + tuple(sorted(extra)), labels=g.labels)


def is_edge_maximal(g: Graph, d: RootedTreeDecomposition | PathDecomposition) -> bool:
    adj = g.adj_sets
    for bag in d.bags:
        for u, v in itertools.combinations(bag, 2):
            if v not in adj[u]:
                return False
    return True


def min_depth_bag(d: RootedTreeDecomposition, v: int) -> int:
    try:
        return d.top_node[v]
    except KeyError:
        raise VertexNotInDecomposition(v) from None


def branching_nodes(d: RootedTreeDecomposition) -> set[int]:
    return {x for x, ch in enumerate(d.children) if len(ch) >= 2}


def separator_by_threshold(d: RootedTreeDecomposition, weight: Mapping[int, float] | Sequence[float],
                           threshold: float) -> list[int]:
    """Nodes whose bags cut the graph into pieces of weight at most ``threshold``.

    Bottom-up sweep: every vertex is charged to its top node; a node is
    selected as soon as the uncut weight below it exceeds ``threshold``.
    """
    acc = [0.0] * len(d.bags)
    for v, x in d.top_node.items():
        acc[x] += weight[v]
    selected = []
    for x in reversed(d.order):
        if acc[x] > threshold:
            selected.append(x)
        else:
            p = d.parent[x]
            if p >= 0:
                acc[p] += acc[x]
    return selected


def implied_components(d: RootedTreeDecomposition, removed: set[int]) -> list[list[int]]:
    """Components of the edge-maximal completion of ``d`` minus ``removed``."""
    parent: dict[int, int] = {}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for bag in d.bags:
        live = [v for v in bag if v not in removed]
        for v in live:
            parent.setdefault(v, v)
        for v in live[1:]:
            ra, rb = find(live[0]), find(v)
            if ra != rb:
                parent[ra] = rb
    groups: dict[int, list[int]] = defaultdict(list)
    for v in parent:
        groups[find(v)].append(v)
    return [sorted(c) for c in groups.values()]


def weighted_separator(d: RootedTreeDecomposition, w: Mapping[int, float] | Sequence[float],
                       c: int, check: bool = True) -> list[int]:
    """At most ``c`` nodes whose bags leave components of weight <= total/c."""
    if c < 2:
        raise ValueError("c must be at least 2")
    verts = d.vertices()
    total = sum(w[v] for v in verts)
    sep = separator_by_threshold(d, w, total / c)
    if check:
        removed = set().union(*(d.bags[x] for x in sep)) if sep else set()
        assert len(sep) <= c, (sep, c)
        for comp in implied_components(d, removed):
            assert sum(w[v] for v in comp) <= total / c * (1 + 1e-12), comp
    return sep


def layer_restriction(d: RootedTreeDecomposition, layer: Iterable[int]) -> RootedTreeDecomposition:
    keep = set(layer)
    return RootedTreeDecomposition(d.parent, tuple(b & keep for b in d.bags), d.root)


def restrict(d: RootedTreeDecomposition, vertices: Iterable[int],
             occurrences: Mapping[int, Sequence[int]] | None = None
             ) -> tuple[RootedTreeDecomposition, list[int]]:
    """Decomposition of the subgraph induced by ``vertices``.

    Keeps only nodes whose bag meets ``vertices``; this node set is a subtree
    whenever the induced subgraph is connected.  Returns the new
    decomposition and the list mapping new node ids to old ones.
    """
    keep = vertices if isinstance(vertices, (set, frozenset)) else set(vertices)
    occ = d.occurrences if occurrences is None else occurrences
    nodes: set[int] = set()
    for v in keep:
        nodes.update(occ[v])
    depth = d.depth
    old = sorted(nodes, key=lambda x: (depth[x], x))
    index = {x: i for i, x in enumerate(old)}
    parent = []
    roots = 0
    for x in old:
        p = d.parent[x]
        while p >= 0 and p not in index:
            p = d.parent[p]
        if p < 0:
            roots += 1
            parent.append(-1)
        else:
            parent.append(index[p])
    if roots > 1:
        raise InvalidDecomposition("restriction is not connected; split into components first")
    bags = tuple(d.bags[x] & keep for x in old)
    return RootedTreeDecomposition(tuple(parent), bags, 0), old


def rerooted(d: RootedTreeDecomposition, new_root: int) -> RootedTreeDecomposition:
    if new_root == d.root:
        return d
    parent = list(d.parent)
    x, prev = new_root, -1
    while x != -1:
        nxt = parent[x]
        parent[x] = prev
        prev, x = x, nxt
    return RootedTreeDecomposition(tuple(parent), d.bags, new_root)


def with_root_bag(d: RootedTreeDecomposition, root_bag: Iterable[int]) -> RootedTreeDecomposition:
    """Re-root at a node containing ``root_bag`` and hang a new root with exactly that bag."""
    rb = frozenset(root_bag)
    host = None
    for x in d.order:
        if rb <= d.bags[x]:
            host = x
            break
    if host is None:
        raise InvalidDecomposition("no bag contains the requested root set")
    if d.bags[host] == rb:
        return rerooted(d, host)
    r = rerooted(d, host)
    parent = list(r.parent) + [-1]
    parent[host] = len(parent) - 1
    return RootedTreeDecomposition(tuple(parent), r.bags + (rb,), len(parent) - 1)


def components_below(h: Graph, vertices: set[int] | None, lay: Layering, i: int) -> list[list[int]]:
    """Components of ``h[L_{i+1} ∪ ... ∪ L_m]`` (within ``vertices``)."""
    below = [v for layer in lay.layers[i + 1:] for v in layer]
    if vertices is not None:
        below = [v for v in below if v in vertices]
    seen: set[int] = set()
    allowed = set(below)
    comps = []
    adj = h.adj
    for s in below:
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w in allowed and w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        comps.append(comp)
    return comps


def subtree_weights(h: Graph, d: RootedTreeDecomposition, lay: Layering, i: int, t: int,
                    comps: list[list[int]] | None = None) -> dict[int, float]:
    """``kappa_v = t - 1 + |H_v|`` for every v in layer ``i``.

    ``H_v`` is the component containing v of the graph induced by v and all
    deeper layers.
    """
    if not 0 <= i < len(lay.layers):
        raise LayerOutOfRange(f"layer {i} outside 0..{lay.depth}")
    layer = set(lay.layers[i])
    kappa = {v: float(t) for v in layer}
    if comps is None:
        comps = components_below(h, None, lay, i)
    adj = h.adj
    for comp in comps:
        attach = set()
        for u in comp:
            for w in adj[u]:
                if w in layer:
                    attach.add(w)
        for v in attach:
            kappa[v] += len(comp)
    return kappa


def random_simple_ttree(n: int, t: int, seed: int = 0) -> tuple[Graph, RootedTreeDecomposition]:
    """Random edge-maximal graph with a ``t``-simple decomposition of width ``t``.

    Bags are added one at a time; each new bag shares a ``t``-subset (a facet)
    with its parent bag and every facet is used by at most two bags.
    """
    if t < 1:
        raise TooSmall("t must be at least 1")
    if n < t + 1:
        raise TooSmall(f"need at least {t + 1} vertices for t={t}")
    rng = random.Random(seed)
    root = tuple(range(t + 1))
    bags: list[frozenset[int]] = [frozenset(root)]
    parent = [-1]
    edges = list(itertools.combinations(root, 2))
    # facets used by exactly one bag: (facet, host bag)
    open_facets = [(tuple(x for x in root if x != u), 0) for u in root]
    for v in range(t + 1, n):
        j = rng.randrange(len(open_facets))
        facet, host = open_facets[j]
        open_facets[j] = open_facets[-1]
        open_facets.pop()
        node = len(bags)
        bags.append(frozenset(facet + (v,)))
        parent.append(host)
        edges.extend((u, v) for u in facet)
        for drop in facet:
            open_facets.append((tuple(x for x in facet if x != drop) + (v,), node))
    return Graph(n, tuple(edges)), RootedTreeDecomposition(tuple(parent), tuple(bags), 0)


def random_interval_graph(n: int, width: int, seed: int = 0) -> tuple[Graph, PathDecomposition]:
    """Random connected edge-maximal graph with a path decomposition of the given width."""
    rng = random.Random(seed)
    if n < 1:
        raise TooSmall("need at least one vertex")
    bags = []
    current = [0]
    bags.append(frozenset(current))
    for v in range(1, n):
        while len(current) > width or (len(current) > 1 and rng.random() < 0.3):
            current.pop(rng.randrange(len(current)))
            bags.append(frozenset(current))
        current.append(v)
        bags.append(frozenset(current))
    pd = PathDecomposition(tuple(b for b in bags if b))
    g = Graph.from_edges(n, bag_clique_edges(pd.bags))
    return g, pd
