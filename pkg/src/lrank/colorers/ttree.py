"""Rankings of graphs with a t-simple tree decomposition.

The colouring works in blocks of ``ell + 1`` BFS layers.  Inside a block,
a weighted separator picks a small ancestor-closed subtree ``T'`` of the
decomposition; each BFS layer of the part covered by ``T'`` is coloured
through its skeleton (ranked recursively one level of ``t`` down) and the
remaining light pieces recurse with a smaller colour band.  Vertices of the
block's last layer that carry too much weight below them are lifted into a
top band of fresh colours.  Blocks hanging below the last layer are handled
recursively with their attachment vertices as the new root bag.

Band positions are real numbers ``a * (k - c - 1)`` where ``k`` bounds the
colour count and ``c`` shrinks the band as the recursion descends.  ``a`` is
adaptive: it starts at ``(ell + 2) * (t + 2)`` and doubles whenever a band
runs out of room, restarting the colouring.  Raw colours may go below one;
the final colouring is compressed order-preservingly.
"""

from __future__ import annotations

import math
import sys
from collections import defaultdict
from dataclasses import dataclass, field

from ..decomposition import RootedTreeDecomposition, make_edge_maximal, require_valid
from ..errors import BandOverflow, VerificationFailed
from ..graph import Graph, connected_components
from ..numerics import gamma, least_k, log_power, slack, solve_k, tower, weight_budget
from ..verify import Ranking, compress_colors, verify_ranking
from .paths import peel_colors, ruler_colors
from .skeleton import skeleton_vertices, tree_anchors, tree_chains, tree_residual_paths

MAX_RESTARTS = 12
VROOT = -1  # id of the virtual root node of a sub-decomposition


def initial_a(t: int, ell: int) -> int:
    return (ell + 2) * (t + 2)


@dataclass
class BandLedger:
    """Per-run bookkeeping of band placement."""

    technical_calls: int = 0
    slack_calls: int = 0
    # (top band floor, largest block-interior colour) for each block
    blocks: list[tuple[int, int]] = field(default_factory=list)
    root_adjustments: int = 0
    fallbacks: int = 0
    inner_restarts: int = 0
    inner_runs: int = 0

    def interleavings(self) -> int:
        return sum(1 for floor_, interior in self.blocks if interior > floor_)


class _Sub:
    """A connected vertex set with the part of the global tree meeting it.

    The tree is the global tree restricted to ``nodes`` plus a virtual root
    whose bag is ``root_bag``; the virtual root is the parent of the topmost
    node.
    """

    __slots__ = ("verts", "nodes", "nodeset", "root_bag")

    def __init__(self, verts: set[int], nodes: list[int], root_bag: frozenset[int]):
        self.verts = verts
        self.nodes = nodes
        self.nodeset = set(nodes)
        self.root_bag = root_bag


class _Context:
    """Shared read-only data: the edge-maximal graph and its decomposition."""

    def __init__(self, h: Graph, d: RootedTreeDecomposition, ell: int, ledger: BandLedger):
        self.adj = h.adj
        self.bags = d.bags
        self.gparent = d.parent
        self.pos = [0] * len(d.bags)
        for i, x in enumerate(d.order):
            self.pos[x] = i
        self.occ = d.occurrences
        self.ell = ell
        self.ledger = ledger

    # -- sub-decompositions ------------------------------------------------
    def sub(self, verts: set[int], within: _Sub | None = None,
            root_bag: frozenset[int] | None = None, through: set[int] | None = None) -> _Sub:
        """Nodes meeting ``through`` (default ``verts``), optionally inside ``within``."""
        occ = self.occ
        nodes: set[int] = set()
        for v in (verts if through is None else through):
            nodes.update(occ[v])
        if within is not None:
            nodes &= within.nodeset
        order = sorted(nodes, key=self.pos.__getitem__)
        if root_bag is None:
            root_bag = self.bags[order[0]] & verts if order else frozenset(verts)
        return _Sub(verts, order, frozenset(root_bag))

    def parent_in(self, sub: _Sub, x: int) -> int:
        p = self.gparent[x]
        return p if p in sub.nodeset else VROOT

    def bag_in(self, sub: _Sub, x: int) -> frozenset[int]:
        if x == VROOT:
            return sub.root_bag
        return self.bags[x] & sub.verts

    # -- graph helpers ----------------------------------------------------
    def layers_from(self, roots, verts: set[int]) -> list[list[int]]:
        adj = self.adj
        seen = set(roots)
        layers = [sorted(seen)]
        frontier = layers[0]
        while frontier:
            nxt = []
            for u in frontier:
                for w in adj[u]:
                    if w in verts and w not in seen:
                        seen.add(w)
                        nxt.append(w)
            if not nxt:
                break
            layers.append(nxt)
            frontier = nxt
        return layers

    def components(self, verts: set[int]) -> list[list[int]]:
        adj = self.adj
        seen: set[int] = set()
        out = []
        for s in sorted(verts):
            if s in seen:
                continue
            seen.add(s)
            comp = [s]
            stack = [s]
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if w in verts and w not in seen:
                        seen.add(w)
                        comp.append(w)
                        stack.append(w)
            out.append(comp)
        return out


# ---------------------------------------------------------------------------
# level t <= 1: paths, with a separator fallback for anything else


def _path_order(ctx: _Context, verts: set[int]) -> list[int] | None:
    adj = ctx.adj
    deg = {v: sum(1 for w in adj[v] if w in verts) for v in verts}
    if any(d > 2 for d in deg.values()):
        return None
    if sum(deg.values()) != 2 * (len(verts) - 1):
        return None
    start = min((v for v in verts if deg[v] <= 1), default=None)
    if start is None:
        return None
    order = [start]
    prev = -1
    cur = start
    while True:
        nxt = [w for w in adj[cur] if w in verts and w != prev]
        if not nxt:
            break
        prev, cur = cur, nxt[0]
        order.append(cur)
    return order if len(order) == len(verts) else None


def _separator_rank(ctx: _Context, sub: _Sub) -> dict[int, int]:
    """Distinct top colours on a centroid bag, recursing on what is left."""
    verts = sub.verts
    if len(verts) <= 1:
        return {v: 1 for v in verts}
    top: dict[int, int] = {v: VROOT for v in sub.root_bag}
    for x in sub.nodes:
        for v in ctx.bags[x]:
            if v in verts and v not in top:
                top[v] = x
    acc: dict[int, float] = defaultdict(float)
    for v, x in top.items():
        acc[x] += 1
    half = len(verts) / 2
    cut = VROOT
    for x in reversed(sub.nodes):
        if acc[x] > half:
            cut = x
            break
        acc[ctx.parent_in(sub, x)] += acc[x]
    sep = ctx.bag_in(sub, cut)
    rest = verts - sep
    colors: dict[int, int] = {}
    for comp in ctx.components(rest):
        cs = set(comp)
        colors.update(_separator_rank(ctx, ctx.sub(cs, within=sub)))
    base = max(colors.values(), default=0)
    for i, v in enumerate(sorted(sep)):
        colors[v] = base + 1 + i
    return colors


def _rank_level_one(ctx: _Context, sub: _Sub) -> dict[int, int]:
    order = _path_order(ctx, sub.verts)
    if order is not None:
        return dict(zip(order, ruler_colors(len(order), ctx.ell)))
    ctx.ledger.fallbacks += 1
    return _separator_rank(ctx, sub)


# ---------------------------------------------------------------------------
# level t >= 2


class _Run:
    """One attempt at colouring with fixed ``t``, ``k`` and ``a``."""

    def __init__(self, ctx: _Context, t: int, k: float, a: int):
        self.ctx = ctx
        self.t = t
        self.k = k
        self.a = a
        self.ell = ctx.ell
        self.c_min = tower(t - 1)
        self.log_top = log_power(t - 2, k)

    def band(self, c: float) -> int:
        return math.floor(self.a * (self.k - c - 1))

    def gamma(self, n: float) -> float:
        n = max(1.0, float(n))
        if math.log(n) >= self.log_top:
            return tower(self.t - 2)
        return gamma(self.t - 2, self.k, n)

    # -- block step --------------------------------------------------------
    def technical(self, sub: _Sub, root_colors: dict[int, int], c: float,
                  colors: dict[int, int]) -> None:
        ctx, t, ell = self.ctx, self.t, self.ell
        ctx.ledger.technical_calls += 1
        verts = sub.verts
        layers = ctx.layers_from(sub.root_bag, verts)
        h0: set[int] = set()
        for layer in layers[: ell + 2]:
            h0.update(layer)
        deep = verts - h0
        last = set(layers[ell + 1]) if len(layers) > ell + 1 else set()
        adj = ctx.adj
        comps = ctx.components(deep) if deep else []
        attach: list[set[int]] = []
        kappa: dict[int, float] = {v: float(t) for v in last}
        for comp in comps:
            cx = {w for u in comp for w in adj[u] if w in last}
            attach.append(cx)
            for v in cx:
                kappa[v] += len(comp)

        s = slack(t, c)
        n0 = weight_budget(t, self.k, c + s)
        weights = {v: 1.0 for v in h0}
        for v in last:
            weights[v] = max(1.0, min(n0, kappa[v]))
        sub0 = ctx.sub(h0, within=sub, root_bag=sub.root_bag)
        self.slack(sub0, weights, c, colors)

        floor_ = self.band(c)
        interior = max((colors[v] for v in h0 if v not in sub.root_bag), default=floor_)
        for v, col in root_colors.items():
            colors[v] = col
        used = set(root_colors.values())
        dangerous = sorted(v for v in last if kappa[v] > n0)
        nxt = floor_ + 1
        for v in dangerous:
            while nxt in used:
                nxt += 1
            colors[v] = nxt
            used.add(nxt)
            nxt += 1
        ceiling = math.floor(self.a * self.k)
        if dangerous and nxt - 1 > ceiling:
            raise BandOverflow("dangerous vertices", nxt - 1 - floor_, ceiling - floor_)
        ctx.ledger.blocks.append((floor_, interior))

        for comp, cx in zip(comps, attach):
            xs = set(comp)
            child_roots = {v: colors[v] for v in cx}
            cX = max(self.c_min, self.gamma(len(xs) + len(cx)))
            m0 = min(child_roots.values())
            if self.band(cX) >= m0:
                ctx.ledger.root_adjustments += 1
                cX = max(cX, self.k - 1 - m0 / self.a + 1e-9)
                while self.band(cX) >= m0:
                    cX += 1e-6
            child = ctx.sub(xs | cx, within=sub, root_bag=frozenset(cx), through=xs)
            self.technical(child, child_roots, cX, colors)

    # -- slack step --------------------------------------------------------
    def slack(self, sub: _Sub, weights: dict[int, float], c: float,
              colors: dict[int, int]) -> None:
        ctx, t, ell = self.ctx, self.t, self.ell
        ctx.ledger.slack_calls += 1
        verts = sub.verts
        s = slack(t, c)
        c1 = c + s
        threshold = weight_budget(t, self.k, c1 + slack(t, c1))

        # charge every vertex to its top node and sweep bottom-up
        top: dict[int, int] = {v: VROOT for v in sub.root_bag}
        for x in sub.nodes:
            for v in ctx.bags[x]:
                if v in verts and v not in top:
                    top[v] = x
        acc: dict[int, float] = defaultdict(float)
        for v, x in top.items():
            acc[x] += weights[v]
        selected = [VROOT]
        for x in reversed(sub.nodes):
            if acc[x] > threshold:
                selected.append(x)
            else:
                acc[ctx.parent_in(sub, x)] += acc[x]
        tprime: set[int] = set()
        for x in selected:
            while x not in tprime:
                tprime.add(x)
                if x == VROOT:
                    break
                x = ctx.parent_in(sub, x)
        order = [VROOT] + [x for x in sub.nodes if x in tprime]
        parent = {x: ctx.parent_in(sub, x) for x in order if x != VROOT}
        children: dict[int, list[int]] = defaultdict(list)
        for x in order[1:]:
            children[parent[x]].append(x)
        vprime: set[int] = set(sub.root_bag)
        for x in order[1:]:
            vprime |= ctx.bags[x] & verts

        # colour H' layer by layer, layer 0 on top
        layers = ctx.layers_from(sub.root_bag, verts)
        anchors = tree_anchors(VROOT, children, order)
        chains = tree_chains(children, anchors)
        paths = tree_residual_paths(VROOT, parent, children, order, anchors)
        cur = self.band(c)
        for i, layer in enumerate(layers):
            li = set(layer) & vprime
            if not li:
                continue
            if i == 0:
                local = {v: j + 1 for j, v in enumerate(sorted(li))}
            else:
                local = self._color_layer(sub, li, anchors, chains, paths)
            q = max(local.values())
            for v, col in local.items():
                colors[v] = cur - q + col
            cur -= q
        bottom = self.band(c1)
        if cur < bottom:
            raise BandOverflow("slack layers", self.band(c) - cur, self.band(c) - bottom)

        rest = verts - vprime
        for comp in ctx.components(rest) if rest else []:
            xs = set(comp)
            child = ctx.sub(xs, within=sub)
            self.slack(child, weights, c1, colors)

    def _color_layer(self, sub: _Sub, li: set[int], anchors, chains, paths) -> dict[int, int]:
        ctx, ell = self.ctx, self.ell
        bags = ctx.bags

        def bag(x: int) -> frozenset[int]:
            if x == VROOT:
                return sub.root_bag & li
            return bags[x] & li

        skel, _ = skeleton_vertices(anchors, chains, bag, ell)
        residual = [bag(x) - skel for path in paths for x in path]
        local = dict(peel_colors(residual, ell))
        low = max(local.values(), default=0)
        for comp in ctx.components(skel):
            w = set(comp)
            ranked = rank_level(ctx, ctx.sub(w, within=sub), self.t - 1)
            for v, col in ranked.items():
                local[v] = low + col
        return local


def top_level_k(t: int, n: int) -> float:
    """Least k with n <= (log^(t-2) k)^k / (log^(t-2) c0)^c0 for c0 = τ(t-1)."""
    c0 = tower(t - 1)
    return least_k(t, math.log(max(n, 1)) + log_power(t - 2, c0))


def _attempts(ctx: _Context, subs: list[_Sub], t: int, a: int | None = None
              ) -> tuple[dict[int, int], float, int, int]:
    """Colour every sub with shared k and a; double a on overflow."""
    n = sum(len(s.verts) for s in subs)
    k = top_level_k(t, n)
    a = initial_a(t, ctx.ell) if a is None else a
    c0 = tower(t - 1)
    restarts = 0
    while True:
        run = _Run(ctx, t, k, a)
        colors: dict[int, int] = {}
        try:
            base = run.band(c0)
            for sub in subs:
                roots = {v: base + 1 + i for i, v in enumerate(sorted(sub.root_bag))}
                run.technical(sub, roots, c0, colors)
            return colors, k, a, restarts
        except BandOverflow:
            if restarts >= MAX_RESTARTS:
                raise
            restarts += 1
            a *= 2


def rank_level(ctx: _Context, sub: _Sub, t: int) -> dict[int, int]:
    """Compressed ranking of ``sub`` at width parameter ``t``."""
    if t <= 1:
        return _rank_level_one(ctx, sub)
    ctx.ledger.inner_runs += 1
    colors, _, _, restarts = _attempts(ctx, [sub], t)
    ctx.ledger.inner_restarts += restarts
    order = list(colors)
    return dict(zip(order, compress_colors([colors[v] for v in order])))


def rank_simple_ttree(h: Graph, d: RootedTreeDecomposition, ell: int, t: int | None = None,
                      verify: bool = True, check: bool = True) -> Ranking:
    """ℓ-ranking of a graph with a t-simple tree decomposition.

    ``meta`` reports the realized ``a``, the ``k`` used for band placement,
    ``solve_k(t, n)``, the number of restarts and the band ledger.
    """
    if check:
        require_valid(h, d)
    if t is None:
        t = max(d.width, 1)
    em = make_edge_maximal(h, d, check=False)
    ledger = BandLedger()
    ctx = _Context(em, d, ell, ledger)
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 100000))
    try:
        comps = [set(c) for c in connected_components(em)]
        covered = set(ctx.occ)
        subs = []
        loose = []
        for comp in comps:
            if comp <= covered:
                subs.append(ctx.sub(comp))
            else:
                loose.extend(comp)  # vertices in no bag: isolated
        meta: dict = {"algorithm": "simple-ttree", "t": t, "n": h.n}
        if t <= 1:
            colors: dict[int, int] = {}
            for sub in subs:
                colors.update(_rank_level_one(ctx, sub))
            k, a, restarts = 2.0, initial_a(1, ell), 0
            meta["solve_k"] = 2.0
        else:
            colors, k, a, restarts = _attempts(ctx, subs, t)
            meta["solve_k"] = solve_k(t, max(h.n, 1)).k
        for v in loose:
            colors[v] = min(colors.values(), default=1)
    finally:
        sys.setrecursionlimit(old_limit)
    raw = [colors.get(v, 1) for v in range(h.n)]
    final = compress_colors(raw) if raw else []
    meta.update({
        "k": k, "a": a, "restarts": restarts,
        "raw_min": min(raw, default=0), "raw_max": max(raw, default=0),
        "ledger": ledger,
    })
    r = Ranking(tuple(final), ell, meta)
    if verify:
        bad = verify_ranking(em, r)
        if bad is not None:
            raise VerificationFailed(bad)
    return r
