"""Skeletons of tree decompositions and colouring around them."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from ..decomposition import RootedTreeDecomposition, is_edge_maximal
from ..errors import BandCollision, NotEdgeMaximal, VerificationFailed
from ..graph import Graph, induced_subgraph
from ..verify import Ranking, verify_ranking
from .paths import GuardSet, guard_set_bags, peel_colors


@dataclass(frozen=True)
class Skeleton:
    vertices: frozenset[int]
    anchors: frozenset[int]  # branching nodes (or the two path ends)
    guards: dict[tuple[int, int], GuardSet] = field(default_factory=dict, compare=False)

    def __len__(self) -> int:
        return len(self.vertices)

    def subgraph(self, h: Graph) -> tuple[Graph, list[int]]:
        return induced_subgraph(h, self.vertices)


def tree_anchors(root, children: Mapping, order: Sequence) -> set:
    """Branching nodes, or the root and the last node when the tree is a path."""
    lam = {x for x in order if len(children.get(x, ())) >= 2}
    if lam or len(order) <= 1:
        return lam or set(order)
    return {root, order[-1]}


def tree_chains(children: Mapping, anchors: set) -> list[list]:
    """Node sequences between consecutive anchors (no anchor in the interior)."""
    chains = []
    for x in anchors:
        for c in children.get(x, ()):
            chain = [x, c]
            y = c
            while y not in anchors and len(children.get(y, ())) == 1:
                y = children[y][0]
                chain.append(y)
            if y in anchors:
                chains.append(chain)
    return chains


def tree_residual_paths(root, parent: Mapping, children: Mapping, order: Sequence,
                        anchors: set) -> list[list]:
    """The paths of the tree minus the anchors, each listed top-down."""
    paths = []
    for x in order:
        if x in anchors:
            continue
        p = parent.get(x, None)
        if p is not None and p not in anchors:
            continue
        path = [x]
        y = x
        while True:
            nxt = [z for z in children.get(y, ()) if z not in anchors]
            if not nxt:
                break
            y = nxt[0]
            path.append(y)
        paths.append(path)
    return paths


def skeleton_vertices(anchors, chains, bag: Callable, ell: int
                      ) -> tuple[set[int], dict[tuple, GuardSet]]:
    verts: set[int] = set()
    for x in anchors:
        verts |= bag(x)
    guards = {}
    for chain in chains:
        gs = guard_set_bags([bag(z) for z in chain], ell)
        guards[(chain[0], chain[-1])] = gs
        verts |= gs.vertices
    return verts, guards


def _tree_of(d: RootedTreeDecomposition):
    parent = {x: p for x, p in enumerate(d.parent) if p >= 0}
    children = {x: list(c) for x, c in enumerate(d.children)}
    return parent, children, list(d.order)


def skeleton_anchors(d: RootedTreeDecomposition) -> set[int]:
    if len(d.bags) <= 1:
        return set(range(len(d.bags)))
    _, children, order = _tree_of(d)
    return tree_anchors(d.root, children, order)


def skeleton_of(d: RootedTreeDecomposition, ell: int) -> Skeleton:
    """Skeleton computed from the bags alone (graph implied edge-maximal)."""
    if not d.bags:
        return Skeleton(frozenset(), frozenset(), {})
    _, children, order = _tree_of(d)
    anchors = tree_anchors(d.root, children, order)
    chains = tree_chains(children, anchors)
    verts, guards = skeleton_vertices(anchors, chains, lambda x: d.bags[x], ell)
    return Skeleton(frozenset(verts), frozenset(anchors), guards)


def build_skeleton(h: Graph, d: RootedTreeDecomposition, ell: int) -> Skeleton:
    if not is_edge_maximal(h, d):
        raise NotEdgeMaximal("every bag must be a clique")
    return skeleton_of(d, ell)


def residual_path_bags(d: RootedTreeDecomposition, anchors: set[int] | frozenset[int],
                       removed: set[int] | frozenset[int]) -> list[frozenset[int]]:
    """Bags of T minus the anchors, concatenated path by path, minus ``removed``."""
    if not d.bags:
        return []
    parent, children, order = _tree_of(d)
    paths = tree_residual_paths(d.root, parent, children, order, set(anchors))
    return [d.bags[x] - removed for path in paths for x in path]


def color_around_skeleton(d: RootedTreeDecomposition, ell: int, skeleton: Skeleton,
                          skeleton_colors: Mapping[int, int]) -> tuple[dict[int, int], int]:
    """Low band by peeling the residual paths; skeleton shifted above it.

    Returns the colouring and the size of the low band actually used.
    """
    bags = residual_path_bags(d, skeleton.anchors, skeleton.vertices)
    low = peel_colors(bags, ell)
    shift = max(low.values(), default=0)
    colors = dict(low)
    for v in skeleton.vertices:
        colors[v] = skeleton_colors[v] + shift
    return colors, shift


def rank_via_skeleton(h: Graph, d: RootedTreeDecomposition, ell: int,
                      skeleton_ranking: Ranking | Mapping[int, int],
                      skeleton: Skeleton | None = None, verify: bool = True) -> Ranking:
    """Extend a ranking of the skeleton (colours above the low band) to all of ``h``.

    ``skeleton_ranking`` is either a mapping vertex -> colour or a Ranking of
    the skeleton's induced subgraph in sorted vertex order.
    """
    if skeleton is None:
        skeleton = build_skeleton(h, d, ell)
    order = sorted(skeleton.vertices)
    if isinstance(skeleton_ranking, Ranking):
        sk = dict(zip(order, skeleton_ranking.colors))
    else:
        sk = dict(skeleton_ranking)
    band = (ell + 1) * max(d.width, 0) + 1
    if skeleton.vertices != frozenset(d.vertices()):
        low_used = [c for v, c in sk.items() if c <= band]
        if low_used:
            raise BandCollision(f"skeleton colours must exceed {band}")
    bags = residual_path_bags(d, skeleton.anchors, skeleton.vertices)
    colors = dict(peel_colors(bags, ell))
    colors.update(sk)
    full = [colors.get(v, 1) for v in range(h.n)]
    r = Ranking(tuple(full), ell, {"algorithm": "skeleton"})
    if verify:
        sub, old = induced_subgraph(h, d.vertices())
        bad = verify_ranking(sub, r.restrict(old))
        if bad is not None:
            raise VerificationFailed(bad)
    return r
