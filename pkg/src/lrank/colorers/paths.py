"""Paths, path decompositions: ruler rankings, guard sets and peeling."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ..decomposition import PathDecomposition, is_edge_maximal, make_edge_maximal, require_valid
from ..errors import NotEdgeMaximal, VerificationFailed
from ..graph import Graph
from ..verify import Ranking, verify_ranking


def ruler_levels(ell: int) -> int:
    """K = ceil(log2(ell + 1)), computed exactly on integers."""
    return (ell).bit_length() if ell >= 1 else 0


def _nu2(i: int) -> int:
    return (i & -i).bit_length() - 1


def ruler_colors(n: int, ell: int) -> list[int]:
    K = ruler_levels(ell)
    return [min(_nu2(i), K) + 1 for i in range(1, n + 1)]


def rank_path(n: int, ell: int) -> Ranking:
    """Ranking of P_n using at most ceil(log2(ell+1)) + 1 colours."""
    if n < 1 or ell < 1:
        raise ValueError("need n >= 1 and ell >= 1")
    return Ranking(tuple(ruler_colors(n, ell)), ell, {"algorithm": "path"})


def path_color_bound(n: int, ell: int) -> int:
    return min(ruler_levels(ell) + 1, n.bit_length())


def guard_size_bound(t: int, ell: int) -> int:
    """Size bound from the recurrence f(0) = 2, f(t) = ell + 1 + ell * f(t-1)."""
    f = 2
    for _ in range(t):
        f = ell + 1 + ell * f
    return f


def guard_size_closed_form(t: int, ell: int) -> float:
    return (3 * ell ** (t + 1) - ell**t - ell - 1) / (ell - 1)


@dataclass(frozen=True)
class GuardSet:
    vertices: frozenset[int]
    provenance: dict[int, str] = field(default_factory=dict, compare=False)

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v) -> bool:
        return v in self.vertices


def _is_connected(bags: Sequence[frozenset[int]]) -> bool:
    parent: dict[int, int] = {}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for bag in bags:
        it = iter(bag)
        first = next(it, None)
        if first is None:
            continue
        parent.setdefault(first, first)
        for v in it:
            parent.setdefault(v, v)
            ra, rb = find(first), find(v)
            if ra != rb:
                parent[ra] = rb
    return len({find(v) for v in parent}) <= 1


def _guard(bags: list[frozenset[int]], ell: int, depth: int, prov: dict[int, str]) -> set[int]:
    # empty end bags carry no constraint; drop them
    lo, hi = 0, len(bags)
    while lo < hi and not bags[lo]:
        lo += 1
    while hi > lo and not bags[hi - 1]:
        hi -= 1
    bags = bags[lo:hi]
    m = len(bags)
    if m == 0:
        return set()
    first, last = bags[0], bags[-1]
    ends = set(first) | set(last)

    def base() -> set[int]:
        for v in ends:
            prov.setdefault(v, f"endpoint-bag@{depth}")
        return ends

    width = max(len(b) for b in bags) - 1
    # with ell = 1 the only induced paths are edges, which have no interior
    if width <= 0 or ell <= 1 or not _is_connected(bags):
        return base()
    r: dict[int, int] = {}
    for j, bag in enumerate(bags):
        for v in bag:
            r[v] = j

    def best(bag):
        return max(bag, key=lambda v: (r[v], -v))

    path = [best(first)]
    while r[path[-1]] < m - 1:
        u = best(bags[r[path[-1]]])
        if r[u] == r[path[-1]]:
            return base()
        path.append(u)
    p = len(path) - 1
    if p > ell:
        return base()
    # segments run between 0, r(u_0), ..., r(u_{p-1}), m-1; segment i spans
    # the whole occurrence interval of u_i, which is removed from it
    ys = [0] + [r[path[i - 1]] for i in range(1, p + 1)] + [m - 1]
    out = set(path)
    for u in path:
        prov.setdefault(u, f"greedy-path@{depth}")
    for i, (a, b) in enumerate(zip(ys, ys[1:])):
        seg = [bag - {path[i]} for bag in bags[a:b + 1]]
        out |= _guard(seg, ell, depth + 1, prov)
    return out


def guard_set_bags(bags: Sequence[Iterable[int]], ell: int) -> GuardSet:
    """Guard set for the edge-maximal graph implied by a bag sequence."""
    prov: dict[int, str] = {}
    verts = _guard([frozenset(b) for b in bags], ell, 0, prov)
    return GuardSet(frozenset(verts), {v: prov[v] for v in verts})


def guard_set(g: Graph, pd: PathDecomposition, ell: int) -> GuardSet:
    """A small vertex set containing both end bags and closed under short induced paths."""
    if not is_edge_maximal(g, pd):
        raise NotEdgeMaximal("every bag must be a clique")
    return guard_set_bags(pd.bags, ell)


def peel_levels(bags: Sequence[Iterable[int]]) -> tuple[list[list[int]], set[int]]:
    """Repeatedly remove a greedy geodesic meeting every nonempty bag.

    Returns the peeled sequences (first peel first) and the leftover
    vertices, which induce an edgeless graph.
    """
    work = [set(b) for b in bags if b]
    levels: list[list[int]] = []
    while any(len(b) >= 2 for b in work):
        last: dict[int, int] = {}
        for j, bag in enumerate(work):
            for v in bag:
                last[v] = j
        M = len(work)

        def best(bag):
            return max(bag, key=lambda v: (last[v], -v))

        seq: list[int] = []
        j = 0
        while j < M:
            if not work[j]:
                j += 1
                continue
            u = best(work[j])
            seq.append(u)
            while last[u] < M - 1:
                nxt = best(work[last[u]])
                if last[nxt] == last[u]:
                    break
                u = nxt
                seq.append(u)
            j = last[u] + 1
        levels.append(seq)
        gone = set(seq)
        work = [b - gone for b in work]
        work = [b for b in work if b]
    rest = set().union(*work) if work else set()
    return levels, rest


def peel_colors(bags: Sequence[Iterable[int]], ell: int) -> dict[int, int]:
    """Colours ``1..(ell+1)*depth+1`` for the implied edge-maximal graph."""
    levels, rest = peel_levels(bags)
    colors = {v: 1 for v in rest}
    D = len(levels)
    for j, seq in enumerate(levels):
        base = 1 + (ell + 1) * (D - 1 - j) + 1
        for i, v in enumerate(seq):
            colors[v] = base + i % (ell + 1)
    return colors


def rank_pathwidth(g: Graph, pd: PathDecomposition, ell: int, verify: bool = True) -> Ranking:
    """Ranking with at most (ell+1) * width + 1 colours."""
    require_valid(g, pd)
    h = make_edge_maximal(g, pd, check=False)
    colors = peel_colors(pd.bags, ell)
    full = [colors.get(v, 1) for v in range(g.n)]
    r = Ranking(tuple(full), ell, {"algorithm": "pathwidth", "width": pd.width})
    if verify:
        bad = verify_ranking(h, r)
        if bad is not None:
            raise VerificationFailed(bad)
    return r


def pathwidth_color_bound(width: int, ell: int) -> int:
    return (ell + 1) * max(width, 0) + 1
