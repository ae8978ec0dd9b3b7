"""Rankings of strong products and of graphs carrying a product certificate."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..decomposition import RootedTreeDecomposition, require_valid
from ..errors import InvalidCertificate, MismatchedEll, VerificationFailed
from ..graph import Graph, complete_graph, distances_from, induced_subgraph, path_graph, strong_product
from ..verify import Ranking, verify_ranking
from .ttree import rank_simple_ttree


@dataclass(frozen=True)
class DistanceColouring:
    """Values ``1..num_values`` such that vertices within distance ell differ."""

    values: tuple[int, ...]
    ell: int
    num_values: int

    @property
    def zero_based(self) -> tuple[int, ...]:
        return tuple(v - 1 for v in self.values)


def distance_colour_clique_path(m: int, path_len: int, ell: int) -> DistanceColouring:
    """psi((a, i)) = m * (i mod (ell+1)) + a + 1 on K_m ⊠ P (index a * path_len + i)."""
    if m < 1 or path_len < 1:
        raise ValueError("need m >= 1 and path_len >= 1")
    vals = tuple(m * (i % (ell + 1)) + a + 1 for a in range(m) for i in range(path_len))
    return DistanceColouring(vals, ell, m * (ell + 1))


def is_distance_colouring(g: Graph, values: Sequence[int], ell: int) -> bool:
    """Brute-force check: distinct values at every pair within distance ell."""
    for u in range(g.n):
        dist = distances_from(g, [u], limit=ell)
        for w in dist:
            if w != u and values[w] == values[u]:
                return False
    return True


def rank_product(rho: Ranking, psi: DistanceColouring) -> Ranking:
    """phi(x, y) = chi_bar * rho(x) - psi0(y) on G1 ⊠ G2 (index x * |G2| + y)."""
    if rho.ell != psi.ell:
        raise MismatchedEll(f"ranking has ell={rho.ell}, distance colouring has ell={psi.ell}")
    chi = psi.num_values
    zb = psi.zero_based
    colors = tuple(chi * r - p for r in rho.colors for p in zb)
    return Ranking(colors, rho.ell, {"algorithm": "product", "chi_bar": chi})


@dataclass(frozen=True)
class ProductCertificate:
    """Embedding of a target graph into H ⊠ K_m ⊠ P.

    ``embedding[v] = (h, c, p)``.  When ``apex`` is set, ``decomposition``
    covers H minus the apex (bags use host vertex ids).
    """

    host: Graph
    decomposition: RootedTreeDecomposition
    clique_size: int
    path_length: int
    apex: int | None = None
    embedding: tuple[tuple[int, int, int], ...] = field(default=())

    def host_minus_apex(self) -> tuple[Graph, list[int], RootedTreeDecomposition]:
        keep = [v for v in range(self.host.n) if v != self.apex]
        sub, old = induced_subgraph(self.host, keep)
        new = {v: i for i, v in enumerate(old)}
        if self.apex is not None and any(self.apex in b for b in self.decomposition.bags):
            raise InvalidCertificate(self.apex, "apex must not occur in the decomposition")
        bags = tuple(frozenset(new[v] for v in b) for b in self.decomposition.bags)
        d = RootedTreeDecomposition(self.decomposition.parent, bags, self.decomposition.root)
        return sub, old, d

    def validate(self, target: Graph) -> None:
        if len(self.embedding) != target.n:
            raise InvalidCertificate(None, f"embedding has {len(self.embedding)} entries for {target.n} vertices")
        if len(set(self.embedding)) != len(self.embedding):
            raise InvalidCertificate(None, "embedding is not injective")
        for v, (h, c, p) in enumerate(self.embedding):
            if not (0 <= h < self.host.n and 0 <= c < self.clique_size and 0 <= p < self.path_length):
                raise InvalidCertificate(v, "vertex maps outside the product")
        if self.apex is not None and not 0 <= self.apex < self.host.n:
            raise InvalidCertificate(self.apex, "apex is not a host vertex")
        hadj = self.host.adj_sets
        for u, v in target.edges:
            hu, cu, pu = self.embedding[u]
            hv, cv, pv = self.embedding[v]
            if not (hu == hv or hv in hadj[hu]) or abs(pu - pv) > 1:
                raise InvalidCertificate((u, v))


def full_product_certificate(host: Graph, d: RootedTreeDecomposition, m: int, path_len: int,
                             apex: int | None = None) -> tuple[ProductCertificate, Graph]:
    """Certificate for the whole product H ⊠ K_m ⊠ P, and that product."""
    pg = strong_product([host, complete_graph(m), path_graph(path_len)])
    emb = tuple(pg.coords(v) for v in range(pg.graph.n))
    return ProductCertificate(host, d, m, path_len, apex, emb), pg.graph


def rank_certificate(cert: ProductCertificate, target: Graph, ell: int,
                     verify: bool = True) -> Ranking:
    """Rank H (apex last), combine with the K_m ⊠ P distance colouring, restrict."""
    cert.validate(target)
    sub, old, d = cert.host_minus_apex()
    require_valid(sub, d)
    rho_sub = rank_simple_ttree(sub, d, ell, verify=verify)
    rho = [0] * cert.host.n
    for i, v in enumerate(old):
        rho[v] = rho_sub.colors[i]
    host_max = rho_sub.max_color
    if cert.apex is not None:
        rho[cert.apex] = host_max + 1
    psi = distance_colour_clique_path(cert.clique_size, cert.path_length, ell)
    chi = psi.num_values
    zb = psi.zero_based
    colors = tuple(chi * rho[h] - zb[c * cert.path_length + p] for h, c, p in cert.embedding)
    r = Ranking(colors, ell, {
        "algorithm": "certificate",
        "host_colors": max(rho, default=0),
        "host_max_without_apex": host_max,
        "chi_bar": chi,
        "bound": chi * max(rho, default=0),
        "host_meta": rho_sub.meta,
    })
    if verify:
        bad = verify_ranking(target, r)
        if bad is not None:
            raise VerificationFailed(bad)
    return r
