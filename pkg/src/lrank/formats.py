"""PACE-style text formats for graphs, decompositions, rankings and certificates.

All vertex, bag, clique and path indices are 1-based on disk.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .colorers.product import ProductCertificate
from .decomposition import RootedTreeDecomposition
from .errors import FormatError
from .graph import Graph
from .verify import Ranking

BEFORE_HEADER = -1


def _lines(text: str) -> list[str]:
    return text.splitlines()


def _ints(parts: Iterable[str], lineno: int) -> list[int]:
    try:
        return [int(x) for x in parts]
    except ValueError:
        raise FormatError(f"line {lineno}: expected integers") from None


# --- graphs -----------------------------------------------------------------

def dumps_graph(g: Graph) -> str:
    """Edges in stored order and orientation; comments at their recorded positions."""
    by_pos: dict[int, list[str]] = {}
    for pos, text in g.comments:
        by_pos.setdefault(pos, []).append(text)
    out = [f"c {c}" if c else "c" for c in by_pos.get(BEFORE_HEADER, [])]
    out.append(f"p tw {g.n} {g.m}")
    for i, (u, v) in enumerate(g.edges):
        out.extend(f"c {c}" if c else "c" for c in by_pos.get(i, []))
        out.append(f"{u + 1} {v + 1}")
    out.extend(f"c {c}" if c else "c" for c in by_pos.get(g.m, []))
    return "\n".join(out) + "\n"


def _comment_text(line: str) -> str:
    return line[2:] if line.startswith("c ") else line[1:]


def loads_graph(text: str) -> Graph:
    n = m = None
    edges: list[tuple[int, int]] = []
    comments: list[tuple[int, str]] = []
    for lineno, line in enumerate(_lines(text), 1):
        if not line.strip():
            continue
        if line[0] == "c":
            comments.append((len(edges) if n is not None else BEFORE_HEADER, _comment_text(line)))
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise FormatError(f"line {lineno}: second header")
            if len(parts) != 4 or parts[1] != "tw":
                raise FormatError(f"line {lineno}: header must be 'p tw <n> <m>'")
            n, m = _ints(parts[2:], lineno)
            continue
        if n is None:
            raise FormatError(f"line {lineno}: edge before header")
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: edge lines have two vertices")
        u, v = _ints(parts, lineno)
        if not (1 <= u <= n and 1 <= v <= n):
            raise FormatError(f"line {lineno}: vertex outside 1..{n}")
        edges.append((u - 1, v - 1))
    if n is None:
        raise FormatError("missing 'p tw' header")
    if len(edges) != m:
        raise FormatError(f"header promises {m} edges, found {len(edges)}")
    return Graph(n, tuple(edges), comments=tuple(comments))


# --- tree decompositions ----------------------------------------------------

def dumps_decomposition(d: RootedTreeDecomposition, n: int | None = None) -> str:
    """Bags renumbered so that the root is bag 1; otherwise node order is kept."""
    nodes = [d.root] + [x for x in range(len(d.bags)) if x != d.root]
    bid = {x: i + 1 for i, x in enumerate(nodes)}
    if n is None:
        n = max((v for b in d.bags for v in b), default=-1) + 1
    maxbag = max((len(b) for b in d.bags), default=0)
    out = [f"s td {len(d.bags)} {maxbag} {n}"]
    for x in nodes:
        out.append(" ".join(["b", str(bid[x])] + [str(v + 1) for v in sorted(d.bags[x])]))
    for x, p in enumerate(d.parent):
        if p >= 0:
            out.append(f"{bid[p]} {bid[x]}")
    return "\n".join(out) + "\n"


def _parse_td(lines: Iterator[tuple[int, str]], root: int = 1) -> tuple[RootedTreeDecomposition, int]:
    header = None
    bags: dict[int, list[int]] = {}
    tree: list[tuple[int, int]] = []
    for lineno, line in lines:
        if not line.strip() or line[0] == "c":
            continue
        parts = line.split()
        if parts[0] == "s":
            if len(parts) != 5 or parts[1] != "td":
                raise FormatError(f"line {lineno}: header must be 's td <bags> <maxbag> <n>'")
            header = _ints(parts[2:], lineno)
        elif header is None:
            raise FormatError(f"line {lineno}: content before 's td' header")
        elif parts[0] == "b":
            ids = _ints(parts[1:], lineno)
            if not ids:
                raise FormatError(f"line {lineno}: bag line without id")
            if not 1 <= ids[0] <= header[0]:
                raise FormatError(f"line {lineno}: bag id outside 1..{header[0]}")
            if any(not 1 <= v <= header[2] for v in ids[1:]):
                raise FormatError(f"line {lineno}: vertex outside 1..{header[2]}")
            bags[ids[0]] = [v - 1 for v in ids[1:]]
        else:
            x, y = _ints(parts, lineno)
            tree.append((x - 1, y - 1))
    if header is None:
        raise FormatError("missing 's td' header")
    nb, _, n = header
    if len(bags) != nb:
        raise FormatError(f"header promises {nb} bags, found {len(bags)}")
    if nb and not 1 <= root <= nb:
        raise FormatError(f"root bag {root} outside 1..{nb}")
    if nb and len(tree) != nb - 1:
        raise FormatError(f"a tree on {nb} bags needs {nb - 1} edges, found {len(tree)}")
    bag_list = [bags[i + 1] for i in range(nb)]
    return RootedTreeDecomposition.from_edges(bag_list, tree, root - 1 if nb else 0), n


def loads_decomposition(text: str, root: int = 1) -> RootedTreeDecomposition:
    return _parse_td(enumerate(_lines(text), 1), root)[0]


# --- rankings ---------------------------------------------------------------

def dumps_ranking(r: Ranking) -> str:
    out = [f"c ell {r.ell}"]
    for key in sorted(r.meta):
        val = r.meta[key]
        if isinstance(val, (int, float, str)) and not isinstance(val, bool):
            out.append(f"c meta {key} {val}")
    out.extend(f"{v + 1} {c}" for v, c in enumerate(r.colors))
    return "\n".join(out) + "\n"


def loads_ranking(text: str, ell: int | None = None) -> Ranking:
    colors: dict[int, int] = {}
    meta: dict = {}
    found_ell = None
    for lineno, line in enumerate(_lines(text), 1):
        if not line.strip():
            continue
        parts = line.split()
        if parts[0] == "c":
            if len(parts) >= 3 and parts[1] == "ell":
                found_ell = _ints(parts[2:3], lineno)[0]
            elif len(parts) >= 4 and parts[1] == "meta":
                meta[parts[2]] = " ".join(parts[3:])
            continue
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: expected '<vertex> <color>'")
        v, c = _ints(parts, lineno)
        if v < 1 or v in colors:
            raise FormatError(f"line {lineno}: bad or repeated vertex {v}")
        colors[v] = c
    if ell is None:
        ell = found_ell
    if ell is None:
        raise FormatError("ranking file does not record ell; pass it explicitly")
    if sorted(colors) != list(range(1, len(colors) + 1)):
        raise FormatError("ranking must colour vertices 1..n")
    return Ranking(tuple(colors[v] for v in range(1, len(colors) + 1)), ell, meta)


# --- product certificates ---------------------------------------------------

def dumps_certificate(cert: ProductCertificate) -> str:
    head = f"cert {len(cert.embedding)} {cert.clique_size} {cert.path_length}"
    if cert.apex is not None:
        head += f" apex {cert.apex + 1}"
    out = [head, dumps_graph(cert.host).rstrip("\n"),
           dumps_decomposition(cert.decomposition, cert.host.n).rstrip("\n")]
    out.extend(f"map {v + 1} {h + 1} {c + 1} {p + 1}" for v, (h, c, p) in enumerate(cert.embedding))
    return "\n".join(out) + "\n"


def loads_certificate(text: str) -> ProductCertificate:
    lines = _lines(text)
    if not lines or not lines[0].startswith("cert"):
        raise FormatError("certificate must start with 'cert'")
    head = lines[0].split()
    if len(head) not in (4, 6) or (len(head) == 6 and head[4] != "apex"):
        raise FormatError("header must be 'cert <n> <m> <path_len> [apex <v>]'")
    n_t, m, plen = _ints(head[1:4], 1)
    apex = _ints(head[5:6], 1)[0] - 1 if len(head) == 6 else None
    td_start = next((i for i, ln in enumerate(lines) if ln.startswith("s ")), None)
    map_start = next((i for i, ln in enumerate(lines) if ln.startswith("map ")), len(lines))
    if td_start is None:
        raise FormatError("certificate lacks a '.td' section")
    host = loads_graph("\n".join(lines[1:td_start]))
    d, _ = _parse_td(((i + 1, lines[i]) for i in range(td_start, map_start)))
    emb: dict[int, tuple[int, int, int]] = {}
    for i in range(map_start, len(lines)):
        parts = lines[i].split()
        if not parts:
            continue
        if parts[0] != "map" or len(parts) != 5:
            raise FormatError(f"line {i + 1}: expected 'map <v> <h> <c> <p>'")
        v, h, c, p = _ints(parts[1:], i + 1)
        emb[v - 1] = (h - 1, c - 1, p - 1)
    if sorted(emb) != list(range(n_t)):
        raise FormatError(f"map lines must cover target vertices 1..{n_t}")
    return ProductCertificate(host, d, m, plen, apex, tuple(emb[v] for v in range(n_t)))


def read_text(path: str) -> str:
    with open(path, encoding="ascii") as fh:
        return fh.read()


def write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)
