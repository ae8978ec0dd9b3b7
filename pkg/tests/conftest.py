import itertools
import random

import pytest

from lrank.graph import Graph


def simple_paths(g: Graph, max_len: int):
    """Every simple path with 1..max_len edges, each listed once per direction."""
    adj = g.adj

    def extend(path, on):
        yield list(path)
        if len(path) - 1 == max_len:
            return
        for w in adj[path[-1]]:
            if w not in on:
                path.append(w)
                on.add(w)
                yield from extend(path, on)
                path.pop()
                on.discard(w)

    for u in range(g.n):
        for p in extend([u], {u}):
            if len(p) > 1:
                yield p


def induced_paths(g: Graph, max_len: int):
    """Simple paths with no chords."""
    es = g.adj_sets
    for p in simple_paths(g, max_len):
        if all(p[j] not in es[p[i]] for i in range(len(p)) for j in range(i + 2, len(p))):
            yield p


def brute_chi(g: Graph, ell: int) -> int:
    """Smallest k admitting an ℓ-ranking, by trying every colouring."""
    from lrank.verify import verify_ranking_oracle
    for k in range(1, g.n + 1):
        for cols in itertools.product(range(1, k + 1), repeat=g.n):
            if verify_ranking_oracle(g, list(cols), ell) is None:
                return k
    return 0


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p])


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
