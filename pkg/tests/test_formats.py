import pytest

from lrank.colorers.paths import rank_path
from lrank.colorers.product import full_product_certificate
from lrank.decomposition import random_simple_ttree, validate_decomposition
from lrank.errors import FormatError
from lrank.formats import (dumps_certificate, dumps_decomposition, dumps_graph, dumps_ranking,
                           loads_certificate, loads_decomposition, loads_graph, loads_ranking)
from lrank.graph import Graph, path_graph
from lrank.verify import Ranking


def test_graph_roundtrip_bit_exact():
    text = "c generated\np tw 4 3\n1 2\nc between\n3 2\n3 4\nc trailing\n"
    g = loads_graph(text)
    assert g.edges == ((0, 1), (2, 1), (2, 3))
    assert dumps_graph(g) == text


def test_graph_roundtrip_random():
    for seed in range(5):
        g, _ = random_simple_ttree(50, 3, seed)
        text = dumps_graph(g)
        assert loads_graph(text) == g
        assert dumps_graph(loads_graph(text)) == text


@pytest.mark.parametrize("text", [
    "1 2\n",                      # edge before header
    "p tw 2 1\n1 3\n",            # vertex out of range
    "p tw 2 2\n1 2\n",            # edge count mismatch
    "p td 2 1\n1 2\n",            # wrong problem tag
    "p tw 2 1\n1 x\n",            # not an integer
    "",                           # no header
])
def test_graph_format_errors(text):
    with pytest.raises(FormatError):
        loads_graph(text)


def test_decomposition_roundtrip():
    g, d = random_simple_ttree(40, 2, 3)
    text = dumps_decomposition(d, g.n)
    d2 = loads_decomposition(text)
    assert validate_decomposition(g, d2).is_valid
    assert dumps_decomposition(d2, g.n) == text
    assert text.splitlines()[0] == f"s td {len(d.bags)} 3 {g.n}"


def test_decomposition_root_override():
    text = "s td 3 2 3\nb 1 1 2\nb 2 2 3\nb 3 2\n1 2\n2 3\n"
    d = loads_decomposition(text, root=3)
    assert d.bags[d.root] == {1}
    assert loads_decomposition(text).bags[0] == {0, 1}


@pytest.mark.parametrize("text", [
    "b 1 1\n",
    "s td 2 1 2\nb 1 1\nb 2 2\n",                 # missing tree edge
    "s td 1 1 2\nb 1 3\n",                        # vertex out of range
    "s td 2 1 2\nb 1 1\n1 2\n",                   # missing bag
])
def test_decomposition_format_errors(text):
    with pytest.raises(FormatError):
        loads_decomposition(text)


def test_ranking_roundtrip():
    r = rank_path(9, 3)
    text = dumps_ranking(r)
    assert text.startswith("c ell 3\n")
    r2 = loads_ranking(text)
    assert r2.colors == r.colors and r2.ell == 3


def test_ranking_needs_ell():
    with pytest.raises(FormatError):
        loads_ranking("1 1\n2 2\n")
    assert loads_ranking("1 1\n2 2\n", ell=1).colors == (1, 2)


def test_ranking_rejects_gaps():
    with pytest.raises(FormatError):
        loads_ranking("c ell 2\n1 1\n3 1\n")


def test_certificate_roundtrip():
    host, d = random_simple_ttree(8, 2, 1)
    cert, target = full_product_certificate(host, d, 2, 3)
    text = dumps_certificate(cert)
    assert text.startswith(f"cert {target.n} 2 3\n")
    c2 = loads_certificate(text)
    assert c2.embedding == cert.embedding and c2.host == host
    assert dumps_certificate(c2) == text
    c2.validate(target)


def test_certificate_with_apex_roundtrip():
    host = Graph(3, ((0, 2), (1, 2)))
    from lrank.decomposition import RootedTreeDecomposition
    d = RootedTreeDecomposition((-1, 0), (frozenset({0}), frozenset({1})))
    cert, _ = full_product_certificate(host, d, 1, 2, apex=2)
    text = dumps_certificate(cert)
    assert text.splitlines()[0] == "cert 6 1 2 apex 3"
    assert loads_certificate(text).apex == 2
