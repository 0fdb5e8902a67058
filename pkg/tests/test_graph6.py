import random
from itertools import combinations

import networkx as nx
import pytest

from gatex.errors import Graph6Error
from gatex.graph import Graph, complete_graph, path_graph
from gatex.graph6 import HEADER, graph6_decode, graph6_encode, read_graph6_lines


def test_small_known_codes():
    assert graph6_encode(Graph(1)) == "@"
    assert graph6_encode(path_graph(4)) == "Ch"
    assert graph6_decode("Ch") == path_graph(4)
    assert graph6_encode(complete_graph(2), header=True) == HEADER + "A_"
    assert graph6_decode(HEADER + "A_") == complete_graph(2)
    assert graph6_decode(b"Ch\n") == path_graph(4)


def test_roundtrip_all_tiny_labeled_graphs():
    for n in range(1, 6):
        pairs = list(combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            g = Graph(n, [p for i, p in enumerate(pairs) if mask >> i & 1])
            assert graph6_decode(graph6_encode(g)) == g


def test_agrees_with_networkx():
    rng = random.Random(3)
    for _ in range(100):
        n = rng.choice([rng.randint(1, 70), rng.randint(60, 130)])
        g = Graph(n, [(a, b) for a, b in combinations(range(n), 2) if rng.random() < 0.3])
        h = nx.Graph()
        h.add_nodes_from(range(n))
        h.add_edges_from(g.edges)
        ours = graph6_encode(g)
        assert ours == nx.to_graph6_bytes(h, header=False).decode().strip()
        assert graph6_decode(ours) == g


@pytest.mark.parametrize("text,offset", [
    ("", 0),            # empty record
    ("C\x7f", 1),       # character out of range
    ("Chh", 2),         # trailing garbage
    ("D", 1),           # truncated data
    ("B@", 1),          # nonzero padding bits
    ("?", 0),           # zero vertices
    ("~?", 2),          # truncated size prefix
    ("~??B", 0),        # long prefix for a size that fits in one byte
])
def test_errors_carry_offsets(text, offset):
    with pytest.raises(Graph6Error) as exc:
        graph6_decode(text)
    assert exc.value.offset == offset


def test_read_lines_skips_blanks():
    got = list(read_graph6_lines(["Ch\n", "\n", "@\n"]))
    assert [k for k, _ in got] == [1, 3]
    assert got[0][1] == path_graph(4)
