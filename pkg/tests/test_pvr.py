import random

import pytest

from gatex.cographs import FAT, SLIM, PolarCatDecomposition
from gatex.errors import GraphError, NotGatexError
from gatex.graph import cycle_graph, path_graph
from gatex.modules import build_mdt, is_primitive
from gatex.network import explain, is_quasi_discriminating, random_galled_tree, validate
from gatex.pvr import HYBRID_LABEL, build_elementary, build_pvr, build_pvr_network, side_label

from helpers import gatex_corpus, random_polar_cat_parts


def test_side_labels_alternate():
    assert [side_label(SLIM, i) for i in range(1, 6)] == [1, 0, 1, 0, 1]
    assert [side_label(FAT, i) for i in range(1, 6)] == [0, 1, 0, 1, 0]


def test_elementary_for_p4():
    d = PolarCatDecomposition(1, (0, 1), (2, 3, 1), SLIM)
    net, labels = build_elementary(d)
    assert validate(net) is None
    assert explain(net, labels) == path_graph(4)
    (cyc,) = net.cycles()
    assert labels[cyc.root] == 0 and labels[cyc.hybrid] == HYBRID_LABEL
    # root, three side vertices and the hybrid: a cycle on n + 1 nodes
    assert sum(len(s) for s in cyc.sides) + 2 == 5
    hybrid_kids = net.children[cyc.hybrid]
    assert len(hybrid_kids) == 1 and net.leaf_vertex[hybrid_kids[0]] == 1


def test_elementary_rejects_mismatch():
    d = PolarCatDecomposition(1, (0, 1), (2, 3, 1), SLIM)
    with pytest.raises(GraphError):
        build_elementary(d, graph=cycle_graph(4))
    with pytest.raises(GraphError):
        build_elementary(PolarCatDecomposition(1, (0, 1), (2, 1), SLIM))
    with pytest.raises(GraphError):
        build_elementary(PolarCatDecomposition(1, (0, 2), (2, 3, 1), SLIM))


def test_random_elementary_networks():
    rng = random.Random(2)
    done = 0
    while done < 200:
        n = rng.randint(4, 14)
        d = PolarCatDecomposition(*random_polar_cat_parts(rng, n, rng.choice((SLIM, FAT))))
        g = d.graph()
        if not is_primitive(g):
            continue
        net, labels = build_elementary(d)
        assert validate(net) is None
        assert explain(net, labels) == g
        assert is_quasi_discriminating(net, labels)
        (cyc,) = net.cycles()
        assert len(cyc.sides[0]) + len(cyc.sides[1]) + 2 == n + 1
        assert len(net.hybrids()) == 1
        done += 1


def test_pvr_examples():
    net, labels = build_pvr(path_graph(4))
    assert len(net.cycles()) == 1 and explain(net, labels) == path_graph(4)
    cotree = build_pvr_network(path_graph(2))
    assert not cotree.net.hybrids()
    with pytest.raises(NotGatexError) as exc:
        build_pvr_network(cycle_graph(5))
    assert exc.value.verdict.failing_module == [0, 1, 2, 3, 4]


def test_pvr_roundtrip_on_corpus():
    for g in gatex_corpus():
        pvr = build_pvr_network(g)
        assert validate(pvr.net) is None
        assert explain(pvr.net, pvr.labels) == g
        assert len(pvr.net.cycles()) == len(build_mdt(g).prime_nodes()) == len(pvr.cycles)


def test_cycle_shape_in_pvr_networks():
    for seed in range(200):
        net0, labels0 = random_galled_tree(3 + seed % 25, seed, cycle_prob=0.7)
        pvr = build_pvr_network(explain(net0, labels0))
        leafsets = pvr.net.leaf_sets()
        for c in pvr.cycles:
            tops = [s[0] for s in c.sides]
            assert leafsets[tops[0]] & leafsets[tops[1]] == leafsets[c.hybrid]
            for side in c.sides:
                for w in side:
                    kids = pvr.net.children[w]
                    assert len(kids) == 2
                    off = c.off_child[w]
                    on = [k for k in kids if k != off][0]
                    assert leafsets[off] & leafsets[on] == 0
