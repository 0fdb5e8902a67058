import json

import pytest

from gatex.errors import GraphError, InvariantError
from gatex.graph import complement, complete_graph, empty_graph
from gatex.network import (GalledTree, explain, explain_by_lca, flip_labels, lca,
                           random_galled_tree, single_leaf, validate)


def star(k, label):
    net = GalledTree([list(range(1, k + 1))] + [[] for _ in range(k)], {i + 1: i for i in range(k)})
    return net, (label,) + (None,) * k


def small_cycle():
    # root 0 -> a 1, b 2; a -> leaf 4 (vertex 0), hybrid 3; b -> hybrid 3, leaf 5 (vertex 1);
    # hybrid 3 -> leaf 6 (vertex 2)
    children = [[1, 2], [4, 3], [3, 5], [6], [], [], []]
    return GalledTree(children, {4: 0, 5: 1, 6: 2})


def test_validate_examples():
    assert validate(single_leaf()) is None
    chain = GalledTree([[1], [2], []], {2: 0})
    v = validate(chain)
    assert v is not None and v.clause == "N1"
    assert validate(star(3, 1)[0]) is None
    assert validate(small_cycle()) is None


def test_validate_reports_violations():
    # leaf with two parents
    bad = GalledTree([[1, 2], [3], [3], []], {3: 0})
    assert validate(bad).clause in ("N2", "N3")
    # two hybrids inside one block
    children = [[1, 2], [3, 4], [3, 4], [5], [6], [], []]
    v = validate(GalledTree(children, {5: 0, 6: 1}))
    assert v is not None and v.clause == "N4"
    # leaves must cover 0..k-1
    v = validate(GalledTree([[1, 2], [], []], {1: 0, 2: 5}))
    assert v is not None and v.clause == "N2"
    # unmapped leaf
    v = validate(GalledTree([[1, 2], [], []], {1: 0}))
    assert v is not None and v.clause == "N2"


def test_cycles_of_small_network():
    net = small_cycle()
    (c,) = net.cycles()
    assert c.root == 0 and c.hybrid == 3
    assert sorted(c.sides) == [(1,), (2,)]
    assert list(net.hybrids()) == [3]


def test_lca_examples():
    net = small_cycle()
    assert lca(net, [4]) == 4
    assert lca(net, [4, 5, 6]) == 0
    assert lca(net, [4, 6]) == 1
    assert lca(net, [5, 6]) == 2
    with pytest.raises(GraphError):
        lca(net, [1])
    with pytest.raises(GraphError):
        lca(net, [])
    k2, _ = star(2, 1)
    assert lca(k2, [1, 2]) == 0


def test_lca_detects_ambiguity():
    # two sources over the same pair of leaves: both are minimal common ancestors
    bad = GalledTree([[2, 3], [2, 3], [], []], {2: 0, 3: 1})
    with pytest.raises(InvariantError):
        lca(bad, [2, 3])


def test_explain_examples():
    assert explain(single_leaf(), (None,)).n == 1
    assert explain(*star(5, 1)) == complete_graph(5)
    assert explain(*star(5, 0)) == empty_graph(5)
    labels = (1, 0, 1, 0, None, None, None)
    g = explain(small_cycle(), labels)
    # lca(0,1) = root (1), lca(0,2) = node 1 (0), lca(1,2) = node 2 (1)
    assert g.edges == [(0, 1), (1, 2)]
    with pytest.raises(GraphError):
        explain(small_cycle(), (1, 0, 2, 0, None, None, None))
    with pytest.raises(GraphError):
        explain(small_cycle(), (1, 0, 1, 0, 1, None, None))


def test_flip_examples():
    net, labels = star(4, 1)
    assert flip_labels(labels) == (0, None, None, None, None)
    assert flip_labels(flip_labels(labels)) == labels


def test_random_networks_are_valid_and_consistent():
    for seed in range(300):
        k = 1 + seed % 30
        net, labels = random_galled_tree(k, seed)
        assert validate(net) is None
        assert net.n_leaves == k
        g = explain(net, labels)
        assert g == explain_by_lca(net, labels)
        assert explain(net, flip_labels(labels)) == complement(g)


def test_random_generator_is_deterministic():
    a = random_galled_tree(25, 7)
    b = random_galled_tree(25, 7)
    assert a[0].children == b[0].children and a[1] == b[1]
    assert random_galled_tree(1, 3)[0].children == ((),)
    with pytest.raises(GraphError):
        random_galled_tree(0, 1)


def test_json_roundtrip_and_dot():
    net, labels = random_galled_tree(12, 4)
    data = json.loads(json.dumps(net.to_json(labels)))
    net2, labels2 = GalledTree.from_json(data)
    assert net2.children == net.children and labels2 == labels
    kinds = {d["kind"] for d in data["nodes"]}
    assert kinds <= {"root", "tree", "hybrid", "leaf"}
    dot = small_cycle().to_dot((1, 0, 1, 0, None, None, None))
    assert "doublecircle" in dot


def test_size_bound():
    for seed in range(100):
        net, _ = random_galled_tree(1 + seed % 20, seed, cycle_prob=0.9)
        assert net.size <= 4 * net.n_leaves - 3
