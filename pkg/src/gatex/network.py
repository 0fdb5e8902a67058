"""Labeled galled-trees.

A network is stored as child lists over node ids 0..N-1 plus a map from
leaf nodes to graph vertices.  A labeling is a tuple indexed by node:
0 or 1 on inner nodes, None on leaves.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .bits import iter_bits
from .errors import GraphError, InvariantError
from .graph import Graph

Labeling = tuple


@dataclass(frozen=True)
class Violation:
    clause: str
    nodes: tuple
    message: str

    def __str__(self):
        return f"{self.clause}: {self.message} (nodes {list(self.nodes)})"


@dataclass(frozen=True)
class Cycle:
    root: int
    hybrid: int
    sides: tuple  # two tuples of side vertices listed top-down


class GalledTree:
    def __init__(self, children: Sequence[Iterable[int]], leaf_vertex: Mapping[int, int]):
        self.children = tuple(tuple(c) for c in children)
        self.leaf_vertex = dict(leaf_vertex)
        parents = [[] for _ in self.children]
        for u, cs in enumerate(self.children):
            for c in cs:
                if 0 <= c < len(parents):
                    parents[c].append(u)
        self.parents = tuple(tuple(p) for p in parents)
        self._order = None
        self._anc = None
        self._leafsets = None

    @property
    def size(self) -> int:
        return len(self.children)

    @property
    def root(self) -> int:
        roots = [u for u, p in enumerate(self.parents) if not p]
        if len(roots) != 1:
            raise InvariantError("network does not have a unique root")
        return roots[0]

    @property
    def leaves(self) -> list[int]:
        return sorted(self.leaf_vertex)

    @property
    def n_leaves(self) -> int:
        return len(self.leaf_vertex)

    def kind(self, u: int) -> str:
        if not self.parents[u]:
            return "leaf" if not self.children[u] else "root"
        if not self.children[u]:
            return "leaf"
        return "hybrid" if len(self.parents[u]) >= 2 else "tree"

    def hybrids(self) -> list[int]:
        return [u for u in range(self.size) if len(self.parents[u]) >= 2]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, c) for u, cs in enumerate(self.children) for c in cs]

    def topological_order(self) -> list[int]:
        """Parents before children."""
        if self._order is None:
            indeg = [len(p) for p in self.parents]
            order = [u for u in range(self.size) if indeg[u] == 0]
            i = 0
            while i < len(order):
                for c in self.children[order[i]]:
                    indeg[c] -= 1
                    if indeg[c] == 0:
                        order.append(c)
                i += 1
            if len(order) != self.size:
                raise InvariantError("network contains a directed cycle")
            self._order = order
        return self._order

    def leaf_sets(self) -> list[int]:
        """Per node, the bitmask of graph vertices below it."""
        if self._leafsets is None:
            ls = [0] * self.size
            for u in reversed(self.topological_order()):
                if u in self.leaf_vertex:
                    ls[u] = 1 << self.leaf_vertex[u]
                else:
                    m = 0
                    for c in self.children[u]:
                        m |= ls[c]
                    ls[u] = m
            self._leafsets = ls
        return self._leafsets

    def ancestors(self) -> list[int]:
        """Per node, bitmask over node ids of its ancestors (itself included)."""
        if self._anc is None:
            anc = [0] * self.size
            for u in self.topological_order():
                m = 1 << u
                for p in self.parents[u]:
                    m |= anc[p]
                anc[u] = m
            self._anc = anc
        return self._anc

    def cycles(self) -> list[Cycle]:
        out = []
        for h in self.hybrids():
            p1, p2 = self.parents[h][:2]
            chain1 = [p1]
            while self.parents[chain1[-1]]:
                chain1.append(self.parents[chain1[-1]][0])
            on1 = {u: i for i, u in enumerate(chain1)}
            chain2 = [p2]
            while chain2[-1] not in on1:
                chain2.append(self.parents[chain2[-1]][0])
            top = chain2.pop()
            side1 = chain1[:on1[top]]
            out.append(Cycle(top, h, (tuple(reversed(side1)), tuple(reversed(chain2)))))
        return out

    def to_json(self, labels: Labeling | None = None) -> dict:
        nodes = []
        for u in range(self.size):
            d = {"id": u, "kind": self.kind(u),
                 "label": None if labels is None else labels[u]}
            if u in self.leaf_vertex:
                d["vertex"] = self.leaf_vertex[u]
            nodes.append(d)
        return {"nodes": nodes, "edges": [list(e) for e in self.edges()]}

    @classmethod
    def from_json(cls, data: dict) -> tuple["GalledTree", Labeling]:
        size = len(data["nodes"])
        children = [[] for _ in range(size)]
        for u, c in data["edges"]:
            children[u].append(c)
        leaf_vertex = {d["id"]: d["vertex"] for d in data["nodes"] if "vertex" in d}
        labels = [None] * size
        for d in data["nodes"]:
            labels[d["id"]] = d.get("label")
        return cls(children, leaf_vertex), tuple(labels)

    def to_dot(self, labels: Labeling | None = None) -> str:
        lines = ["digraph network {"]
        for u in range(self.size):
            kind = self.kind(u)
            if kind == "leaf":
                text = str(self.leaf_vertex.get(u, u))
                shape = "plaintext"
            else:
                text = "" if labels is None else str(labels[u])
                shape = "doublecircle" if kind == "hybrid" else "circle"
            lines.append(f'  n{u} [label="{text}", shape={shape}];')
        for u, c in self.edges():
            lines.append(f"  n{u} -> n{c};")
        lines.append("}")
        return "\n".join(lines)


def single_leaf() -> GalledTree:
    return GalledTree([[]], {0: 0})


# --- validation ----------------------------------------------------------

def validate(net: GalledTree) -> Violation | None:
    """First violated clause of (N0)-(N4) and the cycle/size invariants."""
    size = net.size
    if size == 0:
        return Violation("N0", (), "empty network")
    for u, cs in enumerate(net.children):
        for c in cs:
            if not 0 <= c < size or c == u:
                return Violation("structure", (u, c), "edge to an invalid node")
        if len(set(cs)) != len(cs):
            return Violation("structure", (u,), "parallel edges")
    for u, x in net.leaf_vertex.items():
        if not 0 <= u < size:
            return Violation("structure", (u,), "leaf map names an unknown node")
    if size == 1:
        if net.leaf_vertex != {0: 0}:
            return Violation("N0", (0,), "single node must be the leaf for vertex 0")
        return None
    roots = [u for u in range(size) if not net.parents[u]]
    if len(roots) != 1:
        return Violation("N1", tuple(roots), "network needs exactly one node of indegree 0")
    root = roots[0]
    if len(net.children[root]) < 2:
        return Violation("N1", (root,), "root has outdegree below 2")
    try:
        order = net.topological_order()
    except InvariantError:
        return Violation("structure", (), "network contains a directed cycle")
    del order
    for u in range(size):
        indeg, outdeg = len(net.parents[u]), len(net.children[u])
        if outdeg == 0:
            if indeg != 1:
                return Violation("N2", (u,), "leaf must have indegree 1")
            if u not in net.leaf_vertex:
                return Violation("N2", (u,), "leaf without a graph vertex")
        elif u in net.leaf_vertex:
            return Violation("N2", (u,), "inner node mapped to a graph vertex")
        elif u != root:
            if indeg == 1 and outdeg < 2:
                return Violation("N3", (u,), "tree vertex with outdegree below 2")
            if indeg > 2:
                return Violation("N3", (u,), "indegree above 2")
    vertices = sorted(net.leaf_vertex.values())
    if vertices != list(range(len(vertices))):
        return Violation("N2", tuple(net.leaves), "leaves must map onto 0..|X|-1 bijectively")
    und = nx.Graph()
    und.add_nodes_from(range(size))
    und.add_edges_from(net.edges())
    if not nx.is_connected(und):
        return Violation("structure", (), "network is not connected")
    for block in nx.biconnected_component_edges(und):
        block = [tuple(e) for e in block]
        if len(block) == 1:
            continue
        nodes = {x for e in block for x in e}
        inside = set()
        for a, b in block:
            inside.add((a, b) if b in net.children[a] else (b, a))
        indeg = {x: 0 for x in nodes}
        outdeg = {x: 0 for x in nodes}
        for a, b in inside:
            outdeg[a] += 1
            indeg[b] += 1
        hyb = [x for x in nodes if indeg[x] == 2]
        if len(hyb) > 1:
            return Violation("N4", tuple(sorted(hyb)), "block with more than one hybrid")
        if len(block) != len(nodes) or any(indeg[x] + outdeg[x] != 2 for x in nodes):
            return Violation("N4", tuple(sorted(nodes)), "block is not a single cycle")
        sources = [x for x in nodes if indeg[x] == 0]
        if len(hyb) != 1 or len(sources) != 1:
            return Violation("N4", tuple(sorted(nodes)), "cycle is not two paths from one root to one hybrid")
    if size > 4 * net.n_leaves - 3:
        return Violation("size", (), f"{size} nodes exceed 4|X|-3 for |X|={net.n_leaves}")
    return None


def check_labeling(net: GalledTree, labels: Labeling) -> None:
    if len(labels) != net.size:
        raise GraphError("labeling length does not match the network")
    for u, t in enumerate(labels):
        if u in net.leaf_vertex:
            if t is not None:
                raise GraphError(f"leaf {u} must be unlabeled")
        elif t not in (0, 1):
            raise GraphError(f"inner node {u} needs label 0 or 1, got {t!r}")


def lca(net: GalledTree, leaves: Iterable[int]) -> int:
    leaves = list(leaves)
    if not leaves:
        raise GraphError("lca of an empty set")
    for x in leaves:
        if x not in net.leaf_vertex:
            raise GraphError(f"node {x} is not a leaf")
    anc = net.ancestors()
    common = -1
    for x in leaves:
        common &= anc[x]
    minimal = [u for u in iter_bits(common)
               if not any(common >> c & 1 for c in net.children[u])]
    if len(minimal) != 1:
        raise InvariantError(f"common ancestors have {len(minimal)} minimal elements")
    return minimal[0]


def explain(net: GalledTree, labels: Labeling) -> Graph:
    """Graph on the leaves: x ~ y iff their lca carries label 1."""
    check_labeling(net, labels)
    n = net.n_leaves
    ls = net.leaf_sets()
    adj = [0] * n
    for w in range(net.size):
        if labels[w] != 1:
            continue
        regions = []
        for c in net.children[w]:
            lc = ls[c]
            rest = lc
            split = []
            for r, cov in regions:
                a = r & lc
                if a:
                    split.append((a, cov | lc))
                b = r & ~lc
                if b:
                    split.append((b, cov))
                rest &= ~r
            if rest:
                split.append((rest, lc))
            regions = split
        lw = ls[w]
        for r, cov in regions:
            far = lw & ~cov
            if far:
                for x in iter_bits(r):
                    adj[x] |= far
    return Graph.from_masks(adj)


def explain_by_lca(net: GalledTree, labels: Labeling) -> Graph:
    """Reference implementation straight from the definition (quadratic)."""
    check_labeling(net, labels)
    by_vertex = {x: u for u, x in net.leaf_vertex.items()}
    n = net.n_leaves
    edges = []
    for x in range(n):
        for y in range(x + 1, n):
            if labels[lca(net, (by_vertex[x], by_vertex[y]))] == 1:
                edges.append((x, y))
    return Graph(n, edges)


def flip_labels(labels: Labeling) -> Labeling:
    return tuple(None if t is None else 1 - t for t in labels)


def is_quasi_discriminating(net: GalledTree, labels: Labeling) -> bool:
    for u, c in net.edges():
        if len(net.parents[c]) >= 2:
            continue
        if labels[u] == labels[c]:
            return False
    return True


# --- random generator ----------------------------------------------------

def _split(rng: random.Random, k: int, r: int) -> list[int]:
    cuts = sorted(rng.sample(range(1, k), r - 1))
    bounds = [0] + cuts + [k]
    return [bounds[i + 1] - bounds[i] for i in range(r)]


def random_galled_tree(leaf_count: int, seed: int, cycle_prob: float = 0.4,
                       max_side: int = 3) -> tuple[GalledTree, Labeling]:
    """Random valid labeled galled-tree with the given number of leaves.

    Inner nodes are either tree vertices with 2-4 children or roots of a
    cycle whose sides carry 0..max_side vertices each (not both empty),
    every side vertex and the hybrid owning one off-cycle subtree.
    Labels are uniform over {0, 1}.
    """
    if leaf_count < 1:
        raise GraphError("leaf_count must be at least 1")
    rng = random.Random(seed)
    vertices = list(range(leaf_count))
    rng.shuffle(vertices)
    children: list[list[int]] = []
    labels: list = []
    leaf_vertex: dict[int, int] = {}

    def node(label):
        children.append([])
        labels.append(label)
        return len(children) - 1

    def build(k):
        # iterative over an explicit stack to survive deep shapes
        root = node(None)
        stack = [(root, k)]
        while stack:
            u, size = stack.pop()
            if size == 1:
                leaf_vertex[u] = vertices[len(leaf_vertex)]
                labels[u] = None
                continue
            labels[u] = rng.randint(0, 1)
            s1, s2 = rng.randint(0, max_side), rng.randint(0, max_side)
            if rng.random() < cycle_prob and 0 < s1 + s2 < size:
                sizes = _split(rng, size, s1 + s2 + 1)
                hyb = node(rng.randint(0, 1))
                parts = iter(sizes)
                for s in (s1, s2):
                    prev = u
                    for _ in range(s):
                        w = node(rng.randint(0, 1))
                        children[prev].append(w)
                        off = node(None)
                        children[w].append(off)
                        stack.append((off, next(parts)))
                        prev = w
                    children[prev].append(hyb)
                below = node(None)
                children[hyb].append(below)
                stack.append((below, next(parts)))
                continue
            r = rng.randint(2, min(4, size))
            for s in _split(rng, size, r):
                c = node(None)
                children[u].append(c)
                stack.append((c, s))
        return root

    build(leaf_count)
    net = GalledTree(children, leaf_vertex)
    return net, tuple(labels)
