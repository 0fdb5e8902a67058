"""Elementary networks for polar-cats and prime-vertex replacement.

Replacing every prime node of the MDT by the elementary cycle of its
quotient, with the quotient's leaves standing for the child subtrees,
gives a galled-tree that explains the input graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cographs import FAT, SLIM, PolarCatDecomposition, recognize_polar_cat
from .errors import GraphError, InvariantError, NotGatexError
from .graph import Graph
from .modules import LEAF, PRIME, MDNode, ModularDecomposition, build_mdt
from .network import GalledTree, Labeling, explain

HYBRID_LABEL = 0


def side_label(flag: str, i: int) -> int:
    """Label of the i-th (1-based) side vertex of an elementary cycle."""
    if flag == SLIM:
        return 1 if i % 2 == 1 else 0
    return 1 if i % 2 == 0 else 0


def build_elementary(d: PolarCatDecomposition, graph: Graph | None = None,
                     hybrid_label: int = HYBRID_LABEL) -> tuple[GalledTree, Labeling]:
    """Single-cycle network explaining the polar-cat described by d.

    Node 0 is the cycle root, then the Y side top-down, the Z side
    top-down, the hybrid, and finally the leaves.
    """
    d.check()
    if d.n < 4:
        raise GraphError("a polar-cat has at least four vertices")
    if graph is not None and d.graph() != graph:
        raise GraphError("decomposition edge pattern does not match the graph")
    if hybrid_label not in (0, 1):
        raise GraphError("hybrid label must be 0 or 1")
    children: list[list[int]] = [[]]
    labels: list = [1 if d.flag == FAT else 0]
    leaf_vertex = {}
    side_nodes = []
    for side in (d.Y, d.Z):
        nodes = []
        for i in range(1, len(side)):
            children.append([])
            labels.append(side_label(d.flag, i))
            nodes.append(len(children) - 1)
        side_nodes.append((side, nodes))
    children.append([])
    labels.append(hybrid_label)
    hyb = len(children) - 1

    def leaf(x):
        children.append([])
        labels.append(None)
        leaf_vertex[len(children) - 1] = x
        return len(children) - 1

    for side, nodes in side_nodes:
        prev = 0
        for node, x in zip(nodes, side):
            children[prev].append(node)
            children[node].append(leaf(x))
            prev = node
        children[prev].append(hyb)
    children[hyb].append(leaf(d.pivot))
    return GalledTree(children, leaf_vertex), tuple(labels)


@dataclass
class PrimeCycle:
    """Bookkeeping for one cycle spliced in for a prime MDT node."""
    module: MDNode
    decomposition: PolarCatDecomposition
    root: int
    hybrid: int
    sides: list = field(default_factory=list)      # per side: node ids top-down
    off_child: dict = field(default_factory=dict)  # side node -> off-cycle child
    hybrid_child: int = -1


@dataclass
class PvrNetwork:
    graph: Graph
    mdt: ModularDecomposition
    net: GalledTree
    labels: Labeling
    node_of: dict  # id(MDNode) -> network node
    cycles: list   # PrimeCycle, in MDT postorder

    def cycle_at(self, node: int) -> PrimeCycle | None:
        for c in self.cycles:
            if c.root == node:
                return c
        return None


def _assemble(mdt: ModularDecomposition, decomps: dict) -> PvrNetwork:
    children: list[list[int]] = []
    labels: list = []
    leaf_vertex = {}
    node_of = {}
    cycles = []

    def new(label):
        children.append([])
        labels.append(label)
        return len(children) - 1

    # explicit stack: (md node, parent network node or None)
    root_id = None
    stack = [(mdt.root, None)]
    order = []
    while stack:
        x, parent = stack.pop()
        if x.label == LEAF:
            u = new(None)
            leaf_vertex[u] = x.vertex
        elif x.label != PRIME:
            u = new(x.label)
            for c in reversed(x.children):
                stack.append((c, u))
        else:
            d = decomps[id(x)]
            u = new(1 if d.flag == FAT else 0)
            cyc = PrimeCycle(x, d, u, -1)
            pending = []
            side_ids = []
            for side in (d.Y, d.Z):
                ids = []
                prev = u
                for i, q in enumerate(side[:-1], 1):
                    w = new(side_label(d.flag, i))
                    children[prev].append(w)
                    pending.append((x.children[q], w))
                    ids.append(w)
                    prev = w
                side_ids.append((ids, prev))
            hyb = new(HYBRID_LABEL)
            for ids, last in side_ids:
                children[last].append(hyb)
                cyc.sides.append(ids)
            cyc.hybrid = hyb
            pending.append((x.children[d.pivot], hyb))
            for c, owner in reversed(pending):
                stack.append((c, owner))
            cycles.append((cyc, pending))
        node_of[id(x)] = u
        order.append(x)
        if parent is None:
            root_id = u
        else:
            children[parent].append(u)
    # children lists were appended in stack order; restore MD child order
    for x in order:
        if x.label not in (LEAF, PRIME):
            u = node_of[id(x)]
            children[u] = [node_of[id(c)] for c in x.children]
    done = []
    for cyc, pending in cycles:
        for c, owner in pending:
            cid = node_of[id(c)]
            if owner == cyc.hybrid:
                cyc.hybrid_child = cid
            else:
                cyc.off_child[owner] = cid
        done.append(cyc)
    # cycles in MDT postorder
    post = {id(x): k for k, x in enumerate(mdt.postorder())}
    done.sort(key=lambda c: post[id(c.module)])
    net = GalledTree(children, leaf_vertex)
    if root_id != 0:
        raise InvariantError("network root must be node 0")
    return PvrNetwork(mdt.graph, mdt, net, tuple(labels), node_of, done)


def prime_decompositions(mdt: ModularDecomposition):
    """Map id(prime node) -> decomposition; the first failure is returned too."""
    decomps = {}
    for x in mdt.prime_nodes():
        d = recognize_polar_cat(mdt.quotient_graph(x))
        if d is None:
            return decomps, x
        decomps[id(x)] = d
    return decomps, None


def build_pvr_network(g: Graph, mdt: ModularDecomposition | None = None,
                      verify: bool = True) -> PvrNetwork:
    if mdt is None:
        mdt = build_mdt(g)
    decomps, failing = prime_decompositions(mdt)
    if failing is not None:
        from .recognition import GatexVerdict
        raise NotGatexError(GatexVerdict(False, "failing_module",
                                         failing_module=failing.vertices))
    pvr = _assemble(mdt, decomps)
    if verify and explain(pvr.net, pvr.labels) != g:
        raise InvariantError("pvr-network does not explain its graph")
    return pvr


def build_pvr(g: Graph) -> tuple[GalledTree, Labeling]:
    pvr = build_pvr_network(g)
    return pvr.net, pvr.labels


def cotree_network(g: Graph) -> tuple[GalledTree, Labeling]:
    mdt = build_mdt(g)
    if mdt.prime_nodes():
        raise GraphError("graph is not a cograph")
    pvr = _assemble(mdt, {})
    return pvr.net, pvr.labels
