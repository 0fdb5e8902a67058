"""Clique, independence and chromatic numbers on GaTEx graphs.

Everything is driven by the pvr-network.  Values at a node are pairs
(size, members) where members is a vertex bitmask; ties between equally
large sets go to the lexicographically smaller one.

Cycle recurrences (per side, bottom-up from the parents of the hybrid):

* omega(w): best clique below w;
* omega_no_eta(w): best clique below w avoiding the hybrid's leaves;
* incl[i]: whether some maximum clique on side i meets the hybrid's
  leaves; only a strict win of an off-cycle child at a 0-labelled
  vertex clears it.

At the cycle root, label 0 takes the better side.  Label 1 adds the two
hybrid-free cliques and, when both flags are set, also tries gluing the
two sides along the shared hybrid clique, keeping the larger.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bits import iter_bits, lowest, to_list
from .cographs import FAT, SLIM, PolarCatDecomposition
from .errors import InvariantError
from .graph import Graph
from .modules import LEAF, PRIME
from .network import flip_labels
from .pvr import PvrNetwork, build_pvr_network

EMPTY = (0, 0)


def _better(a, b):
    if a[0] != b[0]:
        return a if a[0] > b[0] else b
    x = a[1] ^ b[1]
    if not x:
        return a
    low = x & -x
    return a if a[1] & low else b


def _union(a, b):
    return (a[0] + b[0], a[1] | b[1])


@dataclass
class CliqueTables:
    omega: dict = field(default_factory=dict)         # network node -> size
    omega_no_eta: dict = field(default_factory=dict)  # cycle side node -> size
    clique_incl_eta: dict = field(default_factory=dict)  # cycle root -> (bool, bool)


def cycle_clique_dp(root_label: int, sides, hyb, tables: CliqueTables | None = None,
                    ids=None):
    """Combine one cycle.

    ``sides`` holds, per side, a top-down list of (label, best) where
    best is the (size, members) value of the off-cycle child; ``hyb`` is
    the value of the hybrid's child.  ``ids`` optionally names the
    network nodes (root, [[side ids]], hybrid) for the tables.
    """
    incl = [True, True]
    tops = []
    for i, side in enumerate(sides):
        cur = None
        for k in range(len(side) - 1, -1, -1):
            label, off = side[k]
            if cur is None:
                no = off
                if label == 0:
                    om = _better(hyb, off)
                    if off[0] > hyb[0]:
                        incl[i] = False
                    inc = hyb
                else:
                    om = _union(hyb, off)
                    inc = om
            else:
                om_c, no_c, inc_c = cur
                if label == 0:
                    om = _better(om_c, off)
                    no = _better(no_c, off)
                    if off[0] > om_c[0]:
                        incl[i] = False
                    inc = inc_c
                else:
                    om = _union(om_c, off)
                    no = _union(no_c, off)
                    inc = _union(inc_c, off)
            cur = (om, no, inc)
            if tables is not None and ids is not None:
                node = ids[1][i][k]
                tables.omega[node] = om[0]
                tables.omega_no_eta[node] = no[0]
        if cur is None:  # side without inner vertices: the root sees the hybrid directly
            cur = (hyb, EMPTY, hyb)
        tops.append(cur)
    (o1, n1, i1), (o2, n2, i2) = tops
    if root_label == 0:
        res = _better(o1, o2)
    elif incl[0] and incl[1]:
        # gluing along the hybrid clique is not always optimal: a fat cycle
        # can have a larger clique avoiding the hybrid's leaves altogether
        res = _better((o1[0] + o2[0] - hyb[0], i1[1] | i2[1]), _union(n1, n2))
    else:
        res = _union(n1, n2)
    if tables is not None and ids is not None:
        tables.omega[ids[0]] = res[0]
        tables.omega[ids[2]] = hyb[0]
        tables.clique_incl_eta[ids[0]] = tuple(incl)
    return res


def clique_dp(pvr: PvrNetwork, labels=None) -> tuple[tuple[int, int], CliqueTables]:
    """Maximum clique of the graph explained by pvr.net under labels."""
    if labels is None:
        labels = pvr.labels
    tables = CliqueTables()
    best = {}
    cycles = {id(c.module): c for c in pvr.cycles}
    net_node = pvr.node_of
    for x in pvr.mdt.postorder():
        u = net_node[id(x)]
        if x.label == LEAF:
            val = (1, x.module)
        elif x.label != PRIME:
            vals = [best[id(c)] for c in x.children]
            if labels[u] == 0:
                val = vals[0]
                for b in vals[1:]:
                    val = _better(val, b)
            else:
                size = sum(b[0] for b in vals)
                mask = 0
                for b in vals:
                    mask |= b[1]
                val = (size, mask)
        else:
            cyc = cycles[id(x)]
            by_node = {net_node[id(c)]: best[id(c)] for c in x.children}
            sides = [[(labels[w], by_node[cyc.off_child[w]]) for w in side]
                     for side in cyc.sides]
            hyb = by_node[cyc.hybrid_child]
            val = cycle_clique_dp(labels[cyc.root], sides, hyb, tables,
                                  (cyc.root, cyc.sides, cyc.hybrid))
            if val[1].bit_count() != val[0]:
                raise InvariantError("cycle witness size mismatch")
        tables.omega[u] = val[0]
        best[id(x)] = val
    return best[id(pvr.mdt.root)], tables


def _pvr(g: Graph, pvr: PvrNetwork | None) -> PvrNetwork:
    return pvr if pvr is not None else build_pvr_network(g)


def is_clique(g: Graph, members) -> bool:
    m = 0
    for x in members:
        m |= 1 << x
    return all((g.adj[x] | 1 << x) & m == m for x in members)


def is_independent(g: Graph, members) -> bool:
    m = 0
    for x in members:
        m |= 1 << x
    return all(not g.adj[x] & m for x in members)


def is_proper_coloring(g: Graph, coloring) -> bool:
    classes = {}
    for x, c in enumerate(coloring):
        classes[c] = classes.get(c, 0) | 1 << x
    return all(not g.adj[x] & classes[c] for x, c in enumerate(coloring))


def clique_number(g: Graph, pvr: PvrNetwork | None = None) -> tuple[int, list[int]]:
    pvr = _pvr(g, pvr)
    (size, mask), _ = clique_dp(pvr)
    members = to_list(mask)
    if len(members) != size or not is_clique(g, members):
        raise InvariantError("clique witness failed verification")
    return size, members


def independence_number(g: Graph, pvr: PvrNetwork | None = None) -> tuple[int, list[int]]:
    pvr = _pvr(g, pvr)
    (size, mask), _ = clique_dp(pvr, flip_labels(pvr.labels))
    members = to_list(mask)
    if len(members) != size or not is_independent(g, members):
        raise InvariantError("independent set witness failed verification")
    return size, members


# --- orientation ------------------------------------------------------------

def polar_cat_arcs(d: PolarCatDecomposition) -> list[tuple[int, int]]:
    """Transitive orientation of a polar-cat on its own vertex indices."""
    arcs = []
    want = 1 if d.flag == SLIM else 0
    for s, side in enumerate((d.Y, d.Z)):
        for i in range(len(side)):
            if (i + 1) % 2 != want:
                continue
            for j in range(i + 1, len(side)):
                if d.flag == FAT and s == 1:
                    arcs.append((side[j], side[i]))
                else:
                    arcs.append((side[i], side[j]))
    if d.flag == FAT:
        for y in d.Y[:-1]:
            for z in d.Z[:-1]:
                arcs.append((y, z))
    return arcs


def _quotient_arcs(pvr: PvrNetwork, x) -> list[tuple[int, int]]:
    """Arcs between child indices of MD node x."""
    k = len(x.children)
    if x.label == 0:
        return []
    if x.label == 1:
        order = sorted(range(k), key=lambda i: lowest(x.children[i].module))
        return [(order[i], order[j]) for i in range(k) for j in range(i + 1, k)]
    cyc = next(c for c in pvr.cycles if c.module is x)
    return polar_cat_arcs(cyc.decomposition)


class Orientation:
    """Directed version of a graph, as out-neighbour bitmasks."""

    def __init__(self, out: list[int]):
        self.out = out

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u, m in enumerate(self.out) for v in iter_bits(m)]

    def is_orientation_of(self, g: Graph) -> bool:
        inn = [0] * g.n
        for u, m in enumerate(self.out):
            for v in iter_bits(m):
                inn[v] |= 1 << u
        return all(self.out[u] & inn[u] == 0 and self.out[u] | inn[u] == g.adj[u]
                   for u in range(g.n))

    def is_transitive(self) -> bool:
        out = self.out
        for u, m in enumerate(out):
            for v in iter_bits(m):
                if out[v] & ~m:
                    return False
        return True

    def topological_order(self) -> list[int]:
        order = sorted(range(len(self.out)), key=lambda u: (-self.out[u].bit_count(), u))
        pos = {u: i for i, u in enumerate(order)}
        for u, m in enumerate(self.out):
            for v in iter_bits(m):
                if pos[v] < pos[u]:
                    raise InvariantError("orientation is not acyclic")
        return order


def transitive_orientation(g: Graph, pvr: PvrNetwork | None = None) -> Orientation:
    pvr = _pvr(g, pvr)
    out = [0] * g.n
    for x in pvr.mdt.postorder():
        if x.label == LEAF:
            continue
        mods = [c.module for c in x.children]
        if x.label == 1:
            order = sorted(range(len(mods)), key=lambda i: lowest(mods[i]))
            after = 0
            for i in reversed(order):
                if after:
                    for v in iter_bits(mods[i]):
                        out[v] |= after
                after |= mods[i]
            continue
        for a, b in _quotient_arcs(pvr, x):
            target = mods[b]
            for v in iter_bits(mods[a]):
                out[v] |= target
    orient = Orientation(out)
    return orient


def _heights(pvr: PvrNetwork, omega_of: dict) -> list[int]:
    """0-based colour = longest chain below each vertex in the orientation."""
    color = [0] * pvr.graph.n
    stack = [(pvr.mdt.root, 0)]
    while stack:
        x, base = stack.pop()
        if x.label == LEAF:
            color[x.vertex] = base
            continue
        k = len(x.children)
        if x.label == 0:
            for c in x.children:
                stack.append((c, base))
            continue
        arcs = _quotient_arcs(pvr, x)
        preds = [[] for _ in range(k)]
        succ_count = [0] * k
        for a, b in arcs:
            preds[b].append(a)
            succ_count[a] += 1
        # longest weighted path into each quotient vertex
        indeg = [len(p) for p in preds]
        succ = [[] for _ in range(k)]
        for a, b in arcs:
            succ[a].append(b)
        offset = [0] * k
        ready = [i for i in range(k) if indeg[i] == 0]
        while ready:
            i = ready.pop()
            w = offset[i] + omega_of[id(x.children[i])]
            for j in succ[i]:
                offset[j] = max(offset[j], w)
                indeg[j] -= 1
                if indeg[j] == 0:
                    ready.append(j)
        for i, c in enumerate(x.children):
            stack.append((c, base + offset[i]))
    return color


def chromatic_number(g: Graph, pvr: PvrNetwork | None = None) -> tuple[int, list[int]]:
    """chi(g) = omega(g) together with a colouring using exactly that many colours.

    The colouring is the one greedy colouring produces along a
    topological order of the transitive orientation (each vertex gets
    the length of the longest chain ending at it), computed through the
    decomposition instead of edge by edge.
    """
    pvr = _pvr(g, pvr)
    (size, _), tables = clique_dp(pvr)
    omega_of = {id(x): tables.omega[pvr.node_of[id(x)]] for x in pvr.mdt.postorder()}
    coloring = _heights(pvr, omega_of)
    if max(coloring) + 1 != size or not is_proper_coloring(g, coloring):
        raise InvariantError("colouring failed verification")
    return size, coloring


def greedy_coloring(g: Graph, order) -> list[int]:
    """Smallest colour absent among already coloured neighbours."""
    classes: list[int] = []
    color = [-1] * g.n
    for v in order:
        a = g.adj[v]
        for c, members in enumerate(classes):
            if not a & members:
                break
        else:
            c = len(classes)
            classes.append(0)
        classes[c] |= 1 << v
        color[v] = c
    return color


def perfect_order_coloring(g: Graph, pvr: PvrNetwork | None = None) -> tuple[list[int], list[int]]:
    orient = transitive_orientation(g, pvr)
    order = orient.topological_order()
    coloring = greedy_coloring(g, order)
    if not is_proper_coloring(g, coloring):
        raise InvariantError("greedy colouring is not proper")
    return order, coloring


@dataclass
class Solution:
    omega: int
    clique: list
    alpha: int
    independent_set: list
    chi: int
    coloring: list

    def to_json(self) -> dict:
        return {"omega": self.omega, "clique": self.clique, "alpha": self.alpha,
                "independent_set": self.independent_set, "chi": self.chi,
                "coloring": {str(v): c for v, c in enumerate(self.coloring)}}


def solve(g: Graph, pvr: PvrNetwork | None = None) -> Solution:
    pvr = _pvr(g, pvr)
    omega, clique = clique_number(g, pvr)
    alpha, indep = independence_number(g, pvr)
    chi, coloring = chromatic_number(g, pvr)
    return Solution(omega, clique, alpha, indep, chi, coloring)
