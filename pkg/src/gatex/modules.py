"""Modules, strong modules and the modular decomposition tree (MDT).

The decomposition is computed divide-and-conquer style around a pivot
vertex v:

1. partition V - v into the maximal modules not containing v (vertex
   partitioning with neighbourhood splitters);
2. in the quotient by that partition every module avoiding v is
   trivial, so its strong modules form a chain {v} = S_0 < S_1 < ...;
   each step of the chain is found by module closure;
3. recurse into each part and graft the subtrees onto the chain,
   merging a part's root into its parent when both are series or both
   are parallel.

Correctness is checked in the test-suite against an exhaustive subset
scan.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .bits import from_iter, iter_bits, lowest, to_list
from .errors import GraphError, InvariantError
from .graph import Graph

PARALLEL = 0
SERIES = 1
PRIME = "prime"
LEAF = "leaf"


@dataclass(eq=False)
class MDNode:
    label: object
    module: int  # bitmask of vertices
    children: list["MDNode"] = field(default_factory=list)

    @property
    def vertices(self) -> list[int]:
        return to_list(self.module)

    @property
    def is_leaf(self) -> bool:
        return self.label == LEAF

    @property
    def vertex(self) -> int:
        """The vertex of a leaf node."""
        return lowest(self.module)

    def __repr__(self):
        return f"MDNode({self.label!r}, {self.vertices})"


class ModularDecomposition:
    """Rooted tree over the strong modules of a graph."""

    def __init__(self, graph: Graph, root: MDNode):
        self.graph = graph
        self.root = root

    def postorder(self) -> Iterator[MDNode]:
        stack = [(self.root, False)]
        while stack:
            node, done = stack.pop()
            if done:
                yield node
                continue
            stack.append((node, True))
            for c in reversed(node.children):
                stack.append((c, False))

    def nodes(self) -> list[MDNode]:
        return list(self.postorder())

    def prime_nodes(self) -> list[MDNode]:
        return [x for x in self.postorder() if x.label == PRIME]

    def modules(self) -> set[frozenset]:
        return {frozenset(x.vertices) for x in self.postorder()}

    def quotient_graph(self, node: MDNode) -> Graph:
        """G[M] / M_max(G[M]) with vertex i standing for node.children[i]."""
        reps = [lowest(c.module) for c in node.children]
        adj = self.graph.adj
        return Graph.from_masks([from_iter(j for j, r in enumerate(reps)
                                            if adj[s] >> r & 1)
                                 for s in reps])

    def to_json(self) -> dict:
        ids = {}
        out = []
        for node in self.postorder():
            ids[id(node)] = len(ids)
        for node in self.postorder():
            out.append({
                "id": ids[id(node)],
                "label": node.label,
                "module": node.vertices,
                "children": [ids[id(c)] for c in node.children],
            })
        return {"root": ids[id(self.root)], "nodes": out}

    def to_dot(self) -> str:
        ids = {id(node): k for k, node in enumerate(self.postorder())}
        lines = ["digraph mdt {"]
        for node in self.postorder():
            k = ids[id(node)]
            if node.is_leaf:
                lines.append(f'  n{k} [label="{node.vertex}", shape=plaintext];')
            else:
                lines.append(f'  n{k} [label="{node.label}"];')
            for c in node.children:
                lines.append(f"  n{k} -> n{ids[id(c)]};")
        lines.append("}")
        return "\n".join(lines)


def is_module(g: Graph, s) -> bool:
    s = set(s)
    if not s:
        raise GraphError("module test needs a nonempty vertex set")
    if min(s) < 0 or max(s) >= g.n:
        raise GraphError("vertex index out of range")
    return is_module_mask(g.adj, from_iter(s), g.full)


def is_module_mask(adj: Sequence[int], mask: int, full: int) -> bool:
    r = lowest(mask)
    ar = adj[r]
    diff = 0
    for x in iter_bits(mask):
        diff |= adj[x] ^ ar
    return not (diff & full & ~mask)


def module_closure(adj: Sequence[int], mask: int, full: int) -> int:
    """Smallest module of G[full] containing mask."""
    r = lowest(mask)
    ar = adj[r]
    diff = 0
    todo = mask
    while todo:
        for x in iter_bits(todo):
            diff |= adj[x] ^ ar
        new = diff & full & ~mask
        mask |= new
        todo = new
    return mask


# --- step 1: maximal modules avoiding a vertex ---------------------------

def _partition_avoiding(adj, whole: int, v: int) -> list[int]:
    rest = whole & ~(1 << v)
    if not rest:
        return []
    near = adj[v] & rest
    far = rest & ~near
    parts = []
    owner = {}

    def new_part(mask):
        pid = len(parts)
        parts.append(mask)
        for x in iter_bits(mask):
            owner[x] = pid
        return pid

    for m in (near, far):
        if m:
            new_part(m)
    tasks = [(near, far), (far, near)] if near and far else []
    while tasks:
        splitters, region = tasks.pop()
        todo = []
        r = region
        while r:
            pid = owner[lowest(r)]
            todo.append(pid)
            r &= ~parts[pid]
        while todo:
            pid = todo.pop()
            part = parts[pid]
            if part & (part - 1) == 0:
                continue
            union, inter = 0, -1
            for x in iter_bits(part):
                union |= adj[x]
                inter &= adj[x]
            split = union & ~inter & splitters
            if not split:
                continue
            z = lowest(split)
            inside = part & adj[z]
            outside = part & ~adj[z]
            if inside.bit_count() < outside.bit_count():
                small, big = inside, outside
            else:
                small, big = outside, inside
            parts[pid] = big
            nid = new_part(small)
            tasks.append((big, small))
            tasks.append((small, big))
            todo.append(pid)
            todo.append(nid)
    parts.sort(key=lowest)
    return parts


# --- step 2: the chain of strong modules through v ------------------------

def _spine(adj, v: int, parts: list[int]):
    """Return levels [(label, [part indices])] from {v} upwards."""
    k = len(parts) + 1
    reps = [v] + [lowest(p) for p in parts]
    qadj = [from_iter(j for j, r in enumerate(reps) if adj[s] >> r & 1) for s in reps]
    qfull = (1 << k) - 1
    current = 1
    levels = []
    while current != qfull:
        a0 = qadj[0]
        remaining = qfull & ~current
        group = []
        for x in iter_bits(remaining):
            if not ((qadj[x] ^ a0) & ~(current | 1 << x)):
                group.append(x)
        if group:
            label = SERIES if a0 >> group[0] & 1 else PARALLEL
            if any((a0 >> x & 1) != (a0 >> group[0] & 1) for x in group):
                raise InvariantError("mixed adjacency in a degenerate level")
            current |= from_iter(group)
            levels.append((label, [x - 1 for x in group]))
            continue
        best = None
        for x in iter_bits(remaining):
            c = module_closure(qadj, current | 1 << x, qfull)
            if best is None or c.bit_count() < best.bit_count():
                best = c
                if best.bit_count() == current.bit_count() + 3:
                    break
        group = to_list(best & ~current)
        current = best
        levels.append((PRIME, [x - 1 for x in group]))
    return levels


def _decompose(adj, whole: int) -> MDNode:
    if whole & (whole - 1) == 0:
        return MDNode(LEAF, whole)
    v = lowest(whole)
    parts = _partition_avoiding(adj, whole, v)
    levels = _spine(adj, v, parts)
    sub = {}
    node = MDNode(LEAF, 1 << v)
    for label, group in levels:
        children = [node]
        module = node.module
        for i in group:
            if i not in sub:
                sub[i] = _decompose(adj, parts[i])
            t = sub[i]
            module |= t.module
            if label != PRIME and t.label == label:
                children.extend(t.children)
            else:
                children.append(t)
        children.sort(key=lambda c: lowest(c.module))
        node = MDNode(label, module, children)
    return node


def build_mdt(g: Graph) -> ModularDecomposition:
    limit = sys.getrecursionlimit()
    if limit < 4 * g.n + 200:
        sys.setrecursionlimit(4 * g.n + 200)
    try:
        root = _decompose(g.adj, g.full)
    finally:
        sys.setrecursionlimit(limit)
    return ModularDecomposition(g, root)


def strong_modules(g: Graph) -> set[frozenset]:
    return build_mdt(g).modules()


def maximal_strong_modules(g: Graph) -> list[list[int]]:
    root = build_mdt(g).root
    if root.is_leaf:
        return [root.vertices]
    return [c.vertices for c in root.children]


def quotient(g: Graph, parts) -> Graph:
    """Quotient of g by a partition into modules (vertex i = parts[i])."""
    masks = []
    seen = 0
    for p in parts:
        p = list(p)
        if not p:
            raise GraphError("empty part")
        m = from_iter(p)
        if m & seen or max(p) >= g.n or min(p) < 0:
            raise GraphError("parts must partition the vertex set")
        if not is_module_mask(g.adj, m, g.full):
            raise GraphError(f"part {sorted(p)} is not a module")
        seen |= m
        masks.append(m)
    if seen != g.full:
        raise GraphError("parts must cover the vertex set")
    reps = [lowest(m) for m in masks]
    return Graph.from_masks([from_iter(j for j, r in enumerate(reps)
                                        if g.adj[s] >> r & 1) for s in reps])


def is_primitive(g: Graph) -> bool:
    """At least 4 vertices and only trivial modules."""
    if g.n < 4:
        return False
    return is_primitive_mask(g.adj, g.full)


def is_primitive_mask(adj, full: int) -> bool:
    if full.bit_count() < 4:
        return False
    vs = to_list(full)
    for i, a in enumerate(vs):
        for b in vs[i + 1:]:
            if module_closure(adj, (1 << a) | (1 << b), full) != full:
                return False
    return True
