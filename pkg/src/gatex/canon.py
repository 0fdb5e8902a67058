"""Canonical labelling by colour refinement plus individualization.

The search tree branches on the first smallest non-singleton cell of an
equitable ordered partition.  Two prunings keep it small:

* twins (equal open or closed neighbourhoods) in the branching cell are
  interchangeable, so only one per twin class is tried;
* automorphisms found at leaves with equal codes prune branches whose
  vertex lies in the orbit of an explored one (using only generators
  that fix the current prefix pointwise).

The certificate is the largest adjacency code over all leaves.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bits import iter_bits
from .graph import Graph


@dataclass(frozen=True, order=True)
class CanonicalForm:
    n: int
    edges: tuple[tuple[int, int], ...]

    def graph(self) -> Graph:
        return Graph(self.n, self.edges)


def _refine(adj, cells):
    while True:
        masks = []
        for cell in cells:
            m = 0
            for v in cell:
                m |= 1 << v
            masks.append(m)
        out = []
        split = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups = {}
            for v in cell:
                a = adj[v]
                key = tuple((a & m).bit_count() for m in masks)
                groups.setdefault(key, []).append(v)
            if len(groups) == 1:
                out.append(cell)
            else:
                split = True
                for key in sorted(groups):
                    out.append(groups[key])
        cells = out
        if not split:
            return cells


def _orbit_roots(gens, prefix, n):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        if any(g[p] != p for p in prefix):
            continue
        for x in range(n):
            a, b = find(x), find(g[x])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(x) for x in range(n)]


def canonical_labeling(g: Graph) -> tuple[list[int], int]:
    """Return (lab, code): lab[i] is the vertex placed at position i."""
    n, adj = g.n, g.adj
    open_key = adj
    closed_key = [a | (1 << v) for v, a in enumerate(adj)]
    best_code = -1
    best_lab = None
    gens = []

    def twins(u, w):
        return open_key[u] == open_key[w] or closed_key[u] == closed_key[w]

    def leaf(cells):
        nonlocal best_code, best_lab
        lab = [c[0] for c in cells]
        pos = [0] * n
        for i, v in enumerate(lab):
            pos[v] = i
        code = 0
        for v in lab:
            row = 0
            for u in iter_bits(adj[v]):
                row |= 1 << pos[u]
            code = (code << n) | row
        if code > best_code:
            best_code, best_lab = code, lab
        elif code == best_code:
            perm = [0] * n
            for i in range(n):
                perm[best_lab[i]] = lab[i]
            gens.append(perm)

    def descend(cells, prefix):
        cells = _refine(adj, cells)
        if len(cells) == n:
            leaf(cells)
            return
        ti = min((i for i, c in enumerate(cells) if len(c) > 1),
                 key=lambda i: (len(cells[i]), i))
        target = cells[ti]
        tried = []
        seen_gens = -1
        roots = None
        for w in target:
            if any(twins(w, u) for u in tried):
                continue
            if gens:
                if seen_gens != len(gens):
                    roots = _orbit_roots(gens, prefix, n)
                    seen_gens = len(gens)
                if any(roots[w] == roots[u] for u in tried):
                    continue
            tried.append(w)
            rest = [v for v in target if v != w]
            descend(cells[:ti] + [[w], rest] + cells[ti + 1:], prefix + [w])

    descend([list(range(n))], [])
    return best_lab, best_code


def canonical_form(g: Graph) -> CanonicalForm:
    lab, _ = canonical_labeling(g)
    pos = [0] * g.n
    for i, v in enumerate(lab):
        pos[v] = i
    edges = sorted(tuple(sorted((pos[u], pos[v]))) for u, v in g.edges)
    return CanonicalForm(g.n, tuple(edges))


def canonical_code(g: Graph) -> tuple[int, int]:
    """Cheaper hashable certificate: (n, adjacency code)."""
    return g.n, canonical_labeling(g)[1]


def canonical_graph(g: Graph) -> Graph:
    """g relabelled into its canonical labelling."""
    lab, _ = canonical_labeling(g)
    pos = [0] * g.n
    for i, v in enumerate(lab):
        pos[v] = i
    masks = [0] * g.n
    for v in range(g.n):
        m = 0
        for u in iter_bits(g.adj[v]):
            m |= 1 << pos[u]
        masks[pos[v]] = m
    return Graph.from_masks(masks)


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.m == h.m and canonical_code(g) == canonical_code(h)
