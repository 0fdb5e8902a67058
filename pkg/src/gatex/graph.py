"""Simple undirected graphs on vertices 0..n-1.

Adjacency is stored as one int bitmask per vertex, so set operations on
neighbourhoods are single big-int operations.  Graph objects are
immutable and hashable.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .bits import from_iter, iter_bits, to_list
from .errors import GraphError, SizeLimitError


class Graph:
    __slots__ = ("n", "adj", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 1:
            raise GraphError("a graph needs at least one vertex")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if adj[u] >> v & 1:
                raise GraphError(f"edge ({u}, {v}) listed twice")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self.adj = tuple(adj)
        self._hash = None

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> Graph:
        """Build from adjacency bitmasks (assumed symmetric, loop-free)."""
        g = cls.__new__(cls)
        if not masks:
            raise GraphError("a graph needs at least one vertex")
        g.n = len(masks)
        g.adj = tuple(masks)
        g._hash = None
        return g

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u, a in enumerate(self.adj):
            for v in iter_bits(a >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    @property
    def m(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, u: int) -> list[int]:
        return to_list(self.adj[u])

    def degree(self, u: int) -> int:
        return self.adj[u].bit_count()

    def __eq__(self, other):
        return isinstance(other, Graph) and self.adj == other.adj

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.adj)
        return self._hash

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges})"

    def check(self):
        """Raise GraphError unless the masks describe a simple graph."""
        full = self.full
        for u, a in enumerate(self.adj):
            if a & ~full or a >> u & 1:
                raise GraphError(f"bad adjacency mask at vertex {u}")
            for v in iter_bits(a):
                if not self.adj[v] >> u & 1:
                    raise GraphError(f"asymmetric edge ({u}, {v})")


def _check_subset(g: Graph, w) -> list[int]:
    w = sorted(set(w))
    if not w:
        raise GraphError("vertex subset must be nonempty")
    if w[0] < 0 or w[-1] >= g.n:
        raise GraphError("vertex index out of range")
    return w


def complement(g: Graph) -> Graph:
    full = g.full
    return Graph.from_masks([full & ~a & ~(1 << u) for u, a in enumerate(g.adj)])


def induced_subgraph(g: Graph, w) -> tuple[Graph, list[int]]:
    """Return G[w] reindexed 0..|w|-1 and the list mapping new index -> old."""
    w = _check_subset(g, w)
    pos = {v: i for i, v in enumerate(w)}
    masks = []
    for v in w:
        masks.append(from_iter(pos[u] for u in iter_bits(g.adj[v]) if u in pos))
    return Graph.from_masks(masks), w


def induced_mask(g: Graph, mask: int) -> Graph:
    """G[mask] reindexed by increasing original index."""
    return induced_subgraph(g, to_list(mask))[0]


def compose(g: Graph, h: Graph, mode: str) -> Graph:
    """Disjoint union ("union") or join ("join") of g and h; h is shifted by g.n."""
    if mode not in ("union", "join"):
        raise GraphError(f"unknown compose mode {mode!r}")
    k = g.n
    gm, hm = g.full, h.full << k
    masks = [a | (hm if mode == "join" else 0) for a in g.adj]
    masks += [(a << k) | (gm if mode == "join" else 0) for a in h.adj]
    return Graph.from_masks(masks)


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex v renamed perm[v]."""
    masks = [0] * g.n
    for u, a in enumerate(g.adj):
        masks[perm[u]] = from_iter(perm[v] for v in iter_bits(a))
    return Graph.from_masks(masks)


def is_connected_mask(adj: Sequence[int], mask: int) -> bool:
    if not mask:
        return True
    seen = mask & -mask
    frontier = seen
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= adj[v]
        nxt &= mask & ~seen
        seen |= nxt
        frontier = nxt
    return seen == mask


def components_mask(adj: Sequence[int], mask: int) -> list[int]:
    """Connected components of G[mask], ordered by smallest vertex."""
    comps = []
    rest = mask
    while rest:
        seen = rest & -rest
        frontier = seen
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= adj[v]
            nxt &= rest & ~seen
            seen |= nxt
            frontier = nxt
        comps.append(seen)
        rest &= ~seen
    return comps


def co_components_mask(adj: Sequence[int], mask: int) -> list[int]:
    """Connected components of the complement of G[mask]."""
    comps = []
    rest = mask
    while rest:
        seen = rest & -rest
        frontier = seen
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= ~adj[v]
            nxt &= rest & ~seen
            seen |= nxt
            frontier = nxt
        comps.append(seen)
        rest &= ~seen
    return comps


def is_connected(g: Graph) -> bool:
    return is_connected_mask(g.adj, g.full)


# --- named graphs -------------------------------------------------------

def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def empty_graph(n: int) -> Graph:
    return Graph(n)


def gen_schmerl(r: int) -> Graph:
    """Critical-primitive graph on a_1..a_r (0..r-1) and b_1..b_r (r..2r-1).

    a_i is adjacent to b_j exactly when i >= j; no other edges.
    """
    if r < 2:
        raise GraphError("r must be at least 2")
    return Graph(2 * r, [(i, r + j) for i in range(r) for j in range(r) if i >= j])


# --- induced subgraph search -------------------------------------------

def _search_order(pattern: Graph) -> list[int]:
    k = pattern.n
    order = []
    chosen = 0
    left = set(range(k))
    while left:
        # prefer vertices tied to the chosen ones, then high degree
        v = max(left, key=lambda x: ((pattern.adj[x] & chosen).bit_count(),
                                     pattern.degree(x), -x))
        order.append(v)
        chosen |= 1 << v
        left.discard(v)
    return order


def find_induced_embedding(host: Graph, pattern: Graph) -> list[int] | None:
    """Injective map (list indexed by pattern vertex) realizing pattern as
    an induced subgraph of host, or None."""
    k, n = pattern.n, host.n
    if k > n:
        return None
    order = _search_order(pattern)
    hadj = host.adj
    full = host.full
    degs = [a.bit_count() for a in hadj]
    # static filter: degree and non-degree must be large enough
    allowed = []
    for p in order:
        d = pattern.degree(p)
        nd = k - 1 - d
        allowed.append(from_iter(x for x in range(n)
                                 if degs[x] >= d and n - 1 - degs[x] >= nd))
    links = []  # for each step: list of (earlier step, adjacent?)
    for i, p in enumerate(order):
        links.append([(j, pattern.has_edge(p, order[j])) for j in range(i)])
    image = [0] * k

    def rec(i, used):
        if i == k:
            return True
        cand = allowed[i] & ~used
        for j, adjacent in links[i]:
            h = image[j]
            cand &= hadj[h] if adjacent else full & ~hadj[h] & ~(1 << h)
            if not cand:
                return False
        for x in iter_bits(cand):
            image[i] = x
            if rec(i + 1, used | 1 << x):
                return True
        return False

    if not rec(0, 0):
        return None
    emb = [0] * k
    for i, p in enumerate(order):
        emb[p] = image[i]
    if not is_induced_embedding(host, pattern, emb):
        raise AssertionError("embedding search produced an invalid map")
    return emb


def is_induced_embedding(host: Graph, pattern: Graph, emb: Sequence[int]) -> bool:
    if len(emb) != pattern.n or len(set(emb)) != pattern.n:
        return False
    if any(not 0 <= x < host.n for x in emb):
        return False
    for u, v in combinations(range(pattern.n), 2):
        if pattern.has_edge(u, v) != host.has_edge(emb[u], emb[v]):
            return False
    return True


# --- exhaustive oracles --------------------------------------------------

BRUTE_FORCE_LIMIT = 20


def _max_clique(adj: Sequence[int], cand: int) -> int:
    best = 0

    def expand(size, cand):
        nonlocal best
        if not cand:
            best = max(best, size)
            return
        if size + cand.bit_count() <= best:
            return
        while cand:
            if size + cand.bit_count() <= best:
                return
            v = cand.bit_length() - 1
            cand &= ~(1 << v)
            expand(size + 1, cand & adj[v])

    expand(0, cand)
    return best


def _colorable(adj: Sequence[int], n: int, k: int) -> bool:
    colors = [-1] * n
    order = sorted(range(n), key=lambda v: -adj[v].bit_count())

    def rec(i):
        if i == n:
            return True
        v = order[i]
        used = {colors[u] for u in iter_bits(adj[v]) if colors[u] >= 0}
        top = max(colors) + 1 if i else 0
        for c in range(min(k, top + 1)):
            if c not in used:
                colors[v] = c
                if rec(i + 1):
                    return True
                colors[v] = -1
        return False

    return rec(0)


def brute_force_invariants(g: Graph) -> dict[str, int]:
    """Exact clique number, independence number and chromatic number."""
    if g.n > BRUTE_FORCE_LIMIT:
        raise SizeLimitError(f"brute force limited to n <= {BRUTE_FORCE_LIMIT}")
    omega = _max_clique(g.adj, g.full)
    alpha = _max_clique(complement(g).adj, g.full)
    chi = omega
    while not _colorable(g.adj, g.n, chi):
        chi += 1
    return {"omega": omega, "alpha": alpha, "chi": chi}
