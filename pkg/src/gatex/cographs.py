"""Cographs, pseudo-cographs and polar-cats.

Pseudo-cograph search, for a pivot v with G - v a cograph and G - v
disconnected (the slim case; the fat case is the same on the
complement): every split of V - v into two sides must be a union of
components.  With the components classified by how v sees them (none,
all, or part of the vertices), G[S + v] for a union S of components is
a cograph exactly when each G[C + v] is one and, if S holds a partially
seen component, every other component of S is unseen by v.  Otherwise
a path a - v - c - d through two components exists.  That turns the
bipartition search into a few cases.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .bits import from_iter, iter_bits, to_list
from .graph import Graph, co_components_mask, components_mask
from .modules import is_primitive_mask

SLIM = "slim"
FAT = "fat"


def is_cograph_mask(adj: Sequence[int], mask: int) -> bool:
    stack = [mask]
    while stack:
        m = stack.pop()
        if m & (m - 1) == 0:
            continue
        comps = components_mask(adj, m)
        if len(comps) > 1:
            stack.extend(comps)
            continue
        co = co_components_mask(adj, m)
        if len(co) > 1:
            stack.extend(co)
            continue
        return False
    return True


def is_cograph(g: Graph) -> bool:
    return is_cograph_mask(g.adj, g.full)


def cograph_cotree(g: Graph):
    """(network, labeling) of the cotree when g is a cograph, else None."""
    from .pvr import cotree_network
    if not is_cograph(g):
        return None
    return cotree_network(g)


def _co_adj(adj: Sequence[int], full: int) -> list[int]:
    return [full & ~a & ~(1 << u) for u, a in enumerate(adj)]


@dataclass(frozen=True)
class PseudoCographWitness:
    pivot: int
    side1: tuple
    side2: tuple
    flag: str  # "slim", "fat", or "trivial" for graphs with at most 2 vertices


def is_pseudo_cograph_witness(g: Graph, w: PseudoCographWitness) -> bool:
    """Check (P1)-(P3) directly."""
    if w.flag == "trivial":
        return g.n <= 2
    v = w.pivot
    a, b = from_iter(w.side1), from_iter(w.side2)
    if a & b != 1 << v or a | b != g.full:
        return False
    if a.bit_count() < 2 or b.bit_count() < 2:
        return False
    if not (is_cograph_mask(g.adj, a) and is_cograph_mask(g.adj, b)):
        return False
    a1, b1 = a & ~(1 << v), b & ~(1 << v)
    for x in iter_bits(a1):
        cross = g.adj[x] & b1
        if w.flag == SLIM and cross:
            return False
        if w.flag == FAT and cross != b1:
            return False
    return w.flag in (SLIM, FAT)


def _bipartitions(adj, v: int, comps: list[int]) -> Iterator[tuple[int, int]]:
    """Yield (A, B) unions of components such that G[A+v], G[B+v] are cographs."""
    nv = adj[v]
    partial, seen_all, unseen = [], [], []
    for c in comps:
        if not is_cograph_mask(adj, c | 1 << v):
            return
        s = nv & c
        if not s:
            unseen.append(c)
        elif s == c:
            seen_all.append(c)
        else:
            partial.append(c)
    if len(partial) > 2 or (len(partial) == 2 and seen_all):
        return
    if len(partial) == 2:
        fixed = [(partial[0], partial[1])]
    elif len(partial) == 1:
        fixed = [(partial[0], sum(seen_all))]
    else:
        fixed = None
    if fixed is not None:
        a0, b0 = fixed[0]
        k = len(unseen)
        for mask in range(1 << k):
            a = a0 + sum(unseen[i] for i in range(k) if mask >> i & 1)
            b = b0 + sum(unseen[i] for i in range(k) if not mask >> i & 1)
            if a and b:
                yield a, b
        return
    # no partial component: any split into two nonempty groups works
    k = len(comps)
    for mask in range(1, 1 << (k - 1)):
        a = sum(comps[i] for i in range(k) if mask >> i & 1)
        b = sum(comps[i] for i in range(k) if not mask >> i & 1)
        yield a, b


def pseudo_cograph_witnesses(g: Graph) -> Iterator[PseudoCographWitness]:
    """All witnesses up to the free placement documented in _bipartitions."""
    full = g.full
    co = None
    for v in range(g.n):
        rest = full & ~(1 << v)
        if not is_cograph_mask(g.adj, rest):
            continue
        comps = components_mask(g.adj, rest)
        if len(comps) > 1:
            for a, b in _bipartitions(g.adj, v, comps):
                yield PseudoCographWitness(v, tuple(to_list(a | 1 << v)),
                                           tuple(to_list(b | 1 << v)), SLIM)
            continue
        if co is None:
            co = _co_adj(g.adj, full)
        comps = components_mask(co, rest)
        if len(comps) > 1:
            for a, b in _bipartitions(co, v, comps):
                yield PseudoCographWitness(v, tuple(to_list(a | 1 << v)),
                                           tuple(to_list(b | 1 << v)), FAT)


def recognize_pseudo_cograph(g: Graph) -> PseudoCographWitness | None:
    if g.n <= 2:
        return PseudoCographWitness(0, tuple(range(g.n)), (0,), "trivial")
    for w in pseudo_cograph_witnesses(g):
        if not is_pseudo_cograph_witness(g, w):
            raise AssertionError(f"invalid pseudo-cograph witness {w}")
        return w
    return None


def is_pseudo_cograph(g: Graph) -> bool:
    return recognize_pseudo_cograph(g) is not None


def is_pseudo_cograph_mask(adj, full: int) -> bool:
    """Witness existence for G[full] without building witnesses."""
    if full.bit_count() <= 2:
        return True
    co = None
    for v in iter_bits(full):
        rest = full & ~(1 << v)
        if not is_cograph_mask(adj, rest):
            continue
        comps = components_mask(adj, rest)
        if len(comps) > 1:
            if next(_bipartitions(adj, v, comps), None) is not None:
                return True
            continue
        if co is None:
            co = [full & ~a & ~(1 << u) for u, a in enumerate(adj)]
        comps = components_mask(co, rest)
        if len(comps) > 1 and next(_bipartitions(co, v, comps), None) is not None:
            return True
    return False


# --- polar-cats ------------------------------------------------------------

@dataclass(frozen=True)
class PolarCatDecomposition:
    pivot: int
    Y: tuple
    Z: tuple
    flag: str

    @property
    def n(self) -> int:
        return len(self.Y) + len(self.Z) - 1

    def check(self) -> None:
        from .errors import GraphError
        v = self.pivot
        if self.flag not in (SLIM, FAT):
            raise GraphError(f"unknown flag {self.flag!r}")
        if len(self.Y) < 2 or len(self.Z) < 2:
            raise GraphError("both sides need at least two vertices")
        if self.Y[-1] != v or self.Z[-1] != v:
            raise GraphError("the pivot must close both orderings")
        if set(self.Y) & set(self.Z) != {v}:
            raise GraphError("sides must share exactly the pivot")
        if sorted(set(self.Y) | set(self.Z)) != list(range(self.n)):
            raise GraphError("sides must cover vertices 0..n-1 exactly once")

    def edges(self) -> list[tuple[int, int]]:
        """Edge set prescribed by the ordered sides and the flag."""
        want = 1 if self.flag == SLIM else 0  # parity of i that links y_i forward
        out = []
        for side in (self.Y, self.Z):
            for i in range(len(side)):
                if (i + 1) % 2 == want:
                    for j in range(i + 1, len(side)):
                        out.append((side[i], side[j]))
        if self.flag == FAT:
            for y in self.Y[:-1]:
                for z in self.Z[:-1]:
                    out.append((y, z))
        return out

    def graph(self) -> Graph:
        return Graph(self.n, self.edges())


def _slim_order(adj, side: int, v: int) -> list[int] | None:
    order = []
    rest = side
    vb = 1 << v
    step = 1
    while rest != vb:
        found = None
        for u in iter_bits(rest & ~vb):
            inner = adj[u] & rest
            if step % 2 == 1:
                if inner == rest & ~(1 << u):
                    found = u
                    break
            elif not inner:
                found = u
                break
        if found is None:
            return None
        order.append(found)
        rest &= ~(1 << found)
        step += 1
    order.append(v)
    return order


def recognize_polar_cat(g: Graph) -> PolarCatDecomposition | None:
    if g.n < 4 or not is_primitive_mask(g.adj, g.full):
        return None
    co = _co_adj(g.adj, g.full)
    for w in pseudo_cograph_witnesses(g):
        base = g.adj if w.flag == SLIM else co
        v = w.pivot
        y = _slim_order(base, from_iter(w.side1), v)
        z = _slim_order(base, from_iter(w.side2), v)
        if y is None or z is None:
            continue
        d = PolarCatDecomposition(v, tuple(y), tuple(z), w.flag)
        if d.graph() == g:
            return d
    return None


def is_polar_cat(g: Graph) -> bool:
    return recognize_polar_cat(g) is not None
