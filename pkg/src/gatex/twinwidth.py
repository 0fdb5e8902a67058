"""Trigraphs, width-1 contraction sequences for GaTEx graphs, and a referee.

A contraction merges two vertices; the survivor keeps the smaller index.
Sequences always name current vertices, so a replay needs no renaming
beyond "the larger index disappears".

The builder walks the MDT bottom-up.  When a node is reached each child
module has already been collapsed onto its smallest vertex, and since a
module is uniform to the outside, the collapsed child carries only black
edges.  Series and parallel nodes then merge twins.  A prime node is a
polar-cat on the child representatives and gets the two-step schedule:

1. shrink the Y side onto y1 (y3 into y1, then y4 into y2, repeat; a
   final y2 into y1);
2. merge z_{m-1}, ..., z_1 into v and finish with y1 and v.

Fat polar-cats use the same schedule: their complement, with the same
orderings, is slim, and contraction commutes with complementation up to
swapping black edges and non-edges, which leaves red edges alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bits import iter_bits
from .errors import GraphError, InvariantError
from .graph import Graph
from .modules import LEAF, PRIME, build_mdt
from .pvr import prime_decompositions


class Trigraph:
    """Black and red adjacency as bitmasks over the original indices."""

    __slots__ = ("alive", "black", "red", "_hist")

    def __init__(self, n: int, black, red=None, alive: int | None = None):
        self.black = list(black)
        self.red = list(red) if red is not None else [0] * n
        self.alive = alive if alive is not None else (1 << n) - 1
        self._hist = {}
        for u in iter_bits(self.alive):
            if self.black[u] & self.red[u]:
                raise GraphError(f"vertex {u} has an edge that is both black and red")
            d = self.red[u].bit_count()
            self._hist[d] = self._hist.get(d, 0) + 1

    @classmethod
    def from_graph(cls, g: Graph) -> "Trigraph":
        return cls(g.n, g.adj)

    def copy(self) -> "Trigraph":
        return Trigraph(len(self.black), self.black, self.red, self.alive)

    @property
    def vertices(self) -> list[int]:
        return list(iter_bits(self.alive))

    def __len__(self):
        return self.alive.bit_count()

    def red_degree(self, u: int) -> int:
        return self.red[u].bit_count()

    def max_red_degree(self) -> int:
        return max((d for d, c in self._hist.items() if c), default=0)

    def red_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in iter_bits(self.alive) for v in iter_bits(self.red[u]) if u < v]

    def _bump(self, d: int, k: int) -> None:
        self._hist[d] = self._hist.get(d, 0) + k

    def contract_inplace(self, u: int, v: int) -> int:
        """Merge u and v; returns the survivor (the smaller index)."""
        if u == v:
            raise GraphError("cannot contract a vertex with itself")
        for x in (u, v):
            if x < 0 or not self.alive >> x & 1:
                raise GraphError(f"vertex {x} is not present")
        w, gone = min(u, v), max(u, v)
        pair = 1 << u | 1 << v
        bu, bv = self.black[u] & ~pair, self.black[v] & ~pair
        ru, rv = self.red[u] & ~pair, self.red[v] & ~pair
        black_new = bu & bv
        red_new = (bu | bv | ru | rv) & ~black_new
        touched = bu | bv | ru | rv
        self._bump(self.red[u].bit_count(), -1)
        self._bump(self.red[v].bit_count(), -1)
        wb, gb = 1 << w, 1 << gone
        for x in iter_bits(touched):
            before = self.red[x].bit_count()
            self.black[x] &= ~pair
            self.red[x] &= ~pair
            if black_new >> x & 1:
                self.black[x] |= wb
            else:
                self.red[x] |= wb
            after = self.red[x].bit_count()
            if after != before:
                self._bump(before, -1)
                self._bump(after, 1)
        self.black[w], self.red[w] = black_new, red_new
        self.black[gone] = self.red[gone] = 0
        self.alive &= ~gb
        self._bump(red_new.bit_count(), 1)
        return w


def contract(t: Trigraph, u: int, v: int) -> Trigraph:
    out = t.copy()
    out.contract_inplace(u, v)
    return out


@dataclass
class ContractionSequence:
    pairs: list = field(default_factory=list)
    width: int = 1

    def __len__(self):
        return len(self.pairs)

    def to_json(self, max_red=None) -> list[dict]:
        out = []
        for k, (u, v) in enumerate(self.pairs):
            d = {"step": k + 1, "merge": [u, v]}
            if max_red is not None:
                d["max_red_after"] = max_red[k]
            out.append(d)
        return out

    @classmethod
    def from_json(cls, data, width: int = 1) -> "ContractionSequence":
        try:
            pairs = [tuple(d["merge"]) for d in data]
        except (TypeError, KeyError) as exc:
            raise GraphError(f"malformed sequence: {exc}") from None
        return cls(pairs, width)


def polar_cat_schedule(Y, Z) -> list[tuple[int, int]]:
    """Merges (into, from) on quotient vertices; v = Y[-1] = Z[-1]."""
    v = Y[-1]
    rest = list(Y[:-1])
    out = []
    while len(rest) >= 3:
        out.append((rest[0], rest.pop(2)))
        if len(rest) >= 3:
            out.append((rest[1], rest.pop(2)))
    if len(rest) == 2:
        out.append((rest[0], rest.pop(1)))
    for z in reversed(Z[:-1]):
        out.append((v, z))
    out.append((rest[0], v))
    return out


def build_one_contraction_sequence(g: Graph, verify: bool = True) -> ContractionSequence:
    """Width-1 sequence for a GaTEx graph (width 0 when g is a cograph)."""
    mdt = build_mdt(g)
    decomps, failing = prime_decompositions(mdt)
    if failing is not None:
        from .errors import NotGatexError
        from .recognition import GatexVerdict
        raise NotGatexError(GatexVerdict(False, "failing_module",
                                         failing_module=failing.vertices))
    pairs = []
    rep = {}
    for x in mdt.postorder():
        if x.label == LEAF:
            rep[id(x)] = x.vertex
            continue
        reps = [rep[id(c)] for c in x.children]
        if x.label != PRIME:
            order = sorted(reps)
            for r in order[1:]:
                pairs.append((order[0], r))
            rep[id(x)] = order[0]
            continue
        d = decomps[id(x)]
        name = list(reps)  # current name of each quotient vertex
        for a, b in polar_cat_schedule(d.Y, d.Z):
            u, w = name[a], name[b]
            pairs.append((u, w))
            s = min(u, w)
            for i, nm in enumerate(name):
                if nm == u or nm == w:
                    name[i] = s
        rep[id(x)] = name[0]
    width = 0 if not decomps else 1
    seq = ContractionSequence(pairs, width)
    if verify:
        t = Trigraph.from_graph(g)
        for u, v in pairs:
            t.contract_inplace(u, v)
            if t.max_red_degree() > width:
                raise InvariantError(f"contraction {u},{v} exceeds width {width}")
        if len(t) != min(g.n, 1):
            raise InvariantError("sequence does not end in a single vertex")
    return seq


# --- referee ---------------------------------------------------------------

@dataclass
class Verdict:
    ok: bool
    max_red: list = field(default_factory=list)  # max red degree after each step
    violation: str | None = None
    step: int | None = None

    @property
    def attained(self) -> int:
        return max(self.max_red, default=0)

    def to_json(self) -> dict:
        return {"ok": self.ok, "violation": self.violation, "step": self.step,
                "max_red_attained": self.attained, "max_red_after": self.max_red}


def verify_sequence(g: Graph, seq, d: int) -> Verdict:
    """Replay seq on the all-black trigraph of g with plain sets.

    Deliberately shares nothing with Trigraph so that it can referee the
    builder.
    """
    pairs = seq.pairs if isinstance(seq, ContractionSequence) else list(seq)
    black = {u: set(g.neighbors(u)) for u in range(g.n)}
    red = {u: set() for u in range(g.n)}
    history = []
    for k, pair in enumerate(pairs, 1):
        try:
            u, v = pair
        except (TypeError, ValueError):
            return Verdict(False, history, f"step {k}: malformed pair {pair!r}", k)
        if not isinstance(u, int) or not isinstance(v, int):
            return Verdict(False, history, f"step {k}: non-integer vertex", k)
        if u == v:
            return Verdict(False, history, f"step {k}: merges {u} with itself", k)
        for x in (u, v):
            if x not in black:
                return Verdict(False, history, f"step {k}: vertex {x} is dead or unknown", k)
        keep = min(u, v)
        others = (black[u] | black[v] | red[u] | red[v]) - {u, v}
        new_black = (black[u] & black[v]) - {u, v}
        new_red = others - new_black
        for x in (u, v):
            for y in black.pop(x):
                if y not in (u, v):
                    black[y].discard(x)
            for y in red.pop(x):
                if y not in (u, v):
                    red[y].discard(x)
        black[keep], red[keep] = new_black, new_red
        for y in new_black:
            black[y].add(keep)
        for y in new_red:
            red[y].add(keep)
        top = max(len(r) for r in red.values())
        history.append(top)
        if top > d:
            return Verdict(False, history, f"step {k}: red degree {top} exceeds {d}", k)
    if g.n and len(black) != 1:
        return Verdict(False, history,
                       f"sequence ends with {len(black)} vertices instead of 1", None)
    return Verdict(True, history)


def twin_width_upper_bound(g: Graph) -> int:
    return build_one_contraction_sequence(g).width
