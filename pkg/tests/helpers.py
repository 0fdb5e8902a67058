"""Brute-force oracles and seeded corpora shared by the test modules.

Nothing here calls the library's decomposition or recognition code; the
oracles work directly from definitions over vertex subsets.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import combinations

from gatex.cographs import FAT, SLIM, PolarCatDecomposition
from gatex.graph import Graph, complete_graph, empty_graph
from gatex.network import explain, random_galled_tree


def mask_of(vs) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def induced_edges(g: Graph, vs):
    vs = list(vs)
    return [(a, b) for a, b in combinations(vs, 2) if g.has_edge(a, b)]


def brute_is_p4_free(g: Graph, vs) -> bool:
    for quad in combinations(vs, 4):
        es = induced_edges(g, quad)
        if len(es) != 3:
            continue
        deg = {v: 0 for v in quad}
        for a, b in es:
            deg[a] += 1
            deg[b] += 1
        if sorted(deg.values()) == [1, 1, 2, 2]:
            # three edges with degrees 1,1,2,2 is P4 (a triangle has 2,2,2)
            return False
    return True


def brute_is_module(g: Graph, s: int) -> bool:
    for x in range(g.n):
        if s >> x & 1:
            continue
        seen = {g.has_edge(x, y) for y in range(g.n) if s >> y & 1}
        if len(seen) > 1:
            return False
    return True


def brute_modules(g: Graph) -> list[int]:
    return [s for s in range(1, 1 << g.n) if brute_is_module(g, s)]


def brute_strong_modules(g: Graph) -> set[int]:
    mods = brute_modules(g)
    out = set()
    for m in mods:
        if all(m & o == 0 or m & o == m or m & o == o for o in mods):
            out.add(m)
    return out


def brute_is_primitive(g: Graph) -> bool:
    if g.n < 4:
        return False
    full = (1 << g.n) - 1
    return all(s & (s - 1) == 0 or s == full for s in brute_modules(g))


def brute_is_pseudo_cograph(g: Graph) -> bool:
    """Straight from the definition: try every pivot and every split."""
    n = g.n
    if n <= 2:
        return True
    for v in range(n):
        rest = [u for u in range(n) if u != v]
        for r in range(1, len(rest)):
            for a in combinations(rest, r):
                if rest[0] not in a:
                    continue  # each unordered split once
                b = [u for u in rest if u not in a]
                if not (brute_is_p4_free(g, list(a) + [v]) and brute_is_p4_free(g, b + [v])):
                    continue
                cross = [g.has_edge(x, y) for x in a for y in b]
                if not any(cross) or all(cross):
                    return True
    return False


def brute_quotient(g: Graph, node: int, strong: set[int]) -> tuple[Graph, list[int]]:
    """Quotient of the strong module node on its maximal strong submodules."""
    kids = [m for m in strong if m != node and m & node == m]
    maximal = [m for m in kids if not any(o != m and o & m == m for o in kids)]
    maximal.sort(key=lambda m: (m & -m))
    reps = [(m & -m).bit_length() - 1 for m in maximal]
    edges = [(i, j) for i, j in combinations(range(len(reps)), 2) if g.has_edge(reps[i], reps[j])]
    return Graph(len(reps), edges), maximal


def brute_is_gatex(g: Graph) -> bool:
    """Every prime strong module has a pseudo-cograph quotient."""
    strong = brute_strong_modules(g)
    for node in strong:
        if node & (node - 1) == 0:
            continue
        q, _ = brute_quotient(g, node, strong)
        if brute_is_primitive(q) and not brute_is_pseudo_cograph(q):
            return False
    return True


def induced_cycle_lengths(g: Graph, min_len: int = 5) -> set[int]:
    """Lengths of induced cycles with at least min_len vertices."""
    found = set()
    for k in range(min_len, g.n + 1):
        for vs in combinations(range(g.n), k):
            es = induced_edges(g, vs)
            if len(es) != k:
                continue
            deg = {v: 0 for v in vs}
            for a, b in es:
                deg[a] += 1
                deg[b] += 1
            if any(d != 2 for d in deg.values()):
                continue
            # 2-regular: a single cycle iff connected
            seen = {vs[0]}
            stack = [vs[0]]
            while stack:
                x = stack.pop()
                for a, b in es:
                    for p, q in ((a, b), (b, a)):
                        if p == x and q not in seen:
                            seen.add(q)
                            stack.append(q)
            if len(seen) == k:
                found.add(k)
    return found


# --- corpora -------------------------------------------------------------------

def relabel_random(g: Graph, rng: random.Random) -> Graph:
    perm = list(range(g.n))
    rng.shuffle(perm)
    return Graph(g.n, [(perm[a], perm[b]) for a, b in g.edges])


def substitute(q: Graph, parts) -> Graph:
    """Replace vertex i of q by the graph parts[i]."""
    offs, edges, n = [], [], 0
    for h in parts:
        offs.append(n)
        edges += [(a + n, b + n) for a, b in h.edges]
        n += h.n
    for i, j in q.edges:
        edges += [(offs[i] + a, offs[j] + b) for a in range(parts[i].n) for b in range(parts[j].n)]
    return Graph(n, edges)


def random_substitution_graph(rng: random.Random, n: int) -> Graph:
    """Nested substitution of random primitive polar-cats, joins and unions."""
    if n == 1:
        return Graph(1)
    if n < 4 or rng.random() < 0.3:
        k = rng.randint(2, min(n, 4))
        q = complete_graph(k) if rng.random() < 0.5 else empty_graph(k)
    else:
        k = rng.randint(4, min(n, 9))
        while True:
            q = PolarCatDecomposition(*random_polar_cat_parts(rng, k, rng.choice((SLIM, FAT)))).graph()
            if brute_is_primitive(q):
                break
    cuts = sorted(rng.sample(range(1, n), k - 1))
    sizes = [b - a for a, b in zip([0] + cuts, cuts + [n])]
    return substitute(q, [random_substitution_graph(rng, m) for m in sizes])


@lru_cache(maxsize=None)
def gatex_corpus(count: int = 1000, max_n: int = 12, seed: int = 0) -> tuple[Graph, ...]:
    """GaTEx graphs with vertices shuffled: even entries are explained by seeded
    random labeled galled-trees, odd ones built by nested substitution."""
    rng = random.Random(seed)
    out = []
    for k in range(count):
        n = rng.randint(1, max_n)
        if k % 2:
            g = random_substitution_graph(rng, n)
        else:
            net, labels = random_galled_tree(n, seed * 100003 + k, cycle_prob=rng.choice((0.2, 0.5, 0.8)))
            g = explain(net, labels)
        out.append(relabel_random(g, rng))
    return tuple(out)


@lru_cache(maxsize=None)
def random_graph_corpus(count: int = 10000, max_n: int = 14, seed: int = 0) -> tuple[Graph, ...]:
    """Half G(n, p) with p uniform, half GaTEx graphs with one or two edges toggled.

    Plain G(n, p) on 14 vertices is almost never GaTEx, so the perturbed
    half keeps both verdicts well represented.
    """
    rng = random.Random(seed)
    out = []
    for k in range(count):
        n = rng.randint(1, max_n)
        if k % 2 == 0:
            p = rng.random()
            g = Graph(n, [(a, b) for a, b in combinations(range(n), 2) if rng.random() < p])
        else:
            net, labels = random_galled_tree(n, seed * 7919 + k)
            g = explain(net, labels)
            es = set(g.edges)
            if n >= 2:
                for _ in range(rng.randint(1, 2)):
                    a, b = sorted(rng.sample(range(n), 2))
                    es ^= {(a, b)}
            g = relabel_random(Graph(n, sorted(es)), rng)
        out.append(g)
    return tuple(out)


def random_polar_cat_parts(rng: random.Random, n: int, flag: str):
    """Random (pivot, Y, Z, flag) with |Y|, |Z| >= 2 and |Y| + |Z| - 1 = n."""
    ly = rng.randint(2, n - 1)
    lz = n + 1 - ly
    perm = list(range(n))
    rng.shuffle(perm)
    v = perm[0]
    y = tuple(perm[1:ly]) + (v,)
    z = tuple(perm[ly:ly + lz - 1]) + (v,)
    return v, y, z, flag
