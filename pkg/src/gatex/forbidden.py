"""Graph enumeration and mining of the minimal forbidden subgraphs.

Enumeration grows graphs one vertex at a time.  Every graph on n
vertices arises from a graph on n-1 vertices by adding a vertex of
minimum degree, so only neighbourhoods that keep the new vertex at
minimum degree are tried; duplicates are removed by canonical code.
"""

from __future__ import annotations

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib import resources
from itertools import combinations
from pathlib import Path

from .canon import CanonicalForm, canonical_form, canonical_labeling
from .cographs import is_pseudo_cograph_mask
from .errors import GraphError
from .graph import Graph, complement, find_induced_embedding
from .graph6 import graph6_decode, graph6_encode
from .modules import is_primitive_mask

log = logging.getLogger(__name__)

GRAPH_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044, 8: 12346, 9: 274668}
MAX_ENUM = 9

_levels: dict[int, list[Graph]] = {1: [Graph(1)]}


def _relabel_to(adj, lab):
    n = len(lab)
    pos = [0] * n
    for i, v in enumerate(lab):
        pos[v] = i
    out = [0] * n
    for v in range(n):
        m = 0
        a = adj[v]
        while a:
            low = a & -a
            m |= 1 << pos[low.bit_length() - 1]
            a ^= low
        out[pos[v]] = m
    return out


def _children(parent: Graph) -> list[tuple[int, tuple]]:
    """Canonical (code, masks) for every min-degree extension of parent."""
    k = parent.n
    degs = [parent.degree(u) for u in range(k)]
    top = min(degs) + 1
    out = []
    for s in range(0, top + 1):
        for nb in combinations(range(k), s):
            sel = set(nb)
            if any(degs[u] < s for u in range(k) if u not in sel):
                continue
            if any(degs[u] + 1 < s for u in sel):
                continue
            mask = 0
            for u in nb:
                mask |= 1 << u
            adj = [a | (1 << k if u in sel else 0) for u, a in enumerate(parent.adj)]
            adj.append(mask)
            g = Graph.from_masks(adj)
            lab, code = canonical_labeling(g)
            out.append((code, lab, adj))
    return out


def enumerate_graphs(n: int) -> list[Graph]:
    """One canonical representative per isomorphism class on n vertices."""
    if not 1 <= n <= MAX_ENUM:
        raise GraphError(f"enumeration supports 1 <= n <= {MAX_ENUM}")
    for k in range(2, n + 1):
        if k in _levels:
            continue
        seen = {}
        for parent in _levels[k - 1]:
            for code, lab, adj in _children(parent):
                if code not in seen:
                    seen[code] = Graph.from_masks(_relabel_to(adj, lab))
        _levels[k] = [seen[c] for c in sorted(seen, reverse=True)]
        log.info("enumerated %d graphs on %d vertices", len(_levels[k]), k)
    return _levels[n]


def iter_graphs(n: int):
    yield from enumerate_graphs(n)


# --- catalog --------------------------------------------------------------

@dataclass
class CatalogEntry:
    id: int
    graph: Graph
    form: CanonicalForm
    complement_partner_id: int | None = None
    self_complementary: bool = False

    @property
    def n(self) -> int:
        return self.graph.n


class ForbiddenCatalog:
    def __init__(self, graphs, provenance: str, scanned: dict | None = None):
        forms = sorted({canonical_form(g) for g in graphs})
        self.entries = [CatalogEntry(i, f.graph(), f) for i, f in enumerate(forms)]
        index = {e.form: e.id for e in self.entries}
        for e in self.entries:
            partner = index.get(canonical_form(complement(e.graph)))
            e.complement_partner_id = partner
            e.self_complementary = partner == e.id
        self.provenance = provenance
        self.scanned = dict(scanned or {})

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i) -> CatalogEntry:
        return self.entries[i]

    def sizes(self) -> dict[int, int]:
        out = {}
        for e in self.entries:
            out[e.n] = out.get(e.n, 0) + 1
        return out

    def find(self, g: Graph) -> CatalogEntry | None:
        f = canonical_form(g)
        for e in self.entries:
            if e.form == f:
                return e
        return None

    def manifest(self) -> list[dict]:
        return [{"id": e.id, "n": e.n, "edges": [list(x) for x in e.form.edges],
                 "graph6": graph6_encode(e.graph),
                 "complement_partner_id": e.complement_partner_id,
                 "self_complementary": e.self_complementary} for e in self.entries]

    def to_json(self) -> dict:
        return {"provenance": self.provenance,
                "scanned": {str(k): v for k, v in sorted(self.scanned.items())},
                "scanned_total": sum(self.scanned.values()),
                "size": len(self),
                "catalog": self.manifest()}

    def graph6_lines(self) -> list[str]:
        return [graph6_encode(e.graph) for e in self.entries]

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=1) + "\n")

    @classmethod
    def from_json(cls, data: dict, provenance: str = "loaded") -> "ForbiddenCatalog":
        graphs = [graph6_decode(d["graph6"]) for d in data["catalog"]]
        for g, d in zip(graphs, data["catalog"]):
            if sorted(map(tuple, d["edges"])) != sorted(g.edges):
                raise GraphError(f"catalog entry {d['id']} is inconsistent")
        scanned = {int(k): v for k, v in data.get("scanned", {}).items()}
        return cls(graphs, provenance, scanned)


_shipped = None


def load_catalog() -> ForbiddenCatalog:
    """The catalog shipped with the package (produced by mine_forbidden(5, 8))."""
    global _shipped
    if _shipped is None:
        text = resources.files(__package__).joinpath("data/forbidden.json").read_text()
        _shipped = ForbiddenCatalog.from_json(json.loads(text))
    return _shipped


# --- mining -----------------------------------------------------------------

def is_candidate(g: Graph) -> bool:
    """Primitive and not a pseudo-cograph."""
    return is_primitive_mask(g.adj, g.full) and not is_pseudo_cograph_mask(g.adj, g.full)


def _keep(g: Graph, smaller) -> bool:
    if not is_candidate(g):
        return False
    return all(find_induced_embedding(g, h) is None for h in smaller)


def _keep_chunk(args):
    graphs, smaller = args
    return [_keep(g, smaller) for g in graphs]


def filter_level(graphs, smaller, jobs: int = 1) -> list[Graph]:
    if jobs <= 1 or len(graphs) < 2000:
        return [g for g in graphs if _keep(g, smaller)]
    step = max(500, len(graphs) // (jobs * 8))
    chunks = [(graphs[i:i + step], smaller) for i in range(0, len(graphs), step)]
    keep = []
    with ProcessPoolExecutor(jobs) as pool:
        for flags in pool.map(_keep_chunk, chunks):
            keep.extend(flags)
    return [g for g, k in zip(graphs, keep) if k]


def mine_forbidden(min_n: int = 5, max_n: int = 8, jobs: int = 1,
                   source: dict | None = None) -> ForbiddenCatalog:
    """Minimal graphs that are primitive and not pseudo-cographs.

    ``source`` may map n to an explicit list of graphs (e.g. read from a
    graph6 file); otherwise the built-in enumerator is used.
    """
    if not 5 <= min_n <= max_n <= MAX_ENUM:
        raise GraphError(f"mining range must satisfy 5 <= min <= max <= {MAX_ENUM}")
    found: list[Graph] = []
    scanned = {}
    for n in range(min_n, max_n + 1):
        graphs = source[n] if source is not None else enumerate_graphs(n)
        scanned[n] = len(graphs)
        new = filter_level(list(graphs), list(found), jobs)
        log.info("n=%d: scanned %d graphs, %d new forbidden", n, len(graphs), len(new))
        found.extend(new)
    prov = "mined" if source is None else "mined from supplied graph lists"
    return ForbiddenCatalog(found, prov, scanned)


def read_graph_lists(lines) -> dict[int, list[Graph]]:
    """Group graph6 records by vertex count, rejecting isomorphic duplicates."""
    out: dict[int, list[Graph]] = {}
    seen = set()
    for k, line in enumerate(lines, 1):
        line = line.strip()
        if not line:
            continue
        g = graph6_decode(line)
        key = (g.n, canonical_labeling(g)[1])
        if key in seen:
            raise GraphError(f"line {k}: duplicate isomorphism class")
        seen.add(key)
        out.setdefault(g.n, []).append(g)
    for n, graphs in out.items():
        if n in GRAPH_COUNTS and len(graphs) != GRAPH_COUNTS[n]:
            raise GraphError(f"{len(graphs)} graphs on {n} vertices, expected {GRAPH_COUNTS[n]}")
    return out
