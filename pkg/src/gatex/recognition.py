"""GaTEx recognition: a structural backend and a forbidden-subgraph backend."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GraphError, InvariantError
from .graph import Graph, find_induced_embedding, is_induced_embedding
from .modules import build_mdt
from .network import explain
from .pvr import PvrNetwork, _assemble, prime_decompositions


@dataclass
class GatexVerdict:
    accepted: bool
    witness_kind: str | None = None  # "network", "failing_module" or "embedding"
    network: PvrNetwork | None = None
    failing_module: list | None = None
    embedding: list | None = None    # host vertex of each pattern vertex
    forbidden_id: int | None = None

    def to_json(self) -> dict:
        out = {"accepted": self.accepted, "witness_kind": self.witness_kind}
        if self.witness_kind == "network":
            out["network_ref"] = self.network.net.to_json(self.network.labels)
        elif self.witness_kind == "failing_module":
            out["failing_module"] = self.failing_module
        elif self.witness_kind == "embedding":
            out["embedding"] = {"forbidden_id": self.forbidden_id,
                                "map": self.embedding}
        return out


def recognize_gatex_structural(g: Graph) -> GatexVerdict:
    mdt = build_mdt(g)
    decomps, failing = prime_decompositions(mdt)
    if failing is not None:
        return GatexVerdict(False, "failing_module", failing_module=failing.vertices)
    pvr = _assemble(mdt, decomps)
    if explain(pvr.net, pvr.labels) != g:
        raise InvariantError("pvr-network does not explain its graph")
    return GatexVerdict(True, "network", network=pvr)


def recognize_gatex_forbidden(g: Graph, catalog=None) -> GatexVerdict:
    if catalog is None:
        from .forbidden import load_catalog
        catalog = load_catalog()
    if not len(catalog):
        raise GraphError("forbidden catalog is empty")
    for entry in catalog:
        if entry.graph.n > g.n:
            continue
        emb = find_induced_embedding(g, entry.graph)
        if emb is not None:
            if not is_induced_embedding(g, entry.graph, emb):
                raise InvariantError("unverified embedding")
            return GatexVerdict(False, "embedding", embedding=emb, forbidden_id=entry.id)
    return GatexVerdict(True, None)


def is_gatex(g: Graph) -> bool:
    mdt = build_mdt(g)
    return prime_decompositions(mdt)[1] is None
