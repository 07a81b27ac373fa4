"""Comparison strategies: greedy max-residual placement and a random floor.

Both enforce the full candidate constraints (domains, CPU, both security
directions) and route links exactly like the main algorithm; they differ only
in how they pick among candidates.  They are deliberately simple stand-ins,
not reimplementations of the TA-SVNE / MCS-VNE algorithms from the
security-aware embedding literature.
"""

from __future__ import annotations

from . import metrics
from .errors import EmbeddingInfeasible, LinkMappingInfeasible
from .model import Embedding, SubstrateNetwork, VirtualNetworkRequest
from .node_mapping import candidate_nodes
from .routing import build_embedding
from .seeding import rng_from

RANDOM_EMBED_ATTEMPTS = 10


def greedy_embed(vnr: VirtualNetworkRequest, net: SubstrateNetwork,
                 alpha: float = metrics.DEFAULT_ALPHA,
                 beta: float = metrics.DEFAULT_BETA,
                 cost_mode: str = metrics.COST_HOP) -> Embedding:
    """Largest CPU demand first, each onto its max-residual unused candidate."""
    order = sorted(vnr.nodes.values(), key=lambda v: (-v.cpu_demand, v.id))
    assignment: dict[int, int] = {}
    used: set[int] = set()
    for v in order:
        cands = [sid for sid in candidate_nodes(v, net) if sid not in used]
        if not cands:
            raise EmbeddingInfeasible(f"greedy: no unused candidate for virtual node {v.id}")
        best = min(cands, key=lambda sid: (-net.nodes[sid].cpu_residual, sid))
        assignment[v.id] = best
        used.add(best)
    try:
        return build_embedding(vnr, assignment, net, alpha, beta, cost_mode)
    except LinkMappingInfeasible as exc:
        raise EmbeddingInfeasible(f"greedy: {exc}") from exc


def random_embed(vnr: VirtualNetworkRequest, net: SubstrateNetwork, seed: int,
                 alpha: float = metrics.DEFAULT_ALPHA,
                 beta: float = metrics.DEFAULT_BETA,
                 cost_mode: str = metrics.COST_HOP) -> Embedding:
    """Uniform injective draws; a few retries absorb routing dead ends."""
    candidate_lists = []
    for vid in sorted(vnr.nodes):
        cands = candidate_nodes(vnr.nodes[vid], net)
        if not cands:
            raise EmbeddingInfeasible(f"random: no candidate for virtual node {vid}")
        candidate_lists.append((vid, cands))
    rng = rng_from(seed)
    for _ in range(RANDOM_EMBED_ATTEMPTS):
        assignment: dict[int, int] = {}
        used: set[int] = set()
        for vid, cands in candidate_lists:
            pool = [c for c in cands if c not in used]
            if not pool:
                break
            pick = pool[int(rng.integers(len(pool)))]
            assignment[vid] = pick
            used.add(pick)
        if len(assignment) != len(candidate_lists):
            continue
        try:
            return build_embedding(vnr, assignment, net, alpha, beta, cost_mode)
        except LinkMappingInfeasible:
            continue
    raise EmbeddingInfeasible(
        f"random: no routable assignment within {RANDOM_EMBED_ATTEMPTS} attempts")
