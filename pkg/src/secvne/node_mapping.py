"""Priority-driven node mapping.

Virtual nodes are ranked by security demand times CPU demand and placed one
by one, hardest first.  Each one goes to its best-scoring unused candidate,
where a candidate must sit in an allowed domain, have enough residual CPU,
offer at least the demanded security level, and itself demand no more
security than the virtual node offers.

The candidate score blends three terms: security surplus, CPU slack, and
proximity to the domain boundary.  The raw attributes live on wildly
different scales (security 0-4, CPU up to ~100, hops 0-6), so each term is
min-max normalized over the candidate set being ranked before the 0.5/0.3/0.2
weights are applied; otherwise CPU slack would drown out the security term
the weighting is supposed to prioritize.  The boundary term is inverted by
default so boundary-proximal nodes score higher (set ``invert_hop=False`` to
score raw distance instead).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import NodeMappingInfeasible, NotACandidate
from .model import SubstrateNetwork, VirtualNetworkRequest, VirtualNode


@dataclass(frozen=True)
class PriorityWeights:
    """Weights for the security / cpu / boundary terms; must sum to one."""

    gamma: float = 0.5
    delta: float = 0.3
    theta: float = 0.2

    def __post_init__(self):
        if min(self.gamma, self.delta, self.theta) < 0:
            raise ValueError("priority weights must be non-negative")
        if not math.isclose(self.gamma + self.delta + self.theta, 1.0, abs_tol=1e-9):
            raise ValueError("priority weights must sum to 1")


DEFAULT_WEIGHTS = PriorityWeights()


@dataclass
class NodeMappingResult:
    assignment: dict[int, int]
    ordered_virtual_nodes: list[int] = field(default_factory=list)


def virtual_node_priority(v: VirtualNode) -> int:
    """Mapping urgency of a virtual node: security demand times CPU demand."""
    return v.vsd * v.cpu_demand


def candidate_nodes(v: VirtualNode, net: SubstrateNetwork) -> list[int]:
    """Substrate nodes that could host v right now, ascending by id."""
    out = []
    for sid in sorted(net.nodes):
        s = net.nodes[sid]
        if (s.domain in v.cd
                and s.cpu_residual >= v.cpu_demand
                and s.ssl >= v.vsd
                and v.vsl >= s.ssd):
            out.append(sid)
    return out


def _normalized(values: dict[int, float]) -> dict[int, float]:
    lo = min(values.values())
    hi = max(values.values())
    if hi == lo:
        return {sid: 0.0 for sid in values}
    span = hi - lo
    return {sid: (val - lo) / span for sid, val in values.items()}


def _candidate_scores(v: VirtualNode, candidates, net: SubstrateNetwork,
                      weights: PriorityWeights, invert_hop: bool) -> dict[int, float]:
    nodes = net.nodes
    sec = {sid: float(nodes[sid].ssl - v.vsd) for sid in candidates}
    cpu = {sid: float(nodes[sid].cpu_residual - v.cpu_demand) for sid in candidates}
    if invert_hop:
        max_hop = max(nodes[sid].hop_to_boundary for sid in candidates)
        hop = {sid: float(max_hop - nodes[sid].hop_to_boundary) for sid in candidates}
    else:
        hop = {sid: float(nodes[sid].hop_to_boundary) for sid in candidates}
    sec = _normalized(sec)
    cpu = _normalized(cpu)
    hop = _normalized(hop)
    return {sid: weights.gamma * sec[sid] + weights.delta * cpu[sid] + weights.theta * hop[sid]
            for sid in candidates}


def substrate_node_priority(sid: int, v: VirtualNode, weights: PriorityWeights,
                            candidates, net: SubstrateNetwork,
                            invert_hop: bool = True) -> float:
    """Score of one candidate relative to the given candidate set."""
    candidates = list(candidates)
    if sid not in candidates:
        raise NotACandidate(f"substrate node {sid} is not in the candidate set")
    return _candidate_scores(v, candidates, net, weights, invert_hop)[sid]


def map_nodes(vnr: VirtualNetworkRequest, net: SubstrateNetwork,
              weights: PriorityWeights = DEFAULT_WEIGHTS,
              invert_hop: bool = True) -> NodeMappingResult:
    """Greedy assignment in descending virtual-priority order.

    Ties in virtual priority break by ascending virtual id; ties in candidate
    score break by ascending substrate id.  Fails atomically with
    NodeMappingInfeasible naming the first unmappable virtual node.
    """
    order = sorted(vnr.nodes.values(), key=lambda v: (-virtual_node_priority(v), v.id))
    assignment: dict[int, int] = {}
    used: set[int] = set()
    for v in order:
        cands = [sid for sid in candidate_nodes(v, net) if sid not in used]
        if not cands:
            raise NodeMappingInfeasible(v.id)
        scores = _candidate_scores(v, cands, net, weights, invert_hop)
        best = min(cands, key=lambda sid: (-scores[sid], sid))
        assignment[v.id] = best
        used.add(best)
    return NodeMappingResult(assignment, [v.id for v in order])
