"""Deterministic discrete-event loop over a request stream.

Arrivals hand the request to a pluggable strategy; a successful embedding is
allocated and its departure scheduled, a failure is recorded as a rejection
(no queueing, no retry).  Departures release resources.  At equal timestamps
departures process before arrivals, then ties break by request id, so a run
is fully reproducible.

The independent validator can shadow every acceptance ("full", the default)
or every 100th one ("sampled") - any violation it finds means the fast path
and the re-checker disagree, which aborts the run as an internal error.  The
optional audit recomputes all residuals from the active-embedding set every
K events and likewise aborts on drift.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field, replace

from . import metrics
from .baselines import greedy_embed, random_embed
from .errors import EmbeddingInfeasible, InternalConsistencyError
from .model import (
    Embedding,
    SubstrateNetwork,
    VirtualNetworkRequest,
    allocate,
    path_links,
    release,
)
from .node_mapping import DEFAULT_WEIGHTS, PriorityWeights
from .pso import PsoConfig, optimize
from .seeding import RANDOM_BASELINE_STREAM, SWARM_STREAM, derive_seed
from .validation import validate_embedding

STRATEGY_NAMES = ("stec-iot", "greedy", "random")

VALIDATE_FULL = "full"
VALIDATE_SAMPLED = "sampled"
VALIDATE_OFF = "off"
SAMPLED_VALIDATE_PERIOD = 100

_DEPARTURE = 0  # sorts before arrivals at equal timestamps
_ARRIVAL = 1


@dataclass(slots=True)
class EventRecord:
    time: float
    kind: str                      # "arrival" | "departure"
    vnr_id: int
    outcome: str                   # "accepted" | "rejected" | "released"
    revenue: float | None = None
    cost: float | None = None
    embedding: Embedding | None = field(default=None, repr=False)


@dataclass
class SimulationTrace:
    horizon: float
    records: list[EventRecord] = field(default_factory=list)
    arrived: int = 0
    accepted: int = 0
    validated: int = 0
    net: SubstrateNetwork | None = None

    @property
    def acceptance(self) -> float | None:
        return self.accepted / self.arrived if self.arrived else None


class Strategy:
    """Embeds one request against the current substrate state."""

    name = "strategy"

    def embed(self, vnr: VirtualNetworkRequest, net: SubstrateNetwork) -> Embedding:
        raise NotImplementedError


class StecIotStrategy(Strategy):
    """Priority node mapping seeding a discrete particle swarm search."""

    name = "stec-iot"

    def __init__(self, seed: int = 0, pso_config: PsoConfig | None = None,
                 weights: PriorityWeights = DEFAULT_WEIGHTS, invert_hop: bool = True,
                 alpha: float = metrics.DEFAULT_ALPHA, beta: float = metrics.DEFAULT_BETA,
                 cost_mode: str = metrics.COST_HOP):
        self.seed = seed
        self.pso_config = pso_config if pso_config is not None else PsoConfig()
        self.weights = weights
        self.invert_hop = invert_hop
        self.alpha = alpha
        self.beta = beta
        self.cost_mode = cost_mode

    def embed(self, vnr, net):
        cfg = replace(self.pso_config,
                      seed=derive_seed(self.seed, SWARM_STREAM, vnr.id))
        return optimize(vnr, net, cfg, self.weights, self.invert_hop,
                        self.alpha, self.beta, self.cost_mode)


class GreedyStrategy(Strategy):
    name = "greedy"

    def __init__(self, alpha: float = metrics.DEFAULT_ALPHA,
                 beta: float = metrics.DEFAULT_BETA, cost_mode: str = metrics.COST_HOP):
        self.alpha = alpha
        self.beta = beta
        self.cost_mode = cost_mode

    def embed(self, vnr, net):
        return greedy_embed(vnr, net, self.alpha, self.beta, self.cost_mode)


class RandomStrategy(Strategy):
    name = "random"

    def __init__(self, seed: int = 0, alpha: float = metrics.DEFAULT_ALPHA,
                 beta: float = metrics.DEFAULT_BETA, cost_mode: str = metrics.COST_HOP):
        self.seed = seed
        self.alpha = alpha
        self.beta = beta
        self.cost_mode = cost_mode

    def embed(self, vnr, net):
        return random_embed(vnr, net,
                            derive_seed(self.seed, RANDOM_BASELINE_STREAM, vnr.id),
                            self.alpha, self.beta, self.cost_mode)


def make_strategy(name: str, seed: int = 0, pso_config: PsoConfig | None = None,
                  weights: PriorityWeights = DEFAULT_WEIGHTS, invert_hop: bool = True,
                  alpha: float = metrics.DEFAULT_ALPHA, beta: float = metrics.DEFAULT_BETA,
                  cost_mode: str = metrics.COST_HOP) -> Strategy:
    if name == "stec-iot":
        return StecIotStrategy(seed, pso_config, weights, invert_hop, alpha, beta, cost_mode)
    if name == "greedy":
        return GreedyStrategy(alpha, beta, cost_mode)
    if name == "random":
        return RandomStrategy(seed, alpha, beta, cost_mode)
    raise ValueError(f"unknown strategy {name!r}; expected one of {STRATEGY_NAMES}")


def run(net: SubstrateNetwork, vnr_stream, strategy: Strategy, horizon: float,
        validate: str = VALIDATE_FULL, audit_every: int = 1000) -> SimulationTrace:
    """Process the stream against `net` (mutated in place) and return the trace."""
    if validate not in (VALIDATE_FULL, VALIDATE_SAMPLED, VALIDATE_OFF):
        raise ValueError(f"unknown validate mode {validate!r}")
    by_id: dict[int, VirtualNetworkRequest] = {}
    heap: list[tuple[float, int, int]] = []
    for vnr in vnr_stream:
        if vnr.arrival_time >= horizon:
            continue
        if vnr.id in by_id:
            raise ValueError(f"duplicate request id {vnr.id}")
        by_id[vnr.id] = vnr
        heap.append((vnr.arrival_time, _ARRIVAL, vnr.id))
    heapq.heapify(heap)

    trace = SimulationTrace(horizon=horizon, net=net)
    processed = 0
    while heap:
        time, prio, vnr_id = heapq.heappop(heap)
        if prio == _DEPARTURE:
            emb = net.active[vnr_id]
            release(net, emb)
            trace.records.append(EventRecord(time, "departure", vnr_id, "released"))
        else:
            vnr = by_id[vnr_id]
            trace.arrived += 1
            try:
                emb = strategy.embed(vnr, net)
            except EmbeddingInfeasible:
                trace.records.append(EventRecord(time, "arrival", vnr_id, "rejected"))
            else:
                if validate == VALIDATE_FULL or (
                        validate == VALIDATE_SAMPLED
                        and trace.accepted % SAMPLED_VALIDATE_PERIOD == 0):
                    violations = validate_embedding(net, vnr, emb)
                    if violations:
                        detail = "; ".join(str(v) for v in violations)
                        raise InternalConsistencyError(
                            f"strategy {strategy.name} produced an invalid embedding "
                            f"for request {vnr_id} at t={time}: {detail}")
                    trace.validated += 1
                allocate(net, emb)
                trace.accepted += 1
                heapq.heappush(heap, (time + vnr.lifetime, _DEPARTURE, vnr_id))
                trace.records.append(EventRecord(time, "arrival", vnr_id, "accepted",
                                                 emb.revenue, emb.cost, emb))
        processed += 1
        if audit_every and processed % audit_every == 0:
            audit_residuals(net)
    if audit_every:
        audit_residuals(net)
    return trace


def audit_residuals(net: SubstrateNetwork) -> None:
    """Recompute residuals from the active embeddings; abort on any drift."""
    cpu_used: dict[int, int] = {}
    bw_used: dict[tuple[int, int], int] = {}
    for emb in net.active.values():
        for vid, sid in emb.node_map.items():
            cpu_used[sid] = cpu_used.get(sid, 0) + emb.vnr.nodes[vid].cpu_demand
        for vkey, path in emb.link_map.items():
            demand = emb.vnr.links[vkey].bw_demand
            for k in path_links(path):
                bw_used[k] = bw_used.get(k, 0) + demand
    for nid, node in net.nodes.items():
        expect = node.cpu_capacity - cpu_used.get(nid, 0)
        if node.cpu_residual != expect:
            raise InternalConsistencyError(
                f"node {nid} residual {node.cpu_residual}, expected {expect}")
    for k, link in net.links.items():
        expect = link.bw_capacity - bw_used.get(k, 0)
        if link.bw_residual != expect:
            raise InternalConsistencyError(
                f"link {k} residual {link.bw_residual}, expected {expect}")
