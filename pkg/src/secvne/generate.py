"""Seeded random generation of substrate topologies and request streams.

Defaults follow the standard benchmark setup for this problem family:
a 120-node substrate split over 4 domains, intra-domain links drawn per node
pair with probability 0.6, link bandwidth U[1000, 3000], security attributes
U[0, 4] on both sides, requests of 2-10 nodes with link bandwidth U[1, 10].

The published CPU ranges (substrate U[0, 50], virtual U[50, 100]) would make
every request unhostable, so the defaults swap them (substrate U[50, 100],
virtual U[1, 50]); set ``literal_table1=True`` to restore the published
values, e.g. to demonstrate the problem.

Arrivals form a Poisson process and lifetimes are exponential; the source
material never pins these, so rate and mean lifetime are config knobs with
defaults chosen to load the default substrate into a contended steady state.
All draws are PCG64 streams split from one root seed (see ``seeding``), so
identical configs reproduce identical networks on any platform.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, fields

from .errors import InvalidConfig
from .model import (
    SubstrateLink,
    SubstrateNetwork,
    SubstrateNode,
    VirtualLink,
    VirtualNetworkRequest,
    VirtualNode,
    compute_boundary_hops,
    link_key,
)
from .seeding import SUBSTRATE_STREAM, WORKLOAD_STREAM, rng_from

# Link probability inside generated request graphs (before connectivity repair).
VNR_LINK_RATE = 0.5

LITERAL_SUBSTRATE_CPU_RANGE = (0, 50)
LITERAL_VNR_CPU_RANGE = (50, 100)


@dataclass
class GeneratorConfig:
    seed: int = 0
    domain_count: int = 4
    node_count: int = 120
    intra_link_rate: float = 0.6
    substrate_cpu_range: tuple[int, int] = (50, 100)
    substrate_bw_range: tuple[int, int] = (1000, 3000)
    security_range: tuple[int, int] = (0, 4)
    vnr_node_range: tuple[int, int] = (2, 10)
    vnr_cpu_range: tuple[int, int] = (1, 50)
    vnr_bw_range: tuple[int, int] = (1, 10)
    vnr_arrival_rate: float = 0.05
    vnr_mean_lifetime: float = 1000.0
    cd_size_range: tuple[int, int] | None = None  # None -> (1, domain_count)
    inter_link_count_per_domain_pair: int = 1
    literal_table1: bool = False

    def effective_cd_size_range(self) -> tuple[int, int]:
        return self.cd_size_range if self.cd_size_range is not None else (1, self.domain_count)

    def effective_substrate_cpu_range(self) -> tuple[int, int]:
        return LITERAL_SUBSTRATE_CPU_RANGE if self.literal_table1 else self.substrate_cpu_range

    def effective_vnr_cpu_range(self) -> tuple[int, int]:
        return LITERAL_VNR_CPU_RANGE if self.literal_table1 else self.vnr_cpu_range

    def validate(self) -> None:
        if self.domain_count < 2:
            raise InvalidConfig("domain_count must be at least 2 (boundary distances "
                                "need inter-domain links)")
        if self.node_count < self.domain_count:
            raise InvalidConfig("node_count must be at least domain_count")
        if not 0.0 <= self.intra_link_rate <= 1.0:
            raise InvalidConfig("intra_link_rate must lie in [0, 1]")
        if self.vnr_arrival_rate <= 0:
            raise InvalidConfig("vnr_arrival_rate must be positive")
        if self.vnr_mean_lifetime <= 0:
            raise InvalidConfig("vnr_mean_lifetime must be positive")
        if self.inter_link_count_per_domain_pair < 1:
            raise InvalidConfig("inter_link_count_per_domain_pair must be at least 1")
        for name in ("substrate_cpu_range", "substrate_bw_range", "security_range",
                     "vnr_node_range", "vnr_cpu_range", "vnr_bw_range"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise InvalidConfig(f"{name} has min {lo} > max {hi}")
            if lo < 0:
                raise InvalidConfig(f"{name} has negative min {lo}")
        if self.vnr_node_range[0] < 1:
            raise InvalidConfig("vnr_node_range min must be at least 1")
        if not self.literal_table1 and self.vnr_cpu_range[0] < 1:
            raise InvalidConfig("vnr_cpu_range min must be at least 1")
        cd_lo, cd_hi = self.effective_cd_size_range()
        if cd_lo < 1 or cd_hi > self.domain_count or cd_lo > cd_hi:
            raise InvalidConfig(f"cd_size_range ({cd_lo}, {cd_hi}) must lie within "
                                f"[1, {self.domain_count}]")

    @classmethod
    def field_names(cls) -> list[str]:
        return [f.name for f in fields(cls)]


def _draw(rng, lo: int, hi: int) -> int:
    return int(rng.integers(lo, hi + 1))


def _domain_sizes(node_count: int, domain_count: int) -> list[int]:
    base, rem = divmod(node_count, domain_count)
    return [base + (1 if d < rem else 0) for d in range(domain_count)]


def _connect_components(members: list[int], edges: set, rng) -> list[tuple[int, int]]:
    """Edges that stitch the partition of `members` induced by `edges` into one
    component; random endpoints, deterministic merge order."""
    adj: dict[int, list[int]] = {m: [] for m in members}
    for (u, v) in edges:
        if u in adj and v in adj:
            adj[u].append(v)
            adj[v].append(u)
    seen: set[int] = set()
    comps: list[list[int]] = []
    for m in members:
        if m in seen:
            continue
        comp = [m]
        seen.add(m)
        queue = deque([m])
        while queue:
            cur = queue.popleft()
            for nbr in adj[cur]:
                if nbr not in seen:
                    seen.add(nbr)
                    comp.append(nbr)
                    queue.append(nbr)
        comps.append(sorted(comp))
    comps.sort(key=lambda c: c[0])
    added = []
    merged = comps[0]
    for comp in comps[1:]:
        u = merged[int(rng.integers(len(merged)))]
        v = comp[int(rng.integers(len(comp)))]
        added.append((u, v))
        merged = sorted(merged + comp)
    return added


def generate_substrate(cfg: GeneratorConfig) -> SubstrateNetwork:
    """Multi-domain substrate: per-domain random graphs repaired to be
    connected, plus inter-domain links between random node pairs."""
    cfg.validate()
    rng = rng_from(cfg.seed, SUBSTRATE_STREAM)
    cpu_lo, cpu_hi = cfg.effective_substrate_cpu_range()
    bw_lo, bw_hi = cfg.substrate_bw_range
    sec_lo, sec_hi = cfg.security_range

    nodes: list[SubstrateNode] = []
    domain_members: list[list[int]] = []
    next_id = 0
    for d, size in enumerate(_domain_sizes(cfg.node_count, cfg.domain_count)):
        members = list(range(next_id, next_id + size))
        next_id += size
        domain_members.append(members)
        for nid in members:
            cpu = _draw(rng, cpu_lo, cpu_hi)
            nodes.append(SubstrateNode(nid, d, cpu, cpu,
                                       _draw(rng, sec_lo, sec_hi),
                                       _draw(rng, sec_lo, sec_hi)))

    links: list[SubstrateLink] = []
    keys: set = set()

    def add_link(u: int, v: int) -> None:
        bw = _draw(rng, bw_lo, bw_hi)
        links.append(SubstrateLink(u, v, bw, bw))
        keys.add(link_key(u, v))

    for members in domain_members:
        domain_keys: set = set()
        for i, u in enumerate(members):
            for v in members[i + 1:]:
                if rng.random() < cfg.intra_link_rate:
                    add_link(u, v)
                    domain_keys.add(link_key(u, v))
        for (u, v) in _connect_components(members, domain_keys, rng):
            add_link(u, v)

    for d1 in range(cfg.domain_count):
        for d2 in range(d1 + 1, cfg.domain_count):
            for _ in range(cfg.inter_link_count_per_domain_pair):
                for _attempt in range(1000):
                    u = domain_members[d1][int(rng.integers(len(domain_members[d1])))]
                    v = domain_members[d2][int(rng.integers(len(domain_members[d2])))]
                    if link_key(u, v) not in keys:
                        add_link(u, v)
                        break
                else:
                    raise InvalidConfig(
                        f"cannot place {cfg.inter_link_count_per_domain_pair} distinct "
                        f"inter-domain links between domains {d1} and {d2}")

    net = SubstrateNetwork(cfg.domain_count, nodes, links)
    compute_boundary_hops(net)
    return net


def generate_vnr_stream(cfg: GeneratorConfig, horizon: float) -> list[VirtualNetworkRequest]:
    """Poisson arrivals over [0, horizon) with exponential lifetimes; each
    request is a connected random graph with attributes from the config."""
    cfg.validate()
    if horizon < 0:
        raise InvalidConfig("horizon must be non-negative")
    rng = rng_from(cfg.seed, WORKLOAD_STREAM)
    cpu_lo, cpu_hi = cfg.effective_vnr_cpu_range()
    bw_lo, bw_hi = cfg.vnr_bw_range
    sec_lo, sec_hi = cfg.security_range
    n_lo, n_hi = cfg.vnr_node_range
    cd_lo, cd_hi = cfg.effective_cd_size_range()

    arrivals: list[float] = []
    t = 0.0
    while True:
        t += float(rng.exponential(1.0 / cfg.vnr_arrival_rate))
        if t >= horizon:
            break
        arrivals.append(t)

    out: list[VirtualNetworkRequest] = []
    for vnr_id, arrival in enumerate(arrivals):
        lifetime = 0.0
        while lifetime <= 0.0:
            lifetime = float(rng.exponential(cfg.vnr_mean_lifetime))
        n = _draw(rng, n_lo, n_hi)
        vnodes = []
        for vid in range(n):
            cpu = _draw(rng, cpu_lo, cpu_hi)
            vsd = _draw(rng, sec_lo, sec_hi)
            vsl = _draw(rng, sec_lo, sec_hi)
            cd_size = _draw(rng, cd_lo, cd_hi)
            cd = frozenset(int(d) for d in rng.choice(cfg.domain_count, size=cd_size,
                                                      replace=False))
            vnodes.append(VirtualNode(vid, cpu, vsd, vsl, cd))
        vlinks = []
        vkeys: set = set()
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < VNR_LINK_RATE:
                    vlinks.append(VirtualLink(i, j, _draw(rng, bw_lo, bw_hi)))
                    vkeys.add((i, j))
        for (u, v) in _connect_components(list(range(n)), vkeys, rng):
            vlinks.append(VirtualLink(min(u, v), max(u, v), _draw(rng, bw_lo, bw_hi)))
        out.append(VirtualNetworkRequest(vnr_id, vnodes, vlinks, arrival, lifetime))
    return out
