"""Security-aware virtual network embedding on multi-domain edge substrates.

The package provides the full pipeline: seeded instance generation, priority
node mapping, bandwidth-constrained path routing, a discrete particle swarm
search over whole placements, windowed evaluation metrics, and a
deterministic discrete-event simulator with greedy/random baselines.
"""

from .baselines import greedy_embed, random_embed
from .errors import (
    DoubleRelease,
    EmbeddingInfeasible,
    InsufficientResources,
    InternalConsistencyError,
    InvalidConfig,
    InvalidWeights,
    LengthMismatch,
    LinkMappingInfeasible,
    NoBoundaryNode,
    NodeMappingInfeasible,
    NoFeasiblePath,
    NotACandidate,
    SecVneError,
)
from .generate import GeneratorConfig, generate_substrate, generate_vnr_stream
from .metrics import (
    MetricWindow,
    acceptance_rate,
    cost,
    cumulative_series,
    revenue,
    steady_state_means,
    windowed_series,
)
from .model import (
    Embedding,
    SubstrateLink,
    SubstrateNetwork,
    SubstrateNode,
    VirtualLink,
    VirtualNetworkRequest,
    VirtualNode,
    allocate,
    compute_boundary_hops,
    link_key,
    release,
)
from .node_mapping import (
    DEFAULT_WEIGHTS,
    NodeMappingResult,
    PriorityWeights,
    candidate_nodes,
    map_nodes,
    substrate_node_priority,
    virtual_node_priority,
)
from .pso import (
    Particle,
    PsoConfig,
    SwarmResult,
    fitness,
    optimize,
    position_subtract,
    position_update,
    swarm_search,
    velocity_update,
)
from .routing import RoutingResult, build_embedding, route_all_links, route_link
from .simulation import (
    STRATEGY_NAMES,
    EventRecord,
    SimulationTrace,
    Strategy,
    audit_residuals,
    make_strategy,
    run,
)
from .validation import Violation, validate_embedding

__version__ = "0.1.0"
