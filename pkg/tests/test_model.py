"""Substrate model: residual bookkeeping, boundary hops, embedding validator."""

import numpy as np
import pytest

from secvne.errors import DoubleRelease, InsufficientResources, NoBoundaryNode
from secvne.model import (
    Embedding,
    SubstrateLink,
    SubstrateNetwork,
    SubstrateNode,
    allocate,
    compute_boundary_hops,
    release,
)
from secvne.validation import validate_embedding

from conftest import make_substrate, make_vnr
from oracles import boundary_hops_brute


def embed_on_toy(net, vnr, node_map, link_map):
    return Embedding(vnr, node_map, link_map, 0.0, 0.0)


@pytest.fixture
def simple_case(toy_net):
    vnr = make_vnr(
        node_specs=[(0, 20, 1, 2, (0, 1)), (1, 30, 2, 2, (0, 1))],
        link_specs=[(0, 1, 5)],
    )
    emb = embed_on_toy(toy_net, vnr, {0: 0, 1: 1}, {(0, 1): (0, 1)})
    return toy_net, vnr, emb


def test_allocate_debits_cpu_and_bandwidth(simple_case):
    net, vnr, emb = simple_case
    allocate(net, emb)
    assert net.nodes[0].cpu_residual == 80
    assert net.nodes[1].cpu_residual == 50
    assert net.link(0, 1).bw_residual == 995


def test_allocate_release_roundtrip_is_identity(simple_case):
    net, vnr, emb = simple_case
    before = net.state_signature()
    allocate(net, emb)
    release(net, emb)
    assert net.state_signature() == before


def test_release_twice_raises(simple_case):
    net, vnr, emb = simple_case
    allocate(net, emb)
    release(net, emb)
    with pytest.raises(DoubleRelease):
        release(net, emb)


def test_allocate_insufficient_cpu_raises(toy_net):
    vnr = make_vnr([(0, 1000, 0, 4, (0,))], [])
    emb = embed_on_toy(toy_net, vnr, {0: 0}, {})
    with pytest.raises(InsufficientResources):
        allocate(toy_net, emb)
    assert toy_net.nodes[0].cpu_residual == 100


def test_release_order_independence(toy_net):
    """allocate A, allocate B, release A leaves exactly B's footprint."""
    vnr_a = make_vnr([(0, 20, 0, 4, (0,)), (1, 10, 0, 4, (0,))], [(0, 1, 7)], vnr_id=1)
    vnr_b = make_vnr([(0, 15, 0, 4, (1,)), (1, 25, 0, 4, (1,))], [(0, 1, 3)], vnr_id=2)
    emb_a = embed_on_toy(toy_net, vnr_a, {0: 0, 1: 2}, {(0, 1): (0, 2)})
    emb_b = embed_on_toy(toy_net, vnr_b, {0: 3, 1: 4}, {(0, 1): (3, 4)})

    allocate(toy_net, emb_a)
    allocate(toy_net, emb_b)
    release(toy_net, emb_a)
    after_mixed = toy_net.state_signature()
    release(toy_net, emb_b)

    only_b = toy_net.copy()
    allocate(only_b, Embedding(vnr_b, emb_b.node_map, emb_b.link_map, 0.0, 0.0))
    assert after_mixed == only_b.state_signature()


def test_conservation_over_random_sequences(toy_net):
    """Any interleaving of allocates and matching releases restores residuals."""
    rng = np.random.default_rng(42)
    base = toy_net.state_signature()
    for _ in range(50):
        active = []
        for step in range(12):
            if active and rng.random() < 0.5:
                idx = int(rng.integers(len(active)))
                release(toy_net, active.pop(idx))
            else:
                vid = 100 + step + 1000 * int(rng.integers(1000))
                host = int(rng.integers(6))
                demand = int(rng.integers(1, 5))
                vnr = make_vnr([(0, demand, 0, 4, (0, 1))], [], vnr_id=vid)
                emb = embed_on_toy(toy_net, vnr, {0: host}, {})
                if toy_net.nodes[host].cpu_residual >= demand:
                    allocate(toy_net, emb)
                    active.append(emb)
        for emb in active:
            release(toy_net, emb)
        assert toy_net.state_signature() == base


def test_residuals_stay_within_bounds(toy_net):
    vnr = make_vnr([(0, 60, 0, 4, (0,))], [], vnr_id=9)
    emb = embed_on_toy(toy_net, vnr, {0: 2}, {})
    allocate(toy_net, emb)
    for node in toy_net.nodes.values():
        assert 0 <= node.cpu_residual <= node.cpu_capacity
    release(toy_net, emb)
    for node in toy_net.nodes.values():
        assert node.cpu_residual == node.cpu_capacity


class TestBoundaryHops:
    def test_boundary_node_has_zero(self, toy_net):
        assert toy_net.nodes[2].hop_to_boundary == 0
        assert toy_net.nodes[3].hop_to_boundary == 0

    def test_three_node_path(self):
        # a-b-c chain in domain 0, only a touches the inter-domain link
        net = make_substrate(
            node_specs=[(0, 0, 10, 0, 0), (1, 0, 10, 0, 0), (2, 0, 10, 0, 0),
                        (3, 1, 10, 0, 0)],
            link_specs=[(0, 1, 10), (1, 2, 10), (0, 3, 10)],
        )
        assert [net.nodes[i].hop_to_boundary for i in (0, 1, 2)] == [0, 1, 2]
        assert net.nodes[3].hop_to_boundary == 0

    def test_no_boundary_node_raises(self):
        nodes = [SubstrateNode(0, 0, 10, 10, 0, 0), SubstrateNode(1, 0, 10, 10, 0, 0),
                 SubstrateNode(2, 1, 10, 10, 0, 0)]
        links = [SubstrateLink(0, 1, 5, 5)]  # domain 1 node is isolated
        net = SubstrateNetwork(2, nodes, links)
        with pytest.raises(NoBoundaryNode):
            compute_boundary_hops(net)

    def test_matches_brute_force_on_random_networks(self):
        from secvne.generate import GeneratorConfig, generate_substrate

        for seed in range(5):
            cfg = GeneratorConfig(seed=seed, node_count=40, domain_count=3,
                                  intra_link_rate=0.2)
            net = generate_substrate(cfg)
            expected = boundary_hops_brute(net)
            got = compute_boundary_hops(net)
            assert got == expected


class TestValidator:
    def test_feasible_embedding_has_no_violations(self, simple_case):
        net, vnr, emb = simple_case
        assert validate_embedding(net, vnr, emb) == []

    def test_two_virtual_nodes_on_one_substrate_node(self, toy_net):
        vnr = make_vnr([(0, 5, 0, 4, (0,)), (1, 5, 0, 4, (0,))], [(0, 1, 2)])
        emb = Embedding(vnr, {0: 0, 1: 0}, {(0, 1): (0, 1)}, 0.0, 0.0)
        kinds = {v.kind for v in validate_embedding(toy_net, vnr, emb)}
        assert "injectivity" in kinds

    def test_security_demand_above_host_level(self, toy_net):
        vnr = make_vnr([(0, 5, 4, 4, (0,))], [])
        emb = Embedding(vnr, {0: 2}, {}, 0.0, 0.0)  # node 2 has ssl=2
        violations = validate_embedding(toy_net, vnr, emb)
        assert [v.kind for v in violations] == ["security-forward"]

    def test_mutations_yield_exactly_the_expected_class(self, toy_net):
        vnr = make_vnr(
            node_specs=[(0, 20, 1, 2, (0, 1)), (1, 30, 2, 2, (0, 1))],
            link_specs=[(0, 1, 5)],
        )
        valid = Embedding(vnr, {0: 0, 1: 1}, {(0, 1): (0, 1)}, 0.0, 0.0)
        assert validate_embedding(toy_net, vnr, valid) == []

        def kinds_after(mutate):
            v2 = make_vnr(
                node_specs=[(0, 20, 1, 2, (0, 1)), (1, 30, 2, 2, (0, 1))],
                link_specs=[(0, 1, 5)],
            )
            emb = Embedding(v2, {0: 0, 1: 1}, {(0, 1): (0, 1)}, 0.0, 0.0)
            net = toy_net.copy()
            mutate(net, v2, emb)
            return [v.kind for v in validate_embedding(net, v2, emb)]

        # cpu: inflate the demand beyond node 0's residual
        def mut_cpu(net, v2, emb):
            v2.nodes[0].cpu_demand = 1000
        assert kinds_after(mut_cpu) == ["cpu"]

        # candidate-domain: remap node 1 to domain-1 node 4 (security-compatible)
        def mut_domain(net, v2, emb):
            v2.nodes[1].cd = frozenset({0})
            emb.node_map[1] = 4
            emb.link_map[(0, 1)] = (0, 2, 3, 4)
        assert kinds_after(mut_domain) == ["candidate-domain"]

        # security-forward: demand more than the host offers
        def mut_sec_fwd(net, v2, emb):
            v2.nodes[1].vsd = 4  # host 1 has ssl=4 -> move to host 2 (ssl=2)? keep host 1
            net.nodes[1].ssl = 2
        assert kinds_after(mut_sec_fwd) == ["security-forward"]

        # security-backward: host demands more than the tenant offers
        def mut_sec_bwd(net, v2, emb):
            net.nodes[0].ssd = 4
        assert kinds_after(mut_sec_bwd) == ["security-backward"]

        # bandwidth: demand above the path link's residual
        def mut_bw(net, v2, emb):
            v2.links[(0, 1)].bw_demand = 5000
        assert kinds_after(mut_bw) == ["bandwidth"]

        # loop: both endpoints on one node (degenerate stored path ignored)
        def mut_loop(net, v2, emb):
            emb.node_map[1] = 0
            emb.link_map[(0, 1)] = (0,)
        assert set(kinds_after(mut_loop)) == {"injectivity", "loop"}

        # single-path: break the stored path (non-adjacent jump)
        def mut_path(net, v2, emb):
            emb.link_map[(0, 1)] = (0, 4, 1)
        assert kinds_after(mut_path) == ["single-path"]

        # single-path: path missing entirely
        def mut_missing(net, v2, emb):
            del emb.link_map[(0, 1)]
        assert kinds_after(mut_missing) == ["single-path"]
