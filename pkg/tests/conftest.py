"""Shared toy instances used across the test suite."""

import pytest

from secvne.model import (
    SubstrateLink,
    SubstrateNetwork,
    SubstrateNode,
    VirtualLink,
    VirtualNetworkRequest,
    VirtualNode,
    compute_boundary_hops,
)


def make_substrate(node_specs, link_specs, domain_count=2, hops=True):
    """node_specs: (id, domain, cpu, ssl, ssd); link_specs: (u, v, bw)."""
    nodes = [SubstrateNode(i, d, c, c, ssl, ssd) for (i, d, c, ssl, ssd) in node_specs]
    links = [SubstrateLink(u, v, bw, bw) for (u, v, bw) in link_specs]
    net = SubstrateNetwork(domain_count, nodes, links)
    if hops:
        compute_boundary_hops(net)
    return net


def make_vnr(node_specs, link_specs, vnr_id=0, arrival=0.0, lifetime=100.0):
    """node_specs: (id, cpu, vsd, vsl, cd); link_specs: (u, v, bw)."""
    nodes = [VirtualNode(i, c, vsd, vsl, frozenset(cd)) for (i, c, vsd, vsl, cd) in node_specs]
    links = [VirtualLink(u, v, bw) for (u, v, bw) in link_specs]
    return VirtualNetworkRequest(vnr_id, nodes, links, arrival, lifetime)


@pytest.fixture
def toy_net():
    """Two domains of three nodes each, one inter-domain link (2-3).

    Domain 0: 0-1-2 path plus 0-2; domain 1: 3-4-5 path plus 3-5.
    Generous bandwidth everywhere, assorted security levels.
    """
    return make_substrate(
        node_specs=[
            (0, 0, 100, 3, 1),
            (1, 0, 80, 4, 0),
            (2, 0, 60, 2, 0),
            (3, 1, 100, 1, 0),
            (4, 1, 90, 3, 2),
            (5, 1, 70, 4, 1),
        ],
        link_specs=[
            (0, 1, 1000), (1, 2, 1000), (0, 2, 1000),
            (3, 4, 1000), (4, 5, 1000), (3, 5, 1000),
            (2, 3, 1000),
        ],
    )


@pytest.fixture
def toy_vnr():
    """Three virtual nodes in a path, embeddable on toy_net."""
    return make_vnr(
        node_specs=[
            (0, 20, 1, 2, (0, 1)),
            (1, 30, 2, 1, (0, 1)),
            (2, 10, 0, 3, (0, 1)),
        ],
        link_specs=[(0, 1, 5), (1, 2, 5)],
    )
