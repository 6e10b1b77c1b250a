"""Small-graph corpora for property sweeps.

Graphs up to seven vertices come from the networkx graph atlas, which lists
every isomorphism class exactly once.
"""

import networkx as nx

from .decomposition import exact_treewidth
from .graph import Graph, is_connected, is_two_connected


def from_nx(h):
    mp = {v: i for i, v in enumerate(sorted(h.nodes))}
    return Graph(range(len(mp)), [(mp[u], mp[v]) for u, v in h.edges])


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


def atlas_graphs(max_n=7, min_n=1):
    """One graph per isomorphism class on min_n..max_n vertices (max_n <= 7)."""
    if max_n > 7:
        raise ValueError("the atlas stops at seven vertices")
    for h in nx.graph_atlas_g():
        if min_n <= h.number_of_nodes() <= max_n:
            yield from_nx(h)


def connected_graphs(max_n=7, min_n=1):
    return [g for g in atlas_graphs(max_n, min_n) if is_connected(g)]


def two_connected_graphs(max_n=7, min_n=3):
    return [g for g in atlas_graphs(max_n, min_n) if is_two_connected(g)]


def solver_witnesses(graphs):
    """(graph, optimal tree-decomposition) pairs from the exact solver."""
    return [(g, exact_treewidth(g)[1]) for g in graphs]


def graph_hash(g):
    """Isomorphism-invariant hash (Weisfeiler-Lehman); equal graphs hash equal."""
    return nx.weisfeiler_lehman_graph_hash(to_nx(g), iterations=4)


def is_isomorphic(g, h):
    return nx.is_isomorphic(to_nx(g), to_nx(h))


def random_two_connected(rng, n, p=0.4, tries=10_000):
    """G(n, p) sample conditioned on 2-connectivity (by rejection)."""
    for _ in range(tries):
        edges = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < p]
        g = Graph(range(n), edges)
        if is_two_connected(g):
            return g
    raise RuntimeError(f"no 2-connected sample on {n} vertices after {tries} tries")


def graph6(g):
    h, _ = g.normalized()
    return nx.to_graph6_bytes(to_nx(h), header=False).decode().strip()
