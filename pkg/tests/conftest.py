import itertools
import random

import pytest

from artifact.graph import Graph


def all_graphs(n):
    """Every labelled graph on 0..n-1 (use only for tiny n)."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(range(n), [p for i, p in enumerate(pairs) if mask >> i & 1])


def random_graph(rng, n, p):
    return Graph(range(n), [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


@pytest.fixture
def rng():
    return random.Random(12345)


def random_decomposition(rng, nodes=7, n=7, p=0.5, grow=0.5):
    """Random valid tree-decomposition: each vertex gets a random subtree of a
    random tree, and edges are drawn among vertex pairs sharing a node."""
    from artifact.decomposition import TreeDecomposition
    tree = Graph(range(nodes), [(i, rng.randrange(i)) for i in range(1, nodes)])
    bags = {t: set() for t in range(nodes)}
    for v in range(n):
        sub = {rng.randrange(nodes)}
        while rng.random() < grow:
            frontier = [y for x in sub for y in tree.adj(x) if y not in sub]
            if not frontier:
                break
            sub.add(rng.choice(sorted(frontier)))
        for t in sub:
            bags[t].add(v)
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2)
             if any(u in b and v in b for b in bags.values()) and rng.random() < p]
    return TreeDecomposition(Graph(range(n), edges), tree, bags)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS):
        terminalreporter.write_line(line)
