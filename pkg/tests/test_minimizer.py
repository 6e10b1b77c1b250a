import functools
import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from artifact.decomposition import TreeDecomposition, validate_decomposition, width
from artifact.fixtures import branching_c12, branching_cycle
from artifact.graph import Graph, complete, cycle, path
from artifact.minimizer import (
    NotApplicable, SizeOutcome, compare_size, enumerate_cells, find_pathsplits,
    minimize, size_profile, surgery_absorb, surgery_branchsplit, surgery_identify,
    surgery_pathsplit, surgery_prune, surgery_subdivide, surgery_trim, surgery_w7,
)
from artifact.treeorder import Greater, Less, compare_trees, rank_code
from artifact.wprops import check_all, check_w456, violating_triads

from conftest import random_decomposition

Smaller, Equal, Larger = SizeOutcome.SMALLER, SizeOutcome.EQUAL, SizeOutcome.LARGER


def c8_two_arcs():
    """C_8 with X = {0, 4} in every bag and the arcs 1-2-3 and 5-6-7 routed side by side."""
    g = cycle(8)
    return TreeDecomposition.from_path(
        g, [{0, 4, 1, 7}, {0, 4, 1, 2, 7, 6}, {0, 4, 2, 6}, {0, 4, 2, 3, 6, 5}, {0, 4, 3, 5}])


def c6_two_arcs():
    return TreeDecomposition.from_path(cycle(6), [{0, 3, 1, 5}, {0, 3, 1, 2, 5, 4}, {0, 3, 2, 4}])


# ------------------------------------------------------------- size oracle

def oracle_compare(td1, td2):
    """Size comparison unrolled from the definition: a(n, r) counts cells of
    rank at least r; ranks range over every cell tree of either side."""
    def cells(td):
        out = []
        top = max(len(b) for b in td.bags.values())
        for n in range(top + 1):
            keep = [t for t in td.nodes if len(td.bags[t]) >= n]
            seen = set()
            for t in keep:
                if t in seen:
                    continue
                comp = {t}
                stack = [t]
                while stack:
                    x = stack.pop()
                    for y in td.tree.adj(x):
                        if y in keep and y not in comp:
                            comp.add(y)
                            stack.append(y)
                seen |= comp
                out.append((n, td.tree.subgraph(comp)))
        return out

    c1, c2 = cells(td1), cells(td2)
    trees = [t for _, t in c1 + c2]
    cmp = lambda a, b: {Less: -1, Greater: 1}.get(compare_trees(a, b), 0)
    trees.sort(key=functools.cmp_to_key(cmp), reverse=True)
    top = max(n for n, _ in c1 + c2)
    for n in range(top, -1, -1):
        for r in trees:
            a = sum(1 for m, t in c1 if m == n and cmp(t, r) >= 0)
            b = sum(1 for m, t in c2 if m == n and cmp(t, r) >= 0)
            if a != b:
                return Larger if a > b else Smaller
    return Equal


# ------------------------------------------------------------------- cells

def test_single_bag_cells():
    g = complete(3)
    td = TreeDecomposition(g, Graph([0]), {0: {0, 1, 2}})
    cells = enumerate_cells(td)
    assert sorted(c.n for c in cells) == [0, 1, 2, 3]


def test_path_cells():
    g = path(4)
    td = TreeDecomposition.from_path(g, [{0, 1}, {1, 2, 3}, {3}])
    top = [c for c in enumerate_cells(td) if c.n == 3]
    assert [set(c.component) for c in top] == [{1}]


def test_branching_cell_rank():
    td, _ = branching_c12()
    (cell,) = [c for c in enumerate_cells(td) if c.n == 2]
    assert cell.component == frozenset(td.nodes)
    assert cell.rank == rank_code(td.tree)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_cell_counts_monotone_in_rank(seed):
    td = random_decomposition(random.Random(seed))
    prof = size_profile(td)
    for n, row in prof.counts:
        ranks = sorted(r for r, _ in row)
        for lo, hi in zip(ranks, ranks[1:]):
            assert prof.a(n, lo) >= prof.a(n, hi)


# ------------------------------------------------------------- compare_size

def test_compare_self_and_duplicate():
    td, _ = branching_c12()
    assert compare_size(td, td) is Equal
    g = path(3)
    a = TreeDecomposition.from_path(g, [{0, 1}, {1, 2}])
    b = TreeDecomposition.from_path(g, [{0, 1}, {0, 1}, {1, 2}])
    assert compare_size(b, a) is Larger and compare_size(a, b) is Smaller


def test_compare_rejects_other_graph():
    a = TreeDecomposition.from_path(path(2), [{0, 1}])
    b = TreeDecomposition.from_path(complete(2).add_edges([]), [{0, 1}])
    c = TreeDecomposition.from_path(cycle(3), [{0, 1, 2}])
    assert compare_size(a, b) is Equal
    with pytest.raises(ValueError):
        compare_size(a, c)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_compare_matches_definition(seed):
    rng = random.Random(seed)
    nodes, n = rng.randint(2, 7), rng.randint(3, 6)
    td1 = random_decomposition(rng, nodes, n)
    # a second decomposition of the same graph: grow bags at random
    bags = {t: set(b) for t, b in td1.bags.items()}
    for v in td1.graph.vertices:
        if rng.random() < 0.5:
            holders = [t for t in td1.nodes if v in bags[t]] or [rng.choice(td1.nodes)]
            nb = [y for t in holders for y in td1.tree.adj(t)]
            if nb:
                bags[rng.choice(nb)].add(v)
    td2 = TreeDecomposition(td1.graph, td1.tree, bags)
    assert validate_decomposition(td2)[0]
    assert compare_size(td1, td2) is oracle_compare(td1, td2)
    assert compare_size(td2, td1) is oracle_compare(td2, td1)


# --------------------------------------------------------------- surgeries

def test_subdivide_examples():
    g = path(3)
    td = TreeDecomposition.from_path(g, [{0, 1}, {1, 2}])
    out = surgery_subdivide(td, 0, 1)
    assert out.comparison is Smaller
    (new,) = set(out.td.nodes) - set(td.nodes)
    assert out.td.bags[new] == {1}
    td2 = TreeDecomposition.from_path(g, [{0, 1}, {0, 1, 2}])
    with pytest.raises(NotApplicable):
        surgery_subdivide(td2, 0, 1)


def test_identify_prune_absorb_trim():
    g = path(3)
    dup = TreeDecomposition.from_path(g, [{0, 1}, {0, 1}, {1, 2}])
    assert surgery_identify(dup, 0, 1).comparison is Smaller
    leaf = TreeDecomposition.from_path(g, [{0, 1}, {1, 2}, {2}])
    assert surgery_prune(leaf, 1, [2]).td.nodes == (0, 1)
    with pytest.raises(NotApplicable):
        surgery_prune(leaf, 0, [1, 2])
    mid = TreeDecomposition.from_path(g, [{0, 1}, {1}, {1, 2}, {2}])
    out = surgery_absorb(mid, 3, 2)
    assert out.comparison is Smaller and 3 not in out.td.nodes
    # vertex 1 reaches into the branch without meeting anything there
    g2 = Graph(range(3), [(0, 1), (0, 2)])
    fat = TreeDecomposition.from_path(g2, [{0, 1}, {0, 1, 2}])
    out = surgery_trim(fat, 0, [1])
    assert out.td.bags[1] == {0, 2}


def test_branchsplit_two_sides():
    # branch private vertices 3 and 4 hang off 2 and 0 respectively
    g = Graph(range(5), [(0, 1), (0, 2), (1, 2), (0, 4), (2, 3)])
    td = TreeDecomposition.from_path(g, [{0, 1, 2}, {0, 2, 4}, {2, 3, 4}])
    out = surgery_branchsplit(td, 0, [1, 2], [4])
    assert out.comparison is Smaller
    assert check_w456(out.td).holds("W6")
    with pytest.raises(NotApplicable):
        surgery_branchsplit(td, 0, [1, 2], [3, 4])


def test_pathsplit_on_c8():
    td = c8_two_arcs()
    out = surgery_pathsplit(td, 0, 4, ({1, 2, 3}, {5, 6, 7}))
    assert out.comparison is Smaller
    assert validate_decomposition(out.td)[0]
    assert width(out.td) < width(td)
    # the node where the copies meet gets the same bag from both formulas
    glued = [t for t in out.td.nodes if t not in td.nodes and out.td.bags[t] == {0, 3, 4, 7}]
    assert len(glued) == 1
    assert {(p.t1, p.t2) for p in find_pathsplits(td)} >= {(0, 4)}


def test_pathsplit_minimal_case_c6():
    td = c6_two_arcs()
    out = surgery_pathsplit(td, 0, 2, ({1, 2}, {4, 5}))
    assert validate_decomposition(out.td)[0] and out.comparison is Smaller
    assert out.locus["k"] == 1 and out.locus["t0"] == 1


def test_pathsplit_hypotheses_named():
    td = c6_two_arcs()
    with pytest.raises(NotApplicable, match="partition"):
        surgery_pathsplit(td, 0, 2, ({1}, {4, 5}))
    with pytest.raises(NotApplicable, match="joins"):
        surgery_pathsplit(td, 0, 2, ({1, 5}, {2, 4}))
    thin = TreeDecomposition.from_path(cycle(6), [{0, 3, 1, 5}, {0, 3, 1, 5, 2}, {0, 3, 2, 4, 5}])
    with pytest.raises(NotApplicable):
        surgery_pathsplit(thin, 0, 2, ({1, 2}, {4, 5}))


def test_w7_on_c12():
    td, ends = branching_c12()
    (cert,) = violating_triads(td)
    out = surgery_w7(td, cert)
    assert out.comparison is Smaller
    assert validate_decomposition(out.td)[0]
    assert width(out.td) <= width(td)
    assert not violating_triads(out.td)
    # the cell holding the old centre drops in rank
    before = max(c.rank for c in enumerate_cells(td) if c.n == 2)
    after = max(c.rank for c in enumerate_cells(out.td) if c.n == 2)
    assert after < before


@pytest.mark.parametrize("arcs", [(4, 4, 6), (6, 6, 6)])
def test_w7_on_longer_arcs(arcs):
    td, _ = branching_cycle(arcs)
    certs = violating_triads(td)
    assert certs
    out = surgery_w7(td, certs[0])
    assert out.comparison is Smaller and validate_decomposition(out.td)[0]


def test_w7_rejects_satisfied_triad():
    td, _ = branching_cycle((2, 2, 2))
    from artifact.wprops import find_separable_triads
    (cert,) = find_separable_triads(td)
    with pytest.raises(NotApplicable):
        surgery_w7(td, cert)


# ---------------------------------------------------------------- minimize

def test_minimize_single_bag_unchanged():
    g = complete(4)
    td = TreeDecomposition(g, Graph([0]), {0: set(g.vertices)})
    res = minimize(td)
    assert res.fixpoint and res.log == [] and res.td == td


def test_minimize_duplicate_bag():
    g = path(3)
    td = TreeDecomposition.from_path(g, [{0, 1}, {0, 1}, {1, 2}])
    res = minimize(td)
    assert res.log[0]["kind"] == "identify"
    assert check_w456(res.td).all_hold()


def test_minimize_c12_log():
    td, _ = branching_c12()
    res = minimize(td)
    assert res.fixpoint and check_all(res.td).all_hold()
    lines = res.log_jsonl().splitlines()
    first = json.loads(lines[0])
    assert list(first) == ["step", "kind", "locus", "profile_before_digest", "profile_after_digest"]
    assert first["kind"] == "w7"
    digests = [json.loads(l)["profile_after_digest"] for l in lines]
    assert len(set(digests)) == len(digests)


def test_step_limit_reported():
    td, _ = branching_cycle((4, 4, 6))
    res = minimize(td, step_limit=1)
    assert not res.fixpoint and len(res.log) == 1


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_minimize_random_decompositions(seed):
    rng = random.Random(seed)
    td = random_decomposition(rng, rng.randint(3, 9), rng.randint(3, 8),
                              rng.uniform(0.2, 0.8), rng.uniform(0.3, 0.8))
    res = minimize(td)
    assert res.fixpoint and validate_decomposition(res.td)[0]
    assert width(res.td) <= width(td)
    assert compare_size(res.td, td) is (Smaller if res.log else Equal)
    assert check_all(res.td).all_hold()
