import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from artifact.fixtures import spider_tree
from artifact.graph import Graph, path, star
from artifact.treeorder import (
    Equivalent, Greater, HypothesisError, Less, all_trees, canonical_code,
    canonical_string, compare_trees, dominates, maximal_paths, p_bridges,
    random_tree, rank_key, spine, spine2_candidates, spine2_transform,
    spine_decomposition, tree_from_json, tree_to_json,
)

from oracles import oracle_dominated, oracle_outcome, tree_bridges


def trees_upto(n):
    return [t for k in range(1, n + 1) for t in all_trees(k)]


def same_shape(a, b):
    return canonical_string(a) == canonical_string(b)


# ---------------------------------------------------------------- bridges

def test_bridges_examples():
    assert p_bridges(path(5), list(range(5))) == []
    (b,) = p_bridges(star(3), [1, 0, 2])
    assert b.graph.n == 2 and b.attachments == {0} and b.kind == "component"
    sp = spider_tree([2, 2, 1])
    (b,) = p_bridges(sp, [2, 1, 0, 3, 4])
    assert set(b.graph.vertices) == {0, 5}


def test_bridges_reject_non_path():
    with pytest.raises(ValueError):
        p_bridges(path(4), [0, 2])


def test_chord_bridges_on_graphs():
    from artifact.graph import cycle
    bs = p_bridges(cycle(4), [0, 1, 2, 3])
    assert [b.kind for b in bs] == ["chord"] and bs[0].attachments == {0, 3}


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 12), st.integers(0, 10**6))
def test_bridges_partition_edges(n, seed):
    rng = random.Random(seed)
    t = random_tree(rng, n)
    p = rng.choice(maximal_paths(t))
    pedges = {tuple(sorted(e)) for e in zip(p, p[1:])}
    seen = []
    for b in p_bridges(t, p):
        assert len(b.attachments) == 1 and b.attachments <= set(p)
        seen.extend(b.graph.edges)
    assert sorted(seen) == sorted(set(t.edges) - pedges)
    assert len(p_bridges(t, p)) == len(tree_bridges(t, p))


# ------------------------------------------------------------- domination

def test_domination_examples():
    p2, p3 = path(2), path(3)
    assert dominates([], [p2]) and dominates([], [p2], strict=True)
    assert dominates([p2], [p3])
    assert dominates([p3], [p3]) and not dominates([p3], [p3], strict=True)
    assert not dominates([p3], [p2])


def test_domination_matches_oracle_on_small_sets():
    pool = trees_upto(4)
    sets = [list(c) for r in range(3) for c in itertools.combinations_with_replacement(pool, r)]
    for A in sets:
        for B in sets:
            for strict in (False, True):
                assert dominates(A, B, strict) == oracle_dominated(A, B, strict)


def test_domination_is_linear_and_strict_is_its_complement():
    pool = trees_upto(5)
    sets = [list(c) for r in range(3) for c in itertools.combinations_with_replacement(pool, r)]
    for A in sets:
        for B in sets:
            assert dominates(A, B) or dominates(B, A)
            assert dominates(A, B, strict=True) == (not dominates(B, A))


# ------------------------------------------------------------- comparator

def test_compare_examples():
    one = Graph([0])
    assert compare_trees(one, one) is Equivalent
    assert compare_trees(path(3), path(4)) is Less
    assert compare_trees(path(4), star(3)) is Less
    assert oracle_outcome(path(4), star(3)) == "Less"


def test_linearity_and_oracle_agreement_upto_seven():
    ts = trees_upto(7)
    rev = {Less: Greater, Greater: Less, Equivalent: Equivalent}
    for a in ts:
        for b in ts:
            out = compare_trees(a, b)
            assert out.value == oracle_outcome(a, b)
            assert compare_trees(b, a) is rev[out]


def test_transitivity_upto_six():
    ts = trees_upto(6)
    leq = {(i, j): compare_trees(a, b) is not Greater
           for i, a in enumerate(ts) for j, b in enumerate(ts)}
    idx = range(len(ts))
    for i, j, k in itertools.product(idx, idx, idx):
        if leq[i, j] and leq[j, k]:
            assert leq[i, k]


def test_rank_key_iff_equivalent_upto_seven():
    ts = trees_upto(7)
    # relabel to get non-canonical copies in the mix
    rng = random.Random(5)
    extra = []
    for t in ts:
        perm = list(t.vertices)
        rng.shuffle(perm)
        extra.append(t.relabel(dict(zip(t.vertices, perm))))
    pool = ts + extra
    for a in pool:
        for b in pool:
            assert (rank_key(a) == rank_key(b)) == (compare_trees(a, b) is Equivalent)
            assert (rank_key(a) < rank_key(b)) == (compare_trees(a, b) is Less)


def test_canonical_code_is_isomorphism_invariant():
    rng = random.Random(2)
    for t in trees_upto(8):
        perm = list(range(100, 100 + t.n))
        rng.shuffle(perm)
        assert canonical_code(t.relabel(dict(zip(t.vertices, perm)))) == canonical_code(t)
    codes = [canonical_code(t) for t in all_trees(9)]
    assert len(set(codes)) == len(codes) == 47


def test_tree_counts():
    assert [len(all_trees(n)) for n in range(1, 11)] == [1, 1, 1, 2, 3, 6, 11, 23, 47, 106]


# ------------------------------------------------------------------ spines

def test_spine_examples():
    assert spine(path(5)) in ([0, 1, 2, 3, 4], [4, 3, 2, 1, 0])
    s = spine(star(3))
    assert len(s) == 3 and s[1] == 0
    sp = spider_tree([2, 2, 1])
    assert set(spine(sp)) == {0, 1, 2, 3, 4}


def test_spine_is_deterministic_under_relabelling():
    rng = random.Random(8)
    for t in trees_upto(8):
        perm = list(t.vertices)
        rng.shuffle(perm)
        mp = dict(zip(t.vertices, perm))
        u = t.relabel(mp)
        # spine of the relabelled tree has the same bridge profile
        a = sorted(canonical_string(b.graph) for b in p_bridges(t, spine(t)))
        b = sorted(canonical_string(b.graph) for b in p_bridges(u, spine(u)))
        assert a == b
        assert spine(t) == spine(t)


def test_spine_optimal_against_oracle_upto_seven():
    for t in trees_upto(7):
        sb = tree_bridges(t, spine(t))
        for p in maximal_paths(t):
            assert oracle_dominated(sb, tree_bridges(t, p))


def test_spine_optimal_upto_nine():
    for t in trees_upto(9):
        sb = [b.graph for b in p_bridges(t, spine(t))]
        for p in maximal_paths(t):
            assert dominates(sb, [b.graph for b in p_bridges(t, p)])


def test_strictly_dominated_spine_means_less():
    ts = trees_upto(7)
    hits = 0
    for a in ts:
        for b in ts:
            if a.n != b.n:
                continue
            sb = [x.graph for x in p_bridges(b, spine(b))]
            for p in maximal_paths(a):
                if dominates([x.graph for x in p_bridges(a, p)], sb, strict=True):
                    assert compare_trees(a, b) is Less
                    hits += 1
                    break
    assert hits > 50


# ---------------------------------------------------- spine-decompositions

def test_spine_decomposition_examples():
    sd = spine_decomposition(path(4), 2)
    assert sd.length == 0 and sorted(sd.spines[0]) == [0, 1, 2, 3]
    sp = spider_tree([2, 2, 1])
    sd = spine_decomposition(sp, 5)
    assert sd.length == 1
    assert set(sd.spines[0]) == {0, 1, 2, 3, 4}
    assert set(sd.trees[1].vertices) == {0, 5}


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 14), st.integers(0, 10**6))
def test_spine_decomposition_contract(n, seed):
    rng = random.Random(seed)
    t = random_tree(rng, n)
    v = rng.randrange(n)
    sd = spine_decomposition(t, v)
    assert sd.trees[0] == t and v in sd.spines[-1]
    for i in range(sd.length):
        assert v not in sd.spines[i]
        nxt = sd.trees[i + 1]
        assert any(b.graph == nxt for b in p_bridges(sd.trees[i], list(sd.spines[i])))
        assert nxt.has_vertex(v)


# --------------------------------------------------------- rank decrease

def test_spine2_on_spider():
    t = spider_tree([2, 2, 2])
    (r3, r3p), = spine2_candidates(t, 0)
    out = spine2_transform(t, 0, r3, r3p)
    assert same_shape(out, spider_tree([1, 2, 3]))
    assert compare_trees(out, t) is Less
    assert oracle_outcome(out, t) == "Less"


def test_spine2_rejects_bad_inputs():
    with pytest.raises(HypothesisError, match="degree three"):
        spine2_transform(path(4), 1, 0, 1)
    k13 = star(3)
    assert spine2_candidates(k13, 0) == []
    with pytest.raises(HypothesisError, match="in this order"):
        spine2_transform(k13, 0, 3, 0)
    t = spider_tree([2, 2, 2])
    with pytest.raises(HypothesisError, match="adjacent"):
        spine2_transform(t, 0, 6, 1)


def spine2_instances(seed, count, lo=8, hi=14):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        t = random_tree(rng, rng.randint(lo, hi))
        cand = [(v, c) for v in t.vertices for c in spine2_candidates(t, v)]
        if cand:
            v, (r3, r3p) = rng.choice(cand)
            out.append((t, v, r3, r3p))
    return out


def test_spine2_random_trees_decrease_rank():
    for t, v, r3, r3p in spine2_instances(11, 200):
        for t1 in sorted(w for w in t.adj(v) if w in spine_decomposition(t, v).spines[-1]):
            out = spine2_transform(t, v, r3, r3p, t1=t1)
            assert out.is_tree() and out.n == t.n
            assert compare_trees(out, t) is Less
            if t.n <= 11:
                assert oracle_outcome(out, t) == "Less"


# -------------------------------------------------------------------- JSON

@settings(max_examples=50, deadline=None)
@given(st.integers(1, 15), st.integers(0, 10**6))
def test_parent_array_round_trip(n, seed):
    t = random_tree(random.Random(seed), n)
    back = tree_from_json(tree_to_json(t))
    assert same_shape(back, t)
    assert tree_to_json(back) == tree_to_json(tree_from_json(tree_to_json(back)))
