"""Acceptance suite: one test per criterion, each with its time limit.

Every test records a pass/fail line in RESULTS; conftest prints them in the
terminal summary, so the lines appear even when output is captured.
"""

import itertools
import random
import time
from contextlib import contextmanager

import networkx as nx

from artifact.cascade import (
    Cascade, build_pattern, cascade_violations, check_property, common_core, confinement_sets,
    find_cascade, find_injective_cascade, order_cascade, refine_injective, regularize, tame,
    witness_violations,
)
from artifact.corpus import atlas_graphs, connected_graphs, solver_witnesses, to_nx
from artifact.decomposition import (
    PathDecomposition, TreeDecomposition, exact_pathwidth, lift_path_decomposition,
    td_from_elimination_order, validate_decomposition, validate_path_decomposition, width,
)
from artifact.families import (embed_into_P, embed_into_Q, extract_minor_from_cascade,
                               find_apex_forest_vertex, gen_family)
from artifact.fixtures import (branching_c12, branching_cycle, cascade_cycle, spider_tree,
                               star_cascade, tripod_cascade)
from artifact.graph import (complete, complete_bipartite, cycle, find_minor_model, has_minor,
                            validate_minor_model)
from artifact.minimizer import (KINDS, NotApplicable, SizeOutcome, SurgeryInconclusive,
                                candidates, compare_size, minimize, surgery_w7)
from artifact.treeorder import (Equivalent, Greater, Less, all_trees, compare_trees,
                                dominates, maximal_paths, p_bridges, random_tree, spine,
                                spine2_candidates, spine2_transform)
from artifact.wprops import check_linked, check_w4, violating_triads

from conftest import random_decomposition, random_graph
from oracles import oracle_outcome

RESULTS = []


@contextmanager
def criterion(number, title, limit):
    start = time.perf_counter()
    try:
        yield
        elapsed = time.perf_counter() - start
        assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"
    except BaseException as e:
        elapsed = time.perf_counter() - start
        line = f"criterion {number:2d} FAIL  {title} ({elapsed:.1f}s): {e}"
        RESULTS.append(line)
        print(line)
        raise
    line = f"criterion {number:2d} PASS  {title} ({elapsed:.1f}s, limit {limit}s)"
    RESULTS.append(line)
    print(line)


def trees_upto(n):
    return [t for k in range(1, n + 1) for t in all_trees(k)]


# ----------------------------------------------------------------- 1

def test_c01_clique_pathwidth():
    with criterion(1, "path-width of K_k is k-1 for k = 2..6", 10):
        for k in range(2, 7):
            w, pd = exact_pathwidth(complete(k))
            assert w == k - 1
            assert validate_path_decomposition(pd)[0] and pd.width() == k - 1


# ----------------------------------------------------------------- 2

def test_c02_tree_order_soundness():
    with criterion(2, "tree order total, antisymmetric, transitive against the oracle", 120):
        ts = trees_upto(6)
        rev = {Less: Greater, Greater: Less, Equivalent: Equivalent}
        pairs = 0
        for a, b in itertools.combinations_with_replacement(ts, 2):
            out = compare_trees(a, b)
            assert out.value == oracle_outcome(a, b)
            assert compare_trees(b, a) is rev[out]
            assert oracle_outcome(b, a) == rev[out].value
            pairs += 1
        assert pairs == len(ts) * (len(ts) + 1) // 2
        small = trees_upto(5)
        leq = {(i, j): oracle_outcome(a, b) != "Greater"
               for i, a in enumerate(small) for j, b in enumerate(small)}
        for i, j, k in itertools.product(range(len(small)), repeat=3):
            if leq[i, j] and leq[j, k]:
                assert leq[i, k]
                assert compare_trees(small[i], small[k]) is not Greater


# ----------------------------------------------------------------- 3

def test_c03_spine_optimality():
    with criterion(3, "spine bridge set dominated by every maximal path, trees <= 9", 120):
        violations = 0
        for t in trees_upto(9):
            sb = [b.graph for b in p_bridges(t, spine(t))]
            for p in maximal_paths(t):
                if not dominates(sb, [b.graph for b in p_bridges(t, p)]):
                    violations += 1
        assert violations == 0


# ----------------------------------------------------------------- 4

def test_c04_rank_decrease():
    with criterion(4, "spine2 rebuild is Less on spider(2,2,2) and 200 random trees", 120):
        t = spider_tree((2, 2, 2))
        (r3, r3p), = spine2_candidates(t, 0)
        assert compare_trees(spine2_transform(t, 0, r3, r3p), t) is Less
        rng = random.Random(2024)
        done = 0
        while done < 200:
            t = random_tree(rng, rng.randint(8, 14))
            cand = [(v, c) for v in t.vertices for c in spine2_candidates(t, v)]
            if not cand:
                continue
            v, (r3, r3p) = rng.choice(cand)
            out = spine2_transform(t, v, r3, r3p)
            assert out.is_tree() and out.n == t.n
            assert compare_trees(out, t) is Less
            done += 1


# ----------------------------------------------------------------- 5

def c8_two_arcs():
    return TreeDecomposition.from_path(
        cycle(8), [{0, 4, 1, 7}, {0, 4, 1, 2, 7, 6}, {0, 4, 2, 6}, {0, 4, 2, 3, 6, 5},
                   {0, 4, 3, 5}])


def c6_two_arcs():
    return TreeDecomposition.from_path(cycle(6), [{0, 3, 1, 5}, {0, 3, 1, 2, 5, 4}, {0, 3, 2, 4}])


def test_c05_surgery_monotonicity():
    with criterion(5, "every applicable surgery is valid, Smaller, width-safe", 300):
        corpus = [td for _, td in solver_witnesses(connected_graphs(7))]
        corpus += [branching_c12()[0], c8_two_arcs(), c6_two_arcs()]
        corpus += [branching_cycle(a)[0] for a in [(2, 2, 2), (4, 4, 4), (4, 4, 6), (6, 6, 6)]]
        rng = random.Random(5)
        corpus += [random_decomposition(rng, rng.randint(3, 9), rng.randint(3, 8),
                                        rng.uniform(0.2, 0.8), rng.uniform(0.3, 0.8))
                   for _ in range(100)]
        assert len(corpus) >= 200
        applied = {k: 0 for k in KINDS}
        for td in corpus:
            for kind in KINDS:
                for _, run in candidates(td, kind):
                    try:
                        out = run()
                    except NotApplicable:
                        continue
                    except SurgeryInconclusive as e:
                        raise AssertionError(f"{kind} applied but was not Smaller: {e}")
                    applied[kind] += 1
                    assert validate_decomposition(out.td)[0]
                    assert compare_size(out.td, td) is SizeOutcome.SMALLER
                    assert width(out.td) <= width(td)
            # minimize one step at a time; each step must be strictly smaller
            cur = td
            while True:
                res = minimize(cur, step_limit=1)
                if not res.log:
                    assert res.fixpoint
                    break
                assert compare_size(res.td, cur) is SizeOutcome.SMALLER
                cur = res.td
        for kind in KINDS:
            assert applied[kind] > 0, f"{kind} never applied on the corpus"


# ----------------------------------------------------------------- 6

def test_c06_w7_pipeline_c12():
    with criterion(6, "C_12 violates W7 and surgery_w7 removes it", 60):
        td, _ = branching_c12()
        assert check_linked(td).holds and check_w4(td).holds
        certs = violating_triads(td)
        assert len(certs) == 1
        out = surgery_w7(td, certs[0])
        assert validate_decomposition(out.td)[0]
        assert out.comparison is SizeOutcome.SMALLER
        assert compare_size(out.td, td) is SizeOutcome.SMALLER
        assert not violating_triads(out.td)


# ----------------------------------------------------------------- 7

def _fixture_decompositions():
    out = [branching_c12()[0]]
    out += [cascade_cycle(h, chords)[0] for h in (1, 2, 3) for chords in (False, True)]
    out += [tripod_cascade(h, kind, apices=a)[0]
            for h in (1, 2) for kind in "AB" for a in (0, 1)]
    rng = random.Random(7)
    out += [random_decomposition(rng, rng.randint(4, 9), rng.randint(4, 8),
                                 rng.uniform(0.5, 1.0), rng.uniform(0.2, 0.6))
            for _ in range(60)]
    return out


def _revalidate(c):
    assert cascade_violations(c) == [], cascade_violations(c)
    if c.confinement is not None:
        for t0 in c.pattern.majors():
            assert c.confinement[t0] == confinement_sets(c, t0)
    for w in c.witnesses.values():
        assert witness_violations(c, w) == []


def test_c07_cascade_validity():
    with criterion(7, "cascades from find/refine/order/regularize/tame re-validate", 300):
        counts = dict.fromkeys(("find", "refine", "order", "regularize", "tame"), 0)
        for td in _fixture_decompositions():
            for h in (1, 2):
                for s in sorted({len(b) for b in td.bags.values() if b}):
                    res = find_cascade(td, h, s)
                    if not res.found:
                        continue
                    _revalidate(res.cascade)
                    counts["find"] += 1
                    core = common_core(res.cascade)
                    if core and h == 2:
                        ref = refine_injective(td, res.cascade, 1, 1, len(core))
                        _revalidate(ref.cascade)
                        counts["refine"] += 1
                res = find_injective_cascade(td, h)
                if not res.found:
                    continue
                _revalidate(res.cascade)
                counts["find"] += 1
                try:
                    c = order_cascade(res.cascade)
                except ValueError:
                    continue  # no linkage: the decomposition is not linked on the span
                _revalidate(c)
                counts["order"] += 1
                for a in range(1, h + 1):
                    reg = regularize(c, a)
                    if reg.cascade is not None:
                        _revalidate(reg.cascade)
                        counts["regularize"] += 1
                tamed = tame(c, 1)
                if tamed is not None:
                    _revalidate(tamed.cascade)
                    counts["tame"] += 1
        assert all(counts.values()), counts


# ----------------------------------------------------------------- 8

def _star_fixtures(seed, count):
    rng = random.Random(seed)
    parts = [{0, 1}, {2, 3}, {4, 5}]
    out = []
    while len(out) < count:
        middle = set(range(6, 6 + rng.choice([2, 3])))
        cand = sorted({tuple(sorted(e)) for x in parts
                       for e in itertools.combinations(x | middle, 2)})
        edges = [e for e in cand if rng.random() < 0.55]
        td, eta = star_cascade(parts, middle, edges)
        c = Cascade(td, build_pattern("T", 1), eta, 2, frozenset())
        if cascade_violations(c):
            continue
        try:
            out.append(order_cascade(c))
        except ValueError:
            continue
    return out


def test_c08_ab_implies_a_or_b():
    with criterion(8, "AB_ij witnessed implies A_ij or B_ij, >= 20 torsos", 120):
        cascades = _star_fixtures(8, 60)
        for td in (cascade_cycle(2, True)[0], tripod_cascade(1, "A")[0],
                   tripod_cascade(1, "B")[0], tripod_cascade(2, "B")[0]):
            cascades.append(order_cascade(find_injective_cascade(td, 1).cascade))
        witnessed = 0
        for c in cascades:
            for t0 in c.pattern.majors():
                for i, j in itertools.combinations(range(c.width), 2):
                    ab = check_property(c, t0, "AB", i, j)
                    if not ab.found:
                        continue
                    witnessed += 1
                    a = check_property(c, t0, "A", i, j)
                    b = check_property(c, t0, "B", i, j)
                    assert a.found or b.found, (c.td, t0, i, j)
                    for r in (a, b):
                        if r.found:
                            assert witness_violations(c, r.witness) == []
        assert witnessed >= 20


# ----------------------------------------------------------------- 9

def test_c09_minor_extraction():
    with criterion(9, "extracted P and Q models validate with base-edge conditions", 60):
        for h in (1, 2):
            for kind in "AB":
                td, _ = tripod_cascade(h, kind)
                c = order_cascade(find_injective_cascade(td, h).cascade)
                res = tame(c, h, tags=(kind,))
                assert res is not None and res.tag == kind
                e = extract_minor_from_cascade(res.cascade, kind)
                ok, bad = validate_minor_model(e.model)
                assert ok, bad
                assert e.k == h and e.model.host == td.graph
                if kind == "A":
                    assert e.model.pattern == gen_family("P", h).graph
                else:
                    q = gen_family("Q", h)
                    assert e.model.pattern == q.graph.delete_edges([q.base_edge])
                    top = res.cascade.xi[res.cascade.pattern.top]
                    w1, w2 = q.base_edge
                    assert top[res.i] in e.model.nodes[w1]
                    assert top[res.j] in e.model.nodes[w2]


# ----------------------------------------------------------------- 10

def _outerplanar_oracle(g):
    # outerplanar iff planar after adding a vertex adjacent to everything
    h = to_nx(g)
    apex = max(g.vertices) + 1
    h.add_edges_from((apex, v) for v in g.vertices)
    return nx.check_planarity(h)[0]


def test_c10_family_exclusions():
    with criterion(10, "P_k excludes A and C_32; Q_k excludes K_4, K_23 and contains CT_{k-1}",
                   300):
        A, C32 = gen_family("A").graph, gen_family("C32").graph
        # apex-forests are minor-closed; A and C_32 are not apex-forests
        assert find_apex_forest_vertex(A) is None and find_apex_forest_vertex(C32) is None
        for k in (1, 2, 3):
            p = gen_family("P", k).graph
            assert find_apex_forest_vertex(p) is not None
            for F in (A, C32):
                assert find_minor_model(p, F, 50_000_000).status == "none"
        K4, K23 = complete(4), complete_bipartite(2, 3)
        # outerplanar graphs are minor-closed; K_4 and K_23 are not outerplanar
        assert not _outerplanar_oracle(K4) and not _outerplanar_oracle(K23)
        for k in (1, 2, 3, 4):
            q = gen_family("Q", k).graph
            assert _outerplanar_oracle(q)
            for F in (K4, K23):
                assert find_minor_model(q, F, 50_000_000).status == "none"
            res = find_minor_model(q, gen_family("CT", k - 1).graph, 50_000_000)
            assert res.found and validate_minor_model(res.model)[0]


# ----------------------------------------------------------------- 11

def test_c11_desk_scale_embeddings():
    with criterion(11, "graphs <= 6 vertices without K4/K23/C32/A embed in P and Q", 600):
        forbidden = [complete(4), complete_bipartite(2, 3), gen_family("C32").graph,
                     gen_family("A").graph]
        count = 0
        for H in atlas_graphs(6, 1):
            if any(has_minor(H, F) for F in forbidden):
                continue
            count += 1
            for e in (embed_into_P(H), embed_into_Q(H)):
                ok, bad = validate_minor_model(e.model)
                assert ok, bad
                assert e.model.pattern == H and e.model.host == e.family.graph
        assert count > 100


# ----------------------------------------------------------------- 12

def test_c12_lift():
    with criterion(12, "lifted path-decompositions obey the product bound and floor(p/w)", 120):
        rng = random.Random(12)
        checked = 0
        while checked < 100:
            n = rng.randint(3, 9)
            g = random_graph(rng, n, rng.uniform(0.3, 0.8))
            order = list(g.vertices)
            rng.shuffle(order)
            td = td_from_elimination_order(g, order)
            pwT, pdT = exact_pathwidth(td.tree)
            pairs = [pdT, PathDecomposition(td.tree, [set(td.tree.vertices)])]
            for pd in pairs:
                out = lift_path_decomposition(td, pd)
                assert validate_path_decomposition(out)[0]
                assert out.width() + 1 <= (width(td) + 1) * (pd.width() + 1)
            p = exact_pathwidth(g)[0]
            w = width(td) + 1  # the width of td is strictly less than w
            assert pwT >= p // w
            checked += 1
