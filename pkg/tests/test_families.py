import random

import pytest

from hypothesis import given, settings, strategies as st

from artifact.cascade import find_injective_cascade, order_cascade, tame
from artifact.families import (
    FAMILIES, complete_outerplanar, dichotomy_check, embed_into_P, embed_into_Q,
    extract_minor_from_cascade, find_apex_forest_vertex, gen_family, is_forest, outer_order,
    triangle_count,
)
from artifact.fixtures import cascade_cycle, tripod_cascade
from artifact.graph import (Graph, complete, complete_bipartite, cycle, has_minor,
                            is_outerplanar, is_two_connected, path, star,
                            validate_minor_model, wheel)


# ------------------------------------------------------------ generators

@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_p_counts(k):
    f = gen_family("P", k)
    assert f.graph.n == 2 ** (k + 1)
    assert f.graph.m == 2 ** (k + 1) - 2 + 2 ** k
    assert len(f.apices) == 1 and len(f.leaves) == 2 ** k
    assert find_apex_forest_vertex(f.graph) is not None
    for name, extra in (("P'", 1), ("P''", 2)):
        g = gen_family(name, k).graph
        assert g.n == f.graph.n + extra
        assert g.m == f.graph.m + extra * 2 ** k


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_q_counts(k):
    f = gen_family("Q", k)
    assert f.graph.n == 2 ** k + 1
    assert triangle_count(f.graph) == 2 ** k - 1
    assert f.graph.m == 2 * f.graph.n - 3  # maximal outerplanar
    assert is_outerplanar(f.graph) and is_two_connected(f.graph)
    assert f.base_edge == (0, 1)
    assert len(f.leaves) == (3 if k == 1 else 2 ** (k - 1))  # degree-2 vertices
    for name, extra in (("Q'", 1), ("Q''", 2)):
        g = gen_family(name, k).graph
        assert g.n == f.graph.n + extra


def test_q_blocks_cover_triangles():
    f = gen_family("Q", 3)
    inner = [b for b in f.blocks.blocks() if b.k]
    assert len(inner) == 7
    for b in inner:
        assert f.graph.has_edge(b.a, b.w) and f.graph.has_edge(b.b, b.w)


def test_small_families():
    a = gen_family("A")
    assert (a.graph.n, a.graph.m) == (6, 9)
    c = gen_family("C32")
    assert (c.graph.n, c.graph.m) == (6, 6) and triangle_count(c.graph) == 2
    assert gen_family("CT", 3).graph.n == 15
    with pytest.raises(ValueError):
        gen_family("R", 1)
    with pytest.raises(ValueError):
        gen_family("Q", 0)


def test_every_family_name_builds():
    for name in FAMILIES:
        assert gen_family(name, 2).graph.n > 0


def test_apex_forest_vertex():
    assert find_apex_forest_vertex(star(5)) == 0
    assert find_apex_forest_vertex(cycle(5)) == 0
    # deleting the hub of a wheel leaves its rim, a cycle
    assert find_apex_forest_vertex(wheel(5)) is None
    assert find_apex_forest_vertex(complete(4)) is None
    assert is_forest(path(4)) and not is_forest(cycle(3))


# ----------------------------------------------------------- P embedding

def _check(e, H):
    ok, bad = validate_minor_model(e.model)
    assert ok, bad
    assert e.model.pattern == H and e.model.host == e.family.graph


@pytest.mark.parametrize("H,k", [(path(2), 1), (star(3), 2), (path(7), 6)])
def test_embed_p_fixed(H, k):
    e = embed_into_P(H)
    _check(e, H)
    assert e.k == k


def test_embed_p_rejects_non_apex_forest():
    with pytest.raises(ValueError):
        embed_into_P(complete(4))
    with pytest.raises(ValueError):
        embed_into_P(wheel(5))
    with pytest.raises(ValueError):
        embed_into_P(cycle(5), v=99)


def _apex_forest(seed, n):
    rng = random.Random(seed)
    edges = [(i, rng.randrange(1, i)) for i in range(2, n) if rng.random() < 0.8]
    edges += [(0, v) for v in range(1, n) if rng.random() < 0.5]
    return Graph(range(n), edges)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 9))
def test_embed_p_random_apex_forests(seed, n):
    H = _apex_forest(seed, n)
    e = embed_into_P(H, v=0)
    _check(e, H)


# ----------------------------------------------------------- Q embedding

def _random_outerplanar(seed, n):
    """Random triangulated polygon with some edges removed."""
    rng = random.Random(seed)
    edges = set()

    def split(poly):
        if len(poly) < 3:
            return
        a, b = poly[0], poly[-1]
        k = rng.randrange(1, len(poly) - 1)
        edges.update({(min(a, poly[k]), max(a, poly[k])), (min(b, poly[k]), max(b, poly[k]))})
        split(poly[:k + 1])
        split(poly[k:])

    order = list(range(n))
    rng.shuffle(order)
    edges.add((min(order[0], order[-1]), max(order[0], order[-1])))
    split(order)
    keep = [e for e in sorted(edges) if rng.random() < 0.8]
    return Graph(range(n), keep)


@pytest.mark.parametrize("H,k", [(cycle(5), 3), (complete(3), 1), (path(2), 1)])
def test_embed_q_fixed(H, k):
    e = embed_into_Q(H)
    _check(e, H)
    assert e.k == k
    a1, a2 = e.base
    assert 0 in e.model.nodes[a1] and 1 in e.model.nodes[a2]


def test_embed_q_rejects():
    with pytest.raises(ValueError):
        embed_into_Q(complete(4))
    with pytest.raises(ValueError):
        embed_into_Q(complete_bipartite(2, 3))
    # P_2 contains K_{2,3} as a minor
    with pytest.raises(ValueError):
        embed_into_Q(gen_family("P", 2).graph)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(2, 9))
def test_embed_q_random_outerplanar(seed, n):
    H = _random_outerplanar(seed, n)
    assert is_outerplanar(H)
    e = embed_into_Q(H)
    _check(e, H)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(3, 9))
def test_completion_is_maximal_outerplanar(seed, n):
    H = _random_outerplanar(seed, n)
    nt = complete_outerplanar(H)
    g = nt.graph
    assert all(g.has_edge(*e) for e in H.edges)
    assert is_outerplanar(g) and g.m == 2 * g.n - 3
    assert len(nt.triangles) == g.n - 2 == triangle_count(g)


def test_outer_order_matches_recognition():
    from artifact.corpus import two_connected_graphs
    for H in two_connected_graphs(6):
        assert (outer_order(H) is not None) == is_outerplanar(H)


# ------------------------------------------------------------ extraction

def _host_cascade(h, kind, apices=0):
    td, _ = tripod_cascade(h, kind, apices=apices)
    c = order_cascade(find_injective_cascade(td, h).cascade)
    return tame(c, h, tags=(kind,)).cascade


@pytest.mark.parametrize("h", [1, 2, 3])
@pytest.mark.parametrize("variant", [0, 1, 2])
def test_extract_p(h, variant):
    c = _host_cascade(h, "A", apices=variant)
    e = extract_minor_from_cascade(c, "A", variant)
    assert e.family.name == "P" + "'" * variant and e.k == h
    ok, bad = validate_minor_model(e.model)
    assert ok, bad
    assert set(e.model.pattern.vertices) == set(e.family.graph.vertices)


@pytest.mark.parametrize("h", [1, 2, 3])
def test_extract_q(h):
    c = _host_cascade(h, "B")
    e = extract_minor_from_cascade(c, "B")
    assert e.family.name == "Q" and e.k == h
    ok, bad = validate_minor_model(e.model)
    assert ok, bad
    # the base edge is dropped, and its ends carry the two root vertices
    assert not e.model.pattern.has_edge(*e.base)
    top = c.xi[c.pattern.top]
    assert top[0] in e.model.nodes[0] and top[1] in e.model.nodes[1]


@pytest.mark.parametrize("variant", [1, 2])
def test_extract_q_apex_variants(variant):
    c = _host_cascade(3, "B", apices=variant)
    e = extract_minor_from_cascade(c, "B", variant)
    assert e.family.name == "Q" + "'" * variant and e.k == 2
    assert validate_minor_model(e.model)[0]


def test_extract_errors():
    c = _host_cascade(1, "B")
    with pytest.raises(ValueError):
        extract_minor_from_cascade(c, "B", 1)
    with pytest.raises(ValueError):
        extract_minor_from_cascade(c, "A")
    with pytest.raises(ValueError):
        extract_minor_from_cascade(c, "C")
    c = _host_cascade(2, "B", apices=1)
    with pytest.raises(ValueError):
        extract_minor_from_cascade(c, "B", 1)


def test_extract_from_chorded_cycle():
    td, _ = cascade_cycle(2, chords=True)
    c = order_cascade(find_injective_cascade(td, 2).cascade)
    res = tame(c, 1)
    e = extract_minor_from_cascade(res.cascade, res.tag)
    assert e.family.name == "Q" and validate_minor_model(e.model)[0]


# ------------------------------------------------------------- dichotomy

def test_dichotomy_check_small():
    rep = dichotomy_check(gen_family("P", 2).graph, 2)
    assert rep["has_P"] is True and rep["pathwidth"] >= 2
    rep = dichotomy_check(gen_family("Q", 2).graph, 2)
    assert rep == {"pathwidth": 2, "has_P": False, "has_Q": True}
    # Q_2 has seven edges, C_6 only six
    assert dichotomy_check(cycle(6), 2) == {"pathwidth": 2, "has_P": False, "has_Q": False}


@pytest.mark.parametrize("k", [1, 2, 3])
def test_family_minor_oracles(k):
    p = gen_family("P", k).graph
    q = gen_family("Q", k).graph
    assert has_minor(p, gen_family("CT", k).graph)
    assert has_minor(q, gen_family("CT", k - 1).graph)
    assert not has_minor(q, complete(4))
