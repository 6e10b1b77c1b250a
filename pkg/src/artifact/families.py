"""Target and excluded graph families, constructive embeddings into them, and
extraction of family minors from cascades carrying tripod witnesses.

P_k   binary tree CT_k plus an apex adjacent to every leaf; P'_k and P''_k
      have two and three such apices.
Q_k   Q_1 = K_3; Q_k glues two copies of Q_{k-1} onto a triangle w1 w2 w,
      the base edge of each copy going to w1-w and w2-w. Q'_k and Q''_k add
      one or two apices adjacent to the degree-2 vertices.
A     a 6-cycle a1..a6 with chords a1a3, a3a5, a5a1.
C32   two disjoint triangles.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .cascade import build_pattern, outer_nodes
from .decomposition import exact_pathwidth
from .graph import (Graph, MinorModel, Separator, complete, complete_bipartite, components,
                    disjoint_paths, disjoint_union, has_minor, validate_minor_model)

FAMILIES = ("P", "P'", "P''", "Q", "Q'", "Q''", "A", "C32", "CT")


@dataclass(frozen=True)
class QBlock:
    """One level of the recursive Q_k structure: base edge (a, b), the third
    triangle vertex w, and the copies glued on a-w (left) and b-w (right)."""
    k: int
    a: int
    b: int
    w: int | None = None
    left: QBlock | None = None
    right: QBlock | None = None

    def blocks(self):
        out = [self]
        for x in out:
            if x.k:
                out.extend((x.left, x.right))
        return out


@dataclass
class Family:
    name: str
    k: int
    graph: Graph
    apices: tuple = ()
    leaves: tuple = ()
    base_edge: tuple | None = None
    blocks: QBlock | None = None
    extra: dict = field(default_factory=dict)


def _build_q(k):
    counter = itertools.count(2)

    def rec(level, a, b):
        if level == 0:
            return QBlock(0, a, b)
        w = next(counter)
        return QBlock(level, a, b, w, rec(level - 1, a, w), rec(level - 1, b, w))

    root = rec(k, 0, 1)
    edges = {(min(x.a, x.b), max(x.a, x.b)) for x in root.blocks()}
    n = 2 + sum(1 for x in root.blocks() if x.k)
    return Graph(range(n), sorted(edges)), root


def gen_family(name, k=1):
    """Build a family member with its designated structure."""
    if name not in FAMILIES:
        raise ValueError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")
    if name == "A":
        edges = [(i, (i + 1) % 6) for i in range(6)] + [(0, 2), (2, 4), (4, 0)]
        return Family("A", 0, Graph(range(6), edges))
    if name == "C32":
        return Family("C32", 0, disjoint_union(complete(3), complete(3)))
    if k < (0 if name == "CT" else 1):
        raise ValueError("k must be at least 1")
    if name == "CT":
        pat = build_pattern("CT", k)
        return Family("CT", k, pat.tree, leaves=tuple(pat.leaves()))
    extra_apices = name.count("'")
    if name.startswith("P"):
        pat = build_pattern("CT", k)
        leaves = tuple(pat.leaves())
        n = pat.tree.n
        apices = tuple(range(n, n + 1 + extra_apices))
        edges = list(pat.tree.edges) + [(x, l) for x in apices for l in leaves]
        return Family(name, k, Graph(range(n + len(apices)), edges), apices, leaves)
    g, root = _build_q(k)
    deg2 = tuple(v for v in g.vertices if g.degree(v) == 2)
    apices = tuple(range(g.n, g.n + extra_apices))
    edges = list(g.edges) + [(x, v) for x in apices for v in deg2]
    return Family(name, k, Graph(range(g.n + len(apices)), edges), apices, deg2,
                  base_edge=(0, 1), blocks=root)


def triangle_count(g):
    return sum(1 for a, b, c in itertools.combinations(g.vertices, 3)
               if g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c))


# ------------------------------------------------------------------ P side

def is_forest(g):
    return g.m == g.n - len(components(g))


def find_apex_forest_vertex(g):
    """The smallest vertex whose deletion leaves a forest, or None."""
    for v in g.vertices:
        if is_forest(g.delete_vertices([v])):
            return v
    return None


@dataclass
class Embedding:
    family: Family
    model: MinorModel
    base: tuple | None = None  # pattern edge whose ends hold w1, w2 (Q only)

    @property
    def k(self):
        return self.family.k


def _binary_layout(tree_adj, root):
    """Branch sets of a tree inside CT_t (heap ids). Each vertex owns a
    right-going chain; its children hang off the chain to the left, the last
    child taking the right slot of the second-to-last chain node."""
    order, parent = [root], {root: None}
    for x in order:
        for y in sorted(tree_adj[x]):
            if y not in parent:
                parent[y] = x
                order.append(y)
    kids = {x: [y for y in sorted(tree_adj[x]) if parent.get(y) == x] for x in order}
    need = {}
    for x in reversed(order):
        ch = sorted(kids[x], key=lambda y: (-need[y], y))
        kids[x] = ch
        d = len(ch)
        if d == 0:
            need[x] = 0
        elif d == 1:
            need[x] = 1 + need[ch[0]]
        else:
            need[x] = max([k + 1 + need[c] for k, c in enumerate(ch[:-1])]
                          + [d - 1 + need[ch[-1]]])
    nodes = {}

    def place(x, at):
        ch = kids[x]
        chain = [at]
        for _ in range(max(len(ch) - 2, 0)):
            chain.append(2 * chain[-1] + 2)
        nodes[x] = set(chain)
        for k, c in enumerate(ch):
            if len(ch) >= 2 and k == len(ch) - 1:
                place(c, 2 * chain[-1] + 2)
            else:
                place(c, 2 * chain[k] + 1)

    place(root, 0)
    return need[root], nodes


def _ct_subtree(v, depth, k):
    out = []
    level = [v]
    for _ in range(depth, k + 1):
        out.extend(level)
        level = [c for x in level for c in (2 * x + 1, 2 * x + 2)]
    return out


def _depth(v):
    d = 0
    while v:
        v = (v - 1) // 2
        d += 1
    return d


def embed_into_P(H, v=None):
    """Model of H in P_k, where H - v is a forest.

    The forest is joined into one tree and laid out in CT_t. Every CT_t
    vertex then becomes a branch set of CT_{2t} that reaches a leaf, so one
    apex adjacent to all leaves sees all of them.
    """
    if v is None:
        v = find_apex_forest_vertex(H)
        if v is None:
            raise ValueError("no vertex whose deletion leaves a forest")
    F = H.delete_vertices([v])
    if not is_forest(F):
        raise ValueError(f"deleting {v} does not leave a forest")
    adj = {x: set(F.adj(x)) for x in F.vertices}
    comps = components(F)
    for a, b in zip(comps, comps[1:]):
        adj[a[0]].add(b[0])
        adj[b[0]].add(a[0])
    if adj:
        t, layout = min((_binary_layout(adj, r) for r in sorted(adj)), key=lambda x: x[0])
    else:
        t, layout = 0, {}
    k = max(1, 2 * t)
    fam = gen_family("P", k)

    def image(x):
        # x is a CT_t heap id; map to CT_k by doubling the path from the root
        y = 0
        bits = []
        while x:
            bits.append(x % 2 == 1)
            x = (x - 1) // 2
        for left in reversed(bits):
            y = 2 * (2 * y + 1) + 1 if left else 2 * (2 * y + 2) + 2
        return y

    def branch(x):
        y = image(x)
        d = 2 * _depth(x)
        if _depth(x) == t:
            return set(_ct_subtree(y, d, k))
        ly, ry = 2 * y + 1, 2 * y + 2
        return {y, ly, ry} | set(_ct_subtree(2 * ly + 2, d + 2, k))

    nodes = {u: set().union(*(branch(x) for x in layout[u])) for u in layout}
    nodes[v] = {fam.apices[0]}
    model = MinorModel(H, fam.graph, nodes)
    ok, bad = validate_minor_model(model)
    if not ok:
        raise AssertionError(f"P-embedding produced an invalid model: {bad}")
    return Embedding(fam, model)


# ------------------------------------------------------------------ Q side

def _crosses(pos, e, f):
    if set(e) & set(f):
        return False
    a, b = sorted((pos[e[0]], pos[e[1]]))
    inside = [a < pos[x] < b for x in f]
    return inside[0] != inside[1]


def _noncrossing(g, order):
    pos = {x: k for k, x in enumerate(order)}
    return not any(_crosses(pos, e, f) for e, f in itertools.combinations(g.edges, 2))


def outer_order(g):
    """A cyclic vertex order with no two edges crossing as chords, or None."""
    vs = list(g.vertices)
    if len(vs) <= 3:
        return vs
    import networkx as nx
    from .corpus import to_nx
    nxg = to_nx(g)
    apex = max(vs) + 1
    nxg.add_edges_from((apex, x) for x in vs)
    planar, emb = nx.check_planarity(nxg)
    if planar:
        order = list(emb.neighbors_cw_order(apex))
        if _noncrossing(g, order):
            return order
    if len(vs) > 9:
        return None
    first = vs[0]
    for rest in itertools.permutations(vs[1:]):
        order = [first, *rest]
        if _noncrossing(g, order):
            return order
    return None


def _triangulate(poly, edges, out):
    """Fan-triangulate a polygon, first splitting along existing chords."""
    n = len(poly)
    if n < 3:
        return
    if n == 3:
        out.append(tuple(poly))
        return
    for p in range(n):
        for q in range(p + 2, n):
            if p == 0 and q == n - 1:
                continue
            if frozenset((poly[p], poly[q])) in edges:
                _triangulate(poly[p:q + 1], edges, out)
                _triangulate(poly[q:] + poly[:p + 1], edges, out)
                return
    m = poly.index(min(poly))
    rot = poly[m:] + poly[:m]
    for k in range(1, n - 1):
        out.append((rot[0], rot[k], rot[k + 1]))


@dataclass
class NearTriangulation:
    graph: Graph
    order: list
    triangles: list
    added: list  # vertices added to reach three


def complete_outerplanar(H):
    """A 2-connected outerplanar near-triangulation containing H as a
    subgraph: the outer cycle is closed along a non-crossing cyclic order,
    then each face is fan-triangulated from its smallest vertex."""
    if H.n == 0:
        raise ValueError("empty graph")
    order = outer_order(H)
    if order is None:
        raise ValueError("graph is not outerplanar")
    added = []
    nxt = max(H.vertices) + 1
    while len(order) < 3:
        order.append(nxt)
        added.append(nxt)
        nxt += 1
    edges = {frozenset(e) for e in H.edges}
    edges |= {frozenset((order[k], order[(k + 1) % len(order)])) for k in range(len(order))}
    tris = []
    _triangulate(list(order), edges, tris)
    for a, b, c in tris:
        edges |= {frozenset((a, b)), frozenset((b, c)), frozenset((a, c))}
    g = Graph(sorted(set(order)), [tuple(sorted(e)) for e in edges])
    return NearTriangulation(g, order, tris, added)


def embed_into_Q(H, base=None):
    """Model of H in Q_k with k the number of triangles of a near-triangulation
    containing H. The base edge w1 w2 of Q_k lies in the nodes of the ends of
    base, an outer edge (the lexicographically smallest by default)."""
    if has_minor(H, complete(4)) or has_minor(H, complete_bipartite(2, 3)):
        raise ValueError("graph has a K4 or K23 minor")
    nt = complete_outerplanar(H)
    order = nt.order
    n = len(order)
    outer = sorted(tuple(sorted((order[k], order[(k + 1) % n]))) for k in range(n))
    if base is None:
        base = outer[0]
    if tuple(sorted(base)) not in outer:
        raise ValueError(f"{base} is not an outer edge of the completion")
    a1, a2 = base
    p, q = order.index(a1), order.index(a2)
    step = 1 if (q - p) % n == n - 1 else -1
    poly = [order[(p + step * k) % n] for k in range(n)]
    assert poly[-1] == a2
    fam = gen_family("Q", len(nt.triangles))
    g = nt.graph
    nodes = {x: set() for x in g.vertices}

    def rec(poly, blk):
        a, b = poly[0], poly[-1]
        nodes[a].add(blk.a)
        nodes[b].add(blk.b)
        if len(poly) == 2:
            return
        k = next(k for k in range(1, len(poly) - 1)
                 if g.has_edge(a, poly[k]) and g.has_edge(b, poly[k]))
        nodes[poly[k]].add(blk.w)
        rec(poly[:k + 1], blk.left)
        rec(poly[k:][::-1], blk.right)

    rec(poly, fam.blocks)
    model = MinorModel(H, fam.graph, {x: nodes[x] for x in H.vertices})
    ok, bad = validate_minor_model(model)
    if not ok:
        raise AssertionError(f"Q-embedding produced an invalid model: {bad}")
    if 0 not in nodes[a1] or 1 not in nodes[a2]:
        raise AssertionError("base edge condition violated")
    return Embedding(fam, model, (a1, a2))


# -------------------------------------------------------- cascade extraction

def _witnesses(c, tag, i, j):
    out = {}
    for t0 in c.pattern.majors():
        w = c.witnesses.get(t0)
        if w is None or w.tag != tag or {w.i, w.j} != {i, j}:
            from .cascade import check_property
            res = check_property(c, t0, tag, i, j)
            if not res.found:
                raise ValueError(f"major vertex {t0} has no {tag} witness for ({i}, {j})")
            w = res.witness
        out[t0] = w
    return out


def _fan(c, t, source, targets):
    """Disjoint paths from source to each target, interiors in the outer
    graph at t minus its bag. Returns the paths (source first) or None."""
    bag = c.td.bags[c.eta[t]]
    vs = set().union(*(c.td.bags[x] for x in outer_nodes(c, t))) - (c.I or frozenset())
    local = (vs - bag) | {source} | set(targets)
    g = c.td.graph.subgraph(local)
    starts = set(g.adj(source))
    res = disjoint_paths(g.delete_vertices([source]), starts, set(targets), len(targets))
    if isinstance(res, Separator):
        return None
    return [(source, *p) for p in res.paths]


def _pick_pair(c, tag, i, j):
    if i is None or j is None:
        first = next(iter(c.witnesses.values()), None)
        if first is None:
            raise ValueError("need indices i, j or stored witnesses")
        i, j = first.i, first.j
    return i, j


def extract_minor_from_cascade(c, tag, variant=0, i=None, j=None):
    """Family minor built from tripod witnesses at every major vertex.

    tag "A" gives P_h (variant 1: P'_h, 2: P''_h) with the apices in I.
    tag "B" gives Q_h - w1w2 with xi(i) at the minor root in the node of w1
    and xi(j) in the node of w2; variants 1, 2 give Q'_{h-1} - w1w2 or
    Q''_{h-1} - w1w2 with the apices in I.
    """
    if c.xi is None:
        raise ValueError("cascade must be ordered")
    if variant not in (0, 1, 2):
        raise ValueError("variant must be 0, 1 or 2")
    if variant > len(c.I):
        raise ValueError(f"variant {variant} needs |I| >= {variant}, have {len(c.I)}")
    i, j = _pick_pair(c, tag, i, j)
    apex_pool = sorted(c.I)[:variant]
    if tag == "A":
        return _extract_P(c, i, j, apex_pool)
    if tag == "B":
        return _extract_Q(c, i, j, apex_pool)
    raise ValueError("tag must be A or B")


def _extract_P(c, i, j, apex_pool):
    pat = c.pattern
    wit = _witnesses(c, "A", i, j)
    # split the tripods into the two trees they form
    tripods = [(t0, name, w.parts[name]) for t0, w in wit.items() for name in ("L_i", "L_j")]
    owner = {}
    parent = list(range(len(tripods)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for k, (_, _, L) in enumerate(tripods):
        for x in L.vertices:
            if x in owner:
                parent[find(k)] = find(owner[x])
            owner[x] = k
    root_major = pat.root
    main = find(next(k for k, (t0, name, _) in enumerate(tripods)
                     if t0 == root_major and name == "L_i"))
    groups = {find(k) for k in range(len(tripods))}
    if len(groups) != 2:
        raise ValueError(f"tripods form {len(groups)} trees, expected 2")
    in_main = {t0: L for k, (t0, _, L) in enumerate(tripods) if find(k) == main}
    other = set().union(*(L.vertices for k, (_, _, L) in enumerate(tripods) if find(k) != main))
    h = pat.h
    fam = gen_family("P" + "'" * len(apex_pool), h)
    nodes = {}
    apex_nodes = [set(other)] + [{x} for x in apex_pool]

    def walk(t0, v):
        L = in_main[t0]
        _, t2, t3 = pat.trinity(t0)
        piece = set(L.vertices)
        for leg, tk, child in ((1, t2, 2 * v + 1), (2, t3, 2 * v + 2)):
            foot = L.legs[leg][-1]
            if pat.children[tk]:
                piece.discard(foot)
                walk(pat.children[tk][0], child)
            else:
                piece.discard(foot)
                leaf = {foot}
                pair = (c.xi[tk][i], c.xi[tk][j])
                other_foot = pair[1] if pair[0] == foot else pair[0]
                fan = _fan(c, tk, foot, [other_foot] + apex_pool)
                if fan is None:
                    raise ValueError(f"no disjoint connections at leaf {tk} through its outer graph")
                for p in fan:
                    dest = apex_nodes[([other_foot] + apex_pool).index(p[-1])]
                    dest.update(p[1:])
                nodes[child] = leaf
        nodes[v] = piece

    walk(root_major, 0)
    for k, a in enumerate(fam.apices):
        nodes[a] = apex_nodes[k]
    model = MinorModel(fam.graph, c.td.graph, nodes)
    ok, bad = validate_minor_model(model)
    if not ok:
        raise ValueError(f"witnesses do not combine into a model: {bad[:3]}")
    return Embedding(fam, model)


def _split_b(w):
    """The three connected pieces of two B-tripods: L_i without its shared
    tail, L_j without its shared tail, and the shared path with both tails."""
    Li, Lj = w.parts["L_i"], w.parts["L_j"]
    S = Li.vertices & Lj.vertices
    leg3 = Li.legs[2]
    lo = min(k for k, x in enumerate(leg3) if x in S)
    leg2 = Lj.legs[1]
    loj = min(k for k, x in enumerate(leg2) if x in S)
    tail = set(leg3[lo:]) | set(leg2[loj:])
    return Li.vertices - tail, Lj.vertices - tail, tail


def _extract_Q(c, i, j, apex_pool):
    pat = c.pattern
    if apex_pool:
        if pat.h < 3:
            raise ValueError("apex variants need height at least 3")
        from .cascade import compose
        sub = build_pattern("T", pat.h - 1)
        work = compose(c, {t: t for t in sub.tree.vertices}, sub, linkages=False)
        work.witnesses = {t: w for t, w in c.witnesses.items() if t in sub.major}
    else:
        work = c
    wp = work.pattern
    wit = _witnesses(work, "B", i, j)
    fam = gen_family("Q" + "'" * len(apex_pool), wp.h)
    nodes = {}

    def add(q, vs):
        nodes.setdefault(q, set()).update(vs)

    def rec(blk, t, first, second):
        x = work.xi[t]
        if blk.k == 0:
            add(blk.a, {x[first]})
            add(blk.b, {x[second]})
            return
        t0 = wp.children[t][0]
        _, t2, t3 = wp.trinity(t0)
        w = wit[t0]
        Wi, Wj, W = _split_b(w)
        Li, Lj = w.parts["L_i"], w.parts["L_j"]
        if x[first] in Wi:
            Wa, Wb, fa, ta, fb, tb = Wi, Wj, Li.feet[1], t2, Lj.feet[2], t3
        else:
            Wa, Wb, fa, ta, fb, tb = Wj, Wi, Lj.feet[2], t3, Li.feet[1], t2
        add(blk.a, Wa)
        add(blk.b, Wb)
        add(blk.w, W)
        for sblk, tk, foot in ((blk.left, ta, fa), (blk.right, tb, fb)):
            m = work.xi[tk].index(foot)
            rec(sblk, tk, m, j if m == i else i)

    rec(fam.blocks, wp.top, i, j)
    if apex_pool:
        leaves = wp.leaves()
        for q in fam.leaves:
            t, f = next((t, f) for t in leaves for f in work.xi[t] if f in nodes[q])
            fan = _fan(c, t, f, apex_pool)
            if fan is None:
                raise ValueError(f"no disjoint connections from {f} to the apices")
            for p in fan:
                add(fam.apices[apex_pool.index(p[-1])], p[1:])
    pattern = fam.graph.delete_edges([fam.base_edge])
    model = MinorModel(pattern, c.td.graph, nodes)
    ok, bad = validate_minor_model(model)
    if not ok:
        raise ValueError(f"witnesses do not combine into a model: {bad[:3]}")
    top = work.xi[wp.top]
    if top[i] not in nodes[0] or top[j] not in nodes[1]:
        raise AssertionError("node conditions on the base edge violated")
    return Embedding(fam, model, fam.base_edge)


# ---------------------------------------------------------------- dichotomy

def dichotomy_check(g, k, cap=12, budget=2_000_000):
    """Exact path-width and whether g has P_k or Q_k as a minor."""
    from .graph import find_minor_model
    out = {"pathwidth": exact_pathwidth(g, cap)[0]}
    for name in ("P", "Q"):
        res = find_minor_model(g, gen_family(name, k).graph, budget)
        out[f"has_{name}"] = None if res.status == "inconclusive" else res.found
    return out
