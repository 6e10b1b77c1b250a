"""Hand-built decompositions shared by tests, demos and the CLI."""

import itertools

from .decomposition import TreeDecomposition
from .graph import Graph, cycle


def branching_c12():
    """Width-2 decomposition of C_12 on a tree with one branching node.

    The hub bag {0,4,8} has three arms. Along each arm two stretches of the
    cycle advance side by side until the arm ends in a 2-vertex bag that
    misses the hub bag, followed by a leaf bag holding the skipped vertex.
    The three 2-vertex arm ends form a triad whose torso splits into the
    arcs {11,0,1}, {3,4,5}, {7,8,9}.

    Returns (td, triad) with triad the node ids of the arm ends.
    """
    g = cycle(12)
    bags = {0: {0, 4, 8}}
    edges = []
    arms = [
        # (first shared pair, arm bags after it)
        [{0, 4}, {0, 1, 4}, {1, 4}, {1, 3, 4}, {1, 3}, {1, 2, 3}],
        [{4, 8}, {4, 5, 8}, {5, 8}, {5, 7, 8}, {5, 7}, {5, 6, 7}],
        [{8, 0}, {8, 9, 0}, {9, 0}, {9, 11, 0}, {9, 11}, {9, 10, 11}],
    ]
    ends = []
    nxt = 1
    for arm in arms:
        prev = 0
        for b in arm:
            bags[nxt] = b
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        ends.append(nxt - 2)
    td = TreeDecomposition(g, Graph(range(nxt), edges), bags)
    return td, tuple(ends)


def branching_cycle(arcs=(4, 4, 4)):
    """Generalises branching_c12 to a cycle made of three arcs of even lengths.

    The hub bag holds the three arc endpoints; each arm walks the two ends of
    its arc towards the middle. Returns (td, triad) as branching_c12 does;
    an arc of length 2 has no separate end bag, so the triad uses its first bag.
    """
    if len(arcs) != 3 or any(a < 2 or a % 2 for a in arcs):
        raise ValueError("need three even arc lengths of at least 2")
    n = sum(arcs)
    g = cycle(n)
    hubs = [0, arcs[0], arcs[0] + arcs[1]]
    bags = {0: set(hubs)}
    edges = []
    ends = []
    nxt = 1
    for i, length in enumerate(arcs):
        lo, hi = hubs[i], hubs[i] + length
        arm = [{lo % n, hi % n}]
        while hi - lo > 2:
            arm.append({lo % n, (lo + 1) % n, hi % n})
            lo += 1
            arm.append({lo % n, hi % n})
            if hi - lo > 2:
                arm.append({lo % n, (hi - 1) % n, hi % n})
                hi -= 1
                arm.append({lo % n, hi % n})
        arm.append({lo % n, (lo + 1) % n, hi % n})
        prev = 0
        for b in arm:
            bags[nxt] = b
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        ends.append(nxt - 2)
    td = TreeDecomposition(g, Graph(range(nxt), edges), bags)
    return td, tuple(ends)


def spider_tree(legs):
    """Tree with hub 0 and legs of the given lengths (vertices numbered leg by leg)."""
    edges = []
    nxt = 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph(range(nxt), edges)


def _arc_length(d):
    return 4 if d == 0 else 4 + 2 * _arc_length(d - 1)


def cascade_cycle(h=1, chords=False):
    """Cycle decomposed along a tree shaped like T_h, with its cascade.

    Each arm walks the two ends of an arc inward. Four steps in, the arm
    reaches a 2-vertex bag (the image of a minor pattern vertex). If the
    pattern continues below, four more steps reach a 3-vertex hub bag that
    splits the remaining arc into two sub-arms; otherwise the arm closes off.
    With chords=True every hub {a, m, b} also gets the edge a-m.
    h=1 reproduces branching_c12. Returns (td, eta) with eta mapping the
    vertices of build_pattern("T", h) to tree nodes.
    """
    from .cascade import build_pattern

    pat = build_pattern("T", h)
    L = _arc_length(h - 1)
    n = 4 + 2 * L
    bags, edges, extra = {}, [], []
    eta = {}
    nxt = [0]

    def node(b, prev):
        k = nxt[0]
        nxt[0] += 1
        bags[k] = {x % n for x in b}
        if prev is not None:
            edges.append((prev, k))
        return k

    def arm(p, q, d, prev, minor):
        steps = [{p, q}, {p, p + 1, q}, {p + 1, q}, {p + 1, q - 1, q}, {p + 1, q - 1}]
        for b in steps:
            prev = node(b, prev)
        eta[minor] = prev
        lo, hi = p + 1, q - 1
        if d == 0:
            while hi - lo > 2:
                prev = node({lo, lo + 1, hi}, prev)
                lo += 1
                prev = node({lo, hi}, prev)
                if hi - lo > 2:
                    prev = node({lo, hi - 1, hi}, prev)
                    hi -= 1
                    prev = node({lo, hi}, prev)
            node({lo, lo + 1, hi}, prev)
            return
        for b in ({lo, lo + 1, hi}, {lo + 1, hi}, {lo + 1, hi - 1, hi}, {lo + 1, hi - 1}):
            prev = node(b, prev)
        a, b = lo + 1, hi - 1
        m = a + _arc_length(d - 1)
        major = pat.children[minor][0]
        hub = node({a, m, b}, prev)
        eta[major] = hub
        if chords:
            extra.append((a % n, m % n))
        left, right = pat.children[major]
        arm(a, m, d - 1, hub, left)
        arm(m, b, d - 1, hub, right)

    hub = node({0, 4, 4 + L}, None)
    eta[pat.root] = hub
    if chords:
        extra.append((0, 4))
    arm(0, 4, 0, hub, pat.minor_root)
    left, right = pat.children[pat.root]
    arm(4, 4 + L, h - 1, hub, left)
    arm(4 + L, n, h - 1, hub, right)
    g = cycle(n).add_edges(extra)
    td = TreeDecomposition(g, Graph(range(nxt[0]), edges), bags)
    return td, eta


def tripod_cascade(h, kind="A", links=True, apices=0):
    """Decomposition carrying a cascade of height h whose every major vertex
    has two tripods in its torso.

    Each minor pattern vertex t gets a bag {a_t, b_t}. With kind "A" each
    major vertex gets {c, d}, c adjacent to the three a's of its trinity and
    d to the three b's: two disjoint trees, which become P_h once the
    b-tree is contracted. With kind "B" the major bag is {c, d, x}, with c
    adjacent to a_1, a_2, x; d adjacent to b_1, b_3, x; and x adjacent to
    a_3, b_2, so the two tripods share the vertex x. With links=True every
    leaf bag is closed off by a path a_t - l_t - b_t beyond it. apices adds
    that many vertices to every bag on the cascade (the common intersection
    set), each joined to every a_t and b_t below the root by a private
    2-path in a side bag hanging off the image of t.
    Returns (td, eta) as cascade_cycle does.
    """
    from .cascade import build_pattern

    if kind not in ("A", "B"):
        raise ValueError("kind must be A or B")
    pat = build_pattern("T", h)
    ids = itertools.count()
    ab = {t: (next(ids), next(ids)) for t in pat.bfs() if t not in pat.major}
    mid = {t: tuple(next(ids) for _ in range(2 if kind == "A" else 3)) for t in pat.majors()}
    link = {t: next(ids) for t in pat.leaves()} if links else {}
    core = [next(ids) for _ in range(apices)]
    spokes = {(t, v, x): next(ids) for t in ab if t != pat.top for v in ab[t] for x in core}
    edges = []
    for t0, trio in mid.items():
        t1, t2, t3 = pat.trinity(t0)
        if kind == "A":
            c, d = trio
            edges += [(c, ab[t][0]) for t in (t1, t2, t3)] + [(d, ab[t][1]) for t in (t1, t2, t3)]
        else:
            c, d, x = trio
            edges += [(c, ab[t1][0]), (c, ab[t2][0]), (c, x), (x, ab[t3][0]),
                      (d, ab[t1][1]), (d, ab[t3][1]), (d, x), (x, ab[t2][1])]
    for t, l in link.items():
        edges += [(ab[t][0], l), (l, ab[t][1])]
    for (t, v, x), u in spokes.items():
        edges += [(v, u), (u, x)]
    g = Graph(range(next(ids)), edges)
    nodes = itertools.count()
    bags, tree_edges, eta = {}, [], {}
    for t in pat.bfs():
        eta[t] = next(nodes)
        bags[eta[t]] = (set(ab[t]) if t in ab else set(mid[t])) | set(core)
    for x, y in pat.tree.edges:
        m = next(nodes)
        bags[m] = bags[eta[x]] | bags[eta[y]]
        tree_edges += [(eta[x], m), (m, eta[y])]
    for t, l in link.items():
        m = next(nodes)
        bags[m] = set(ab[t]) | {l}
        tree_edges.append((eta[t], m))
    for (t, v, x), u in spokes.items():
        m = next(nodes)
        bags[m] = {v, u, x}
        tree_edges.append((eta[t], m))
    td = TreeDecomposition(g, Graph(range(next(nodes)), tree_edges), bags)
    return td, eta


def star_cascade(parts, middle, edges):
    """Height-1 cascade on a decomposition with tree e1-a1-c-a2-e2, c-a3-e3.

    parts are the three minor bags X1, X2, X3 (pairwise disjoint, equal
    size), middle the bag M at the centre c; the arm bags are X_i with M.
    edges must lie inside some X_i plus M. Returns (td, eta).
    """
    vs = sorted(set().union(*parts, middle))
    bags = {0: set(middle)}
    tree_edges = []
    eta = {1: 0}
    for k, x in enumerate(parts):
        a, e = 1 + 2 * k, 2 + 2 * k
        bags[a] = set(x) | set(middle)
        bags[e] = set(x)
        tree_edges += [(0, a), (a, e)]
        eta[(0, 2, 3)[k]] = e
    td = TreeDecomposition(Graph(vs, edges), Graph(range(7), tree_edges), bags)
    return td, eta
