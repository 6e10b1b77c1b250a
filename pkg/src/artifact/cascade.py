"""Pattern trees, homeomorphic embeddings and cascades in tree-decompositions.

A cascade of height h and size s maps the pattern tree T_h into the
decomposition tree so that every minor pattern vertex lands on a bag of size
exactly s and every node on the image paths has a bag of size at least s.
Injective cascades have all pairwise image-bag intersections equal to one
set I; ordered cascades also fix an indexing of each minor bag minus I and
two linkages per major vertex (left and right).
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field

from .decomposition import tree_path
from .graph import Graph, Separator, disjoint_paths, is_path, shortest_path


class SearchCapExceeded(RuntimeError):
    """An exhaustive search hit its cap; the answer is unknown."""


# ---------------------------------------------------------------- patterns

@dataclass(frozen=True)
class PatternTree:
    kind: str  # "CT" or "T"
    h: int
    tree: Graph
    root: int  # CT root, or the major root of T_h
    minor_root: int | None
    parent: dict
    children: dict  # vertex -> () / (child,) / (left, right)
    height: dict
    major: frozenset

    @property
    def top(self):
        """The vertex every other vertex descends from."""
        return self.root if self.minor_root is None else self.minor_root

    def is_major(self, t):
        return t in self.major

    def majors(self):
        return [t for t in self.bfs() if t in self.major]

    def minors(self):
        return [t for t in self.bfs() if t not in self.major]

    def leaves(self):
        return [t for t in self.bfs() if not self.children[t]]

    def trinity(self, t):
        if t not in self.major:
            raise ValueError(f"{t} is not a major vertex")
        left, right = self.children[t]
        return (self.parent[t], left, right)

    def bfs(self):
        out = [self.top]
        for x in out:
            out.extend(self.children[x])
        return out

    def descendants(self, t):
        """t and everything below it, in BFS order."""
        out = [t]
        for x in out:
            out.extend(self.children[x])
        return out

    def is_descendant(self, a, b):
        """True when a lies in the subtree of b (a == b included)."""
        while a is not None:
            if a == b:
                return True
            a = self.parent[a]
        return False

    def restrict(self, h):
        """T_h' for h' <= h as the top of this pattern (same identifiers)."""
        sub = build_pattern(self.kind, h)
        if any(sub.children[t] != self.children[t] for t in sub.tree.vertices if sub.children[t]):
            raise AssertionError("pattern labelling is not prefix-stable")
        return sub


def build_pattern(kind, h):
    """CT_h (binary tree of height h) or T_h, labelled breadth-first with the
    left child before the right one."""
    kind = kind.split("_")[0].upper()
    if kind not in ("CT", "T"):
        raise ValueError("kind must be CT or T")
    if h < (1 if kind == "T" else 0):
        raise ValueError(f"height {h} too small for {kind}")
    # build on temporary labels, then relabel breadth-first
    kids = {}
    nxt = itertools.count()

    def grow(depth):
        x = next(nxt)
        kids[x] = []
        if depth < h:
            kids[x] = [grow(depth + 1), grow(depth + 1)]
        return x

    root = grow(0)
    major = set()
    if kind == "T":
        tk = {}
        rp = next(nxt)
        tk[rp] = [root]
        for x, ch in list(kids.items()):
            tk.setdefault(x, [])
            if ch:
                major.add(x)
            for y in ch:
                if kids[y]:
                    sub = next(nxt)
                    tk[sub] = [y]
                    tk[x].append(sub)
                else:
                    tk[x].append(y)
        kids, top = tk, rp
    else:
        top = root
    order = [top]
    for x in order:
        order.extend(kids[x])
    mp = {x: i for i, x in enumerate(order)}
    children = {mp[x]: tuple(mp[y] for y in kids[x]) for x in order}
    parent = {mp[top]: None}
    for x, ch in children.items():
        for y in ch:
            parent[y] = x
    tree = Graph(range(len(order)), [(x, y) for x, ch in children.items() for y in ch])
    major = frozenset(mp[x] for x in major)
    dist = {}
    for x in range(len(order)):
        d, y = 0, x
        while parent[y] is not None:
            d, y = d + 1, parent[y]
        dist[x] = d
    if kind == "CT":
        height = dist
        r, mr = mp[root], None
    else:
        r, mr = mp[root], mp[top]
        height = {x: (dist[x] - 1) // 2 if x in major else dist[x] // 2 for x in dist}
    return PatternTree(kind, h, tree, r, mr, parent, children, height, major)


# ------------------------------------------------------ helper formulas

def embedding_height(a, h):
    """m = (a+2)h + a, the binary-tree height that yields a cascade of height h."""
    return (a + 2) * h + a


def refine_height(a, b, w):
    """(2(a+2)w+2)b, the cascade height needed to refine towards injectivity."""
    return (2 * (a + 2) * w + 2) * b


def colour_height(a, b, k):
    """g(a, b, k) from the monochromatic monotone-embedding argument."""
    if k == 1:
        return a
    if b == 1:
        return colour_height(a, a, k - 1)
    return colour_height(a, b - 1, k) + colour_height(a, a, k - 1)


# ------------------------------------------------------------ embeddings

@dataclass
class EmbeddingSearch:
    status: str  # "found" | "none" | "inconclusive"
    eta: dict | None = None
    explored: int = 0

    @property
    def found(self):
        return self.status == "found"


def _rooting(src, root):
    if isinstance(src, PatternTree):
        return src.bfs(), src.parent
    root = src.vertices[0] if root is None else root
    parent = {root: None}
    order = [root]
    for x in order:
        for y in sorted(src.adj(x)):
            if y not in parent:
                parent[y] = x
                order.append(y)
    return order, parent


def find_embedding(src, dst, root=None, node_ok=None, path_ok=None, extend_ok=None,
                   budget=200_000):
    """Homeomorphic embedding of the tree src into the tree dst.

    node_ok(u, x) filters images, path_ok(nodes) filters the dst path of each
    src edge and extend_ok(eta, u, x) sees the partial map before u -> x is
    added. The search is exhaustive up to budget assignments.
    """
    order, parent = _rooting(src, root)
    eta = {}
    used_dir = {}
    image = set()
    explored = 0

    def branch(x, y):
        # BFS of the component of dst - x containing y, with parent pointers
        prev = {y: x}
        out = [y]
        for a in out:
            for b in sorted(dst.adj(a)):
                if b != x and b not in prev:
                    prev[b] = a
                    out.append(b)
        return out, prev

    def rec(k):
        nonlocal explored
        if k == len(order):
            return True
        u = order[k]
        p = parent[u]
        if p is None:
            options = [(z, None, None) for z in dst.vertices]
        else:
            x = eta[p]
            options = []
            for y in sorted(dst.adj(x)):
                if y in used_dir[p]:
                    continue
                nodes, prev = branch(x, y)
                for z in nodes:
                    options.append((z, y, prev))
        for z, y, prev in options:
            if z in image:
                continue
            if node_ok is not None and not node_ok(u, z):
                continue
            if p is not None:
                seq = [z]
                while seq[-1] != eta[p]:
                    seq.append(prev[seq[-1]])
                if path_ok is not None and not path_ok(seq[::-1]):
                    continue
            if extend_ok is not None and not extend_ok(eta, u, z):
                continue
            explored += 1
            if explored > budget:
                raise SearchCapExceeded(f"embedding search exceeded {budget} steps")
            eta[u] = z
            image.add(z)
            used_dir[u] = set() if p is None else {seq[1]}
            if p is not None:
                used_dir[p].add(y)
            if rec(k + 1):
                return True
            if p is not None:
                used_dir[p].discard(y)
            del used_dir[u]
            image.discard(z)
            del eta[u]
        return False

    try:
        ok = rec(0)
    except SearchCapExceeded:
        return EmbeddingSearch("inconclusive", None, explored)
    return EmbeddingSearch("found" if ok else "none", dict(eta) if ok else None, explored)


def embedding_violations(src, dst, eta):
    """Check a homeomorphic embedding straight from the definition."""
    tree = src.tree if isinstance(src, PatternTree) else src
    bad = []
    if set(eta) != set(tree.vertices):
        bad.append("map is not defined on every source vertex")
        return bad
    if len(set(eta.values())) != len(eta):
        bad.append("map is not injective")
    if any(not dst.has_vertex(x) for x in eta.values()):
        bad.append("image outside the target tree")
        return bad
    for t in tree.vertices:
        nbrs = sorted(tree.adj(t))
        for a, b in itertools.combinations(nbrs, 2):
            pa = tree_path(dst, eta[t], eta[a])
            pb = tree_path(dst, eta[t], eta[b])
            ea = {frozenset(e) for e in zip(pa, pa[1:])}
            eb = {frozenset(e) for e in zip(pb, pb[1:])}
            if ea & eb:
                bad.append(f"paths for edges {t}-{a} and {t}-{b} share an edge")
    return bad


def span(dst, eta, src_tree):
    """Nodes of dst on the image path of some source edge."""
    out = set()
    for a, b in src_tree.edges:
        out.update(tree_path(dst, eta[a], eta[b]))
    out.update(eta.values())
    return out


# --------------------------------------------------------------- cascades

@dataclass(frozen=True)
class Confinement:
    A: frozenset
    B: frozenset
    C: frozenset  # triples (i, l, m)
    D: frozenset

    def key(self):
        return (tuple(sorted(self.A)), tuple(sorted(self.B)),
                tuple(sorted(self.C)), tuple(sorted(self.D)))

    def to_dict(self):
        return {"A": sorted(self.A), "B": sorted(self.B),
                "C": [list(x) for x in sorted(self.C)], "D": [list(x) for x in sorted(self.D)]}


@dataclass
class Cascade:
    td: object
    pattern: PatternTree
    eta: dict
    s: int
    I: frozenset | None = None
    xi: dict | None = None  # minor vertex -> tuple, index k <-> ordering value k+1
    left: dict | None = None  # major vertex -> tuple of paths, path k from xi[t1][k]
    right: dict | None = None
    confinement: dict | None = None
    witnesses: dict = field(default_factory=dict)  # major vertex -> PropertyWitness

    @property
    def h(self):
        return self.pattern.h

    @property
    def injective(self):
        return self.I is not None

    @property
    def ordered(self):
        return self.xi is not None

    @property
    def width(self):
        """s - |I|, the number of indexed vertices per minor bag."""
        return self.s - len(self.I or ())

    def bag(self, t):
        return self.td.bags[self.eta[t]]

    def span(self):
        return span(self.td.tree, self.eta, self.pattern.tree)

    def to_dict(self):
        d = {
            "height": self.h,
            "size": self.s,
            "eta": [[t, self.eta[t]] for t in sorted(self.eta)],
            "I": None if self.I is None else sorted(self.I),
        }
        if self.xi is not None:
            d["xi"] = {str(t): list(self.xi[t]) for t in sorted(self.xi)}
        if self.left is not None:
            d["left"] = {str(t): [list(p) for p in self.left[t]] for t in sorted(self.left)}
            d["right"] = {str(t): [list(p) for p in self.right[t]] for t in sorted(self.right)}
        if self.confinement is not None:
            d["confinement"] = {str(t): self.confinement[t].to_dict()
                                for t in sorted(self.confinement)}
        if self.witnesses:
            d["witnesses"] = {str(t): self.witnesses[t].to_dict() for t in sorted(self.witnesses)}
        return d

    def to_json(self, indent=None):
        return json.dumps(self.to_dict(), indent=indent)


@dataclass
class CascadeSearch:
    status: str
    cascade: Cascade | None = None
    explored: int = 0

    @property
    def found(self):
        return self.cascade is not None


def _cascade_constraints(td, pattern, s, injective):
    bags = td.bags

    def node_ok(u, x):
        if u in pattern.major:
            return len(bags[x]) >= s
        return len(bags[x]) == s

    def path_ok(nodes):
        return all(len(bags[t]) >= s for t in nodes)

    order = pattern.bfs()

    def extend_ok(eta, u, x):
        if not injective or not eta:
            return True
        first = bags[eta[order[0]]]
        if len(eta) == 1:
            return len(first & bags[x]) < s
        common = first & bags[eta[order[1]]]
        return all(bags[y] & bags[x] == common for y in eta.values())

    return node_ok, path_ok, extend_ok


def _search(td, h, s, injective, budget):
    pattern = build_pattern("T", h)
    node_ok, path_ok, extend_ok = _cascade_constraints(td, pattern, s, injective)
    res = find_embedding(pattern, td.tree, node_ok=node_ok, path_ok=path_ok,
                         extend_ok=extend_ok, budget=budget)
    if not res.found:
        return CascadeSearch(res.status, None, res.explored)
    I = None
    if injective:
        order = pattern.bfs()
        I = td.bags[res.eta[order[0]]] & td.bags[res.eta[order[1]]]
    return CascadeSearch("found", Cascade(td, pattern, res.eta, s, I), res.explored)


def find_cascade(td, h, s, budget=200_000):
    """A cascade of height h and size s, or a report that none exists."""
    return _search(td, h, s, False, budget)


def find_injective_cascade(td, h, budget=200_000):
    """An injective cascade of height h with the largest possible size.

    Status is "inconclusive" when some larger size could not be ruled out.
    """
    unsure = False
    explored = 0
    for s in sorted({len(b) for b in td.bags.values()}, reverse=True):
        if s == 0:
            continue
        res = _search(td, h, s, True, budget)
        explored += res.explored
        if res.status == "inconclusive":
            unsure = True
            continue
        if res.found:
            return CascadeSearch("inconclusive" if unsure else "found", res.cascade, explored)
    return CascadeSearch("inconclusive" if unsure else "none", None, explored)


def cascade_violations(c):
    """Re-check every stored piece of a cascade from the definitions."""
    td, pat, eta = c.td, c.pattern, c.eta
    bad = [f"embedding: {b}" for b in embedding_violations(pat, td.tree, eta)]
    if bad:
        return bad
    for t in pat.tree.vertices:
        size = len(td.bags[eta[t]])
        if t not in pat.major and size != c.s:
            bad.append(f"minor vertex {t} has a bag of size {size}, not {c.s}")
    covered = set()
    for a, b in itertools.combinations(pat.tree.vertices, 2):
        covered.update(tree_path(td.tree, eta[a], eta[b]))
    for t in sorted(covered):
        if len(td.bags[t]) < c.s:
            bad.append(f"span node {t} has a bag smaller than {c.s}")
    if c.I is not None:
        if len(c.I) >= c.s:
            bad.append("common intersection is not smaller than the size")
        for a, b in itertools.combinations(pat.tree.vertices, 2):
            if td.bags[eta[a]] & td.bags[eta[b]] != c.I:
                bad.append(f"bags of {a} and {b} do not meet in exactly I")
                break
    if c.xi is None:
        return bad
    if c.I is None:
        bad.append("ordered cascade without a common intersection set")
        return bad
    for t in pat.tree.vertices:
        if t in pat.major:
            continue
        row = c.xi.get(t)
        if row is None or len(row) != c.width or set(row) != td.bags[eta[t]] - c.I:
            bad.append(f"ordering at {t} is not a bijection onto the bag minus I")
    if c.left is None:
        return bad
    g = td.graph
    for t0 in sorted(pat.major):
        t1, t2, t3 = pat.trinity(t0)
        for name, system, end in (("left", c.left.get(t0), t2), ("right", c.right.get(t0), t3)):
            if system is None or len(system) != c.width:
                bad.append(f"{name} linkage at {t0} is missing or has the wrong size")
                continue
            seen = set()
            for k, p in enumerate(system):
                if not is_path(g, p) or set(p) & c.I:
                    bad.append(f"{name} linkage at {t0}: path {k} is not a path of G minus I")
                if p[0] != c.xi[t1][k] or p[-1] != c.xi[end][k]:
                    bad.append(f"{name} linkage at {t0}: path {k} has the wrong ends")
                if seen & set(p):
                    bad.append(f"{name} linkage at {t0}: paths are not disjoint")
                seen |= set(p)
    if c.confinement is not None:
        for t0 in sorted(pat.major):
            if c.confinement.get(t0) != _confinement_direct(c, t0):
                bad.append(f"stored confinement sets at {t0} differ from the recomputed ones")
    return bad


# ---------------------------------------------------------- torsos and outer graphs

def torso_nodes(c, t0):
    """Tree nodes whose path to the image of t0 has no trinity image inside it."""
    tree = c.td.tree
    centre = c.eta[t0]
    stops = {c.eta[t] for t in c.pattern.trinity(t0)}
    keep = {centre}
    dq = deque([centre])
    while dq:
        x = dq.popleft()
        if x in stops:
            continue
        for y in tree.adj(x):
            if y not in keep:
                keep.add(y)
                dq.append(y)
    return keep


def torso(c, t0):
    """Vertex set and induced subgraph of the torso at the major vertex t0."""
    vs = frozenset().union(*(c.td.bags[t] for t in torso_nodes(c, t0))) - (c.I or frozenset())
    return vs, c.td.graph.subgraph(vs)


def outer_nodes(c, v):
    tree = c.td.tree
    x = c.eta[v]
    top = c.eta[c.pattern.top]
    keep = {x}
    for y in tree.adj(x):
        comp = {y}
        dq = deque([y])
        while dq:
            a = dq.popleft()
            for b in tree.adj(a):
                if b != x and b not in comp:
                    comp.add(b)
                    dq.append(b)
        if top == x or top not in comp:
            keep |= comp
    return keep


def outer_graph(c, v):
    """Vertex set of the outer graph at v and its induced subgraph."""
    vs = frozenset().union(*(c.td.bags[t] for t in outer_nodes(c, v))) - (c.I or frozenset())
    return vs, c.td.graph.subgraph(vs)


def w6_path(c, v, x, y):
    """Path x..y with at least one interior vertex, all of them in the outer
    graph at v and outside the bag at v."""
    if x == y:
        raise ValueError("ends must be distinct")
    bag = c.td.bags[c.eta[v]]
    if x not in bag or y not in bag:
        raise ValueError("ends must lie in the bag at v")
    vs, _ = outer_graph(c, v)
    inner = set(vs) - bag
    g = c.td.graph
    best = None
    for a in sorted(g.adj(x) & inner):
        for b in sorted(g.adj(y) & inner):
            p = shortest_path(g, a, b, inner)
            if p is not None and (best is None or len(p) < len(best)):
                best = p
    if best is None:
        raise ValueError(f"no path between {x} and {y} through the outer graph at {v}; "
                         "the decomposition violates W6 here")
    return (x, *best, y)


# ---------------------------------------------------------------- linkages

def _paths_from(g, start, targets, blocked, cap, counter):
    """All simple paths start..t (t in targets) avoiding blocked, with no
    target in the interior."""
    stack = [(start, (start,))]
    out = []
    if start in targets:
        return [(start,)]
    while stack:
        x, p = stack.pop()
        for y in sorted(g.adj(x), reverse=True):
            if y in blocked or y in p:
                continue
            q = p + (y,)
            if y in targets:
                out.append(q)
                counter[0] += 1
                if counter[0] > cap:
                    raise SearchCapExceeded(f"path enumeration exceeded {cap}")
                continue
            stack.append((y, q))
    out.sort()
    return out


def all_linkages(g, starts, targets, cap=100_000):
    """Every system of disjoint paths, path k starting at starts[k] and ending
    in targets, as tuples of vertex tuples."""
    starts = tuple(starts)
    targets = frozenset(targets)
    counter = [0]
    per = [_paths_from(g, a, targets, set(starts) - {a}, cap, counter) for a in starts]
    out = []

    def rec(k, used, acc):
        if k == len(starts):
            out.append(tuple(acc))
            if len(out) > cap:
                raise SearchCapExceeded(f"linkage enumeration exceeded {cap}")
            return
        for p in per[k]:
            if used.isdisjoint(p):
                rec(k + 1, used | set(p), acc + [p])

    rec(0, frozenset(), [])
    return out


def _edges(p):
    return {(a, b) if a < b else (b, a) for a, b in zip(p, p[1:])}


def linkage_measure(P, Q):
    """Edges in the union of the parts of P_k and Q_k after they first split."""
    es = set()
    for p, q in zip(P, Q):
        c = 0
        while c < min(len(p), len(q)) and p[c] == q[c]:
            c += 1
        es |= _edges(p[c - 1:]) | _edges(q[c - 1:])
    return len(es)


def _linkage_key(P, Q):
    union = set()
    for p in list(P) + list(Q):
        union |= _edges(p)
    return (linkage_measure(P, Q), tuple(sorted(union)), P, Q)


def minimal_linkage_pair(g, starts, left_targets, right_targets, cap=100_000):
    """The left/right linkage pair minimising linkage_measure, ties broken
    lexicographically on the sorted edge list and then the paths."""
    Ps = all_linkages(g, starts, left_targets, cap)
    Qs = all_linkages(g, starts, right_targets, cap)
    if not Ps or not Qs:
        return None
    if len(Ps) * len(Qs) > cap:
        raise SearchCapExceeded(f"{len(Ps)} x {len(Qs)} linkage pairs exceed {cap}")
    return min(((P, Q) for P in Ps for Q in Qs), key=lambda pq: _linkage_key(*pq))


def _flow_linkage(g, starts, targets):
    res = disjoint_paths(g, starts, targets, len(starts))
    if isinstance(res, Separator):
        return None
    by_start = {p[0]: p for p in res.paths}
    return tuple(by_start[a] for a in starts)


def order_cascade(c, minimal=True, cap=100_000):
    """Fix orderings and left/right linkages top-down.

    The ordering at the minor root follows vertex order. With minimal=True
    the linkage pair at each major vertex minimises linkage_measure over all
    pairs (exhaustive, up to cap); otherwise max-flow linkages are used.
    """
    if c.I is None:
        raise ValueError("cascade is not injective")
    g = c.td.graph.delete_vertices(c.I)
    pat = c.pattern
    xi = {pat.top: tuple(sorted(c.bag(pat.top) - c.I))}
    left, right = {}, {}
    for t0 in pat.majors():
        t1, t2, t3 = pat.trinity(t0)
        starts = xi[t1]
        lt = c.bag(t2) - c.I
        rt = c.bag(t3) - c.I
        if minimal:
            pair = minimal_linkage_pair(g, starts, lt, rt, cap)
        else:
            P, Q = _flow_linkage(g, starts, lt), _flow_linkage(g, starts, rt)
            pair = None if P is None or Q is None else (P, Q)
        if pair is None:
            raise ValueError(f"no {len(starts)} disjoint paths avoiding I from node {c.eta[t1]} "
                             f"to node {c.eta[t2]} or {c.eta[t3]}; W3 fails on the span")
        P, Q = pair
        left[t0], right[t0] = P, Q
        xi[t2] = tuple(p[-1] for p in P)
        xi[t3] = tuple(q[-1] for q in Q)
    out = Cascade(c.td, pat, dict(c.eta), c.s, c.I, xi, left, right)
    out.confinement = {t0: confinement_sets(out, t0) for t0 in pat.majors()}
    return out


def is_minimal(c, t0, cap=100_000):
    """Whether the specified linkages at t0 attain the minimum measure."""
    g = c.td.graph.delete_vertices(c.I)
    t1, t2, t3 = c.pattern.trinity(t0)
    best = minimal_linkage_pair(g, c.xi[t1], c.bag(t2) - c.I, c.bag(t3) - c.I, cap)
    return linkage_measure(*best) == linkage_measure(c.left[t0], c.right[t0])


# ---------------------------------------------------------- confinement

def _excursion(path, inside, exits):
    """(l, m) for the first exit and last re-entry of path through exits."""
    outside = [k for k, v in enumerate(path) if v not in inside]
    if not outside:
        return None
    a, b = path[outside[0] - 1], path[outside[-1] + 1]
    if a not in exits or b not in exits:
        raise ValueError("path leaves the torso other than through the expected bag")
    return exits.index(a), exits.index(b)


def confinement_sets(c, t0):
    """(A, B, C, D) at the major vertex t0 for the specified linkages."""
    inside, _ = torso(c, t0)
    t1, t2, t3 = c.pattern.trinity(t0)
    A, B, C, D = set(), set(), set(), set()
    for k, p in enumerate(c.left[t0]):
        ex = _excursion(p, inside, c.xi[t3])
        if ex is None:
            A.add(k)
        else:
            C.add((k, *ex))
    for k, q in enumerate(c.right[t0]):
        ex = _excursion(q, inside, c.xi[t2])
        if ex is None:
            B.add(k)
        else:
            D.add((k, *ex))
    return Confinement(frozenset(A), frozenset(B), frozenset(C), frozenset(D))


def _confinement_direct(c, t0):
    # independent recomputation: torso from bag unions over explicit tree paths
    pat, td = c.pattern, c.td
    stops = {c.eta[t] for t in pat.trinity(t0)}
    centre = c.eta[t0]
    nodes = [t for t in td.nodes if not (set(tree_path(td.tree, t, centre)[1:-1]) & stops)]
    inside = set().union(*(td.bags[t] for t in nodes)) - c.I
    t1, t2, t3 = pat.trinity(t0)
    sets = []
    for system, exits in ((c.left[t0], c.xi[t3]), (c.right[t0], c.xi[t2])):
        conf, trip = set(), set()
        for k, p in enumerate(system):
            if set(p) <= inside:
                conf.add(k)
                continue
            first = next(i for i, v in enumerate(p) if v not in inside)
            last = max(i for i, v in enumerate(p) if v not in inside)
            trip.add((k, list(exits).index(p[first - 1]), list(exits).index(p[last + 1])))
        sets.append((conf, trip))
    (A, C), (B, D) = sets
    return Confinement(frozenset(A), frozenset(B), frozenset(C), frozenset(D))


# ------------------------------------------------------------ subcascades

def monotone_embeddings(sub, pat):
    """Monotone embeddings of the pattern sub into pat: minor root to minor
    root, and each major's left/right neighbours to the image's left/right."""
    majors = sub.majors()
    gamma = {sub.top: pat.top}

    def rec(k):
        if k == len(majors):
            yield dict(gamma)
            return
        t = majors[k]
        above = gamma[sub.parent[t]]
        for u in pat.descendants(above):
            if u not in pat.major or u == above:
                continue
            gamma[t] = u
            l, r = sub.children[t]
            gamma[l], gamma[r] = pat.children[u]
            yield from rec(k + 1)
            del gamma[l], gamma[r], gamma[t]

    yield from rec(0)


def weakly_monotone_embeddings(sub, pat):
    """Embeddings preserving descendants and sending minors to minors."""
    order = sub.bfs()
    gamma = {}

    def rec(k):
        if k == len(order):
            yield dict(gamma)
            return
        t = order[k]
        p = sub.parent[t]
        if p is None:
            cands = pat.minors()
        elif t in sub.major:
            cands = [u for u in pat.descendants(gamma[p]) if u in pat.major]
        else:
            u = gamma[p]
            taken = [gamma[x] for x in sub.children[p] if x in gamma]
            cands = []
            for side in pat.children[u]:
                if any(pat.is_descendant(x, side) for x in taken):
                    continue
                cands.extend(x for x in pat.descendants(side) if x not in pat.major)
        for x in cands:
            gamma[t] = x
            yield from rec(k + 1)
            del gamma[t]

    yield from rec(0)


def _concat(a, b):
    if a[-1] != b[0]:
        raise ValueError("paths do not meet")
    return a + b[1:]


def compose(c, gamma, sub, linkages=True):
    """The cascade c o gamma on the pattern sub.

    With linkages=True gamma must be monotone; the specified linkages are the
    prefix linkage through the skipped minor vertices followed by the
    linkage at the image. Returns None if the composed paths are not
    disjoint paths.
    """
    eta = {t: c.eta[gamma[t]] for t in sub.tree.vertices}
    xi = None if c.xi is None else {t: c.xi[gamma[t]] for t in sub.tree.vertices
                                    if t not in sub.major}
    out = Cascade(c.td, sub, eta, c.s, c.I, xi)
    if not linkages or c.left is None:
        return out
    pat = c.pattern
    g = c.td.graph
    left, right = {}, {}
    for t0 in sub.majors():
        t1 = sub.trinity(t0)[0]
        u = gamma[t0]
        start, stop = gamma[t1], pat.parent[u]
        chain = [stop]
        while chain[-1] != start:
            chain.append(pat.parent[pat.parent[chain[-1]]])
        chain = chain[::-1]
        prefix = [(x,) for x in c.xi[start]]
        for a, b in zip(chain, chain[1:]):
            m = pat.parent[b]
            system = c.left[m] if pat.children[m][0] == b else c.right[m]
            prefix = [_concat(p, q) for p, q in zip(prefix, system)]
        left[t0] = tuple(_concat(p, q) for p, q in zip(prefix, c.left[u]))
        right[t0] = tuple(_concat(p, q) for p, q in zip(prefix, c.right[u]))
        for system in (left[t0], right[t0]):
            seen = set()
            for p in system:
                if not is_path(g, p) or seen & set(p):
                    return None
                seen |= set(p)
    out.left, out.right = left, right
    out.confinement = {t0: confinement_sets(out, t0) for t0 in sub.majors()}
    return out


@dataclass
class RegularizeResult:
    cascade: Cascade | None
    gamma: dict | None
    colour: tuple | None
    tried: int = 0


def regularize(c, a, limit=100_000):
    """A regular subcascade of height a: a monotone embedding of T_a whose
    major vertices all carry the same confinement sets, found by search."""
    if c.left is None:
        raise ValueError("cascade must be ordered with specified linkages")
    if a > c.h:
        raise ValueError("target height exceeds the cascade height")
    sub = build_pattern("T", a)
    pat = c.pattern
    colour = {t: c.confinement[t].key() for t in pat.majors()}
    tried = 0
    for gamma in monotone_embeddings(sub, pat):
        tried += 1
        if tried > limit:
            raise SearchCapExceeded(f"monotone embedding search exceeded {limit}")
        cols = {colour[gamma[t]] for t in sub.major}
        if len(cols) != 1:
            continue
        out = compose(c, gamma, sub)
        if out is None:
            continue
        return RegularizeResult(out, gamma, cols.pop(), tried)
    return RegularizeResult(None, None, None, tried)


def is_regular(c):
    keys = {confinement_sets(c, t).key() for t in c.pattern.majors()}
    return len(keys) <= 1


# --------------------------------------------------------- refinement

@dataclass
class RefineResult:
    alternative: int  # 1: cascade with a larger common core, 2: injective cascade
    cascade: Cascade


def common_core(c):
    return frozenset.intersection(*(c.td.bags[x] for x in c.eta.values()))


def refine_injective(td, c, a, b, k, w=None, budget=200_000):
    """Either a cascade of height a whose bags share k+1 vertices, or an
    injective weak subcascade of c of height b with |I| = k.

    When w is given the height precondition (2(a+2)w+2)b is enforced; the
    searches themselves are exhaustive and do not need it.
    """
    if w is not None and c.h < refine_height(a, b, w):
        raise ValueError(f"cascade height {c.h} below {refine_height(a, b, w)}")
    F = common_core(c)
    if len(F) < k:
        raise ValueError(f"bags share {len(F)} vertices, fewer than {k}")
    if len(F) >= k + 1 and a <= c.h:
        sub = build_pattern("T", a)
        return RefineResult(1, Cascade(td, sub, {t: c.eta[t] for t in sub.tree.vertices}, c.s))
    # first alternative: any cascade of height a and size s sharing k+1 vertices
    pattern = build_pattern("T", a)
    node_ok, path_ok, _ = _cascade_constraints(td, pattern, c.s, False)

    def shares(eta, u, x):
        core = td.bags[x]
        for y in eta.values():
            core = core & td.bags[y]
        return len(core) >= k + 1

    res = find_embedding(pattern, td.tree, node_ok=node_ok, path_ok=path_ok,
                         extend_ok=shares, budget=budget)
    if res.status == "inconclusive":
        raise SearchCapExceeded("search for a cascade with a larger core was cut off")
    if res.found:
        return RefineResult(1, Cascade(td, pattern, res.eta, c.s))
    sub = build_pattern("T", b)
    for gamma in weakly_monotone_embeddings(sub, c.pattern):
        bags = [td.bags[c.eta[gamma[t]]] for t in sub.tree.vertices]
        if all(x & y == F for x, y in itertools.combinations(bags, 2)):
            eta = {t: c.eta[gamma[t]] for t in sub.tree.vertices}
            return RefineResult(2, Cascade(td, sub, eta, c.s, F))
    raise ValueError("neither alternative found; the cascade is too short")


# -------------------------------------------------------------- properties

TAGS = ("A", "B", "C2", "AB", "C")  # C2 is the two-index property C_ij


@dataclass(frozen=True)
class Tripod:
    centre: int
    legs: tuple  # three vertex tuples, each from the centre to a foot

    @property
    def feet(self):
        return tuple(l[-1] for l in self.legs)

    @property
    def vertices(self):
        return frozenset(v for l in self.legs for v in l)

    def edges(self):
        out = set()
        for l in self.legs:
            out |= _edges(l)
        return out

    def to_dict(self):
        return {"centre": self.centre, "legs": [list(l) for l in self.legs]}


@dataclass
class PropertyWitness:
    tag: str
    i: int
    j: int
    t0: int
    parts: dict  # name -> Tripod or vertex tuple or list of tuples

    def to_dict(self):
        def enc(x):
            if isinstance(x, Tripod):
                return x.to_dict()
            if isinstance(x, list):
                return [enc(y) for y in x]
            if isinstance(x, dict):
                return {str(k): enc(v) for k, v in x.items()}
            return list(x) if isinstance(x, tuple) else x
        return {"tag": self.tag, "i": self.i, "j": self.j, "t0": self.t0,
                "parts": {k: enc(v) for k, v in self.parts.items()}}


@dataclass
class PropertyResult:
    status: str  # "found" | "none" | "inconclusive"
    witness: PropertyWitness | None = None

    @property
    def found(self):
        return self.status == "found"


class _Counter:
    def __init__(self, cap):
        self.n = 0
        self.cap = cap

    def tick(self):
        self.n += 1
        if self.n > self.cap:
            raise SearchCapExceeded(f"property search exceeded {self.cap} steps")


def _simple_paths(g, a, b, allowed, counter):
    """All simple a..b paths with every vertex in allowed."""
    if a not in allowed or b not in allowed:
        return
    if a == b:
        yield (a,)
        return
    stack = [(a, (a,), frozenset([a]))]
    while stack:
        x, p, seen = stack.pop()
        for y in sorted(g.adj(x), reverse=True):
            if y not in allowed or y in seen:
                continue
            counter.tick()
            if y == b:
                yield p + (y,)
            else:
                stack.append((y, p + (y,), seen | {y}))


def _tripods(g, feet, allowed, counter):
    """Every tripod with the given feet (in order) inside allowed."""
    f1, f2, f3 = feet
    for p in _simple_paths(g, f1, f2, allowed, counter):
        if f3 in p:
            k = p.index(f3)
            yield Tripod(f3, (p[:k + 1][::-1], p[k:], (f3,)))
            continue
        pset = set(p)
        for q in _attachments(g, f3, pset, allowed, counter):
            c = q[-1]
            k = p.index(c)
            yield Tripod(c, (p[:k + 1][::-1], p[k:], q[::-1]))


def _attachments(g, a, target, allowed, counter):
    """Simple paths from a to a vertex of target with interior outside it."""
    stack = [(a, (a,), frozenset([a]))]
    while stack:
        x, p, seen = stack.pop()
        for y in sorted(g.adj(x), reverse=True):
            if y not in allowed or y in seen:
                continue
            counter.tick()
            if y in target:
                yield p + (y,)
            else:
                stack.append((y, p + (y,), seen | {y}))


def _some_tripod(g, feet, allowed):
    f1, f2, f3 = feet
    p = shortest_path(g, f1, f2, allowed)
    if p is None:
        return None
    if f3 in p:
        k = p.index(f3)
        return Tripod(f3, (tuple(p[:k + 1][::-1]), tuple(p[k:]), (f3,)))
    best = None
    for c in p:
        q = shortest_path(g, f3, c, set(allowed) - set(p))
        if q is not None and (best is None or len(q) < len(best)):
            best = q
    if best is None:
        return None
    k = p.index(best[-1])
    return Tripod(best[-1], (tuple(p[:k + 1][::-1]), tuple(p[k:]), tuple(best[::-1])))


def _ends(c, t0, i, j):
    t1, t2, t3 = c.pattern.trinity(t0)
    return [(c.xi[t][i], c.xi[t][j]) for t in (t1, t2, t3)]


def _search_A(c, t0, i, j, g, allowed, counter):
    ends = _ends(c, t0, i, j)
    for s2, s3 in itertools.product((0, 1), repeat=2):
        fi = (ends[0][0], ends[1][s2], ends[2][s3])
        fj = (ends[0][1], ends[1][1 - s2], ends[2][1 - s3])
        for Li in _tripods(g, fi, allowed - set(fj), counter):
            rest = allowed - Li.vertices
            Lj = _some_tripod(g, fj, rest)
            if Lj is not None:
                return {"L_i": Li, "L_j": Lj}
    return None


def _is_path_graph(vs, es):
    if not vs:
        return False
    deg = {v: 0 for v in vs}
    for a, b in es:
        deg[a] += 1
        deg[b] += 1
    if len(es) != len(vs) - 1 or max(deg.values()) > 2:
        return False
    adj = {v: set() for v in vs}
    for a, b in es:
        adj[a].add(b)
        adj[b].add(a)
    start = next(iter(vs))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x] - seen:
            seen.add(y)
            stack.append(y)
    return seen == set(vs)


def _b_overlap_ok(Li, Lj):
    """L_i and L_j meet exactly in a path on leg 3 of L_i and leg 2 of L_j,
    avoiding both centres."""
    common = Li.vertices & Lj.vertices
    if not common or Li.centre in common or Lj.centre in common:
        return False
    if not common <= set(Li.legs[2]) or not common <= set(Lj.legs[1]):
        return False
    return _is_path_graph(common, Li.edges() & Lj.edges())


def _search_B(c, t0, i, j, g, allowed, counter):
    ends = _ends(c, t0, i, j)
    for s1, s2, s3 in itertools.product((0, 1), repeat=3):
        fi = (ends[0][s1], ends[1][s2], ends[2][s3])
        fj = (ends[0][1 - s1], ends[1][1 - s2], ends[2][1 - s3])
        Tj = list(_tripods(g, fj, allowed - set(fi), counter))
        if not Tj:
            continue
        for Li in _tripods(g, fi, allowed - set(fj), counter):
            core = Li.vertices - (set(Li.legs[2]) - {Li.centre})
            for Lj in Tj:
                counter.tick()
                if Lj.vertices & core:
                    continue
                if _b_overlap_ok(Li, Lj):
                    return {"L_i": Li, "L_j": Lj}
    return None


def _connector(g, allowed, paths):
    """A path of length >= 1 joining two of the given disjoint paths with
    interior avoiding all of them, or None."""
    owner = {}
    for k, p in enumerate(paths):
        for v in p:
            owner[v] = k
    free = allowed - set(owner)
    for v in sorted(owner):
        for y in sorted(g.adj(v)):
            if y in owner and owner[y] != owner[v]:
                return (v, y)
    for v in sorted(owner):
        starts = sorted(y for y in g.adj(v) if y in free)
        for y0 in starts:
            prev = {y0: None}
            dq = deque([y0])
            while dq:
                x = dq.popleft()
                for z in sorted(g.adj(x)):
                    if z in owner and owner[z] != owner[v]:
                        seq = [x]
                        while prev[seq[-1]] is not None:
                            seq.append(prev[seq[-1]])
                        return (v, *seq[::-1], z)
                    if z in free and z not in prev:
                        prev[z] = x
                        dq.append(z)
    return None


def _search_C2(c, t0, i, j, g, allowed, counter):
    (a1, b1), (a2, b2), (a3, b3) = _ends(c, t0, i, j)
    # R_i: a1..a2, R_j: b1..b3, R_ij: b2..a3
    term = {a1, b1, a2, b2, a3, b3}
    for Ri in _simple_paths(g, a1, a2, allowed - (term - {a1, a2}), counter):
        r1 = allowed - set(Ri)
        for Rj in _simple_paths(g, b1, b3, r1 - (term - {b1, b3}), counter):
            r2 = r1 - set(Rj)
            for Rij in _simple_paths(g, b2, a3, r2, counter):
                R = _connector(g, allowed, [Ri, Rj, Rij])
                if R is not None:
                    return {"R_i": Ri, "R_j": Rj, "R_ij": Rij, "R": R}
    return None


def _two_linkage(g, pair1, pair2, allowed, counter):
    a1, b1 = pair1
    a2, b2 = pair2
    for p in _simple_paths(g, a1, b1, allowed - {a2, b2}, counter):
        q = shortest_path(g, a2, b2, allowed - set(p))
        if q is not None:
            return p, tuple(q)
    return None


def _search_AB(c, t0, i, j, g, allowed, counter):
    (a1, b1), (a2, b2), (a3, b3) = _ends(c, t0, i, j)
    L = _two_linkage(g, (a1, a2), (b1, b2), allowed, counter)
    if L is None:
        return None
    R = _two_linkage(g, (a1, a3), (b1, b3), allowed, counter)
    if R is None:
        return None
    return {"L_i": L[0], "L_j": L[1], "R_i": R[0], "R_j": R[1]}


def _search_C(c, t0):
    conf = confinement_sets(c, t0)
    s = c.width
    A, B = conf.A, conf.B
    if s % 2 or A & B or len(A) != s // 2 or len(B) != s // 2:
        return None
    inside, _ = torso(c, t0)
    t1, t2, t3 = c.pattern.trinity(t0)
    P, Q = c.left[t0], c.right[t0]
    pe = set().union(*(_edges(p) for p in P))
    qe = set().union(*(_edges(q) for q in Q))
    for a in A:
        if not _edges(P[a]) <= qe:
            return None
    for b in B:
        if not _edges(Q[b]) <= pe:
            return None
    common = {e for e in pe & qe if e[0] in inside and e[1] in inside}
    used = set().union(*(set(P[a]) for a in A), *(set(Q[b]) for b in B))
    adj = {}
    for x, y in common:
        if x in used or y in used:
            continue
        adj.setdefault(x, set()).add(y)
        adj.setdefault(y, set()).add(x)
    links = []
    for k in sorted(B):
        start = c.xi[t2][k]
        goal = {c.xi[t3][l]: l for l in A}
        # the common graph has maximum degree two, so walk it
        seq, prev = [start], None
        while seq[-1] not in goal:
            nxt = [y for y in sorted(adj.get(seq[-1], ())) if y != prev]
            if not nxt:
                return None
            prev = seq[-1]
            seq.append(nxt[0])
        links.append(tuple(seq))
    if len({p[-1] for p in links}) != len(links):
        return None
    return {"R_A": {a: P[a] for a in sorted(A)}, "R_B": {b: Q[b] for b in sorted(B)},
            "R_links": links}


_SEARCH = {"A": _search_A, "B": _search_B, "C2": _search_C2, "AB": _search_AB}


def check_property(c, t0, tag, i=0, j=1, cap=2_000_000):
    """Exhaustive search for the property tag at the major vertex t0.

    tag is one of A, B, C2 (the two-index C property), AB or C; i and j
    index the orderings (0-based). Returns a PropertyResult whose witness
    has already been re-validated.
    """
    if c.xi is None:
        raise ValueError("cascade must be ordered")
    if t0 not in c.pattern.major:
        raise ValueError(f"{t0} is not a major vertex")
    if tag == "C":
        if c.left is None:
            raise ValueError("property C needs specified linkages")
        parts = _search_C(c, t0)
        i = j = -1
    else:
        if i == j or not (0 <= i < c.width and 0 <= j < c.width):
            raise ValueError("need two distinct ordering indices")
        vs, g = torso(c, t0)
        try:
            parts = _SEARCH[tag](c, t0, i, j, g, set(vs), _Counter(cap))
        except SearchCapExceeded:
            return PropertyResult("inconclusive")
    if parts is None:
        return PropertyResult("none")
    w = PropertyWitness(tag, i, j, t0, parts)
    bad = witness_violations(c, w)
    if bad:
        raise AssertionError(f"search produced an invalid {tag} witness: {bad}")
    return PropertyResult("found", w)


def _tripod_violations(g, L, allowed):
    bad = []
    if len(L.legs) != 3:
        return ["tripod needs three legs"]
    if sum(1 for l in L.legs if len(l) > 1) < 2:
        bad.append("fewer than two legs of positive length")
    for l in L.legs:
        if l[0] != L.centre or not is_path(g, l) or not set(l) <= allowed:
            bad.append(f"leg {list(l)} is not a torso path from the centre")
    for a, b in itertools.combinations(L.legs, 2):
        if set(a) & set(b) != {L.centre}:
            bad.append("legs meet away from the centre")
    return bad


def witness_violations(c, w):
    """Re-check a property witness against its definition in the torso."""
    vs, g = torso(c, w.t0)
    allowed = set(vs)
    t1, t2, t3 = c.pattern.trinity(w.t0)
    x = [c.xi[t1], c.xi[t2], c.xi[t3]]
    i, j = w.i, w.j
    bad = []
    if w.tag == "A":
        Li, Lj = w.parts["L_i"], w.parts["L_j"]
        for name, L, m in (("L_i", Li, i), ("L_j", Lj, j)):
            bad += [f"{name}: {b}" for b in _tripod_violations(g, L, allowed)]
            f = L.feet
            if f[0] != x[0][m] or f[1] not in (x[1][i], x[1][j]) or f[2] not in (x[2][i], x[2][j]):
                bad.append(f"{name} has the wrong feet")
        if Li.vertices & Lj.vertices:
            bad.append("tripods are not disjoint")
    elif w.tag == "B":
        Li, Lj = w.parts["L_i"], w.parts["L_j"]
        for name, L in (("L_i", Li), ("L_j", Lj)):
            bad += [f"{name}: {b}" for b in _tripod_violations(g, L, allowed)]
        for y in range(3):
            if {Li.feet[y], Lj.feet[y]} != {x[y][i], x[y][j]}:
                bad.append(f"feet at trinity position {y + 1} are not the two indexed vertices")
        common = Li.vertices & Lj.vertices
        legs = (set(Li.legs[2]) - {Li.centre}) & (set(Lj.legs[1]) - {Lj.centre})
        if common != legs or Li.centre in common or Lj.centre in common:
            bad.append("tripods meet outside leg 3 of L_i and leg 2 of L_j")
        elif not _is_path_graph(common, Li.edges() & Lj.edges()):
            bad.append("intersection is not a path")
    elif w.tag == "C2":
        Ri, Rj, Rij, R = (w.parts[k] for k in ("R_i", "R_j", "R_ij", "R"))
        legs = ((Ri, x[0][i], x[1][i]), (Rj, x[0][j], x[2][j]), (Rij, x[1][j], x[2][i]))
        for p, a, b in legs:
            if not is_path(g, p) or not set(p) <= allowed or {p[0], p[-1]} != {a, b}:
                bad.append(f"{list(p)} is not a torso path between {a} and {b}")
        for p, q in itertools.combinations((Ri, Rj, Rij), 2):
            if set(p) & set(q):
                bad.append("R_i, R_j, R_ij are not disjoint")
        owners = [k for k, p in enumerate((Ri, Rj, Rij)) for v in (R[0], R[-1]) if v in p]
        inner = set(R[1:-1])
        if (len(R) < 2 or not is_path(g, R) or not set(R) <= allowed
                or len(set(owners)) != 2 or inner & (set(Ri) | set(Rj) | set(Rij))):
            bad.append("R does not join two of the paths internally disjointly")
    elif w.tag == "AB":
        for name, m, y in (("L_i", i, 1), ("L_j", j, 1), ("R_i", i, 2), ("R_j", j, 2)):
            p = w.parts[name]
            if not is_path(g, p) or not set(p) <= allowed or {p[0], p[-1]} != {x[0][m], x[y][m]}:
                bad.append(f"{name} has the wrong ends or leaves the torso")
        if set(w.parts["L_i"]) & set(w.parts["L_j"]) or set(w.parts["R_i"]) & set(w.parts["R_j"]):
            bad.append("paths of a pair meet")
    elif w.tag == "C":
        conf = confinement_sets(c, w.t0)
        s = c.width
        ra, rb, links = w.parts["R_A"], w.parts["R_B"], w.parts["R_links"]
        if s % 2 or conf.A & conf.B or len(conf.A) != s // 2 or len(conf.B) != s // 2:
            bad.append("confinement sets do not split the indices in half")
        pe = set().union(*(_edges(p) for p in c.left[w.t0]))
        qe = set().union(*(_edges(q) for q in c.right[w.t0]))
        allp = list(ra.values()) + list(rb.values()) + list(links)
        if len(allp) != 3 * s // 2:
            bad.append("wrong number of paths")
        for p in allp:
            if not is_path(g, p) or not set(p) <= allowed or not _edges(p) <= pe & qe:
                bad.append(f"{list(p)} is not a common subpath inside the torso")
        for p, q in itertools.combinations(allp, 2):
            if set(p) & set(q):
                bad.append("paths are not disjoint")
        for a, p in ra.items():
            if {p[0], p[-1]} != {x[0][a], x[1][a]}:
                bad.append(f"R_{a} has the wrong ends")
        for b, p in rb.items():
            if {p[0], p[-1]} != {x[0][b], x[2][b]}:
                bad.append(f"R_{b} has the wrong ends")
        for p in links:
            ok = any({p[0], p[-1]} == {x[1][k], x[2][l]} for k in conf.B for l in conf.A)
            if not ok:
                bad.append(f"{list(p)} does not join the right ends")
    else:
        bad.append(f"unknown tag {w.tag}")
    return bad


# ------------------------------------------------------------------- taming

@dataclass
class TameResult:
    i: int
    j: int
    tag: str
    cascade: Cascade
    gamma: dict


def tame(c, height=1, tags=("A", "B"), cap=2_000_000, limit=200_000):
    """A weak subcascade of the given height whose major vertices all carry
    property A_ij, or all carry B_ij, for one pair i < j.

    Exhaustive over weakly monotone embeddings; returns None when c is too
    short to contain one. Pairs are tried in order, then tags, then
    embeddings nearest to the identity first.
    """
    if c.xi is None:
        raise ValueError("cascade must be ordered")
    sub = build_pattern("T", height)
    gammas = []
    for k, gamma in enumerate(weakly_monotone_embeddings(sub, c.pattern)):
        if k >= limit:
            raise SearchCapExceeded(f"more than {limit} weak embeddings")
        gammas.append(gamma)
    cache = {}
    for i, j in itertools.combinations(range(c.width), 2):
        for tag in tags:
            for gamma in gammas:
                d = compose(c, gamma, sub, linkages=False)
                witnesses = {}
                for t0 in sub.majors():
                    key = (tag, i, j, tuple(d.eta[t] for t in (t0, *sub.trinity(t0))),
                           tuple(d.xi[t] for t in sub.trinity(t0)))
                    if key not in cache:
                        cache[key] = check_property(d, t0, tag, i, j, cap)
                    res = cache[key]
                    if not res.found:
                        break
                    w = res.witness
                    witnesses[t0] = PropertyWitness(w.tag, w.i, w.j, t0, w.parts)
                else:
                    d.witnesses = witnesses
                    return TameResult(i, j, tag, d, gamma)
    return None
