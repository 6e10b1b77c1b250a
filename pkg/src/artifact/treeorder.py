"""The recursive linear quasi-order on finite trees.

Trees are compared first by size; equal-size trees are compared by the bridge
sets of their spines under domination. Domination of two finite sets of
trees amounts to comparing their rank lists, sorted in descending order,
lexicographically with a proper prefix ranking lower. That turns the rank of
a tree into a nested tuple

    code(T) = (|V(T)|, sorted-descending codes of the spine's bridges)

where the spine minimises the bridge tuple over all maximal paths. Two trees
are equivalent exactly when their codes coincide. Codes are memoised on
canonical (AHU) encodings of the trees.
"""

from __future__ import annotations

import enum
import hashlib
import json
from dataclasses import dataclass, field

from .graph import Graph, components


class TreeOrderOutcome(enum.Enum):
    LESS = "Less"
    EQUIVALENT = "Equivalent"
    GREATER = "Greater"


Less = TreeOrderOutcome.LESS
Equivalent = TreeOrderOutcome.EQUIVALENT
Greater = TreeOrderOutcome.GREATER


# ---------------------------------------------------------- canonical forms

def tree_centers(t):
    """The one or two central vertices of a tree."""
    if t.n <= 2:
        return list(t.vertices)
    deg = {v: t.degree(v) for v in t.vertices}
    layer = [v for v in t.vertices if deg[v] == 1]
    left = t.n
    while left > 2:
        left -= len(layer)
        nxt = []
        for v in layer:
            for w in t.adj(v):
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return sorted(layer)


def _rooted_code(t, root):
    """AHU encoding of t rooted at root, plus children in canonical order."""
    parent = {root: None}
    order = [root]
    for v in order:
        for w in sorted(t.adj(v)):
            if w not in parent:
                parent[w] = v
                order.append(w)
    code = {}
    kids = {}
    for v in reversed(order):
        ch = [w for w in t.adj(v) if parent.get(w) == v and w != parent[v]]
        ch.sort(key=lambda w: (code[w], w))
        kids[v] = ch
        code[v] = "(" + "".join(code[w] for w in ch) + ")"
    return code[root], kids


def _canonical(t):
    if t.n == 0:
        return "", {}, None
    best = None
    for c in tree_centers(t):
        code, kids = _rooted_code(t, c)
        if best is None or code < best[0]:
            best = (code, kids, c)
    return best


def canonical_string(t):
    """Isomorphism-invariant parenthesis string of a tree."""
    return _canonical(t)[0]


def canonical_code(t):
    """Canonical code as a hex string (parentheses read as bits 1/0)."""
    s = canonical_string(t)
    if not s:
        return "0"
    bits = "1" + "".join("1" if ch == "(" else "0" for ch in s)
    return format(int(bits, 2), "x")


def canonical_labels(t):
    """Map vertex -> label 0..n-1 following the canonical rooted ordering."""
    code, kids, root = _canonical(t)
    if root is None:
        return {}
    out = {}
    order = [root]
    for v in order:
        out[v] = len(out)
        order.extend(kids[v])
    return out


def canonical_tree(t):
    lab = canonical_labels(t)
    return t.relabel(lab)


# ------------------------------------------------------------------ bridges

@dataclass(frozen=True)
class Bridge:
    graph: Graph
    attachments: frozenset
    kind: str  # "component" or "chord"


def _check_path(g, p):
    p = list(p)
    if not p or len(set(p)) != len(p):
        raise ValueError("not a path: repeated or missing vertices")
    for v in p:
        if not g.has_vertex(v):
            raise ValueError(f"not a path: {v} is not a vertex")
    for a, b in zip(p, p[1:]):
        if not g.has_edge(a, b):
            raise ValueError(f"not a path: {a}-{b} is not an edge")
    return p


def p_bridges(g, p):
    """P-bridges of g for the path p (a vertex sequence)."""
    p = _check_path(g, p)
    pset = set(p)
    pedges = {tuple(sorted(e)) for e in zip(p, p[1:])}
    out = []
    for u, v in g.edges:
        if u in pset and v in pset and (u, v) not in pedges:
            out.append(Bridge(Graph([u, v], [(u, v)]), frozenset([u, v]), "chord"))
    for comp in components(g, set(g.vertices) - pset):
        cset = set(comp)
        att = {w for x in comp for w in g.adj(x) if w in pset}
        es = [(x, y) for x, y in g.edges
              if (x in cset and (y in cset or y in pset)) or (y in cset and x in pset)]
        out.append(Bridge(Graph(cset | att, es), frozenset(att), "component"))
    return out


def maximal_paths(t):
    """All maximal paths of a tree (leaf to leaf), each from the smaller end."""
    if t.n == 1:
        return [tuple(t.vertices)]
    leaves = [v for v in t.vertices if t.degree(v) <= 1]
    out = []
    for i, a in enumerate(leaves):
        prev = {a: None}
        stack = [a]
        while stack:
            x = stack.pop()
            for y in t.adj(x):
                if y not in prev:
                    prev[y] = x
                    stack.append(y)
        for b in leaves[i + 1:]:
            seq = [b]
            while seq[-1] != a:
                seq.append(prev[seq[-1]])
            out.append(tuple(seq[::-1]))
    return out


# --------------------------------------------------------------------- ranks

_memo = {}


def _bridge_tuple(t, p):
    codes = [rank_code(b.graph) for b in p_bridges(t, p)]
    codes.sort(reverse=True)
    return tuple(codes)


def rank_code(t):
    """Nested-tuple rank of a tree; equal codes mean equivalent trees."""
    key = canonical_string(t)
    hit = _memo.get(key)
    if hit is not None:
        return hit
    best = min(_bridge_tuple(t, p) for p in maximal_paths(t))
    code = (t.n, best)
    _memo[key] = code
    return code


def clear_cache():
    _memo.clear()


def _code_json(code):
    n, kids = code
    return [n, [_code_json(k) for k in kids]]


@dataclass(frozen=True, order=True)
class RankKey:
    """Identifies a rank class; compares like the tree order itself."""
    code: tuple
    hex: str = field(compare=False)
    representative: Graph = field(compare=False, repr=False)


def rank_key(t):
    code = rank_code(t)
    digest = hashlib.sha256(json.dumps(_code_json(code)).encode()).hexdigest()
    return RankKey(code, digest[:16], canonical_tree(t))


def compare_trees(t1, t2):
    a, b = rank_code(t1), rank_code(t2)
    if a < b:
        return Less
    if a > b:
        return Greater
    return Equivalent


def tree_leq(t1, t2):
    return rank_code(t1) <= rank_code(t2)


def _sorted_desc(trees):
    return sorted(trees, key=lambda t: (rank_code(t), canonical_string(t)), reverse=True)


def dominates(A, B, strict=False):
    """True if the tree set B dominates the tree set A (strictly if asked).

    Both sets are listed in descending order; p is the length of the longest
    common prefix of equivalent entries (p = 0 allowed).
    """
    a, b = _sorted_desc(A), _sorted_desc(B)
    k, l = len(a), len(b)
    p = 0
    while p < min(k, l) and compare_trees(a[p], b[p]) is Equivalent:
        p += 1
    if p < min(k, l):
        return compare_trees(a[p], b[p]) is Less
    if strict:
        return p == k and k < l
    return p == k and k <= l


def spine(t):
    """A maximal path with domination-minimal bridge set.

    Ties are broken by the lexicographically least sequence of canonical
    labels, reading each path from its end with the smaller label.
    """
    lab = canonical_labels(t)
    best = None
    for p in maximal_paths(t):
        if lab[p[0]] > lab[p[-1]]:
            p = p[::-1]
        key = (_bridge_tuple(t, p), [lab[v] for v in p])
        if best is None or key < best[0]:
            best = (key, p)
    return list(best[1])


def spine_bridges(t):
    return p_bridges(t, spine(t))


# ------------------------------------------------------- spine-decompositions

@dataclass(frozen=True)
class SpineDecomposition:
    trees: tuple
    spines: tuple

    @property
    def length(self):
        return len(self.spines) - 1


def spine_decomposition(t, v):
    """Sequence (T_0, P_0, ..., T_l, P_l) relative to vertex v, ending with v on P_l."""
    if not t.has_vertex(v):
        raise ValueError(f"{v} is not a vertex of the tree")
    trees, spines = [t], []
    cur = t
    while True:
        p = spine(cur)
        spines.append(tuple(p))
        if v in p:
            break
        (br,) = [b for b in p_bridges(cur, p) if b.graph.has_vertex(v)]
        cur = br.graph
        trees.append(cur)
    return SpineDecomposition(tuple(trees), tuple(spines))


# ------------------------------------------------------ rank-reducing move

class HypothesisError(ValueError):
    """A precondition of a construction fails; the message names the clause."""


def spine2_transform(t, v, r3, r3p, t1=None):
    """Rank-decreasing rebuild of a tree around a degree-3 vertex v.

    With v's neighbours t1, t2 on the last spine of the spine-decomposition
    relative to v and t3 off it, and r3, r3p adjacent with r3, r3p, t3, v in
    this order along a path: subdivide r3-r3p twice, delete v-t1, contract
    v-t2 and v-t3, and join t1 to the new vertex next to r3. The result is
    relabelled to 0..n-1 in sorted order of the surviving identifiers, with
    the two new vertices last. t1 may be given to pick which spine
    neighbour loses its edge; by default the smaller identifier.
    """
    if not t.is_tree():
        raise HypothesisError("input is not a tree")
    if not t.has_vertex(v) or t.degree(v) != 3:
        raise HypothesisError("t must be a vertex of degree three")
    sd = spine_decomposition(t, v)
    last = set(sd.spines[-1])
    on = sorted(w for w in t.adj(v) if w in last)
    off = [w for w in t.adj(v) if w not in last]
    if len(on) != 2 or len(off) != 1:
        raise HypothesisError("exactly two neighbours of t must lie on the last spine")
    if t1 is None:
        t1 = on[0]
    if t1 not in on:
        raise HypothesisError("t'_1 must be a neighbour of t on the last spine")
    t2 = on[1] if t1 == on[0] else on[0]
    (t3,) = off
    if not (t.has_vertex(r3) and t.has_vertex(r3p) and t.has_edge(r3, r3p)):
        raise HypothesisError("r_3 and r'_3 must be adjacent vertices")
    from .decomposition import tree_path
    route = tree_path(t, r3, v)
    if len(route) < 3 or route[1] != r3p or route[-2] != t3:
        raise HypothesisError("r_3, r'_3, t'_3, t must occur on a path in this order")
    top = max(t.vertices)
    r2, r1 = top + 1, top + 2  # r''_3 next to r'_3, r'''_3 next to r_3
    edges = set()
    for a, b in t.edges:
        e = {a, b}
        if e == {r3, r3p} or e == {v, t1}:
            continue
        edges.add((a, b))
    edges |= {(r3p, r2), (r2, r1), (r1, r3)}
    # contract v-t2 and v-t3 into v
    merged = set()
    for a, b in edges:
        a = v if a in (t2, t3) else a
        b = v if b in (t2, t3) else b
        if a != b:
            merged.add(tuple(sorted((a, b))))
    merged.add(tuple(sorted((t1, r1))))
    verts = [x for x in t.vertices if x not in (t2, t3)] + [r2, r1]
    mp = {x: i for i, x in enumerate(verts)}
    return Graph(range(len(verts)), [(mp[a], mp[b]) for a, b in merged])


def spine2_candidates(t, v):
    """All (r3, r3p) pairs meeting the path-order clause for vertex v."""
    if t.degree(v) != 3:
        return []
    sd = spine_decomposition(t, v)
    last = set(sd.spines[-1])
    off = [w for w in t.adj(v) if w not in last]
    if len(off) != 1:
        return []
    (t3,) = off
    out = []
    # walk the branch behind t3 away from v
    parent = {t3: v}
    stack = [t3]
    while stack:
        x = stack.pop()
        for y in sorted(t.adj(x)):
            if y != parent[x]:
                parent[y] = x
                out.append((y, x))
                stack.append(y)
    return sorted(out)


# ------------------------------------------------------------- enumeration

def all_trees(n):
    """One representative of every isomorphism class of trees on n vertices."""
    if n <= 0:
        return []
    level = {canonical_string(Graph([0])): Graph([0])}
    for size in range(2, n + 1):
        nxt = {}
        for t in level.values():
            for v in t.vertices:
                t2 = Graph(range(size), list(t.edges) + [(v, size - 1)])
                key = canonical_string(t2)
                if key not in nxt:
                    nxt[key] = canonical_tree(t2)
        level = nxt
    return [level[k] for k in sorted(level)]


def random_tree(rng, n):
    """Uniform labelled tree on 0..n-1 via a random Pruefer sequence."""
    if n == 1:
        return Graph([0])
    if n == 2:
        return Graph(range(2), [(0, 1)])
    seq = [rng.randrange(n) for _ in range(n - 2)]
    deg = [1] * n
    for x in seq:
        deg[x] += 1
    edges = []
    import heapq
    leaves = [i for i in range(n) if deg[i] == 1]
    heapq.heapify(leaves)
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        deg[x] -= 1
        if deg[x] == 1:
            heapq.heappush(leaves, x)
    a, b = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((a, b))
    return Graph(range(n), edges)


def tree_to_parents(t):
    """Parent array rooted at the smallest vertex (-1 for the root)."""
    g, _ = t.normalized()
    par = [-1] * g.n
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in g.adj(x):
            if y not in seen:
                seen.add(y)
                par[y] = x
                stack.append(y)
    return par


def tree_from_parents(par):
    return Graph(range(len(par)), [(i, p) for i, p in enumerate(par) if p >= 0])


def tree_to_json(t):
    return json.dumps(tree_to_parents(t))


def tree_from_json(text):
    return tree_from_parents(json.loads(text))
