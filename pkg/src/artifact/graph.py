"""Finite simple graphs, connectivity, disjoint paths and minor search."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path


class ParseError(ValueError):
    """Malformed input file; carries a 1-based line and column."""

    def __init__(self, message, line=0, col=0):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


class Graph:
    """Immutable finite simple undirected graph on integer vertices."""

    __slots__ = ("_vertices", "_adj", "_edges", "_hash")

    def __init__(self, vertices=(), edges=()):
        vs = sorted(set(int(v) for v in vertices))
        adj = {v: set() for v in vs}
        es = set()
        for e in edges:
            u, v = e
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if u not in adj or v not in adj:
                raise ValueError(f"edge {u}-{v} has an endpoint outside the vertex set")
            a, b = (u, v) if u < v else (v, u)
            es.add((a, b))
            adj[a].add(b)
            adj[b].add(a)
        self._vertices = tuple(vs)
        self._adj = {v: frozenset(nb) for v, nb in adj.items()}
        self._edges = tuple(sorted(es))
        self._hash = None

    @classmethod
    def from_edges(cls, edges, n=None):
        """Graph on 0..n-1 (or on the edge endpoints when n is None)."""
        edges = list(edges)
        if n is None:
            vs = {x for e in edges for x in e}
        else:
            vs = range(n)
        return cls(vs, edges)

    @property
    def vertices(self):
        return self._vertices

    @property
    def edges(self):
        return self._edges

    @property
    def n(self):
        return len(self._vertices)

    @property
    def m(self):
        return len(self._edges)

    def adj(self, v):
        return self._adj[v]

    def degree(self, v):
        return len(self._adj[v])

    def has_vertex(self, v):
        return v in self._adj

    def has_edge(self, u, v):
        return u in self._adj and v in self._adj[u]

    def subgraph(self, vs):
        """Induced subgraph on vs."""
        keep = set(vs) & self._adj.keys()
        return Graph(keep, ((u, v) for u, v in self._edges if u in keep and v in keep))

    def delete_vertices(self, vs):
        drop = set(vs)
        return self.subgraph(v for v in self._vertices if v not in drop)

    def delete_edges(self, es):
        drop = {tuple(sorted(e)) for e in es}
        return Graph(self._vertices, (e for e in self._edges if e not in drop))

    def add_edges(self, es):
        es = list(es)
        vs = set(self._vertices) | {x for e in es for x in e}
        return Graph(vs, list(self._edges) + es)

    def relabel(self, mapping):
        """Rename vertices through an injective mapping."""
        return Graph((mapping[v] for v in self._vertices),
                     ((mapping[u], mapping[v]) for u, v in self._edges))

    def normalized(self):
        """Relabel to 0..n-1 preserving vertex order; returns (graph, old->new)."""
        mp = {v: i for i, v in enumerate(self._vertices)}
        return self.relabel(mp), mp

    def is_tree(self):
        return self.n >= 1 and self.m == self.n - 1 and is_connected(self)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._vertices, self._edges))
        return self._hash

    def __repr__(self):
        return f"Graph(n={self.n}, edges={list(self._edges)})"


# ----------------------------------------------------------------- generators

def complete(k):
    return Graph(range(k), combinations(range(k), 2))


def cycle(n):
    return Graph(range(n), [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return Graph(range(n), [(i, i + 1) for i in range(n - 1)])


def star(k):
    """K_{1,k} with hub 0."""
    return Graph(range(k + 1), [(0, i) for i in range(1, k + 1)])


def complete_bipartite(a, b):
    return Graph(range(a + b), [(i, a + j) for i in range(a) for j in range(b)])


def wheel(k):
    """Hub 0 joined to a k-cycle on 1..k."""
    rim = [(i, i % k + 1) for i in range(1, k + 1)]
    return Graph(range(k + 1), rim + [(0, i) for i in range(1, k + 1)])


def disjoint_union(*gs):
    """Disjoint union; vertices of later graphs are shifted."""
    vs, es, off = [], [], 0
    for g in gs:
        g2, _ = g.normalized()
        vs.extend(v + off for v in g2.vertices)
        es.extend((u + off, v + off) for u, v in g2.edges)
        off += g2.n
    return Graph(vs, es)


# --------------------------------------------------------------- connectivity

def components(g, within=None):
    """Connected components (sorted lists) of g, or of g[within]."""
    allowed = set(g.vertices) if within is None else set(within)
    seen = set()
    out = []
    for s in g.vertices:
        if s not in allowed or s in seen:
            continue
        comp = [s]
        seen.add(s)
        dq = deque([s])
        while dq:
            x = dq.popleft()
            for y in g.adj(x):
                if y in allowed and y not in seen:
                    seen.add(y)
                    comp.append(y)
                    dq.append(y)
        out.append(sorted(comp))
    return out


def is_connected(g):
    return len(components(g)) <= 1


def reachable(g, start, allowed):
    """Vertices reachable from the set start moving only through allowed."""
    allowed = set(allowed)
    seen = {s for s in start if s in allowed}
    dq = deque(sorted(seen))
    while dq:
        x = dq.popleft()
        for y in g.adj(x):
            if y in allowed and y not in seen:
                seen.add(y)
                dq.append(y)
    return seen


def shortest_path(g, s, t, allowed=None):
    """BFS path from s to t (inner vertices restricted to allowed); None if absent."""
    if s == t:
        return [s]
    ok = set(g.vertices) if allowed is None else set(allowed) | {s, t}
    prev = {s: None}
    dq = deque([s])
    while dq:
        x = dq.popleft()
        for y in sorted(g.adj(x)):
            if y in ok and y not in prev:
                prev[y] = x
                if y == t:
                    out = [t]
                    while prev[out[-1]] is not None:
                        out.append(prev[out[-1]])
                    return out[::-1]
                if y != t:
                    dq.append(y)
    return None


def cutvertices(g):
    """Articulation points via lowpoints (iterative DFS)."""
    disc, low, cuts = {}, {}, set()
    counter = 0
    for root in g.vertices:
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        children = 0
        stack = [(root, None, iter(sorted(g.adj(root))))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    if v == root:
                        children += 1
                    stack.append((w, v, iter(sorted(g.adj(w)))))
                    advanced = True
                    break
                if w != parent:
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent is not None:
                low[parent] = min(low[parent], low[v])
                if parent != root and low[v] >= disc[parent]:
                    cuts.add(parent)
        if children >= 2:
            cuts.add(root)
    return cuts


@dataclass(frozen=True)
class ConnectivityReport:
    connected: bool
    two_connected: bool
    components: tuple
    cutvertices: frozenset


def connectivity_queries(g):
    comps = tuple(tuple(c) for c in components(g))
    cuts = frozenset(cutvertices(g))
    connected = len(comps) <= 1
    return ConnectivityReport(
        connected=connected,
        two_connected=connected and g.n >= 3 and not cuts,
        components=comps,
        cutvertices=cuts,
    )


def is_two_connected(g):
    return connectivity_queries(g).two_connected


# ------------------------------------------------------------ disjoint paths

@dataclass(frozen=True)
class Linkage:
    """Pairwise disjoint src-dst paths, each a tuple of vertices."""
    paths: tuple
    src: frozenset
    dst: frozenset

    def __len__(self):
        return len(self.paths)


@dataclass(frozen=True)
class Separator:
    """Vertex set meeting every src-dst path."""
    vertices: frozenset
    src: frozenset
    dst: frozenset

    def __len__(self):
        return len(self.vertices)


def is_path(g, p):
    if not p or len(set(p)) != len(p):
        return False
    if any(not g.has_vertex(v) for v in p):
        return False
    return all(g.has_edge(a, b) for a, b in zip(p, p[1:]))


def validate_linkage(g, link, k=None):
    """Violations of the linkage invariants (empty list when valid)."""
    bad = []
    if k is not None and len(link.paths) != k:
        bad.append(f"expected {k} paths, got {len(link.paths)}")
    used = set()
    for p in link.paths:
        if not is_path(g, p):
            bad.append(f"{list(p)} is not a path")
            continue
        if p[0] not in link.src or p[-1] not in link.dst:
            bad.append(f"{list(p)} does not run from src to dst")
        if any(v in link.src or v in link.dst for v in p[1:-1]):
            bad.append(f"{list(p)} has an interior vertex in src or dst")
        if len(p) > 1 and (p[-1] in link.src or p[0] in link.dst):
            bad.append(f"{list(p)} has an end in both src and dst")
        if used & set(p):
            bad.append(f"{list(p)} meets another path")
        used |= set(p)
    return bad


def validate_separator(g, sep):
    bad = []
    rest = set(g.vertices) - sep.vertices
    hit = reachable(g, sep.src - sep.vertices, rest)
    if hit & sep.dst:
        bad.append(f"src still reaches dst avoiding {sorted(sep.vertices)}")
    return bad


def disjoint_paths(g, src, dst, k):
    """Return a Linkage of k disjoint src-dst paths, or a Separator of size < k.

    Max-flow with unit vertex capacities on the split digraph; augmenting
    paths are searched breadth-first visiting lower identifiers first.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    src, dst = frozenset(src), frozenset(dst)
    for v in src | dst:
        if not g.has_vertex(v):
            raise ValueError(f"vertex {v} not in graph")
    if k == 0:
        return Linkage((), src, dst)
    idx = {v: i for i, v in enumerate(g.vertices)}
    n = len(idx)
    S, T = 2 * n, 2 * n + 1
    inf = n + 2
    cap = [dict() for _ in range(2 * n + 2)]

    def arc(a, b, c):
        cap[a][b] = cap[a].get(b, 0) + c
        cap[b].setdefault(a, 0)

    for v, i in idx.items():
        arc(2 * i, 2 * i + 1, 1)
    for u, v in g.edges:
        arc(2 * idx[u] + 1, 2 * idx[v], inf)
        arc(2 * idx[v] + 1, 2 * idx[u], inf)
    for v in sorted(src):
        arc(S, 2 * idx[v], inf)
    for v in sorted(dst):
        arc(2 * idx[v] + 1, T, inf)
    order = [sorted(c) for c in cap]
    flow = 0
    while flow < k:
        prev = {S: None}
        dq = deque([S])
        while dq and T not in prev:
            x = dq.popleft()
            for y in order[x]:
                if y not in prev and cap[x][y] > 0:
                    prev[y] = x
                    dq.append(y)
        if T not in prev:
            break
        y = T
        while prev[y] is not None:
            x = prev[y]
            cap[x][y] -= 1
            cap[y][x] += 1
            y = x
        flow += 1
    verts = g.vertices
    if flow >= k:
        paths = []
        for s in sorted(src):
            i = idx[s]
            if cap[2 * i][S] == 0:
                continue
            # follow saturated arcs from the out-copy
            seq = [s]
            x = 2 * i + 1
            while True:
                nxt = None
                for y in order[x]:
                    if y == T and cap[T][x] > 0:
                        nxt = T
                        break
                    if y < 2 * n and y % 2 == 0 and cap[y][x] > 0 and (x, y) != (y + 1, y):
                        nxt = y
                        break
                if nxt == T:
                    break
                cap[nxt][x] -= 1  # consume so shared arcs are not reused
                seq.append(verts[nxt // 2])
                x = nxt + 1
            paths.append(_trim(seq, src, dst))
        return Linkage(tuple(sorted(paths)), src, dst)
    seen = {S}
    dq = deque([S])
    while dq:
        x = dq.popleft()
        for y in order[x]:
            if y not in seen and cap[x][y] > 0:
                seen.add(y)
                dq.append(y)
    cut = frozenset(verts[i] for i in range(n) if 2 * i in seen and 2 * i + 1 not in seen)
    return Separator(cut, src, dst)


def _trim(seq, src, dst):
    i = max(j for j, v in enumerate(seq) if v in src)
    j = min(j for j in range(i, len(seq)) if seq[j] in dst)
    return tuple(seq[i:j + 1])


def max_disjoint_paths(g, src, dst):
    """Maximum number of disjoint src-dst paths."""
    k = min(len(src), len(dst))
    res = disjoint_paths(g, src, dst, k)
    return len(res.paths) if isinstance(res, Linkage) else len(res.vertices)


# ---------------------------------------------------------------- minors

@dataclass(frozen=True)
class MinorModel:
    pattern: Graph
    host: Graph
    nodes: dict

    def to_json(self):
        return {
            "nodes": {str(u): sorted(self.nodes[u]) for u in sorted(self.nodes)},
        }


def validate_minor_model(m):
    """Return (ok, violations) for a minor model."""
    bad = []
    nodes = {u: set(m.nodes.get(u, ())) for u in m.pattern.vertices}
    for u in m.pattern.vertices:
        if not nodes[u]:
            bad.append(f"node of {u} is empty")
        elif not nodes[u] <= set(m.host.vertices):
            bad.append(f"node of {u} leaves the host")
        elif len(components(m.host, nodes[u])) != 1:
            bad.append(f"node of {u} is not connected")
    for u, v in combinations(m.pattern.vertices, 2):
        if nodes[u] & nodes[v]:
            bad.append(f"disjointness: nodes of {u} and {v} overlap")
    for u, v in m.pattern.edges:
        if not any(m.host.adj(x) & nodes[v] for x in nodes[u] if m.host.has_vertex(x)):
            bad.append(f"edge {u}-{v} unrealized")
    return (not bad), bad


@dataclass
class MinorSearchResult:
    status: str  # "found" | "none" | "inconclusive"
    model: MinorModel | None = None
    explored: int = 0

    @property
    def found(self):
        return self.status == "found"


def _reduce_host(host, pattern):
    """Shrink host without changing whether pattern is a minor.

    Returns (reduced graph, groups) where groups maps each reduced vertex to
    the original vertices merged into it.
    """
    mindeg = min((pattern.degree(v) for v in pattern.vertices), default=0)
    adj = {v: set(host.adj(v)) for v in host.vertices}
    groups = {v: {v} for v in host.vertices}
    changed = True
    while changed:
        changed = False
        for x in sorted(adj):
            d = len(adj[x])
            if (d == 0 and mindeg >= 1) or (d == 1 and mindeg >= 2):
                for y in adj[x]:
                    adj[y].discard(x)
                del adj[x], groups[x]
                changed = True
            elif d == 2 and mindeg >= 3:
                y, z = sorted(adj[x])
                adj[y].discard(x)
                adj[z].discard(x)
                if z not in adj[y]:
                    adj[y].add(z)
                    adj[z].add(y)
                    groups[y] |= groups[x]
                del adj[x], groups[x]
                changed = True
    g = Graph(adj.keys(), ((u, v) for u in adj for v in adj[u] if u < v))
    return g, groups


def _embed_spanning(pattern, quot, parts_deg):
    """Injective map pattern -> quotient vertices preserving edges, or None."""
    pv = sorted(pattern.vertices, key=lambda v: (-pattern.degree(v), v))
    q = len(parts_deg)
    assign = {}
    used = [False] * q

    def rec(i):
        if i == len(pv):
            return True
        u = pv[i]
        for p in range(q):
            if used[p] or parts_deg[p] < pattern.degree(u):
                continue
            if all(assign[w] in quot[p] for w in pattern.adj(u) if w in assign):
                assign[u] = p
                used[p] = True
                if rec(i + 1):
                    return True
                used[p] = False
                del assign[u]
        return False

    return dict(assign) if rec(0) else None


def _narrow_order(g, comp):
    """Vertex order keeping the set of placed-but-open vertices small.

    Each vertex after the first has an earlier neighbour. Branch sets close
    early under such an order, which is what makes the pruning bite.
    """
    placed = []
    pset = set()
    start = min(comp, key=lambda v: (g.degree(v), v))
    cand = {start}
    while cand:
        best = None
        for v in sorted(cand):
            pset.add(v)
            front = sum(1 for x in pset if any(y not in pset for y in g.adj(x)))
            pset.discard(v)
            key = (front, -len(g.adj(v) & pset), v)
            if best is None or key < best[0]:
                best = (key, v)
        v = best[1]
        placed.append(v)
        pset.add(v)
        cand.discard(v)
        cand |= {y for y in g.adj(v) if y not in pset}
    return placed


def find_minor_model(host, pattern, budget=2_000_000):
    """Search for a model of pattern in host.

    Branch and bound over assignments of host vertices to branch sets. Any
    model can be grown until it covers every host component it touches, so
    the search ranges over partitions of whole components into connected
    parts and then checks that the quotient contains the pattern.
    """
    h = pattern.n
    if h == 0:
        return MinorSearchResult("found", MinorModel(pattern, host, {}), 0)
    if h > host.n or pattern.m > host.m:
        return MinorSearchResult("none", None, 0)
    g, groups = _reduce_host(host, pattern)
    if h > g.n or pattern.m > g.m:
        return MinorSearchResult("none", None, 0)
    pdeg = sorted(pattern.degree(v) for v in pattern.vertices)
    order = []
    comp_start = set()
    for comp in components(g):
        comp_start.add(len(order))
        order.extend(_narrow_order(g, comp))
    N = len(order)
    pos = {v: i for i, v in enumerate(order)}
    nbr = [[pos[y] for y in g.adj(v)] for v in order]
    label = [-1] * N  # -1 unassigned, -2 skipped, else part index
    parts = []
    explored = 0
    result = None

    pm = pattern.m

    def feasible(i):
        # every part must stay connectable through unassigned vertices, and
        # degree / edge-count upper bounds must still allow the pattern
        comp_of = {}
        cid = 0
        for x in range(i, N):
            if label[x] != -1 or x in comp_of:
                continue
            stack = [x]
            comp_of[x] = cid
            while stack:
                a = stack.pop()
                for b in nbr[a]:
                    if label[b] == -1 and b not in comp_of:
                        comp_of[b] = cid
                        stack.append(b)
            cid += 1
        nbs = []
        open_parts = []
        for pidx, members in enumerate(parts):
            parent = {}

            def find(a):
                while parent[a] != a:
                    parent[a] = parent[parent[a]]
                    a = parent[a]
                return a

            for a in members:
                parent[a] = a
            is_closed = True
            nb_parts = set()
            for a in members:
                for b in nbr[a]:
                    lb = label[b]
                    if lb == pidx:
                        ra, rb = find(a), find(b)
                    elif lb == -1:
                        is_closed = False
                        key = -1 - comp_of[b]
                        parent.setdefault(key, key)
                        ra, rb = find(a), find(key)
                    else:
                        if lb >= 0:
                            nb_parts.add(lb)
                        continue
                    if ra != rb:
                        parent[ra] = rb
            r0 = find(members[0])
            if any(find(a) != r0 for a in members):
                return False
            nbs.append(nb_parts)
            if not is_closed:
                open_parts.append(pidx)
        future = h - len(parts)
        cur_edges = sum(len(x) for x in nbs) // 2
        extra = future * (future - 1) // 2 + future * len(open_parts)
        ub = []
        oset = set(open_parts)
        for pidx, nb in enumerate(nbs):
            if pidx in oset:
                more = sum(1 for q in open_parts if q != pidx and q not in nb)
                ub.append(len(nb) + more + future)
            else:
                ub.append(len(nb))
        for x, q in enumerate(open_parts):
            extra += sum(1 for r in open_parts[x + 1:] if r not in nbs[q])
        if cur_edges + extra < pm:
            return False
        ub.extend([h - 1] * future)
        ub.sort()
        for j, d in enumerate(ub):
            if d < pdeg[j]:
                return False
        return True

    def finish():
        q = len(parts)
        quot = [set() for _ in range(q)]
        for a in range(N):
            if label[a] < 0:
                continue
            for b in nbr[a]:
                if label[b] >= 0 and label[b] != label[a]:
                    quot[label[a]].add(label[b])
        mp = _embed_spanning(pattern, quot, [len(s) for s in quot])
        if mp is None:
            return None
        nodes = {}
        for u, p in mp.items():
            nodes[u] = frozenset(x for a in parts[p] for x in groups[order[a]])
        return MinorModel(pattern, host, nodes)

    class Budget(Exception):
        pass

    def rec(i):
        nonlocal explored, result
        explored += 1
        if explored > budget:
            raise Budget
        if i == N:
            if len(parts) == h:
                result = finish()
                return result is not None
            return False
        remaining = N - i
        if h - len(parts) > remaining:
            return False
        if i in comp_start:
            # option: leave this whole component unused
            j = i + 1
            while j < N and j not in comp_start:
                j += 1
            for x in range(i, j):
                label[x] = -2
            if rec(j):
                return True
            for x in range(i, j):
                label[x] = -1
        for p in range(len(parts) + 1):
            if p == len(parts):
                if len(parts) >= h:
                    break
                parts.append([i])
            else:
                parts[p].append(i)
            label[i] = p
            if feasible(i + 1) and rec(i + 1):
                return True
            label[i] = -1
            if p == len(parts) - 1 and parts[p] == [i]:
                parts.pop()
            else:
                parts[p].pop()
        return False

    try:
        ok = rec(0)
    except Budget:
        return MinorSearchResult("inconclusive", None, explored)
    if ok:
        return MinorSearchResult("found", result, explored)
    return MinorSearchResult("none", None, explored)


def has_minor(host, pattern, budget=2_000_000):
    """True/False, raising RuntimeError when the search budget runs out."""
    res = find_minor_model(host, pattern, budget)
    if res.status == "inconclusive":
        raise RuntimeError("minor search budget exhausted")
    return res.found


def is_outerplanar(g):
    """No K_4 minor and no K_{2,3} minor."""
    return not has_minor(g, complete(4)) and not has_minor(g, complete_bipartite(2, 3))


# ------------------------------------------------------------ ear decomposition

def _find_cycle(g):
    parent = {}
    for root in g.vertices:
        if root in parent:
            continue
        parent[root] = None
        stack = [root]
        while stack:
            x = stack.pop()
            for y in sorted(g.adj(x)):
                if y == parent[x]:
                    continue
                if y in parent:
                    # back edge closes a cycle
                    a, b = x, y
                    anc = []
                    while a is not None:
                        anc.append(a)
                        a = parent[a]
                    seq = []
                    while b not in anc:
                        seq.append(b)
                        b = parent[b]
                    return anc[:anc.index(b) + 1] + seq[::-1]
                parent[y] = x
                stack.append(y)
    return None


def ear_decomposition(g):
    """Return [H_0, H_1, ...]: a cycle (closed vertex list) followed by ears (paths)."""
    if not is_two_connected(g):
        raise ValueError("graph is not 2-connected")
    # DFS tree yields a cycle through a back edge
    cyc = _dfs_cycle(g)
    ears = [tuple(cyc)]
    used_v = set(cyc)
    used_e = {tuple(sorted(e)) for e in zip(cyc, cyc[1:] + cyc[:1])}
    while len(used_e) < g.m:
        progress = False
        for u, v in g.edges:
            if (u, v) in used_e:
                continue
            if u not in used_v and v not in used_v:
                continue
            a, b = (u, v) if u in used_v else (v, u)
            if b in used_v:
                ear = (a, b)
            else:
                outside = set(g.vertices) - used_v
                prev = {b: None}
                dq = deque([b])
                end = None
                while dq and end is None:
                    x = dq.popleft()
                    for y in sorted(g.adj(x)):
                        if y in used_v and y != a:
                            end = (x, y)
                            break
                        if y in outside and y not in prev:
                            prev[y] = x
                            dq.append(y)
                if end is None:
                    continue
                x, y = end
                seq = [y, x]
                while prev[seq[-1]] is not None:
                    seq.append(prev[seq[-1]])
                ear = tuple([a] + seq[::-1])
            ears.append(ear)
            used_v |= set(ear)
            used_e |= {tuple(sorted(e)) for e in zip(ear, ear[1:])}
            progress = True
            break
        if not progress:
            raise ValueError("graph is not 2-connected")
    return ears


def _dfs_cycle(g):
    cyc = _find_cycle(g)
    if cyc is None:
        raise ValueError("graph is acyclic")
    return cyc


def validate_ear_decomposition(g, ears):
    """Violations of the ear-decomposition contract (empty when valid)."""
    bad = []
    if not ears:
        return ["no cycle"]
    c = list(ears[0])
    if len(c) < 3 or len(set(c)) != len(c) or not is_path(g, c) or not g.has_edge(c[0], c[-1]):
        bad.append("H_0 is not a cycle")
    seen_v = set(c)
    seen_e = {tuple(sorted(e)) for e in zip(c, c[1:] + c[:1])}
    for i, ear in enumerate(ears[1:], 1):
        ear = list(ear)
        if not is_path(g, ear) or len(ear) < 2:
            bad.append(f"ear {i} is not a path")
            continue
        if ear[0] not in seen_v or ear[-1] not in seen_v or ear[0] == ear[-1]:
            bad.append(f"ear {i} ends are not distinct old vertices")
        if any(x in seen_v for x in ear[1:-1]):
            bad.append(f"ear {i} has an old interior vertex")
        es = {tuple(sorted(e)) for e in zip(ear, ear[1:])}
        if es & seen_e:
            bad.append(f"ear {i} reuses an edge")
        seen_v |= set(ear)
        seen_e |= es
    if seen_e != set(g.edges) or seen_v != set(g.vertices):
        bad.append("ears do not cover the graph")
    return bad


# ------------------------------------------------------------------ .gr files

def parse_gr(text):
    """Parse PACE .gr text; vertices become 0-indexed."""
    n = m = None
    edges = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        toks = line.split()
        if toks[0] == "p":
            if n is not None:
                raise ParseError("duplicate header", ln, 1)
            if len(toks) != 4 or toks[1] != "tw":
                raise ParseError("expected 'p tw <n> <m>'", ln, 1)
            n = _int(toks[2], ln, raw, 2)
            m = _int(toks[3], ln, raw, 3)
            continue
        if n is None:
            raise ParseError("edge before header", ln, 1)
        if len(toks) != 2:
            raise ParseError("expected 'u v'", ln, 1)
        u = _int(toks[0], ln, raw, 0)
        v = _int(toks[1], ln, raw, 1)
        for x, ti in ((u, 0), (v, 1)):
            if not 1 <= x <= n:
                raise ParseError(f"vertex {x} out of range 1..{n}", ln, _col(raw, ti))
        if u == v:
            raise ParseError("loop", ln, 1)
        edges.append((u - 1, v - 1))
    if n is None:
        raise ParseError("missing header", 1, 1)
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges, found {len(edges)}", 1, 1)
    return Graph(range(n), edges)


def _col(raw, tok_index):
    col, count, in_tok = 0, -1, False
    for i, ch in enumerate(raw):
        if not ch.isspace() and not in_tok:
            count += 1
            in_tok = True
            if count == tok_index:
                return i + 1
        elif ch.isspace():
            in_tok = False
    return col + 1


def _int(tok, ln, raw, ti):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected integer, got {tok!r}", ln, _col(raw, ti)) from None


def format_gr(g):
    """Serialize to .gr; vertices are renumbered 1..n in sorted order."""
    g2, _ = g.normalized()
    lines = [f"p tw {g2.n} {g2.m}"]
    lines += [f"{u + 1} {v + 1}" for u, v in sorted(g2.edges)]
    return "\n".join(lines) + "\n"


def read_gr(p):
    return parse_gr(Path(p).read_text())


def write_gr(g, p):
    Path(p).write_text(format_gr(g))


def internally_disjoint_paths(g, a, b, k):
    """Vertex-pair form: k a-b paths sharing only their ends, or a separator.

    a and b must be distinct and non-adjacent; the separator avoids both.
    """
    if a == b or g.has_edge(a, b):
        raise ValueError("ends must be distinct and non-adjacent")
    inner = g.delete_vertices([a, b])
    res = disjoint_paths(inner, g.adj(a), g.adj(b), k)
    if isinstance(res, Separator):
        return Separator(res.vertices, frozenset([a]), frozenset([b]))
    paths = tuple(sorted((a,) + p + (b,) for p in res.paths))
    return Linkage(paths, frozenset([a]), frozenset([b]))
