"""Tree- and path-decompositions, exact width solvers and .td files."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .graph import Graph, ParseError, components, _int


class TreeDecomposition:
    """A tree plus one bag per tree node, decomposing a graph."""

    def __init__(self, graph, tree, bags):
        self.graph = graph
        self.tree = tree
        self.bags = {t: frozenset(bags.get(t, ())) for t in tree.vertices}

    @classmethod
    def from_path(cls, graph, bags):
        """Path-shaped decomposition with nodes 0..len(bags)-1."""
        bags = list(bags)
        tree = Graph(range(len(bags)), [(i, i + 1) for i in range(len(bags) - 1)])
        return cls(graph, tree, dict(enumerate(bags)))

    @property
    def nodes(self):
        return self.tree.vertices

    def bag(self, t):
        return self.bags[t]

    def width(self):
        return width(self)

    def tree_path(self, a, b):
        """Node list of the tree path from a to b."""
        return tree_path(self.tree, a, b)

    def branches(self, t0):
        """Components of T minus t0, as sorted node lists."""
        return components(self.tree, set(self.tree.vertices) - {t0})

    def with_tree(self, tree, bags):
        return TreeDecomposition(self.graph, tree, bags)

    def normalized(self):
        """Relabel tree nodes to 0..N-1 in sorted order."""
        mp = {t: i for i, t in enumerate(self.tree.vertices)}
        return TreeDecomposition(self.graph, self.tree.relabel(mp),
                                 {mp[t]: b for t, b in self.bags.items()})

    def key(self):
        return (self.tree, tuple(sorted((t, tuple(sorted(b))) for t, b in self.bags.items())))

    def __eq__(self, other):
        if not isinstance(other, TreeDecomposition):
            return NotImplemented
        return self.graph == other.graph and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        body = ", ".join(f"{t}:{sorted(b)}" for t, b in sorted(self.bags.items()))
        return f"TreeDecomposition({body}; tree={list(self.tree.edges)})"


@dataclass(frozen=True)
class PathDecomposition:
    graph: Graph
    bags: tuple

    def __init__(self, graph, bags):
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in bags))

    def width(self):
        return max((len(b) for b in self.bags), default=0) - 1

    def as_tree_decomposition(self):
        return TreeDecomposition.from_path(self.graph, self.bags)


def tree_path(tree, a, b):
    if a == b:
        return [a]
    prev = {a: None}
    stack = [a]
    while stack:
        x = stack.pop()
        for y in tree.adj(x):
            if y not in prev:
                prev[y] = x
                stack.append(y)
    if b not in prev:
        raise ValueError(f"nodes {a} and {b} are not connected")
    out = [b]
    while out[-1] != a:
        out.append(prev[out[-1]])
    return out[::-1]


def validate_decomposition(td):
    """Check covering of vertices/edges and the subtree condition.

    Returns (ok, violations). Raises ValueError if td.tree is not a tree.
    """
    if not td.tree.is_tree():
        raise ValueError("decomposition tree is not a tree")
    g = td.graph
    bad = []
    covered = set()
    for t in td.nodes:
        extra = td.bags[t] - set(g.vertices)
        if extra:
            bad.append(f"bag {t} holds non-vertices {sorted(extra)}")
        covered |= td.bags[t]
    for v in g.vertices:
        if v not in covered:
            bad.append(f"vertex {v} uncovered")
    for u, v in g.edges:
        if not any(u in b and v in b for b in td.bags.values()):
            bad.append(f"edge {u}-{v} uncovered")
    for v in g.vertices:
        holders = [t for t in td.nodes if v in td.bags[t]]
        if len(holders) <= 1:
            continue
        comps = components(td.tree, holders)
        if len(comps) > 1:
            a, b = comps[0][0], comps[1][0]
            gap = next(t for t in td.tree_path(a, b) if v not in td.bags[t])
            bad.append(f"vertex {v}: nodes {a},{gap},{b} break the subtree condition")
    return (not bad), bad


def validate_path_decomposition(pd):
    bad = []
    g = pd.graph
    covered = set().union(*pd.bags) if pd.bags else set()
    for v in g.vertices:
        if v not in covered:
            bad.append(f"vertex {v} uncovered")
    for u, v in g.edges:
        if not any(u in b and v in b for b in pd.bags):
            bad.append(f"edge {u}-{v} uncovered")
    for v in covered:
        idx = [i for i, b in enumerate(pd.bags) if v in b]
        if idx[-1] - idx[0] + 1 != len(idx):
            bad.append(f"vertex {v} occurs in a non-contiguous run")
    if not pd.bags:
        bad.append("no bags")
    return (not bad), bad


def width(td):
    """Largest bag size minus one; -1 for an empty decomposition."""
    return max((len(b) for b in td.bags.values()), default=0) - 1


# ------------------------------------------------------------- exact solvers

def _masks(g):
    idx = {v: i for i, v in enumerate(g.vertices)}
    nb = [0] * g.n
    for u, v in g.edges:
        nb[idx[u]] |= 1 << idx[v]
        nb[idx[v]] |= 1 << idx[u]
    return idx, nb


def _q(nb, S, v):
    """Vertices outside S+v reachable from v through S (as a mask)."""
    reach = 1 << v
    front = reach
    while front:
        new = 0
        f = front
        while f:
            low = f & -f
            new |= nb[low.bit_length() - 1]
            f ^= low
        new &= S & ~reach
        reach |= new
        front = new
    out = 0
    r = reach
    while r:
        low = r & -r
        out |= nb[low.bit_length() - 1]
        r ^= low
    return out & ~S & ~(1 << v)


def _ordering_search(n, cost_fits):
    """Find an ordering in which every step passes cost_fits(S, v), or None."""
    full = (1 << n) - 1
    dead = set()
    order = []

    def rec(S):
        if S == full:
            return True
        if S in dead:
            return False
        for v in range(n):
            if not S >> v & 1 and cost_fits(S, v):
                order.append(v)
                if rec(S | 1 << v):
                    return True
                order.pop()
        dead.add(S)
        return False

    return list(order) if rec(0) else None


def exact_treewidth(g, cap=14):
    """Minimum width and a witness decomposition, by search over elimination orders."""
    if g.n > cap:
        raise ValueError(f"graph has {g.n} vertices, above the cap of {cap}")
    if g.n == 0:
        return -1, TreeDecomposition(g, Graph([0]), {0: frozenset()})
    idx, nb = _masks(g)
    n = g.n
    lower = 0
    for k in range(lower, n):
        order = _ordering_search(n, lambda S, v: bin(_q(nb, S, v)).count("1") <= k)
        if order is not None:
            break
    verts = g.vertices
    return k, td_from_elimination_order(g, [verts[i] for i in order])


def td_from_elimination_order(g, order):
    """Decomposition induced by eliminating vertices in the given order."""
    idx, nb = _masks(g)
    pos = {v: i for i, v in enumerate(order)}
    bags = {}
    parent = {}
    S = 0
    verts = g.vertices
    for v in order:
        i = idx[v]
        q = _q(nb, S, i)
        higher = [verts[j] for j in range(g.n) if q >> j & 1]
        bags[pos[v]] = frozenset([v] + higher)
        if higher:
            parent[pos[v]] = min(pos[u] for u in higher)
        S |= 1 << i
    roots = [t for t in range(len(order)) if t not in parent]
    edges = [(t, p) for t, p in parent.items()]
    edges += list(zip(roots, roots[1:]))
    return TreeDecomposition(g, Graph(range(len(order)), edges), bags)


def exact_pathwidth(g, cap=12):
    """Minimum width and a witness path-decomposition via vertex separation."""
    if g.n > cap:
        raise ValueError(f"graph has {g.n} vertices, above the cap of {cap}")
    if g.n == 0:
        return -1, PathDecomposition(g, [frozenset()])
    idx, nb = _masks(g)
    n = g.n

    def boundary(S):
        c = 0
        s = S
        while s:
            low = s & -s
            if nb[low.bit_length() - 1] & ~S:
                c += 1
            s ^= low
        return c

    for k in range(n):
        order = _ordering_search(n, lambda S, v: boundary(S | 1 << v) <= k)
        if order is not None:
            break
    verts = g.vertices
    bags = []
    S = 0
    for v in order:
        front = [verts[j] for j in range(n) if S >> j & 1 and nb[j] & ~S]
        bags.append(frozenset(front + [verts[v]]))
        S |= 1 << v
    return k, PathDecomposition(g, bags)


# ---------------------------------------------------------------- lifting

def lift_path_decomposition(td, pdT):
    """Path-decomposition of td.graph from one of the decomposition tree.

    Bag i is the union of the td bags over the tree nodes in pdT bag i.
    """
    ok, bad = validate_decomposition(td)
    if not ok:
        raise ValueError(f"invalid tree-decomposition: {bad[0]}")
    if pdT.graph != td.tree:
        raise ValueError("path-decomposition is not of the decomposition tree")
    ok, bad = validate_path_decomposition(pdT)
    if not ok:
        raise ValueError(f"invalid path-decomposition of the tree: {bad[0]}")
    bags = [frozenset().union(*(td.bags[y] for y in Y)) for Y in pdT.bags]
    return PathDecomposition(td.graph, bags)


# ---------------------------------------------------------------- triads

@dataclass(frozen=True)
class TriadTorso:
    triad: tuple
    center: int
    nodes: frozenset
    vertices: frozenset
    graph: Graph
    X: frozenset


def triad_center(tree, t1, t2, t3):
    """The node separating t1, t2, t3 into distinct branches, or None."""
    if len({t1, t2, t3}) < 3:
        return None
    p12 = set(tree_path(tree, t1, t2))
    p13 = set(tree_path(tree, t1, t3))
    p23 = set(tree_path(tree, t2, t3))
    med = p12 & p13 & p23
    (m,) = med
    if m in (t1, t2, t3):
        return None
    return m


def side_of(tree, cut, target):
    """Nodes in the component of T minus cut that contains target."""
    (comp,) = [c for c in components(tree, set(tree.vertices) - {cut}) if target in c]
    return set(comp)


def triad_torso(td, t1, t2, t3):
    t0 = triad_center(td.tree, t1, t2, t3)
    if t0 is None:
        raise ValueError(f"{(t1, t2, t3)} is not a triad")
    keep = set(td.nodes)
    for ti in (t1, t2, t3):
        keep &= side_of(td.tree, ti, t0)
    keep |= {t1, t2, t3}
    verts = frozenset().union(*(td.bags[t] for t in keep))
    X = td.bags[t1] & td.bags[t2] & td.bags[t3]
    return TriadTorso((t1, t2, t3), t0, frozenset(keep), verts, td.graph.subgraph(verts), X)


# ------------------------------------------------------------------ .td files

def parse_td(text, graph):
    """Parse PACE .td text against graph (vertices and bag ids become 0-indexed)."""
    header = None
    bags = {}
    edges = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        toks = line.split()
        if toks[0] == "s":
            if header is not None:
                raise ParseError("duplicate header", ln, 1)
            if len(toks) != 5 or toks[1] != "td":
                raise ParseError("expected 's td <bags> <maxbag> <n>'", ln, 1)
            header = [_int(toks[i], ln, raw, i) for i in (2, 3, 4)]
            continue
        if header is None:
            raise ParseError("content before header", ln, 1)
        if toks[0] == "b":
            if len(toks) < 2:
                raise ParseError("bag line without id", ln, 1)
            bid = _int(toks[1], ln, raw, 1)
            if not 1 <= bid <= header[0]:
                raise ParseError(f"bag id {bid} out of range", ln, 3)
            if bid - 1 in bags:
                raise ParseError(f"bag {bid} given twice", ln, 3)
            vs = [_int(toks[i], ln, raw, i) for i in range(2, len(toks))]
            for i, v in enumerate(vs):
                if not 1 <= v <= header[2]:
                    raise ParseError(f"vertex {v} out of range", ln, 1 + raw.find(toks[i + 2]))
            bags[bid - 1] = frozenset(v - 1 for v in vs)
        else:
            if len(toks) != 2:
                raise ParseError("expected tree edge 'a b'", ln, 1)
            a, b = _int(toks[0], ln, raw, 0), _int(toks[1], ln, raw, 1)
            for x in (a, b):
                if not 1 <= x <= header[0]:
                    raise ParseError(f"bag id {x} out of range", ln, 1)
            edges.append((a - 1, b - 1))
    if header is None:
        raise ParseError("missing header", 1, 1)
    if len(bags) != header[0]:
        raise ParseError(f"header announces {header[0]} bags, found {len(bags)}", 1, 1)
    if header[2] != graph.n:
        raise ParseError(f"header announces {header[2]} vertices, graph has {graph.n}", 1, 1)
    tree = Graph(range(header[0]), edges)
    return TreeDecomposition(graph, tree, bags)


def format_td(td):
    """Serialize to .td; nodes are renumbered 1..N in sorted order."""
    gmap = {v: i + 1 for i, v in enumerate(td.graph.vertices)}
    nmap = {t: i + 1 for i, t in enumerate(td.nodes)}
    maxbag = max((len(b) for b in td.bags.values()), default=0)
    lines = [f"s td {len(nmap)} {maxbag} {td.graph.n}"]
    for t in td.nodes:
        vs = sorted(gmap[v] for v in td.bags[t])
        lines.append(" ".join(["b", str(nmap[t])] + [str(v) for v in vs]))
    for a, b in sorted(tuple(sorted((nmap[a], nmap[b]))) for a, b in td.tree.edges):
        lines.append(f"{a} {b}")
    return "\n".join(lines) + "\n"


def read_td(p, graph):
    return parse_td(Path(p).read_text(), graph)


def write_td(td, p):
    Path(p).write_text(format_td(td))
