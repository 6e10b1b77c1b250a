"""Size order on tree-decompositions and size-decreasing surgeries.

For a threshold n, the nodes whose bags have at least n vertices induce a
forest; each component is an (n)-cell, ranked by the tree order. The size
of a decomposition counts, for every n and rank r, the cells of rank at
least r. Sizes compare lexicographically with larger n first and, within
one n, larger ranks first.

The surgeries below each replace a decomposition by a strictly smaller one
of the same graph:

    identify    two nodes with equal bags become one node
    prune       a branch that adds nothing to its attachment bag is dropped
    absorb      a node whose bag lies inside a neighbour's bag is contracted
                into it (only when its other neighbours are no larger)
    trim        bag vertices of t0 are dropped from a branch at t0 wherever
                they are not needed to reach a neighbour private to the branch
    branchsplit a branch whose private vertices fall into two parts with no
                edges between them is duplicated, one copy per part
    subdivide   an edge between incomparable bags gets their intersection
    pathsplit   a region carrying two disjoint parts H1, H2 is split into
                two thinner copies, one per part
    w7          rebuild around a separable triad that violates W7

minimize() applies them in that order until none is applicable.
"""

from __future__ import annotations

import enum
import hashlib
import itertools
import json
from collections import Counter
from dataclasses import dataclass, field

from .decomposition import TreeDecomposition, side_of, tree_path, validate_decomposition, width
from .graph import Graph, components
from .treeorder import rank_code, spine_decomposition
from .wprops import certificate_violations, violating_triads


class SizeOutcome(enum.Enum):
    SMALLER = "Smaller"
    EQUAL = "Equal"
    LARGER = "Larger"


class NotApplicable(ValueError):
    """The surgery's preconditions fail; the message names the clause."""


class SurgeryInconclusive(RuntimeError):
    """The construction could not be completed or certified."""


# ------------------------------------------------------------------ cells

@dataclass(frozen=True)
class Cell:
    n: int
    component: frozenset
    rank: tuple  # rank code of the component as a tree


def enumerate_cells(td, n_min=0):
    """All cells for every threshold from n_min to the largest bag size."""
    top = max((len(b) for b in td.bags.values()), default=0)
    out = []
    for n in range(n_min, top + 1):
        keep = [t for t in td.nodes if len(td.bags[t]) >= n]
        for comp in components(td.tree, keep):
            sub = td.tree.subgraph(comp)
            out.append(Cell(n, frozenset(comp), rank_code(sub)))
    return out


@dataclass(frozen=True)
class SizeProfile:
    """counts[n][rank] = number of cells at threshold n with exactly that rank."""
    counts: tuple  # ((n, ((rank, count), ...)), ...) sorted

    @classmethod
    def of(cls, td):
        per = {}
        for c in enumerate_cells(td):
            per.setdefault(c.n, Counter())[c.rank] += 1
        return cls(tuple((n, tuple(sorted(per[n].items()))) for n in sorted(per)))

    def level(self, n):
        for m, row in self.counts:
            if m == n:
                return dict(row)
        return {}

    @property
    def top(self):
        return max((n for n, _ in self.counts), default=-1)

    def a(self, n, r):
        """Number of cells at threshold n of rank at least r."""
        return sum(c for rank, c in self.level(n).items() if rank >= r)

    def digest(self):
        data = [[n, [[_code_list(r), c] for r, c in row]] for n, row in self.counts]
        return hashlib.sha256(json.dumps(data).encode()).hexdigest()[:16]


def _code_list(code):
    return [code[0], [_code_list(k) for k in code[1]]]


def size_profile(td):
    return SizeProfile.of(td)


def compare_profiles(a, b):
    """Outcome for a relative to b."""
    for n in range(max(a.top, b.top), -1, -1):
        la, lb = a.level(n), b.level(n)
        ranks = sorted(set(la) | set(lb), reverse=True)
        ca = cb = 0
        for r in ranks:
            ca += la.get(r, 0)
            cb += lb.get(r, 0)
            if ca != cb:
                return SizeOutcome.LARGER if ca > cb else SizeOutcome.SMALLER
    return SizeOutcome.EQUAL


def compare_size(td1, td2):
    if td1.graph != td2.graph:
        raise ValueError("decompositions of different graphs")
    return compare_profiles(size_profile(td1), size_profile(td2))


# -------------------------------------------------------------- outcomes

@dataclass
class SurgeryOutcome:
    td: TreeDecomposition
    kind: str
    locus: dict
    before: str
    after: str
    comparison: SizeOutcome

    def log_entry(self, step):
        return {"step": step, "kind": self.kind, "locus": self.locus,
                "profile_before_digest": self.before, "profile_after_digest": self.after}


def _finish(td, tree, bags, kind, locus):
    new = TreeDecomposition(td.graph, tree, bags)
    ok, bad = validate_decomposition(new)
    if not ok:
        raise SurgeryInconclusive(f"{kind} produced an invalid decomposition: {bad[0]}")
    pa, pb = size_profile(td), size_profile(new)
    cmp = compare_profiles(pb, pa)
    if cmp is not SizeOutcome.SMALLER:
        raise SurgeryInconclusive(f"{kind} did not reduce the size ({cmp.value})")
    return SurgeryOutcome(new, kind, locus, pa.digest(), pb.digest(), cmp)


def _fresh(td, count):
    top = max(td.nodes, default=-1)
    return [top + 1 + i for i in range(count)]


# -------------------------------------------------------------- cleanups

def surgery_identify(td, a, b):
    """Merge node b into node a when their bags are equal.

    Every node between a and b holds the common bag, so b's branches that
    point away from a can hang from a instead.
    """
    if a == b or td.bags[a] != td.bags[b]:
        raise NotApplicable("nodes must be distinct with equal bags")
    toward = tree_path(td.tree, b, a)[1]
    edges = [e for e in td.tree.edges if b not in e]
    for y in td.tree.adj(b):
        if y != toward:
            edges.append((a, y))
    nodes = [t for t in td.nodes if t != b]
    bags = {t: td.bags[t] for t in nodes}
    return _finish(td, Graph(nodes, edges), bags, "identify", {"keep": a, "drop": b})


def surgery_prune(td, t0, branch):
    """Drop a branch at t0 whose bags all lie inside the bag of t0."""
    branch = set(branch)
    if set(side_of(td.tree, t0, next(iter(branch)))) != branch:
        raise NotApplicable("branch must be a component of the tree minus t0")
    if frozenset().union(*(td.bags[t] for t in branch)) - td.bags[t0]:
        raise NotApplicable("branch adds vertices outside the bag of t0")
    nodes = [t for t in td.nodes if t not in branch]
    tree = td.tree.subgraph(nodes)
    return _finish(td, tree, {t: td.bags[t] for t in nodes}, "prune",
                   {"t0": t0, "branch": sorted(branch)})


def absorbable(td, t, into):
    """True if contracting t into its neighbour `into` cannot merge larger cells."""
    W = td.bags
    return (td.tree.has_edge(t, into) and W[t] <= W[into]
            and all(len(W[s]) <= len(W[t]) for s in td.tree.adj(t) if s != into))


def surgery_absorb(td, t, into):
    """Contract node t into its neighbour whose bag contains W_t."""
    if not absorbable(td, t, into):
        raise NotApplicable("bag must lie in the neighbour's bag and other neighbours be no larger")
    edges = [e for e in td.tree.edges if t not in e]
    edges += [(into, s) for s in td.tree.adj(t) if s != into]
    nodes = [x for x in td.nodes if x != t]
    return _finish(td, Graph(nodes, edges), {x: td.bags[x] for x in nodes}, "absorb",
                   {"drop": t, "into": into})


def _branch_copy(td, t0, branch, zi):
    """Bags of the branch restricted to zi plus the needed bag vertices of t0."""
    W = td.bags
    g = td.graph
    A = frozenset().union(*(W[t] for t in branch))
    S = W[t0] & A
    (tp,) = [t for t in td.tree.adj(t0) if t in branch]
    keep = {t: set(W[t] & zi) for t in branch}
    for s_ in S:
        for x in branch:
            if s_ in W[x] and g.adj(s_) & W[x] & zi:
                for t in tree_path(td.tree, tp, x):
                    keep[t].add(s_)
    return {t: frozenset(b) for t, b in keep.items()}


def trimmed(td, t0, branch):
    W = td.bags
    Z = frozenset().union(*(W[t] for t in branch)) - W[t0]
    new = _branch_copy(td, t0, branch, Z)
    return new if any(new[t] != W[t] for t in branch) else None


def surgery_trim(td, t0, branch):
    """Drop bag vertices of t0 from a branch where no private neighbour needs them."""
    branch = set(branch)
    if not branch or set(side_of(td.tree, t0, next(iter(branch)))) != branch:
        raise NotApplicable("branch must be a component of the tree minus t0")
    new = trimmed(td, t0, branch)
    if new is None:
        raise NotApplicable("nothing to trim")
    bags = dict(td.bags)
    bags.update(new)
    return _finish(td, td.tree, bags, "trim", {"t0": t0, "branch": sorted(branch)})


def surgery_branchsplit(td, t0, branch, part):
    """Duplicate a branch at t0, keeping part Z1 in one copy and the rest in the other.

    Z is the set of branch vertices outside the bag of t0 and Z1 a union of
    components of G[Z]. Each copy keeps its share of Z plus, for every bag
    vertex of t0, the smallest subtree reaching the nodes where it meets a
    neighbour in that share.
    """
    W = td.bags
    branch = set(branch)
    if not branch or set(side_of(td.tree, t0, next(iter(branch)))) != branch:
        raise NotApplicable("branch must be a component of the tree minus t0")
    Z = frozenset().union(*(W[t] for t in branch)) - W[t0]
    z1 = frozenset(part)
    z2 = Z - z1
    if not z1 or not z2 or not z1 <= Z:
        raise NotApplicable("part must be a proper non-empty subset of the branch's private vertices")
    g = td.graph
    if any((u in z1 and v in z2) or (u in z2 and v in z1) for u, v in g.edges):
        raise NotApplicable("an edge joins the two parts")
    (tp,) = [t for t in td.tree.adj(t0) if t in branch]
    order = sorted(branch)
    copy2 = dict(zip(order, _fresh(td, len(order))))
    bags = {t: W[t] for t in td.nodes if t not in branch}
    for cp, zi in (({t: t for t in order}, z1), (copy2, z2)):
        for t, b in _branch_copy(td, t0, branch, zi).items():
            bags[cp[t]] = b
    edges = list(td.tree.edges)
    edges += [(copy2[a], copy2[b]) for a, b in td.tree.edges if a in branch and b in branch]
    edges.append((t0, copy2[tp]))
    return _finish(td, Graph(list(bags), edges), bags, "branchsplit",
                   {"t0": t0, "branch": order, "part": sorted(z1)})


def branchsplit_parts(td, t0, branch):
    """Candidate parts from tied pairs lacking a confined path."""
    from .wprops import confined_path, tied_vertices
    W = td.bags
    Z = frozenset().union(*(W[t] for t in branch)) - W[t0]
    comps = [frozenset(c) for c in components(td.graph, Z)]
    out = []
    tied = sorted(tied_vertices(td, t0, branch))
    for u, v in itertools.combinations(tied, 2):
        if confined_path(td, t0, branch, u, v) is not None:
            continue
        for x in (u, v):
            zx = frozenset().union(*(c for c in comps if td.graph.adj(x) & c))
            if zx and zx != Z and zx not in out:
                out.append(zx)
    return out


# ------------------------------------------------------------- subdivide

def surgery_subdivide(td, t, t2):
    """Insert a node with bag W_t & W_t2 on an edge between incomparable bags."""
    if not td.tree.has_edge(t, t2):
        raise NotApplicable("nodes must be adjacent")
    a, b = td.bags[t], td.bags[t2]
    if a <= b or b <= a:
        raise NotApplicable("one bag contains the other")
    (mid,) = _fresh(td, 1)
    edges = [e for e in td.tree.edges if set(e) != {t, t2}] + [(t, mid), (mid, t2)]
    bags = dict(td.bags)
    bags[mid] = a & b
    return _finish(td, Graph(list(td.nodes) + [mid], edges), bags, "subdivide",
                   {"edge": sorted((t, t2))})


# ------------------------------------------------------------- pathsplit

def between_region(td, t1, t2):
    """t1, t2 and every node lying on the t2 side of t1 and the t1 side of t2."""
    return (side_of(td.tree, t1, t2) & side_of(td.tree, t2, t1)) | {t1, t2}


@dataclass(frozen=True)
class PathSplit:
    t1: int
    t2: int
    parts: tuple  # (H1, H2)
    t0: int
    k: int
    X: frozenset


def check_pathsplit(td, t1, t2, parts, t0=None):
    """Validate the split hypotheses; returns a PathSplit or raises NotApplicable."""
    if t1 == t2:
        raise NotApplicable("t1 and t2 must differ")
    W = td.bags
    X = W[t1] & W[t2]
    region = between_region(td, t1, t2)
    hv = frozenset().union(*(W[t] for t in region))
    h1, h2 = frozenset(parts[0]), frozenset(parts[1])
    if h1 & h2 or (h1 | h2) != hv - X:
        raise NotApplicable("H1, H2 must partition the region's vertices minus X")
    for u, v in td.graph.edges:
        if (u in h1 and v in h2) or (u in h2 and v in h1):
            raise NotApplicable(f"edge {u}-{v} joins H1 and H2")
    k = len(W[t1] & h1)
    if k < 1 or any(len(W[ti] & h) != k for ti in (t1, t2) for h in (h1, h2)):
        raise NotApplicable("end bags must meet H1 and H2 in k >= 1 vertices each")
    path = tree_path(td.tree, t1, t2)
    if any(len(W[t] & h) < k for t in path for h in (h1, h2)):
        raise NotApplicable("a bag on the path meets H1 or H2 in fewer than k vertices")
    fat = [t for t in path if len(W[t] & h1) > k and len(W[t] & h2) > k]
    if not fat:
        raise NotApplicable("no node on the path meets both parts in more than k vertices")
    if t0 is None:
        t0 = max(fat, key=lambda t: (len(W[t]), -t))
    elif t0 not in fat:
        raise NotApplicable("t0 must meet both parts in more than k vertices")
    return PathSplit(t1, t2, (h1, h2), t0, k, X)


def surgery_pathsplit(td, t1, t2, parts, t0=None):
    """Replace the region between t1 and t2 by two copies in series.

    The first copy keeps H1 along the path and carries the H2 part of the
    t1 bag; the second keeps H2 and carries the H1 part of the t2 bag. The
    copies are glued end to end at a node whose bag is the union of those
    two carried parts and X. Side branches keep X as well as their part,
    so edges from X into a branch stay covered.
    """
    ps = check_pathsplit(td, t1, t2, parts, t0)
    W = td.bags
    h1, h2 = ps.parts
    X = ps.X
    region = between_region(td, t1, t2)
    path = set(tree_path(td.tree, t1, t2))
    inner = sorted(region - {t1, t2})
    fresh = iter(_fresh(td, 2 * len(inner) + 1))
    mid = next(fresh)
    c1 = {t1: t1, t2: mid}
    c2 = {t1: mid, t2: t2}
    for r in inner:
        c1[r] = next(fresh)
        c2[r] = next(fresh)
    bags = {t: W[t] for t in td.nodes if t not in region}
    for r in region:
        if r in path:
            b1 = (W[r] & h1) | (W[t1] & h2) | X
            b2 = (W[r] & h2) | (W[t2] & h1) | X
        else:
            b1 = W[r] & (h1 | X)
            b2 = W[r] & (h2 | X)
        for cp, b in ((c1, b1), (c2, b2)):
            if cp[r] in bags and bags[cp[r]] != b:
                raise SurgeryInconclusive("glued node receives two different bags")
            bags[cp[r]] = b
    edges = []
    for u, v in td.tree.edges:
        if u in region and v in region:
            edges.append((c1[u], c1[v]))
            edges.append((c2[u], c2[v]))
        else:
            edges.append((u, v))
    tree = Graph(list(bags), edges)
    return _finish(td, tree, bags, "pathsplit",
                   {"t1": t1, "t2": t2, "t0": ps.t0, "k": ps.k,
                    "H1": sorted(h1), "H2": sorted(h2)})


def find_pathsplits(td, cap=18):
    """All (t1, t2, (H1, H2)) meeting the split hypotheses, t1 < t2.

    H1 and H2 are unions of components of the region graph minus X; the
    2-colourings are searched with the end-bag counts as pruning. Regions
    with more than cap vertices outside X are skipped.
    """
    W = td.bags
    out = []
    for t1, t2 in itertools.combinations(td.nodes, 2):
        if td.tree.has_edge(t1, t2):
            continue
        X = W[t1] & W[t2]
        d1, d2 = len(W[t1] - X), len(W[t2] - X)
        if d1 != d2 or d1 % 2 or d1 == 0:
            continue
        k = d1 // 2
        region = between_region(td, t1, t2)
        hv = frozenset().union(*(W[t] for t in region))
        rest = hv - X
        if len(rest) > cap:
            continue
        path = tree_path(td.tree, t1, t2)
        if not any(len(W[t] - X) > 2 * k for t in path):
            continue
        comps = [frozenset(c) for c in components(td.graph.subgraph(hv), rest)]
        if len(comps) < 2:
            continue
        for mask in range(1, 1 << (len(comps) - 1)):
            h1 = frozenset().union(*(c for i, c in enumerate(comps) if mask >> i & 1))
            h2 = rest - h1
            if len(W[t1] & h1) != k or len(W[t2] & h1) != k:
                continue
            try:
                ps = check_pathsplit(td, t1, t2, (h1, h2))
            except NotApplicable:
                continue
            out.append(ps)
    return out


# -------------------------------------------------------------------- w7

def _cell_of(td, t0, n):
    keep = [t for t in td.nodes if len(td.bags[t]) >= n]
    for comp in components(td.tree, keep):
        if t0 in comp:
            return set(comp)
    return set()


def _w7_build(td, cert, order):
    """One attempt at the W7 rebuild with triad indices relabelled by order.

    order = (i1, i2, i3): i1, i2 index the ends whose centre neighbours lie
    on the last spine, i3 the remaining one; H_{i2} is the part that stays
    constant between r3 and the centre neighbour towards t3.
    """
    W = td.bags
    tree = td.tree
    t0, X = cert.center, cert.X
    t = [cert.triad[i] for i in order]
    H = [cert.parts[i] for i in order]
    tp = [tree_path(tree, t0, ti)[1] for ti in t]
    k = len(W[t[0]] - X) // 2
    H1, H2, H3 = H
    # r3: deepest node on T[t'3, t3] up to which the H2 part stays put
    walk = tree_path(tree, tp[2], t[2])
    base = H2 & W[tp[2]]
    r3 = None
    for r in walk[1:]:
        if H2 & W[r] != base:
            break
        r3 = r
    if r3 is None:
        raise SurgeryInconclusive("no node towards t3 keeps the H2 part of t'3")
    if r3 == t[2]:
        raise SurgeryInconclusive("r3 reaches t3")
    if len(H1 & W[r3]) != k or len(H2 & W[r3]) != k:
        raise SurgeryInconclusive("bag at r3 does not meet H1 and H2 in k vertices each")
    q = tree_path(tree, t0, r3)
    r3p = q[-2]
    spine_nodes = set(q[:-1])  # T[t0, r3']
    # re-hang side branches
    edges = set(tree.edges)
    for comp in components(tree, set(tree.vertices) - spine_nodes):
        cs = set(comp)
        if cs & set(t):
            continue
        (rB, rpB), = [(x, y) for x in cs for y in tree.adj(x) if y in spine_nodes]
        D = W[rB] - X
        fits = [i for i in range(3) if D <= (W[rpB] & H[i])]
        if not D:
            fits = [2]
        if not fits:
            raise SurgeryInconclusive(f"branch at {rB} is not confined to one part")
        i = fits[0]
        target = None
        if i == 1 or (i == 2 and rpB == t0):
            target = tp[0]
        elif i == 0 and rpB == t0:
            target = tp[1]
        if target is not None:
            edges.discard(tuple(sorted((rB, rpB))))
            edges.add(tuple(sorted((rB, target))))
    # rank-reducing rebuild around t0
    r2, r1 = _fresh(td, 2)  # r''3 next to r'3, r'''3 next to r3
    edges.discard(tuple(sorted((r3, r3p))))
    edges.discard(tuple(sorted((t0, tp[0]))))
    edges |= {(r3p, r2), (r2, r1), (r1, r3), (tp[0], r1)}
    merged = set()
    for a, b in edges:
        a = t0 if a in (tp[1], tp[2]) else a
        b = t0 if b in (tp[1], tp[2]) else b
        if a != b:
            merged.add(tuple(sorted((a, b))))
    nodes = [x for x in tree.vertices if x not in (tp[1], tp[2])] + [r2, r1]
    new_tree = Graph(nodes, merged)
    h3c = H3 & W[t0]
    bags = {x: W[x] for x in tree.vertices if x not in (tp[1], tp[2])}
    bags[r1] = W[r3] | h3c
    bags[r2] = (W[r3] - H2) | h3c
    for x in tree_path(tree, r3p, tp[2])[:-1]:
        bags[x] = (W[x] - H2) | h3c
    bags[t0] = W[tp[1]]
    locus = {"triad": list(cert.triad), "center": t0, "r3": r3, "r3p": r3p,
             "order": list(order)}
    return _finish(td, new_tree, bags, "w7", locus)


def surgery_w7(td, cert):
    """Rebuild a decomposition around a separable triad that violates W7.

    Side branches along the centre-to-r3' path are re-hung next to the
    centre's neighbours, then the centre's neighbourhood is rewired as in
    the rank-reducing tree move: the edge r3-r3' is subdivided twice, the
    centre keeps only the bag of one neighbour and the third neighbour's
    branch moves below the new node next to r3. Raises NotApplicable if the
    certificate does not describe a W7 violation, SurgeryInconclusive if
    the auxiliary choices cannot be made or no attempt is certified Smaller.
    """
    if certificate_violations(td, cert):
        raise NotApplicable("certificate does not re-validate")
    W = td.bags
    t0, X = cert.center, cert.X
    if any((W[ti] & W[t0]) - X for ti in cert.triad):
        raise NotApplicable("triad satisfies W7")
    n = len(W[cert.triad[0]])
    tp = [tree_path(td.tree, t0, ti)[1] for ti in cert.triad]
    cell = _cell_of(td, t0, n)
    if any(x not in cell for x in tp):
        raise SurgeryInconclusive("a centre neighbour lies outside the cell of the centre")
    ctree = td.tree.subgraph(cell)
    if ctree.degree(t0) != 3:
        raise SurgeryInconclusive("centre does not have degree three in its cell")
    last = set(spine_decomposition(ctree, t0).spines[-1])
    on = [i for i in range(3) if tp[i] in last]
    off = [i for i in range(3) if tp[i] not in last]
    if len(on) != 2:
        raise SurgeryInconclusive("last spine does not pass through two centre neighbours")
    reasons = []
    for a, b in (on, on[::-1]):
        try:
            return _w7_build(td, cert, (a, b, off[0]))
        except SurgeryInconclusive as e:
            reasons.append(str(e))
    raise SurgeryInconclusive("; ".join(reasons))


# ---------------------------------------------------------------- driver

KINDS = ("identify", "prune", "absorb", "trim", "branchsplit", "subdivide", "pathsplit", "w7")


def candidates(td, kind, cap=18):
    """Applicable loci of one surgery kind, lowest first, as callables."""
    W = td.bags
    if kind == "identify":
        seen = {}
        out = []
        for t in td.nodes:
            if W[t] in seen:
                out.append(((seen[W[t]], t), lambda a=seen[W[t]], b=t: surgery_identify(td, a, b)))
            else:
                seen[W[t]] = t
        return out
    if kind == "prune":
        out = []
        for t0 in td.nodes:
            for br in td.branches(t0):
                if not frozenset().union(*(W[t] for t in br)) - W[t0]:
                    out.append(((t0, tuple(br)), lambda t0=t0, br=br: surgery_prune(td, t0, br)))
        return out
    if kind == "absorb":
        return [((t, s), lambda t=t, s=s: surgery_absorb(td, t, s))
                for t in td.nodes for s in sorted(td.tree.adj(t)) if absorbable(td, t, s)]
    if kind == "trim":
        return [((t0, tuple(br)), lambda t0=t0, br=br: surgery_trim(td, t0, br))
                for t0 in td.nodes for br in td.branches(t0) if trimmed(td, t0, br)]
    if kind == "branchsplit":
        return [((t0, tuple(br), tuple(sorted(z))),
                 lambda t0=t0, br=br, z=z: surgery_branchsplit(td, t0, br, z))
                for t0 in td.nodes for br in td.branches(t0)
                for z in branchsplit_parts(td, t0, br)]
    if kind == "subdivide":
        return [((a, b), lambda a=a, b=b: surgery_subdivide(td, a, b))
                for a, b in td.tree.edges if not (W[a] <= W[b] or W[b] <= W[a])]
    if kind == "pathsplit":
        return [((p.t1, p.t2), lambda p=p: surgery_pathsplit(td, p.t1, p.t2, p.parts, p.t0))
                for p in find_pathsplits(td, cap)]
    if kind == "w7":
        return [((c.center, c.triad), lambda c=c: surgery_w7(td, c))
                for c in violating_triads(td, cap)]
    raise ValueError(f"unknown surgery {kind}")


@dataclass
class MinimizeResult:
    td: TreeDecomposition
    log: list
    fixpoint: bool
    rejected: list = field(default_factory=list)  # (step, kind, locus, reason)

    def log_jsonl(self):
        return "".join(json.dumps(e) + "\n" for e in self.log)


def minimize(td, step_limit=1000, kinds=KINDS, cap=18):
    """Apply surgeries until none applies or step_limit is reached."""
    log = []
    rejected = []
    seen = {size_profile(td).digest()}
    for step in range(step_limit):
        done = None
        for kind in kinds:
            for locus, run in candidates(td, kind, cap):
                try:
                    out = run()
                except (NotApplicable, SurgeryInconclusive) as e:
                    rejected.append((step, kind, _plain(locus), str(e)))
                    continue
                done = out
                break
            if done is not None:
                break
        if done is None:
            return MinimizeResult(td, log, True, rejected)
        if width(done.td) > width(td):
            raise AssertionError(f"{done.kind} increased the width")
        if done.after in seen:
            raise AssertionError("size profile repeated")
        seen.add(done.after)
        log.append(done.log_entry(step))
        td = done.td
    return MinimizeResult(td, log, False, rejected)


def _plain(x):
    if isinstance(x, (tuple, list)):
        return [_plain(y) for y in x]
    return x
