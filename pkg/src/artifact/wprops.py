"""Checkers for the linkedness and leanness properties W3 to W7.

W3  every two bags are joined by as many disjoint paths as the smallest bag
    on the tree path between them.
W4  bags are pairwise distinct.
W5  every branch at a node adds a vertex outside that node's bag.
W6  two bag vertices that reach into a branch are joined by a path of at
    least three vertices whose interior lies strictly inside the branch.
W7  every separable triad has an end whose bag meets the centre bag outside
    the common intersection X.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .decomposition import tree_path, triad_center, triad_torso
from .graph import Separator, components, disjoint_paths, max_disjoint_paths

PROPERTIES = ("W3", "W4", "W5", "W6", "W7")


@dataclass
class PropertyStatus:
    holds: bool | None  # None means inconclusive
    witness: object = None

    def to_dict(self):
        return {"holds": self.holds, "witness": self.witness}


@dataclass
class PropertyReport:
    statuses: dict = field(default_factory=dict)

    def __getitem__(self, name):
        return self.statuses[name]

    def holds(self, name):
        return self.statuses[name].holds

    def all_hold(self):
        return all(s.holds for s in self.statuses.values())

    def to_dict(self):
        return {k: self.statuses[k].to_dict() for k in PROPERTIES if k in self.statuses}

    def to_json(self, indent=None):
        return json.dumps(self.to_dict(), indent=indent)


# ---------------------------------------------------------------------- W3

def _pairs(td):
    return itertools.combinations(td.nodes, 2)


def min_bag_on_path(td, a, b):
    return min(len(td.bags[t]) for t in tree_path(td.tree, a, b))


def check_linked(td):
    """W3. Returns PropertyStatus; the witness carries a small separator."""
    g = td.graph
    for a, b in _pairs(td):
        need = min_bag_on_path(td, a, b)
        if need == 0:
            continue
        res = disjoint_paths(g, td.bags[a], td.bags[b], need)
        if isinstance(res, Separator):
            return PropertyStatus(False, {"t1": a, "t2": b, "k": need,
                                          "separator": sorted(res.vertices)})
    return PropertyStatus(True)


def linkage_profile(td):
    """(t1, t2, max disjoint paths, min bag on the tree path) for all node pairs."""
    g = td.graph
    return [(a, b, max_disjoint_paths(g, td.bags[a], td.bags[b]), min_bag_on_path(td, a, b))
            for a, b in _pairs(td)]


# ----------------------------------------------------------------- W4 - W6

def branch_union(td, branch):
    return frozenset().union(*(td.bags[t] for t in branch))


def tied_vertices(td, t0, branch):
    """Vertices of the bag at t0 that also appear in the branch."""
    return td.bags[t0] & branch_union(td, branch)


def confined_path(td, t0, branch, u, v):
    """A path u..v with at least three vertices and interior inside the branch, or None."""
    g = td.graph
    allowed = branch_union(td, branch) - td.bags[t0]
    starts = [a for a in sorted(g.adj(u)) if a in allowed]
    ends = {b for b in g.adj(v) if b in allowed}
    if not starts or not ends:
        return None
    prev = {a: None for a in starts}
    queue = list(starts)
    for x in queue:
        if x in ends:
            seq = [x]
            while prev[seq[-1]] is not None:
                seq.append(prev[seq[-1]])
            return (u, *seq[::-1], v)
        for y in sorted(g.adj(x)):
            if y in allowed and y not in prev:
                prev[y] = x
                queue.append(y)
    return None


def check_w4(td):
    seen = {}
    for t in td.nodes:
        b = td.bags[t]
        if b in seen:
            return PropertyStatus(False, {"t1": seen[b], "t2": t})
        seen[b] = t
    return PropertyStatus(True)


def check_w5(td):
    for t0 in td.nodes:
        for br in td.branches(t0):
            if not branch_union(td, br) - td.bags[t0]:
                return PropertyStatus(False, {"t0": t0, "branch": sorted(br)})
    return PropertyStatus(True)


def check_w6(td):
    for t0 in td.nodes:
        for br in td.branches(t0):
            tied = sorted(tied_vertices(td, t0, br))
            for u, v in itertools.combinations(tied, 2):
                if confined_path(td, t0, br, u, v) is None:
                    return PropertyStatus(False, {"t0": t0, "branch": sorted(br), "u": u, "v": v})
    return PropertyStatus(True)


def check_w456(td):
    return PropertyReport({"W4": check_w4(td), "W5": check_w5(td), "W6": check_w6(td)})


# ------------------------------------------------------------ separable triads

@dataclass(frozen=True)
class SeparableTriadCertificate:
    triad: tuple
    center: int
    X: frozenset
    parts: tuple  # (H1, H2, H3) as frozensets, Hi avoiding the bag at t_i
    table: tuple  # rows (i, j, t, |Hi & W_t|) for t on the path t_j..center

    def to_dict(self):
        return {
            "triad": list(self.triad),
            "center": self.center,
            "X": sorted(self.X),
            "parts": [sorted(h) for h in self.parts],
            "table": [list(r) for r in self.table],
        }


@dataclass(frozen=True)
class Inconclusive:
    triad: tuple
    reason: str


def enumerate_triads(td, radius=None):
    """Node triples forming a triad, sorted; radius (None for no limit)
    bounds the tree distance from each end to the centre."""
    nodes = td.nodes
    dist = {}
    for t in nodes:
        d = {t: 0}
        queue = [t]
        for x in queue:
            for y in td.tree.adj(x):
                if y not in d:
                    d[y] = d[x] + 1
                    queue.append(y)
        dist[t] = d
    out = []
    for c in nodes:
        if td.tree.degree(c) < 3:
            continue
        comps = td.branches(c)
        for trio in itertools.combinations(comps, 3):
            pools = [[t for t in comp if radius is None or dist[c][t] <= radius] for comp in trio]
            for tri in itertools.product(*pools):
                out.append((tuple(sorted(tri)), c))
    return sorted(out)


def separability_table(td, triad, center, parts):
    rows = []
    for j, tj in enumerate(triad):
        for t in tree_path(td.tree, tj, center):
            for i in range(3):
                if i != j:
                    rows.append((i + 1, j + 1, t, len(parts[i] & td.bags[t])))
    return tuple(rows)


def certificate_violations(td, cert):
    """Re-check a certificate straight from the definition; [] when valid."""
    bad = []
    t1, t2, t3 = cert.triad
    if triad_center(td.tree, t1, t2, t3) != cert.center:
        bad.append("not a triad with that centre")
        return bad
    tt = triad_torso(td, t1, t2, t3)
    X = tt.X
    if cert.X != X:
        bad.append("X differs from the common intersection")
    H = cert.parts
    rest = tt.vertices - X
    if any(not h for h in H):
        bad.append("empty part")
    if set().union(*H) != rest or sum(len(h) for h in H) != len(rest):
        bad.append("parts do not partition the torso minus X")
    for i, j in itertools.combinations(range(3), 2):
        for u, v in tt.graph.edges:
            if (u in H[i] and v in H[j]) or (u in H[j] and v in H[i]):
                bad.append(f"torso edge {u}-{v} joins parts {i + 1} and {j + 1}")
    halves = [len(td.bags[t] - X) for t in cert.triad]
    if len(set(halves)) != 1 or halves[0] % 2 or halves[0] < 2:
        bad.append("end bags minus X are not of one common even size")
        return bad
    s = halves[0] // 2
    for j, tj in enumerate(cert.triad):
        for i in range(3):
            if i == j:
                continue
            if len(H[i] & td.bags[tj]) != s:
                bad.append(f"part {i + 1} meets bag {tj} in the wrong number of vertices")
            for t in tree_path(td.tree, tj, cert.center):
                if len(H[i] & td.bags[t]) < len(H[i] & td.bags[tj]):
                    bad.append(f"part {i + 1} thins out at node {t}")
    return bad


def _separate(td, triad, center, cap):
    bags = [td.bags[t] for t in triad]
    X = bags[0] & bags[1] & bags[2]
    sizes = [len(b - X) for b in bags]
    if len(set(sizes)) != 1 or sizes[0] % 2 or sizes[0] == 0:
        return None
    s = sizes[0] // 2
    tt = triad_torso(td, *triad)
    rest = tt.vertices - X
    if len(rest) > cap:
        return Inconclusive(triad, f"torso minus X has {len(rest)} vertices, above cap {cap}")
    comps = [frozenset(c) for c in components(tt.graph, rest)]
    if len(comps) < 3:
        return None
    paths = [tree_path(td.tree, t, center) for t in triad]
    # counts[c][t] = |comp & W_t| for the nodes that matter
    watch = sorted({t for p in paths for t in p})
    counts = [{t: len(c & td.bags[t]) for t in watch} for c in comps]
    order = sorted(range(len(comps)), key=lambda c: -sum(counts[c].values()))
    assign = [None] * len(comps)
    # load[i][t] = |Hi & W_t|
    load = [{t: 0 for t in watch} for _ in range(3)]

    def ok_partial(i):
        for j in range(3):
            if j != i and load[i][triad[j]] > s:
                return False
        return load[i][triad[i]] == 0

    def finished():
        for i in range(3):
            if not any(assign[c] == i for c in range(len(comps))):
                return False
        for j in range(3):
            for i in range(3):
                if i == j:
                    continue
                if load[i][triad[j]] != s:
                    return False
                if any(load[i][t] < s for t in paths[j]):
                    return False
        return True

    def rec(pos):
        if pos == len(order):
            return finished()
        c = order[pos]
        for i in range(3):
            assign[c] = i
            for t in watch:
                load[i][t] += counts[c][t]
            if ok_partial(i) and rec(pos + 1):
                return True
            for t in watch:
                load[i][t] -= counts[c][t]
        assign[c] = None
        return False

    if not rec(0):
        return None
    parts = tuple(frozenset().union(*(comps[c] for c in range(len(comps)) if assign[c] == i))
                  for i in range(3))
    return SeparableTriadCertificate(triad, center, X, parts,
                                     separability_table(td, triad, center, parts))


def find_separable_triads(td, cap=18, radius=None):
    """All W-separable triads; triads above the cap come back as Inconclusive."""
    out = []
    for triad, center in enumerate_triads(td, radius):
        res = _separate(td, triad, center, cap)
        if res is not None:
            out.append(res)
    return out


def w7_violated_by(td, cert):
    t = cert.center
    return all(not ((td.bags[ti] & td.bags[t]) - cert.X) for ti in cert.triad)


def check_w7(td, cap=18, radius=None):
    """W7. Witness is the first violating triad certificate (as a dict)."""
    unsure = []
    for res in find_separable_triads(td, cap, radius):
        if isinstance(res, Inconclusive):
            unsure.append(res)
        elif w7_violated_by(td, res):
            return PropertyStatus(False, res.to_dict())
    if unsure:
        return PropertyStatus(None, {"inconclusive": [list(u.triad) for u in unsure]})
    return PropertyStatus(True)


def violating_triads(td, cap=18, radius=None):
    return [c for c in find_separable_triads(td, cap, radius)
            if isinstance(c, SeparableTriadCertificate) and w7_violated_by(td, c)]


def check_all(td, cap=18, radius=None):
    rep = check_w456(td)
    rep.statuses = {"W3": check_linked(td), **rep.statuses, "W7": check_w7(td, cap, radius)}
    return rep
