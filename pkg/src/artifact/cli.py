"""Command-line entry point.

Exit codes: 0 success, 1 bad input (parse errors report line and column),
2 the property in question fails (a witness is printed), 3 a search hit
its cap and the answer is unknown.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from pathlib import Path

from . import cascade as cas
from . import families as fam
from .decomposition import (exact_pathwidth, exact_treewidth, format_td, parse_td,
                            validate_decomposition)
from .graph import (Graph, MinorModel, ParseError, find_minor_model, format_gr, parse_gr,
                    validate_minor_model)

OK, BAD_INPUT, FAILED, INCONCLUSIVE = 0, 1, 2, 3


class Inconclusive(Exception):
    pass


class Failed(Exception):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def _read_graph(path):
    return parse_gr(Path(path).read_text())


def _read_td(args):
    g = _read_graph(args.gr)
    return parse_td(Path(args.td).read_text(), g)


def _emit(args, payload):
    text = json.dumps(payload, indent=2, sort_keys=True)
    if getattr(args, "json_out", None):
        Path(args.json_out).write_text(text + "\n")
    else:
        print(text)


def _need(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise ValueError("missing " + ", ".join("--" + n.replace("_", "-") for n in missing))


# ------------------------------------------------------------------- width

def cmd_width(args):
    _need(args, "gr")
    g = _read_graph(args.gr)
    try:
        if args.which == "tw":
            w, _ = exact_treewidth(g, args.cap_vertices or 14)
        else:
            w, _ = exact_pathwidth(g, args.cap_vertices or 12)
    except ValueError as e:
        raise Inconclusive(str(e))
    print(w)


# ---------------------------------------------------------------------- td

def cmd_td(args):
    from .minimizer import minimize
    from .wprops import check_all

    _need(args, "gr", "td")
    td = _read_td(args)
    if args.action == "validate":
        ok, bad = validate_decomposition(td)
        if not ok:
            raise Failed("invalid decomposition", {"violations": bad})
        print("valid")
    elif args.action == "props":
        ok, bad = validate_decomposition(td)
        if not ok:
            raise Failed("invalid decomposition", {"violations": bad})
        rep = check_all(td, cap=args.cap_torso)
        _emit(args, rep.to_dict())
        holds = [s.holds for s in rep.statuses.values()]
        if False in holds:
            raise Failed("property violated")
        if None in holds:
            raise Inconclusive("torso above cap")
    else:
        res = minimize(td, cap=args.cap_torso)
        sys.stdout.write(format_td(res.td))
        _emit_if(args, {"fixpoint": res.fixpoint, "steps": res.log})
        if not res.fixpoint:
            raise Inconclusive("step limit reached")


def _emit_if(args, payload):
    if getattr(args, "json_out", None):
        _emit(args, payload)


# ------------------------------------------------------------------- order

def cmd_order(args):
    from . import treeorder as to

    trees = [_read_graph(p) for p in args.trees]
    if any(not t.is_tree() for t in trees):
        raise ValueError("inputs must be trees")
    if args.action == "compare":
        if len(trees) != 2:
            raise ValueError("compare needs two trees")
        print(to.compare_trees(*trees).name)
    elif args.action == "spine":
        t = trees[0]
        _emit(args, {"spine": to.spine(t), "bridges": len(to.spine_bridges(t))})
    else:
        _need(args, "v")
        t = trees[0]
        cands = to.spine2_candidates(t, args.v)
        if not cands:
            raise Failed("hypotheses fail at this vertex")
        r3, r3p = cands[0]
        t2 = to.spine2_transform(t, args.v, r3, r3p)
        _emit(args, {"r3": r3, "r3p": r3p, "tree": to.tree_to_parents(t2),
                     "outcome": to.compare_trees(t2, t).name})


# ----------------------------------------------------------------- cascade

def _find(td, h, budget):
    res = cas.find_injective_cascade(td, h, budget=budget)
    if res.cascade is None:
        if res.status == "inconclusive":
            raise Inconclusive("cascade search cut off")
        raise Failed(f"no injective cascade of height {h}")
    return res.cascade


def cmd_cascade(args):
    _need(args, "gr", "td")
    td = _read_td(args)
    c = _find(td, args.h, args.cap_vertices or 200_000)
    if args.action == "find":
        _emit(args, c.to_dict())
        return
    try:
        c = cas.order_cascade(c)
    except ValueError as e:
        raise Failed(str(e))
    except cas.SearchCapExceeded as e:
        raise Inconclusive(str(e))
    if args.action == "order":
        _emit(args, c.to_dict())
    elif args.action == "regularize":
        res = cas.regularize(c, args.a)
        if res.cascade is None:
            raise Failed(f"no regular subcascade of height {args.a}")
        _emit(args, res.cascade.to_dict())
    else:
        res = cas.tame(c, args.a)
        if res is None:
            raise Failed(f"no tame subcascade of height {args.a}")
        out = res.cascade.to_dict()
        out.update({"i": res.i, "j": res.j, "tag": res.tag,
                    "gamma": [[t, res.gamma[t]] for t in sorted(res.gamma)]})
        _emit(args, out)


# ------------------------------------------------------------------ family

def _model_payload(e):
    return {"family": e.family.name, "k": e.k, "pattern": format_gr(e.model.pattern),
            "base": e.base, **e.model.to_json()}


def cmd_family(args):
    if args.action == "gen":
        f = fam.gen_family(args.name, args.k)
        sys.stdout.write(format_gr(f.graph))
        _emit_if(args, {"name": f.name, "k": f.k, "apices": list(f.apices),
                        "leaves": list(f.leaves), "base_edge": f.base_edge})
        return
    _need(args, "gr")
    H = _read_graph(args.gr)
    try:
        e = fam.embed_into_P(H) if args.action == "embed-p" else fam.embed_into_Q(H)
    except ValueError as ex:
        raise Failed(str(ex))
    _emit(args, _model_payload(e))


# ------------------------------------------------------------------- minor

def cmd_minor(args):
    _need(args, "gr")
    host = _read_graph(args.gr)
    if args.action == "check":
        _need(args, "pattern")
        pattern = _read_graph(args.pattern)
        if args.model:
            raw = json.loads(Path(args.model).read_text())["nodes"]
            nodes = {int(k): set(v) for k, v in raw.items()}
            ok, bad = validate_minor_model(MinorModel(pattern, host, nodes))
            if not ok:
                raise Failed("model does not validate", {"violations": bad})
            print("valid")
            return
        res = find_minor_model(host, pattern, args.cap_vertices or 2_000_000)
        if res.status == "inconclusive":
            raise Inconclusive("minor search budget exhausted")
        if not res.found:
            raise Failed("no minor")
        _emit(args, res.model.to_json())
        return
    _need(args, "td")
    td = _read_td(args)
    c = cas.order_cascade(_find(td, args.h, args.cap_vertices or 200_000))
    res = cas.tame(c, args.a)
    if res is None:
        raise Failed(f"no tame subcascade of height {args.a}")
    try:
        e = fam.extract_minor_from_cascade(res.cascade, res.tag, args.variant, res.i, res.j)
    except ValueError as ex:
        raise Failed(str(ex))
    _emit(args, _model_payload(e))


# -------------------------------------------------------------- experiment

def dichotomy_rows(max_n, k, seed, samples=5, cap=12):
    """Rows (graph6, pw, has_P, has_Q, minor_consistent) for
    every 2-connected graph up to seven vertices and seeded samples above."""
    from .corpus import graph6, random_two_connected, two_connected_graphs

    rng = random.Random(seed)
    graphs = two_connected_graphs(min(max_n, 7))
    for n in range(8, max_n + 1):
        graphs += [random_two_connected(rng, n) for _ in range(samples)]
    rows = []
    for g in graphs:
        rep = fam.dichotomy_check(g, k, cap)
        rows.append((graph6(g), rep["pathwidth"], rep["has_P"], rep["has_Q"],
                     _minor_consistent(g, rep["pathwidth"], rng, cap)))
    return rows


def _minor_consistent(g, pw, rng, cap):
    # path-width of a random one-edge deletion and contraction must not exceed pw
    if not g.edges:
        return True
    a, b = rng.choice(list(g.edges))
    deleted = g.delete_edges([(a, b)])
    keep = [v for v in g.vertices if v != b]
    contracted = Graph(keep, [(a if x == b else x, a if y == b else y) for x, y in g.edges
                              if {x, y} != {a, b} and (a if x == b else x) != (a if y == b else y)])
    return all(exact_pathwidth(h, cap)[0] <= pw for h in (deleted, contracted))


def cmd_experiment(args):
    rows = dichotomy_rows(args.max_n, args.k, args.seed, args.samples, args.cap_vertices or 12)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["graph", "pw", f"has_P{args.k}", f"has_Q{args.k}", "minor_consistent"])
    w.writerows(rows)
    sys.stdout.write(buf.getvalue())
    if not all(r[-1] for r in rows):
        raise Failed("path-width increased under a minor")
    if any(r[2] is None or r[3] is None for r in rows):
        raise Inconclusive("some minor searches were cut off")


# -------------------------------------------------------------------- main

def build_parser():
    p = argparse.ArgumentParser(prog="artifact", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--gr", help="graph in PACE .gr format")
    common.add_argument("--td", help="tree-decomposition in PACE .td format")
    common.add_argument("--json-out", help="write the JSON certificate here")
    common.add_argument("--cap-vertices", type=int, help="solver vertex cap or search budget")
    common.add_argument("--cap-torso", type=int, default=18, help="torso size cap for triads")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--k", type=int, default=2)
    common.add_argument("--max-n", type=int, default=7)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("width", parents=[common])
    s.add_argument("which", choices=["tw", "pw"])
    s.set_defaults(run=cmd_width)

    s = sub.add_parser("td", parents=[common])
    s.add_argument("action", choices=["validate", "props", "minimize"])
    s.set_defaults(run=cmd_td)

    s = sub.add_parser("order", parents=[common])
    s.add_argument("action", choices=["compare", "spine", "spine2"])
    s.add_argument("trees", nargs="+", help="trees in .gr format")
    s.add_argument("--v", type=int, help="degree-3 vertex for spine2")
    s.set_defaults(run=cmd_order)

    s = sub.add_parser("cascade", parents=[common])
    s.add_argument("action", choices=["find", "order", "regularize", "tame"])
    s.add_argument("--h", type=int, default=1, help="cascade height")
    s.add_argument("--a", type=int, default=1, help="target height")
    s.set_defaults(run=cmd_cascade)

    s = sub.add_parser("family", parents=[common])
    s.add_argument("action", choices=["gen", "embed-p", "embed-q"])
    s.add_argument("name", nargs="?", default="P", choices=fam.FAMILIES)
    s.set_defaults(run=cmd_family)

    s = sub.add_parser("minor", parents=[common])
    s.add_argument("action", choices=["check", "extract"])
    s.add_argument("--pattern", help="pattern graph in .gr format")
    s.add_argument("--model", help="JSON model to validate instead of searching")
    s.add_argument("--h", type=int, default=1, help="height of the cascade to search for")
    s.add_argument("--a", type=int, default=1, help="height of the tamed subcascade")
    s.add_argument("--variant", type=int, default=0, help="number of apices to use")
    s.set_defaults(run=cmd_minor)

    s = sub.add_parser("experiment", parents=[common])
    s.add_argument("which", choices=["dichotomy"])
    s.add_argument("--samples", type=int, default=5, help="random graphs per size above 7")
    s.set_defaults(run=cmd_experiment)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.run(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return BAD_INPUT
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return BAD_INPUT
    except Failed as e:
        print(f"fails: {e}", file=sys.stderr)
        if e.witness is not None:
            print(json.dumps(e.witness, indent=2, sort_keys=True))
        return FAILED
    except Inconclusive as e:
        print(f"inconclusive: {e}", file=sys.stderr)
        return INCONCLUSIVE
    return OK


if __name__ == "__main__":
    sys.exit(main())
