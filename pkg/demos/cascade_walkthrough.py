"""Cascade pipeline on a cycle decomposed along a binary tree: find an
injective cascade, order it, regularize, tame, and extract a family minor."""

import argparse

from artifact.cascade import find_injective_cascade, order_cascade, regularize, tame
from artifact.families import extract_minor_from_cascade
from artifact.fixtures import cascade_cycle, tripod_cascade


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--h", type=int, default=2, help="cascade height")
    ap.add_argument("--fixture", choices=["cycle", "tripod-A", "tripod-B"], default="cycle")
    args = ap.parse_args()

    if args.fixture == "cycle":
        td, _ = cascade_cycle(args.h, chords=True)
    else:
        td, _ = tripod_cascade(args.h, args.fixture[-1])
    print(f"graph: {td.graph.n} vertices, {td.graph.m} edges; tree: {td.tree.n} nodes")

    c = find_injective_cascade(td, args.h).cascade
    print(f"injective cascade: size {c.s}, |I| = {len(c.I)}")
    c = order_cascade(c)
    for t0 in c.pattern.majors():
        conf = c.confinement[t0].to_dict()
        print(f"  major {t0}: confinement {conf}")

    reg = regularize(c, 1)
    print("regular subcascade of height 1:", reg.gamma)

    res = tame(c, 1)
    if res is None:
        print("no tame subcascade")
        return
    print(f"tame: property {res.tag} for indices ({res.i}, {res.j}), gamma {res.gamma}")
    e = extract_minor_from_cascade(res.cascade, res.tag)
    print(f"extracted {e.family.name}_{e.k} model:")
    for u in sorted(e.model.nodes):
        print(f"  {u}: {sorted(e.model.nodes[u])}")


if __name__ == "__main__":
    main()
