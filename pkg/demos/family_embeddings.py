"""Embed every small graph without K_4, K_23, C_32 and A minors into the
P and Q families, reporting the index k each embedding needs."""

import argparse
from collections import Counter

from artifact.corpus import atlas_graphs
from artifact.families import embed_into_P, embed_into_Q, gen_family
from artifact.graph import complete, complete_bipartite, has_minor


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=6)
    args = ap.parse_args()

    forbidden = [complete(4), complete_bipartite(2, 3), gen_family("C32").graph,
                 gen_family("A").graph]
    kp, kq = Counter(), Counter()
    total = 0
    for H in atlas_graphs(args.max_n, 1):
        if any(has_minor(H, F) for F in forbidden):
            continue
        total += 1
        kp[embed_into_P(H).k] += 1
        kq[embed_into_Q(H).k] += 1
    print(f"{total} graphs on at most {args.max_n} vertices")
    print("P index histogram:", dict(sorted(kp.items())))
    print("Q index histogram:", dict(sorted(kq.items())))


if __name__ == "__main__":
    main()
