"""Run the dichotomy sweep and summarise path-width against the presence of
P_k and Q_k minors."""

import argparse
from collections import Counter

from artifact.cli import dichotomy_rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=10)
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--samples", type=int, default=5)
    args = ap.parse_args()

    rows = dichotomy_rows(args.max_n, args.k, args.seed, args.samples)
    table = Counter((pw, hp, hq) for _, pw, hp, hq, _ in rows)
    print(f"{len(rows)} graphs; monotone under sampled minors: {all(r[-1] for r in rows)}")
    print(f"{'pw':>3} {'has_P':>6} {'has_Q':>6} {'count':>6}")
    for (pw, hp, hq), n in sorted(table.items(), key=lambda x: (x[0][0], str(x[0][1:]))):
        print(f"{pw:>3} {str(hp):>6} {str(hq):>6} {n:>6}")


if __name__ == "__main__":
    main()
