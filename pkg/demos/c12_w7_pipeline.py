"""Find the W7 violation in the branching decomposition of C_12 and remove it."""

import argparse
import json

from artifact.fixtures import branching_c12
from artifact.minimizer import compare_size, minimize, surgery_w7
from artifact.wprops import check_all, violating_triads


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--json", action="store_true", help="print the full property report")
    args = ap.parse_args()

    td, ends = branching_c12()
    rep = check_all(td)
    print("arm ends:", ends)
    for name, st in rep.statuses.items():
        print(f"  {name}: {'holds' if st.holds else 'fails'}")
    if args.json:
        print(rep.to_json(indent=2))

    (cert,) = violating_triads(td)
    print("separable triad parts:", [sorted(p) for p in cert.parts])
    out = surgery_w7(td, cert)
    print("after surgery_w7:", out.comparison.value, "| violations left:",
          len(violating_triads(out.td)))

    res = minimize(td)
    print(f"minimize: {len(res.log)} steps, fixpoint={res.fixpoint},",
          "size vs input:", compare_size(res.td, td).value)
    for entry in res.log:
        print("  ", json.dumps({k: entry[k] for k in ("step", "kind")}))


if __name__ == "__main__":
    main()
