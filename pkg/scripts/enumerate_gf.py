"""Enumerate inner coaction classes over a small prime field and summarise them.

    python3 scripts/enumerate_gf.py --p 3 --n 1 --alpha 1 --beta 1
"""

import argparse
import json
from collections import Counter

from cliffco.clifford import algebra_new
from cliffco.inner import enumerate_coactions
from cliffco.scalars import prime_field


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--n", type=int, default=1)
    ap.add_argument("--alpha", type=int, default=1)
    ap.add_argument("--beta", type=int, nargs="*", default=None)
    ap.add_argument("--gamma", type=int, nargs="*", default=None)
    ap.add_argument("--full", action="store_true", help="print every class, not just the summary")
    args = ap.parse_args()
    beta = args.beta if args.beta is not None else [1] * args.n
    A = algebra_new(prime_field(args.p), args.n, args.alpha, beta, args.gamma)
    classes = enumerate_coactions(A)
    by_c = Counter((k.tuple.twisted, tuple(sorted(k.tuple.c.to_json().items()))) for k in classes)
    out = {
        "algebra": A.params_json(),
        "count": len(classes),
        "all_verified": all(k.verified for k in classes),
        "classes_per_c": [{"twisted": tw, "c": dict(c), "count": m} for (tw, c), m in sorted(by_c.items())],
    }
    if args.full:
        out["classes"] = [k.to_json() for k in classes]
    print(json.dumps(out, indent=2))


if __name__ == "__main__":
    main()
