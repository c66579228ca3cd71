"""Hopf axioms of E(n) and the self-duality check for phi and the naive map psi, side by side.

    python3 scripts/hopf_duality.py --max-n 3 --fields Q GF(5) GF(7)
"""

import argparse
import time

from cliffco.en_hopf import psi_basis, verify_duality_iso, verify_hopf
from cliffco.scalars import parse_field


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=3)
    ap.add_argument("--fields", nargs="+", default=["Q", "GF(5)"])
    args = ap.parse_args()
    print(f"{'field':8} {'n':>2}  {'hopf':6} {'phi':6} psi")
    bad = False
    for name in args.fields:
        F = parse_field(name)
        for n in range(args.max_n + 1):
            t0 = time.perf_counter()
            h = verify_hopf(F, n)
            p = verify_duality_iso(F, n)
            q = verify_duality_iso(F, n, psi_basis)
            bad |= not (h.ok and p.ok)
            psi = "ok" if q.ok else f"fails {q.axiom} at {q.witness}"
            print(f"{name:8} {n:>2}  {'ok' if h.ok else 'FAIL':6} {'ok' if p.ok else 'FAIL':6} {psi}"
                  f"  ({time.perf_counter() - t0:.2f} s)")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
