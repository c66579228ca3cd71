"""Sweep the parameter grid: canonical coaction, derived tuple, coinvariants, radical vs det Q.

    python3 scripts/grid_check.py --max-n 2 --values -1 0 1 2
"""

import argparse
import json
import time

from cliffco import linalg
from cliffco.comodule import action_from_coaction, canonical_coaction, coinvariants_nullspace, tuple_from_action
from cliffco.comodule import verify_comodule_algebra, verify_tuple
from cliffco.corpus import GridConfig, grid_size, parameter_grid
from cliffco.quadratic import det_q, is_nilpotent, quotient_semisimple, radical
from cliffco.scalars import parse_field


def check(A) -> list[str]:
    problems = []
    rho = canonical_coaction(A)
    if not verify_comodule_algebra(rho).ok:
        return ["coaction"]
    t = tuple_from_action(action_from_coaction(rho, check=False), check=False)
    if not verify_tuple(t).ok:
        problems.append("tuple")
    semisimple = bool(det_q(A))
    rad = radical(A)
    if (rad == []) != semisimple:
        problems.append("radical vs det")
    if semisimple:
        co = coinvariants_nullspace(rho)
        if len(co) != 1 or co[0] != A.one():
            problems.append("coinvariants")
    else:
        F = A.field
        basis = linalg.span_basis(F, [list(r.vec) for r in rad], A.dim)
        if not all(is_nilpotent(r) for r in rad):
            problems.append("nilpotent")
        if not all(linalg.in_span(F, basis, (g * r).vec) and linalg.in_span(F, basis, (r * g).vec)
                   for r in rad for g in A.generators()):
            problems.append("ideal")
        q, _ = quotient_semisimple(A)
        if q.n >= 0 and not det_q(q):
            problems.append("quotient")
    return problems


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=2)
    ap.add_argument("--values", type=int, nargs="+", default=[-1, 0, 1, 2])
    ap.add_argument("--field", default="Q")
    args = ap.parse_args()
    cfg = GridConfig(field=parse_field(args.field), max_n=args.max_n, values=tuple(args.values))
    t0 = time.perf_counter()
    failures = []
    nonss = 0
    for A in parameter_grid(cfg):
        nonss += not det_q(A)
        probs = check(A)
        if probs:
            failures.append({"algebra": A.params_json(), "problems": probs})
    print(json.dumps({
        "algebras": grid_size(cfg),
        "non_semisimple": nonss,
        "failures": failures,
        "seconds": round(time.perf_counter() - t0, 2),
    }, indent=2))
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
