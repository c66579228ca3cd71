"""Acceptance criteria 1-10; each test records one PASS/FAIL line for the terminal summary."""

import itertools
import json
import random
import time
from fractions import Fraction

import sympy

from cliffco import linalg
from cliffco.cli import run
from cliffco.clifford import LinearOperator, algebra_new, try_invert
from cliffco.comodule import (
    action_from_coaction,
    action_from_tuple,
    canonical_coaction,
    coaction_from_action,
    coaction_from_tuple,
    coinvariants_nullspace,
    tuple_from_action,
    verify_comodule_algebra,
    verify_tuple,
)
from cliffco.corpus import GridConfig, RandomConfig, grid_size, parameter_grid, random_algebra
from cliffco.en_hopf import psi_basis, verify_duality_iso
from cliffco.inner import (
    InnerTuple,
    check_inner_tuple,
    derived_tuple,
    enumerate_coactions,
    split_even,
    tuple_to_coaction,
    verify_splitting,
)
from cliffco.quadratic import (
    bialgebra_admissible,
    classify_structure,
    det_q,
    is_nilpotent,
    is_semisimple,
    quotient_semisimple,
    radical,
)
from cliffco.scalars import QQ, prime_field

F3, F5, F7 = prime_field(3), prime_field(5), prime_field(7)


def _cli_ok(*argv) -> bool:
    import contextlib
    import io

    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = run(list(argv))
    return code == 0 and json.loads(buf.getvalue())["ok"]


def test_criterion_1_hopf_axioms(record_criterion):
    t0 = time.perf_counter()
    ok = all(_cli_ok("verify-hopf", "--n", str(k), "--field", f) for k in range(4) for f in ("Q", "GF(5)"))
    dt = time.perf_counter() - t0
    ok = ok and dt < 5
    record_criterion(1, ok, f"E(n) Hopf axioms, n=0..3 over Q and GF(5), exhaustive ({dt:.2f} s, bound 5 s)")
    assert ok


def test_criterion_2_self_duality(record_criterion):
    t0 = time.perf_counter()
    phi_ok = all(_cli_ok("verify-duality", "--n", str(k)) for k in (1, 2))
    flagged = [k for k in (1, 2) if not verify_duality_iso(QQ, k, psi_basis).ok]
    dt = time.perf_counter() - t0
    ok = phi_ok and bool(flagged) and dt < 5
    record_criterion(2, ok, f"phi passes for n=1,2; psi flagged for n={flagged} ({dt:.2f} s, bound 5 s)")
    assert ok


def _round_trip_corpus():
    rng = random.Random(2024)
    out = []
    for n in (1, 2):
        for _ in range(6):
            A = random_algebra(RandomConfig(n=n), rng)
            out.append(("canonical", canonical_coaction(A)))
    # tuple-generated coactions: inner tuples over GF(3) and Q
    for k in enumerate_coactions(algebra_new(F3, 1, 1, [1], [0]))[::9]:
        out.append(("inner GF(3)", coaction_from_tuple(derived_tuple(k.tuple))))
    A = algebra_new(QQ, 1, 1, [1], [0])
    for c, u in [(A.G, A.X(1)), (A.X(1).scale(3), A.G), (A.monomial(1, [1]), A.G + A.X(1))]:
        out.append(("inner Q", tuple_to_coaction(InnerTuple(c, (u,)))))
    B = algebra_new(QQ, 2, 1, [1, 1])
    out.append(("twisted Q", tuple_to_coaction(InnerTuple(B.one(), (B.G, B.zero()), twisted=True))))
    return out


def test_criterion_3_round_trips(record_criterion):
    corpus = _round_trip_corpus()
    failures = []
    for kind, rho in corpus:
        assert verify_comodule_algebra(rho).ok, kind
        mu = action_from_coaction(rho)
        t = tuple_from_action(mu)
        checks = {
            "U.V": coaction_from_action(mu) == rho,
            "V.U": action_from_coaction(coaction_from_action(mu)) == mu,
            "Psi.Phi": action_from_tuple(t) == mu,
            "Phi.Psi": tuple_from_action(action_from_tuple(t)) == t,
            "closed = U.Psi": coaction_from_tuple(t) == coaction_from_action(action_from_tuple(t)),
        }
        failures += [(kind, name) for name, good in checks.items() if not good]
    ok = len(corpus) >= 20 and not failures
    record_criterion(3, ok, f"U/V/Phi/Psi round trips exact on {len(corpus)} coactions, {len(failures)} failures")
    assert ok, failures


def test_criterion_4_canonical_coaction_grid(record_criterion):
    cfg = GridConfig()
    failures = []
    count = 0
    for A in parameter_grid(cfg):
        count += 1
        rho = canonical_coaction(A)
        if not verify_comodule_algebra(rho).ok:
            failures.append(("coaction", A))
            continue
        t = tuple_from_action(action_from_coaction(rho, check=False), check=False)
        if not verify_tuple(t).ok:
            failures.append(("tuple", A))
            continue
        if is_semisimple(A):
            co = coinvariants_nullspace(rho)
            if len(co) != 1 or co[0] != A.one():
                failures.append(("coinvariants", A))
    ok = count == grid_size(cfg) and not failures
    record_criterion(4, ok, f"canonical coaction, tuple and coinvariants on {count} grid algebras, "
                            f"{len(failures)} failures")
    assert ok, failures[:3]


def test_criterion_5_semisimple_iff_det(record_criterion):
    t0 = time.perf_counter()
    disagree = 0
    total = 0
    for A in parameter_grid(GridConfig()):
        total += 1
        if (radical(A) == []) != bool(det_q(A)) or is_semisimple(A) != bool(det_q(A)):
            disagree += 1
    # symbolic determinant for n = 1
    a, b, g = sympy.symbols("alpha beta gamma")
    expr = sympy.Matrix([[a, g / 2], [g / 2, b]]).det()
    sym_ok = sympy.simplify(expr - (a * b - g**2 / 4)) == 0
    points = 0
    for al, be, ga in itertools.product((-1, 0, 1, 2), repeat=3):
        A = algebra_new(QQ, 1, al, [be], [ga])
        if det_q(A).value != expr.subs({a: al, b: be, g: ga}):
            sym_ok = False
        points += 1
    dt = time.perf_counter() - t0
    ok = disagree == 0 and sym_ok and points >= 50 and dt < 30
    record_criterion(5, ok, f"radical empty <=> det Q != 0 on {total} algebras; det Q = ab - g^2/4 on "
                            f"{points} points ({dt:.1f} s, bound 30 s)")
    assert ok


def test_criterion_6_radical(record_criterion):
    bad = []
    checked = 0
    for A in parameter_grid(GridConfig()):
        if is_semisimple(A):
            continue
        checked += 1
        rad = radical(A)
        F = A.field
        basis = linalg.span_basis(F, [list(r.vec) for r in rad], A.dim)
        if not all(is_nilpotent(r) for r in rad):
            bad.append(("nilpotent", A))
        elif not all(linalg.in_span(F, basis, (g * r).vec) and linalg.in_span(F, basis, (r * g).vec)
                     for r in rad for g in A.generators()):
            bad.append(("ideal", A))
        else:
            q, proj = quotient_semisimple(A)
            if not (q.n < 0 or bool(det_q(q))):
                bad.append(("quotient", A))
    ok = checked > 0 and not bad
    record_criterion(6, ok, f"radical nilpotent, two-sided ideal, quotient semisimple on {checked} "
                            f"non-semisimple algebras, {len(bad)} failures")
    assert ok, bad[:3]


def test_criterion_7_inner_example(record_criterion):
    A = algebra_new(QQ, 1, 1, [1], [0])
    c = A.monomial(1, [1]).scale(2)
    u = A.G * try_invert(c)
    t = InnerTuple(c, (u,))
    ok = (u == A.X(1).scale(Fraction(-1, 2)) and check_inner_tuple(t).ok
          and tuple_to_coaction(t).matrix == canonical_coaction(A).matrix)
    record_criterion(7, ok, "c = 2GX, u = G c^-1 on Cl(1,1,0) gives exactly the canonical coaction")
    assert ok


def test_criterion_8_bialgebra(record_criterion):
    results = {
        "Cl(1,0..0) n=0..3": all(bialgebra_admissible(algebra_new(QQ, n, 1, [0] * n))[0] for n in range(4)),
        "Cl(0..0) n=0..3": all(not bialgebra_admissible(algebra_new(QQ, n, 0, [0] * n))[0] for n in range(4)),
        "Cl(2,0) over Q": not bialgebra_admissible(algebra_new(QQ, 1, 2, [0]))[0],
        "Cl(2,0) over GF(7)": bialgebra_admissible(algebra_new(F7, 1, 2, [0]))[0],
    }
    ok = all(results.values())
    record_criterion(8, ok, "; ".join(f"{k}: {'ok' if v else 'wrong'}" for k, v in results.items()))
    assert ok


def _euler_square(p, x):
    return pow(x % p, (p - 1) // 2, p) == 1


def test_criterion_9_even_splitting(record_criterion):
    B = algebra_new(F5, 2, 1, [1, 1])
    sp = split_even(B)
    one, zero = B.one(), B.zero()
    t1, t2 = sp.t1, sp.t2
    idem = t1 * t1 == t1 and t2 * t2 == t2 and t1 * t2 == zero and t2 * t1 == zero and t1 + t2 == one
    basis = B.basis_elements()
    fw = [sp.forward(b) for b in basis]
    pairs = 0
    mult = True
    for a, b in itertools.product(range(B.dim), repeat=2):
        u, v = sp.forward(basis[a] * basis[b])
        mult &= u == fw[a][0] * fw[b][0] and v == fw[a][1] * fw[b][1]
        pairs += 1
    delta_ok = str(sp.sqrt_delta ** 2) == "4" and verify_splitting(sp).ok
    # verdicts: delta = -1 is a square in GF(p) iff p = 1 mod 4 (Euler), never in Q
    expected = {
        "Q": "CentralSimpleOverQuadraticExtension",
        "GF(5)": "ProductOfTwoCSA" if _euler_square(5, -1) else "CentralSimpleOverQuadraticExtension",
        "GF(7)": "ProductOfTwoCSA" if _euler_square(7, -1) else "CentralSimpleOverQuadraticExtension",
    }
    got = {name: classify_structure(algebra_new(F, 2, 1, [1, 1])).verdict
           for name, F in (("Q", QQ), ("GF(5)", F5), ("GF(7)", F7))}
    ok = idem and mult and pairs == 64 and delta_ok and got == expected
    record_criterion(9, ok, f"splitting of Cl(1,1,1) over GF(5) on {pairs} pairs; verdicts {got}")
    assert ok


def _involution_scan(A):
    vals = list(A.field.elements())
    ident = LinearOperator.identity(A)
    basis = A.basis_elements()
    found = set()
    for m in itertools.product(vals, repeat=4):
        op = LinearOperator(A, ((m[0], m[1]), (m[2], m[3])))
        if op(A.one()) == A.one() and op @ op == ident and all(
                op(a * b) == op(a) * op(b) for a in basis for b in basis):
            found.add(op.key())
    return found


def test_criterion_10_enumeration(record_criterion):
    t0 = time.perf_counter()
    n0 = {}
    for alpha in (1, 2):
        A = algebra_new(F5, 0, alpha)
        classes = enumerate_coactions(A)
        phis = {derived_tuple(k.tuple).phi.key() for k in classes}
        n0[alpha] = len(classes) == 2 and phis == _involution_scan(A) and all(k.verified for k in classes)
    Q3 = algebra_new(F3, 1, 1, [1], [0])
    classes = enumerate_coactions(Q3)

    def is_pure(x):
        # no scalar part and x^2 a scalar
        return x.vec[0] == 0 and all(v == 0 for v in (x * x).vec[1:])

    described = True
    lines: dict = {}
    for k in classes:
        c, (u,) = k.tuple.c, k.tuple.us
        if c.vec[1:] == (0,) * 3:
            described &= u.is_zero()
        else:
            described &= is_pure(c) and (u.is_zero() or is_pure(u)) and (u * c + c * u).is_zero()
            lines[c.vec] = lines.get(c.vec, 0) + 1
    # each c pairs with every u in c^perp, a plane of 3^2 pure quaternions
    described &= all(v == 9 for v in lines.values()) and len(classes) == 1 + 9 * len(lines)
    verified = all(k.verified for k in classes)
    dt = time.perf_counter() - t0
    ok = all(n0.values()) and verified and described and dt < 60
    record_criterion(10, ok, f"n=0 over GF(5): 2 classes for alpha=1,2 matching the 625-matrix scan; "
                             f"Cl(1,1,0) over GF(3): {len(classes)} classes ({len(lines)} pure quaternion "
                             f"lines), all verified ({dt:.1f} s, bound 60 s)")
    assert ok
