"""Coactions coming from elements: ``phi = c^-1 (.) c`` (optionally twisted by sigma) and inner skew-derivations.

For an invertible ``c`` and elements ``u_1..u_n``:

    untwisted:  phi(a) = c^-1 a c,          d_i(a) = u_i a - phi(a) u_i
    twisted:    phi(a) = sigma(c^-1 a c),   d_i(a) = u_i a - phi(a) u_i   (n even)

The twisted branch only exists when n is even; there the pseudoscalar ``z`` is
central and ``A = A_0 (+) A_0 z``.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .clifford import (
    CliffordAlgebra,
    CliffordElement,
    LinearOperator,
    center,
    grade_involution,
    in_span,
    is_invertible,
    pseudoscalar,
    try_invert,
)
from .comodule import Coaction, CoactionTuple, coaction_from_tuple, verify_comodule_algebra, verify_tuple
from .en_hopf import EnDescriptor
from .errors import (
    DeltaNotSquare,
    FlagMismatch,
    InvalidTuple,
    NotAutomorphism,
    NotEven,
    NotInvertible,
    NotSemisimple,
    TooLarge,
)
from .quadratic import delta, is_semisimple
from .report import Report
from .scalars import FieldElement


@dataclass(frozen=True)
class InnerTuple:
    c: CliffordElement
    us: tuple
    twisted: bool = False

    @property
    def algebra(self) -> CliffordAlgebra:
        return self.c.algebra

    def to_json(self) -> dict:
        return {"c": self.c.to_json(), "u": [u.to_json() for u in self.us], "twisted": self.twisted}

    @classmethod
    def from_json(cls, alg: CliffordAlgebra, obj) -> InnerTuple:
        extra = set(obj) - {"c", "u", "twisted"}
        if extra or "c" not in obj:
            raise InvalidTuple(f"inner tuple JSON needs 'c', 'u', 'twisted' (unexpected: {sorted(extra)})")
        us = tuple(alg.from_json(u) for u in obj.get("u", []))
        return cls(alg.from_json(obj["c"]), us, bool(obj.get("twisted", False)))


def phi_inner(c: CliffordElement) -> LinearOperator:
    """``a -> c^-1 a c``."""
    ci = try_invert(c)
    return LinearOperator.from_function(c.algebra, lambda a: ci * a * c)


def _phi_of(t: InnerTuple) -> LinearOperator:
    ci = try_invert(t.c)
    c = t.c
    if t.twisted:
        return LinearOperator.from_function(t.algebra, lambda a: grade_involution(ci * a * c))
    return LinearOperator.from_function(t.algebra, lambda a: ci * a * c)


def d_inner(t: InnerTuple, i: int) -> LinearOperator:
    """``d_i(a) = u_i a - phi(a) u_i`` with ``phi`` the (possibly twisted) conjugation; ``i`` is 1-based."""
    phi = _phi_of(t)
    u = t.us[i - 1]
    return LinearOperator.from_function(t.algebra, lambda a: u * a - phi(a) * u)


def derived_tuple(t: InnerTuple) -> CoactionTuple:
    phi = _phi_of(t)
    ds = tuple(LinearOperator.from_function(t.algebra, lambda a, u=u: u * a - phi(a) * u) for u in t.us)
    return CoactionTuple(phi, ds)


def check_inner_tuple(t: InnerTuple, zbasis: Sequence[CliffordElement] | None = None) -> Report:
    """The element conditions, followed by a full check of the derived operator tuple."""
    alg = t.algebra
    rep = Report()
    if t.twisted and alg.n % 2:
        return rep.fail("twisted branch needs even n", [])
    ci = try_invert(t.c)  # NotInvertible propagates
    Z = list(zbasis) if zbasis is not None else center(alg)
    c = t.c
    if t.twisted:
        if not in_span(Z, c * grade_involution(c)):
            return rep.fail("c sigma(c) central", ["c"])
        rep.passed("c sigma(c) central")
    else:
        if not in_span(Z, c * c):
            return rep.fail("c^2 central", ["c"])
        rep.passed("c^2 central")
    for i, u in enumerate(t.us, 1):
        other = c * grade_involution(u) if t.twisted else c * u
        if not (u * c + other).is_zero():
            return rep.fail("anticommutes with c", [f"u{i}"])
        if not in_span(Z, u * u):
            return rep.fail("u^2 central", [f"u{i}"])
    rep.passed("anticommutes with c")
    rep.passed("u^2 central")
    for i in range(len(t.us)):
        for j in range(i + 1, len(t.us)):
            ui, uj = t.us[i], t.us[j]
            if not in_span(Z, ui * uj + uj * ui):
                return rep.fail("u_i u_j + u_j u_i central", [f"u{i + 1}", f"u{j + 1}"])
    rep.passed("u_i u_j + u_j u_i central")
    inner = verify_tuple(derived_tuple(t))
    if not inner:
        return rep.fail("derived tuple: " + (inner.axiom or ""), inner.witness or [], inner.detail)
    rep.passed("derived tuple")
    del ci
    return rep


def tuple_to_coaction(t: InnerTuple) -> Coaction:
    rep = check_inner_tuple(t)
    if not rep:
        raise InvalidTuple(f"inner tuple fails {rep.axiom}")
    return coaction_from_tuple(derived_tuple(t), check=False)


# -- Skolem-Noether by linear algebra -------------------------------------------

def is_automorphism(phi: LinearOperator) -> bool:
    alg = phi.algebra
    F = alg.field
    basis = alg.basis_elements()
    imgs = [phi(b) for b in basis]
    if imgs[0] != alg.one():
        return False
    if linalg.rank(F, [list(r) for r in phi.matrix]) != alg.dim:
        return False
    for a in range(alg.dim):
        for b in range(alg.dim):
            if phi(basis[a] * basis[b]) != imgs[a] * imgs[b]:
                return False
    return True


def _candidates(F, k: int, limit: int):
    """Deterministic coefficient vectors for a ``k``-dimensional solution space."""
    for i in range(k):
        v = [0] * k
        v[i] = 1
        yield v
    if F.is_finite:
        vals = list(range(F.characteristic)) if F.order == F.characteristic else None
    else:
        vals = None
    if vals is None:
        bound = max(3, k + 1)
        vals = list(range(-bound, bound + 1))
    count = 0
    for v in itertools.product(vals, repeat=k):
        count += 1
        if count > limit:
            return
        yield list(v)


def solve_inner(phi: LinearOperator, limit: int = 20000) -> CliffordElement | None:
    """An invertible ``c`` with ``phi(a) = c^-1 a c``, or ``None``.

    Solves ``c phi(b) = b c`` for every basis ``b`` and scans the solution
    space deterministically (basis vectors first) for an invertible member.
    """
    alg = phi.algebra
    F = alg.field
    if not is_automorphism(phi):
        raise NotAutomorphism("operator is not an algebra automorphism")
    from .clifford import left_matrix, right_matrix

    rows = []
    for b in alg.basis_elements():
        R = right_matrix(phi(b))
        L = left_matrix(b)
        for rr, lr in zip(R, L):
            rows.append([F.sub(x, y) for x, y in zip(rr, lr)])
    sol = linalg.nullspace(F, rows, alg.dim)
    if not sol:
        return None
    k = len(sol)
    for coeffs in _candidates(F, k, limit):
        vec = [F.zero()] * alg.dim
        for a, v in zip(coeffs, sol):
            if a:
                ra = F.from_int(a)
                vec = [F.add(x, F.mul(ra, y)) for x, y in zip(vec, v)]
        c = CliffordElement(alg, tuple(vec))
        if not c.is_zero() and is_invertible(c):
            return c
    return None


def inner_from_operator_tuple(t: CoactionTuple) -> InnerTuple | None:
    """Recover ``(c, u)`` from ``(phi, d)``: ``u_i = d_i(c) c^-1 / 2`` or, twisted, ``u_i = d_i(z) z^-1 / 2``."""
    alg = t.algebra
    F = alg.field
    half = FieldElement(F, F.half())
    c = solve_inner(t.phi)
    if c is not None:
        ci = try_invert(c)
        us = tuple((d(c) * ci).scale(half) for d in t.ds)
        cand = InnerTuple(c, us, False)
    elif alg.n % 2 == 0:
        sig = LinearOperator.from_function(alg, grade_involution)
        c = solve_inner(sig @ t.phi)
        if c is None:
            return None
        z = pseudoscalar(alg)
        zi = try_invert(z)
        us = tuple((d(z) * zi).scale(half) for d in t.ds)
        cand = InnerTuple(c, us, True)
    else:
        return None
    if derived_tuple(cand).key() != t.key():
        return None
    return cand


# -- equivalence ----------------------------------------------------------------

def tuples_equivalent(t1: InnerTuple, t2: InnerTuple, zbasis: Sequence[CliffordElement] | None = None) -> bool:
    """``c' Z = c'' Z`` and ``u_i - v_i in c' Z`` (untwisted) or ``u_i = v_i`` (twisted)."""
    if t1.twisted != t2.twisted:
        raise FlagMismatch("cannot compare a twisted tuple with an untwisted one")
    if len(t1.us) != len(t2.us):
        return False
    Z = list(zbasis) if zbasis is not None else center(t1.algebra)
    c1, c2 = t1.c, t2.c
    if not in_span(Z, try_invert(c2) * c1):
        return False
    if t1.twisted:
        return all(u == v for u, v in zip(t1.us, t2.us))
    ci = try_invert(c1)
    return all(in_span(Z, ci * (u - v)) for u, v in zip(t1.us, t2.us))


# -- the even case ------------------------------------------------------------------

@dataclass(frozen=True)
class Splitting:
    """``A = A_0 t_1 (+) A_0 t_2``; ``forward(a_0 + b_0 z) = (a_0 + s b_0, a_0 - s b_0)`` with ``s^2 = delta``."""

    algebra: CliffordAlgebra
    z: CliffordElement
    sqrt_delta: FieldElement
    t1: CliffordElement
    t2: CliffordElement

    def even_odd_coords(self, a: CliffordElement) -> tuple[CliffordElement, CliffordElement]:
        """``a = a_0 + b_0 z`` with ``a_0, b_0`` even."""
        from .clifford import even_odd_split

        even, odd = even_odd_split(a)
        zinv = try_invert(self.z)
        return even, odd * zinv

    def forward(self, a: CliffordElement) -> tuple[CliffordElement, CliffordElement]:
        a0, b0 = self.even_odd_coords(a)
        sb = b0.scale(self.sqrt_delta)
        return a0 + sb, a0 - sb

    def backward(self, u: CliffordElement, v: CliffordElement) -> CliffordElement:
        F = self.algebra.field
        h = FieldElement(F, F.half())
        a0 = (u + v).scale(h)
        b0 = (u - v).scale(h / self.sqrt_delta)
        return a0 + b0 * self.z

    def forward_matrix(self) -> list[list]:
        """Columns: ``forward(b_a)`` as the concatenated coefficient vectors of both factors."""
        cols = []
        for b in self.algebra.basis_elements():
            u, v = self.forward(b)
            cols.append(list(u.vec) + list(v.vec))
        return linalg.transpose(cols)


def split_even(alg: CliffordAlgebra) -> Splitting:
    if alg.n % 2:
        raise NotEven("the splitting needs n even")
    if not is_semisimple(alg):
        raise NotSemisimple("the splitting needs det Q != 0")
    dl = delta(alg)
    s = dl.is_square()
    if s is None:
        raise DeltaNotSquare(f"delta = {dl} is not a square")
    z = pseudoscalar(alg)
    if z * z != alg.scalar(dl):
        raise AssertionError("pseudoscalar does not square to delta")
    F = alg.field
    h = FieldElement(F, F.half())
    zt = z.scale(h / s)
    one = alg.one()
    t1 = one.scale(h) + zt
    t2 = one.scale(h) - zt
    sp = Splitting(alg, z, s, t1, t2)
    verify_splitting(sp)
    return sp


def verify_splitting(sp: Splitting) -> Report:
    alg = sp.algebra
    one, zero = alg.one(), alg.zero()
    rep = Report()
    t1, t2 = sp.t1, sp.t2
    if t1 * t1 != t1 or t2 * t2 != t2:
        raise AssertionError("t1, t2 are not idempotent")
    if t1 * t2 != zero or t2 * t1 != zero or t1 + t2 != one:
        raise AssertionError("t1, t2 are not complementary orthogonal idempotents")
    rep.passed("idempotents")
    if sp.forward(t1) != (one, zero) or sp.forward(t2) != (zero, one):
        raise AssertionError("t1, t2 do not map to the unit vectors")
    basis = alg.basis_elements()
    fw = [sp.forward(b) for b in basis]
    for a, b in itertools.product(range(alg.dim), repeat=2):
        u, v = sp.forward(basis[a] * basis[b])
        if u != fw[a][0] * fw[b][0] or v != fw[a][1] * fw[b][1]:
            raise AssertionError(f"forward map not multiplicative at {alg.label_str(a)}, {alg.label_str(b)}")
    rep.passed("forward multiplicative")
    for i, b in enumerate(basis):
        if sp.backward(*fw[i]) != b:
            raise AssertionError("backward o forward != id")
    from .clifford import even_odd_split

    evens = [b for b in basis if even_odd_split(b)[1].is_zero()]
    for u in evens:
        for v in evens:
            for x, y in ((u, zero), (zero, v)):
                if sp.forward(sp.backward(x, y)) != (x, y):
                    raise AssertionError("forward o backward != id")
    rep.passed("mutually inverse")
    return rep


# -- enumeration over finite fields ----------------------------------------------------

@dataclass(frozen=True)
class EnumeratedClass:
    tuple: InnerTuple
    coaction: Coaction
    digest: str
    verified: bool

    def to_json(self) -> dict:
        out = self.tuple.to_json()
        out["coaction_digest"] = self.digest
        out["verified"] = self.verified
        return out


def coaction_digest(rho: Coaction) -> str:
    payload = json.dumps(rho.to_json(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()


def _all_vectors(F, dim: int):
    vals = [v for v in F.elements()]
    for v in itertools.product(vals, repeat=dim):
        yield v


def _span_elements(F, alg: CliffordAlgebra, basis_vecs: list[list]):
    """Every element of a subspace, in lexicographic order of the coefficients on its basis."""
    vals = list(F.elements())
    k = len(basis_vecs)
    for coeffs in itertools.product(vals, repeat=k):
        vec = [F.zero()] * alg.dim
        for a, v in zip(coeffs, basis_vecs):
            if not F.is_zero(a):
                vec = [F.add(x, F.mul(a, y)) for x, y in zip(vec, v)]
        yield CliffordElement(alg, tuple(vec))


def _anticommutant(alg: CliffordAlgebra, c: CliffordElement, twisted: bool) -> list[list]:
    """Basis of ``{u : u c + c sigma^tw(u) = 0}``."""
    F = alg.field
    from .clifford import left_matrix, right_matrix

    R = right_matrix(c)
    L = left_matrix(c)
    if twisted:
        S = [[F.zero()] * alg.dim for _ in range(alg.dim)]
        for i in range(alg.dim):
            S[i][i] = F.neg(F.one()) if alg.degree(i) & 1 else F.one()
        L = linalg.matmul(F, L, S)
    rows = [[F.add(x, y) for x, y in zip(r, l)] for r, l in zip(R, L)]
    return linalg.nullspace(F, rows, alg.dim)


def enumerate_coactions(alg: CliffordAlgebra, twisted: bool | None = None,
                        max_candidates: int = 200_000, max_dim: int = 16, max_p: int = 7,
                        check_equivalence: bool = True) -> list[EnumeratedClass]:
    """All inequivalent inner tuples over a finite field, each verified end to end.

    ``twisted=None`` runs both branches (the twisted one only for even n).
    Candidates ``c`` range over the whole algebra, so the search is guarded by
    ``q**dim <= max_candidates``; the ``u``-tuples scanned across all ``c`` are
    charged against the same budget.
    """
    F = alg.field
    if not F.is_finite:
        raise TooLarge("enumeration needs a finite field")
    if alg.dim > max_dim or F.order > max_p:
        raise TooLarge(f"dimension {alg.dim} or field size {F.order} exceeds the configured bounds")
    if F.order ** alg.dim > max_candidates:
        raise TooLarge(f"{F.order}^{alg.dim} candidates exceed {max_candidates}")
    if not is_semisimple(alg):
        raise NotSemisimple("the classification applies to semisimple algebras only")
    if twisted is None:
        branches = [False, True] if alg.n % 2 == 0 else [False]
    else:
        if twisted and alg.n % 2:
            raise NotEven("the twisted branch needs n even")
        branches = [twisted]
    Z = center(alg)
    n = alg.n
    classes: list[EnumeratedClass] = []
    for tw in branches:
        # pass 1: admissible c with their u-candidates, charged against the budget
        pool = []
        scanned = 0
        for cv in _all_vectors(F, alg.dim):
            c = CliffordElement(alg, cv)
            if c.is_zero() or not is_invertible(c):
                continue
            cc = c * grade_involution(c) if tw else c * c
            if not in_span(Z, cc):
                continue
            space = _anticommutant(alg, c, tw)
            good_u = [u for u in _span_elements(F, alg, space) if in_span(Z, u * u)]
            scanned += len(good_u) ** n
            if scanned > max_candidates:
                raise TooLarge(f"more than {max_candidates} (c, u) candidates")
            pool.append((c, good_u))
        # pass 2: quotient by equality of the operator tuples
        seen: dict[tuple, InnerTuple] = {}
        for c, good_u in pool:
            for us in itertools.product(good_u, repeat=n):
                if any(not in_span(Z, us[i] * us[j] + us[j] * us[i]) for i in range(n) for j in range(i + 1, n)):
                    continue
                t = InnerTuple(c, tuple(us), tw)
                key = derived_tuple(t).key()
                if key in seen:
                    if check_equivalence and not tuples_equivalent(seen[key], t, Z):
                        raise AssertionError("equal operators from inequivalent tuples")
                    continue
                seen[key] = t
        for t in seen.values():
            rho = coaction_from_tuple(derived_tuple(t), check=False)
            ok = bool(check_inner_tuple(t, Z)) and bool(verify_comodule_algebra(rho))
            classes.append(EnumeratedClass(t, rho, coaction_digest(rho), ok))
    classes.sort(key=lambda k: (k.tuple.twisted, k.tuple.c.vec, tuple(u.vec for u in k.tuple.us)))
    return classes
