"""E(n)-coactions and E(n)^cop-actions on a Clifford-type algebra.

Conventions (basis indices of A are ``a``, of E(n) are ``e``):

* a coaction is stored as a ``(dimA*dimE) x dimA`` matrix, row ``a'*dimE + e``,
  column ``a`` holding the coefficient of ``b_a' (x) h_e`` in ``rho(b_a)``;
* an action is stored as a ``dimA x (dimE*dimA)`` matrix, column ``e*dimA + a``
  holding ``mu(h_e (x) b_a)``.

The maps between them are

    U: rho(m)  = sum_i mu(phi^-1(h_i*) (x) m) (x) h_i
    V: mu(h (x) m) = sum phi(h)(m_1) m_0
    Phi: phi = mu(g (x) -), d_i = mu(x_i (x) -)
    Psi: mu(g^j x_P (x) a) = phi^j d_i1 .. d_is (a)
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

from . import linalg
from .clifford import CliffordAlgebra, CliffordElement, LinearOperator, mask_indices, popcount
from .en_hopf import EnDescriptor, phi_basis, phi_inv_basis
from .errors import BadIndex, InvalidAction, InvalidCoaction, InvalidTuple
from .report import Report
from .scalars import FieldElement
from .tensor import TensorElement


# -- data types ---------------------------------------------------------------

@dataclass(frozen=True)
class Coaction:
    algebra: CliffordAlgebra
    en: EnDescriptor
    matrix: tuple

    @classmethod
    def from_images(cls, alg: CliffordAlgebra, E: EnDescriptor, images: Sequence[TensorElement]) -> Coaction:
        """Build from ``rho(b_a)`` for every basis index ``a``."""
        F = alg.field
        dE = E.dim
        rows = [[F.zero()] * alg.dim for _ in range(alg.dim * dE)]
        for a, t in enumerate(images):
            for (ai, ei), c in t.coeffs.items():
                rows[ai * dE + ei][a] = c
        return cls(alg, E, tuple(tuple(r) for r in rows))

    @cached_property
    def images(self) -> list[TensorElement]:
        dE = self.en.dim
        F = self.algebra.field
        out = []
        for a in range(self.algebra.dim):
            coeffs = {}
            for r, row in enumerate(self.matrix):
                if not F.is_zero(row[a]):
                    coeffs[divmod(r, dE)] = row[a]
            out.append(TensorElement((self.algebra, self.en.algebra), coeffs))
        return out

    def terms(self, a: int) -> dict:
        return self.images[a].coeffs

    def __call__(self, x: CliffordElement) -> TensorElement:
        F = self.algebra.field
        out = TensorElement.zero((self.algebra, self.en.algebra))
        for a, c in enumerate(x.vec):
            if not F.is_zero(c):
                out = out + self.images[a].scale(FieldElement(F, c))
        return out

    def to_json(self) -> dict:
        return {"rho": {self.algebra.label_str(a): t.to_json() for a, t in enumerate(self.images)}}

    @classmethod
    def from_json(cls, alg: CliffordAlgebra, E: EnDescriptor, obj: Mapping) -> Coaction:
        if set(obj) != {"rho"}:
            raise InvalidCoaction("coaction JSON must have exactly the key 'rho'")
        from .clifford import parse_label

        images = [TensorElement.zero((alg, E.algebra)) for _ in range(alg.dim)]
        for lab, tj in obj["rho"].items():
            a = alg.index(*parse_label(lab, alg.n))
            images[a] = images[a] + TensorElement.from_json((alg, E.algebra), tj)
        return cls.from_images(alg, E, images)


@dataclass(frozen=True)
class Action:
    algebra: CliffordAlgebra
    en: EnDescriptor
    matrix: tuple

    def apply_basis(self, e: int, x: CliffordElement) -> CliffordElement:
        F = self.algebra.field
        dA = self.algebra.dim
        off = e * dA
        vec = []
        for row in self.matrix:
            acc = F.zero()
            for a, c in enumerate(x.vec):
                m = row[off + a]
                if not F.is_zero(c) and not F.is_zero(m):
                    acc = F.add(acc, F.mul(m, c))
            vec.append(acc)
        return CliffordElement(self.algebra, tuple(vec))

    def __call__(self, h: CliffordElement, x: CliffordElement) -> CliffordElement:
        F = self.algebra.field
        out = self.algebra.zero()
        for e, c in enumerate(h.vec):
            if not F.is_zero(c):
                out = out + self.apply_basis(e, x).scale(FieldElement(F, c))
        return out

    def operator(self, e: int) -> LinearOperator:
        dA = self.algebra.dim
        return LinearOperator(self.algebra, tuple(tuple(r[e * dA:(e + 1) * dA]) for r in self.matrix))

    @classmethod
    def from_operators(cls, alg: CliffordAlgebra, E: EnDescriptor, ops: Sequence[LinearOperator]) -> Action:
        rows = [[x for op in ops for x in op.matrix[r]] for r in range(alg.dim)]
        return cls(alg, E, tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class CoactionTuple:
    """``(phi, d_1..d_n)``; ``n`` here is the rank of the acting E(n)."""

    phi: LinearOperator
    ds: tuple

    @property
    def algebra(self) -> CliffordAlgebra:
        return self.phi.algebra

    @property
    def n(self) -> int:
        return len(self.ds)

    def d_word(self, mask: int, x: CliffordElement) -> CliffordElement:
        """``d_P(x) = d_i1(d_i2(.. d_is(x)))`` for ``P = {i1 < .. < is}``."""
        for i in reversed(mask_indices(mask)):
            x = self.ds[i - 1](x)
        return x

    def to_json(self) -> dict:
        return {"phi": self.phi.to_json(), "d": [d.to_json() for d in self.ds]}

    @classmethod
    def from_json(cls, alg: CliffordAlgebra, obj: Mapping) -> CoactionTuple:
        if set(obj) != {"phi", "d"}:
            raise InvalidTuple("tuple JSON must have exactly the keys 'phi' and 'd'")
        try:
            phi = LinearOperator.from_matrix(alg, obj["phi"])
            ds = tuple(LinearOperator.from_matrix(alg, m) for m in obj["d"])
        except BadIndex as exc:
            raise InvalidTuple(str(exc)) from exc
        return cls(phi, ds)

    def key(self) -> tuple:
        return (self.phi.matrix,) + tuple(d.matrix for d in self.ds)


# -- constructors -------------------------------------------------------------

def trivial_coaction(alg: CliffordAlgebra, E: EnDescriptor) -> Coaction:
    """``a -> a (x) 1``."""
    return Coaction.from_images(alg, E, [TensorElement.pure(b, E.algebra.one()) for b in alg.basis_elements()])


def counit_action(alg: CliffordAlgebra, E: EnDescriptor) -> Action:
    """``mu(h (x) a) = eps(h) a``."""
    F = alg.field
    ops = [LinearOperator.identity(alg) if not F.is_zero(E.counit_basis(e)) else LinearOperator.zero(alg)
           for e in range(E.dim)]
    return Action.from_operators(alg, E, ops)


def canonical_coaction(alg: CliffordAlgebra) -> Coaction:
    """``rho(G) = G (x) g``, ``rho(X_i) = X_i (x) g + 1 (x) x_i``, extended multiplicatively."""
    E = EnDescriptor(alg.field, alg.n)
    H = E.algebra
    gens = [TensorElement.pure(alg.G, H.G)]
    for i in range(1, alg.n + 1):
        gens.append(TensorElement.pure(alg.X(i), H.G) + TensorElement.pure(alg.one(), H.X(i)))
    one = TensorElement.pure(alg.one(), H.one())
    images = []
    for idx in range(alg.dim):
        t = one
        for g in alg.word(idx):
            t = t * gens[g]
        images.append(t)
    return Coaction.from_images(alg, E, images)


def _lin(images: Sequence, x: CliffordElement, zero):
    F = x.field
    out = zero
    for k, c in enumerate(x.vec):
        if not F.is_zero(c):
            out = out + images[k].scale(FieldElement(F, c))
    return out


# -- verifiers ----------------------------------------------------------------

def verify_comodule_algebra(rho: Coaction) -> Report:
    alg, E = rho.algebra, rho.en
    H = E.algebra
    F = alg.field
    lab = alg.label_str
    rep = Report()
    imgs = rho.images
    zero = TensorElement.zero((alg, H))

    if imgs[0] != TensorElement.pure(alg.one(), H.one()):
        return rep.fail("unit", [lab(0)], f"rho(1) = {imgs[0]}")
    rep.passed("unit")

    for a in range(alg.dim):
        back = imgs[a].contract_leg(1, E.counit_basis).to_element()
        if back != alg.basis(a):
            return rep.fail("counit", [lab(a)], f"(id (x) eps) rho = {back}")
    rep.passed("counit")

    comul = E.comul_table
    for a in range(alg.dim):
        lhs = imgs[a].expand_leg(0, rho.terms, (alg, H))
        rhs = imgs[a].expand_leg(1, lambda e: comul[e], (H, H))
        if lhs != rhs:
            return rep.fail("coassociativity", [lab(a)])
    rep.passed("coassociativity")

    basis = alg.basis_elements()
    for a in range(alg.dim):
        for b in range(alg.dim):
            prod = zero
            for k, c in alg.table[a][b]:
                prod = prod + imgs[k].scale(FieldElement(F, c))
            if prod != imgs[a] * imgs[b]:
                return rep.fail("multiplicativity", [lab(a), lab(b)])
    rep.passed("multiplicativity")
    return rep


def verify_module_algebra(mu: Action) -> Report:
    """Module axioms plus measuring over ``E(n)^cop``: ``mu(h (x) ab) = sum mu(h_2 (x) a) mu(h_1 (x) b)``."""
    alg, E = mu.algebra, mu.en
    H = E.algebra
    F = alg.field
    rep = Report()
    la, le = alg.label_str, H.label_str
    basis = alg.basis_elements()
    # act[e][a] = mu(h_e (x) b_a)
    act = [[mu.apply_basis(e, b) for b in basis] for e in range(E.dim)]

    def act_lin(e, x):
        return _lin(act[e], x, alg.zero())

    for a in range(alg.dim):
        if act[0][a] != basis[a]:
            return rep.fail("unit", ["1", la(a)])
    for e in range(E.dim):
        if act[e][0] != alg.scalar(FieldElement(F, E.counit_basis(e))):
            return rep.fail("unit", [le(e), "1"], f"mu(h (x) 1) = {act[e][0]}")
    rep.passed("unit")

    hbasis = H.basis_elements()
    for e2 in range(E.dim):
        for e1 in range(E.dim):
            prod = hbasis[e2] * hbasis[e1]
            for a in range(alg.dim):
                lhs = act_lin(e2, act[e1][a])
                rhs = alg.zero()
                for k, c in enumerate(prod.vec):
                    if not F.is_zero(c):
                        rhs = rhs + act[k][a].scale(FieldElement(F, c))
                if lhs != rhs:
                    return rep.fail("associativity", [le(e2), le(e1), la(a)])
    rep.passed("associativity")

    for e in range(E.dim):
        terms = E.comul_table[e]
        for a in range(alg.dim):
            for b in range(alg.dim):
                lhs = act_lin(e, basis[a] * basis[b])
                rhs = alg.zero()
                for (e1, e2), s in terms.items():
                    rhs = rhs + (act[e2][a] * act[e1][b]).scale(FieldElement(F, s))
                if lhs != rhs:
                    return rep.fail("measuring", [le(e), la(a), la(b)])
    rep.passed("measuring")
    return rep


def _on_product(alg: CliffordAlgebra, images: Sequence[CliffordElement], a: int, b: int) -> tuple:
    """``f(b_a b_b)`` for a linear ``f`` known on the basis, via the sparse structure table."""
    F = alg.field
    acc = [F.zero()] * alg.dim
    for k, c in alg.table[a][b]:
        for i, v in enumerate(images[k].vec):
            if not F.is_zero(v):
                acc[i] = F.add(acc[i], F.mul(c, v))
    return tuple(acc)


def verify_tuple(t: CoactionTuple) -> Report:
    alg = t.algebra
    F = alg.field
    lab = alg.label_str
    rep = Report()
    basis = alg.basis_elements()
    phi = t.phi
    if any(d.algebra != alg for d in t.ds):
        return rep.fail("same algebra", [], "operators act on different algebras")
    pimg = [phi(b) for b in basis]
    if pimg[0] != alg.one():
        return rep.fail("phi unital", [lab(0)])
    for a in range(alg.dim):
        for b in range(alg.dim):
            if _on_product(alg, pimg, a, b) != (pimg[a] * pimg[b]).vec:
                return rep.fail("phi multiplicative", [lab(a), lab(b)])
    rep.passed("phi algebra map")
    for i, d in enumerate(t.ds, 1):
        dimg = [d(b) for b in basis]
        for a in range(alg.dim):
            for b in range(alg.dim):
                rhs = dimg[a] * basis[b] + pimg[a] * dimg[b]
                if _on_product(alg, dimg, a, b) != rhs.vec:
                    return rep.fail(f"d{i} phi-derivation", [lab(a), lab(b)])
    rep.passed("phi-derivations")
    ident = LinearOperator.identity(alg)
    if phi @ phi != ident:
        return rep.fail("phi^2 = id", [])
    rep.passed("phi^2 = id")
    for i, d in enumerate(t.ds, 1):
        if not (d @ d).is_zero():
            return rep.fail(f"d{i}^2 = 0", [])
        if not ((phi @ d) + (d @ phi)).is_zero():
            return rep.fail(f"phi d{i} = -d{i} phi", [])
    rep.passed("d_i^2 = 0")
    rep.passed("phi d_i = -d_i phi")
    for i in range(t.n):
        for j in range(i + 1, t.n):
            di, dj = t.ds[i], t.ds[j]
            if not ((di @ dj) + (dj @ di)).is_zero():
                return rep.fail(f"d{i + 1} d{j + 1} = -d{j + 1} d{i + 1}", [])
    rep.passed("d_i d_j = -d_j d_i")
    return rep


# -- the correspondences --------------------------------------------------------

def coaction_from_action(mu: Action, check: bool = True) -> Coaction:
    """U: ``rho(m) = sum_i mu(phi^-1(h_i*) (x) m) (x) h_i``."""
    if check:
        rep = verify_module_algebra(mu)
        if not rep:
            raise InvalidAction(f"not a module algebra: {rep.axiom} at {rep.witness}")
    alg, E = mu.algebra, mu.en
    F = alg.field
    pre = [phi_inv_basis(E, i) for i in range(E.dim)]
    images = []
    for a, b in enumerate(alg.basis_elements()):
        coeffs = {}
        for i in range(E.dim):
            m = mu(pre[i], b)
            for ai, c in enumerate(m.vec):
                if not F.is_zero(c):
                    coeffs[(ai, i)] = c
        images.append(TensorElement((alg, E.algebra), coeffs))
    return Coaction.from_images(alg, E, images)


def action_from_coaction(rho: Coaction, check: bool = True) -> Action:
    """V: ``mu(h (x) m) = sum phi(h)(m_1) m_0``."""
    if check:
        rep = verify_comodule_algebra(rho)
        if not rep:
            raise InvalidCoaction(f"not a comodule algebra: {rep.axiom} at {rep.witness}")
    alg, E = rho.algebra, rho.en
    F = alg.field
    dA = alg.dim
    phis = [phi_basis(E, e).vec for e in range(E.dim)]
    rows = [[F.zero()] * (E.dim * dA) for _ in range(dA)]
    for a in range(dA):
        for (ai, ei), c in rho.terms(a).items():
            for e in range(E.dim):
                p = phis[e][ei]
                if not F.is_zero(p):
                    col = e * dA + a
                    rows[ai][col] = F.add(rows[ai][col], F.mul(p, c))
    return Action(alg, E, tuple(tuple(r) for r in rows))


def tuple_from_action(mu: Action, check: bool = True) -> CoactionTuple:
    """Phi: read off ``phi = mu(g (x) -)`` and ``d_i = mu(x_i (x) -)``."""
    if check:
        rep = verify_module_algebra(mu)
        if not rep:
            raise InvalidAction(f"not a module algebra: {rep.axiom} at {rep.witness}")
    E = mu.en
    phi = mu.operator(E.index(1, 0))
    ds = tuple(mu.operator(E.index(0, 1 << (i - 1))) for i in range(1, E.n + 1))
    return CoactionTuple(phi, ds)


def action_from_tuple(t: CoactionTuple, check: bool = True) -> Action:
    """Psi: ``mu(g^j x_P (x) a) = phi^j(d_P(a))``."""
    if check:
        rep = verify_tuple(t)
        if not rep:
            raise InvalidTuple(f"invalid tuple: {rep.axiom} at {rep.witness}")
    alg = t.algebra
    E = EnDescriptor(alg.field, t.n)
    ops = []
    for e in range(E.dim):
        j, P = E.label(e)

        def op(x, j=j, P=P):
            y = t.d_word(P, x)
            return t.phi(y) if j else y

        ops.append(LinearOperator.from_function(alg, op))
    return Action.from_operators(alg, E, ops)


def coaction_from_tuple(t: CoactionTuple, check: bool = True) -> Coaction:
    """Closed formula:

    rho(a) = sum_P (-1)^floor((|P|+1)/2) [ d_P(a) (x) (x_P + (-1)^|P| g x_P)/2
                                         + phi(d_P(a)) (x) (x_P + (-1)^(|P|+1) g x_P)/2 ]
    """
    if check:
        rep = verify_tuple(t)
        if not rep:
            raise InvalidTuple(f"invalid tuple: {rep.axiom} at {rep.witness}")
    alg = t.algebra
    F = alg.field
    E = EnDescriptor(F, t.n)
    H = E.algebra
    h = FieldElement(F, F.half())
    images = []
    for b in alg.basis_elements():
        acc = TensorElement.zero((alg, H))
        for P in range(1 << t.n):
            k = popcount(P)
            dp = t.d_word(P, b)
            if dp.is_zero():
                continue
            xP, gxP = H.basis(E.index(0, P)), H.basis(E.index(1, P))
            plus = (xP + gxP).scale(h)
            minus = (xP - gxP).scale(h)
            first, second = (plus, minus) if k % 2 == 0 else (minus, plus)
            term = TensorElement.pure(dp, first) + TensorElement.pure(t.phi(dp), second)
            acc = acc - term if ((k + 1) // 2) % 2 else acc + term
        images.append(acc)
    return Coaction.from_images(alg, E, images)


# -- coinvariants ---------------------------------------------------------------

def coinvariants_nullspace(rho: Coaction) -> list[CliffordElement]:
    """``{a : rho(a) = a (x) 1}`` as a nullspace."""
    alg, E = rho.algebra, rho.en
    F = alg.field
    dE = E.dim
    M = [list(r) for r in rho.matrix]
    for a in range(alg.dim):
        r = a * dE + 0
        M[r][a] = F.sub(M[r][a], F.one())
    return [CliffordElement(alg, tuple(v)) for v in linalg.nullspace(F, M, alg.dim)]


def coinvariants_kernels(t: CoactionTuple) -> list[CliffordElement]:
    """``ker(phi - id)`` intersected with every ``ker d_i``."""
    alg = t.algebra
    F = alg.field
    ident = LinearOperator.identity(alg)
    rows = [list(r) for r in (t.phi - ident).matrix]
    for d in t.ds:
        rows.extend(list(r) for r in d.matrix)
    return [CliffordElement(alg, tuple(v)) for v in linalg.nullspace(F, rows, alg.dim)]


def same_subspace(xs: Sequence[CliffordElement], ys: Sequence[CliffordElement], dim: int, F) -> bool:
    bx = linalg.span_basis(F, [list(x.vec) for x in xs], dim)
    by = linalg.span_basis(F, [list(y.vec) for y in ys], dim)
    return bx == by


def coinvariants(rho: Coaction) -> list[CliffordElement]:
    """Coinvariant subalgebra; the nullspace answer is cross-checked against the kernel formula."""
    direct = coinvariants_nullspace(rho)
    t = tuple_from_action(action_from_coaction(rho, check=False), check=False)
    other = coinvariants_kernels(t)
    if not same_subspace(direct, other, rho.algebra.dim, rho.algebra.field):
        raise AssertionError("coinvariants: nullspace and kernel formula disagree")
    return direct
