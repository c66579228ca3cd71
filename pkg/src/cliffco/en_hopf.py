"""The Hopf algebras E(n) = Cl(1, 0, .., 0), their duals, and the self-duality map.

On the basis ``g^j x_P``:

    Delta(g^j x_P) = sum_{F <= P} (-1)^S(F,P) g^j x_F (x) g^(|F|+j) x_(P\\F)
    eps(g^j x_P)   = [P empty]
    S(g^j x_P)     = (-1)^(j|P|) g^(j+|P|) x_P

and ``phi : E(n)^cop -> E(n)*`` sends ``g^j x_P`` to
``(-1)^floor((|P|+1)/2) (x_P)* + (-1)^(floor(|P|/2)+j) (g x_P)*``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable

from . import linalg
from .clifford import CliffordAlgebra, CliffordElement, en_algebra, label_str, mask_indices, popcount
from .errors import AlgebraMismatch, NotSubset
from .report import Report
from .scalars import FieldDescriptor, FieldElement
from .tensor import TensorElement


def sign_s(F: Iterable[int], P: Iterable[int]) -> int:
    """``S(F, P) = (j_1 + .. + j_r) - r(r+1)/2`` with ``j_k`` the 1-based positions of F inside P."""
    P = sorted(P)
    F = sorted(F)
    pos = {p: k + 1 for k, p in enumerate(P)}
    if any(f not in pos for f in F):
        raise NotSubset(f"{F} is not a subset of {P}")
    r = len(F)
    return sum(pos[f] for f in F) - r * (r + 1) // 2


def _submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _sign_mask(fmask: int, pmask: int) -> int:
    """Parity of S(F, P): each element of F counts the elements of P\\F below it."""
    rest = pmask & ~fmask
    s = 0
    for f in mask_indices(fmask):
        s += popcount(rest & ((1 << (f - 1)) - 1))
    return s & 1


@dataclass(frozen=True)
class EnDescriptor:
    field: FieldDescriptor
    n: int

    @cached_property
    def algebra(self) -> CliffordAlgebra:
        return en_algebra(self.field, self.n)

    @property
    def dim(self) -> int:
        return 1 << (self.n + 1)

    def index(self, j: int, mask: int) -> int:
        return self.algebra.index(j, mask)

    def label(self, idx: int) -> tuple[int, int]:
        return self.algebra.label(idx)

    @cached_property
    def comul_table(self) -> list[dict]:
        """``comul_table[idx] = {(left, right): coeff}``."""
        F = self.field
        one, mone = F.one(), F.neg(F.one())
        out = []
        for idx in range(self.dim):
            j, P = self.label(idx)
            terms = {}
            for Fm in _submasks(P):
                left = self.index(j, Fm)
                right = self.index((popcount(Fm) + j) & 1, P & ~Fm)
                terms[(left, right)] = mone if _sign_mask(Fm, P) else one
            out.append(terms)
        return out

    def counit_basis(self, idx: int):
        F = self.field
        return F.one() if self.label(idx)[1] == 0 else F.zero()

    def antipode_basis(self, idx: int) -> dict:
        F = self.field
        j, P = self.label(idx)
        k = popcount(P)
        c = F.neg(F.one()) if (j * k) & 1 else F.one()
        return {self.index((j + k) & 1, P): c}

    def element(self, vec) -> CliffordElement:
        return CliffordElement(self.algebra, tuple(vec))

    def basis(self, idx: int) -> CliffordElement:
        return self.algebra.basis(idx)

    def g(self) -> CliffordElement:
        return self.algebra.G

    def x(self, i: int) -> CliffordElement:
        return self.algebra.X(i)

    def __str__(self):
        return f"E({self.n}) over {self.field}"


def en(field: FieldDescriptor, n: int) -> EnDescriptor:
    return EnDescriptor(field, n)


def _en_of(h: CliffordElement) -> EnDescriptor:
    alg = h.algebra
    if alg.n < 0 or alg != en_algebra(alg.field, alg.n):
        raise AlgebraMismatch(f"{alg} is not E(n)")
    return EnDescriptor(alg.field, alg.n)


def comul(h: CliffordElement, table=None) -> TensorElement:
    E = _en_of(h)
    F = E.field
    table = table or E.comul_table
    acc: dict = {}
    for idx, c in enumerate(h.vec):
        if F.is_zero(c):
            continue
        for key, s in table[idx].items():
            acc[key] = F.add(acc.get(key, F.zero()), F.mul(c, s))
    return TensorElement.build((E.algebra, E.algebra), acc)


def counit(h: CliffordElement) -> FieldElement:
    E = _en_of(h)
    F = E.field
    total = F.zero()
    for idx, c in enumerate(h.vec):
        if E.label(idx)[1] == 0:
            total = F.add(total, c)
    return FieldElement(F, total)


def antipode(h: CliffordElement) -> CliffordElement:
    E = _en_of(h)
    F = E.field
    vec = [F.zero()] * E.dim
    for idx, c in enumerate(h.vec):
        if F.is_zero(c):
            continue
        for k, s in E.antipode_basis(idx).items():
            vec[k] = F.add(vec[k], F.mul(c, s))
    return E.element(vec)


# -- the dual algebra ---------------------------------------------------------

@dataclass(frozen=True)
class DualElement:
    """``sum c_b b*`` in ``E(n)*``; evaluation is the coefficient pairing."""

    en: EnDescriptor
    vec: tuple

    @classmethod
    def basis(cls, E: EnDescriptor, idx: int, coeff=None) -> DualElement:
        F = E.field
        v = [F.zero()] * E.dim
        v[idx] = F.one() if coeff is None else coeff
        return cls(E, tuple(v))

    @classmethod
    def zero(cls, E: EnDescriptor) -> DualElement:
        return cls(E, (E.field.zero(),) * E.dim)

    @classmethod
    def counit(cls, E: EnDescriptor) -> DualElement:
        return cls(E, tuple(E.counit_basis(i) for i in range(E.dim)))

    def __call__(self, h: CliffordElement) -> FieldElement:
        F = self.en.field
        total = F.zero()
        for a, b in zip(self.vec, h.vec):
            if not F.is_zero(a) and not F.is_zero(b):
                total = F.add(total, F.mul(a, b))
        return FieldElement(F, total)

    def __add__(self, o: DualElement) -> DualElement:
        F = self.en.field
        return DualElement(self.en, tuple(F.add(x, y) for x, y in zip(self.vec, o.vec)))

    def __sub__(self, o: DualElement) -> DualElement:
        F = self.en.field
        return DualElement(self.en, tuple(F.sub(x, y) for x, y in zip(self.vec, o.vec)))

    def __neg__(self) -> DualElement:
        F = self.en.field
        return DualElement(self.en, tuple(F.neg(x) for x in self.vec))

    def scale(self, c) -> DualElement:
        F = self.en.field
        c = F.coerce(c)
        return DualElement(self.en, tuple(F.mul(c, x) for x in self.vec))

    def __mul__(self, o: DualElement) -> DualElement:
        return dual_convolve(self, o)

    def is_zero(self) -> bool:
        F = self.en.field
        return all(F.is_zero(x) for x in self.vec)

    def to_json(self) -> dict[str, str]:
        F = self.en.field
        return {f"({label_str(*self.en.label(i))})*": F.fmt(c) for i, c in enumerate(self.vec) if not F.is_zero(c)}

    def __str__(self):
        return " + ".join(f"({c})*{k}" for k, c in self.to_json().items()) or "0"

    __repr__ = __str__


def dual_convolve(f: DualElement, h: DualElement) -> DualElement:
    """``(f * h)(b) = sum f(b_1) h(b_2)`` over the coproduct of each basis element."""
    if f.en != h.en:
        raise AlgebraMismatch("duals of different E(n)")
    E = f.en
    F = E.field
    out = []
    for terms in E.comul_table:
        total = F.zero()
        for (i1, i2), s in terms.items():
            a, b = f.vec[i1], h.vec[i2]
            if not F.is_zero(a) and not F.is_zero(b):
                total = F.add(total, F.mul(s, F.mul(a, b)))
        out.append(total)
    return DualElement(E, tuple(out))


def _phi_signs(j: int, k: int) -> tuple[int, int]:
    """Exponents of -1 on ``(x_P)*`` and ``(g x_P)*`` in ``phi(g^j x_P)``, ``k = |P|``."""
    return (k + 1) // 2, k // 2 + j


def phi_basis(E: EnDescriptor, idx: int) -> DualElement:
    F = E.field
    j, P = E.label(idx)
    e0, e1 = _phi_signs(j, popcount(P))
    one, mone = F.one(), F.neg(F.one())
    v = [F.zero()] * E.dim
    v[E.index(0, P)] = mone if e0 & 1 else one
    v[E.index(1, P)] = mone if e1 & 1 else one
    return DualElement(E, tuple(v))


def duality_phi(h: CliffordElement) -> DualElement:
    E = _en_of(h)
    F = E.field
    out = DualElement.zero(E)
    for idx, c in enumerate(h.vec):
        if not F.is_zero(c):
            out = out + phi_basis(E, idx).scale(FieldElement(F, c))
    return out


def phi_inv_basis(E: EnDescriptor, idx: int) -> CliffordElement:
    """Preimage of a dual basis vector: ``(x_P)* = +-phi((x_P + g x_P)/2)``, ``(g x_P)* = +-phi((x_P - g x_P)/2)``."""
    F = E.field
    j, P = E.label(idx)
    k = popcount(P)
    h = F.half()
    a, b = E.basis(E.index(0, P)), E.basis(E.index(1, P))
    if j == 0:
        s = (k + 1) // 2
        out = (a + b).scale(FieldElement(F, h))
    else:
        s = k // 2
        out = (a - b).scale(FieldElement(F, h))
    return -out if s & 1 else out


def duality_phi_inv(f: DualElement) -> CliffordElement:
    E = f.en
    F = E.field
    out = E.algebra.zero()
    for idx, c in enumerate(f.vec):
        if not F.is_zero(c):
            out = out + phi_inv_basis(E, idx).scale(FieldElement(F, c))
    return out


def psi_basis(E: EnDescriptor, idx: int) -> DualElement:
    """The earlier candidate map: ``g -> 1* - g*``, ``x_i -> x_i* + (g x_i)*``, extended multiplicatively.

    It is multiplicative by construction but not a coalgebra map out of
    ``E(n)^cop``; the duality verifier is expected to reject it.
    """
    F = E.field
    one = F.one()
    g_img = DualElement(E, tuple(one if i == 0 else (F.neg(one) if i == E.index(1, 0) else F.zero())
                                 for i in range(E.dim)))
    out = DualElement.counit(E)
    for gen in E.algebra.word(idx):
        if gen == 0:
            img = g_img
        else:
            m = 1 << (gen - 1)
            img = DualElement.basis(E, E.index(0, m)) + DualElement.basis(E, E.index(1, m))
        out = dual_convolve(out, img)
    return out


# -- verifiers ----------------------------------------------------------------

def _tensor_from(E, terms, arity=2) -> TensorElement:
    return TensorElement.build((E.algebra,) * arity, terms)


def verify_hopf(field: FieldDescriptor, n: int,
                comul_fn: Callable[[EnDescriptor, int], dict] | None = None) -> Report:
    """Check the Hopf axioms of E(n) on every basis element (and pair, for multiplicativity).

    ``comul_fn(E, idx) -> {(i, j): coeff}`` overrides the coproduct, for fault injection.
    """
    E = EnDescriptor(field, n)
    F = field
    A = E.algebra
    table = [comul_fn(E, i) if comul_fn else E.comul_table[i] for i in range(E.dim)]
    rep = Report()
    lab = A.label_str

    def delta_of(idx):
        return table[idx]

    deltas = [_tensor_from(E, table[i]) for i in range(E.dim)]

    # coassociativity
    for b in range(E.dim):
        lhs = deltas[b].expand_leg(0, delta_of, (A, A))
        rhs = deltas[b].expand_leg(1, delta_of, (A, A))
        if lhs != rhs:
            return rep.fail("coassociativity", [lab(b)], f"{lhs} != {rhs}")
    rep.passed("coassociativity")

    # counit
    for b in range(E.dim):
        left = deltas[b].contract_leg(0, E.counit_basis).to_element()
        right = deltas[b].contract_leg(1, E.counit_basis).to_element()
        if left != A.basis(b) or right != A.basis(b):
            return rep.fail("counit", [lab(b)])
    rep.passed("counit")

    # Delta and eps are algebra maps
    one_one = TensorElement.pure(A.one(), A.one())
    if deltas[0] != one_one:
        return rep.fail("comultiplication unital", [lab(0)])
    basis = A.basis_elements()
    for a in range(E.dim):
        for b in range(E.dim):
            prod = basis[a] * basis[b]
            d_prod = _tensor_from(E, {})
            for idx, c in enumerate(prod.vec):
                if not F.is_zero(c):
                    d_prod = d_prod + deltas[idx].scale(FieldElement(F, c))
            if d_prod != deltas[a] * deltas[b]:
                return rep.fail("comultiplication multiplicative", [lab(a), lab(b)])
            e_prod = F.zero()
            for idx, c in enumerate(prod.vec):
                e_prod = F.add(e_prod, F.mul(c, E.counit_basis(idx)))
            if e_prod != F.mul(E.counit_basis(a), E.counit_basis(b)):
                return rep.fail("counit multiplicative", [lab(a), lab(b)])
    rep.passed("comultiplication multiplicative")
    rep.passed("counit multiplicative")

    # antipode
    for b in range(E.dim):
        unit = A.scalar(FieldElement(F, E.counit_basis(b)))
        left = deltas[b].map_leg(0, E.antipode_basis).multiply_out()
        right = deltas[b].map_leg(1, E.antipode_basis).multiply_out()
        if left != unit or right != unit:
            return rep.fail("antipode", [lab(b)], f"m(S(x)id)Delta = {left}, m(id(x)S)Delta = {right}")
    rep.passed("antipode")
    return rep


def pairing_matrix(E: EnDescriptor, phi_fn=phi_basis) -> list[list]:
    """``M[i][j] = phi(b_i)(b_j)``."""
    return [list(phi_fn(E, i).vec) for i in range(E.dim)]


def verify_duality_iso(field: FieldDescriptor, n: int,
                       phi_fn: Callable[[EnDescriptor, int], DualElement] | None = None) -> Report:
    """Check that ``phi_fn`` (default: phi) is a Hopf isomorphism ``E(n)^cop -> E(n)*``.

    Multiplicativity uses the convolution product.  The coalgebra condition is
    tested through pairings, ``sum phi(a_2)(b) phi(a_1)(b') = phi(a)(b b')``,
    together with ``phi(a)(1) = eps(a)``.
    """
    E = EnDescriptor(field, n)
    F = field
    A = E.algebra
    phi_fn = phi_fn or phi_basis
    lab = A.label_str
    rep = Report()
    images = [phi_fn(E, i) for i in range(E.dim)]

    def phi_lin(h: CliffordElement) -> DualElement:
        out = DualElement.zero(E)
        for idx, c in enumerate(h.vec):
            if not F.is_zero(c):
                out = out + images[idx].scale(FieldElement(F, c))
        return out

    if images[0] != DualElement.counit(E):
        return rep.fail("unit", [lab(0)], f"phi(1) = {images[0]}")
    basis = A.basis_elements()
    for a in range(E.dim):
        for b in range(E.dim):
            if phi_lin(basis[a] * basis[b]) != dual_convolve(images[a], images[b]):
                return rep.fail("multiplicative", [lab(a), lab(b)])
    rep.passed("multiplicative")

    if linalg.rank(F, pairing_matrix(E, phi_fn)) != E.dim:
        return rep.fail("bijective", [], "pairing matrix is singular")
    rep.passed("bijective")

    for a in range(E.dim):
        if images[a].vec[0] != E.counit_basis(a):
            return rep.fail("counit", [lab(a)])
    rep.passed("counit")

    products = [[basis[b] * basis[c] for c in range(E.dim)] for b in range(E.dim)]
    for a in range(E.dim):
        terms = E.comul_table[a]
        for b in range(E.dim):
            for c in range(E.dim):
                lhs = F.zero()
                for (a1, a2), s in terms.items():
                    x, y = images[a2].vec[b], images[a1].vec[c]
                    if not F.is_zero(x) and not F.is_zero(y):
                        lhs = F.add(lhs, F.mul(s, F.mul(x, y)))
                rhs = images[a](products[b][c]).value
                if lhs != rhs:
                    return rep.fail("cop-coalgebra", [lab(a), lab(b), lab(c)],
                                    f"{F.fmt(lhs)} != {F.fmt(rhs)}")
    rep.passed("cop-coalgebra")
    return rep
