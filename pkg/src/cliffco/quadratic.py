"""The quadratic form behind a Clifford-type algebra and the structure theory it controls."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from . import linalg
from .clifford import (
    CliffordAlgebra,
    CliffordElement,
    algebra_new,
    center,
    left_matrix,
)
from .scalars import FieldDescriptor, FieldElement


@dataclass(frozen=True)
class SymmetricForm:
    field: FieldDescriptor
    entries: tuple  # raw values, (n+1) x (n+1)

    @property
    def size(self) -> int:
        return len(self.entries)

    def det(self) -> FieldElement:
        F = self.field
        if not self.entries:
            return FieldElement(F, F.one())
        return FieldElement(F, linalg.det(F, self.entries))

    def rank(self) -> int:
        return linalg.rank(self.field, self.entries) if self.entries else 0

    def kernel(self) -> list[list]:
        return linalg.nullspace(self.field, self.entries, self.size)

    def to_json(self):
        return [[self.field.fmt(x) for x in r] for r in self.entries]


@dataclass(frozen=True)
class Congruence:
    """``P^T Q P = D``; the columns of ``P`` are the new basis in old coordinates."""

    field: FieldDescriptor
    P: tuple
    D: tuple  # diagonal entries only

    def diag_matrix(self):
        F = self.field
        k = len(self.D)
        return [[self.D[i] if i == j else F.zero() for j in range(k)] for i in range(k)]

    def to_json(self):
        F = self.field
        return {"P": [[F.fmt(x) for x in r] for r in self.P], "D": [F.fmt(x) for x in self.D]}


def build_q(alg: CliffordAlgebra) -> SymmetricForm:
    F = alg.field
    n = alg.n
    if n < 0:
        return SymmetricForm(F, ())
    Q = [[F.zero()] * (n + 1) for _ in range(n + 1)]
    h = F.half()
    Q[0][0] = alg.alpha
    for i in range(1, n + 1):
        Q[i][i] = alg.beta[i - 1]
        Q[0][i] = Q[i][0] = F.mul(h, alg.gamma[i - 1])
        for j in range(i + 1, n + 1):
            Q[i][j] = Q[j][i] = F.mul(h, alg.lam[i - 1][j - 1])
    return SymmetricForm(F, tuple(tuple(r) for r in Q))


def _add_col(F, B, P, dst, src, f):
    """Congruence step ``e_dst <- e_dst + f e_src`` applied to ``B`` and ``P``."""
    for r in range(len(B)):
        B[r][dst] = F.add(B[r][dst], F.mul(f, B[r][src]))
    B[dst] = [F.add(x, F.mul(f, y)) for x, y in zip(B[dst], B[src])]
    for r in range(len(P)):
        P[r][dst] = F.add(P[r][dst], F.mul(f, P[r][src]))


def diagonalize(Q: SymmetricForm) -> Congruence:
    """Deterministic symmetric Gaussian elimination.

    Columns are never swapped or rescaled: pivot on the lowest unprocessed
    index with nonzero diagonal, clearing its row with ``e_j -= (B_ij/B_ii) e_i``.
    When every remaining diagonal entry vanishes but some ``B_ij`` does not,
    first replace ``e_i`` by ``e_i + e_j`` (lowest pair).  All steps are
    unitriangular so ``det P = 1``.
    """
    F = Q.field
    k = Q.size
    B = [list(r) for r in Q.entries]
    P = linalg.identity(F, k)
    done: set[int] = set()
    while len(done) < k:
        todo = [i for i in range(k) if i not in done]
        piv = next((i for i in todo if not F.is_zero(B[i][i])), None)
        if piv is None:
            pair = next(((i, j) for i in todo for j in todo if i < j and not F.is_zero(B[i][j])), None)
            if pair is None:
                break
            i, j = pair
            _add_col(F, B, P, i, j, F.one())
            piv = i
        inv = F.inv(B[piv][piv])
        for j in todo:
            if j != piv and not F.is_zero(B[piv][j]):
                _add_col(F, B, P, j, piv, F.neg(F.mul(B[piv][j], inv)))
        done.add(piv)
    D = tuple(B[i][i] for i in range(k))
    cong = Congruence(F, tuple(tuple(r) for r in P), D)
    # exactness check: P^T Q P must be the diagonal we report
    PT = linalg.transpose(P)
    if linalg.matmul(F, linalg.matmul(F, PT, Q.entries), P) != cong.diag_matrix():
        raise AssertionError("congruence check failed")
    return cong


def generator_combination(alg: CliffordAlgebra, coords) -> CliffordElement:
    """``sum coords[k] * gen_k`` with ``gen_0 = G``, ``gen_i = X_i``."""
    out = alg.zero()
    for c, g in zip(coords, alg.generators()):
        if not alg.field.is_zero(c):
            out = out + g.scale(FieldElement(alg.field, c))
    return out


def orthogonalize_algebra(alg: CliffordAlgebra) -> tuple[CliffordAlgebra, list[CliffordElement]]:
    """Orthogonal presentation ``Cl(D_0, D_1..D_n, 0, 0)`` and the images of its generators.

    ``images[k]`` is column ``k`` of ``P`` read as a combination of ``G, X_i``;
    the relations of the new algebra are checked on these images.
    """
    F = alg.field
    if alg.n < 0:
        return alg, []
    cong = diagonalize(build_q(alg))
    n = alg.n
    new = algebra_new(F, n, FieldElement(F, cong.D[0]), [FieldElement(F, d) for d in cong.D[1:]])
    images = [generator_combination(alg, [cong.P[r][k] for r in range(n + 1)]) for k in range(n + 1)]
    for a in range(n + 1):
        if images[a] * images[a] != alg.scalar(FieldElement(F, cong.D[a])):
            raise AssertionError("orthogonal image fails its square relation")
        for b in range(a + 1, n + 1):
            if not (images[a] * images[b] + images[b] * images[a]).is_zero():
                raise AssertionError("orthogonal images fail to anticommute")
    return new, images


def is_semisimple(alg: CliffordAlgebra) -> bool:
    return bool(build_q(alg).det())


def det_q(alg: CliffordAlgebra) -> FieldElement:
    return build_q(alg).det()


def delta(alg: CliffordAlgebra) -> FieldElement:
    n = alg.n
    d = det_q(alg)
    return -d if (n * (n + 1) // 2) % 2 else d


def radical(alg: CliffordAlgebra) -> list[CliffordElement]:
    """Two-sided ideal generated by ``ker Q`` (inside the span of the generators).

    Closure under left and right multiplication by generators; the span grows
    monotonically so ``dim`` rounds suffice.
    """
    F = alg.field
    kernel = build_q(alg).kernel() if alg.n >= 0 else []
    if not kernel:
        return []
    gens = alg.generators()
    basis = linalg.span_basis(F, [list(generator_combination(alg, v).vec) for v in kernel], alg.dim)
    for _ in range(alg.dim + 1):
        vecs = list(basis)
        for row in basis:
            x = CliffordElement(alg, tuple(row))
            for g in gens:
                vecs.append(list((g * x).vec))
                vecs.append(list((x * g).vec))
        new_basis = linalg.span_basis(F, vecs, alg.dim)
        if len(new_basis) == len(basis):
            return [CliffordElement(alg, tuple(r)) for r in new_basis]
        basis = new_basis
    raise RuntimeError("radical closure did not stabilise")


def is_nilpotent(x: CliffordElement) -> bool:
    p = x
    for _ in range(x.algebra.dim):
        if p.is_zero():
            return True
        p = p * x
    return p.is_zero()


@dataclass(frozen=True)
class AlgebraMap:
    """Linear map between two algebras given by its matrix on the basis."""

    source: CliffordAlgebra
    target: CliffordAlgebra
    matrix: tuple

    def __call__(self, x: CliffordElement) -> CliffordElement:
        return CliffordElement(self.target, tuple(linalg.matvec(self.target.field, self.matrix, x.vec)))

    def kernel(self) -> list[CliffordElement]:
        F = self.source.field
        return [CliffordElement(self.source, tuple(v)) for v in linalg.nullspace(F, self.matrix, self.source.dim)]

    def rank(self) -> int:
        return linalg.rank(self.source.field, self.matrix)

    def is_multiplicative(self) -> bool:
        src = self.source
        if self(src.one()) != self.target.one():
            return False
        basis = src.basis_elements()
        images = [self(b) for b in basis]
        for i, a in enumerate(basis):
            for j, b in enumerate(basis):
                if self(a * b) != images[i] * images[j]:
                    return False
        return True


def quotient_semisimple(alg: CliffordAlgebra) -> tuple[CliffordAlgebra, AlgebraMap]:
    """``A / J(A)`` as the Clifford algebra of the nondegenerate part of ``D``.

    Generators of the quotient are the orthogonal vectors with nonzero ``D``,
    in column order; the first one plays the role of ``G``.  With ``P`` the
    diagonalising matrix, ``gen_k = sum_m (P^-1)[m][k] v_m`` and the projection
    kills the ``v_m`` lying in ``ker Q``.
    """
    F = alg.field
    if alg.n < 0:
        ident = tuple(tuple(r) for r in linalg.identity(F, 1))
        return alg, AlgebraMap(alg, alg, ident)
    cong = diagonalize(build_q(alg))
    keep = [m for m, d in enumerate(cong.D) if not F.is_zero(d)]
    if len(keep) == len(cong.D):
        ident = tuple(tuple(r) for r in linalg.identity(F, alg.dim))
        return alg, AlgebraMap(alg, alg, ident)
    if keep:
        quot = algebra_new(F, len(keep) - 1, FieldElement(F, cong.D[keep[0]]),
                           [FieldElement(F, cong.D[m]) for m in keep[1:]])
    else:
        quot = algebra_new(F, -1, 0)
    Pinv = linalg.inverse(F, [list(r) for r in cong.P])
    qgens = quot.generators()
    gen_images = []
    for k in range(alg.n + 1):
        img = quot.zero()
        for pos, m in enumerate(keep):
            c = Pinv[m][k]
            if not F.is_zero(c):
                img = img + qgens[pos].scale(FieldElement(F, c))
        gen_images.append(img)
    cols = []
    for idx in range(alg.dim):
        img = quot.one()
        for g in alg.word(idx):
            img = img * gen_images[g]
        cols.append(img.vec)
    proj = AlgebraMap(alg, quot, tuple(tuple(r) for r in zip(*cols)))
    return quot, proj


def bialgebra_admissible(alg: CliffordAlgebra) -> tuple[bool, str]:
    """Whether the algebra is isomorphic to ``Cl(1, 0, .., 0)`` (so carries E(n)'s bialgebra structure)."""
    F = alg.field
    if alg.n < 0:
        return False, "ground field has no generators"
    Q = build_q(alg)
    r = Q.rank()
    if r != 1:
        return False, f"rank of Q is {r}, need 1"
    cong = diagonalize(Q)
    d = next(x for x in cong.D if not F.is_zero(x))
    root = F.sqrt(d)
    if root is None:
        return False, f"nonzero diagonal entry {F.fmt(d)} is not a square"
    return True, f"rank 1 and {F.fmt(d)} = ({F.fmt(root)})^2"


VERDICTS = (
    "CentralSimpleOverK",
    "CentralSimpleOverQuadraticExtension",
    "ProductOfTwoCSA",
    "NotSemisimple",
)


@dataclass(frozen=True)
class StructureReport:
    n_parity: str
    det_q: FieldElement
    delta: FieldElement
    delta_square: bool
    verdict: str
    center_dim: int

    def to_json(self) -> dict[str, Any]:
        return {
            "n_parity": self.n_parity,
            "det_q": str(self.det_q),
            "delta": str(self.delta),
            "delta_square": self.delta_square,
            "verdict": self.verdict,
            "center_dim": self.center_dim,
        }


def verdict_for(n: int, det_nonzero: bool, delta_square: bool) -> str:
    if not det_nonzero:
        return "NotSemisimple"
    if n % 2:
        return "CentralSimpleOverK"
    return "ProductOfTwoCSA" if delta_square else "CentralSimpleOverQuadraticExtension"


def classify_structure(alg: CliffordAlgebra) -> StructureReport:
    d = det_q(alg)
    dl = delta(alg)
    sq = dl.is_square() is not None
    verdict = verdict_for(alg.n, bool(d), sq)
    cdim = len(center(alg))
    if verdict != "NotSemisimple":
        expected = 1 if alg.n % 2 else 2
        if cdim != expected:
            raise AssertionError(f"center has dimension {cdim}, expected {expected}")
    return StructureReport("odd" if alg.n % 2 else "even", d, dl, sq, verdict, cdim)


def trace_form_nondegenerate(alg: CliffordAlgebra) -> bool:
    """Semisimplicity test via the trace form ``(a, b) -> tr L(ab)``; valid in characteristic 0 only."""
    from .clifford import regular_trace

    F = alg.field
    basis = alg.basis_elements()
    M = [[regular_trace(a * b).value for b in basis] for a in basis]
    return not F.is_zero(linalg.det(F, M))
