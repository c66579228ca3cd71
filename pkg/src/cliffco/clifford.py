"""Clifford-type algebras given by generators and relations.

``Cl(alpha, beta_i, gamma_i, lambda_ij)`` is generated by ``G, X_1..X_n`` with

    G^2 = alpha,  X_i^2 = beta_i,  G X_i + X_i G = gamma_i,  X_i X_j + X_j X_i = lambda_ij.

Basis monomials ``G^j X_P`` are labelled ``(j, mask)`` where bit ``i-1`` of
``mask`` marks ``X_i``; the basis index is ``j * 2**n + mask``.  Elements are
dense coefficient tuples of raw field values.

``n = -1`` is allowed internally and denotes the ground field itself (no
generators, dimension 1); it shows up as the quotient of an exterior algebra
by its radical.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Callable, Iterable, Mapping, Sequence

from . import linalg
from .errors import AlgebraMismatch, BadIndex, CharTwo, NotInvertible
from .scalars import FieldDescriptor, FieldElement


def popcount(m: int) -> int:
    return bin(m).count("1")


def mask_indices(mask: int) -> list[int]:
    """1-based generator indices set in ``mask``, ascending."""
    out, i = [], 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def indices_mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << (i - 1)
    return m


def label_str(j: int, mask: int) -> str:
    if mask == 0:
        return "g" if j else "1"
    xs = "x{" + ",".join(str(i) for i in mask_indices(mask)) + "}"
    return f"g {xs}" if j else xs


_LABEL_RE = re.compile(r"^\s*(?P<g>g)?\s*(?:x\{(?P<xs>[0-9,\s]*)\})?\s*$", re.I)


def parse_label(s: str, n: int) -> tuple[int, int]:
    s = s.strip()
    if s == "1":
        return (0, 0)
    m = _LABEL_RE.match(s)
    if not m or (not m.group("g") and m.group("xs") is None):
        raise BadIndex(f"bad basis label {s!r}")
    j = 1 if m.group("g") else 0
    xs = m.group("xs")
    idx = [int(t) for t in xs.split(",") if t.strip()] if xs else []
    if any(not 1 <= i <= n for i in idx) or len(set(idx)) != len(idx):
        raise BadIndex(f"label {s!r} out of range for n={n}")
    if j and n < 0:
        raise BadIndex("the ground field has no generator g")
    return (j, indices_mask(idx))


@dataclass(frozen=True)
class CliffordAlgebra:
    """Validated algebra descriptor.  Parameters are stored as raw field values.

    ``lam`` is the full ``n x n`` matrix of anticommutators; only entries with
    ``i < j`` are meaningful, the rest are zero.
    """

    field: FieldDescriptor
    n: int
    alpha: Any
    beta: tuple
    gamma: tuple
    lam: tuple

    # -- basis bookkeeping -----------------------------------------------
    @property
    def dim(self) -> int:
        return 1 << (self.n + 1)

    @property
    def half(self) -> int:
        return 1 << max(self.n, 0)

    def index(self, j: int, mask: int) -> int:
        return j * (1 << self.n) + mask if self.n >= 0 else 0

    def label(self, idx: int) -> tuple[int, int]:
        if self.n < 0:
            return (0, 0)
        return divmod(idx, 1 << self.n)

    def label_str(self, idx: int) -> str:
        return label_str(*self.label(idx))

    def degree(self, idx: int) -> int:
        j, mask = self.label(idx)
        return j + popcount(mask)

    @cached_property
    def labels(self) -> list[str]:
        return [self.label_str(i) for i in range(self.dim)]

    @property
    def is_orthogonal(self) -> bool:
        F = self.field
        return all(F.is_zero(g) for g in self.gamma) and all(
            F.is_zero(self.lam[i][j]) for i in range(self.n) for j in range(i + 1, self.n)
        )

    def params_json(self) -> dict:
        F = self.field
        lam = [
            {"i": i + 1, "j": j + 1, "value": F.fmt(self.lam[i][j])}
            for i in range(self.n)
            for j in range(i + 1, self.n)
            if not F.is_zero(self.lam[i][j])
        ]
        return {
            "field": F.to_json(),
            "n": self.n,
            "alpha": F.fmt(self.alpha),
            "beta": [F.fmt(b) for b in self.beta],
            "gamma": [F.fmt(g) for g in self.gamma],
            "lambda": lam,
        }

    def __str__(self):
        F = self.field
        if self.n < 0:
            return f"ground field {F}"
        parts = [F.fmt(self.alpha)] + [F.fmt(b) for b in self.beta] + [F.fmt(g) for g in self.gamma]
        return f"Cl({', '.join(parts)}; n={self.n}) over {F}"

    # -- multiplication ---------------------------------------------------
    def _xmul(self, i: int, mask: int, cache: dict) -> dict:
        """Normal form of ``X_i * X_P`` as ``{mask: coeff}``."""
        key = (i, mask)
        if key in cache:
            return cache[key]
        F = self.field
        bit = 1 << (i - 1)
        if mask == 0:
            res = {bit: F.one()}
        else:
            low = mask & -mask
            r = low.bit_length()
            if i < r:
                res = {mask | bit: F.one()}
            elif i == r:
                b = self.beta[i - 1]
                res = {} if F.is_zero(b) else {mask & ~bit: b}
            else:
                # X_i X_r = lambda_ri - X_r X_i, and every index in the tail exceeds r
                rest = mask & ~low
                res = {}
                lam = self.lam[r - 1][i - 1]
                if not F.is_zero(lam):
                    res[rest] = lam
                for m, c in self._xmul(i, rest, cache).items():
                    k = m | low
                    v = F.sub(res.get(k, F.zero()), c)
                    if F.is_zero(v):
                        res.pop(k, None)
                    else:
                        res[k] = v
        cache[key] = res
        return res

    def _gen_times(self, g: int, idx: int, cache: dict) -> dict:
        """``generator_g * basis[idx]`` as ``{index: coeff}`` (g=0 is G)."""
        F = self.field
        j, mask = self.label(idx)
        if g == 0:
            if j == 0:
                return {self.index(1, mask): F.one()}
            return {} if F.is_zero(self.alpha) else {self.index(0, mask): self.alpha}
        xm = self._xmul(g, mask, cache)
        if j == 0:
            return {self.index(0, m): c for m, c in xm.items()}
        # X_i G X_P = gamma_i X_P - G X_i X_P
        res: dict = {self.index(1, m): F.neg(c) for m, c in xm.items()}
        gam = self.gamma[g - 1]
        if not F.is_zero(gam):
            res[self.index(0, mask)] = gam
        return res

    @cached_property
    def generator_tables(self) -> list[list[dict]]:
        cache: dict = {}
        return [[self._gen_times(g, idx, cache) for idx in range(self.dim)] for g in range(self.n + 1)]

    def word(self, idx: int) -> list[int]:
        j, mask = self.label(idx)
        return [0] * j + mask_indices(mask)

    def _table_general(self):
        F = self.field
        gt = self.generator_tables
        table = []
        for a in range(self.dim):
            w = self.word(a)
            row = []
            for b in range(self.dim):
                vec = {b: F.one()}
                for g in reversed(w):
                    nxt: dict = {}
                    for k, c in vec.items():
                        for k2, c2 in gt[g][k].items():
                            v = F.add(nxt.get(k2, F.zero()), F.mul(c, c2))
                            nxt[k2] = v
                    vec = {k: c for k, c in nxt.items() if not F.is_zero(c)}
                row.append(tuple(sorted(vec.items())))
            table.append(row)
        return table

    def _table_orthogonal(self):
        """Sign rule for orthogonal generators: count crossings, collect squares."""
        F = self.field
        n = self.n
        table = []
        for a in range(self.dim):
            j, P = self.label(a)
            row = []
            for b in range(self.dim):
                k, R = self.label(b)
                sign = (k * popcount(P)) & 1
                for p in mask_indices(P):
                    sign ^= popcount(R & ((1 << (p - 1)) - 1)) & 1
                coeff = F.neg(F.one()) if sign else F.one()
                if j and k:
                    coeff = F.mul(coeff, self.alpha)
                for i in mask_indices(P & R):
                    coeff = F.mul(coeff, self.beta[i - 1])
                if F.is_zero(coeff):
                    row.append(())
                else:
                    row.append(((self.index((j + k) & 1, P ^ R), coeff),))
            table.append(row)
        return table

    @cached_property
    def table(self):
        """``table[a][b]`` = product of basis monomials as ``((index, coeff), ...)``."""
        if self.n >= 0 and self.is_orthogonal:
            return self._table_orthogonal()
        return self._table_general()

    # -- convenience constructors ------------------------------------------
    def element(self, vec) -> CliffordElement:
        return CliffordElement(self, tuple(vec))

    def zero(self) -> CliffordElement:
        return CliffordElement(self, (self.field.zero(),) * self.dim)

    def scalar(self, c) -> CliffordElement:
        F = self.field
        v = [F.zero()] * self.dim
        v[0] = F.coerce(c)
        return CliffordElement(self, tuple(v))

    def one(self) -> CliffordElement:
        return self.scalar(1)

    def basis(self, idx: int, coeff=None) -> CliffordElement:
        F = self.field
        v = [F.zero()] * self.dim
        v[idx] = F.one() if coeff is None else coeff
        return CliffordElement(self, tuple(v))

    def monomial(self, j: int, indices: Iterable[int] = ()) -> CliffordElement:
        return self.basis(self.index(j, indices_mask(indices)))

    @property
    def G(self) -> CliffordElement:
        return self.monomial(1)

    def X(self, i: int) -> CliffordElement:
        if not 1 <= i <= self.n:
            raise BadIndex(f"X_{i} does not exist for n={self.n}")
        return self.monomial(0, [i])

    def generators(self) -> list[CliffordElement]:
        if self.n < 0:
            return []
        return [self.G] + [self.X(i) for i in range(1, self.n + 1)]

    def basis_elements(self) -> list[CliffordElement]:
        return [self.basis(i) for i in range(self.dim)]

    def from_json(self, obj: Mapping[str, Any]) -> CliffordElement:
        F = self.field
        v = [F.zero()] * self.dim
        for key, val in obj.items():
            idx = self.index(*parse_label(key, self.n))
            v[idx] = F.add(v[idx], F.coerce(val))
        return CliffordElement(self, tuple(v))


def _raw_params(field, n, alpha, beta, gamma, lam):
    F = field
    beta = tuple(F.coerce(b) for b in beta)
    gamma = tuple(F.coerce(g) for g in gamma) if gamma is not None else (F.zero(),) * n
    if len(beta) != n or len(gamma) != n:
        raise BadIndex(f"need {n} beta and gamma values, got {len(beta)} and {len(gamma)}")
    L = [[F.zero()] * n for _ in range(n)]
    items = lam.items() if isinstance(lam, Mapping) else (lam or ())
    for (i, j), v in items:
        if not (1 <= i < j <= n):
            raise BadIndex(f"lambda index ({i},{j}) must satisfy 1 <= i < j <= {n}")
        L[i - 1][j - 1] = F.coerce(v)
    return F.coerce(alpha), beta, gamma, tuple(tuple(r) for r in L)


def algebra_new(field: FieldDescriptor, n: int, alpha, beta: Sequence = (), gamma: Sequence | None = None,
                lam: Mapping | Iterable | None = None) -> CliffordAlgebra:
    """Build ``Cl(alpha, beta_i, gamma_i, lambda_ij)``.

    ``lam`` maps 1-based pairs ``(i, j)`` with ``i < j`` to scalars; missing
    pairs are zero.  Scalars may be ints, Fractions, strings or FieldElements.
    """
    if field.characteristic == 2:
        raise CharTwo("characteristic 2 is not supported")
    if n < -1:
        raise BadIndex("n must be >= 0")
    if n == -1:
        return CliffordAlgebra(field, -1, field.zero(), (), (), ())
    a, b, g, L = _raw_params(field, n, alpha, beta, gamma, lam)
    return CliffordAlgebra(field, n, a, b, g, L)


def en_algebra(field: FieldDescriptor, n: int) -> CliffordAlgebra:
    """``Cl(1, 0, 0, 0)``, the algebra underlying the Hopf algebra E(n)."""
    return algebra_new(field, n, 1, [0] * n)


# -- elements -----------------------------------------------------------------

def _mul_vec(alg: CliffordAlgebra, u, v):
    F = alg.field
    table = alg.table
    acc = [F.zero()] * alg.dim
    nz_v = [(j, y) for j, y in enumerate(v) if not F.is_zero(y)]
    if not nz_v:
        return acc
    for i, x in enumerate(u):
        if F.is_zero(x):
            continue
        row = table[i]
        for j, y in nz_v:
            xy = F.mul(x, y)
            for k, c in row[j]:
                acc[k] = F.add(acc[k], F.mul(xy, c))
    return acc


@dataclass(frozen=True)
class CliffordElement:
    algebra: CliffordAlgebra
    vec: tuple

    @property
    def field(self) -> FieldDescriptor:
        return self.algebra.field

    @property
    def coeffs(self) -> dict[tuple[int, int], FieldElement]:
        F = self.field
        return {self.algebra.label(i): FieldElement(F, c) for i, c in enumerate(self.vec) if not F.is_zero(c)}

    def coeff(self, idx: int) -> FieldElement:
        return FieldElement(self.field, self.vec[idx])

    def _check(self, o: CliffordElement):
        if o.algebra != self.algebra:
            raise AlgebraMismatch(f"{self.algebra} vs {o.algebra}")

    def __add__(self, o):
        if not isinstance(o, CliffordElement):
            o = self.algebra.scalar(o)
        self._check(o)
        F = self.field
        return CliffordElement(self.algebra, tuple(F.add(x, y) for x, y in zip(self.vec, o.vec)))

    __radd__ = __add__

    def __sub__(self, o):
        if not isinstance(o, CliffordElement):
            o = self.algebra.scalar(o)
        self._check(o)
        F = self.field
        return CliffordElement(self.algebra, tuple(F.sub(x, y) for x, y in zip(self.vec, o.vec)))

    def __rsub__(self, o):
        return (-self) + o

    def __neg__(self):
        F = self.field
        return CliffordElement(self.algebra, tuple(F.neg(x) for x in self.vec))

    def scale(self, c) -> CliffordElement:
        F = self.field
        c = F.coerce(c)
        return CliffordElement(self.algebra, tuple(F.mul(c, x) for x in self.vec))

    def __mul__(self, o):
        if isinstance(o, CliffordElement):
            return mul(self, o)
        return self.scale(o)

    def __rmul__(self, o):
        return self.scale(o)

    def __truediv__(self, c):
        F = self.field
        return self.scale(FieldElement(F, F.inv(F.coerce(c))))

    def __pow__(self, k: int):
        result = self.algebra.one()
        for _ in range(k):
            result = result * self
        return result

    def is_zero(self) -> bool:
        F = self.field
        return all(F.is_zero(x) for x in self.vec)

    def __bool__(self):
        return not self.is_zero()

    def scalar_part(self) -> FieldElement:
        return FieldElement(self.field, self.vec[0])

    def is_scalar(self) -> bool:
        F = self.field
        return all(F.is_zero(x) for x in self.vec[1:])

    def to_json(self) -> dict[str, str]:
        F = self.field
        return {self.algebra.label_str(i): F.fmt(c) for i, c in enumerate(self.vec) if not F.is_zero(c)}

    def __str__(self):
        F = self.field
        terms = []
        for i, c in enumerate(self.vec):
            if F.is_zero(c):
                continue
            lab = self.algebra.label_str(i)
            terms.append(F.fmt(c) if lab == "1" else f"({F.fmt(c)})*{lab}")
        return " + ".join(terms) if terms else "0"

    __repr__ = __str__


def mul(a: CliffordElement, b: CliffordElement) -> CliffordElement:
    """Product in the algebra; both factors must live in the same algebra."""
    if a.algebra != b.algebra:
        raise AlgebraMismatch(f"{a.algebra} vs {b.algebra}")
    return CliffordElement(a.algebra, tuple(_mul_vec(a.algebra, a.vec, b.vec)))


def grade_involution(a: CliffordElement) -> CliffordElement:
    """sigma: fix even monomials, negate odd ones."""
    alg = a.algebra
    F = alg.field
    return CliffordElement(alg, tuple(F.neg(c) if alg.degree(i) & 1 else c for i, c in enumerate(a.vec)))


def even_odd_split(a: CliffordElement) -> tuple[CliffordElement, CliffordElement]:
    alg = a.algebra
    F = alg.field
    z = F.zero()
    even = tuple(z if alg.degree(i) & 1 else c for i, c in enumerate(a.vec))
    odd = tuple(c if alg.degree(i) & 1 else z for i, c in enumerate(a.vec))
    return CliffordElement(alg, even), CliffordElement(alg, odd)


def left_matrix(a: CliffordElement) -> list[list]:
    """Matrix of ``x -> a x`` in the basis order (column ``j`` is ``a * basis_j``)."""
    alg = a.algebra
    cols = [_mul_vec(alg, a.vec, alg.basis(j).vec) for j in range(alg.dim)]
    return linalg.transpose(cols)


def right_matrix(a: CliffordElement) -> list[list]:
    alg = a.algebra
    cols = [_mul_vec(alg, alg.basis(j).vec, a.vec) for j in range(alg.dim)]
    return linalg.transpose(cols)


def try_invert(a: CliffordElement) -> CliffordElement:
    """Two-sided inverse via the regular representation, else :class:`NotInvertible`."""
    alg = a.algebra
    F = alg.field
    one = alg.one()
    x = linalg.solve(F, left_matrix(a), list(one.vec))
    if x is None:
        raise NotInvertible(f"{a} is not invertible")
    inv = CliffordElement(alg, tuple(x))
    if inv * a != one or a * inv != one:
        raise NotInvertible(f"{a} has only a one-sided inverse")
    return inv


def is_invertible(a: CliffordElement) -> bool:
    alg = a.algebra
    return linalg.rank(alg.field, left_matrix(a)) == alg.dim


def center(alg: CliffordAlgebra) -> list[CliffordElement]:
    """Basis of the centre: nullspace of ``z -> b z - z b`` stacked over every basis ``b``."""
    F = alg.field
    rows = []
    for b in alg.basis_elements():
        L, R = left_matrix(b), right_matrix(b)
        for lr, rr in zip(L, R):
            rows.append([F.sub(x, y) for x, y in zip(lr, rr)])
    return [CliffordElement(alg, tuple(v)) for v in linalg.nullspace(F, rows, alg.dim)]


def in_span(elements: Sequence[CliffordElement], x: CliffordElement) -> bool:
    F = x.field
    if not elements:
        return x.is_zero()
    basis = linalg.span_basis(F, [list(e.vec) for e in elements], x.algebra.dim)
    return linalg.in_span(F, basis, x.vec)


def coordinates(elements: Sequence[CliffordElement], x: CliffordElement) -> list | None:
    """Coefficients expressing ``x`` in terms of ``elements`` (or ``None``)."""
    F = x.field
    if not elements:
        return [] if x.is_zero() else None
    M = linalg.transpose([list(e.vec) for e in elements])
    return linalg.solve(F, M, list(x.vec))


def regular_trace(a: CliffordElement) -> FieldElement:
    """Trace of left multiplication by ``a`` in the fixed basis."""
    alg = a.algebra
    F = alg.field
    table = alg.table
    total = F.zero()
    for i, c in enumerate(a.vec):
        if F.is_zero(c):
            continue
        for j in range(alg.dim):
            for k, t in table[i][j]:
                if k == j:
                    total = F.add(total, F.mul(c, t))
    return FieldElement(F, total)


def pseudoscalar(alg: CliffordAlgebra) -> CliffordElement:
    """Product of the orthogonal generators produced by the deterministic diagonalisation.

    The congruence used is unimodular, so ``z**2`` equals
    ``(-1)**(n(n+1)/2) * det Q`` exactly.
    """
    from .quadratic import orthogonalize_algebra

    _, images = orthogonalize_algebra(alg)
    z = alg.one()
    for v in images:
        z = z * v
    return z


# -- linear operators ----------------------------------------------------------

@dataclass(frozen=True)
class LinearOperator:
    """A linear endomorphism of an algebra, as a matrix acting on coefficient columns."""

    algebra: CliffordAlgebra
    matrix: tuple

    @classmethod
    def from_matrix(cls, alg: CliffordAlgebra, M) -> LinearOperator:
        F = alg.field
        rows = tuple(tuple(F.coerce(x) for x in r) for r in M)
        if len(rows) != alg.dim or any(len(r) != alg.dim for r in rows):
            raise BadIndex(f"operator matrix must be {alg.dim}x{alg.dim}")
        return cls(alg, rows)

    @classmethod
    def from_function(cls, alg: CliffordAlgebra, f: Callable[[CliffordElement], CliffordElement]) -> LinearOperator:
        cols = [f(b).vec for b in alg.basis_elements()]
        return cls(alg, tuple(tuple(r) for r in zip(*cols)))

    @classmethod
    def identity(cls, alg: CliffordAlgebra) -> LinearOperator:
        return cls(alg, tuple(tuple(r) for r in linalg.identity(alg.field, alg.dim)))

    @classmethod
    def zero(cls, alg: CliffordAlgebra) -> LinearOperator:
        z = alg.field.zero()
        return cls(alg, tuple((z,) * alg.dim for _ in range(alg.dim)))

    def __call__(self, x: CliffordElement) -> CliffordElement:
        if x.algebra != self.algebra:
            raise AlgebraMismatch("operator applied to an element of another algebra")
        return CliffordElement(self.algebra, tuple(linalg.matvec(self.algebra.field, self.matrix, x.vec)))

    def column(self, idx: int) -> CliffordElement:
        return CliffordElement(self.algebra, tuple(r[idx] for r in self.matrix))

    def __matmul__(self, o: LinearOperator) -> LinearOperator:
        """Composition ``self o other``."""
        M = linalg.matmul(self.algebra.field, self.matrix, o.matrix)
        return LinearOperator(self.algebra, tuple(tuple(r) for r in M))

    def _zip(self, o, op):
        return LinearOperator(self.algebra, tuple(tuple(op(x, y) for x, y in zip(r, s)) for r, s in zip(self.matrix, o.matrix)))

    def __add__(self, o):
        return self._zip(o, self.algebra.field.add)

    def __sub__(self, o):
        return self._zip(o, self.algebra.field.sub)

    def __neg__(self):
        F = self.algebra.field
        return LinearOperator(self.algebra, tuple(tuple(F.neg(x) for x in r) for r in self.matrix))

    def is_zero(self) -> bool:
        F = self.algebra.field
        return all(F.is_zero(x) for r in self.matrix for x in r)

    def to_json(self) -> list[list[str]]:
        F = self.algebra.field
        return [[F.fmt(x) for x in r] for r in self.matrix]

    def key(self) -> tuple:
        return self.matrix
