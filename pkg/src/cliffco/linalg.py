"""Exact dense linear algebra over a :class:`FieldDescriptor`, on raw values.

Matrices are lists of rows.  Elimination is ordinary Gauss-Jordan with the
first nonzero entry of each column as pivot, so every result (echelon form,
nullspace basis, chosen solution) is deterministic.
"""

from __future__ import annotations

from typing import Sequence


def rref(F, M: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form.  Returns ``(rows, pivot_columns)``."""
    rows = [list(r) for r in M]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if not F.is_zero(rows[i][c]):
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, x) for x in rows[r]]
        pr = rows[r]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if not F.is_zero(f):
                    rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rank(F, M) -> int:
    return len(rref(F, M)[1]) if M else 0


def nullspace(F, M, ncols: int | None = None) -> list[list]:
    """Basis of ``{x : M x = 0}``, one vector per free column, in column order."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    R, pivots = rref(F, M, ncols) if M else ([], [])
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [F.zero()] * ncols
        v[free] = F.one()
        for row, pc in zip(R, pivots):
            v[pc] = F.neg(row[free])
        basis.append(v)
    return basis


def solve(F, M, b) -> list | None:
    """One solution of ``M x = b`` (free variables set to zero), or ``None``."""
    ncols = len(M[0]) if M else 0
    aug = [list(r) + [bi] for r, bi in zip(M, b)]
    R, pivots = rref(F, aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [F.zero()] * ncols
    for row, pc in zip(R, pivots):
        x[pc] = row[ncols]
    return x


def det(F, M) -> object:
    n = len(M)
    rows = [list(r) for r in M]
    result = F.one()
    for c in range(n):
        piv = None
        for i in range(c, n):
            if not F.is_zero(rows[i][c]):
                piv = i
                break
        if piv is None:
            return F.zero()
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            result = F.neg(result)
        p = rows[c][c]
        result = F.mul(result, p)
        inv = F.inv(p)
        for i in range(c + 1, n):
            f = F.mul(rows[i][c], inv)
            if not F.is_zero(f):
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[c])]
    return result


def inverse(F, M) -> list[list] | None:
    n = len(M)
    aug = [list(r) + [F.one() if i == j else F.zero() for j in range(n)] for i, r in enumerate(M)]
    R, pivots = rref(F, aug, n)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in R]


def matmul(F, A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [F.zero()] * cols
        for k in range(inner):
            a = row[k]
            if F.is_zero(a):
                continue
            bk = B[k]
            for j in range(cols):
                if not F.is_zero(bk[j]):
                    acc[j] = F.add(acc[j], F.mul(a, bk[j]))
        out.append(acc)
    return out


def matvec(F, A, v):
    out = []
    for row in A:
        acc = F.zero()
        for a, x in zip(row, v):
            if not F.is_zero(a) and not F.is_zero(x):
                acc = F.add(acc, F.mul(a, x))
        out.append(acc)
    return out


def transpose(M):
    return [list(c) for c in zip(*M)]


def identity(F, n):
    return [[F.one() if i == j else F.zero() for j in range(n)] for i in range(n)]


def span_basis(F, vectors, ncols: int) -> list[list]:
    """Canonical (reduced echelon) basis of the span of ``vectors``."""
    if not vectors:
        return []
    return rref(F, vectors, ncols)[0]


def in_span(F, basis_rows, v) -> bool:
    """Membership test against a reduced echelon basis."""
    ncols = len(v)
    R, pivots = rref(F, list(basis_rows) + [list(v)], ncols)
    return len(pivots) == len(basis_rows)


def is_zero_vector(F, v) -> bool:
    return all(F.is_zero(x) for x in v)
